#include "vml/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "vml/operators2d.hpp"
#include "vml/parallel.hpp"
#include "vml/sampling.hpp"

namespace vml {

namespace {

constexpr double kDriftOk = 0.05;       // bounded-consistent drift ceiling
constexpr double kDivergenceGrowth = 1.5;

double tail_log_integral(const StepFunction& fstar, double t) {
  double acc = 0.0;
  for (std::size_t i = 0; i < fstar.piece_count(); ++i) {
    const double hi = fstar.piece_hi(i);
    if (hi <= t) continue;
    const double v = fstar.values()[i];
    if (v == 0.0) continue;
    acc += v * std::log(hi / std::max(fstar.piece_lo(i), t));
  }
  return acc;
}

}  // namespace

ExperimentId experiment_from_name(const std::string& name) {
  if (name == "T3.1") return ExperimentId::T31;
  if (name == "T3.2") return ExperimentId::T32;
  if (name == "T3.3") return ExperimentId::T33;
  if (name == "C4.1") return ExperimentId::C41;
  if (name == "C4.2") return ExperimentId::C42;
  if (name == "C4.3") return ExperimentId::C43;
  if (name == "L3.3") return ExperimentId::L33;
  if (name == "sandwich") return ExperimentId::Sandwich;
  throw std::invalid_argument("unknown experiment id: " + name);
}

const char* experiment_name(ExperimentId id) {
  switch (id) {
    case ExperimentId::T31: return "T3.1";
    case ExperimentId::T32: return "T3.2";
    case ExperimentId::T33: return "T3.3";
    case ExperimentId::C41: return "C4.1";
    case ExperimentId::C42: return "C4.2";
    case ExperimentId::C43: return "C4.3";
    case ExperimentId::L33: return "L3.3";
    case ExperimentId::Sandwich: return "sandwich";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::BoundedConsistent: return "bounded-consistent";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::DivergenceWitnessed: return "divergence-witnessed";
  }
  return "?";
}

VariableExponent derived_beta(const VariableExponent& p,
                              const VariableExponent& q) {
  const auto piecewise = [](const VariableExponent& e) {
    return e.kind() == ExponentKind::Constant ||
           e.kind() == ExponentKind::TwoPiece;
  };
  if (p.is_constant() && q.is_constant())
    return VariableExponent::constant(1.0 / p.p0() - 1.0 / q.p0());
  if (piecewise(p) && piecewise(q))
    return VariableExponent::two_piece(1.0 / p.p0() - 1.0 / q.p0(),
                                       1.0 / p.p_inf() - 1.0 / q.p_inf());
  std::vector<double> knots = log_grid(1e-8, 1e8, 2048);
  std::vector<double> vals(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i)
    vals[i] = 1.0 / p(knots[i]) - 1.0 / q(knots[i]);
  return VariableExponent::tabulated(std::move(knots), std::move(vals));
}

namespace {

void add(std::vector<HypothesisVerdict>& out, std::string name, bool pass,
         double margin, bool gating = true) {
  out.push_back({std::move(name), pass, margin, gating});
}

void add_common_q(std::vector<HypothesisVerdict>& out,
                  const VariableExponent& q, double lambda) {
  add(out, "q-range", q.p_minus() > 1.0 && std::isfinite(q.p_plus()),
      q.p_minus() - 1.0);
  add(out, "lambda-range", lambda >= 0.0 && lambda < 1.0, 1.0 - lambda);
  const DecayReport dq = check_decay(q, default_condition_grid());
  add(out, "q-decay", dq.pass0 && dq.pass_inf,
      std::min(q.a0() - dq.a0_hat, q.a_inf() - dq.ainf_hat));
  const SupConditionResult sc = check_sup_condition(q, lambda);
  add(out, "sup-condition", sc.finite, sc.sup_value);
}

void add_hardy(std::vector<HypothesisVerdict>& out,
               const VariableExponent& beta, const VariableExponent& q,
               double lambda, bool head, bool tail) {
  const HardyConditionReport hc =
      check_hardy_conditions(beta, q, lambda, default_condition_grid());
  if (head) {
    add(out, "hardy-head-condition", hc.h_holds, hc.h_margin);
    add(out, "almost-monotone-a", hc.decreasing_a.found,
        kAlmostMonotoneFactor - hc.decreasing_a.factor);
    add(out, "hardy-head-endpoint-variant", hc.h_endpoint_holds,
        hc.h_endpoint_margin, false);
  }
  if (tail) {
    add(out, "hardy-tail-condition", hc.calh_holds, hc.calh_margin);
    add(out, "almost-monotone-b", hc.increasing_b.found,
        kAlmostMonotoneFactor - hc.increasing_b.factor);
    add(out, "hardy-tail-endpoint-variant", hc.calh_endpoint_holds,
        hc.calh_endpoint_margin, false);
  }
}

}  // namespace

std::vector<HypothesisVerdict> verify_hypotheses(const ExponentPair& pair,
                                                 const VariableExponent& beta,
                                                 ExperimentId id) {
  std::vector<HypothesisVerdict> out;
  const VariableExponent& p = pair.p;
  const VariableExponent& q = pair.q;
  const bool corollary = id == ExperimentId::C41 || id == ExperimentId::C42 ||
                         id == ExperimentId::C43;
  const bool needs_tail = id != ExperimentId::T31;
  if (corollary)
    add(out, "p-range", p.p_minus() > 1.0 && std::isfinite(p.p_plus()),
        p.p_minus() - 1.0);
  else
    add(out, "p-range", p.p_minus() >= 1.0 && std::isfinite(p.p_plus()),
        p.p_minus() - 1.0);
  const DecayReport dp = check_decay(p, default_condition_grid());
  add(out, "p-decay", dp.pass0 && dp.pass_inf,
      std::min(p.a0() - dp.a0_hat, p.a_inf() - dp.ainf_hat));
  add_common_q(out, q, pair.lambda);
  add_hardy(out, beta, q, pair.lambda, true, needs_tail);
  if (needs_tail) {
    const double bound = std::min(q.p0(), q.p_inf());
    add(out, "lambda-p-compat", pair.lambda * p.p_plus() < bound - kStrictMargin,
        bound - pair.lambda * p.p_plus());
    // pointwise reading of the same hypothesis, reported but not gating
    double worst = 1e300;
    for (double t : default_condition_grid())
      worst = std::min(worst, limit_exponent(q, t) - pair.lambda * p(t));
    add(out, "lambda-p-compat-pointwise", worst > 0.0, worst, false);
  }
  return out;
}

std::vector<HypothesisVerdict> hardy_hypotheses(const VariableExponent& beta,
                                                const VariableExponent& q,
                                                double lambda) {
  std::vector<HypothesisVerdict> out;
  add_common_q(out, q, lambda);
  // lim_{t->0} t^{beta(t)} exists and is finite exactly when beta(0) >= 0
  add(out, "t-beta-limit-exists", beta.p0() >= -kStrictMargin, beta.p0());
  add_hardy(out, beta, q, lambda, true, true);
  return out;
}

bool gate_passes(const std::vector<HypothesisVerdict>& verdicts) {
  for (const auto& v : verdicts)
    if (v.gating && !v.pass) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

// One experiment member evaluated at a refinement level; returns the ratio
// entries for all channels of that member.
using MemberEval = std::function<std::vector<RatioEntry>(
    const StepFunction& f, int index, int level)>;

std::vector<RatioEntry> eval_family(const std::vector<StepFunction>& members,
                                    const MemberEval& eval, int level) {
  std::vector<std::vector<RatioEntry>> slots(members.size());
  parallel_for(members.size(), [&](std::size_t i) {
    slots[i] = eval(members[i], static_cast<int>(i), level);
  });
  std::vector<RatioEntry> out;
  for (auto& s : slots)
    for (auto& e : s) out.push_back(std::move(e));
  return out;
}

double sup_of(const std::vector<RatioEntry>& entries) {
  double s = 0.0;
  for (const auto& e : entries)
    if (!e.excluded && !e.divergent) s = std::max(s, e.ratio);
  return s;
}

bool any_divergent(const std::vector<RatioEntry>& entries) {
  for (const auto& e : entries)
    if (e.divergent) return true;
  return false;
}

// Shared harness: base pass, refined pass (x2 members, x2 grid), divergence
// probes along the configured support-scaling direction.
BoundednessReport run_harness(const std::string& name,
                              std::vector<HypothesisVerdict> hypotheses,
                              const FunctionFamily& family,
                              const ExperimentOptions& opts,
                              const MemberEval& eval, bool probe_divergence) {
  BoundednessReport rep;
  rep.experiment = name;
  rep.hypotheses = std::move(hypotheses);
  rep.hypotheses_pass = gate_passes(rep.hypotheses);
  rep.exploratory = !rep.hypotheses_pass;

  const std::vector<StepFunction> base = generate_family(family);
  if (base.empty()) throw std::invalid_argument("empty function family");
  rep.ratios = eval_family(base, eval, opts.refine);
  const double s0 = sup_of(rep.ratios);
  rep.sup_ratio = s0;

  FunctionFamily grown = family;
  grown.count *= 2;
  const std::vector<StepFunction> refined_members = generate_family(grown);
  const double s1 = sup_of(eval_family(refined_members, eval, opts.refine + 1));
  rep.refinement_drift = s0 > 0.0 ? std::fabs(s1 - s0) / s0 : 0.0;

  bool divergent = any_divergent(rep.ratios);
  rep.extension_sups.push_back(s0);
  if (probe_divergence && opts.extensions > 0) {
    bool monotone_growth = true;
    double prev = s0;
    for (int k = 1; k <= opts.extensions; ++k) {
      const double factor = std::pow(opts.extension_step, k);
      std::vector<StepFunction> probe;
      for (const auto& f : base) {
        if (opts.direction <= 0) probe.push_back(dilate(f, 1.0 / factor));
        if (opts.direction >= 0) probe.push_back(dilate(f, factor));
      }
      const auto entries = eval_family(probe, eval, opts.refine);
      divergent = divergent || any_divergent(entries);
      const double sk = sup_of(entries);
      rep.extension_sups.push_back(sk);
      if (!(sk >= kDivergenceGrowth * prev)) monotone_growth = false;
      prev = sk;
    }
    if (monotone_growth) divergent = true;
  }

  if (divergent)
    rep.verdict = Verdict::DivergenceWitnessed;
  else if (rep.hypotheses_pass && rep.refinement_drift < kDriftOk)
    rep.verdict = Verdict::BoundedConsistent;
  else
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

RatioEntry make_entry(const std::string& channel, int index, double in_norm,
                      double out_norm) {
  RatioEntry e;
  e.channel = channel;
  e.index = index;
  e.input_norm = in_norm;
  e.output_norm = out_norm;
  if (in_norm == 0.0 && out_norm == 0.0) {
    e.excluded = true;  // 0/0 stays out of the sup rather than being defined
  } else if (in_norm == 0.0 || !std::isfinite(out_norm)) {
    e.divergent = true;
  } else {
    e.ratio = out_norm / in_norm;
  }
  return e;
}

}  // namespace

BoundednessReport hardy_boundedness(const VariableExponent& beta,
                                    const VariableExponent& q, double lambda,
                                    const FunctionFamily& family,
                                    const ExperimentOptions& opts) {
  const MemberEval eval = [&](const StepFunction& f, int index,
                              int level) -> std::vector<RatioEntry> {
    const std::size_t cells = opts.samples << level;
    const double wide = static_cast<double>(1 << level);
    const double wlo = opts.window_lo / wide, whi = opts.window_hi * wide;
    const double denom = local_morrey_norm(f, q, lambda).value;
    std::vector<RatioEntry> out;
    try {
      const StepFunction head = sample_log_step_serial(
          wlo, whi, cells, [&](double t) { return hardy_head(f, beta, t); });
      out.push_back(make_entry("hardy-head", index, denom,
                               local_morrey_norm(head, q, lambda).value));
    } catch (const divergence_error&) {
      RatioEntry e;
      e.channel = "hardy-head";
      e.index = index;
      e.input_norm = denom;
      e.divergent = true;
      out.push_back(e);
    }
    const StepFunction tail = sample_log_step_serial(
        wlo, whi, cells, [&](double t) { return hardy_tail(f, beta, t); });
    out.push_back(make_entry("hardy-tail", index, denom,
                             local_morrey_norm(tail, q, lambda).value));
    return out;
  };
  return run_harness("L3.3", hardy_hypotheses(beta, q, lambda), family, opts,
                     eval, true);
}

BoundednessReport maximal_boundedness(const ExponentPair& pair,
                                      const FunctionFamily& family,
                                      const ExperimentOptions& opts) {
  const MemberEval eval = [&](const StepFunction& f, int index,
                              int level) -> std::vector<RatioEntry> {
    const std::size_t cells = opts.samples << level;
    const double denom = morrey_lorentz_quasinorm(f, pair).value;
    const LineStep line = LineStep::from_step(f);
    const double span =
        opts.span_factor * static_cast<double>(1 << level) * f.support_end();
    const LineStep mf = sample_field_serial(
        -span, span, cells, [&](double x) { return maximal_line(line, x); });
    const double num =
        morrey_lorentz_quasinorm(rearrange_line(mf), pair).value;
    return {make_entry("maximal", index, denom, num)};
  };
  return run_harness(
      "T3.1",
      verify_hypotheses(pair, derived_beta(pair.p, pair.q), ExperimentId::T31),
      family, opts, eval, true);
}

BoundednessReport cz_boundedness(const ExponentPair& pair,
                                 const FunctionFamily& family,
                                 const ExperimentOptions& opts) {
  const VariableExponent beta = derived_beta(pair.p, pair.q);
  const MemberEval eval = [&](const StepFunction& f, int index,
                              int level) -> std::vector<RatioEntry> {
    const std::size_t cells = opts.samples << level;
    const StepFunction fstar = rearrange(f);
    const double denom = morrey_lorentz_quasinorm(f, pair).value;
    const double s = f.support_end();
    const double wide = static_cast<double>(1 << level);
    std::vector<RatioEntry> out;

    // proof split: head term t^{beta} f**(t) = H_beta g, tail term = calH g,
    // with g the power-weighted rearrangement
    const StepFunction head = sample_log_step_serial(
        1e-6 * s / wide, 1e3 * s * wide, cells, [&](double t) {
          return std::pow(t, beta(t) - 1.0) * fstar.integral_to(t);
        });
    out.push_back(make_entry("hardy-head", index, denom,
                             local_morrey_norm(head, pair.q, pair.lambda).value));
    const StepFunction tail = sample_log_step_serial(
        1e-6 * s / wide, 1e3 * s * wide, cells, [&](double t) {
          return std::pow(t, beta(t)) * tail_log_integral(fstar, t);
        });
    out.push_back(make_entry("hardy-tail", index, denom,
                             local_morrey_norm(tail, pair.q, pair.lambda).value));

    // end-to-end Hilbert transform
    const LineStep line = LineStep::from_step(f);
    const double span = opts.span_factor * wide * s;
    const LineStep hf =
        sample_field_serial(-span, span, cells, [&](double x) {
          try {
            return std::fabs(hilbert_line(line, x));
          } catch (const std::domain_error&) {
            return std::fabs(hilbert_line(line, x + 1e-9 * span));
          }
        });
    out.push_back(
        make_entry("hilbert", index, denom,
                   morrey_lorentz_quasinorm(rearrange_line(hf), pair).value));
    return out;
  };
  return run_harness("T3.2", verify_hypotheses(pair, beta, ExperimentId::T32),
                     family, opts, eval, true);
}

BoundednessReport sublinear_boundedness(ExperimentId tag,
                                        const ExponentPair& pair,
                                        const FunctionFamily& family,
                                        const ExperimentOptions& opts) {
  const VariableExponent beta = derived_beta(pair.p, pair.q);
  std::vector<HypothesisVerdict> hyps = verify_hypotheses(pair, beta, tag);

  if (tag == ExperimentId::T33 || tag == ExperimentId::C41) {
    if (tag == ExperimentId::C41) {
      // spot-verify the kernel majorant bound that feeds condition (2.3)
      double worst = 1e300;
      for (double r : log_grid(1e-3, 1e3, 20))
        for (double xn : log_grid(1e-3, 1e3, 20)) {
          const double v = bochner_riesz_majorant(r, xn, 1.0, 1);
          worst = std::min(worst, 1.0 / xn - v);
        }
      add(hyps, "majorant-bound", worst >= -1e-12, worst);
    }
    const MemberEval eval = [&](const StepFunction& f, int index,
                                int level) -> std::vector<RatioEntry> {
      const std::size_t cells = opts.samples << level;
      const double denom = morrey_lorentz_quasinorm(f, pair).value;
      const LineStep line = LineStep::from_step(f);
      const double s = f.support_end();
      const double span =
          opts.span_factor * static_cast<double>(1 << level) * s;
      const double lo = line.support_lo(), hi = line.support_hi();
      const double guard = 2.0 * span / static_cast<double>(cells);
      const LineStep tf =
          sample_field_serial(-span, span, cells, [&](double x) {
            if (x > lo - guard && x < hi + guard) return 0.0;
            return dominated_convolution_line(line, x);
          });
      const double num =
          morrey_lorentz_quasinorm(rearrange_line(tf), pair).value;
      return {make_entry("dominated-convolution", index, denom, num)};
    };
    return run_harness(experiment_name(tag), std::move(hyps), family, opts,
                       eval, true);
  }

  if (tag == ExperimentId::C42) {
    const MemberEval eval = [&](const StepFunction& f, int index,
                                int level) -> std::vector<RatioEntry> {
      const std::size_t cells = opts.samples << level;
      const int neps = opts.epsilon_points << level;
      const double denom = morrey_lorentz_quasinorm(f, pair).value;
      const LineStep line = LineStep::from_step(f);
      const double s = f.support_end();
      const double span =
          opts.span_factor * static_cast<double>(1 << level) * s;
      std::vector<RatioEntry> out;
      for (ApproxFamily fam : {ApproxFamily::Poisson, ApproxFamily::Gaussian}) {
        const ApproxKernel kernel{fam};
        const auto eps_grid = log_grid(1e-3 * s, 10.0 * s, neps);
        const LineStep tf =
            sample_field_serial(-span, span, cells, [&](double x) {
              double m = 0.0;
              for (double eps : eps_grid)
                m = std::max(m, std::fabs(identity_approx(line, kernel, eps, x)));
              return m;
            });
        const double num =
            morrey_lorentz_quasinorm(rearrange_line(tf), pair).value;
        out.push_back(make_entry(fam == ApproxFamily::Poisson
                                     ? "identity-sup-poisson"
                                     : "identity-sup-gaussian",
                                 index, denom, num));
      }
      return out;
    };
    // spot-verify pointwise domination by the maximal function
    {
      const auto probe = generate_family({family.generator, 4, family.seed,
                                          family.scale_min, family.scale_max});
      double cmax = 0.0;
      for (const auto& f : probe) {
        const LineStep line = LineStep::from_step(f);
        const double s = f.support_end();
        const auto eps_grid = log_grid(1e-3 * s, 10.0 * s, opts.epsilon_points);
        for (double x : {-2.0 * s, 0.33 * s, 0.71 * s, 3.0 * s}) {
          double tf = 0.0;
          for (double eps : eps_grid)
            tf = std::max(tf, std::fabs(identity_approx(
                                 line, ApproxKernel{}, eps, x)));
          const double mf = maximal_line(line, x);
          if (mf > 0.0) cmax = std::max(cmax, tf / mf);
        }
      }
      add(hyps, "pointwise-domination", std::isfinite(cmax) && cmax > 0.0,
          cmax);
    }
    return run_harness("C4.2", std::move(hyps), family, opts, eval, true);
  }

  if (tag != ExperimentId::C43)
    throw std::invalid_argument("sublinear_boundedness: bad tag");

  // C4.3: Marcinkiewicz integral on 2D characteristic squares.
  const OmegaKernel omega = OmegaKernel::cos_theta();
  const OmegaCheckReport oc = omega_check(omega, 256);
  if (!oc.mean_zero)
    throw std::domain_error(
        "marcinkiewicz experiment refused: Omega fails the mean-zero "
        "condition");
  add(hyps, "omega-mean-zero", oc.mean_zero, std::fabs(oc.mean));
  add(hyps, "omega-lipschitz", oc.lip_bounded, oc.lip_estimate);

  const auto squares = generate_square_family(
      family.count, family.seed, opts.grid2d_resolution, family.scale_max);
  // pointwise domination spot check against the Soria-Weiss majorant
  {
    double cmax = 0.0;
    const GridFunction2D& g = squares.front();
    const double side = g.side();
    for (double px : {-0.4 * side, 1.3 * side}) {
      for (double py : {-0.3 * side, 0.5 * side, 1.2 * side}) {
        const double mu = marcinkiewicz(g, omega, px, py);
        const double dom = dominated_convolution_grid(g, &omega, px, py);
        if (dom > 0.0) cmax = std::max(cmax, mu / dom);
      }
    }
    add(hyps, "sublinear-domination", std::isfinite(cmax) && cmax > 0.0, cmax);
  }

  BoundednessReport rep;
  rep.experiment = "C4.3";
  rep.hypotheses = std::move(hyps);
  rep.hypotheses_pass = gate_passes(rep.hypotheses);
  rep.exploratory = !rep.hypotheses_pass;

  const auto eval_squares = [&](int level) {
    std::vector<RatioEntry> entries(squares.size());
    parallel_for(squares.size(), [&](std::size_t i) {
      const GridFunction2D& g = squares[i];
      const double denom = morrey_lorentz_quasinorm(rasterize(g), pair).value;
      const double side = g.side();
      const int n = opts.mu_samples;  // fixed point set; level drives quadrature
      // sample mu on a 3x window around the square, skipping a guard band
      // around the support (the operator is defined off supp g)
      const double h = g.cell_width();
      double lx = 1e300, ly = 1e300, hx = -1e300, hy = -1e300;
      for (int iy = 0; iy < g.m(); ++iy)
        for (int ix = 0; ix < g.m(); ++ix)
          if (g.cell(ix, iy) > 0.0) {
            lx = std::min(lx, g.x0() + ix * h);
            hx = std::max(hx, g.x0() + (ix + 1) * h);
            ly = std::min(ly, g.y0() + iy * h);
            hy = std::max(hy, g.y0() + (iy + 1) * h);
          }
      const double win = 3.0 * side;
      const double ox = g.x0() - side, oy = g.y0() - side;
      const double cw = win / n;
      std::vector<double> cellvals(static_cast<std::size_t>(n) * n, 0.0);
      // fixed physical guard band: refinement resolves a fixed domain
      // instead of annexing near-field territory where mu grows
      const double guard = 2.0 * h;
      for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
          const double px = ox + (ix + 0.5) * cw;
          const double py = oy + (iy + 0.5) * cw;
          if (px > lx - guard && px < hx + guard && py > ly - guard &&
              py < hy + guard)
            continue;
          cellvals[static_cast<std::size_t>(iy) * n + ix] = marcinkiewicz_fixed(
              g, omega, px, py, 24 << level, 96 << level, 2 << level);
        }
      }
      const GridFunction2D mu_grid(ox, oy, win, n, std::move(cellvals));
      const double num =
          morrey_lorentz_quasinorm(rasterize(mu_grid), pair).value;
      entries[i] = make_entry("marcinkiewicz", static_cast<int>(i), denom, num);
    });
    return entries;
  };

  rep.ratios = eval_squares(opts.refine);
  const double s0 = sup_of(rep.ratios);
  rep.sup_ratio = s0;
  const double s1 = sup_of(eval_squares(opts.refine + 1));
  rep.refinement_drift = s0 > 0.0 ? std::fabs(s1 - s0) / s0 : 0.0;
  rep.extension_sups.push_back(s0);
  if (any_divergent(rep.ratios))
    rep.verdict = Verdict::DivergenceWitnessed;
  else if (rep.hypotheses_pass && rep.refinement_drift < kDriftOk)
    rep.verdict = Verdict::BoundedConsistent;
  else
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

BoundednessReport sandwich_experiment(const FunctionFamily& family,
                                      const ExperimentOptions& opts) {
  BoundednessReport rep;
  rep.experiment = "sandwich";
  rep.hypotheses_pass = true;

  const std::vector<StepFunction> members = generate_family(family);
  const int tpoints = 64;

  const auto eval_pass = [&](int level, std::vector<RatioEntry>* keep) {
    std::vector<double> mins(members.size()), maxs(members.size());
    std::vector<std::vector<RatioEntry>> slots(members.size());
    parallel_for(members.size(), [&](std::size_t i) {
      const StepFunction& f = members[i];
      const StepFunction fstar = rearrange(f);
      const LineStep line = LineStep::from_step(f);
      const double s = f.support_end();
      const double span =
          opts.span_factor * static_cast<double>(1 << level) * s;
      const std::size_t cells = opts.samples << level;
      const LineStep mf = sample_field_serial(
          -span, span, cells, [&](double x) { return maximal_line(line, x); });
      const StepFunction mfstar = rearrange_line(mf);
      double lo = 1e300, hi = 0.0;
      std::vector<RatioEntry> entries;
      int idx = 0;
      for (double t : log_grid(1e-2 * s, 10.0 * s, tpoints)) {
        const double ratio = mfstar.at(t) / double_star(fstar, t);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        RatioEntry e;
        e.channel = "sandwich";
        e.index = static_cast<int>(i) * tpoints + idx++;
        e.input_norm = double_star(fstar, t);
        e.output_norm = mfstar.at(t);
        e.ratio = ratio;
        entries.push_back(e);
      }
      mins[i] = lo;
      maxs[i] = hi;
      if (keep) slots[i] = std::move(entries);
    });
    double cmin = 1e300, cmax = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      cmin = std::min(cmin, mins[i]);
      cmax = std::max(cmax, maxs[i]);
    }
    if (keep)
      for (auto& s : slots)
        for (auto& e : s) keep->push_back(std::move(e));
    return std::make_pair(cmin, cmax);
  };

  const auto [c0, C0] = eval_pass(opts.refine, &rep.ratios);
  const auto [c1, C1] = eval_pass(opts.refine + 1, nullptr);
  rep.c_est = c0;
  rep.big_c_est = C0;
  rep.sup_ratio = C0;
  rep.refinement_drift = std::max(std::fabs(c1 - c0) / std::max(c0, 1e-300),
                                  std::fabs(C1 - C0) / std::max(C0, 1e-300));
  rep.extension_sups.push_back(C0);
  rep.verdict = (c0 > 0.0 && rep.refinement_drift < 0.10)
                    ? Verdict::BoundedConsistent
                    : Verdict::Inconclusive;
  return rep;
}

BoundednessReport run_experiment(ExperimentId id, const ExponentPair& pair,
                                 const VariableExponent* beta,
                                 const FunctionFamily& family,
                                 const ExperimentOptions& opts) {
  switch (id) {
    case ExperimentId::T31:
      return maximal_boundedness(pair, family, opts);
    case ExperimentId::T32:
      return cz_boundedness(pair, family, opts);
    case ExperimentId::T33:
    case ExperimentId::C41:
    case ExperimentId::C42:
    case ExperimentId::C43:
      return sublinear_boundedness(id, pair, family, opts);
    case ExperimentId::L33: {
      const VariableExponent b =
          beta ? *beta : derived_beta(pair.p, pair.q);
      return hardy_boundedness(b, pair.q, pair.lambda, family, opts);
    }
    case ExperimentId::Sandwich:
      return sandwich_experiment(family, opts);
  }
  throw std::invalid_argument("unknown experiment");
}

}  // namespace vml
