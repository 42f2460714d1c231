#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "vml/experiments.hpp"
#include "vml/operators.hpp"
#include "vml/parallel.hpp"
#include "vml/reports.hpp"
#include "vml/sampling.hpp"

#ifdef VML_HAVE_OPENMP
#include <omp.h>
#endif

using namespace vml;

namespace {
const VariableExponent p2 = VariableExponent::constant(2.0);
ExperimentOptions fast_opts() {
  ExperimentOptions o;
  o.samples = 1024;
  o.extensions = 2;
  return o;
}
}  // namespace

TEST_CASE("derived beta") {
  const auto b = derived_beta(VariableExponent::constant(1.5), p2);
  CHECK(b.is_constant());
  CHECK(b.p0() == doctest::Approx(1.0 / 1.5 - 0.5));
  const auto b2 = derived_beta(VariableExponent::two_piece(1.0, 2.0),
                               VariableExponent::two_piece(3.0, 2.0));
  CHECK(b2(0.5) == doctest::Approx(1.0 - 1.0 / 3.0));
  CHECK(b2(2.0) == doctest::Approx(0.0));
}

TEST_CASE("verify_hypotheses fixtures") {
  // all pass: p=q=2, lambda=0
  auto all = verify_hypotheses({p2, p2, 0.0}, derived_beta(p2, p2),
                               ExperimentId::T31);
  CHECK(gate_passes(all));
  // T3.2 arithmetic gate: lambda p+ vs min(q0, qinf)
  auto ok = verify_hypotheses({p2, p2, 0.9}, derived_beta(p2, p2),
                              ExperimentId::T32);
  bool compat_pass = false;
  for (const auto& h : ok)
    if (h.name == "lambda-p-compat") compat_pass = h.pass;
  CHECK(compat_pass);  // 1.8 < 2
  const auto p3 = VariableExponent::constant(3.0);
  auto bad = verify_hypotheses({p3, p2, 0.9}, derived_beta(p3, p2),
                               ExperimentId::T32);
  bool compat_fail = true;
  for (const auto& h : bad)
    if (h.name == "lambda-p-compat") compat_fail = h.pass;
  CHECK_FALSE(compat_fail);  // 2.7 >= 2
  CHECK_FALSE(gate_passes(bad));
  CHECK_THROWS_AS(experiment_from_name("T9.9"), std::invalid_argument);
}

TEST_CASE("hardy experiment dichotomy (small family)") {
  FunctionFamily fam;
  fam.count = 12;
  fam.seed = 7;
  ExperimentOptions opts = fast_opts();
  opts.direction = -1;
  const auto good = hardy_boundedness(VariableExponent::constant(0.1), p2, 0.3,
                                      fam, opts);
  CHECK(good.hypotheses_pass);
  CHECK(good.verdict == Verdict::BoundedConsistent);
  CHECK(good.refinement_drift < 0.05);
  const auto bad = hardy_boundedness(VariableExponent::constant(0.85), p2, 0.3,
                                     fam, opts);
  CHECK_FALSE(bad.hypotheses_pass);
  CHECK(bad.exploratory);
  CHECK(bad.verdict == Verdict::DivergenceWitnessed);
  REQUIRE(bad.extension_sups.size() == 3);
  CHECK(bad.extension_sups[1] >= 1.5 * bad.extension_sups[0]);
  CHECK(bad.extension_sups[2] >= 1.5 * bad.extension_sups[1]);
  CHECK_THROWS_AS(hardy_boundedness(VariableExponent::constant(0.1), p2, 0.3,
                                    {fam.generator, 0, 1, 1.0, 2.0}, opts),
                  std::invalid_argument);
}

TEST_CASE("hardy divergence error recorded as evidence") {
  // beta(0) >= 1 with mass at the origin: the head integral itself diverges
  FunctionFamily fam;
  fam.count = 4;
  fam.seed = 3;
  const auto rep = hardy_boundedness(VariableExponent::constant(1.1), p2, 0.1,
                                     fam, fast_opts());
  bool any_div = false;
  for (const auto& e : rep.ratios) any_div = any_div || e.divergent;
  CHECK(any_div);
  CHECK(rep.verdict == Verdict::DivergenceWitnessed);
}

TEST_CASE("maximal experiment: ratios bounded below by 1 for characteristics") {
  FunctionFamily fam;
  fam.count = 10;
  fam.seed = 5;
  const auto rep = maximal_boundedness({p2, p2, 0.0}, fam, fast_opts());
  CHECK(rep.verdict == Verdict::BoundedConsistent);
  for (const auto& e : rep.ratios) {
    CHECK(e.ratio >= 1.0 - 1e-6);  // Mf >= f pointwise implies (Mf)* >= f*
    CHECK(e.ratio < 10.0);
  }
}

TEST_CASE("lambda=0 maximal experiment collapses to the Lorentz ratios") {
  FunctionFamily fam;
  fam.count = 8;
  fam.seed = 13;
  ExperimentOptions opts = fast_opts();
  const ExponentPair pair{VariableExponent::constant(1.6), p2, 0.0};
  const auto rep = maximal_boundedness(pair, fam, opts);
  const auto members = generate_family(fam);
  for (const auto& e : rep.ratios) {
    const auto& f = members[static_cast<std::size_t>(e.index)];
    const LineStep line = LineStep::from_step(f);
    const double span = opts.span_factor * f.support_end();
    const LineStep mf = sample_field_serial(
        -span, span, opts.samples, [&](double x) { return maximal_line(line, x); });
    const double num =
        variable_lorentz_norm(rearrange_line(mf), pair.p, pair.q).value;
    const double den = variable_lorentz_norm(f, pair.p, pair.q).value;
    CHECK(e.ratio == doctest::Approx(num / den).epsilon(1e-9));
  }
}

TEST_CASE("cz experiment: proof-structure consistency") {
  FunctionFamily fam;
  fam.count = 8;
  fam.seed = 29;
  ExperimentOptions opts = fast_opts();
  const ExponentPair pair{p2, p2, 0.25};
  const auto rep = cz_boundedness(pair, fam, opts);
  CHECK(rep.verdict == Verdict::BoundedConsistent);
  const auto members = generate_family(fam);
  // measured constant of the classical rearrangement bound
  // (Tf)*(t) <= C (f**(t) + int_t^inf f*/s ds)
  for (int idx = 0; idx < fam.count; ++idx) {
    double hil = 0, head = 0, tail = 0;
    for (const auto& e : rep.ratios) {
      if (e.index != idx) continue;
      if (e.channel == "hilbert") hil = e.ratio;
      if (e.channel == "hardy-head") head = e.ratio;
      if (e.channel == "hardy-tail") tail = e.ratio;
    }
    const auto& f = members[static_cast<std::size_t>(idx)];
    const auto fstar = rearrange(f);
    const LineStep line = LineStep::from_step(f);
    const double span = opts.span_factor * f.support_end();
    const LineStep hf = sample_field_serial(
        -span, span, opts.samples,
        [&](double x) { return std::fabs(hilbert_line(line, x)); });
    const StepFunction hstar = rearrange_line(hf);
    double cmeas = 0.0;
    for (double t : log_grid(1e-3 * f.support_end(), 4.0 * f.support_end(), 48)) {
      double tailint = 0.0;
      for (std::size_t i = 0; i < fstar.piece_count(); ++i) {
        const double hi = fstar.piece_hi(i);
        if (hi <= t) continue;
        tailint += fstar.values()[i] *
                   std::log(hi / std::max(fstar.piece_lo(i), t));
      }
      const double bound = double_star(fstar, t) + tailint;
      if (bound > 0.0) cmeas = std::max(cmeas, hstar.at(t) / bound);
    }
    CHECK(hil <= (head + tail) * cmeas * 1.05);
  }
}

TEST_CASE("sandwich experiment") {
  FunctionFamily fam;
  fam.count = 12;
  fam.seed = 37;
  const auto rep = sandwich_experiment(fam, fast_opts());
  CHECK(rep.c_est > 0.0);
  CHECK(rep.big_c_est < 1e4);
  CHECK(rep.big_c_est >= rep.c_est);
  CHECK(rep.refinement_drift < 0.10);
  // scale invariance: a dilated family sees the same window within 10%
  FunctionFamily big = fam;
  big.scale_min *= 16.0;
  big.scale_max *= 16.0;
  const auto rep2 = sandwich_experiment(big, fast_opts());
  CHECK(rep2.c_est == doctest::Approx(rep.c_est).epsilon(0.10));
  CHECK(rep2.big_c_est == doctest::Approx(rep.big_c_est).epsilon(0.10));
}

TEST_CASE("experiment reports are deterministic across thread counts") {
  FunctionFamily fam;
  fam.count = 6;
  fam.seed = 41;
  const ExponentPair pair{p2, p2, 0.25};
  const auto once = maximal_boundedness(pair, fam, fast_opts());
  const std::string a = boundedness_report_json(once, "cfg");
#ifdef VML_HAVE_OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  const auto twice = maximal_boundedness(pair, fam, fast_opts());
#ifdef VML_HAVE_OPENMP
  omp_set_num_threads(saved);
#endif
  CHECK(a == boundedness_report_json(twice, "cfg"));
}

TEST_CASE("ratio positivity and exclusion bookkeeping") {
  FunctionFamily fam;
  fam.count = 10;
  fam.seed = 53;
  fam.generator = FamilyGenerator::RandomSteps;
  const auto rep = maximal_boundedness({p2, p2, 0.25}, fam, fast_opts());
  for (const auto& e : rep.ratios) {
    CHECK(e.ratio >= 0.0);
    CHECK_FALSE(e.excluded);
    CHECK(e.input_norm > 0.0);
  }
  CHECK(rep.sup_ratio > 0.0);
}

TEST_CASE("identity-sup experiment ratios dominated by maximal ratios") {
  FunctionFamily fam;
  fam.count = 6;
  fam.seed = 59;
  ExperimentOptions opts = fast_opts();
  const ExponentPair pair{p2, p2, 0.25};
  const auto id_rep = sublinear_boundedness(ExperimentId::C42, pair, fam, opts);
  const auto max_rep = maximal_boundedness(pair, fam, opts);
  double dom = 0.0;
  for (const auto& h : id_rep.hypotheses)
    if (h.name == "pointwise-domination") dom = h.margin;
  CHECK(dom > 0.0);
  CHECK(id_rep.sup_ratio <= max_rep.sup_ratio * dom * 1.05);
  CHECK(id_rep.verdict == Verdict::BoundedConsistent);
}

TEST_CASE("experiment runner dispatch and family generators") {
  FunctionFamily fam;
  fam.count = 4;
  fam.seed = 61;
  for (auto gen : {FamilyGenerator::CharacteristicIntervals,
                   FamilyGenerator::RandomSteps, FamilyGenerator::PowerProfiles,
                   FamilyGenerator::DyadicCombs}) {
    fam.generator = gen;
    const auto members = generate_family(fam);
    CHECK(members.size() == 4);
    for (const auto& f : members) CHECK_FALSE(f.is_zero());
    // prefix stability: growing the family keeps existing members
    FunctionFamily grown = fam;
    grown.count = 8;
    const auto more = generate_family(grown);
    for (std::size_t i = 0; i < members.size(); ++i)
      CHECK(more[i] == members[i]);
  }
  const auto rep = run_experiment(ExperimentId::T33, {p2, p2, 0.1}, nullptr,
                                  fam, fast_opts());
  CHECK(rep.experiment == "T3.3");
}
