// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "test_util.hpp"
#include "vml/experiments.hpp"
#include "vml/norms.hpp"
#include "vml/operators.hpp"
#include "vml/operators2d.hpp"
#include "vml/sampling.hpp"

using namespace vml;
namespace fs = std::filesystem;

namespace {

int failures = 0;
std::vector<std::string> notes;

double now_s() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

void criterion(int id, const std::string& label,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  const double t0 = now_s();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double dt = now_s() - t0;
  std::printf("[%d] %s %s (%s; %.1f s)\n", id, ok ? "PASS" : "FAIL",
              label.c_str(), detail.c_str(), dt);
  std::fflush(stdout);
  if (!ok) ++failures;
}

fs::path scratch() {
  const fs::path dir = fs::path("acceptance_scratch");
  fs::create_directories(dir);
  return dir;
}

void put(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(VMLNORM_BIN) + " " + args + " > " +
                          (scratch() / "cli_stdout.txt").string() + " 2>&1";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

int main() {
  const VariableExponent p2 = VariableExponent::constant(2.0);

  // 1. Rearrangement oracle equivalence.
  criterion(1, "rearrangement oracle equivalence", [&](std::string& d) {
    const double t0 = now_s();
    auto r = testutil::rng(20240811);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto f =
          testutil::random_step(r, 64, 0.5 + 8.0 * testutil::uniform(r));
      const auto fs = rearrange(f);
      if (!(fs == testutil::rearrange_oracle(f))) {
        d = "canonical form mismatch at function " + std::to_string(i);
        return false;
      }
      for (int j = 0; j < 100; ++j) {
        const double level = 4.5 * testutil::uniform(r);
        if (f.distribution(level) != fs.distribution(level)) {
          d = "equimeasurability mismatch at function " + std::to_string(i);
          return false;
        }
      }
      ++checked;
    }
    const double dt = now_s() - t0;
    d = std::to_string(checked) + " functions, runtime " + fmt(dt) + " s < 10 s";
    return dt < 10.0;
  });

  // 2. Luxemburg golden values.
  criterion(2, "luxemburg golden values", [&](std::string& d) {
    auto r = testutil::rng(77);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double c = 0.1 + 5.0 * testutil::uniform(r);
      const double m = 0.1 + 9.0 * testutil::uniform(r);
      const double p = 1.05 + 6.0 * testutil::uniform(r);
      const double want = c * std::pow(m, 1.0 / p);
      const double got =
          luxemburg_norm(StepFunction::characteristic(0, m, c),
                         VariableExponent::constant(p))
              .value;
      worst = std::max(worst, std::fabs(got - want) / want);
    }
    if (worst > 1e-9) {
      d = "constant-exponent closed form off by " + fmt(worst);
      return false;
    }
    const double golden =
        luxemburg_norm(StepFunction::characteristic(0, 2.0),
                       VariableExponent::two_piece(1.0, 2.0))
            .value;
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    if (std::fabs(golden - phi) / phi > 1e-8) {
      d = "two-piece fixture off by " + fmt(std::fabs(golden - phi) / phi);
      return false;
    }
    // modular fixed point across a corpus
    const auto qs = {p2, VariableExponent::two_piece(1.0, 2.0),
                     VariableExponent::log_interpolant(1.5, 2.5)};
    for (int i = 0; i < 100; ++i) {
      const auto f = testutil::random_step(r, 48);
      for (const auto& q : qs) {
        const double n = luxemburg_norm(f, q).value;
        if (n == 0.0) continue;
        std::vector<double> v = f.values();
        for (auto& x : v) x /= n;
        const double j = modular(StepFunction(f.breakpoints(), v), q);
        // J(phi/N) = 1 exactly in real arithmetic; rebuilding phi/N rounds
        // each piece once, hence the few-ulp guard above 1
        if (!(j <= 1.0 + 1e-12 && j >= 1.0 - 1e-6)) {
          d = "modular fixed point J = " + fmt(j);
          return false;
        }
      }
    }
    d = "max closed-form error " + fmt(worst) + ", golden and fixed point ok";
    return true;
  });

  // 3. Reduction chain.
  criterion(3, "reduction chain at lambda = 0", [&](std::string& d) {
    auto r = testutil::rng(99);
    const auto p17 = VariableExponent::constant(1.7);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto f = testutil::random_step(r, 40, 0.3 + 4.0 * testutil::uniform(r));
      const double viaq =
          morrey_lorentz_quasinorm(f, {p17, p2, 0.0}).value;
      const double vial = variable_lorentz_norm(f, p17, p2).value;
      if (vial > 0.0)
        worst = std::max(worst, std::fabs(viaq - vial) / vial);
    }
    if (worst > 1e-10) {
      d = "quasinorm vs Lorentz off by " + fmt(worst);
      return false;
    }
    double worst2 = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double a = 2.0 * testutil::uniform(r);
      const double b = a + 0.1 + 3.0 * testutil::uniform(r);
      const double pv = 1.1 + 5.0 * testutil::uniform(r);
      const auto pc = VariableExponent::constant(pv);
      const double got =
          morrey_lorentz_quasinorm(StepFunction::characteristic(a, b),
                                   {pc, pc, 0.0})
              .value;
      const double want = std::pow(b - a, 1.0 / pv);
      worst2 = std::max(worst2, std::fabs(got - want) / want);
    }
    d = "lorentz agreement " + fmt(worst) + ", |E|^{1/p} error " + fmt(worst2);
    return worst2 <= 1e-9;
  });

  // 4. Maximal sandwich.
  criterion(4, "maximal-rearrangement sandwich", [&](std::string& d) {
    const double t0 = now_s();
    FunctionFamily fam;
    fam.count = 50;
    fam.seed = 4242;
    const auto rep = sandwich_experiment(fam, ExperimentOptions{});
    const double dt = now_s() - t0;
    d = "c = " + fmt(rep.c_est) + ", C = " + fmt(rep.big_c_est) + ", drift " +
        fmt(rep.refinement_drift) + ", " + fmt(dt) + " s < 60 s";
    return rep.c_est > 0.0 && std::isfinite(rep.big_c_est) &&
           rep.refinement_drift < 0.10 && dt < 60.0;
  });

  // 5. Calderon domination of the Hilbert transform.
  criterion(5, "calderon domination of hilbert rearrangements",
            [&](std::string& d) {
    const auto c_for = [&](std::size_t samples) {
      auto rr = testutil::rng(555);
      double cmax = 0.0;
      for (int i = 0; i < 20; ++i) {
        const auto f =
            testutil::random_step(rr, 24, 0.5 + 3.0 * testutil::uniform(rr));
        const auto fstar = rearrange(f);
        const auto line = LineStep::from_step(f);
        const double span =
            8.0 * static_cast<double>(samples) / 4096.0 * f.support_end();
        const LineStep hf = sample_field_serial(
            -span, span, samples,
            [&](double x) { return std::fabs(hilbert_line(line, x)); });
        const StepFunction hstar = rearrange_line(hf);
        for (double t :
             log_grid(1e-3 * f.support_end(), 4.0 * f.support_end(), 48)) {
          const double bound = calderon(fstar, t);
          if (bound > 0.0) cmax = std::max(cmax, hstar.at(t) / bound);
        }
      }
      return cmax;
    };
    const double c1 = c_for(4096);
    const double c2 = c_for(8192);
    d = "CEst = " + fmt(c1) + ", doubled-grid CEst = " + fmt(c2);
    return c1 > 0.0 && std::isfinite(c1) &&
           std::fabs(c2 - c1) / c1 < 0.10;
  });

  // 6. Hardy boundedness dichotomy.
  criterion(6, "hardy boundedness dichotomy", [&](std::string& d) {
    const double t0 = now_s();
    FunctionFamily fam;
    fam.count = 50;
    fam.seed = 6;
    ExperimentOptions opts;
    opts.direction = -1;  // toward t -> 0
    const auto good = hardy_boundedness(VariableExponent::constant(0.1), p2,
                                        0.3, fam, opts);
    if (!(good.hypotheses_pass && good.refinement_drift < 0.05)) {
      d = "compliant fixture drift " + fmt(good.refinement_drift);
      return false;
    }
    // violating beta = lambda/q + 1/q' + 0.2
    const double beta_bad = 0.3 / 2.0 + 0.5 + 0.2;
    const auto bad = hardy_boundedness(VariableExponent::constant(beta_bad),
                                       p2, 0.3, fam, opts);
    const auto& e = bad.extension_sups;
    bool grows = e.size() == 4;
    for (std::size_t k = 1; k < e.size() && grows; ++k)
      grows = e[k] >= 1.5 * e[k - 1];
    const double dt = now_s() - t0;
    d = "compliant drift " + fmt(good.refinement_drift) + "; violating sups " +
        fmt(e[0]) + " -> " + fmt(e.back()) + ", " + fmt(dt) + " s < 120 s";
    return grows && bad.verdict == Verdict::DivergenceWitnessed && dt < 120.0;
  });

  // 7. Theorem experiments through the CLI.
  criterion(7, "cmd_verify theorem experiments and gate", [&](std::string& d) {
    const fs::path dir = scratch();
    for (const char* exp : {"T3.1", "T3.2"}) {
      for (const char* lam : {"0", "0.25", "0.5"}) {
        std::ostringstream cfg;
        cfg << "[run]\ncommand = verify\n"
            << "[exponent.p]\nkind = constant\nvalue = 2\n"
            << "[exponent.q]\nkind = constant\nvalue = 2\n"
            << "[space]\nlambda = " << lam << "\n"
            << "[verify]\nexperiment = " << exp << "\ngate = true\n"
            << "[family]\ncount = 50\nseed = 7\n";
        const fs::path cfgp = dir / (std::string("acc7_") + exp + lam + ".ini");
        put(cfgp, cfg.str());
        const int code = run_cli("verify --config " + cfgp.string() +
                                 " --out " + (dir / "acc7out").string());
        if (code != 0) {
          d = std::string(exp) + " lambda=" + lam + " exited " +
              std::to_string(code);
          return false;
        }
      }
    }
    // hypothesis gate: lambda p+ >= min(q(0), q(inf)) must exit 6
    put(dir / "acc7_gate.ini",
        "[run]\ncommand = verify\n"
        "[exponent.p]\nkind = constant\nvalue = 3\n"
        "[exponent.q]\nkind = constant\nvalue = 2\n"
        "[space]\nlambda = 0.9\n"
        "[verify]\nexperiment = T3.2\ngate = true\n"
        "[family]\ncount = 10\nseed = 7\n");
    const int gate = run_cli("verify --config " +
                             (dir / "acc7_gate.ini").string() + " --out " +
                             (dir / "acc7gate").string());
    d = "six runs exit 0, gate fixture exit " + std::to_string(gate);
    return gate == 6;
  });

  // 8. Applications: identity-sup, marcinkiewicz domination, bochner sweep.
  criterion(8, "application operators", [&](std::string& d) {
    // identity-sup domination constant, Poisson and Gaussian
    const auto dom_for = [&](int neps) {
      auto r = testutil::rng(888);
      double cmax = 0.0;
      for (int i = 0; i < 20; ++i) {
        const auto f = LineStep::from_step(testutil::random_step(r, 24));
        const double s = f.support_hi();
        const auto eps_grid = log_grid(1e-3 * s, 10.0 * s, neps);
        for (int j = 0; j < 16; ++j) {
          const double x = -2.0 * s + 5.0 * s * (j + 0.5) / 16.0;
          double tf_p = 0.0, tf_g = 0.0;
          for (double eps : eps_grid) {
            tf_p = std::max(tf_p, std::fabs(identity_approx(
                                      f, {ApproxFamily::Poisson}, eps, x)));
            tf_g = std::max(tf_g, std::fabs(identity_approx(
                                      f, {ApproxFamily::Gaussian}, eps, x)));
          }
          const double mf = maximal_line(f, x);
          if (mf > 0.0) cmax = std::max(cmax, std::max(tf_p, tf_g) / mf);
        }
      }
      return cmax;
    };
    const double c16 = dom_for(16);
    const double c32 = dom_for(32);
    if (!(c16 > 0.0) || std::fabs(c32 - c16) / c16 >= 0.10) {
      d = "identity-sup constant unstable: " + fmt(c16) + " vs " + fmt(c32);
      return false;
    }
    // marcinkiewicz vs dominated convolution at 25 sample points
    auto g = GridFunction2D::constant(0.0, 0.0, 1.0, 16, 0.0);
    for (int iy = 5; iy < 11; ++iy)
      for (int ix = 5; ix < 11; ++ix) g.cell(ix, iy) = 1.5;
    const auto omega = OmegaKernel::cos_theta();
    const auto mu_c = [&](int refine) {
      double cmax = 0.0;
      for (int k = 0; k < 25; ++k) {
        const double ang = 2.0 * 3.14159265358979323846 * k / 25.0;
        const double rad = 1.2 + 0.1 * (k % 5);
        const double px = 0.5 + rad * std::cos(ang);
        const double py = 0.5 + rad * std::sin(ang);
        const double mu = marcinkiewicz_fixed(g, omega, px, py, 48 << refine,
                                              192 << refine, 2 << refine);
        const double dom = dominated_convolution_grid(g, &omega, px, py);
        if (dom > 0.0) cmax = std::max(cmax, mu / dom);
      }
      return cmax;
    };
    const double m1 = mu_c(0);
    const double m2 = mu_c(1);
    if (!(m1 > 0.0) || std::fabs(m2 - m1) / m1 >= 0.10) {
      d = "marcinkiewicz domination unstable: " + fmt(m1) + " vs " + fmt(m2);
      return false;
    }
    // bochner majorant sweep: 10^4 points, zero violations (2-ulp guard)
    int violations = 0;
    for (double rr : log_grid(1e-3, 1e3, 10))
      for (double xn : log_grid(1e-3, 1e3, 10))
        for (int n = 1; n <= 10; ++n)
          for (int k = 0; k < 10; ++k) {
            const double delta = 0.5 * (n - 1) + 0.05 + 0.35 * k;
            const double v = bochner_riesz_majorant(rr, xn, delta, n);
            if (v > std::pow(xn, -static_cast<double>(n)) * (1.0 + 1e-13))
              ++violations;
          }
    d = "identity C " + fmt(c32) + ", marcinkiewicz C " + fmt(m2) +
        ", bochner violations " + std::to_string(violations);
    return violations == 0;
  });

  // 9. Determinism of the verify pipeline.
  criterion(9, "byte-identical reports across runs", [&](std::string& d) {
    const fs::path dir = scratch();
    put(dir / "acc9.ini",
        "[run]\ncommand = verify\nseed = 424242\n"
        "[exponent.p]\nkind = constant\nvalue = 2\n"
        "[exponent.q]\nkind = constant\nvalue = 2\n"
        "[space]\nlambda = 0.25\n"
        "[verify]\nexperiment = T3.1\n"
        "[family]\ncount = 50\nseed = 31\n");
    const int a = run_cli("verify --config " + (dir / "acc9.ini").string() +
                          " --out " + (dir / "acc9a").string());
    const int b = run_cli("verify --config " + (dir / "acc9.ini").string() +
                          " --out " + (dir / "acc9b").string());
    if (a != 0 || b != 0) {
      d = "runs exited " + std::to_string(a) + ", " + std::to_string(b);
      return false;
    }
    const bool json_eq =
        slurp(dir / "acc9a" / "report.json") == slurp(dir / "acc9b" / "report.json");
    const bool csv_eq =
        slurp(dir / "acc9a" / "report.csv") == slurp(dir / "acc9b" / "report.csv");
    d = std::string("json ") + (json_eq ? "identical" : "DIFFERS") + ", csv " +
        (csv_eq ? "identical" : "DIFFERS");
    return json_eq && csv_eq;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
