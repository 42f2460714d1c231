// vmlnorm: compute rearrangement-based norms of test functions, apply the
// operator zoo, and run boundedness experiments. Batch tool: all state lives
// in the config file, outputs are plot-ready CSV/JSON.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vml/config.hpp"
#include "vml/numfmt.hpp"
#include "vml/operators2d.hpp"
#include "vml/reports.hpp"
#include "vml/sampling.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitDivergence = 4;
constexpr int kExitInconclusive = 5;
constexpr int kExitGate = 6;

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int cmd_norm(const vml::RunConfig& rc) {
  if (!rc.function) throw vml::config_error("norm needs a [function.f] section");
  const vml::StepFunction f = rc.function->as_step();
  vml::NormResult res;
  if (rc.norm_type == "lebesgue") {
    res = vml::luxemburg_norm(
        f, rc.p.value_or(vml::VariableExponent::constant(2.0)));
  } else if (rc.norm_type == "local-morrey") {
    res = vml::local_morrey_norm(
        f, rc.q.value_or(vml::VariableExponent::constant(2.0)), rc.lambda);
  } else if (rc.norm_type == "lorentz") {
    const auto pr = rc.pair();
    res = vml::variable_lorentz_norm(f, pr.p, pr.q);
  } else if (rc.norm_type == "morrey-lorentz") {
    res = vml::morrey_lorentz_quasinorm(f, rc.pair());
  } else {
    throw vml::config_error("unknown norm type: " + rc.norm_type);
  }
  const std::string echo = rc.materialize();
  const std::filesystem::path out(rc.out_dir);
  if (rc.write_json)
    write_file(out / "norm.json", vml::norm_report_json(rc.norm_type, res, echo));
  if (rc.write_csv) write_file(out / "norm.csv", vml::norm_report_csv(res));
  if (!std::isfinite(res.value)) {
    std::cout << "infinite\n";
    return kExitPrecondition;
  }
  std::cout << vml::format_double(res.value) << "\n";
  return kExitOk;
}

int cmd_rearrange(const vml::RunConfig& rc) {
  if (!rc.function)
    throw vml::config_error("rearrange needs a [function.f] section");
  const vml::StepFunction fstar = vml::rearrange(rc.function->as_step());
  const std::string csv = vml::step_to_csv(fstar);
  write_file(std::filesystem::path(rc.out_dir) / "rearranged.csv", csv);
  std::cout << csv;
  return kExitOk;
}

int cmd_apply(const vml::RunConfig& rc) {
  if (!rc.function) throw vml::config_error("apply needs a [function.f] section");
  if (rc.points.empty())
    throw vml::config_error("apply needs evaluation points");
  std::ostringstream csv;

  const auto write_out = [&]() {
    write_file(std::filesystem::path(rc.out_dir) / "apply.csv", csv.str());
    std::cout << csv.str();
  };

  const auto eval_1d = [&](auto&& fn) {
    csv << "x,value\n";
    for (double x : rc.points)
      csv << vml::format_double(x) << "," << vml::format_double(fn(x)) << "\n";
  };

  if (rc.op == "maximal") {
    const vml::LineStep f = rc.function->line();
    eval_1d([&](double x) { return vml::maximal_line(f, x); });
  } else if (rc.op == "hilbert") {
    const vml::LineStep f = rc.function->line();
    eval_1d([&](double x) { return vml::hilbert_line(f, x); });
  } else if (rc.op == "dominated") {
    const vml::LineStep f = rc.function->line();
    eval_1d([&](double x) {
      return vml::dominated_convolution_line(f, x, rc.c0, rc.exclusion);
    });
  } else if (rc.op == "identity") {
    const vml::LineStep f = rc.function->line();
    vml::ApproxKernel kernel;
    if (rc.kernel == "poisson")
      kernel.family = vml::ApproxFamily::Poisson;
    else if (rc.kernel == "gaussian")
      kernel.family = vml::ApproxFamily::Gaussian;
    else
      throw vml::config_error("unknown kernel: " + rc.kernel);
    eval_1d([&](double x) { return vml::identity_approx(f, kernel, rc.eps, x); });
  } else if (rc.op == "hardy-head" || rc.op == "hardy-tail") {
    const vml::StepFunction f = rc.function->as_step();
    const vml::VariableExponent beta =
        rc.beta.value_or(vml::VariableExponent::constant(0.0));
    eval_1d([&](double t) {
      return rc.op == "hardy-head" ? vml::hardy_head(f, beta, t)
                                   : vml::hardy_tail(f, beta, t);
    });
  } else if (rc.op == "calderon") {
    const vml::StepFunction fstar = vml::rearrange(rc.function->as_step());
    eval_1d([&](double t) { return vml::calderon(fstar, t); });
  } else if (rc.op == "double-star") {
    const vml::StepFunction fstar = vml::rearrange(rc.function->as_step());
    eval_1d([&](double t) { return vml::double_star(fstar, t); });
  } else if (rc.op == "bochner-majorant") {
    eval_1d([&](double xn) {
      return vml::bochner_riesz_majorant(rc.r_value, xn, rc.delta, rc.dim);
    });
  } else if (rc.op == "marcinkiewicz-f" || rc.op == "marcinkiewicz-mu") {
    if (!rc.function->grid)
      throw vml::config_error(rc.op + " needs a grid2d function");
    const vml::OmegaKernel omega = rc.omega_kernel();
    const vml::OmegaCheckReport oc = vml::omega_check(omega, 256);
    if (!oc.mean_zero)
      throw std::domain_error(
          "omega fails the mean-zero condition on the circle");
    if (rc.points.size() % 2 != 0)
      throw vml::config_error("2D operators need x,y point pairs");
    csv << "x,y,value\n";
    for (std::size_t i = 0; i + 1 < rc.points.size(); i += 2) {
      const double x = rc.points[i], y = rc.points[i + 1];
      const double v =
          rc.op == "marcinkiewicz-f"
              ? vml::marcinkiewicz_truncated(*rc.function->grid, omega,
                                             rc.t_radius, x, y)
              : vml::marcinkiewicz(*rc.function->grid, omega, x, y,
                                   rc.exclusion);
      csv << vml::format_double(x) << "," << vml::format_double(y) << ","
          << vml::format_double(v) << "\n";
    }
  } else if (rc.op == "maximal-2d") {
    if (!rc.function->grid)
      throw vml::config_error("maximal-2d needs a grid2d function");
    const vml::GridFunction2D field =
        vml::maximal_grid_field(*rc.function->grid);
    csv << "x,y,value\n";
    for (int iy = 0; iy < field.m(); ++iy)
      for (int ix = 0; ix < field.m(); ++ix)
        csv << vml::format_double(field.cell_center_x(ix)) << ","
            << vml::format_double(field.cell_center_y(iy)) << ","
            << vml::format_double(field.cell(ix, iy)) << "\n";
  } else {
    throw vml::config_error("unknown operator: " + rc.op);
  }
  write_out();
  return kExitOk;
}

int cmd_verify(const vml::RunConfig& rc) {
  const vml::ExperimentId id = vml::experiment_from_name(rc.experiment);
  const vml::ExponentPair pair = rc.pair();
  const std::string echo = rc.materialize();
  const std::filesystem::path out(rc.out_dir);

  if (rc.gate && id != vml::ExperimentId::Sandwich) {
    std::vector<vml::HypothesisVerdict> hyp;
    if (id == vml::ExperimentId::L33) {
      const vml::VariableExponent beta =
          rc.beta.value_or(vml::derived_beta(pair.p, pair.q));
      hyp = vml::hardy_hypotheses(beta, pair.q, pair.lambda);
    } else {
      hyp = vml::verify_hypotheses(pair, vml::derived_beta(pair.p, pair.q), id);
    }
    if (!vml::gate_passes(hyp)) {
      vml::BoundednessReport rep;
      rep.experiment = rc.experiment;
      rep.hypotheses = std::move(hyp);
      rep.hypotheses_pass = false;
      rep.verdict = vml::Verdict::Inconclusive;
      if (rc.write_json)
        write_file(out / "report.json",
                   vml::boundedness_report_json(rep, echo));
      if (rc.write_csv)
        write_file(out / "report.csv", vml::boundedness_report_csv(rep));
      std::cout << "hypothesis gate failed\n";
      for (const auto& h : rep.hypotheses)
        if (h.gating && !h.pass)
          std::cout << "  FAIL " << h.name
                    << " (margin " << vml::format_double(h.margin) << ")\n";
      return kExitGate;
    }
  }

  const vml::BoundednessReport rep = vml::run_experiment(
      id, pair, rc.beta ? &*rc.beta : nullptr, rc.family, rc.opts);
  if (rc.write_json)
    write_file(out / "report.json", vml::boundedness_report_json(rep, echo));
  if (rc.write_csv)
    write_file(out / "report.csv", vml::boundedness_report_csv(rep));

  for (const auto& h : rep.hypotheses)
    std::cout << (h.pass ? "  pass " : "  FAIL ") << h.name << " (margin "
              << vml::format_double(h.margin) << ")\n";
  std::cout << "sup_ratio = " << vml::format_double(rep.sup_ratio)
            << "  drift = " << vml::format_double(rep.refinement_drift)
            << "\nverdict: " << vml::verdict_name(rep.verdict)
            << (rep.exploratory ? " (exploratory)" : "") << "\n";

  switch (rep.verdict) {
    case vml::Verdict::BoundedConsistent:
      return kExitOk;
    case vml::Verdict::DivergenceWitnessed:
      return kExitDivergence;
    case vml::Verdict::Inconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable Morrey-Lorentz norm toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_override, points_override;
  long long seed_override = -1;
  int refine_override = -1;
  bool json_only = false, csv_only = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config file")->required();
    sub->add_option("--out", out_override, "output directory");
    sub->add_option("--seed", seed_override, "seed override");
    sub->add_option("--refine", refine_override, "extra refinement levels");
    sub->add_flag("--json", json_only, "write JSON output only");
    sub->add_flag("--csv", csv_only, "write CSV output only");
  };

  CLI::App* norm = app.add_subcommand("norm", "compute a norm");
  CLI::App* apply = app.add_subcommand("apply", "apply an operator on a grid");
  CLI::App* rearr = app.add_subcommand("rearrange", "decreasing rearrangement");
  CLI::App* verify = app.add_subcommand("verify", "run a boundedness experiment");
  apply->add_option("--points", points_override, "evaluation points");
  for (CLI::App* sub : {norm, apply, rearr, verify}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    vml::RunConfig rc = vml::load_config(config_path);
    if (!out_override.empty()) rc.out_dir = out_override;
    if (seed_override >= 0) {
      rc.seed = static_cast<std::uint64_t>(seed_override);
      rc.family.seed = rc.seed;
    }
    if (refine_override >= 0) rc.opts.refine = refine_override;
    if (json_only && !csv_only) rc.write_csv = false;
    if (csv_only && !json_only) rc.write_json = false;
    if (!points_override.empty()) rc.points = vml::parse_points(points_override);

    if (norm->parsed()) rc.command = "norm";
    if (apply->parsed()) rc.command = "apply";
    if (rearr->parsed()) rc.command = "rearrange";
    if (verify->parsed()) rc.command = "verify";

    if (rc.command == "norm") return cmd_norm(rc);
    if (rc.command == "apply") return cmd_apply(rc);
    if (rc.command == "rearrange") return cmd_rearrange(rc);
    if (rc.command == "verify") return cmd_verify(rc);
    throw vml::config_error("unknown command: " + rc.command);
  } catch (const vml::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const vml::divergence_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::domain_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
