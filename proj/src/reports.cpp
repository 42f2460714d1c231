#include "vml/reports.hpp"

#include <sstream>

#include "json.hpp"
#include "vml/numfmt.hpp"

namespace vml {

using ordered_json = nlohmann::ordered_json;

std::string norm_report_json(const std::string& norm_type,
                             const NormResult& result,
                             const std::string& config_ini) {
  ordered_json j;
  j["norm"] = norm_type;
  j["value"] = result.value;
  j["rel_error"] = result.rel_error;
  j["refinements"] = result.refinements;
  j["config_ini"] = config_ini;
  return j.dump(2) + "\n";
}

std::string norm_report_csv(const NormResult& result) {
  std::ostringstream os;
  os << "value,rel_error,refinements\n"
     << format_double(result.value) << "," << format_double(result.rel_error)
     << "," << result.refinements << "\n";
  return os.str();
}

std::string boundedness_report_json(const BoundednessReport& report,
                                    const std::string& config_ini) {
  ordered_json j;
  j["experiment"] = report.experiment;
  j["verdict"] = verdict_name(report.verdict);
  j["exploratory"] = report.exploratory;
  j["hypotheses_pass"] = report.hypotheses_pass;
  j["sup_ratio"] = report.sup_ratio;
  j["refinement_drift"] = report.refinement_drift;
  j["extension_sups"] = report.extension_sups;
  if (report.experiment == "sandwich") {
    j["c_est"] = report.c_est;
    j["big_c_est"] = report.big_c_est;
  }
  j["hypotheses"] = ordered_json::array();
  for (const auto& h : report.hypotheses) {
    ordered_json hj;
    hj["name"] = h.name;
    hj["pass"] = h.pass;
    hj["margin"] = h.margin;
    hj["gating"] = h.gating;
    j["hypotheses"].push_back(hj);
  }
  j["ratios"] = ordered_json::array();
  for (const auto& r : report.ratios) {
    ordered_json rj;
    rj["channel"] = r.channel;
    rj["index"] = r.index;
    rj["input_norm"] = r.input_norm;
    rj["output_norm"] = r.output_norm;
    rj["ratio"] = r.ratio;
    rj["divergent"] = r.divergent;
    rj["excluded"] = r.excluded;
    j["ratios"].push_back(rj);
  }
  j["config_ini"] = config_ini;
  return j.dump(2) + "\n";
}

std::string boundedness_report_csv(const BoundednessReport& report) {
  std::ostringstream os;
  os << "channel,index,input_norm,output_norm,ratio,divergent,excluded\n";
  for (const auto& r : report.ratios)
    os << r.channel << "," << r.index << "," << format_double(r.input_norm)
       << "," << format_double(r.output_norm) << "," << format_double(r.ratio)
       << "," << (r.divergent ? 1 : 0) << "," << (r.excluded ? 1 : 0) << "\n";
  return os.str();
}

}  // namespace vml
