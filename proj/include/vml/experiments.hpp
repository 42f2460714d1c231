#pragma once

#include <string>
#include <vector>

#include "vml/exponent.hpp"
#include "vml/families.hpp"
#include "vml/norms.hpp"
#include "vml/operators.hpp"

namespace vml {

enum class ExperimentId { T31, T32, T33, C41, C42, C43, L33, Sandwich };

ExperimentId experiment_from_name(const std::string& name);
const char* experiment_name(ExperimentId id);

struct HypothesisVerdict {
  std::string name;
  bool pass = false;
  double margin = 0.0;
  bool gating = true;  // informational verdicts never gate
};

struct RatioEntry {
  std::string channel;
  int index = 0;
  double input_norm = 0.0;
  double output_norm = 0.0;
  double ratio = 0.0;
  bool divergent = false;
  bool excluded = false;  // 0/0 members stay out of the sup
};

enum class Verdict { BoundedConsistent, Inconclusive, DivergenceWitnessed };

const char* verdict_name(Verdict v);

struct ExperimentOptions {
  std::size_t samples = 4096;      // spatial rasterization of operator outputs
  double span_factor = 8.0;        // line window half-width per support radius
  double window_lo = 1e-10;        // fixed Hardy sampling window; the Hardy
  double window_hi = 1e6;          // conditions govern t -> 0 and t -> inf
  int extensions = 3;              // divergence probes
  double extension_step = 32.0;    // support scaling per probe
  int direction = 0;               // -1 toward 0, +1 toward inf, 0 both
  int epsilon_points = 16;         // identity-sup epsilon grid
  int grid2d_resolution = 16;      // 2D family resolution
  int mu_samples = 32;             // per-axis mu sampling for C4.3
  int refine = 0;                  // extra global refinement doublings
};

struct BoundednessReport {
  std::string experiment;
  std::vector<HypothesisVerdict> hypotheses;
  bool hypotheses_pass = true;
  bool exploratory = false;  // ran with failed hypotheses
  std::vector<RatioEntry> ratios;
  double sup_ratio = 0.0;
  double refinement_drift = 0.0;
  std::vector<double> extension_sups;  // base sup first, then per probe
  Verdict verdict = Verdict::Inconclusive;
  double c_est = 0.0;      // sandwich only
  double big_c_est = 0.0;  // sandwich only
};

// beta(t) = 1/p(t) - 1/q(t) as a variable exponent: exact for the
// piecewise-constant families, tabulated otherwise.
VariableExponent derived_beta(const VariableExponent& p,
                              const VariableExponent& q);

// Named hypothesis verdicts for one theorem or corollary, margins included.
std::vector<HypothesisVerdict> verify_hypotheses(const ExponentPair& pair,
                                                 const VariableExponent& beta,
                                                 ExperimentId id);
// Hardy-lemma hypotheses for a caller-supplied beta.
std::vector<HypothesisVerdict> hardy_hypotheses(const VariableExponent& beta,
                                                const VariableExponent& q,
                                                double lambda);

bool gate_passes(const std::vector<HypothesisVerdict>& verdicts);

// Head/tail Hardy operator ratios in LM_{q(.),lambda} with outputs sampled
// on the fixed window; divergence probes shrink (or stretch) supports.
BoundednessReport hardy_boundedness(const VariableExponent& beta,
                                    const VariableExponent& q, double lambda,
                                    const FunctionFamily& family,
                                    const ExperimentOptions& opts);

// Maximal-operator quasinorm ratios (Theorem-3.1-style experiment).
BoundednessReport maximal_boundedness(const ExponentPair& pair,
                                      const FunctionFamily& family,
                                      const ExperimentOptions& opts);

// Hilbert-transform experiment mirroring the proof split: head term (I1),
// tail term (I2) and the end-to-end transform ratio.
BoundednessReport cz_boundedness(const ExponentPair& pair,
                                 const FunctionFamily& family,
                                 const ExperimentOptions& opts);

// Sublinear applications: T3.3 / C4.1 dominated convolution on the line,
// C4.2 identity-approximation sup, C4.3 Marcinkiewicz on 2D squares.
BoundednessReport sublinear_boundedness(ExperimentId tag,
                                        const ExponentPair& pair,
                                        const FunctionFamily& family,
                                        const ExperimentOptions& opts);

// Ratio field (Mf)*(t) / f**(t) over a per-member t-grid; c_est and
// big_c_est are the min and max.
BoundednessReport sandwich_experiment(const FunctionFamily& family,
                                      const ExperimentOptions& opts);

// Dispatcher used by the CLI.
BoundednessReport run_experiment(ExperimentId id, const ExponentPair& pair,
                                 const VariableExponent* beta,
                                 const FunctionFamily& family,
                                 const ExperimentOptions& opts);

}  // namespace vml
