#include "vml/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace vml {

namespace {

// mt19937_64 output mapped to [0,1) directly; the standard distributions are
// implementation-defined, this is not.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::mt19937_64 member_rng(std::uint64_t seed, int index) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL +
                      static_cast<std::uint64_t>(index) * 0xbf58476d1ce4e5b9ULL +
                      0x94d049bb133111ebULL);
  rng.discard(8);
  return rng;
}

double member_scale(const FunctionFamily& fam, std::mt19937_64& rng,
                    int index) {
  // geometric spread over the scale range, jittered; periodic in the index
  // so growing the count never disturbs existing members
  const double w = static_cast<double>(index % 16) / 15.0;
  const double jitter = std::pow(2.0, 0.5 * (next_uniform(rng) - 0.5));
  return fam.scale_min * std::pow(fam.scale_max / fam.scale_min, w) * jitter;
}

StepFunction make_characteristic(std::mt19937_64& rng, double s) {
  const double height = 0.25 + 4.0 * next_uniform(rng);
  if (next_uniform(rng) < 0.5) return StepFunction::characteristic(0.0, s, height);
  const double a = 0.5 * s * next_uniform(rng);
  return StepFunction::characteristic(a, a + s, height);
}

StepFunction make_random_steps(std::mt19937_64& rng, double s) {
  const int k = 4 + static_cast<int>(next_uniform(rng) * 28);
  std::vector<double> bk(static_cast<std::size_t>(k));
  for (auto& b : bk) b = s * (0.02 + 0.98 * next_uniform(rng));
  std::sort(bk.begin(), bk.end());
  bk.erase(std::unique(bk.begin(), bk.end()), bk.end());
  std::vector<double> vals(bk.size());
  bool any = false;
  for (auto& v : vals) {
    v = next_uniform(rng) < 0.15 ? 0.0 : 0.1 + 3.0 * next_uniform(rng);
    any = any || v > 0;
  }
  if (!any) vals.back() = 1.0;
  return StepFunction(std::move(bk), std::move(vals));
}

StepFunction make_power_profile(std::mt19937_64& rng, double s) {
  const double alpha = 0.1 + 0.35 * next_uniform(rng);
  const double c = 0.5 + 2.0 * next_uniform(rng);
  const std::size_t pieces = 48;
  const double lo = 1e-4 * s;
  std::vector<double> bk(pieces), vals(pieces);
  for (std::size_t i = 0; i < pieces; ++i) {
    const double w = static_cast<double>(i + 1) / pieces;
    bk[i] = lo * std::pow(s / lo, w);
    const double a = i == 0 ? lo : bk[i - 1];
    vals[i] = c * std::pow(std::sqrt(a * bk[i]), -alpha);
  }
  return StepFunction(std::move(bk), std::move(vals));
}

StepFunction make_dyadic_comb(std::mt19937_64& rng, double s) {
  const int levels = 10;
  std::vector<double> bk, vals;
  for (int j = levels; j >= 0; --j) {
    bk.push_back(s * std::pow(2.0, -j));
    const double growth = std::pow(2.0, 0.25 * j);
    vals.push_back((0.5 + 1.5 * next_uniform(rng)) * growth);
  }
  return StepFunction(std::move(bk), std::move(vals));
}

}  // namespace

FamilyGenerator family_generator_from_name(const std::string& name) {
  if (name == "characteristic-intervals")
    return FamilyGenerator::CharacteristicIntervals;
  if (name == "random-steps") return FamilyGenerator::RandomSteps;
  if (name == "power-profiles") return FamilyGenerator::PowerProfiles;
  if (name == "dyadic-combs") return FamilyGenerator::DyadicCombs;
  throw std::invalid_argument("unknown family generator: " + name);
}

const char* family_generator_name(FamilyGenerator g) {
  switch (g) {
    case FamilyGenerator::CharacteristicIntervals:
      return "characteristic-intervals";
    case FamilyGenerator::RandomSteps:
      return "random-steps";
    case FamilyGenerator::PowerProfiles:
      return "power-profiles";
    case FamilyGenerator::DyadicCombs:
      return "dyadic-combs";
  }
  return "?";
}

std::vector<StepFunction> generate_family(const FunctionFamily& fam) {
  if (fam.count <= 0) throw std::invalid_argument("family count must be positive");
  if (!(fam.scale_min > 0) || !(fam.scale_max >= fam.scale_min))
    throw std::invalid_argument("bad family scale range");
  std::vector<StepFunction> out;
  out.reserve(static_cast<std::size_t>(fam.count));
  for (int i = 0; i < fam.count; ++i) {
    auto rng = member_rng(fam.seed, i);
    const double s = member_scale(fam, rng, i);
    switch (fam.generator) {
      case FamilyGenerator::CharacteristicIntervals:
        out.push_back(make_characteristic(rng, s));
        break;
      case FamilyGenerator::RandomSteps:
        out.push_back(make_random_steps(rng, s));
        break;
      case FamilyGenerator::PowerProfiles:
        out.push_back(make_power_profile(rng, s));
        break;
      case FamilyGenerator::DyadicCombs:
        out.push_back(make_dyadic_comb(rng, s));
        break;
    }
  }
  return out;
}

StepFunction dilate(const StepFunction& f, double factor) {
  if (!(factor > 0)) throw std::invalid_argument("dilation factor must be positive");
  std::vector<double> bk;
  bk.reserve(f.piece_count());
  for (double b : f.breakpoints()) bk.push_back(b * factor);
  return StepFunction(std::move(bk), f.values());
}

std::vector<GridFunction2D> generate_square_family(int count,
                                                   std::uint64_t seed,
                                                   int resolution,
                                                   double side) {
  if (count <= 0 || resolution < 4)
    throw std::invalid_argument("bad square family parameters");
  std::vector<GridFunction2D> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    auto rng = member_rng(seed ^ 0x5851f42d4c957f2dULL, i);
    GridFunction2D g = GridFunction2D::constant(0.0, 0.0, side, resolution, 0.0);
    const int span = 2 + static_cast<int>(next_uniform(rng) * (resolution / 2));
    const int ox = static_cast<int>(next_uniform(rng) * (resolution - span));
    const int oy = static_cast<int>(next_uniform(rng) * (resolution - span));
    const double height = 0.25 + 4.0 * next_uniform(rng);
    for (int iy = oy; iy < oy + span; ++iy)
      for (int ix = ox; ix < ox + span; ++ix) g.cell(ix, iy) = height;
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace vml
