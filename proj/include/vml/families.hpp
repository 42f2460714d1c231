#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vml/signal.hpp"

namespace vml {

enum class FamilyGenerator {
  CharacteristicIntervals,
  RandomSteps,
  PowerProfiles,
  DyadicCombs,
};

FamilyGenerator family_generator_from_name(const std::string& name);
const char* family_generator_name(FamilyGenerator g);

// Deterministic seeded family of test functions. Member i depends only on
// (generator, seed, i, scale range), so growing the count extends the family
// without disturbing existing members.
struct FunctionFamily {
  FamilyGenerator generator = FamilyGenerator::CharacteristicIntervals;
  int count = 50;
  std::uint64_t seed = 1;
  double scale_min = 0.25;
  double scale_max = 4.0;
};

std::vector<StepFunction> generate_family(const FunctionFamily& family);

// Member supports scaled by `factor` (values unchanged).
StepFunction dilate(const StepFunction& f, double factor);

// Seeded family of characteristic-square grid functions on an n x n grid
// over [0, side)^2.
std::vector<GridFunction2D> generate_square_family(int count,
                                                   std::uint64_t seed,
                                                   int resolution,
                                                   double side);

}  // namespace vml
