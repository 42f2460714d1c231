#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "vml/signal.hpp"

using namespace vml;

TEST_CASE("distribution function") {
  const auto chi = StepFunction::characteristic(0.0, 1.0);
  CHECK(chi.distribution(0.5) == 1.0);
  CHECK(chi.distribution(1.0) == 0.0);  // strict inequality at the level
  const StepFunction f({1.0, 2.0}, {3.0, 1.0});
  CHECK(f.distribution(2.0) == 1.0);
  CHECK(f.distribution(0.0) == 2.0);
  CHECK_THROWS_AS(f.distribution(-1.0), std::domain_error);
}

TEST_CASE("rearrange: spec fixtures") {
  const auto chi = StepFunction::characteristic(0.0, 3.5);
  CHECK(rearrange(chi) == chi);
  const StepFunction f({1.0, 2.0}, {1.0, 3.0});
  const StepFunction want({1.0, 2.0}, {3.0, 1.0});
  CHECK(rearrange(f) == want);
  const StepFunction plateau({1.0, 2.0}, {2.0, 2.0});
  CHECK(rearrange(plateau) == StepFunction({2.0}, {2.0}));
}

TEST_CASE("rearrange matches the distribution-function oracle exactly") {
  auto r = testutil::rng(101);
  for (int i = 0; i < 300; ++i) {
    const auto f = testutil::random_step(r, 64, 1.0 + 5.0 * testutil::uniform(r));
    const auto fs = rearrange(f);
    CHECK(fs == testutil::rearrange_oracle(f));
    CHECK(fs.non_increasing());
  }
}

TEST_CASE("equimeasurability holds exactly at arbitrary levels") {
  auto r = testutil::rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto f = testutil::random_step(r, 48);
    const auto fs = rearrange(f);
    for (int j = 0; j < 50; ++j) {
      const double level = 4.5 * testutil::uniform(r);
      CHECK(f.distribution(level) == fs.distribution(level));
    }
    // also at exact piece values, where the strict inequality matters
    for (double v : f.values()) CHECK(f.distribution(v) == fs.distribution(v));
  }
}

TEST_CASE("rearrange is idempotent and mass-preserving") {
  auto r = testutil::rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto f = testutil::random_step(r, 32);
    const auto fs = rearrange(f);
    CHECK(rearrange(fs) == fs);
    CHECK(f.integral() ==
          doctest::Approx(fs.integral()).epsilon(1e-13));
  }
}

TEST_CASE("equimeasurable reshuffles rearrange to identical forms") {
  // dyadic breakpoints so the reshuffle itself is rounding-free
  auto r = testutil::rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto f = testutil::random_dyadic_step(r, 32);
    CHECK(rearrange(testutil::reverse_pieces(f)) == rearrange(f));
  }
}

TEST_CASE("contraction ordering: raising values raises the rearrangement") {
  auto r = testutil::rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto f = testutil::random_step(r, 24);
    std::vector<double> raised = f.values();
    for (auto& v : raised)
      if (testutil::uniform(r) < 0.5) v += 2.0 * testutil::uniform(r);
    const StepFunction g(f.breakpoints(), raised);
    const auto fs = rearrange(f), gs = rearrange(g);
    for (int j = 0; j < 40; ++j) {
      const double t = 1.0001 * fs.support_end() * testutil::uniform(r) + 1e-9;
      CHECK(fs.at(t) <= gs.at(t));
    }
  }
}

TEST_CASE("double_star") {
  const auto chi = StepFunction::characteristic(0.0, 1.0);
  CHECK(double_star(chi, 1.0) == 1.0);
  CHECK(double_star(chi, 2.0) == 0.5);
  CHECK(double_star(StepFunction(), 5.0) == 0.0);
  CHECK_THROWS_AS(double_star(chi, 0.0), std::domain_error);
  // f** >= f* and both non-increasing (to rounding)
  auto r = testutil::rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto fs = rearrange(testutil::random_step(r, 32));
    double prev = 1e300;
    for (double t : {0.01, 0.1, 0.3, 0.9, 2.0, 5.0}) {
      const double ds = double_star(fs, t);
      CHECK(ds >= fs.at(t) * (1.0 - 1e-15));
      CHECK(ds <= prev * (1 + 1e-13));
      prev = ds;
    }
  }
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(1) == 2.0);
  CHECK(unit_ball_volume(2) == doctest::Approx(3.14159265358979).epsilon(1e-14));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.18879020478639).epsilon(1e-14));
  CHECK(unit_ball_volume(5) == doctest::Approx(5.26378901391432).epsilon(1e-13));
  CHECK_THROWS_AS(unit_ball_volume(11), std::invalid_argument);
}

TEST_CASE("radial rearrangement") {
  // n=1 indicator of the unit ball -> interval of measure 2
  const auto f1 = RadialFunction::from_profile(
      1, StepFunction::characteristic(0.0, 1.0));
  CHECK(radial_rearrange(f1) == StepFunction({2.0}, {1.0}));
  // n=2 -> chi_(0, pi)
  const auto f2 = RadialFunction::from_profile(
      2, StepFunction::characteristic(0.0, 1.0));
  const auto fs2 = radial_rearrange(f2);
  CHECK(fs2.piece_count() == 1);
  CHECK(fs2.support_end() == doctest::Approx(3.14159265358979).epsilon(1e-14));
  // n=2 power profile rho^{-1}: f*(t) = sqrt(pi/t) for t < pi
  const auto fp = RadialFunction::power(2, 1.0, 1.0, 1.0);
  for (double t : {0.1, 0.5, 1.0, 3.0})
    CHECK(radial_rearrange_value(fp, t) ==
          doctest::Approx(std::sqrt(3.14159265358979323846 / t)).epsilon(1e-12));
  CHECK(radial_rearrange_value(fp, 4.0) == 0.0);  // beyond omega_2 * 1
  // discretized power profile is non-increasing and tracks the closed form
  const auto fps = radial_rearrange(fp, 512);
  CHECK(fps.non_increasing());
  CHECK(fps.at(0.5) == doctest::Approx(std::sqrt(3.14159265358979 / 0.5)).epsilon(2e-2));
  // non-monotone profiles are rejected
  CHECK_THROWS_AS(
      RadialFunction::from_profile(2, StepFunction({1.0, 2.0}, {1.0, 3.0})),
      std::invalid_argument);
}

TEST_CASE("grid rasterization") {
  auto g = GridFunction2D::constant(0.0, 0.0, 1.0, 4, 1.0);
  CHECK(rasterize(g) == StepFunction({1.0}, {1.0}));
  auto g2 = GridFunction2D::constant(0.0, 0.0, 1.0, 4, 0.0);
  g2.cell(1, 2) = 5.0;
  const double a = g2.cell_area();
  CHECK(rasterize(g2) == StepFunction({a}, {5.0}));
  // random grid equals the sort-based oracle exactly
  auto r = testutil::rng(19);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> cells(64);
    for (auto& c : cells)
      c = testutil::uniform(r) < 0.2 ? 0.0 : testutil::uniform(r);
    GridFunction2D gr(0.0, 0.0, 2.0, 8, cells);
    std::sort(cells.begin(), cells.end(), std::greater<>());
    std::vector<double> bk, val;
    for (std::size_t j = 0; j < cells.size() && cells[j] > 0.0;) {
      std::size_t k = j;
      while (k < cells.size() && cells[k] == cells[j]) ++k;
      bk.push_back(static_cast<double>(k) * gr.cell_area());
      val.push_back(cells[j]);
      j = k;
    }
    CHECK(rasterize(gr) == StepFunction(bk, val));
  }
}

TEST_CASE("grid csv round-trip") {
  auto g = GridFunction2D::constant(-0.5, 0.25, 2.0, 3, 0.0);
  g.cell(0, 0) = 0.125;
  g.cell(2, 1) = 7.0;
  const auto back = GridFunction2D::from_csv(g.to_csv());
  CHECK(back.cells() == g.cells());
  CHECK(back.x0() == g.x0());
  CHECK(back.side() == g.side());
}

TEST_CASE("step csv round-trip") {
  const StepFunction f({0.5, 1.25, 4.0}, {2.0, 0.0, 0.125});
  CHECK(step_from_csv(step_to_csv(f)) == f);
}

TEST_CASE("line step basics") {
  const auto f = LineStep::characteristic(-1.0, 2.0, 3.0);
  CHECK(f.at(0.0) == 3.0);
  CHECK(f.at(-1.0) == 0.0);   // pieces are left-open
  CHECK(f.at(2.0) == 3.0);
  CHECK(f.at(2.1) == 0.0);
  CHECK(f.integral() == 9.0);
  CHECK(f.integral_over(0.0, 1.0) == 3.0);
  CHECK(f.integral_over(-5.0, 0.0) == 3.0);
  CHECK(rearrange_line(f) == StepFunction({3.0}, {3.0}));
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(StepFunction({1.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({-1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({1.0}, {-0.5}), std::invalid_argument);
  CHECK_THROWS_AS(LineStep({0.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(GridFunction2D(0, 0, 1.0, 1, {1.0}), std::invalid_argument);
}
