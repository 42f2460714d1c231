#include "doctest.h"
#include "vml/config.hpp"
#include "vml/numfmt.hpp"

using namespace vml;

TEST_CASE("ini parsing") {
  const std::string text =
      "# comment\n"
      "[run]\n"
      "command = verify   ; trailing comment\n"
      "seed = 42\n"
      "\n"
      "[family]\n"
      "count = 7\n";
  const IniMap ini = parse_ini(text);
  CHECK(ini.at("run").at("command") == "verify");
  CHECK(ini.at("run").at("seed") == "42");
  CHECK(ini.at("family").at("count") == "7");
  CHECK_THROWS_AS(parse_ini("[bad\n"), config_error);
  CHECK_THROWS_AS(parse_ini("keyonly\n"), config_error);
}

TEST_CASE("config materialization replays byte-for-byte") {
  const std::string text =
      "[run]\ncommand = verify\nseed = 9\n"
      "[exponent.p]\nkind = two-piece\nvalue0 = 1.5\nvalueinf = 2.25\n"
      "[exponent.q]\nkind = constant\nvalue = 2\n"
      "[space]\nlambda = 0.125\n"
      "[verify]\nexperiment = T3.1\nsamples = 512\n"
      "[family]\ncount = 5\nseed = 3\n";
  const RunConfig rc = config_from_ini(parse_ini(text));
  const std::string echo = rc.materialize();
  const RunConfig back = config_from_ini(parse_ini(echo));
  CHECK(back.materialize() == echo);
  CHECK(back.lambda == rc.lambda);
  CHECK(back.family.count == 5);
  CHECK(back.opts.samples == 512);
  CHECK(*back.p == *rc.p);
}

TEST_CASE("round-trip float formatting") {
  for (double v : {0.1, 1e-300, 3.141592653589793, 1e6, 5.0 / 3.0}) {
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK_THROWS_AS(parse_double("abc"), std::invalid_argument);
}

TEST_CASE("points grids") {
  const auto lin = parse_points("lin:0:1:5");
  CHECK(lin.size() == 5);
  CHECK(lin[0] == 0.0);
  CHECK(lin[4] == 1.0);
  const auto lg = parse_points("log:0.01:100:5");
  CHECK(lg[2] == doctest::Approx(1.0));
  const auto plain = parse_points("0.5, 2, 7");
  CHECK(plain == std::vector<double>{0.5, 2.0, 7.0});
}

TEST_CASE("function specs") {
  const std::string text =
      "[function.f]\nkind = grid2d\norigin = 0,0\nside = 1\nm = 2\n"
      "cells = 1,0,0,1\n";
  const RunConfig rc = config_from_ini(parse_ini(text));
  REQUIRE(rc.function.has_value());
  const auto step = rc.function->as_step();
  CHECK(step.support_end() == doctest::Approx(0.5));
  const std::string bad = "[function.f]\nkind = nope\n";
  CHECK_THROWS_AS(config_from_ini(parse_ini(bad)), config_error);
}
