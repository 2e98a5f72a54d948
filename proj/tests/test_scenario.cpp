#include <string>
#include <vector>

#include "doctest.h"
#include "fractb/errors.hpp"
#include "fractb/scenario.hpp"
#include "fractb/tb_model.hpp"

using fractb::ModelParams;
using fractb::parse_scenario;
using fractb::Scenario;
using fractb::serialize_scenario;

namespace {

Scenario parse(std::string_view text, std::vector<std::string> overrides = {}) {
  return parse_scenario(text, overrides);
}

}  // namespace

TEST_CASE("empty input resolves to the baseline scenario") {
  const Scenario s = parse("");
  const ModelParams defaults;
  CHECK(s.params.Lambda == defaults.Lambda);
  CHECK(s.params.gamma == defaults.gamma);
  CHECK(s.focp.alpha == 1.0);
  CHECK(s.focp.grid.tf == 5.0);
  CHECK(s.focp.grid.n_steps == 2000);
  CHECK(s.focp.B == 0.15);
  CHECK(s.out_dir == ".");

  const auto eq = endemic_equilibrium(defaults);
  CHECK(s.x0.S == eq.S);
  CHECK(s.x0.I == eq.I);
}

TEST_CASE("keys, comments and whitespace are read leniently") {
  const Scenario s = parse(
      "# comment line\n"
      "\n"
      "alpha = 0.9   # trailing comment\n"
      "  steps=400\t\n"
      "beta = 6e-4\n"
      "out = runs/a\n");
  CHECK(s.focp.alpha == 0.9);
  CHECK(s.focp.grid.n_steps == 400);
  CHECK(s.params.beta == 6e-4);
  CHECK(s.out_dir == "runs/a");
}

TEST_CASE("overrides apply after the file, last writer wins") {
  const Scenario s = parse("alpha = 0.9\ntf = 3\n", {"alpha=0.8", "steps=500"});
  CHECK(s.focp.alpha == 0.8);
  CHECK(s.focp.grid.tf == 3.0);
  CHECK(s.focp.grid.n_steps == 500);
}

TEST_CASE("an explicit initial state replaces the equilibrium default") {
  const Scenario s = parse("S0 = 1\nL0 = 2\nI0 = 3\nT0 = 4\n");
  CHECK(s.x0.S == 1.0);
  CHECK(s.x0.L == 2.0);
  CHECK(s.x0.I == 3.0);
  CHECK(s.x0.T == 4.0);

  const Scenario sentinel = parse("x0 = equilibrium\nbeta = 6e-4\n");
  const ModelParams tweaked = [] {
    ModelParams p;
    p.beta = 6e-4;
    return p;
  }();
  CHECK(sentinel.x0.I == endemic_equilibrium(tweaked).I);
}

TEST_CASE("conflicting or partial initial-state keys are rejected") {
  CHECK_THROWS_AS(parse("x0 = equilibrium\nS0 = 1\n"), fractb::ParseError);
  CHECK_THROWS_AS(parse("S0 = 1\nL0 = 2\n"), fractb::ParseError);
  CHECK_THROWS_AS(parse("x0 = somewhere\n"), fractb::ParseError);
}

TEST_CASE("malformed lines report the source and line number") {
  try {
    parse_scenario("alpha = 0.9\nnot a key value line\n", {}, "config.txt");
    FAIL("expected ParseError");
  } catch (const fractb::ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("config.txt:2") != std::string::npos);
  }

  CHECK_THROWS_AS(parse("alpha = \n"), fractb::ParseError);
  CHECK_THROWS_AS(parse("alpha = 0.9 extra\n"), fractb::ParseError);
  CHECK_THROWS_AS(parse("steps = 2.5\n"), fractb::ParseError);
}

TEST_CASE("unknown keys and invalid values are distinct failures") {
  CHECK_THROWS_AS(parse("betta = 5e-4\n"), fractb::UnknownKey);
  CHECK_THROWS_AS(parse("", {"nonsense=1"}), fractb::UnknownKey);
  CHECK_THROWS_AS(parse("k = 1.5\n"), fractb::InvariantViolation);
  CHECK_THROWS_AS(parse("theta = 0\n"), fractb::InvariantViolation);
  CHECK_THROWS_AS(parse("", {"alpha"}), fractb::ParseError);
}

TEST_CASE("serialization round-trips exactly") {
  const Scenario original = parse(
      "alpha = 0.85\n"
      "tf = 7\n"
      "steps = 1234\n"
      "beta = 0.00061\n"
      "mu = 0.0142857142857\n"
      "B = 0.45\n"
      "S0 = 7000.125\n"
      "L0 = 40000.5\n"
      "I0 = 170.25\n"
      "T0 = 75.0625\n"
      "out = runs/exp1\n");
  const std::string text = serialize_scenario(original);
  const Scenario reloaded = parse(text);
  CHECK(reloaded == original);
}

TEST_CASE("serialized baseline mentions every key once") {
  const std::string text = serialize_scenario(parse(""));
  for (const char* key :
       {"Lambda", "beta", "mu", "k", "delta", "epsilon", "gamma", "alpha1",
        "alpha2", "S0", "L0", "I0", "T0", "alpha", "tf", "steps", "B", "rho",
        "u_max", "C", "theta", "tol", "max_iter", "out"}) {
    const std::string needle = std::string(key) + " = ";
    const auto first = text.find(needle);
    REQUIRE(first != std::string::npos);
    CHECK(text.find(needle, first + 1) == std::string::npos);
  }
}

TEST_CASE("loading an unreadable path fails, an empty path does not") {
  CHECK_THROWS_AS(fractb::load_scenario("/nonexistent/config", {}),
                  fractb::ParseError);
  const Scenario s = fractb::load_scenario("", {});
  CHECK(s.focp.grid.n_steps == 2000);
}
