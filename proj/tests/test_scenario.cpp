#include <string>

#include "doctest.h"
#include "symq/errors.hpp"
#include "symq/scenario.hpp"

using namespace symq;

namespace {

std::string scenario_path(const std::string& name) {
  return std::string(SYMQ_SCENARIO_DIR) + "/" + name;
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("complex number parsing and formatting") {
  CHECK(parse_complex("1") == Complex(1.0, 0.0));
  CHECK(parse_complex("-2.5") == Complex(-2.5, 0.0));
  CHECK(parse_complex("3i") == Complex(0.0, 3.0));
  CHECK(parse_complex("0.5-0.5i") == Complex(0.5, -0.5));
  CHECK(parse_complex("1e-2+2.5e-1i") == Complex(0.01, 0.25));
  CHECK(parse_complex("0-1i") == Complex(0.0, -1.0));
  CHECK_THROWS_AS(parse_complex("fish"), ParseError);

  for (const Complex z : {Complex(0.25, -0.75), Complex(-1e-9, 3.0), Complex(2.0, 0.0)})
    CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("permutation text accepts cycles and image lists") {
  CHECK(parse_perm_text("(0 1)(2 3)", 4, "t") == Perm{1, 0, 3, 2});
  CHECK(parse_perm_text("[2, 0, 1]", 3, "t") == Perm{2, 0, 1});
  CHECK(parse_perm_text("()", 3, "t") == Perm{0, 1, 2});
  CHECK_THROWS_AS(parse_perm_text("(0 1)(1 2)", 3, "t"), NotBijective);
  CHECK_THROWS_AS(parse_perm_text("[0, 0, 1]", 3, "t"), NotBijective);
  CHECK_THROWS_AS(parse_perm_text("(0 9)", 4, "t"), ParseError);
  CHECK_THROWS_AS(parse_perm_text("[0, 1]", 3, "t"), ParseError);
}

TEST_CASE("bundled descriptions parse with the expected shape") {
  const ScenarioFile tri = load_scenario(scenario_path("triangle.scn"));
  CHECK(tri.name == "triangle");
  CHECK(tri.phi.size() == 6);
  CHECK(tri.phi[0] == "ABC");
  REQUIRE(tri.generators.size() == 2);
  CHECK(tri.generators[0].first == "r");
  CHECK(tri.generators[0].second == Perm{3, 5, 1, 4, 0, 2});
  REQUIRE(tri.parameters.size() == 3);
  CHECK(tri.parameters[0].name == "w1");
  CHECK(tri.parameters[0].values == std::vector<std::string>{"A", "B", "C"});
  REQUIRE(tri.parameters[0].numeric.has_value());
  CHECK((*tri.parameters[0].numeric) == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(tri.parameters[0].table == std::vector<int>{0, 0, 1, 1, 2, 2});
  CHECK(tri.base_experiment == "w1");
  CHECK(tri.base_index() == 0);
  REQUIRE(tri.expect.subgroup.count("w1"));
  CHECK(tri.expect.subgroup.at("w1").size() == 3);

  const ScenarioFile ex1 = load_scenario(scenario_path("example1.scn"));
  CHECK(ex1.trial_model == "example1");
  REQUIRE(ex1.channels.size() == 2);
  CHECK(ex1.channels[0].name == "a");
  CHECK(ex1.channels[0].mechanism == "first");
  CHECK(ex1.channels[1].mechanism == "either");
  CHECK(ex1.expect.outcome.at("b").at("die") == Rational(11, 36));
  CHECK(ex1.expect.outcome.at("b").at("cards") == Rational(16, 36));

  const ScenarioFile octa = load_scenario(scenario_path("spin-octa.scn"));
  REQUIRE(octa.explicit_rep.has_value());
  CHECK(octa.explicit_rep->projective);
  REQUIRE(octa.explicit_rep->generator_images.size() == 2);
  CHECK(octa.explicit_rep->generator_images[0].second.rows() == 2);

  const ScenarioFile blocks = load_scenario(scenario_path("blocks.scn"));
  REQUIRE(blocks.design.has_value());
  CHECK(blocks.design->units == 12);
  CHECK(blocks.design->blocks.size() == 3);
  REQUIRE(blocks.design->treatments.size() == 1);
  CHECK(blocks.design->treatments[0].first == "active");
  CHECK(blocks.design->treatments[0].second == std::vector<int>{0, 1, 4, 5, 8, 9});
}

TEST_CASE("serialization round-trips byte for byte") {
  for (const char* name : {"triangle.scn", "example1.scn", "qubit-tetra.scn", "spin-octa.scn",
                           "crd.scn", "blocks.scn"}) {
    const ScenarioFile first = load_scenario(scenario_path(name));
    const std::string text = serialize_scenario(first);
    const ScenarioFile second = parse_scenario(text, first.name + ".scn");
    CHECK(serialize_scenario(second) == text);
  }
}

TEST_CASE("parse errors are aggregated with line numbers") {
  const std::string text =
      "[phi]\n"
      "x\n"
      "y\n"
      "x\n"  // duplicate label
      "\n"
      "[generators]\n"
      "bad = [0, 0]\n"  // not a permutation
      "\n"
      "[nonsense]\n"  // unknown section
      "k = v\n";
  try {
    parse_scenario(text, "probe");
    FAIL("expected a parse failure");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("probe: 3 error(s)") != std::string::npos);
    CHECK(msg.find("duplicate configuration label 'x'") != std::string::npos);
    CHECK(msg.find("generator 'bad'") != std::string::npos);
    CHECK(msg.find("unknown section [nonsense]") != std::string::npos);
  }
}

TEST_CASE("an empty description is rejected for the right reason") {
  try {
    parse_scenario("", "empty");
    FAIL("expected a parse failure");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("missing [phi] section") != std::string::npos);
  }
}

TEST_CASE("eigenvalues are all-or-none per parameter") {
  const std::string text =
      "[phi]\n"
      "p\n"
      "q\n"
      "\n"
      "[parameter m]\n"
      "values = up:1, down\n"
      "map = up down\n";
  CHECK_THROWS_AS(parse_scenario(text, "mixed"), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  const std::string text =
      "# leading comment\n"
      "[phi]\n"
      "one  # trailing comment\n"
      "two\n"
      "\n"
      "[parameter p]\n"
      "values = u, v\n"
      "map = u v\n";
  const ScenarioFile s = parse_scenario(text, "c");
  CHECK(s.phi == std::vector<std::string>{"one", "two"});
  CHECK(s.parameters[0].table == std::vector<int>{0, 1});
}

TEST_CASE("building cross-validates group against declarations") {
  const BuiltScenario tri = load_and_build(scenario_path("triangle.scn"));
  CHECK(tri.group.order() == 6);
  CHECK(tri.action.domain_size == 6);

  // a parameter whose map length disagrees with the configuration count
  const std::string bad_map =
      "[phi]\na\nb\nc\n\n[parameter p]\nvalues = u, v\nmap = u v\n";
  CHECK_THROWS_AS(parse_scenario(bad_map, "bad"), ParseError);

  // explicit matrices must be unitary
  const std::string bad_unitary =
      "[phi]\na\nb\n\n"
      "[generators]\nflip = (0 1)\n\n"
      "[parameter p]\nvalues = u:1, v:-1\nmap = u v\n\n"
      "[explicit_rep]\n"
      "matrix flip =\n"
      "  2 0\n"
      "  0 1\n";
  CHECK_THROWS_AS(build_scenario(parse_scenario(bad_unitary, "nu")), UnitarityViolation);

  // explicit matrices must name the declared generators
  const std::string bad_name =
      "[phi]\na\nb\n\n"
      "[generators]\nflip = (0 1)\n\n"
      "[parameter p]\nvalues = u:1, v:-1\nmap = u v\n\n"
      "[explicit_rep]\n"
      "matrix other =\n"
      "  1 0\n"
      "  0 1\n";
  CHECK_THROWS_AS(build_scenario(parse_scenario(bad_name, "nn")), ValidationError);

  // base must refer to a declared parameter
  const std::string bad_base =
      "[phi]\na\nb\n\n[parameter p]\nvalues = u, v\nmap = u v\n\n[options]\nbase = missing\n";
  CHECK_THROWS_AS(build_scenario(parse_scenario(bad_base, "nb")), UnknownExperiment);
}

TEST_CASE("design blocks must partition the units") {
  const std::string overlapping =
      "[phi]\nu0\nu1\nu2\nu3\n\n"
      "[design]\n"
      "units = 4\n"
      "block = 0 1\n"
      "block = 1 2 3\n";
  CHECK_THROWS_AS(build_scenario(parse_scenario(overlapping, "ov")), ValidationError);
}

}  // TEST_SUITE
