#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symq/group.hpp"
#include "symq/linalg.hpp"
#include "symq/params.hpp"
#include "symq/rational.hpp"

namespace symq {

// Parsed form of a .scn file. Line-oriented sections:
//
//   [phi]                 one configuration label per line
//   [generators]          name = (0 1)(2 3)   or   name = [1, 0, 3, 2]
//   [parameter NAME]      values = lab:num, ... ; map = lab lab ... ; maximal = bool
//   [experiment NAME]     mechanism = first|either  or  likelihood HYP = p/q
//   [explicit_rep]        projective = bool ; matrix GEN = (n rows of n entries)
//   [design]              units = n ; block = i j k ; treatment = name: i j
//   [options]             name, base, trial_model, group_cap
//   [expect]              outcome EXP HYP = p/q ; subgroup PARAM = perm, perm, ...
//
// '#' starts a comment; blank lines are ignored; complex entries are re+imi.
struct ScenarioFile {
  std::string name;
  std::vector<std::string> phi;
  std::vector<std::pair<std::string, Perm>> generators;
  std::vector<ParameterMap> parameters;

  struct Channel {
    std::string name;
    std::string mechanism;                       // "first", "either" or empty
    std::vector<std::pair<std::string, Rational>> likelihood;
  };
  std::vector<Channel> channels;

  struct ExplicitRep {
    bool projective = false;
    std::vector<std::pair<std::string, Matrix>> generator_images;
  };
  std::optional<ExplicitRep> explicit_rep;

  struct Design {
    int units = 0;
    std::vector<std::vector<int>> blocks;        // empty => one block of all units
    std::vector<std::pair<std::string, std::vector<int>>> treatments;
  };
  std::optional<Design> design;

  std::string base_experiment;                   // parameter name; empty = first
  std::string trial_model;                       // "example1" or empty
  int group_cap = kDefaultGroupCap;

  struct Expectations {
    // outcome[channel][hypothesis] = declared probability
    std::map<std::string, std::map<std::string, Rational>> outcome;
    // subgroup[parameter] = declared element list
    std::map<std::string, std::vector<Perm>> subgroup;
  };
  Expectations expect;

  int parameter_index(const std::string& nm) const;  // -1 if absent
  int channel_index(const std::string& nm) const;
  int base_index() const;                            // resolved, validated
};

ScenarioFile parse_scenario(const std::string& text, const std::string& origin = "<string>");
ScenarioFile load_scenario(const std::string& path);

// Canonical text form; parse(serialize(s)) == parse-equal to s.
std::string serialize_scenario(const ScenarioFile& s);

// Group closure plus cross-validation of everything that needs the group
// (generator degrees, parameter domains, explicit matrix shapes).
struct BuiltScenario {
  ScenarioFile file;
  FiniteGroup group;
  GroupAction action;   // defining action on phi
};

BuiltScenario build_scenario(const ScenarioFile& file);
BuiltScenario load_and_build(const std::string& path);

// Shared parsing helpers (also used by the CLI).
Perm parse_perm_text(const std::string& text, int degree, const std::string& what);
Complex parse_complex(const std::string& token);
std::string format_complex(Complex z);

}  // namespace symq
