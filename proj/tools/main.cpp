#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "symq/errors.hpp"
#include "symq/pipeline.hpp"

namespace {

symq::Tolerances profile_tolerances(const std::string& profile) {
  if (profile == "strict") return symq::Tolerances::strict();
  if (profile == "default") return symq::Tolerances::defaults();
  throw symq::ValidationError("unknown tolerance profile '" + profile + "'");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) return;
    out.push_back(std::stoi(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ')
      flush();
    else
      cur += c;
  }
  flush();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite symmetry scenarios: group checks, Hilbert-space construction, "
               "transition probabilities, inference simulation, design reduction"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = ".", profile = "default", base_override;
  app.add_option("--out", out_dir, "directory for CSV outputs")->capture_default_str();
  app.add_option("--tolerance-profile", profile, "strict or default")->capture_default_str();
  app.add_option("--base", base_override, "override the scenario's base experiment");

  auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("scenario", scenario_path, "path to a .scn file")->required();
    cmd->fallthrough();
  };

  auto* validate = app.add_subcommand("validate", "structural checks A-G with witnesses");
  add_scenario(validate);
  auto* build = app.add_subcommand("build", "representations, subspaces, operators, residuals");
  add_scenario(build);
  std::string born_a, born_b;
  auto* born = app.add_subcommand("born", "transition probability matrix between two experiments");
  add_scenario(born);
  born->add_option("a", born_a, "source experiment")->required();
  born->add_option("b", born_b, "target experiment")->required();
  auto* states = app.add_subcommand("states", "state census and question round trips");
  add_scenario(states);

  symq::SimulateOptions sim_opt;
  auto* simulate = app.add_subcommand("simulate", "seeded trial simulation plus Bayes posterior");
  add_scenario(simulate);
  simulate->add_option("--experiment", sim_opt.channel, "channel to query");
  simulate->add_option("--hypothesis", sim_opt.hypothesis, "pin the apparatus content");
  simulate->add_option("--n", sim_opt.n, "trial count")->capture_default_str();
  simulate->add_option("--seed", sim_opt.seed, "random seed")->capture_default_str();
  simulate->add_option("--lifetime", sim_opt.lifetime,
                       "trials per apparatus when the hypothesis is drawn (0 = one draw)")
      ->capture_default_str();

  std::string subset_text, pattern_text;
  int zero_patterns = 0;
  auto* reduce = app.add_subcommand("reduce", "orbit closure, zero patterns, design strata");
  add_scenario(reduce);
  reduce->add_option("--subset", subset_text, "comma-separated configuration indices");
  reduce->add_option("--zero-patterns", zero_patterns, "coordinate count for the census");
  reduce->add_option("--pattern", pattern_text, "symbolic pattern, e.g. 'b1=0, b2!=0'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const symq::Tolerances tol = profile_tolerances(profile);
    symq::ScenarioFile file = symq::load_scenario(scenario_path);
    if (!base_override.empty()) file.base_experiment = base_override;
    const symq::BuiltScenario scn = symq::build_scenario(file);

    symq::PipelineResult result;
    if (*validate) {
      result = symq::run_validate(scn, tol);
    } else if (*build) {
      result = symq::run_build(scn, tol);
    } else if (*born) {
      result = symq::run_born(scn, born_a, born_b, tol);
    } else if (*states) {
      result = symq::run_states(scn, tol);
    } else if (*simulate) {
      result = symq::run_simulate(scn, sim_opt);
    } else {
      symq::ReduceOptions opt;
      if (!subset_text.empty()) opt.subset = parse_int_list(subset_text);
      if (zero_patterns > 0) opt.zero_patterns = zero_patterns;
      opt.pattern = pattern_text;
      result = symq::run_reduce(scn, opt, tol);
    }

    std::filesystem::create_directories(out_dir);
    for (const auto& [name, content] : result.files) {
      const auto path = std::filesystem::path(out_dir) / name;
      std::ofstream os(path, std::ios::binary);
      os << content;
      if (!os) throw symq::Error("cannot write " + path.string());
      std::cout << "wrote " << path.string() << "\n";
    }
    std::cout << result.report;
    return result.exit_code;
  } catch (const symq::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const symq::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const symq::Error& e) {
    std::cerr << "error (" << scenario_path << "): " << e.what() << "\n";
    return 1;
  }
}
