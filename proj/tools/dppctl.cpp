#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpp/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dppctl: planning and preference analysis for finite-horizon "
               "decision processes ordered by a relation over trajectory "
               "distributions"};
  app.require_subcommand(1);
  app.footer("Exit codes: 0 success/holds, 2 refuted/not-exists, 3 relation "
             "not total, 4 input error, 5 limit exceeded.\n"
             "DPP_NO_PARALLEL=1 is accepted; execution is single-threaded "
             "either way.");

  dpp::RunConfig config;

  struct CommandDef {
    const char* name;
    const char* help;
    bool needs_input;
  };
  const std::vector<CommandDef> commands = {
      {"plan", "backward-induction policy for the input preference", true},
      {"verify", "plan, then check the policy against every competitor", true},
      {"brute-force", "enumerate all deterministic policies and keep the optima",
       true},
      {"check-axioms", "falsify preorder axioms on a seeded testset", true},
      {"check-mfa", "check the feature map for the Markov property", true},
      {"feature-exists", "decide existence of an optimal feature-based policy",
       true},
      {"plan-frequency", "plan by the frequency order of feature-action pairs",
       true},
      {"fit-utility", "fit a linear utility to the input preference", true},
      {"fit-feature-reward", "fit a feature-action reward to the preference",
       true},
      {"repro", "rerun a built-in worked case", false},
  };
  for (const CommandDef& s : commands) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    if (s.needs_input)
      sub->add_option("--input", config.input, "definition file (JSON)")
          ->required();
    sub->add_option("--seed", config.seed, "testset seed (default 0)");
    sub->add_option("--limit-policies", config.limit_policies,
                    "cap on attainable decision histories for enumeration "
                    "(default 20)");
    sub->add_option("--testset-size", config.testset_size,
                    "random testset members on top of Diracs and mixtures "
                    "(default 16)");
    sub->add_option("--output", config.output, "also write the report here");
    if (std::string(s.name) == "check-axioms")
      sub->add_option("--axiom", config.axiom,
                      "check only this axiom (totality, transitivity, "
                      "consistency, convexity, interpolation)");
    if (std::string(s.name) == "repro")
      sub->add_option("--case", config.case_name,
                      "no-optimum | risk | lexicographic")
          ->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 4;  // flag misuse is an input error; --help is not
  }
  config.command = app.get_subcommands().front()->get_name();

  dpp::RunOutcome out = dpp::run(config);
  const std::string bytes = dpp::report_bytes(out.report);
  std::cout << bytes;
  if (!config.output.empty()) {
    std::ofstream file(config.output, std::ios::binary);
    file << bytes;
    if (!file) {
      std::cerr << "cannot write report to " << config.output << "\n";
      return 4;
    }
  }
  return out.exit_code;
}
