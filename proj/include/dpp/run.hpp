#pragma once

#include <cstdint>
#include <string>

#include "dpp/json_io.hpp"

namespace dpp {

// One CLI invocation, fully specified. `testset_size` sets the random-member
// count of axiom and fitting testsets (Dirac and mixture members are always
// included); `axiom` restricts check-axioms to one axiom when nonempty.
struct RunConfig {
  std::string command;
  std::string input;
  std::uint64_t seed = 0;
  long long limit_policies = 20;
  int testset_size = 16;
  std::string output;     // handled by the CLI front end, not by run()
  std::string case_name;  // repro case: no-optimum | risk | lexicographic
  std::string axiom;
};

struct RunOutcome {
  int exit_code = 0;
  Json report;
};

// Executes one command. Failures fold into the report and the exit code
// (0 success/holds, 2 refuted/not-exists, 3 relation-not-total, 4 input
// error, 5 limit exceeded); nothing escapes as an exception.
RunOutcome run(const RunConfig& config);

// Canonical bytes of a report. Reruns with equal (input, seed) match exactly.
std::string report_bytes(const Json& report);

// The schema every emitted report validates against; published in docs/.
Json report_schema();

// Checks a report against report_schema() (the schema uses a small JSON
// Schema subset that is evaluated natively here).
bool validate_report(const Json& report);

}  // namespace dpp
