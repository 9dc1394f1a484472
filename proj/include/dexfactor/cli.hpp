#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dexfactor::cli {

// Process exit statuses; stable across releases.
enum ExitCode : int {
  kOk = 0,
  kComposite = 1,  // isprime verdict only
  kInvalidInput = 2,
  kStepLimit = 3,
  kBaselineFailure = 4,
};

// Overrides the default iteration budget when --max-steps is absent.
inline constexpr const char* kStepBudgetEnv = "DEXFACTOR_MAX_STEPS";

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dexfactor::cli
