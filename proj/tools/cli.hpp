#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "endorank/certificates.hpp"

namespace endorank::cli {

enum ExitCode : int { kComputed = 0, kInputError = 1, kExhausted = 2 };

/// args excludes the program name. Budget resolution: --budget, then
/// ENDORANK_BUDGET, then the engine default.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SelftestRow {
  std::string check;
  std::string expected;
  std::string observed;
  bool pass = false;
};

/// Worked-example regression suite behind the selftest command.
std::vector<SelftestRow> run_selftest(const EngineConfig& cfg, std::uint64_t seed);

}  // namespace endorank::cli
