#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gauduchon {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs the command line with args excluding the program name. Reports go to out (or the
/// --out file), diagnostics to err. Returns 0 on success, 1 when an applicable identity check
/// fails, 2 on invalid input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gauduchon
