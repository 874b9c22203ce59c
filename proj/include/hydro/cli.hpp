#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hydro/errors.hpp"

namespace hydro {

inline constexpr const char* kVersion = "0.1.0";

/// Process exit code for each error class: 2 usage or parse, 3 validation,
/// 4 IO, 5 numerical failure, 6 violated structural constraint, 1 otherwise.
int exit_code(ErrorCode code);

/// Entry point behind the hydrolab executable. args excludes the program
/// name. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hydro
