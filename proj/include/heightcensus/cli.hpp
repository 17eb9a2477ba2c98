#pragma once

// Command-line front end. Exit codes: 0 pass, 1 verified failure,
// 2 usage or domain error, 3 budget or precision exhausted.

#include <iosfwd>
#include <string>
#include <vector>

namespace hc {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hc
