// Command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
// 3 sampling exhaustion.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace a2ops {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace a2ops
