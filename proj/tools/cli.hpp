#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace adjsep::cli {

// Runs one command line (without the program name). Exit codes: 0 result,
// 1 no such set exists, 2 usage, parse or validation error. `pulled`, when
// given, receives the number of sets drawn from an enumeration stream.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        std::size_t* pulled = nullptr);

}  // namespace adjsep::cli
