#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "thickpat/set_descriptor.hpp"

namespace thickpat::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kUsage = 1, kValidation = 2, kAlarm = 3 };

/// Inline shorthand or a JSON file path:
///   middle:p/q[@lo,hi]
///   ifs:r1:o1,r2:o2,...[@lo,hi]   (ratio:offset per child, relative to the hull)
///   gaps:a:b,c:d,...[@lo,hi]      (open gaps; hull defaults to [0,1])
SetDescriptor parse_descriptor_arg(const std::string& text);

/// Comma-separated rationals.
std::vector<Rational> parse_rational_list(const std::string& text);

/// Runs one command; all output goes to `out` / `err`, interactive input comes from `in`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace thickpat::cli
