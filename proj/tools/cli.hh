#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace defekt::cli {

enum ExitCode { kOk = 0, kError = 1, kInconclusive = 2, kUsage = 64 };

// Runs the `defekt` command line. The JSON report goes to `out` (or to
// --out), errors to `err` as a JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Splits a polynomial file into statements: ';' or newlines separate, lines
// ending in an operator continue, '#' starts a comment.
std::vector<std::string> split_statements(const std::string& text);

std::string sha256_hex(const std::string& data);

}  // namespace defekt::cli
