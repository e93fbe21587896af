#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pclab::cli {

inline constexpr const char* kVersion = "0.1.0";

// Runs one command; args excludes the program name. Reports go to `out`.
// Returns 0 on success, 2 on input errors, 1 on computational errors.
int run(const std::vector<std::string>& args, std::ostream& out);

// Hex SHA-256 of the data.
std::string sha256_hex(const std::string& data);

}  // namespace pclab::cli
