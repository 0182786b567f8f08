#pragma once

#include <string>
#include <string_view>

namespace mcqgen {

/// Hex SHA-256 of the input bytes.
std::string sha256_hex(std::string_view data);

/// Hex SHA-256 of a file's bytes. Throws IoError when unreadable.
std::string sha256_file_hex(const std::string& path);

}  // namespace mcqgen
