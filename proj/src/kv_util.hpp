#pragma once

// Internal helper for the line-based `key = value` file formats
// (calibration profiles, CLI config overrides).

#include <string>
#include <string_view>
#include <vector>

namespace soilsong::detail {

struct KvPair {
    int line = 0;
    std::string key;
    std::string value;
};

std::string_view trim(std::string_view s);

/// Splits text into key/value pairs, skipping blank lines and lines whose
/// first non-space character is '#'. Throws std::runtime_error with a line
/// number for anything else that is not `key = value`.
std::vector<KvPair> parse_kv(const std::string& text);

/// Parses a whole-token integer/double; throws std::runtime_error carrying
/// `context` on junk.
int parse_int(std::string_view token, const std::string& context);
double parse_double(std::string_view token, const std::string& context);
bool parse_bool(std::string_view token, const std::string& context);

} // namespace soilsong::detail
