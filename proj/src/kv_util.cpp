#include "kv_util.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace soilsong::detail {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<KvPair> parse_kv(const std::string& text) {
    std::vector<KvPair> pairs;
    std::istringstream in(text);
    std::string raw_line;
    int line_no = 0;
    while (std::getline(in, raw_line)) {
        ++line_no;
        const std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        KvPair p;
        p.line = line_no;
        p.key = std::string(trim(line.substr(0, eq)));
        p.value = std::string(trim(line.substr(eq + 1)));
        if (p.key.empty())
            throw std::runtime_error("line " + std::to_string(line_no) + ": empty key");
        pairs.push_back(std::move(p));
    }
    return pairs;
}

int parse_int(std::string_view token, const std::string& context) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw std::runtime_error(context + ": expected an integer, got '" +
                                 std::string(token) + "'");
    return value;
}

double parse_double(std::string_view token, const std::string& context) {
    // from_chars for doubles is missing on some libstdc++ versions; stod is fine here.
    try {
        size_t used = 0;
        const double value = std::stod(std::string(token), &used);
        if (used != token.size()) throw std::invalid_argument("trailing junk");
        return value;
    } catch (const std::exception&) {
        throw std::runtime_error(context + ": expected a number, got '" +
                                 std::string(token) + "'");
    }
}

bool parse_bool(std::string_view token, const std::string& context) {
    if (token == "true" || token == "1" || token == "yes") return true;
    if (token == "false" || token == "0" || token == "no") return false;
    throw std::runtime_error(context + ": expected true/false, got '" +
                             std::string(token) + "'");
}

} // namespace soilsong::detail
