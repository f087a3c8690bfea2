#pragma once

// Minimal reader for the flat comma-separated files used by the tool.
// No quoting: none of the formats carry commas inside a field.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace superpov::csv {

class Reader {
public:
    /// Reads the header line and checks it against `expected` (whitespace-trimmed).
    Reader(std::istream& in, std::string_view what, const std::vector<std::string_view>& expected);

    /// Next non-blank record; false at end of input. Field count is checked.
    bool next(std::vector<std::string_view>& fields);

    std::size_t line() const { return line_no_; }
    std::string_view what() const { return what_; }

private:
    std::istream& in_;
    std::string what_;
    std::size_t columns_;
    std::string buffer_;
    std::size_t line_no_ = 0;
};

std::string_view trim(std::string_view s);

/// Strict decimal parse. Accepts `nan`/`inf` so callers can report non-finite values themselves.
double to_double(std::string_view s, std::string_view what, std::size_t line);

/// Shortest representation that round-trips exactly.
std::string format_double(double v);

} // namespace superpov::csv
