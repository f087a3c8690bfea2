#include "csv.hpp"

#include "superpov/error.hpp"

#include <charconv>

#include <fmt/format.h>

namespace superpov::csv {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

namespace {

void split(std::string_view line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
}

} // namespace

Reader::Reader(std::istream& in, std::string_view what, const std::vector<std::string_view>& expected)
    : in_{in}, what_{what}, columns_{expected.size()} {
    std::vector<std::string_view> header;
    do {
        if (!std::getline(in_, buffer_)) throw ParseError(fmt::format("{}: empty input, expected header", what_));
        ++line_no_;
    } while (trim(buffer_).empty());
    split(buffer_, header);
    bool ok = header.size() == expected.size();
    for (std::size_t i = 0; ok && i < header.size(); ++i) ok = header[i] == expected[i];
    if (!ok)
        throw ParseError(fmt::format("{}: bad header '{}', expected '{}'", what_, trim(buffer_),
                                     fmt::join(expected, ",")));
}

bool Reader::next(std::vector<std::string_view>& fields) {
    while (std::getline(in_, buffer_)) {
        ++line_no_;
        if (trim(buffer_).empty()) continue;
        split(buffer_, fields);
        if (fields.size() != columns_)
            throw ParseError(fmt::format("{}: line {}: expected {} fields, got {}", what_, line_no_, columns_,
                                         fields.size()));
        return true;
    }
    return false;
}

double to_double(std::string_view s, std::string_view what, std::size_t line) {
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    auto res = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError(fmt::format("{}: line {}: malformed number '{}'", what, line, s));
    return v;
}

std::string format_double(double v) { return fmt::format("{}", v); }

} // namespace superpov::csv
