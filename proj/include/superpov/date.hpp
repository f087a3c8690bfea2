#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace superpov {

/// Calendar day (proleptic Gregorian), ISO-8601 `YYYY-MM-DD` on the wire.
class Date {
public:
    Date() = default;
    Date(int year, unsigned month, unsigned day);

    /// Throws ParseError for anything that is not a valid `YYYY-MM-DD`.
    static Date parse(std::string_view text);

    std::string iso() const;

    int year() const;
    unsigned month() const;
    unsigned day() const;

    Date operator+(int n) const { return Date{days_ + std::chrono::days{n}}; }
    Date operator-(int n) const { return Date{days_ - std::chrono::days{n}}; }
    int operator-(Date other) const { return static_cast<int>((days_ - other.days_).count()); }

    friend auto operator<=>(const Date&, const Date&) = default;

private:
    explicit Date(std::chrono::sys_days d) : days_{d} {}

    std::chrono::sys_days days_{};
};

} // namespace superpov
