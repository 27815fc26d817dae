// Small exact rational on int64, reduced and with overflow checks. Covers the
// optional exact mode for matrices whose entries are small fractions; all
// information measures stay in double.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "icl/errors.hpp"

namespace icl {

class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den);
    Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)

    // Accepts "p/q", "p", and exactly-representable decimals like "0.25".
    static Rational parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return {-num_, den_}; }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    bool is_zero() const { return num_ == 0; }
    Rational abs() const { return num_ < 0 ? Rational{-num_, den_} : *this; }

private:
    std::int64_t num_{0};
    std::int64_t den_{1};
};

}  // namespace icl
