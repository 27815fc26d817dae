#include "icl/rational.hpp"

#include <charconv>
#include <numeric>

namespace icl {

namespace {

std::int64_t checked(__int128 v, const char* op) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw NumericalError(std::string("rational overflow in ") + op);
    return static_cast<std::int64_t>(v);
}

std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("not an integer: '" + std::string(s) + "'");
    return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw NumericalError("rational with zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
}

Rational Rational::parse(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return {parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto whole = text.substr(0, dot);
        const auto frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 18) throw ParseError("bad decimal: '" + std::string(text) + "'");
        std::int64_t den = 1;
        for (size_t i = 0; i < frac.size(); ++i) den = checked(__int128{den} * 10, "parse");
        const bool neg = !whole.empty() && whole.front() == '-';
        const std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
        const std::int64_t f = parse_int(frac);
        __int128 num = __int128{w} * den + (neg ? -__int128{f} : __int128{f});
        return {checked(num, "parse"), den};
    }
    return {parse_int(text), 1};
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
    const std::int64_t g = std::gcd(den_, o.den_);
    const __int128 num = __int128{num_} * (o.den_ / g) + __int128{o.num_} * (den_ / g);
    const __int128 den = __int128{den_} * (o.den_ / g);
    return {checked(num, "+"), checked(den, "+")};
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    const std::int64_t g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
    const std::int64_t g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
    const __int128 num = __int128{num_ / g1} * (o.num_ / g2);
    const __int128 den = __int128{den_ / g2} * (o.den_ / g1);
    return {checked(num, "*"), checked(den, "*")};
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw NumericalError("rational division by zero");
    return *this * Rational{o.den_, o.num_};
}

bool Rational::operator<(const Rational& o) const {
    return __int128{num_} * o.den_ < __int128{o.num_} * den_;
}

}  // namespace icl
