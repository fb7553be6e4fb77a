#include "fockproj/rational.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <string>

#include "fockproj/errors.hpp"

namespace fockproj {

namespace {

using boost::multiprecision::cpp_int;

struct Decimal {
    Rational value;
    int significant_digits = 0;
};

Decimal parse_decimal(std::string_view s, std::string_view whole) {
    auto fail = [&] { throw InvalidArgument("cannot parse number '" + std::string(whole) + "'"); };
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
    cpp_int digits = 0;
    int frac_digits = 0;
    int count = 0;
    int significant = 0;
    bool seen_point = false;
    for (; i < s.size(); ++i) {
        const char ch = s[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits = digits * 10 + (ch - '0');
            ++count;
            if (significant > 0 || ch != '0') ++significant;
            if (seen_point) ++frac_digits;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (count == 0) fail();
    long exponent = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        const auto res = std::from_chars(s.data() + i, s.data() + s.size(), exponent);
        if (res.ec != std::errc{} || res.ptr == s.data() + i) {
            // from_chars rejects a leading '+'
            if (i < s.size() && s[i] == '+') {
                const auto r2 = std::from_chars(s.data() + i + 1, s.data() + s.size(), exponent);
                if (r2.ec != std::errc{}) fail();
                i = static_cast<std::size_t>(r2.ptr - s.data());
            } else {
                fail();
            }
        } else {
            i = static_cast<std::size_t>(res.ptr - s.data());
        }
        if (std::abs(exponent) > 4000) fail();
    }
    if (i != s.size()) fail();
    exponent -= frac_digits;
    Rational v(digits);
    const cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(std::abs(exponent)));
    if (exponent >= 0) v *= scale;
    else v /= scale;
    if (negative) v = -v;
    return {v, significant};
}

}  // namespace

double Number::to_double() const { return fockproj::to_double(value); }

Number parse_number(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw InvalidArgument("empty number");
    Number out;
    out.text = std::string(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        const Decimal d = parse_decimal(s, text);
        out.value = d.value;
        out.approximate = d.significant_digits >= 16;
        return out;
    }
    const Decimal num = parse_decimal(s.substr(0, slash), text);
    const Decimal den = parse_decimal(s.substr(slash + 1), text);
    if (den.value == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    out.value = num.value / den.value;
    out.approximate = num.significant_digits >= 16 || den.significant_digits >= 16;
    return out;
}

Number from_double(double x) {
    if (!std::isfinite(x)) throw InvalidArgument("non-finite parameter value");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    const std::string text(buf, res.ptr);
    Number out;
    out.text = text;
    out.value = parse_decimal(text, text).value;
    out.approximate = out.value != Rational(x);
    return out;
}

std::string to_string(const Rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace fockproj
