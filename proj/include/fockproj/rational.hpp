#pragma once
// Exact rational numbers for the boundedness decision, with parsing of "a/b" and decimal input.

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fockproj {

using Rational = boost::multiprecision::cpp_rational;

/// A parsed parameter: its exact value and whether that value only approximates what was meant.
struct Number {
    Rational value;
    bool approximate = false;
    std::string text;  // input as given

    double to_double() const;
};

/// Accepts integers, decimals with optional exponent ("1.5", "-2e-3") and quotients of those
/// ("3/2", "1.5/7"). Decimals are taken exactly; those with 16 or more significant digits are
/// flagged approximate, being most likely a rounded repeating expansion. Throws InvalidArgument.
Number parse_number(std::string_view text);

/// Shortest decimal that round-trips to x, taken exactly; flagged approximate unless it equals
/// the binary value of x.
Number from_double(double x);

/// "p/q", or "p" for integers.
std::string to_string(const Rational& r);
double to_double(const Rational& r);

}  // namespace fockproj
