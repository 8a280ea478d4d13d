#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gradhedge {

/// Exact rational in canonical form (gcd 1, positive denominator), GMP backed.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// A point or direction in Q^d.
using Vec = std::vector<Rational>;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses "p/q", "p" or "-p/q". Throws ParseError on malformed text or q = 0.
Rational parse_rational(std::string_view text);

/// Always "p/q", so integers print as "5/1" and zero as "0/1".
std::string to_string(const Rational& r);

/// Decimal approximation for human-readable output only.
double to_double(const Rational& r);

/// Comma-separated list of rationals, e.g. "0,14/3".
Vec parse_vector(std::string_view text);
std::string to_string(const Vec& v);

Vec zeros(std::size_t d);
Vec unit(std::size_t d, std::size_t j);
Rational dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, const Rational& s);
Vec negated(const Vec& a);
void axpy(Vec& y, const Rational& a, const Vec& x);  // y += a * x
bool is_zero(const Vec& v);

/// Positive multiple of v with coprime integer entries; zero stays zero.
Vec primitive(const Vec& v);

/// Lexicographic order on vectors of equal length.
bool lex_less(const Vec& a, const Vec& b);

}  // namespace gradhedge
