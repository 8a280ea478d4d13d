#include "gradhedge/rational.hpp"

#include <algorithm>
#include <cctype>

namespace gradhedge {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) throw ParseError("malformed rational: '" + std::string(whole) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("malformed rational: '" + std::string(whole) + "'");
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view s = trim(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
    const Integer num = parse_integer(trim(s.substr(0, slash)), text);
    const Integer den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Vec parse_vector(std::string_view text) {
    Vec out;
    std::string_view rest = trim(text);
    if (rest.empty()) return out;
    while (true) {
        const auto comma = rest.find(',');
        out.push_back(parse_rational(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

std::string to_string(const Vec& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += to_string(v[i]);
    }
    return out + ")";
}

Vec zeros(std::size_t d) { return Vec(d, Rational(0)); }

Vec unit(std::size_t d, std::size_t j) {
    Vec e = zeros(d);
    e.at(j) = 1;
    return e;
}

Rational dot(const Vec& a, const Vec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    }
    return s;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scaled(const Vec& a, const Rational& s) {
    Vec r(a);
    for (auto& x : r) x *= s;
    return r;
}

Vec negated(const Vec& a) { return scaled(a, Rational(-1)); }

void axpy(Vec& y, const Rational& a, const Vec& x) {
    if (a.is_zero()) return;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!x[i].is_zero()) y[i] += a * x[i];
    }
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

Vec primitive(const Vec& v) {
    Integer l = 1;
    for (const auto& x : v) {
        if (!x.is_zero()) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
    }
    Integer g = 0;
    std::vector<Integer> ints;
    ints.reserve(v.size());
    for (const auto& x : v) {
        Integer n = boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x));
        g = boost::multiprecision::gcd(g, n);
        ints.push_back(std::move(n));
    }
    Vec out(v.size());
    if (g == 0) return zeros(v.size());
    g = boost::multiprecision::abs(g);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
    return out;
}

bool lex_less(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace gradhedge
