#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ugraph {

// Exact arbitrary-precision rationals. All construction-level arithmetic in
// this project is carried out on these; doubles appear only at the sampling
// boundary and in Monte-Carlo summaries.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational make_rational(const Int& n, const Int& d) {
    if (d == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(n, d);  // cpp_rational canonicalizes (gcd 1, positive den)
}

/// Formats as "p/q", or "p" when the denominator is 1.
inline std::string format_rational(const Rational& r) {
    std::string s = num(r).str();
    if (den(r) != 1) {
        s += '/';
        s += den(r).str();
    }
    return s;
}

/// Parses "p", "p/q", or "-p/q". No whitespace inside the token.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() {
        throw std::invalid_argument("rational: cannot parse '" + std::string(text) + "'");
    };
    auto parse_int = [&](std::string_view part) -> Int {
        std::size_t i = 0;
        if (!part.empty() && (part[0] == '+' || part[0] == '-')) i = 1;
        if (i == part.size()) fail();
        for (std::size_t j = i; j < part.size(); ++j)
            if (part[j] < '0' || part[j] > '9') fail();
        return Int(std::string(part));
    };
    if (text.empty()) fail();
    std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Int n = parse_int(text.substr(0, slash));
    Int d = parse_int(text.substr(slash + 1));
    if (d <= 0) fail();
    return make_rational(n, d);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Int floor_int(const Rational& r) {
    Int q = num(r) / den(r);
    if (num(r) < 0 && q * den(r) != num(r)) --q;
    return q;
}

inline Int ceil_int(const Rational& r) {
    Int q = num(r) / den(r);
    if (num(r) > 0 && q * den(r) != num(r)) ++q;
    return q;
}

/// Nearest rational of the form k / 2^bits to x (ties away from zero).
/// Used to snap sampled coordinates onto an exact grid before any
/// adjacency query.
inline Rational dyadic_round(double x, unsigned bits = 40) {
    if (!std::isfinite(x)) throw std::invalid_argument("dyadic_round: non-finite input");
    double scaled = std::ldexp(x, static_cast<int>(bits));
    if (std::abs(scaled) >= 9.0e18)
        throw std::invalid_argument("dyadic_round: input out of range");
    long long k = std::llround(scaled);
    Int d = Int(1) << bits;
    return make_rational(Int(k), d);
}

/// Smallest-denominator rational in the closed interval [lo, hi]
/// (Stern-Brocot descent). Requires lo <= hi.
inline Rational simplest_in_interval(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_in_interval: empty range");
    if (lo <= 0 && 0 <= hi) return Rational(0);
    if (hi < 0) return -simplest_in_interval(-hi, -lo);
    // 0 < lo <= hi
    Rational a = lo, b = hi;
    // Iterative continued-fraction walk; accumulate the convergent.
    // result = p + 1/(p' + 1/(...)) built from the integer parts.
    std::vector<Int> terms;
    while (true) {
        Int ic = ceil_int(a);
        if (Rational(ic) <= b) {
            terms.push_back(ic);
            break;
        }
        Int fl = floor_int(a);
        terms.push_back(fl);
        Rational na = Rational(1) / (b - Rational(fl));
        Rational nb = Rational(1) / (a - Rational(fl));
        a = na;
        b = nb;
    }
    Rational r(terms.back());
    for (std::size_t i = terms.size() - 1; i-- > 0;)
        r = Rational(terms[i]) + Rational(1) / r;
    return r;
}

/// Fixed-point decimal rendering (round half away from zero), for reports.
inline std::string decimal_string(const Rational& r, unsigned digits = 6) {
    Int scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    Int n = num(r) * scale * 2 + (num(r) >= 0 ? den(r) : -den(r));
    Int q = n / (den(r) * 2);
    bool neg = q < 0;
    Int aq = neg ? Int(-q) : q;
    std::string ds = aq.str();
    if (ds.size() <= digits) ds.insert(0, digits + 1 - ds.size(), '0');
    ds.insert(ds.size() - digits, ".");
    return (neg ? "-" : "") + ds;
}

}  // namespace ugraph
