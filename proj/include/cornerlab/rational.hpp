#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace cornerlab {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

/// Thrown on malformed user input (bad literals, inconsistent files, ...).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an iteration or node cap is exhausted before a sound answer.
class CapExceededError : public std::runtime_error {
public:
    explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

inline Int num(const Rat& q) { return numerator(q); }
inline Int den(const Rat& q) { return denominator(q); }

inline bool is_integer(const Rat& q) { return den(q) == 1; }

inline Int floor_rat(const Rat& q) {
    Int n = num(q), d = den(q);
    Int f = n / d;
    if (n < 0 && f * d != n) --f;
    return f;
}

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

inline Rat abs_rat(const Rat& q) { return q < 0 ? Rat(-q) : q; }

/// Parses "p", "-p" or "p/q" with q > 0 after normalization.
inline Rat parse_rat(const std::string& text) {
    if (text.empty()) throw InputError("empty rational literal");
    try {
        Rat q(text);
        return q;
    } catch (const std::exception&) {
        throw InputError("bad rational literal: '" + text + "'");
    }
}

/// Canonical form: "p" for integers, "p/q" otherwise.
inline std::string format_rat(const Rat& q) {
    if (is_integer(q)) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd(a, b) * b;
}

/// lcm of the denominators of a list of rationals (1 for an empty list).
inline Int common_denominator(const std::vector<Rat>& qs) {
    Int l = 1;
    for (const Rat& q : qs) l = lcm_int(l, den(q));
    return l;
}

/// Closed rational interval [lo, hi].
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::logic_error("interval bounds out of order");
    }
    static RatInterval point(const Rat& v) { return RatInterval(v, v); }

    Rat width() const { return hi - lo; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool excludes_zero() const { return lo > 0 || hi < 0; }

    RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }

    /// Exact image under multiplication by a rational scalar.
    RatInterval scaled(const Rat& c) const {
        if (c >= 0) return {lo * c, hi * c};
        return {hi * c, lo * c};
    }

    /// Interval square: tight hull of {v^2 : v in [lo, hi]}.
    RatInterval squared() const {
        Rat a = lo * lo, b = hi * hi;
        Rat mx = a > b ? a : b;
        if (lo <= 0 && 0 <= hi) return {Rat(0), mx};
        Rat mn = a < b ? a : b;
        return {mn, mx};
    }
};

/// Enclosure of sqrt(s) for s >= 0 with width <= `width`, by bisection.
inline RatInterval sqrt_enclosure(const Rat& s, const Rat& width) {
    if (s < 0) throw std::domain_error("sqrt of negative rational");
    if (width <= 0) throw std::domain_error("enclosure width must be positive");
    if (s == 0) return RatInterval::point(Rat(0));
    // Exact case: numerator and denominator both perfect squares.
    Int rn = sqrt(num(s)), rd = sqrt(den(s));
    if (rn * rn == num(s) && rd * rd == den(s)) return RatInterval::point(Rat(rn, rd));
    Rat lo = 0, hi = s < 1 ? Rat(1) : s;
    while (hi - lo > width) {
        Rat mid = (lo + hi) / 2;
        if (mid * mid <= s)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

}  // namespace cornerlab
