#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace toddsum {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// n/d with any sign of d (the cpp_rational constructor requires d > 0)
inline Rat make_rat(Int n, Int d) {
    if (d == 0) throw std::invalid_argument("make_rat: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rat(std::move(n), std::move(d));
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& r) { return floor_div(num(r), den(r)); }

// <t> := t - [t], always in [0,1)
inline Rat fractional_part(const Rat& t) { return t - Rat(floor_rat(t)); }

inline Int int_pow(Int base, unsigned long e) {
    Int acc = 1;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e >= 0) {
        Int n = int_pow(num(base), static_cast<unsigned long>(e));
        Int d = int_pow(den(base), static_cast<unsigned long>(e));
        return Rat(n, d);
    }
    if (base == 0) throw std::domain_error("rat_pow: zero to negative power");
    Int n = int_pow(num(base), static_cast<unsigned long>(-e));
    Int d = int_pow(den(base), static_cast<unsigned long>(-e));
    return make_rat(d, n);
}

inline Int factorial_int(unsigned k) {
    Int acc = 1;
    for (unsigned i = 2; i <= k; ++i) acc *= i;
    return acc;
}

inline Int binomial_int(const Int& n, unsigned k) {
    Int acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= (n - i);
        acc /= (i + 1);
    }
    return acc;
}

// binomial C(m-1, r-1) extended by C(-1, k) = (-1)^k; used by the congruence
// right hand sides where m may be 0.
inline Int shifted_binomial(long m, long r) {
    long mm = m - 1, rr = r - 1;
    if (rr < 0) throw std::invalid_argument("shifted_binomial: r must be >= 1");
    if (mm == -1) return (rr % 2 == 0) ? Int(1) : Int(-1);
    if (mm < rr) return 0;
    return binomial_int(Int(mm), static_cast<unsigned>(rr));
}

// extended gcd: returns g, sets x,y with a*x + b*y = g
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return a < 0 ? Int(-a) : a;
    }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// canonical inverse of a modulo m, in [0, m); throws if not invertible
inline Int mod_inverse(const Int& a, const Int& m) {
    if (m <= 0) throw std::invalid_argument("mod_inverse: modulus must be positive");
    Int x, y;
    Int g = ext_gcd(a % m, m, x, y);
    if (g != 1) throw std::domain_error("mod_inverse: element not invertible");
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

inline Int mod_norm(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int mod_pow(Int b, Int e, const Int& m) {
    if (e < 0) return mod_pow(mod_inverse(b, m), -e, m);
    b = mod_norm(b, m);
    Int acc = 1;
    while (e > 0) {
        if ((e & 1) != 0) acc = acc * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return acc;
}

inline std::string rat_to_string(const Rat& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int n(s.substr(0, slash)), d(s.substr(slash + 1));
    return make_rat(n, d);
}

}  // namespace toddsum
