#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toddsum/rational.hpp"

namespace toddsum {

/// Integers mod q with runtime modulus; mixing moduli is an error.
struct Zmod {
    Int v;
    Int q;

    Zmod() : v(0), q(0) {}
    Zmod(Int value, Int modulus) : v(mod_norm(value, modulus)), q(std::move(modulus)) {
        if (q <= 0) throw std::invalid_argument("Zmod: modulus must be positive");
    }

    static void check(const Zmod& a, const Zmod& b) {
        if (a.q != b.q) throw std::invalid_argument("Zmod: modulus mismatch");
    }

    friend Zmod operator+(const Zmod& a, const Zmod& b) { check(a, b); return Zmod(a.v + b.v, a.q); }
    friend Zmod operator-(const Zmod& a, const Zmod& b) { check(a, b); return Zmod(a.v - b.v, a.q); }
    friend Zmod operator*(const Zmod& a, const Zmod& b) { check(a, b); return Zmod(a.v * b.v, a.q); }
    Zmod operator-() const { return Zmod(-v, q); }
    bool operator==(const Zmod& o) const { return q == o.q && v == o.v; }
};

template <class T>
struct RingTraits;

template <>
struct RingTraits<Int> {
    static constexpr const char* name = "Z";
    static bool is_zero(const Int& x) { return x == 0; }
    static bool is_unit(const Int& x) { return x == 1 || x == -1; }
    static Int invert(const Int& x) {
        if (!is_unit(x)) throw std::domain_error("Z: element not invertible");
        return x;
    }
    static bool is_nilpotent(const Int& x) { return x == 0; }
    static Int from_rat(const Rat& r) {
        if (den(r) != 1) throw std::invalid_argument("Z: not an integer");
        return num(r);
    }
    static std::string to_string(const Int& x) { return x.str(); }
};

template <>
struct RingTraits<Rat> {
    static constexpr const char* name = "Q";
    static bool is_zero(const Rat& x) { return x == 0; }
    static bool is_unit(const Rat& x) { return x != 0; }
    static Rat invert(const Rat& x) {
        if (x == 0) throw std::domain_error("Q: division by zero");
        return Rat(1) / x;
    }
    static bool is_nilpotent(const Rat& x) { return x == 0; }
    static Rat from_rat(const Rat& r) { return r; }
    static std::string to_string(const Rat& x) { return rat_to_string(x); }
};

template <>
struct RingTraits<Zmod> {
    static constexpr const char* name = "Z/q";
    static bool is_zero(const Zmod& x) { return x.v == 0; }
    static bool is_unit(const Zmod& x) { return boost::multiprecision::gcd(x.v, x.q) == 1; }
    static Zmod invert(const Zmod& x) { return Zmod(mod_inverse(x.v, x.q), x.q); }
    static bool is_nilpotent(const Zmod& x) {
        // x nilpotent iff every prime of q divides x; q | x^bits(q)
        if (x.v == 0) return true;
        unsigned long e = boost::multiprecision::msb(x.q) + 1;
        return mod_pow(x.v, Int(e), x.q) == 0;
    }
    static std::string to_string(const Zmod& x) { return x.v.str(); }
};

template <class T>
inline T ring_one_like(const T& sample) {
    if constexpr (std::is_same_v<T, Zmod>) return Zmod(1, sample.q);
    else return T(1);
}

template <class T>
inline T ring_zero_like(const T& sample) {
    if constexpr (std::is_same_v<T, Zmod>) return Zmod(0, sample.q);
    else return T(0);
}

/// Sparse multivariate Laurent polynomial: exponents in Z, coefficients in T.
template <class T>
struct LaurentPolynomial {
    std::vector<std::string> vars;
    std::map<std::vector<long>, T> terms;

    LaurentPolynomial() = default;
    explicit LaurentPolynomial(std::vector<std::string> v) : vars(std::move(v)) {}

    size_t arity() const { return vars.size(); }
    bool is_zero() const { return terms.empty(); }

    void add_term(const std::vector<long>& exps, const T& c) {
        if (exps.size() != vars.size())
            throw std::invalid_argument("LaurentPolynomial: exponent arity mismatch");
        if (RingTraits<T>::is_zero(c)) return;
        auto [it, inserted] = terms.emplace(exps, c);
        if (!inserted) {
            it->second = it->second + c;
            if (RingTraits<T>::is_zero(it->second)) terms.erase(it);
        }
    }

    static void check_compatible(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        if (a.vars != b.vars)
            throw std::invalid_argument("LaurentPolynomial: variable set mismatch");
    }

    friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        check_compatible(a, b);
        LaurentPolynomial out = a;
        for (const auto& [e, c] : b.terms) out.add_term(e, c);
        return out;
    }

    friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        check_compatible(a, b);
        LaurentPolynomial out = a;
        for (const auto& [e, c] : b.terms) out.add_term(e, -c);
        return out;
    }

    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        check_compatible(a, b);
        LaurentPolynomial out(a.vars);
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                std::vector<long> e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    LaurentPolynomial scaled(const T& s) const {
        LaurentPolynomial out(vars);
        for (const auto& [e, c] : terms) out.add_term(e, c * s);
        return out;
    }

    LaurentPolynomial operator-() const {
        LaurentPolynomial out(vars);
        for (const auto& [e, c] : terms) out.add_term(e, -c);
        return out;
    }

    bool operator==(const LaurentPolynomial& o) const { return vars == o.vars && terms == o.terms; }

    /// Substitutes value for the named variable; negative exponents need an invertible value.
    LaurentPolynomial substitute(const std::string& var, const T& value) const {
        size_t vi = index_of(var);
        std::vector<std::string> nv = vars;
        nv.erase(nv.begin() + static_cast<long>(vi));
        LaurentPolynomial out(nv);
        std::optional<T> inv;
        for (const auto& [e, c] : terms) {
            long k = e[vi];
            T factor = c;
            if (k != 0) {
                T base = value;
                if (k < 0) {
                    if (!inv) inv = RingTraits<T>::invert(value);
                    base = *inv;
                    k = -k;
                }
                for (long i = 0; i < k; ++i) factor = factor * base;
            }
            std::vector<long> ne(e);
            ne.erase(ne.begin() + static_cast<long>(vi));
            out.add_term(ne, factor);
        }
        return out;
    }

    /// coefficient of the all-zero exponent; T{} when absent
    T coefficient_at_zero() const {
        auto it = terms.find(std::vector<long>(vars.size(), 0));
        return it == terms.end() ? T{} : it->second;
    }

    size_t index_of(const std::string& var) const {
        auto it = std::find(vars.begin(), vars.end(), var);
        if (it == vars.end()) throw std::invalid_argument("LaurentPolynomial: unknown variable " + var);
        return static_cast<size_t>(it - vars.begin());
    }

    long min_degree_in(size_t vi) const {
        long m = 0;
        bool first = true;
        for (const auto& [e, c] : terms) {
            if (first || e[vi] < m) m = e[vi];
            first = false;
        }
        return m;
    }

    long max_degree_in(size_t vi) const {
        long m = 0;
        bool first = true;
        for (const auto& [e, c] : terms) {
            if (first || e[vi] > m) m = e[vi];
            first = false;
        }
        return m;
    }
};

using LaurentZ = LaurentPolynomial<Int>;
using LaurentQ = LaurentPolynomial<Rat>;
using LaurentZq = LaurentPolynomial<Zmod>;

/// Evaluates an integer-coefficient Laurent polynomial mod q; negative
/// exponents use modular inverses of the (unit) arguments.
inline Int evaluate_mod(const LaurentZ& f, const std::vector<Int>& p, const Int& q) {
    if (p.size() != f.arity()) throw std::invalid_argument("evaluate_mod: arity mismatch");
    std::vector<Int> pn(p.size()), pinv(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        pn[i] = mod_norm(p[i], q);
        pinv[i] = mod_inverse(pn[i], q);
    }
    Int tot = 0;
    for (const auto& [e, c] : f.terms) {
        Int t = mod_norm(c, q);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            const Int& base = e[i] > 0 ? pn[i] : pinv[i];
            t = t * mod_pow(base, Int(e[i] > 0 ? e[i] : -e[i]), q) % q;
        }
        tot = (tot + t) % q;
    }
    return tot;
}

/// Condition (H): some variable whose top-degree coefficient is a monomial in
/// the others. Returns the first witnessing variable index.
template <class T>
inline std::optional<size_t> condition_H_witness(const LaurentPolynomial<T>& f) {
    if (f.is_zero() || f.arity() == 0) return std::nullopt;
    for (size_t vi = 0; vi < f.arity(); ++vi) {
        long top = f.max_degree_in(vi);
        size_t count = 0;
        for (const auto& [e, c] : f.terms)
            if (e[vi] == top) ++count;
        if (count == 1) return vi;
    }
    return std::nullopt;
}

template <class T>
inline bool check_condition_H(const LaurentPolynomial<T>& f) {
    return condition_H_witness(f).has_value();
}

}  // namespace toddsum
