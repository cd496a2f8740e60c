#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "toddsum/laurent.hpp"

namespace toddsum {

/// Quotient of Laurent polynomials over a common ring; denominator nonzero.
template <class T>
struct RationalFn {
    LaurentPolynomial<T> num;
    LaurentPolynomial<T> den;

    RationalFn(LaurentPolynomial<T> n, LaurentPolynomial<T> d)
        : num(std::move(n)), den(std::move(d)) {
        LaurentPolynomial<T>::check_compatible(num, den);
        if (den.is_zero()) throw std::invalid_argument("RationalFn: zero denominator");
    }

    T ring_one() const { return ring_one_like(den.terms.begin()->second); }
};

struct InadmissibleError : std::domain_error {
    explicit InadmissibleError(const std::string& what) : std::domain_error(what) {}
};

/// Finite window of a univariate Laurent series: coefficients of x^k, k <= order.
template <class T>
struct LaurentSeries {
    long min_exp = 0;
    long order = 0;
    std::map<long, T> coeffs;  // zero coefficients omitted

    T coefficient(long k, const T& zero = T{}) const {
        auto it = coeffs.find(k);
        return it == coeffs.end() ? zero : it->second;
    }
};

namespace detail {

template <class T>
std::map<long, T> unicoeffs(const LaurentPolynomial<T>& f) {
    std::map<long, T> out;
    for (const auto& [e, c] : f.terms) out.emplace(e[0], c);
    return out;
}

template <class T>
void series_add(std::map<long, T>& into, long e, const T& c) {
    auto it = into.find(e);
    if (it == into.end()) {
        if (!RingTraits<T>::is_zero(c)) into.emplace(e, c);
    } else {
        it->second = it->second + c;
        if (RingTraits<T>::is_zero(it->second)) into.erase(it);
    }
}

template <class T>
std::map<long, T> series_mul(const std::map<long, T>& a, const std::map<long, T>& b, long order) {
    std::map<long, T> out;
    for (const auto& [i, ci] : a)
        for (const auto& [j, cj] : b) {
            if (i + j > order) continue;
            series_add(out, i + j, T(ci * cj));
        }
    return out;
}

// 1/g as a Laurent series up to x^order; unit and nilpotent leading
// coefficients per the one-variable admissibility lemma, anything else throws.
template <class T>
std::map<long, T> invert_series(const std::map<long, T>& g, long order, const std::string& var) {
    if (g.empty()) throw InadmissibleError("division by zero while expanding in " + var);
    long v = g.begin()->first;
    const T& c0 = g.begin()->second;

    if (RingTraits<T>::is_unit(c0)) {
        // power series inverse of g/x^v; result exponent k - v <= order
        T inv0 = RingTraits<T>::invert(c0);
        long kmax = order + v;
        std::map<long, T> r;
        r.emplace(0, inv0);
        for (long k = 1; k <= kmax; ++k) {
            bool any = false;
            T acc{};
            for (const auto& [j, cj] : g) {
                long jj = j - v;
                if (jj <= 0 || jj > k) continue;
                auto it = r.find(k - jj);
                if (it == r.end()) continue;
                T t = cj * it->second;
                if (any) acc = acc + t; else { acc = t; any = true; }
            }
            if (!any) continue;
            T val = -(inv0 * acc);
            if (!RingTraits<T>::is_zero(val)) r.emplace(k, val);
        }
        std::map<long, T> out;
        for (const auto& [k, c] : r) out.emplace(k - v, c);
        return out;
    }

    if (RingTraits<T>::is_nilpotent(c0)) {
        // g = x^v (c0 + x h(x)); 1/g = sum_{j>=0} (-c0)^j x^{-v-j-1} (1/h)^{j+1},
        // a finite sum by nilpotency of c0
        std::map<long, T> h;
        for (const auto& [j, cj] : g)
            if (j != v) h.emplace(j - v - 1, cj);
        if (h.empty())
            throw InadmissibleError("denominator not invertible while expanding in " + var);
        std::vector<T> c0pow{ring_one_like(c0)};  // (-c0)^j
        T minus_c0 = -c0;
        while (!RingTraits<T>::is_zero(c0pow.back())) c0pow.push_back(c0pow.back() * minus_c0);
        long jmax = static_cast<long>(c0pow.size()) - 2;

        long inner_order = order + v + 1 + jmax;
        std::map<long, T> hinv = invert_series(h, inner_order, var);
        std::map<long, T> out;
        std::map<long, T> power = hinv;  // (1/h)^{j+1}
        for (long j = 0; j <= jmax; ++j) {
            for (const auto& [k, c] : power) {
                long e = k - v - 1 - j;
                if (e > order) continue;
                series_add(out, e, T(c * c0pow[static_cast<size_t>(j)]));
            }
            if (j < jmax) power = series_mul(power, hinv, inner_order);
        }
        return out;
    }
    throw InadmissibleError("denominator leading coefficient neither unit nor nilpotent in " + var);
}

}  // namespace detail

/// Laurent expansion of a univariate rational function up to x^order.
template <class T>
LaurentSeries<T> univariate_laurent_expand(const RationalFn<T>& f, long order) {
    if (f.num.arity() != 1)
        throw std::invalid_argument("univariate_laurent_expand: need exactly one variable");
    const std::string& var = f.num.vars[0];
    auto g = detail::unicoeffs(f.den);
    auto p = detail::unicoeffs(f.num);
    LaurentSeries<T> out;
    out.order = order;
    if (p.empty()) return out;
    long pmin = p.begin()->first;
    auto ginv = detail::invert_series(g, order - pmin, var);
    std::map<long, T> res;
    for (const auto& [i, ci] : p)
        for (const auto& [j, cj] : ginv) {
            if (i + j > order) continue;
            detail::series_add(res, i + j, T(ci * cj));
        }
    out.coeffs = std::move(res);
    out.min_exp = out.coeffs.empty() ? 0 : out.coeffs.begin()->first;
    return out;
}

namespace detail {

// One stage of the iterated constant term: the coefficient of var^0 of f,
// expanding with respect to var over the remaining variables. The lowest
// denominator coefficient is kept symbolically in the denominator.
template <class T>
RationalFn<T> ct_stage(const RationalFn<T>& f, const std::string& var) {
    size_t vi = f.num.index_of(var);
    std::vector<std::string> rest = f.num.vars;
    rest.erase(rest.begin() + static_cast<long>(vi));
    T one = f.ring_one();

    auto split = [&](const LaurentPolynomial<T>& g) {
        std::map<long, LaurentPolynomial<T>> out;
        for (const auto& [e, c] : g.terms) {
            std::vector<long> re(e);
            re.erase(re.begin() + static_cast<long>(vi));
            auto [it, inserted] = out.try_emplace(e[vi], rest);
            it->second.add_term(re, c);
        }
        return out;
    };

    auto P = split(f.num);
    auto Q = split(f.den);
    LaurentPolynomial<T> zero(rest);
    LaurentPolynomial<T> unit(rest);
    unit.add_term(std::vector<long>(rest.size(), 0), one);
    if (P.empty()) return RationalFn<T>(zero, unit);

    long v = Q.begin()->first;
    long u = P.begin()->first;
    const LaurentPolynomial<T>& Q0 = Q.begin()->second;

    if (Q.size() == 1) {
        // monomial denominator in var: CT = P_v / Q0
        auto it = P.find(v);
        if (it == P.end()) return RationalFn<T>(zero, Q0);
        return RationalFn<T>(it->second, Q0);
    }
    if (u > v) return RationalFn<T>(zero, unit);

    // S_0 = 1, S_k = - sum_{j=1}^{k} Q_{v+j} S_{k-j} Q0^{j-1};
    // CT = sum_{u<=i<=v} P_i S_{v-i} Q0^{i-u} over Q0^{v-u+1}
    long K = v - u;
    std::vector<LaurentPolynomial<T>> S{unit};
    std::vector<LaurentPolynomial<T>> q0pow{unit};
    auto q0_power = [&](long k) -> const LaurentPolynomial<T>& {
        while (static_cast<long>(q0pow.size()) <= k) q0pow.push_back(q0pow.back() * Q0);
        return q0pow[static_cast<size_t>(k)];
    };
    for (long k = 1; k <= K; ++k) {
        LaurentPolynomial<T> acc(rest);
        for (long j = 1; j <= k; ++j) {
            auto it = Q.find(v + j);
            if (it == Q.end()) continue;
            acc = acc + it->second * S[static_cast<size_t>(k - j)] * q0_power(j - 1);
        }
        S.push_back(-acc);
    }
    LaurentPolynomial<T> numerator(rest);
    for (const auto& [i, Pi] : P) {
        if (i > v) break;
        numerator = numerator + Pi * S[static_cast<size_t>(v - i)] * q0_power(i - u);
    }
    return RationalFn<T>(numerator, q0_power(K + 1));
}

template <class T>
T finalize_scalar(const RationalFn<T>& f) {
    T one = f.ring_one();
    T n = ring_zero_like(one), d = ring_zero_like(one);
    for (const auto& [e, c] : f.num.terms) n = c;
    for (const auto& [e, c] : f.den.terms) d = c;
    if (RingTraits<T>::is_zero(d))
        throw InadmissibleError("iterated constant term: zero denominator at final stage");
    if (RingTraits<T>::is_zero(n)) return ring_zero_like(one);
    if (RingTraits<T>::is_unit(d)) return n * RingTraits<T>::invert(d);
    if constexpr (std::is_same_v<T, Int>) {
        if (n % d == 0) return n / d;
    }
    throw InadmissibleError("iterated constant term not a ring element (final division)");
}

}  // namespace detail

/// Iterated constant term with respect to the ordered flag A = (x_1,...,x_n):
/// CT_{x_1} o ... o CT_{x_n}, the last-listed variable expanded first.
template <class T>
T iterated_constant_term(const RationalFn<T>& f, const std::vector<std::string>& order) {
    if (order.size() != f.num.arity())
        throw std::invalid_argument("iterated_constant_term: order must list every variable");
    RationalFn<T> cur = f;
    for (auto it = order.rbegin(); it != order.rend(); ++it) cur = detail::ct_stage(cur, *it);
    return detail::finalize_scalar(cur);
}

/// Residue at the Parshin point of the flag: the coefficient of x_1^{-1} after
/// constant terms in x_n,...,x_2; equals iCT(x_1 * f).
template <class T>
T iterated_residue(const RationalFn<T>& f, const std::vector<std::string>& order) {
    if (order.empty()) throw std::invalid_argument("iterated_residue: empty flag");
    LaurentPolynomial<T> x1(f.num.vars);
    std::vector<long> e(f.num.vars.size(), 0);
    e[f.num.index_of(order.front())] = 1;
    x1.add_term(e, f.ring_one());
    return iterated_constant_term(RationalFn<T>(f.num * x1, f.den), order);
}

/// Structural admissibility from the layered decomposition of the denominator
/// g = a_0 + a_1(x_1) x_1 + ... + a_n(x_1..x_n) x_n.
template <class T>
bool admissible(const RationalFn<T>& f, const std::vector<std::string>& order) {
    if (f.den.is_zero()) return false;
    // make the denominator a genuine polynomial: shift out negative exponents
    LaurentPolynomial<T> g(f.den.vars);
    {
        std::vector<long> shift(f.den.vars.size(), 0);
        for (size_t i = 0; i < f.den.vars.size(); ++i)
            shift[i] = std::max(0L, -f.den.min_degree_in(i));
        for (const auto& [e, c] : f.den.terms) {
            std::vector<long> ne(e);
            for (size_t i = 0; i < ne.size(); ++i) ne[i] += shift[i];
            g.add_term(ne, c);
        }
    }
    std::vector<size_t> pos;
    for (const auto& v : order) pos.push_back(g.index_of(v));

    // layer of a monomial: largest flag position with nonzero exponent
    size_t n = order.size();
    std::vector<LaurentPolynomial<T>> layer(n + 1, LaurentPolynomial<T>(g.vars));
    for (const auto& [e, c] : g.terms) {
        size_t li = 0;
        for (size_t i = 0; i < n; ++i)
            if (e[pos[i]] > 0) li = i + 1;
        layer[li].add_term(e, c);
    }

    auto is_zero_divisor = [](const LaurentPolynomial<T>& a) {
        if (a.is_zero()) return true;
        if constexpr (std::is_same_v<T, Zmod>) {
            Int g2 = 0, q = 0;
            for (const auto& [e, c] : a.terms) {
                g2 = boost::multiprecision::gcd(g2, c.v);
                q = c.q;
            }
            return boost::multiprecision::gcd(g2, q) != 1;
        } else {
            return false;  // over Z and Q a nonzero polynomial is not a zero divisor
        }
    };
    auto is_nilpotent_poly = [](const LaurentPolynomial<T>& a) {
        for (const auto& [e, c] : a.terms)
            if (!RingTraits<T>::is_nilpotent(c)) return false;
        return true;
    };

    for (size_t i = 0; i <= n; ++i) {
        if (is_zero_divisor(layer[i])) continue;
        for (size_t j = 0; j < i; ++j)
            if (!is_nilpotent_poly(layer[j])) return false;
        if (i == 0) return true;  // constant non-zerodivisor is a unit over our rings
        // a_i = layer_i / x_i, then recurse on 1/a_i over the flag (x_1,...,x_i)
        LaurentPolynomial<T> ai(g.vars);
        for (const auto& [e, c] : layer[i].terms) {
            std::vector<long> ne(e);
            ne[pos[i - 1]] -= 1;
            ai.add_term(ne, c);
        }
        LaurentPolynomial<T> one(g.vars);
        one.add_term(std::vector<long>(g.vars.size(), 0), f.ring_one());
        std::vector<std::string> sub(order.begin(), order.begin() + static_cast<long>(i));
        return admissible(RationalFn<T>(one, ai), sub);
    }
    return false;
}

}  // namespace toddsum
