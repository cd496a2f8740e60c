#pragma once

#include <stdexcept>
#include <vector>

#include "toddsum/bernoulli.hpp"
#include "toddsum/multiindex.hpp"
#include "toddsum/toddcore.hpp"

namespace toddsum {

/// (q; p_1,...,p_{n-1}) with 1 <= p_i < q and gcd(p_i, q) = 1.
struct DedekindInput {
    Int q;
    std::vector<Int> p;

    DedekindInput(Int q_, std::vector<Int> p_) : q(std::move(q_)), p(std::move(p_)) { validate(); }

    size_t dimension() const { return p.size() + 1; }

    void validate() const {
        if (p.empty()) {
            if (q < 1) throw std::invalid_argument("DedekindInput: q must be positive");
            return;
        }
        if (q < 2) throw std::invalid_argument("DedekindInput: q must be >= 2");
        for (const Int& pi : p) {
            if (pi < 1 || pi >= q)
                throw std::invalid_argument("DedekindInput: p_i must satisfy 1 <= p_i < q");
            if (boost::multiprecision::gcd(pi, q) != 1)
                throw std::invalid_argument("DedekindInput: gcd(p_i, q) != 1");
        }
    }
};

namespace detail {

inline const std::vector<Rat>& periodic_row(const Int& q, int j) {
    // periodic Bernoulli row differs from the polynomial row only at k=0, j=1
    static std::mutex mtx;
    static std::map<std::pair<Int, int>, std::vector<Rat>> cache;
    if (j != 1) return bernoulli_row(q, j);
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(q, j);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Rat> row = bernoulli_row(q, 1);
    row[0] = 0;
    return cache.emplace(key, std::move(row)).first->second;
}

}  // namespace detail

/// Generalized Dedekind sum s_r(q; p_1,...,p_{n-1}) by direct summation.
inline Rat dedekind_sum(const MultiIndex& r, const Int& q, const std::vector<Int>& p) {
    size_t n = r.size();
    if (n > 0 && !all_positive(r))
        throw std::invalid_argument("dedekind_sum: indices must be >= 1");
    if (n == 0) return 1;
    if (p.size() + 1 != n) throw std::invalid_argument("dedekind_sum: p has wrong length");
    if (n == 1) return periodic_bernoulli(static_cast<unsigned>(r[0]), 0);
    std::vector<Int> pn = toddsum::detail::normalized_p(q, p);

    std::vector<const std::vector<Rat>*> rows(n);
    for (size_t i = 0; i < n; ++i) rows[i] = &detail::periodic_row(q, r[i]);

    long qq = static_cast<long>(q);
    std::vector<long> pl(pn.size());
    for (size_t i = 0; i < pn.size(); ++i) pl[i] = static_cast<long>(pn[i]);
    Rat total = 0;
    std::vector<long> k(n - 1, 0);
    while (true) {
        Rat term = 1;
        long m = 0;
        for (size_t i = 0; i + 1 < n; ++i) {
            term *= (*rows[i])[static_cast<size_t>(k[i])];
            m = (m + pl[i] * k[i]) % qq;
        }
        term *= (*rows[n - 1])[static_cast<size_t>(m)];
        total += term;
        size_t pos = 0;
        while (pos + 1 < n && ++k[pos] == qq) k[pos++] = 0;
        if (pos + 1 >= n) break;
    }
    return total;
}

inline Rat dedekind_sum(const MultiIndex& r, const DedekindInput& in) {
    return dedekind_sum(r, in.q, in.p);
}

/// Classical Dedekind sum s(a, c) = sum_k ((k/|c|)) ((ak/|c|)).
inline Rat classical_dedekind_s(const Int& a, const Int& c) {
    if (c == 0) throw std::invalid_argument("classical_dedekind_s: c must be nonzero");
    Int q = c < 0 ? Int(-c) : c;
    Rat total = 0;
    for (Int k = 0; k < q; ++k)
        total += periodic_bernoulli(1, Rat(k, q)) * periodic_bernoulli(1, Rat(a * k, q));
    return total;
}

/// Zagier's cotangent sum d(q;p...) = (-1)^{n/2+1} 2^n q s_{1,...,1}; zero for odd n.
inline Rat zagier_sum(const DedekindInput& in) {
    size_t n = in.dimension();
    if (n % 2 != 0) return 0;
    MultiIndex ones(n, 1);
    Rat s = dedekind_sum(ones, in.q, in.p);
    Rat sign = ((n / 2 + 1) % 2 == 0) ? Rat(1) : Rat(-1);
    return sign * rat_pow(Rat(2), static_cast<long>(n)) * Rat(in.q) * s;
}

namespace detail {

// the delta-expansion terms shared by both conversion directions: for each
// nonempty T inside J = { j : r_j = 1 }, the reduced index tuple and moduli
struct ReducedTerm {
    size_t size_T;
    MultiIndex r;
    std::vector<Int> p;
};

inline std::vector<ReducedTerm> reduced_terms(const MultiIndex& r, const Int& q,
                                              const std::vector<Int>& p) {
    size_t n = r.size();
    std::vector<size_t> J;
    for (size_t j = 0; j < n; ++j)
        if (r[j] == 1) J.push_back(j);
    std::vector<Int> pfull(p);
    pfull.push_back(-1);  // p_n = -1 convention

    std::vector<ReducedTerm> out;
    for (size_t mask = 1; mask < (size_t(1) << J.size()); ++mask) {
        std::vector<bool> inT(n, false);
        size_t tsize = 0;
        for (size_t b = 0; b < J.size(); ++b)
            if (mask & (size_t(1) << b)) { inT[J[b]] = true; ++tsize; }
        std::vector<size_t> rest;
        for (size_t j = 0; j < n; ++j)
            if (!inT[j]) rest.push_back(j);
        ReducedTerm term;
        term.size_T = tsize;
        for (size_t j : rest) term.r.push_back(r[j]);
        if (!rest.empty()) {
            size_t jr = rest.back();
            if (jr == n - 1) {
                for (size_t k = 0; k + 1 < rest.size(); ++k)
                    term.p.push_back(mod_norm(pfull[rest[k]], q));
            } else {
                Int inv = mod_inverse(pfull[jr], q);
                for (size_t k = 0; k + 1 < rest.size(); ++k)
                    term.p.push_back(mod_norm(-inv * pfull[rest[k]], q));
            }
        }
        out.push_back(std::move(term));
    }
    return out;
}

}  // namespace detail

/// s_r from Todd coefficients via the expansion B~_j(x) = B_j({x}) + (1/2) d_{1,j} d({x}).
inline Rat s_from_t(const MultiIndex& r, const Int& q, const std::vector<Int>& p) {
    if (!all_positive(r)) throw std::invalid_argument("s_from_t: indices must be >= 1");
    Rat total = todd_coefficient_t(r, q, p);
    for (const auto& term : detail::reduced_terms(r, q, p)) {
        Rat val;
        if (term.r.empty()) val = 1;
        else if (term.r.size() == 1) val = bernoulli_number(static_cast<unsigned>(term.r[0]));
        else val = todd_coefficient_t(term.r, q, term.p);
        total += rat_pow(Rat(1, 2), static_cast<long>(term.size_T)) * val;
    }
    return total;
}

/// t_r from generalized Dedekind sums, the inverse expansion.
inline Rat t_from_s(const MultiIndex& r, const Int& q, const std::vector<Int>& p) {
    if (!all_positive(r)) throw std::invalid_argument("t_from_s: indices must be >= 1");
    Rat total = dedekind_sum(r, q, p);
    for (const auto& term : detail::reduced_terms(r, q, p)) {
        Rat val;
        if (term.r.empty()) val = 1;
        else if (term.r.size() == 1) val = periodic_bernoulli(static_cast<unsigned>(term.r[0]), 0);
        else val = dedekind_sum(term.r, q, term.p);
        total += rat_pow(Rat(-1, 2), static_cast<long>(term.size_T)) * val;
    }
    return total;
}

/// Rademacher phi on SL_2(Z); 12 phi(A) is always an integer.
inline Rat rademacher_phi(const Int& a, const Int& b, const Int& c, const Int& d) {
    if (a * d - b * c != 1) throw std::invalid_argument("rademacher_phi: determinant must be 1");
    if (c == 0) return Rat(b) / Rat(d);
    Rat sign = c > 0 ? Rat(1) : Rat(-1);
    return sign * classical_dedekind_s(a, c) - Rat(a + d) / (Rat(12) * Rat(c));
}

}  // namespace toddsum
