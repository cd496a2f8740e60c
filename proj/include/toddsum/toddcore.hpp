#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "toddsum/bernoulli.hpp"
#include "toddsum/homogpoly.hpp"
#include "toddsum/lattice.hpp"
#include "toddsum/multiindex.hpp"

namespace toddsum {

namespace detail {

// cached rows of Bernoulli polynomial values: row(q, j)[k] = B_j(k/q)
inline const std::vector<Rat>& bernoulli_row(const Int& q, int j) {
    static std::mutex mtx;
    static std::map<std::pair<Int, int>, std::vector<Rat>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(q, j);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Rat> row;
    for (Int k = 0; k < q; ++k)
        row.push_back(bernoulli_polynomial_at(static_cast<unsigned>(j), Rat(k, q)));
    return cache.emplace(key, std::move(row)).first->second;
}

inline std::vector<Int> normalized_p(const Int& q, const std::vector<Int>& p) {
    std::vector<Int> out;
    out.reserve(p.size());
    for (const Int& pi : p) {
        Int r = mod_norm(pi, q);
        if (boost::multiprecision::gcd(r, q) != 1)
            throw std::invalid_argument("todd coefficient: gcd(p_i, q) != 1");
        out.push_back(r);
    }
    return out;
}

}  // namespace detail

/// Todd coefficient t_r(q; p_1,...,p_{n-1}) by direct summation over (Z/q)^{n-1}.
inline Rat todd_coefficient_t(const MultiIndex& r, const Int& q, const std::vector<Int>& p) {
    size_t n = r.size();
    if (p.size() + 1 != n && n != 0)
        throw std::invalid_argument("todd_coefficient_t: p has wrong length");
    if (n == 0) return 1;
    if (n == 1) return bernoulli_number(static_cast<unsigned>(r[0]));
    if (q < 1) throw std::invalid_argument("todd_coefficient_t: q must be positive");
    std::vector<Int> pn = detail::normalized_p(q, p);

    std::vector<const std::vector<Rat>*> rows(n);
    for (size_t i = 0; i < n; ++i) rows[i] = &detail::bernoulli_row(q, r[i]);

    long qq = static_cast<long>(q);
    Rat total = 0;
    std::vector<long> k(n - 1, 0);
    std::vector<long> pl(pn.size());
    for (size_t i = 0; i < pn.size(); ++i) pl[i] = static_cast<long>(pn[i]);
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

/// Homogeneous rational function numerator / (scalar * prod forms^mult), with the
/// basis in which the coordinates are read.
struct HomogeneousRationalFn {
    HomogPolynomial numerator;
    Rat scalar = 1;                                      // denominator scalar
    std::vector<std::pair<std::vector<Int>, int>> forms; // primitive, leading coeff > 0
    IntMatrix basis;                                     // column basis; identity = standard

    bool is_zero() const { return numerator.is_zero(); }
};

namespace detail {

// canonicalize an integer linear form to primitive with positive leading
// coefficient; returns the extracted rational factor
inline Rat canonicalize_form(std::vector<Int>& f) {
    Int g = content(f);
    if (g == 0) throw std::invalid_argument("canonicalize_form: zero form");
    int sign = 1;
    for (const Int& x : f) {
        if (x != 0) { sign = (x > 0) ? 1 : -1; break; }
    }
    Int scale = sign > 0 ? g : -g;
    for (Int& x : f) x /= scale;
    return Rat(scale);
}

inline void push_form(HomogeneousRationalFn& fn, std::vector<Int> f, int mult) {
    Rat factor = canonicalize_form(f);
    fn.scalar *= rat_pow(factor, mult);
    for (auto& [g, m] : fn.forms)
        if (g == f) { m += mult; return; }
    fn.forms.emplace_back(std::move(f), mult);
}

inline IntMatrix identity_matrix(size_t n) {
    IntMatrix id(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

}  // namespace detail

/// Todd_C^N for the standard cone C(q;p...), assembled from Todd coefficients:
/// the coefficient of x^j is (-1)^N q^{N-n+1} t_j / j!.
inline HomogPolynomial todd_polynomial_standard(const Int& q, const std::vector<Int>& p, int N) {
    int n = static_cast<int>(p.size()) + 1;
    HomogPolynomial out(n, N);
    Rat outer = (N % 2 == 0 ? Rat(1) : Rat(-1)) * rat_pow(Rat(q), N - n + 1);
    for_each_multiindex(N, n, [&](const MultiIndex& j) {
        Rat t = todd_coefficient_t(j, q, p);
        if (t == 0) return;
        out.add_term(j, outer * t / Rat(factorial_of(j)));
    });
    return out;
}

/// S^N(D) for a nonsingular cone D, as a rational function in standard coordinates.
inline HomogeneousRationalFn normalized_todd_nonsingular(const LatticeCone& c, int N) {
    if (!c.is_nonsingular())
        throw std::invalid_argument("normalized_todd_nonsingular: cone not nonsingular");
    size_t n = c.ambient_dim();
    IntMatrix M = c.matrix();
    Int d = det(M);
    IntMatrix adj = adjugate(M);
    // rows of M^{-1} = adj / d; with d = +-1 these are integer forms
    std::vector<std::vector<Int>> rows(n);
    for (size_t i = 0; i < n; ++i) {
        rows[i] = adj[i];
        if (d < 0)
            for (Int& x : rows[i]) x = -x;
    }
    HomogeneousRationalFn out;
    out.basis = detail::identity_matrix(n);
    out.numerator = compose_linear(todd_polynomial(N, static_cast<int>(n)), rows);
    out.scalar = Rat(d);
    for (size_t i = 0; i < n; ++i) detail::push_form(out, rows[i], 1);
    return out;
}

/// S^N(C) for the standard cone C(q;p...), in standard coordinates.
inline HomogeneousRationalFn normalized_todd_standard(const Int& q, const std::vector<Int>& p, int N) {
    size_t n = p.size() + 1;
    LatticeCone c = standard_cone(q, p);
    IntMatrix M = c.matrix();
    Int d = det(M);  // = q
    IntMatrix adj = adjugate(M);
    HomogPolynomial toddc = todd_polynomial_standard(q, p, N);
    HomogeneousRationalFn out;
    out.basis = detail::identity_matrix(n);
    // x_i = adj_i(y)/d, so Todd(x)/(d prod x_i) = Todd(adj y) d^{N-n+1} / prod adj_i(y)
    out.numerator = compose_linear(toddc, adj);
    out.scalar = rat_pow(Rat(d), N - n + 1);
    for (size_t i = 0; i < n; ++i) detail::push_form(out, adj[i], 1);
    return out;
}

/// Cancels denominator forms that divide the numerator exactly.
inline void rational_fn_reduce(HomogeneousRationalFn& f) {
    if (f.numerator.is_zero()) {
        f.forms.clear();
        f.scalar = 1;
        return;
    }
    for (auto& [form, mult] : f.forms) {
        while (mult > 0 && divides_exactly(f.numerator, form)) {
            f.numerator = divide_by_linear_form(f.numerator, form);
            --mult;
        }
    }
    std::erase_if(f.forms, [](const auto& fm) { return fm.second == 0; });
}

/// a + b over the union denominator, cancelling shared poles afterwards.
inline HomogeneousRationalFn rational_fn_add(const HomogeneousRationalFn& a,
                                             const HomogeneousRationalFn& b) {
    std::vector<std::pair<std::vector<Int>, int>> common = a.forms;
    for (const auto& [f, m] : b.forms) {
        bool found = false;
        for (auto& [g, mm] : common)
            if (g == f) { mm = std::max(mm, m); found = true; break; }
        if (!found) common.emplace_back(f, m);
    }
    auto cleared = [&](const HomogeneousRationalFn& fn) {
        HomogPolynomial p = fn.numerator;
        p *= Rat(1) / fn.scalar;
        for (const auto& [f, m] : common) {
            int have = 0;
            for (const auto& [g, mm] : fn.forms)
                if (g == f) { have = mm; break; }
            for (int k = have; k < m; ++k) p = p * linear_form_poly(f);
        }
        return p;
    };
    HomogeneousRationalFn out;
    out.basis = a.basis.empty() ? b.basis : a.basis;
    out.scalar = 1;
    out.forms = common;
    out.numerator = cleared(a);
    HomogPolynomial pb = cleared(b);
    if (out.numerator.is_zero()) out.numerator = pb;
    else if (!pb.is_zero()) out.numerator += pb;
    rational_fn_reduce(out);
    return out;
}

/// Sum of rational functions as a single fraction; pairwise with cancellation
/// so that the telescoping inner poles of a subdivision never pile up.
inline HomogeneousRationalFn rational_fn_sum(const std::vector<HomogeneousRationalFn>& parts) {
    if (parts.empty()) throw std::invalid_argument("rational_fn_sum: empty");
    HomogeneousRationalFn acc = parts.front();
    for (size_t i = 1; i < parts.size(); ++i) acc = rational_fn_add(acc, parts[i]);
    return acc;
}

inline bool rational_fn_equal(const HomogeneousRationalFn& a, const HomogeneousRationalFn& b) {
    std::vector<std::pair<std::vector<Int>, int>> common = a.forms;
    for (const auto& [f, m] : b.forms) {
        bool found = false;
        for (auto& [g, mm] : common)
            if (g == f) { mm = std::max(mm, m); found = true; break; }
        if (!found) common.emplace_back(f, m);
    }
    auto cleared = [&](const HomogeneousRationalFn& fn) {
        HomogPolynomial p = fn.numerator;
        p *= Rat(1) / fn.scalar;
        for (const auto& [f, m] : common) {
            int have = 0;
            for (const auto& [g, mm] : fn.forms)
                if (g == f) { have = mm; break; }
            for (int k = have; k < m; ++k) p = p * linear_form_poly(f);
        }
        return p;
    };
    return cleared(a) == cleared(b);
}

/// S^N(C) in standard coordinates: direct for nonsingular and standard cones,
/// through the nonsingular subdivision otherwise.
inline HomogeneousRationalFn normalized_todd(const LatticeCone& c, int N) {
    if (c.is_degenerate()) throw std::invalid_argument("normalized_todd: degenerate cone");
    Int q;
    std::vector<Int> p;
    if (c.is_nonsingular()) return normalized_todd_nonsingular(c, N);
    if (is_standard_form(c, q, p)) return normalized_todd_standard(q, p, N);
    std::vector<HomogeneousRationalFn> parts;
    for (const auto& [sgn, dcone] : nonsingular_subdivision(c)) {
        HomogeneousRationalFn s = normalized_todd_nonsingular(dcone, N);
        if (sgn < 0) s.scalar = -s.scalar;
        parts.push_back(std::move(s));
    }
    return rational_fn_sum(parts);
}

/// Todd_C^N in the cone's own coordinates, via Eq-style assembly for standard
/// cones and via the subdivision cocycle for everything else.
inline HomogPolynomial todd_polynomial_of_cone(const LatticeCone& c, int N) {
    if (c.is_degenerate()) throw std::invalid_argument("todd_polynomial_of_cone: degenerate cone");
    Int q;
    std::vector<Int> p;
    if (is_standard_form(c, q, p)) return todd_polynomial_standard(q, p, N);
    size_t n = c.ambient_dim();
    if (c.is_nonsingular()) return todd_polynomial(N, static_cast<int>(n));

    HomogeneousRationalFn s = normalized_todd(c, N);
    // Todd_C^N(x) = det(M_C) x_1...x_n S^N(C)(M_C x)
    std::vector<std::vector<Int>> rows_of_M(n);
    IntMatrix M = c.matrix();
    for (size_t j = 0; j < n; ++j) rows_of_M[j] = M[j];
    HomogPolynomial num = compose_linear(s.numerator, rows_of_M);
    for (size_t i = 0; i < n; ++i) {
        std::vector<Int> e(n, 0);
        e[i] = 1;
        num = num * linear_form_poly(e);
    }
    num *= Rat(c.determinant()) / s.scalar;
    for (const auto& [f, m] : s.forms) {
        std::vector<Int> fx(n, 0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) fx[i] += f[j] * M[j][i];
        for (int k = 0; k < m; ++k) num = divide_by_linear_form(num, fx);
    }
    return num;
}

/// Exact check of S^N(C) = sum of S^N(D) over the nonsingular subdivision.
inline bool verify_cocycle(const LatticeCone& c, int N) {
    if (c.is_degenerate()) throw std::invalid_argument("verify_cocycle: degenerate cone");
    HomogeneousRationalFn lhs;
    Int q;
    std::vector<Int> p;
    if (c.is_nonsingular()) lhs = normalized_todd_nonsingular(c, N);
    else if (is_standard_form(c, q, p)) lhs = normalized_todd_standard(q, p, N);
    else throw std::invalid_argument("verify_cocycle: need a nonsingular or standard-form cone");

    std::vector<HomogeneousRationalFn> parts;
    for (const auto& [sgn, dcone] : nonsingular_subdivision(c)) {
        HomogeneousRationalFn s = normalized_todd_nonsingular(dcone, N);
        if (sgn < 0) s.scalar = -s.scalar;
        parts.push_back(std::move(s));
    }
    return rational_fn_equal(lhs, rational_fn_sum(parts));
}

/// Checks that the inner-cone part of the subdivision has no pole along any
/// facet hyperplane of C (the pole cancellation of the inner sum).
inline bool inner_sum_facet_poles_cancel(const LatticeCone& c, int N) {
    auto subdivision = nonsingular_subdivision(c);
    auto split = outer_inner_split(c, subdivision);
    if (split.inner.empty()) return true;
    std::vector<HomogeneousRationalFn> parts;
    parts.reserve(split.inner.size());
    for (const auto& dcone : split.inner) parts.push_back(normalized_todd_nonsingular(dcone, N));
    HomogeneousRationalFn inner = rational_fn_sum(parts);

    // facet hyperplanes of C: rows of M_C^{-1}, canonicalized
    IntMatrix adj = adjugate(c.matrix());
    Int d = c.determinant();
    for (size_t j = 0; j < c.ambient_dim(); ++j) {
        std::vector<Int> f = adj[j];
        if (d < 0)
            for (Int& x : f) x = -x;
        detail::canonicalize_form(f);
        int mult = 0;
        for (const auto& [g, m] : inner.forms)
            if (g == f) { mult = m; break; }
        HomogPolynomial num = inner.numerator;
        for (int k = 0; k < mult; ++k) {
            if (!divides_exactly(num, f)) return false;
            num = divide_by_linear_form(num, f);
        }
    }
    return true;
}

}  // namespace toddsum
