#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "toddsum/bernoulli.hpp"
#include "toddsum/multiindex.hpp"
#include "toddsum/rational.hpp"

namespace toddsum {

/// Homogeneous polynomial of fixed total degree in n variables, sparse terms.
struct HomogPolynomial {
    int n = 0;
    int degree = 0;  // total degree N; every stored index has |index| = N
    std::map<MultiIndex, Rat> terms;

    HomogPolynomial() = default;
    HomogPolynomial(int n_, int degree_) : n(n_), degree(degree_) {}

    bool is_zero() const { return terms.empty(); }

    void add_term(const MultiIndex& idx, const Rat& c) {
        if (c == 0) return;
        if (static_cast<int>(idx.size()) != n || weight(idx) != degree)
            throw std::invalid_argument("HomogPolynomial: index has wrong shape");
        auto [it, inserted] = terms.emplace(idx, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    Rat coefficient(const MultiIndex& idx) const {
        auto it = terms.find(idx);
        return it == terms.end() ? Rat(0) : it->second;
    }

    HomogPolynomial& operator+=(const HomogPolynomial& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) { *this = o; return *this; }
        if (o.n != n || o.degree != degree)
            throw std::invalid_argument("HomogPolynomial: shape mismatch in +=");
        for (const auto& [idx, c] : o.terms) add_term(idx, c);
        return *this;
    }

    HomogPolynomial& operator*=(const Rat& s) {
        if (s == 0) { terms.clear(); return *this; }
        for (auto& [idx, c] : terms) c *= s;
        return *this;
    }

    bool operator==(const HomogPolynomial& o) const {
        if (is_zero() && o.is_zero()) return true;
        return n == o.n && degree == o.degree && terms == o.terms;
    }

    Rat evaluate(const std::vector<Rat>& x) const {
        Rat acc = 0;
        for (const auto& [idx, c] : terms) {
            Rat t = c;
            for (int i = 0; i < n; ++i) t *= rat_pow(x[static_cast<size_t>(i)], idx[static_cast<size_t>(i)]);
            acc += t;
        }
        return acc;
    }
};

inline HomogPolynomial operator*(const HomogPolynomial& a, const HomogPolynomial& b) {
    if (a.n != b.n) throw std::invalid_argument("HomogPolynomial: dimension mismatch in *");
    HomogPolynomial out(a.n, a.degree + b.degree);
    for (const auto& [ia, ca] : a.terms)
        for (const auto& [ib, cb] : b.terms) {
            MultiIndex idx(ia);
            for (size_t k = 0; k < idx.size(); ++k) idx[k] += ib[k];
            out.add_term(idx, ca * cb);
        }
    return out;
}

inline HomogPolynomial homog_constant(int n, const Rat& c) {
    HomogPolynomial p(n, 0);
    p.add_term(MultiIndex(static_cast<size_t>(n), 0), c);
    return p;
}

inline HomogPolynomial linear_form_poly(const std::vector<Int>& coeffs) {
    int n = static_cast<int>(coeffs.size());
    HomogPolynomial p(n, 1);
    for (int i = 0; i < n; ++i) {
        if (coeffs[static_cast<size_t>(i)] == 0) continue;
        MultiIndex idx(static_cast<size_t>(n), 0);
        idx[static_cast<size_t>(i)] = 1;
        p.add_term(idx, Rat(coeffs[static_cast<size_t>(i)]));
    }
    return p;
}

/// Substitute x_i -> integer linear form forms[i] (each of length n) into p.
inline HomogPolynomial compose_linear(const HomogPolynomial& p,
                                      const std::vector<std::vector<Int>>& forms) {
    if (static_cast<int>(forms.size()) != p.n)
        throw std::invalid_argument("compose_linear: wrong number of forms");
    int n = p.n;
    // powers[i][k] = forms[i]^k, built lazily
    std::vector<std::vector<HomogPolynomial>> powers(static_cast<size_t>(n));
    auto power = [&](int i, int k) -> const HomogPolynomial& {
        auto& vec = powers[static_cast<size_t>(i)];
        if (vec.empty()) vec.push_back(homog_constant(n, 1));
        while (static_cast<int>(vec.size()) <= k)
            vec.push_back(vec.back() * linear_form_poly(forms[static_cast<size_t>(i)]));
        return vec[static_cast<size_t>(k)];
    };
    HomogPolynomial out(n, p.degree);
    for (const auto& [idx, c] : p.terms) {
        HomogPolynomial t = homog_constant(n, c);
        for (int i = 0; i < n; ++i)
            if (idx[static_cast<size_t>(i)] > 0) t = t * power(i, idx[static_cast<size_t>(i)]);
        out += t;
    }
    return out;
}

/// Exact division by a linear form; throws if the division leaves a remainder.
inline HomogPolynomial divide_by_linear_form(const HomogPolynomial& p,
                                             const std::vector<Int>& form) {
    if (p.is_zero()) return HomogPolynomial(p.n, std::max(0, p.degree - 1));
    size_t pivot = form.size();
    for (size_t i = 0; i < form.size(); ++i)
        if (form[i] != 0) { pivot = i; break; }
    if (pivot == form.size()) throw std::invalid_argument("divide_by_linear_form: zero form");
    Rat a(form[pivot]);

    HomogPolynomial rem = p;
    HomogPolynomial quot(p.n, p.degree - 1);
    while (!rem.is_zero()) {
        // term with maximal exponent in the pivot variable, lex to break ties
        auto lead = rem.terms.begin();
        for (auto it = rem.terms.begin(); it != rem.terms.end(); ++it)
            if (it->first[pivot] > lead->first[pivot]) lead = it;
        if (lead->first[pivot] == 0)
            throw std::domain_error("divide_by_linear_form: not divisible");
        MultiIndex qidx = lead->first;
        qidx[pivot] -= 1;
        Rat qc = lead->second / a;
        quot.add_term(qidx, qc);
        // rem -= qc * x^qidx * form
        for (size_t i = 0; i < form.size(); ++i) {
            if (form[i] == 0) continue;
            MultiIndex ridx = qidx;
            ridx[i] += 1;
            rem.add_term(ridx, -qc * Rat(form[i]));
        }
    }
    return quot;
}

inline bool divides_exactly(const HomogPolynomial& p, const std::vector<Int>& form) {
    try {
        divide_by_linear_form(p, form);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

/// Todd^N(x_1,...,x_n) = (-1)^N sum_{|r|=N} B_r / r! x^r.
inline HomogPolynomial todd_polynomial(int N, int n) {
    HomogPolynomial out(n, N);
    for_each_multiindex(N, n, [&](const MultiIndex& r) {
        Rat c = (N % 2 == 0) ? Rat(1) : Rat(-1);
        for (int ri : r) c *= bernoulli_number(static_cast<unsigned>(ri));
        if (c == 0) return;
        c /= Rat(factorial_of(r));
        out.add_term(r, c);
    });
    return out;
}

/// lcm of the denominators of the coefficients of Todd^N in n variables.
inline Int denominator_dNn(int N, int n) {
    Int d = 1;
    for_each_multiindex(N, n, [&](const MultiIndex& r) {
        Rat c = 1;
        for (int ri : r) c *= bernoulli_number(static_cast<unsigned>(ri));
        if (c == 0) return;
        c /= Rat(factorial_of(r));
        d = boost::multiprecision::lcm(d, den(c));
    });
    return d;
}

}  // namespace toddsum
