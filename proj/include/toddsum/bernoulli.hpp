#pragma once

#include <mutex>
#include <vector>

#include "toddsum/rational.hpp"

namespace toddsum {

/// Univariate polynomial with exact rational coefficients, coeffs[k] = coefficient of x^k.
struct UniPolynomial {
    std::vector<Rat> coeffs;

    UniPolynomial() = default;
    explicit UniPolynomial(std::vector<Rat> c) : coeffs(std::move(c)) { trim(); }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return coeffs.empty() ? -1 : static_cast<int>(coeffs.size()) - 1; }

    Rat operator()(const Rat& x) const {
        Rat acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    bool operator==(const UniPolynomial& o) const { return coeffs == o.coeffs; }
};

// B(z) = z/(e^z - 1), so B_1 = -1/2.  Computed by the binomial recurrence
// sum_{j<k} C(k+1,j) B_j = -(k+1) B_k, memoized behind a mutex.
inline Rat bernoulli_number(unsigned k) {
    static std::mutex mtx;
    static std::vector<Rat> cache{Rat(1)};
    std::lock_guard<std::mutex> lock(mtx);
    while (cache.size() <= k) {
        unsigned m = static_cast<unsigned>(cache.size());
        Rat s = 0;
        for (unsigned j = 0; j < m; ++j) s += Rat(binomial_int(Int(m + 1), j)) * cache[j];
        cache.push_back(-s / Rat(m + 1));
    }
    return cache[k];
}

/// Degree-k Bernoulli polynomial, B_k(x) = sum_j C(k,j) B_j x^{k-j}.
inline UniPolynomial bernoulli_polynomial(unsigned k) {
    std::vector<Rat> c(k + 1);
    for (unsigned j = 0; j <= k; ++j)
        c[k - j] = Rat(binomial_int(Int(k), j)) * bernoulli_number(j);
    return UniPolynomial(std::move(c));
}

inline Rat bernoulli_polynomial_at(unsigned k, const Rat& x) {
    Rat acc = 0;
    for (unsigned j = 0; j <= k; ++j)
        acc += Rat(binomial_int(Int(k), j)) * bernoulli_number(j) * rat_pow(x, static_cast<long>(k - j));
    return acc;
}

// Periodic Bernoulli function: B_k(<t>) except that the k=1 value at integers is 0.
inline Rat periodic_bernoulli(unsigned k, const Rat& t) {
    Rat f = fractional_part(t);
    if (k == 1 && f == 0) return 0;
    return bernoulli_polynomial_at(k, f);
}

}  // namespace toddsum
