#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "toddsum/congruence.hpp"
#include "toddsum/laurent.hpp"

namespace toddsum {

/// Kahan-compensated complex accumulator.
struct KahanComplex {
    std::complex<double> sum{0.0, 0.0};
    std::complex<double> comp{0.0, 0.0};

    void add(const std::complex<double>& x) {
        std::complex<double> y = x - comp;
        std::complex<double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

struct ExpSumResult {
    Int q;
    std::complex<double> value{0.0, 0.0};
    double trivial_bound = 0.0;   // q^{n-1}
    double unit_bound = 0.0;      // phi(q)^{n-1}, the count of summands
    double weil_reference = 0.0;  // q^{(n-1) - 1/2}
};

struct EquidistSample {
    double x = 0.0;
    long k = 1;
    std::complex<double> average{0.0, 0.0};
    unsigned long long count = 0;  // |I_n(x)|
};

struct WeilRatioRow {
    Int p;
    double abs_value = 0.0;
    double reference = 0.0;  // p^{(n-1)-1/2}
    double ratio = 0.0;
};

struct HistogramResult {
    std::vector<unsigned long long> bins;
    unsigned long long count = 0;
    double star_discrepancy = 0.0;
};

namespace detail {

// residues of f at a tuple of units, everything reduced mod q up front
struct ModEvaluator {
    long q;
    std::vector<std::vector<long>> exps;
    std::vector<long> coeffs;
    std::vector<long> inverse;  // inverse[a] for units a

    ModEvaluator(const LaurentZ& f, long q_) : q(q_) {
        for (const auto& [e, c] : f.terms) {
            std::vector<long> ee(e.begin(), e.end());
            exps.push_back(ee);
            coeffs.push_back(static_cast<long>(mod_norm(c, Int(q))));
        }
        inverse.assign(static_cast<size_t>(q), 0);
        for (long a = 1; a < q; ++a)
            if (std::gcd(a, q) == 1) inverse[static_cast<size_t>(a)] = static_cast<long>(mod_inverse(Int(a), Int(q)));
    }

    long powmod(long b, long e) const {
        long acc = 1 % q;
        long long bb = b % q;
        while (e > 0) {
            if (e & 1) acc = static_cast<long>((acc * bb) % q);
            bb = (bb * bb) % q;
            e >>= 1;
        }
        return acc;
    }

    long operator()(const std::vector<long>& p) const {
        long tot = 0;
        for (size_t t = 0; t < exps.size(); ++t) {
            long long v = coeffs[t];
            for (size_t i = 0; i < p.size(); ++i) {
                long e = exps[t][i];
                if (e == 0) continue;
                long base = e > 0 ? p[i] : inverse[static_cast<size_t>(p[i])];
                v = (v * powmod(base, e > 0 ? e : -e)) % q;
            }
            tot = static_cast<long>((tot + v) % q);
        }
        return tot;
    }
};

inline std::vector<long> units_list(long q) {
    std::vector<long> out;
    for (long a = 1; a < q; ++a)
        if (std::gcd(a, q) == 1) out.push_back(a);
    return out;
}

// walks all unit tuples of length m, calling fn(tuple)
template <class F>
void for_each_unit_tuple(const std::vector<long>& units, size_t m, F&& fn) {
    std::vector<long> tup(m, units.front());
    std::vector<size_t> idx(m, 0);
    while (true) {
        fn(tup);
        size_t pos = 0;
        while (pos < m) {
            if (++idx[pos] < units.size()) {
                tup[pos] = units[idx[pos]];
                break;
            }
            idx[pos] = 0;
            tup[pos] = units.front();
            ++pos;
        }
        if (pos == m) break;
    }
}

}  // namespace detail

/// K(f,q): sum of e_q(f(p_1..p_{n-1})) over unit tuples mod q.
inline ExpSumResult exp_sum_K(const LaurentZ& f, long q) {
    if (q < 2) throw std::invalid_argument("exp_sum_K: need q >= 2");
    size_t m = f.arity();
    detail::ModEvaluator eval(f, q);
    auto units = detail::units_list(q);
    // e_q table
    std::vector<std::complex<double>> eq(static_cast<size_t>(q));
    const double tau = 6.283185307179586476925286766559;
    for (long v = 0; v < q; ++v)
        eq[static_cast<size_t>(v)] = std::polar(1.0, tau * static_cast<double>(v) / static_cast<double>(q));
    KahanComplex acc;
    unsigned long long count = 0;
    if (m == 0) {
        acc.add(eq[static_cast<size_t>(eval(std::vector<long>{}))]);
        count = 1;
    } else {
        detail::for_each_unit_tuple(units, m, [&](const std::vector<long>& tup) {
            acc.add(eq[static_cast<size_t>(eval(tup))]);
            ++count;
        });
    }
    ExpSumResult out;
    out.q = q;
    out.value = acc.sum;
    out.unit_bound = static_cast<double>(count);
    out.trivial_bound = std::pow(static_cast<double>(q), static_cast<double>(m));
    out.weil_reference = std::pow(static_cast<double>(q), static_cast<double>(m) - 0.5);
    return out;
}

/// Weyl average of e(k f(p)/q) over I_n(x) = { (q; p...) : q < x }.
inline EquidistSample weyl_average(const LaurentZ& f, long k, double x) {
    if (k == 0) throw std::invalid_argument("weyl_average: k must be nonzero");
    size_t m = f.arity();
    LaurentZ kf = f.scaled(Int(k));
    KahanComplex acc;
    unsigned long long count = 0;
    const double tau = 6.283185307179586476925286766559;
    for (long q = 2; static_cast<double>(q) < x; ++q) {
        detail::ModEvaluator eval(kf, q);
        auto units = detail::units_list(q);
        std::vector<std::complex<double>> eq(static_cast<size_t>(q));
        for (long v = 0; v < q; ++v)
            eq[static_cast<size_t>(v)] = std::polar(1.0, tau * static_cast<double>(v) / static_cast<double>(q));
        if (m == 0) {
            acc.add(eq[static_cast<size_t>(eval(std::vector<long>{}))]);
            ++count;
        } else {
            detail::for_each_unit_tuple(units, m, [&](const std::vector<long>& tup) {
                acc.add(eq[static_cast<size_t>(eval(tup))]);
                ++count;
            });
        }
    }
    EquidistSample out;
    out.x = x;
    out.k = k;
    out.count = count;
    out.average = count ? acc.sum / static_cast<double>(count) : std::complex<double>(0, 0);
    return out;
}

/// |K(f,p)| / p^{(n-1)-1/2} over the given primes.
inline std::vector<WeilRatioRow> empirical_weil_check(const LaurentZ& f, const std::vector<long>& primes) {
    std::vector<WeilRatioRow> out;
    for (long p : primes) {
        ExpSumResult r = exp_sum_K(f, p);
        WeilRatioRow row;
        row.p = p;
        row.abs_value = std::abs(r.value);
        row.reference = r.weil_reference;
        row.ratio = row.abs_value / row.reference;
        out.push_back(row);
    }
    return out;
}

/// Histogram of the fractional parts < d q^{N-n}/r! s_r > = < f_r(p)/q >
/// over I_n(x), using the congruence identity (f_r(p) mod q)/q per tuple.
inline HistogramResult fractional_part_histogram(const MultiIndex& r, double x, int bins) {
    if (bins < 1) throw std::invalid_argument("fractional_part_histogram: bins >= 1");
    LaurentZ f = f_r_polynomial(r);
    size_t m = r.size() - 1;
    HistogramResult out;
    out.bins.assign(static_cast<size_t>(bins), 0);
    std::vector<double> values;
    for (long q = 2; static_cast<double>(q) < x; ++q) {
        detail::ModEvaluator eval(f, q);
        auto units = detail::units_list(q);
        detail::for_each_unit_tuple(units, m, [&](const std::vector<long>& tup) {
            long v = eval(tup);  // value in [0, q)
            size_t bin = static_cast<size_t>((static_cast<long long>(v) * bins) / q);
            ++out.bins[bin];
            values.push_back(static_cast<double>(v) / static_cast<double>(q));
            ++out.count;
        });
    }
    std::sort(values.begin(), values.end());
    double dmax = 0.0;
    double n = static_cast<double>(values.size());
    for (size_t i = 0; i < values.size(); ++i) {
        double u = values[i];
        dmax = std::max(dmax, (static_cast<double>(i) + 1.0) / n - u);
        dmax = std::max(dmax, u - static_cast<double>(i) / n);
    }
    out.star_discrepancy = dmax;
    return out;
}

}  // namespace toddsum
