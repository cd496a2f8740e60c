#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "toddsum/expsum.hpp"

using namespace toddsum;

namespace {

MultiIndex mi(std::initializer_list<int> xs) { return MultiIndex(xs); }

long phi(long q) {
    long out = 0;
    for (long a = 1; a < q; ++a)
        if (std::gcd(a, q) == 1) ++out;
    return out;
}

// direct classical Kloosterman sum sum_a e_q(a + a^{-1})
std::complex<double> kloosterman_direct(long q) {
    const double tau = 6.283185307179586476925286766559;
    std::complex<double> tot{0, 0};
    for (long a = 1; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        long inv = static_cast<long>(mod_inverse(Int(a), Int(q)));
        tot += std::polar(1.0, tau * static_cast<double>((a + inv) % q) / static_cast<double>(q));
    }
    return tot;
}

std::vector<long> primes_upto(long n) {
    std::vector<bool> sieve(static_cast<size_t>(n) + 1, true);
    std::vector<long> out;
    for (long i = 2; i <= n; ++i) {
        if (!sieve[static_cast<size_t>(i)]) continue;
        out.push_back(i);
        for (long j = i * i; j <= n; j += i) sieve[static_cast<size_t>(j)] = false;
    }
    return out;
}

}  // namespace

TEST_CASE("exponential sums") {
    // f = 0: every summand is 1
    LaurentZ zero({"p1"});
    for (long q : {5, 6, 12}) {
        ExpSumResult r = exp_sum_K(zero, q);
        CHECK(std::abs(r.value - std::complex<double>(static_cast<double>(phi(q)), 0)) < 1e-12);
    }

    // f_(1,1) gives the classical Kloosterman sum: real, and matching the
    // direct evaluation
    LaurentZ f = f_r_polynomial(mi({1, 1}));
    for (long q : primes_upto(200)) {
        ExpSumResult r = exp_sum_K(f, q);
        CHECK(std::abs(r.value.imag()) < 1e-9);
        CHECK(std::abs(r.value - kloosterman_direct(q)) < 1e-9);
        CHECK(std::abs(r.value) <= r.unit_bound + 1e-9);
    }
}

TEST_CASE("multiplicativity under the chinese remainder theorem") {
    LaurentZ f = f_r_polynomial(mi({1, 1}));
    // consecutive moduli: the plain product identity is exact
    for (long m = 2; m <= 20; ++m) {
        std::complex<double> lhs = exp_sum_K(f, m * (m + 1)).value;
        std::complex<double> rhs = exp_sum_K(f, m).value * exp_sum_K(f, m + 1).value;
        CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs)));
    }
    // general coprime moduli need the unit twists alpha, beta with
    // alpha q1 + beta q2 = 1: K(f, q1 q2) = K(beta f, q1) K(alpha f, q2)
    for (auto [q1, q2] : std::vector<std::pair<long, long>>{{3, 5}, {4, 9}, {5, 12}, {11, 13}}) {
        Int x, y;
        ext_gcd(Int(q1), Int(q2), x, y);  // x q1 + y q2 = 1
        long alpha = static_cast<long>(x), beta = static_cast<long>(y);
        std::complex<double> lhs = exp_sum_K(f, q1 * q2).value;
        std::complex<double> rhs =
            exp_sum_K(f.scaled(Int(beta)), q1).value * exp_sum_K(f.scaled(Int(alpha)), q2).value;
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("weyl averages") {
    LaurentZ zero({"p1"});
    for (double x : {2.5, 10.0, 40.0}) {
        EquidistSample s = weyl_average(zero, 3, x);
        CHECK(std::abs(s.average - std::complex<double>(1, 0)) < 1e-12);
        unsigned long long expect = 0;
        for (long q = 2; q < x; ++q) expect += static_cast<unsigned long long>(phi(q));
        CHECK(s.count == expect);
    }
    // x just above 2: the single tuple (2;1)
    EquidistSample s2 = weyl_average(f_r_polynomial(mi({1, 1})), 1, 2.5);
    CHECK(s2.count == 1);
    CHECK(std::abs(std::abs(s2.average) - 1.0) < 1e-12);

    // decay for the Kloosterman phase
    EquidistSample a200 = weyl_average(f_r_polynomial(mi({1, 1})), 1, 200);
    CHECK(std::abs(a200.average) < 0.05);
}

TEST_CASE("condition (H) for the congruence polynomials") {
    for (int n = 2; n <= 4; ++n) {
        for_each_multiindex(10 - n, n, [&](const MultiIndex& m) {
            MultiIndex r(m);
            for (int& x : r) x += 1;
            if (weight(r) % 2 != 0) return;  // odd weight gives the zero polynomial
            LaurentZ f = f_r_polynomial(r);
            if (f.is_zero()) return;
            auto w = condition_H_witness(f);
            CHECK(w.has_value());
        });
    }
}

TEST_CASE("empirical weil ratios stay bounded") {
    LaurentZ f = f_r_polynomial(mi({1, 1}));
    auto rows = empirical_weil_check(f, primes_upto(200));
    double worst = 0;
    for (const auto& row : rows) worst = std::max(worst, row.ratio);
    CHECK(worst <= 2.0);
    CHECK(worst > 1.0);  // the bound is not vacuous
}

TEST_CASE("fractional part histograms") {
    HistogramResult h = fractional_part_histogram(mi({1, 1}), 200.0, 10);
    unsigned long long expect = 0;
    for (long q = 2; q < 200; ++q) expect += static_cast<unsigned long long>(phi(q));
    CHECK(h.count == expect);
    unsigned long long total = 0;
    for (auto b : h.bins) total += b;
    CHECK(total == h.count);
    for (auto b : h.bins) CHECK(b > 0);

    // odd weight: every sum vanishes, all mass in the first bin
    HistogramResult hodd = fractional_part_histogram(mi({1, 2}), 50.0, 10);
    CHECK(hodd.bins[0] == hodd.count);
    CHECK(hodd.star_discrepancy > 0.5);
}
