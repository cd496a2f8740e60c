// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "toddsum/toddsum.hpp"

using namespace toddsum;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok, double seconds) {
    std::printf("%s criterion %2d: %s  [%.1fs]\n", ok ? "PASS" : "FAIL", number, what.c_str(),
                seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <class F>
void criterion(int number, const std::string& what, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::printf("      exception: %s\n", e.what());
        ok = false;
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(number, what, ok, dt);
}

std::vector<long> units_of(long q) {
    std::vector<long> out;
    for (long a = 1; a < q; ++a)
        if (std::gcd(a, q) == 1) out.push_back(a);
    return out;
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

bool golden_d_table() {
    bool ok = denominator_dNn(2, 2) == Int(12);
    ok = ok && denominator_dNn(4, 4) == Int(720);
    ok = ok && denominator_dNn(6, 6) == Int(60480);       // 2^6 3^3 5 7
    ok = ok && denominator_dNn(8, 8) == Int(3628800);     // 2^8 3^4 5^2 7
    ok = ok && denominator_dNn(10, 10) == Int(479001600); // 2^10 3^5 5^2 7 11
    ok = ok && denominator_dNn(12, 3) == Int("2615348736000");  // 2^12 3^6 5^3 7^2 11 13
    return ok;
}

bool golden_polynomials() {
    // (6,4,2): term for term against the three-dimensional example
    std::map<std::vector<long>, Int> expected642{
        {{-6, -4}, 15202},  {{6, -4}, 638484},  {{-6, 8}, 228030},
        {{-6, 6}, 382200},  {{-6, 4}, 315315},  {{-6, 2}, 143000}, {{-6, 0}, 21021},
        {{4, -4}, 573300},  {{2, -4}, 189189},  {{0, -4}, 14300},
        {{2, 0}, 63063},    {{0, 2}, 28600}};
    LaurentZ f642 = f_r_polynomial(MultiIndex{6, 4, 2});
    bool ok = std::map<std::vector<long>, Int>(f642.terms.begin(), f642.terms.end()) ==
              expected642;

    // (1,1,1,1): p1 p2 p3 times the Zagier-side sign (-1)^{n/2+1} = -1 of f_r
    // reproduces the displayed quartic
    LaurentZ f1111 = f_r_polynomial(MultiIndex{1, 1, 1, 1});
    LaurentZ mono(f1111.vars);
    mono.add_term({1, 1, 1}, Int(1));
    LaurentZ display = mono * f1111.scaled(Int(-1));
    std::map<std::vector<long>, Int> expected1111{
        {{4, 0, 0}, 1},  {{0, 4, 0}, 1},  {{0, 0, 4}, 1},
        {{2, 2, 0}, -5}, {{0, 2, 2}, -5}, {{2, 0, 2}, -5},
        {{2, 0, 0}, -5}, {{0, 2, 0}, -5}, {{0, 0, 2}, -5}, {{0, 0, 0}, 1}};
    ok = ok && std::map<std::vector<long>, Int>(display.terms.begin(), display.terms.end()) ==
                   expected1111;
    return ok;
}

unsigned long long sweep_checked = 0;

bool congruence_sweep() {
    SweepOptions o2;
    o2.n = 2;
    o2.max_weight = 8;
    o2.qmax = 200;
    SweepStats s2 = sweep_congruences(o2);
    SweepOptions o3;
    o3.n = 3;
    o3.max_weight = 8;
    o3.qmax = 40;
    SweepStats s3 = sweep_congruences(o3);
    sweep_checked = s2.checked + s3.checked;
    std::printf("      n=2: %llu checked, %llu failed; n=3: %llu checked, %llu failed\n",
                s2.checked, s2.failed, s3.checked, s3.failed);
    return s2.failed == 0 && s3.failed == 0 && s2.checked > 0 && s3.checked > 0;
}

bool cocycle_identity() {
    for (long q = 2; q <= 30; ++q)
        for (long p : units_of(q))
            for (int N = 0; N <= 6; ++N)
                if (!verify_cocycle(standard_cone(q, {Int(p)}), N)) return false;
    for (long q = 2; q <= 12; ++q) {
        auto us = units_of(q);
        for (long p1 : us)
            for (long p2 : us)
                for (int N = 0; N <= 4; ++N)
                    if (!verify_cocycle(standard_cone(q, {Int(p1), Int(p2)}), N)) return false;
    }
    return true;
}

bool integrality_never_errors() {
    // the sweep of criterion 3 asserts exact divisibility for every tuple it
    // visits (it throws otherwise); cross-check the public operation directly
    // on a sample grid
    if (sweep_checked == 0) return false;
    for (long q : {2, 3, 5, 8, 13, 21, 34, 55, 89, 144})
        for (long p : units_of(q)) {
            for (auto r : {MultiIndex{1, 1}, MultiIndex{2, 2}, MultiIndex{3, 5}, MultiIndex{1, 7}})
                (void)normalized_sum_integer(r, DedekindInput(q, {Int(p)}));
            if (p > 5) break;
        }
    for (long q : {3, 5, 7, 11})
        for (auto r : {MultiIndex{1, 1, 2}, MultiIndex{2, 2, 2}, MultiIndex{1, 3, 4}})
            (void)normalized_sum_integer(r, DedekindInput(q, {Int(1), Int(q - 1)}));
    return true;
}

bool vanishing() {
    // Dedekind sums of odd weight vanish; odd-weight Todd coefficients are
    // supported on index tuples containing a 1.  Both read off the sweep's
    // exact normalized values over n=3, q <= 15, |r| <= 7.
    SweepOptions opt;
    opt.n = 3;
    opt.max_weight = 7;
    opt.qmax = 15;
    bool ok = true;
    SweepStats stats = sweep_congruences(opt, [&](const CongruenceReport& rep) {
        int N = weight(rep.r);
        if (N % 2 == 0) return;
        if (rep.kind == CongruenceKind::DedekindS) {
            if (rep.lhs != 0) ok = false;
        } else {
            bool has_one = false;
            for (int ri : rep.r) has_one = has_one || ri == 1;
            if (!has_one && rep.lhs != 0) ok = false;
        }
    });
    return ok && stats.failed == 0;
}

bool roundtrip_t_s() {
    std::mt19937 rng(20140530);
    std::uniform_int_distribution<long> qdist(2, 30);
    std::uniform_int_distribution<int> ndist(1, 3), rdist(1, 5);
    int done = 0;
    while (done < 500) {
        long q = qdist(rng);
        int n = ndist(rng);
        auto us = units_of(q);
        if (us.empty() && n > 1) continue;
        MultiIndex r;
        for (int i = 0; i < n; ++i) r.push_back(rdist(rng));
        if (weight(r) > 8) continue;
        std::vector<Int> p;
        std::uniform_int_distribution<size_t> pick(0, us.empty() ? 0 : us.size() - 1);
        for (int i = 0; i + 1 < n; ++i) p.emplace_back(us[pick(rng)]);
        if (s_from_t(r, q, p) != dedekind_sum(r, q, p)) return false;
        if (t_from_s(r, q, p) != todd_coefficient_t(r, q, p)) return false;
        ++done;
    }
    return true;
}

bool parshin_order_dependence() {
    std::vector<std::string> xy{"x", "y"};
    RationalFn<Rat> f(laurent_from_text<Rat>("1", xy, Rat(1)),
                      laurent_from_text<Rat>("x - y", xy, Rat(1)));
    return iterated_residue(f, {"x", "y"}) == Rat(1) &&
           iterated_residue(f, {"y", "x"}) == Rat(-1);
}

bool root_counting() {
    // the worked equality case first
    auto sq = count_congruence_roots({Int(0), Int(0), Int(1)}, 3, 2);
    if (!(sq.count == 3 && sq.bound == 3)) return false;
    for (int deg = 1; deg <= 4; ++deg) {
        std::vector<Int> coeffs(static_cast<size_t>(deg) + 1);
        coeffs[static_cast<size_t>(deg)] = 1;
        std::vector<int> digits(static_cast<size_t>(deg), 0);
        while (true) {
            for (int i = 0; i < deg; ++i) coeffs[static_cast<size_t>(i)] = digits[static_cast<size_t>(i)] - 3;
            for (long p : {2L, 3L, 5L, 7L})
                for (int n = 1; n <= 4; ++n)
                    if (!count_congruence_roots(coeffs, p, n).within) return false;
            int pos = 0;
            while (pos < deg && ++digits[static_cast<size_t>(pos)] == 7) digits[static_cast<size_t>(pos++)] = 0;
            if (pos == deg) break;
        }
    }
    return true;
}

bool kloosterman_identity() {
    LaurentZ f = f_r_polynomial(MultiIndex{1, 1});
    const double tau = 6.283185307179586476925286766559;
    for (long q : primes_upto(500)) {
        ExpSumResult r = exp_sum_K(f, q);
        std::complex<double> direct{0, 0};
        for (long a = 1; a < q; ++a) {
            long inv = static_cast<long>(mod_inverse(Int(a), Int(q)));
            direct += std::polar(1.0, tau * static_cast<double>((a + inv) % q) /
                                          static_cast<double>(q));
        }
        if (std::abs(r.value - direct) > 1e-9) return false;
        if (std::abs(r.value) > 2.0 * std::sqrt(static_cast<double>(q)) + 1e-9) return false;
    }
    return true;
}

bool multiplicativity() {
    // 30 coprime pairs with trivial CRT twists (consecutive integers), q1*q2 <= 3000
    LaurentZ f = f_r_polynomial(MultiIndex{1, 1});
    int pairs = 0;
    for (long m = 2; m <= 31; ++m) {
        long q1 = m, q2 = m + 1;
        if (q1 * q2 > 3000) break;
        std::complex<double> lhs = exp_sum_K(f, q1 * q2).value;
        std::complex<double> rhs = exp_sum_K(f, q1).value * exp_sum_K(f, q2).value;
        if (std::abs(lhs - rhs) >= 1e-6 * std::max(1.0, std::abs(rhs))) return false;
        ++pairs;
    }
    return pairs >= 30;
}

bool equidistribution() {
    LaurentZ f = f_r_polynomial(MultiIndex{1, 1});
    for (long k : {1L, 2L}) {
        double a200 = std::abs(weyl_average(f, k, 200).average);
        double a2000 = std::abs(weyl_average(f, k, 2000).average);
        std::printf("      k=%ld: |avg|(200)=%.5f |avg|(2000)=%.5f\n", k, a200, a2000);
        if (!(a2000 < 0.1 && a2000 < a200)) return false;
    }
    HistogramResult h = fractional_part_histogram(MultiIndex{1, 1}, 500, 20);
    std::printf("      n=2 histogram: count=%llu discrepancy=%.4f\n", h.count,
                h.star_discrepancy);
    for (auto b : h.bins)
        if (b == 0) return false;
    if (!(h.star_discrepancy < 0.1)) return false;

    HistogramResult h4 = fractional_part_histogram(MultiIndex{1, 1, 1, 1}, 60, 20);
    int nonempty = 0;
    for (auto b : h4.bins)
        if (b > 0) ++nonempty;
    std::printf("      n=4 histogram: count=%llu nonempty=%d/20\n", h4.count, nonempty);
    return nonempty >= 15;
}

}  // namespace

int main() {
    criterion(1, "golden denominator table d_{N,n}", golden_d_table);
    criterion(2, "golden Laurent polynomials f_(1,1,1,1) and f_(6,4,2)", golden_polynomials);
    criterion(3, "congruence sweep n=2 q<=200, n=3 q<=40, |r|<=8", congruence_sweep);
    criterion(4, "cocycle identity q<=30 (n=2, N<=6) and q<=12 (n=3, N<=4)", cocycle_identity);
    criterion(5, "integrality of d q^{N-n+1} s_r / r! across the sweep", integrality_never_errors);
    criterion(6, "odd-weight vanishing for s and the odd-weight support of t", vanishing);
    criterion(7, "t<->s conversion round trip on 500 samples", roundtrip_t_s);
    criterion(8, "Parshin order dependence: residues +1 / -1 for 1/(x-y)", parshin_order_dependence);
    criterion(9, "root-count bound mod p^n for monic f, deg <= 4", root_counting);
    criterion(10, "Kloosterman identity and Weil ratio <= 2 for primes <= 500", kloosterman_identity);
    criterion(11, "multiplicativity on 30 coprime pairs", multiplicativity);
    criterion(12, "equidistribution: Weyl decay and histogram spread", equidistribution);

    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all 12 acceptance criteria passed\n");
    return 0;
}
