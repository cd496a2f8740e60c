#pragma once

#include <atomic>
#include <functional>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "toddsum/dedekind.hpp"
#include "toddsum/homogpoly.hpp"
#include "toddsum/laurent.hpp"
#include "toddsum/multiindex.hpp"

namespace toddsum {

enum class CongruenceKind { ToddT, DedekindS };

struct CongruenceReport {
    MultiIndex r;
    Int q;
    std::vector<Int> p;
    CongruenceKind kind = CongruenceKind::DedekindS;
    Int lhs;  // the integer d q^{N-n+1} x_r / r!
    Int rhs;  // residue of the Laurent polynomial mod q
    Int d;    // d_{N,n}
    bool holds = false;
};

namespace detail {

inline std::vector<std::string> p_variable_names(size_t count) {
    std::vector<std::string> vars;
    for (size_t i = 0; i < count; ++i) vars.push_back("p" + std::to_string(i + 1));
    return vars;
}

}  // namespace detail

/// Right hand side of the congruence theorems as an integer Laurent polynomial
/// in p_1..p_{n-1}: sum over m with |m| = |r|, some m_i = 0, of
/// (-d) B_m/m! prod C(m_i-1, r_i-1) p_i^{m_i-r_i}, with p_n = -1 substituted.
/// The Dedekind-sum version restricts to even m.
inline LaurentZ congruence_rhs_polynomial(const MultiIndex& r, CongruenceKind kind) {
    size_t n = r.size();
    if (!all_positive(r))
        throw std::invalid_argument("congruence_rhs_polynomial: indices must be >= 1");
    int N = weight(r);
    Int d = denominator_dNn(N, static_cast<int>(n));
    LaurentZ out(detail::p_variable_names(n - 1));
    for_each_multiindex(N, static_cast<int>(n), [&](const MultiIndex& m) {
        if (!has_zero(m)) return;
        if (kind == CongruenceKind::DedekindS && !all_even(m)) return;
        Rat coef = Rat(-d);
        for (int mi : m) coef *= bernoulli_number(static_cast<unsigned>(mi));
        if (coef == 0) return;
        coef /= Rat(factorial_of(m));
        Int c = num(coef);
        if (den(coef) != 1)
            throw std::logic_error("congruence_rhs_polynomial: d B_m/m! not an integer");
        for (size_t i = 0; i < n; ++i) c *= shifted_binomial(m[i], r[i]);
        if (c == 0) return;
        if ((m[n - 1] - r[n - 1]) % 2 != 0) c = -c;  // p_n = -1
        std::vector<long> exps(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) exps[i] = m[i] - r[i];
        out.add_term(exps, c);
    });
    return out;
}

/// f_r: the Dedekind-sum (even-m) right hand side; zero polynomial for odd |r|.
inline LaurentZ f_r_polynomial(const MultiIndex& r) {
    return congruence_rhs_polynomial(r, CongruenceKind::DedekindS);
}

/// d q^{N-n+1} s_r / r!, asserted to be an integer (Cor. of the integrality theorem).
inline Int normalized_sum_integer(const MultiIndex& r, const DedekindInput& in) {
    if (!all_positive(r)) throw std::invalid_argument("normalized_sum_integer: indices must be >= 1");
    int N = weight(r);
    int n = static_cast<int>(r.size());
    Int d = denominator_dNn(N, n);
    Rat val = Rat(d) * rat_pow(Rat(in.q), N - n + 1) * dedekind_sum(r, in.q, in.p) /
              Rat(factorial_of(r));
    if (den(val) != 1)
        throw std::logic_error("normalized_sum_integer: value is not an integer; "
                               "this would falsify the integrality theorem");
    return num(val);
}

inline CongruenceReport verify_congruence(const MultiIndex& r, const DedekindInput& in,
                                          CongruenceKind kind) {
    CongruenceReport rep;
    rep.r = r;
    rep.q = in.q;
    rep.p = in.p;
    rep.kind = kind;
    int N = weight(r);
    int n = static_cast<int>(r.size());
    rep.d = denominator_dNn(N, n);
    Rat value = (kind == CongruenceKind::DedekindS) ? dedekind_sum(r, in.q, in.p)
                                                    : todd_coefficient_t(r, in.q, in.p);
    Rat lhs = Rat(rep.d) * rat_pow(Rat(in.q), N - n + 1) * value / Rat(factorial_of(r));
    if (den(lhs) != 1)
        throw std::logic_error("verify_congruence: left hand side is not an integer");
    rep.lhs = num(lhs);
    rep.rhs = evaluate_mod(congruence_rhs_polynomial(r, kind), in.p, in.q);
    rep.holds = (mod_norm(rep.lhs, in.q) == rep.rhs);
    return rep;
}

inline CongruenceReport verify_congruence_t(const MultiIndex& r, const DedekindInput& in) {
    return verify_congruence(r, in, CongruenceKind::ToddT);
}

inline CongruenceReport verify_congruence_s(const MultiIndex& r, const DedekindInput& in) {
    return verify_congruence(r, in, CongruenceKind::DedekindS);
}

struct FractionalIdentityResult {
    Rat lhs;  // < d q^{N-n} s_r / r! >
    Rat rhs;  // < f_r(p)/q >
    bool equal = false;
};

/// The fractional-part identity: < d q^{N-n}/r! s_r > = < f_r(p)/q >.
inline FractionalIdentityResult fractional_identity(const MultiIndex& r, const DedekindInput& in) {
    int N = weight(r);
    int n = static_cast<int>(r.size());
    Int d = denominator_dNn(N, n);
    FractionalIdentityResult out;
    out.lhs = fractional_part(Rat(d) * rat_pow(Rat(in.q), N - n) * dedekind_sum(r, in.q, in.p) /
                              Rat(factorial_of(r)));
    out.rhs = Rat(evaluate_mod(f_r_polynomial(r), in.p, in.q), in.q);
    out.equal = (out.lhs == out.rhs);
    return out;
}

// ---------------------------------------------------------------------------
// congruence-root counting mod prime powers (brute force at desk scale)

struct RootCountResult {
    Int count;
    Int bound;      // c * p^{n - ceil(n/l)}
    bool within = false;
    Int distinct_roots_mod_p;  // c
    int max_multiplicity = 0;  // l
};

/// Counts roots of f mod p^n by brute force and compares with the
/// c p^{n - ceil(n/l)} bound; f given by coefficients, coeffs[k] of x^k.
inline RootCountResult count_congruence_roots(const std::vector<Int>& coeffs, const Int& p, int n) {
    if (coeffs.empty() || coeffs.back() == 0)
        throw std::invalid_argument("count_congruence_roots: zero leading coefficient");
    if (n < 1) throw std::invalid_argument("count_congruence_roots: need n >= 1");
    if (mod_norm(coeffs.back(), p) == 0)
        throw std::invalid_argument("count_congruence_roots: p divides the leading coefficient");

    auto eval_mod = [&](const Int& z, const Int& modulus) {
        Int acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = (acc * z + *it) % modulus;
        return mod_norm(acc, modulus);
    };

    // roots mod p and their multiplicities via repeated synthetic division
    Int c = 0;
    int l = 0;
    for (Int r0 = 0; r0 < p; ++r0) {
        if (eval_mod(r0, p) != 0) continue;
        ++c;
        std::vector<Int> g(coeffs.size());
        for (size_t i = 0; i < coeffs.size(); ++i) g[i] = mod_norm(coeffs[i], p);
        int mult = 0;
        while (true) {
            // g(r0) == 0: divide by (x - r0) over Z/p
            std::vector<Int> qd(g.size() - 1);
            Int carry = 0;
            for (size_t i = g.size(); i-- > 1;) {
                carry = mod_norm(g[i] + carry * r0, p);
                qd[i - 1] = carry;
            }
            Int rem = mod_norm(g[0] + carry * r0, p);
            if (rem != 0) break;
            ++mult;
            g = qd;
            if (g.empty()) break;
            // keep dividing while r0 is still a root
            Int val = 0;
            for (auto it = g.rbegin(); it != g.rend(); ++it) val = mod_norm(val * r0 + *it, p);
            if (val != 0) break;
        }
        l = std::max(l, mult);
    }

    RootCountResult out;
    out.distinct_roots_mod_p = c;
    out.max_multiplicity = l;
    Int pn = int_pow(p, static_cast<unsigned long>(n));
    Int count = 0;
    for (Int z = 0; z < pn; ++z)
        if (eval_mod(z, pn) == 0) ++count;
    out.count = count;
    if (c == 0) {
        out.bound = 0;
    } else {
        int ceil_nl = (n + l - 1) / l;
        out.bound = c * int_pow(p, static_cast<unsigned long>(n - ceil_nl));
    }
    out.within = (out.count <= out.bound);
    return out;
}

// ---------------------------------------------------------------------------
// exhaustive congruence sweeps with an integer-scaled fast path

struct SweepOptions {
    int n = 2;
    int max_weight = 8;   // |r| <= max_weight, all r_i >= 1
    Int qmax = 200;
    unsigned workers = 0;  // 0 = hardware concurrency
    bool check_t = true;
    bool check_s = true;
};

struct SweepStats {
    unsigned long long checked = 0;
    unsigned long long failed = 0;
    std::vector<CongruenceReport> failures;  // capped
};

namespace detail {

struct ScaledRows {
    Int D;                            // common denominator scale
    std::vector<std::vector<Int>> U;  // U[j][k] = D q^j B_j(k/q)
    std::vector<std::vector<Int>> Us; // periodic variant: row 1 has k=0 entry 0
};

inline ScaledRows scaled_rows(const Int& q, int jmax) {
    ScaledRows t;
    std::vector<std::vector<Rat>> vals(static_cast<size_t>(jmax) + 1);
    t.D = 1;
    for (int j = 0; j <= jmax; ++j) {
        const auto& row = bernoulli_row(q, j);
        Rat qj = rat_pow(Rat(q), j);
        vals[static_cast<size_t>(j)].reserve(row.size());
        for (const Rat& x : row) {
            Rat v = x * qj;
            vals[static_cast<size_t>(j)].push_back(v);
            t.D = boost::multiprecision::lcm(t.D, den(v));
        }
    }
    t.U.resize(vals.size());
    for (size_t j = 0; j < vals.size(); ++j) {
        t.U[j].reserve(vals[j].size());
        for (const Rat& v : vals[j]) t.U[j].push_back(num(v) * (t.D / den(v)));
    }
    t.Us = t.U;
    if (jmax >= 1) t.Us[1][0] = 0;
    return t;
}

// all r with r_i >= 1 and n <= |r| <= max_weight
inline std::vector<MultiIndex> positive_tuples(int n, int max_weight) {
    std::vector<MultiIndex> out;
    for (int N = n; N <= max_weight; ++N)
        for_each_multiindex(N - n, n, [&](const MultiIndex& m) {
            MultiIndex r(m);
            for (int& x : r) x += 1;
            out.push_back(std::move(r));
        });
    return out;
}

inline std::vector<long> units_mod(long q) {
    std::vector<long> out;
    for (long a = 1; a < q; ++a)
        if (std::gcd(a, q) == 1) out.push_back(a);
    if (q == 1) out.push_back(0);  // degenerate, unused in sweeps
    return out;
}

}  // namespace detail

/// Runs the congruence sweep for n = 2 or n = 3 over every (r, q, p) with
/// r_i >= 1, |r| <= max_weight, 2 <= q <= qmax, p_i in (Z/q)^*.  The Todd
/// coefficients are accumulated with integer-scaled Bernoulli rows; the sink,
/// when given, receives every report in deterministic (q, p, r) order.
inline SweepStats sweep_congruences(const SweepOptions& opt,
                                    const std::function<void(const CongruenceReport&)>& sink = {}) {
    if (opt.n != 2 && opt.n != 3)
        throw std::invalid_argument("sweep_congruences: only n = 2 and n = 3 are supported");
    int n = opt.n;
    auto rs = detail::positive_tuples(n, opt.max_weight);

    // cache: per r, the two RHS polynomials and constants
    struct RInfo {
        MultiIndex r;
        int N;
        Int d;
        Int rfact;
        LaurentZ rhs_t, rhs_s;
    };
    std::vector<RInfo> infos;
    for (const auto& r : rs) {
        RInfo info;
        info.r = r;
        info.N = weight(r);
        info.d = denominator_dNn(info.N, n);
        info.rfact = factorial_of(r);
        if (opt.check_t) info.rhs_t = congruence_rhs_polynomial(r, CongruenceKind::ToddT);
        if (opt.check_s) info.rhs_s = congruence_rhs_polynomial(r, CongruenceKind::DedekindS);
        infos.push_back(std::move(info));
    }

    std::vector<long> qs;
    for (long q = 2; Int(q) <= opt.qmax; ++q) qs.push_back(q);
    std::vector<SweepStats> per_q(qs.size());
    std::vector<std::vector<CongruenceReport>> reports(sink ? qs.size() : 0);

    auto run_q = [&](size_t qi) {
        long q = qs[qi];
        Int Q(q);
        auto tables = detail::scaled_rows(Q, opt.max_weight);
        auto units = detail::units_mod(q);
        SweepStats& stats = per_q[qi];
        std::vector<CongruenceReport>* rep_out = sink ? &reports[qi] : nullptr;

        // inverse table mod q for RHS evaluation
        std::vector<long> inv(static_cast<size_t>(q), 0);
        for (long a : units) inv[static_cast<size_t>(a)] = static_cast<long>(mod_inverse(Int(a), Q));

        auto emit = [&](const RInfo& info, CongruenceKind kind, const std::vector<Int>& pvec,
                        const Int& scaled_sum, int npow) {
            // value = scaled_sum / (D^n q^N); lhs = d q^{N-n+1} value / r!
            Int denom = int_pow(tables.D, static_cast<unsigned long>(n)) *
                        int_pow(Q, static_cast<unsigned long>(n - 1)) * info.rfact;
            Int numer = info.d * scaled_sum;
            if (numer % denom != 0)
                throw std::logic_error("sweep_congruences: normalized sum is not an integer");
            CongruenceReport rep;
            rep.r = info.r;
            rep.q = Q;
            rep.p = pvec;
            rep.kind = kind;
            rep.d = info.d;
            rep.lhs = numer / denom;
            const LaurentZ& rhs = (kind == CongruenceKind::ToddT) ? info.rhs_t : info.rhs_s;
            Int acc = 0;
            for (const auto& [e, c] : rhs.terms) {
                Int t = mod_norm(c, Q);
                for (size_t i = 0; i < e.size(); ++i) {
                    long base = (e[i] >= 0) ? static_cast<long>(pvec[i])
                                            : inv[static_cast<size_t>(static_cast<long>(pvec[i]))];
                    long ee = e[i] >= 0 ? e[i] : -e[i];
                    t = t * mod_pow(Int(base), Int(ee), Q) % Q;
                }
                acc = (acc + t) % Q;
            }
            rep.rhs = acc;
            rep.holds = (mod_norm(rep.lhs, Q) == rep.rhs);
            ++stats.checked;
            if (!rep.holds) {
                ++stats.failed;
                if (stats.failures.size() < 16) stats.failures.push_back(rep);
            }
            if (rep_out) rep_out->push_back(std::move(rep));
            (void)npow;
        };

        if (n == 2) {
            for (long p1 : units) {
                for (const auto& info : infos) {
                    int a = info.r[0], b = info.r[1];
                    Int st = 0, ss = 0;
                    for (long k = 0; k < q; ++k) {
                        long m = (p1 * k) % q;
                        if (opt.check_t)
                            st += tables.U[static_cast<size_t>(a)][static_cast<size_t>(k)] *
                                  tables.U[static_cast<size_t>(b)][static_cast<size_t>(m)];
                        if (opt.check_s)
                            ss += tables.Us[static_cast<size_t>(a)][static_cast<size_t>(k)] *
                                  tables.Us[static_cast<size_t>(b)][static_cast<size_t>(m)];
                    }
                    std::vector<Int> pvec{Int(p1)};
                    if (opt.check_t) emit(info, CongruenceKind::ToddT, pvec, st, info.N);
                    if (opt.check_s) emit(info, CongruenceKind::DedekindS, pvec, ss, info.N);
                }
            }
        } else {
            // n = 3: W[c] = sum_{k2} U[b][k2] U[c'= (c + p2 k2) mod q]; then
            // contract with U[a][k1] at c = p1 k1 mod q.
            int maxw = opt.max_weight;
            for (long p2 : units) {
                // conv[b][cidx][m] for pairs (b, cidx) with b + cidx <= maxw - 1
                std::vector<std::vector<std::vector<Int>>> Wt, Ws;
                auto build = [&](const std::vector<std::vector<Int>>& U) {
                    std::vector<std::vector<std::vector<Int>>> W(
                        static_cast<size_t>(maxw) + 1,
                        std::vector<std::vector<Int>>(static_cast<size_t>(maxw) + 1));
                    for (int b = 1; b + 2 <= maxw; ++b)
                        for (int cc = 1; b + cc + 1 <= maxw; ++cc) {
                            std::vector<Int> row(static_cast<size_t>(q), Int(0));
                            for (long k2 = 0; k2 < q; ++k2) {
                                const Int& ub = U[static_cast<size_t>(b)][static_cast<size_t>(k2)];
                                if (ub == 0) continue;
                                long base = (p2 * k2) % q;
                                for (long c0 = 0; c0 < q; ++c0) {
                                    long m = c0 + base;
                                    if (m >= q) m -= q;
                                    row[static_cast<size_t>(c0)] +=
                                        ub * U[static_cast<size_t>(cc)][static_cast<size_t>(m)];
                                }
                            }
                            W[static_cast<size_t>(b)][static_cast<size_t>(cc)] = std::move(row);
                        }
                    return W;
                };
                if (opt.check_t) Wt = build(tables.U);
                if (opt.check_s) Ws = build(tables.Us);
                for (long p1 : units) {
                    std::vector<Int> pvec{Int(p1), Int(p2)};
                    for (const auto& info : infos) {
                        int a = info.r[0], b = info.r[1], cc = info.r[2];
                        Int st = 0, ss = 0;
                        for (long k1 = 0; k1 < q; ++k1) {
                            long c0 = (p1 * k1) % q;
                            if (opt.check_t)
                                st += tables.U[static_cast<size_t>(a)][static_cast<size_t>(k1)] *
                                      Wt[static_cast<size_t>(b)][static_cast<size_t>(cc)]
                                        [static_cast<size_t>(c0)];
                            if (opt.check_s)
                                ss += tables.Us[static_cast<size_t>(a)][static_cast<size_t>(k1)] *
                                      Ws[static_cast<size_t>(b)][static_cast<size_t>(cc)]
                                        [static_cast<size_t>(c0)];
                        }
                        if (opt.check_t) emit(info, CongruenceKind::ToddT, pvec, st, info.N);
                        if (opt.check_s) emit(info, CongruenceKind::DedekindS, pvec, ss, info.N);
                    }
                }
            }
        }
    };

    unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
    if (workers <= 1) {
        for (size_t i = 0; i < qs.size(); ++i) run_q(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                while (true) {
                    size_t i = next.fetch_add(1);
                    if (i >= qs.size()) break;
                    run_q(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    SweepStats total;
    for (size_t i = 0; i < qs.size(); ++i) {
        total.checked += per_q[i].checked;
        total.failed += per_q[i].failed;
        for (auto& f : per_q[i].failures)
            if (total.failures.size() < 16) total.failures.push_back(f);
        if (sink)
            for (const auto& rep : reports[i]) sink(rep);
    }
    return total;
}

}  // namespace toddsum
