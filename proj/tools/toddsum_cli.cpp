// Command-line front end: generalized Dedekind sums, Todd polynomials of
// lattice cones, congruence sweeps, and exponential-sum experiments.

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toddsum/toddsum.hpp"

using namespace toddsum;

namespace {

constexpr int kExitFalsified = 2;

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.emplace_back(item);
    }
    return out;
}

MultiIndex parse_multiindex(const std::string& s) {
    MultiIndex out;
    for (const Int& x : parse_int_list(s)) out.push_back(static_cast<int>(x));
    return out;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw CLI::ValidationError("--output", "cannot open " + path);
    return file;
}

int selftest_report(const std::string& name, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << " " << name << " selftest\n";
    return ok ? 0 : kExitFalsified;
}

std::vector<long> primes_in(long lo, long hi) {
    std::vector<long> out;
    for (long n = std::max(2L, lo); n <= hi; ++n) {
        bool prime = n >= 2;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0) { prime = false; break; }
        if (prime) out.push_back(n);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact generalized Dedekind sums, Todd cocycles and exponential sums"};
    app.require_subcommand(1);

    unsigned workers = 0;
    app.add_option("--workers", workers, "worker threads for sweeps (0 = all cores)")
        ->envname("TODDSUM_WORKERS");

    int exit_code = 0;

    // ---------------------------------------------------------------- sum
    auto* sum = app.add_subcommand("sum", "generalized Dedekind sum s_r, Todd coefficient t_r, or Zagier sum");
    std::string sum_r, sum_p, sum_kind = "s", sum_format = "text";
    long sum_q = 0;
    bool sum_selftest = false;
    sum->add_option("--r", sum_r, "comma separated index tuple, e.g. 1,1");
    sum->add_option("--q", sum_q, "modulus q");
    sum->add_option("--p", sum_p, "comma separated p_1,...,p_{n-1}");
    sum->add_option("--kind", sum_kind, "s | t | zagier")->check(CLI::IsMember({"s", "t", "zagier"}));
    sum->add_option("--format", sum_format, "text | json")->check(CLI::IsMember({"text", "json"}));
    sum->add_option("--n", "dimension (informational; inferred from --r)");
    sum->add_flag("--selftest", sum_selftest, "run the built-in examples");
    sum->callback([&] {
        if (sum_selftest) {
            bool ok = dedekind_sum(MultiIndex{1, 1}, 3, {Int(1)}) == Rat(1, 18) &&
                      dedekind_sum(MultiIndex{1, 2}, 5, {Int(2)}) == 0 &&
                      todd_coefficient_t(MultiIndex{4}, 9, {}) == bernoulli_number(4);
            exit_code = selftest_report("sum", ok);
            return;
        }
        MultiIndex r = parse_multiindex(sum_r);
        std::vector<Int> p = parse_int_list(sum_p);
        Rat value;
        if (sum_kind == "zagier") value = zagier_sum(DedekindInput(sum_q, p));
        else if (sum_kind == "t") value = todd_coefficient_t(r, sum_q, p);
        else value = dedekind_sum(r, DedekindInput(sum_q, p));
        if (sum_format == "json") {
            json j;
            j["r"] = r;
            j["q"] = Int(sum_q).str();
            json pv = json::array();
            for (const Int& x : p) pv.push_back(x.str());
            j["p"] = pv;
            j["kind"] = sum_kind;
            j["value"] = {{"num", num(value).str()}, {"den", den(value).str()}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << rat_to_string(value) << "\n";
        }
    });

    // --------------------------------------------------------------- todd
    auto* todd = app.add_subcommand("todd", "Todd polynomial of a lattice cone");
    std::string todd_p, todd_cone, todd_format = "json";
    long todd_q = 0;
    int todd_N = 0;
    bool todd_selftest = false;
    todd->add_option("--q", todd_q, "standard cone C(q;p...)");
    todd->add_option("--p", todd_p, "comma separated p list for C(q;p...)");
    todd->add_option("--cone", todd_cone, "cone as JSON {\"generators\":[[...],...]}");
    todd->add_option("--N", todd_N, "homogeneous degree")->required(false);
    todd->add_option("--format", todd_format, "json | text")->check(CLI::IsMember({"json", "text"}));
    todd->add_flag("--selftest", todd_selftest);
    todd->callback([&] {
        if (todd_selftest) {
            LatticeCone unit({{Int(1), Int(0)}, {Int(0), Int(1)}});
            bool ok = todd_polynomial_of_cone(unit, 2) == todd_polynomial(2, 2) &&
                      todd_polynomial(0, 3).coefficient(MultiIndex{0, 0, 0}) == 1;
            exit_code = selftest_report("todd", ok);
            return;
        }
        LatticeCone cone = todd_cone.empty()
                               ? standard_cone(todd_q, parse_int_list(todd_p))
                               : cone_from_json(json::parse(todd_cone));
        HomogPolynomial t = todd_polynomial_of_cone(cone, todd_N);
        if (todd_format == "json") {
            std::cout << homogpoly_to_json(t).dump() << "\n";
        } else {
            for (const auto& [idx, c] : t.terms) {
                std::cout << rat_to_string(c) << " * x^(";
                for (size_t i = 0; i < idx.size(); ++i)
                    std::cout << (i ? "," : "") << idx[i];
                std::cout << ")\n";
            }
        }
    });

    // -------------------------------------------------------- denominator
    auto* denom = app.add_subcommand("denominator", "universal denominator d_{N,n}");
    int den_N = 0, den_n = 0;
    bool den_selftest = false;
    denom->add_option("--N", den_N, "weight");
    denom->add_option("--n", den_n, "dimension");
    denom->add_flag("--selftest", den_selftest);
    denom->callback([&] {
        if (den_selftest) {
            bool ok = denominator_dNn(2, 2) == 12 && denominator_dNn(0, 1) == 1;
            exit_code = selftest_report("denominator", ok);
            return;
        }
        std::cout << denominator_dNn(den_N, den_n).str() << "\n";
    });

    // ----------------------------------------------------------- subdivide
    auto* subdiv = app.add_subcommand("subdivide", "nonsingular subdivision of a cone (JSON in/out)");
    std::string subdiv_cone, subdiv_p, subdiv_out;
    long subdiv_q = 0;
    bool subdiv_selftest = false;
    subdiv->add_option("--cone", subdiv_cone, "cone as JSON");
    subdiv->add_option("--q", subdiv_q, "standard cone C(q;p...)");
    subdiv->add_option("--p", subdiv_p, "p list for the standard cone");
    subdiv->add_option("--output", subdiv_out, "output path (default stdout)");
    subdiv->add_flag("--selftest", subdiv_selftest);
    subdiv->callback([&] {
        if (subdiv_selftest) {
            auto parts = nonsingular_subdivision(standard_cone(3, {Int(1)}));
            bool ok = !parts.empty();
            for (const auto& [sgn, d] : parts) ok = ok && d.determinant() == 1;
            exit_code = selftest_report("subdivide", ok);
            return;
        }
        LatticeCone cone = subdiv_cone.empty()
                               ? standard_cone(subdiv_q, parse_int_list(subdiv_p))
                               : cone_from_json(json::parse(subdiv_cone));
        auto parts = nonsingular_subdivision(cone);
        json out = json::array();
        for (const auto& [sgn, d] : parts) {
            json piece = cone_to_json(d);
            piece["sign"] = sgn;
            out.push_back(piece);
        }
        std::ofstream file;
        open_output(file, subdiv_out) << json{{"cones", out}}.dump() << "\n";
    });

    // ------------------------------------------------------------- fr-poly
    auto* frpoly = app.add_subcommand("fr-poly", "the Laurent polynomial f_r of the congruence theorem");
    std::string fr_r, fr_format = "text";
    bool fr_selftest = false;
    frpoly->add_option("--r", fr_r, "index tuple, all entries >= 1");
    frpoly->add_option("--format", fr_format, "text | json")->check(CLI::IsMember({"text", "json"}));
    frpoly->add_flag("--selftest", fr_selftest);
    frpoly->callback([&] {
        if (fr_selftest) {
            LaurentZ f = f_r_polynomial(MultiIndex{1, 1});
            bool ok = laurent_to_text(f) == "p1^-1 + p1" || laurent_to_text(f) == "p1 + p1^-1";
            ok = ok && f_r_polynomial(MultiIndex{1, 2}).is_zero();
            exit_code = selftest_report("fr-poly", ok);
            return;
        }
        LaurentZ f = f_r_polynomial(parse_multiindex(fr_r));
        if (fr_format == "json") std::cout << laurent_to_json(f).dump() << "\n";
        else std::cout << laurent_to_text(f) << "\n";
    });

    // ----------------------------------------------------- verify-congruence
    auto* verify = app.add_subcommand("verify-congruence", "sweep the mod-q congruences, JSONL output");
    int vc_n = 2, vc_rmax = 8;
    long vc_qmax = 30;
    std::string vc_out, vc_kind = "both";
    bool vc_selftest = false, vc_quiet = false;
    verify->add_option("--n", vc_n, "dimension (2 or 3)");
    verify->add_option("--rmax", vc_rmax, "maximal weight |r|");
    verify->add_option("--qmax", vc_qmax, "maximal modulus q");
    verify->add_option("--kind", vc_kind, "t | s | both")->check(CLI::IsMember({"t", "s", "both"}));
    verify->add_option("--output", vc_out, "output path (default stdout)");
    verify->add_flag("--quiet", vc_quiet, "suppress the per-case JSONL, print only the summary");
    verify->add_flag("--selftest", vc_selftest);
    verify->callback([&] {
        if (vc_selftest) {
            bool ok = verify_congruence_s(MultiIndex{1, 1}, DedekindInput(3, {Int(1)})).holds;
            exit_code = selftest_report("verify-congruence", ok);
            return;
        }
        SweepOptions opt;
        opt.n = vc_n;
        opt.max_weight = vc_rmax;
        opt.qmax = vc_qmax;
        opt.workers = workers;
        opt.check_t = vc_kind != "s";
        opt.check_s = vc_kind != "t";
        std::ofstream file;
        std::ostream& os = open_output(file, vc_out);
        SweepStats stats;
        if (vc_quiet) {
            stats = sweep_congruences(opt);
        } else {
            stats = sweep_congruences(opt, [&](const CongruenceReport& rep) {
                os << congruence_report_to_json(rep).dump() << "\n";
            });
        }
        std::cerr << "checked " << stats.checked << " congruences, " << stats.failed
                  << " failures\n";
        if (stats.failed) exit_code = kExitFalsified;
    });

    // ----------------------------------------------------------------- ict
    auto* ict = app.add_subcommand("ict", "iterated constant term / flag residue of a rational function");
    std::string ict_num = "1", ict_den = "1", ict_vars, ict_ring = "Q";
    long ict_mod = 0;
    bool ict_residue = false, ict_selftest = false;
    ict->add_option("--num", ict_num, "numerator Laurent polynomial, text format");
    ict->add_option("--den", ict_den, "denominator Laurent polynomial, text format");
    ict->add_option("--vars", ict_vars, "ordered flag, e.g. x,y (last expanded first)");
    ict->add_option("--ring", ict_ring, "Q | Z | Zq")->check(CLI::IsMember({"Q", "Z", "Zq"}));
    ict->add_option("--mod", ict_mod, "modulus for ring Zq");
    ict->add_flag("--residue", ict_residue, "flag residue instead of the constant term");
    ict->add_flag("--selftest", ict_selftest);
    ict->callback([&] {
        std::vector<std::string> vars;
        {
            std::stringstream ss(ict_vars);
            std::string item;
            while (std::getline(ss, item, ',')) vars.push_back(item);
        }
        if (ict_selftest) {
            std::vector<std::string> xy{"x", "y"};
            RationalFn<Rat> f(laurent_from_text<Rat>("1", xy, Rat(1)),
                              laurent_from_text<Rat>("x - y", xy, Rat(1)));
            bool ok = iterated_residue(f, {"x", "y"}) == Rat(1) &&
                      iterated_residue(f, {"y", "x"}) == Rat(-1) &&
                      iterated_constant_term(f, {"x", "y"}) == Rat(0);
            exit_code = selftest_report("ict", ok);
            return;
        }
        if (ict_ring == "Zq") {
            if (ict_mod < 2) throw CLI::ValidationError("--mod", "need a modulus >= 2 for ring Zq");
            Zmod one(1, ict_mod);
            RationalFn<Zmod> f(laurent_from_text<Zmod>(ict_num, vars, one),
                               laurent_from_text<Zmod>(ict_den, vars, one));
            Zmod r = ict_residue ? iterated_residue(f, vars) : iterated_constant_term(f, vars);
            std::cout << r.v.str() << " (mod " << r.q.str() << ")\n";
        } else if (ict_ring == "Z") {
            RationalFn<Int> f(laurent_from_text<Int>(ict_num, vars, Int(1)),
                              laurent_from_text<Int>(ict_den, vars, Int(1)));
            Int r = ict_residue ? iterated_residue(f, vars) : iterated_constant_term(f, vars);
            std::cout << r.str() << "\n";
        } else {
            RationalFn<Rat> f(laurent_from_text<Rat>(ict_num, vars, Rat(1)),
                              laurent_from_text<Rat>(ict_den, vars, Rat(1)));
            Rat r = ict_residue ? iterated_residue(f, vars) : iterated_constant_term(f, vars);
            std::cout << rat_to_string(r) << "\n";
        }
    });

    // -------------------------------------------------------------- expsum
    auto* expsum = app.add_subcommand("expsum", "exponential sums K(f,q), CSV output");
    std::string es_r, es_f, es_vars, es_out;
    long es_qmin = 2, es_qmax = 50;
    bool es_primes = false, es_selftest = false;
    expsum->add_option("--r", es_r, "use f = f_r for this index tuple");
    expsum->add_option("--f", es_f, "explicit Laurent polynomial (text format)");
    expsum->add_option("--vars", es_vars, "variables for --f, e.g. p1,p2");
    expsum->add_option("--qmin", es_qmin, "smallest modulus");
    expsum->add_option("--qmax", es_qmax, "largest modulus");
    expsum->add_flag("--primes-only", es_primes, "restrict to prime moduli");
    expsum->add_option("--output", es_out, "output path (default stdout)");
    expsum->add_flag("--selftest", es_selftest);
    expsum->set_config("--config");
    expsum->callback([&] {
        if (es_selftest) {
            LaurentZ zero({"p1"});
            ExpSumResult r = exp_sum_K(zero, 7);
            bool ok = std::abs(r.value - std::complex<double>(6, 0)) < 1e-12;
            exit_code = selftest_report("expsum", ok);
            return;
        }
        LaurentZ f({"p1"});
        if (!es_f.empty()) {
            std::vector<std::string> vars;
            std::stringstream ss(es_vars);
            std::string item;
            while (std::getline(ss, item, ',')) vars.push_back(item);
            f = laurent_from_text<Int>(es_f, vars, Int(1));
        } else {
            f = f_r_polynomial(parse_multiindex(es_r));
        }
        std::ofstream file;
        std::ostream& os = open_output(file, es_out);
        os << "q,re,im,abs,bound\n";
        for (long q = std::max(2L, es_qmin); q <= es_qmax; ++q) {
            if (es_primes) {
                bool prime = q >= 2;
                for (long d = 2; d * d <= q; ++d)
                    if (q % d == 0) { prime = false; break; }
                if (!prime) continue;
            }
            ExpSumResult r = exp_sum_K(f, q);
            os << q << "," << r.value.real() << "," << r.value.imag() << ","
               << std::abs(r.value) << "," << r.weil_reference << "\n";
        }
    });

    // ------------------------------------------------------------ equidist
    auto* equi = app.add_subcommand("equidist", "Weyl averages and fractional-part histograms, CSV output");
    std::string eq_r = "1,1", eq_mode = "weyl", eq_out;
    double eq_x = 200;
    long eq_k = 1;
    int eq_bins = 20;
    bool eq_selftest = false;
    equi->add_option("--r", eq_r, "index tuple for f_r");
    equi->add_option("--x", eq_x, "cutoff: tuples with q < x");
    equi->add_option("--k", eq_k, "nonzero harmonic for the Weyl average");
    equi->add_option("--bins", eq_bins, "histogram bins");
    equi->add_option("--mode", eq_mode, "weyl | hist")->check(CLI::IsMember({"weyl", "hist"}));
    equi->add_option("--output", eq_out, "output path (default stdout)");
    equi->add_flag("--selftest", eq_selftest);
    equi->set_config("--config");
    equi->callback([&] {
        if (eq_selftest) {
            LaurentZ zero({"p1"});
            EquidistSample s = weyl_average(zero, 1, 10);
            bool ok = std::abs(s.average - std::complex<double>(1, 0)) < 1e-12;
            exit_code = selftest_report("equidist", ok);
            return;
        }
        MultiIndex r = parse_multiindex(eq_r);
        std::ofstream file;
        std::ostream& os = open_output(file, eq_out);
        if (eq_mode == "weyl") {
            LaurentZ f = f_r_polynomial(r);
            if (!check_condition_H(f))
                std::cerr << "warning: f_r does not satisfy condition (H)\n";
            EquidistSample s = weyl_average(f, eq_k, eq_x);
            os << "x,k,re,im,abs,count\n";
            os << eq_x << "," << eq_k << "," << s.average.real() << "," << s.average.imag()
               << "," << std::abs(s.average) << "," << s.count << "\n";
        } else {
            HistogramResult h = fractional_part_histogram(r, eq_x, eq_bins);
            os << "bin_lo,bin_hi,count\n";
            for (int b = 0; b < eq_bins; ++b)
                os << static_cast<double>(b) / eq_bins << ","
                   << static_cast<double>(b + 1) / eq_bins << "," << h.bins[static_cast<size_t>(b)]
                   << "\n";
            std::cerr << "count " << h.count << " star-discrepancy " << h.star_discrepancy << "\n";
        }
    });

    // ---------------------------------------------------------- roots-modpk
    auto* roots = app.add_subcommand("roots-modpk", "count roots of a polynomial modulo p^k");
    std::string rt_coeffs;
    long rt_p = 2;
    int rt_k = 1;
    bool rt_selftest = false;
    roots->add_option("--coeffs", rt_coeffs, "comma separated coefficients, constant first");
    roots->add_option("--p", rt_p, "prime");
    roots->add_option("--k", rt_k, "power");
    roots->add_flag("--selftest", rt_selftest);
    roots->callback([&] {
        if (rt_selftest) {
            auto r = count_congruence_roots({Int(0), Int(1)}, 5, 3);
            exit_code = selftest_report("roots-modpk", r.count == 1 && r.within);
            return;
        }
        auto r = count_congruence_roots(parse_int_list(rt_coeffs), rt_p, rt_k);
        json j;
        j["count"] = r.count.str();
        j["bound"] = r.bound.str();
        j["within"] = r.within;
        j["distinct_roots_mod_p"] = r.distinct_roots_mod_p.str();
        j["max_multiplicity"] = r.max_multiplicity;
        std::cout << j.dump() << "\n";
        if (!r.within) exit_code = kExitFalsified;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
