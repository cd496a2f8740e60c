#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "toddsum/congruence.hpp"
#include "toddsum/homogpoly.hpp"
#include "toddsum/lattice.hpp"
#include "toddsum/laurent.hpp"

namespace toddsum {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// cones: { "generators": [[int,...],...] }

inline json cone_to_json(const LatticeCone& c) {
    json gens = json::array();
    for (const auto& g : c.generators) {
        json v = json::array();
        for (const Int& x : g) v.push_back(x.str());
        gens.push_back(v);
    }
    return json{{"generators", gens}};
}

inline LatticeCone cone_from_json(const json& j) {
    std::vector<LatticeVector> gens;
    for (const auto& v : j.at("generators")) {
        LatticeVector g;
        for (const auto& x : v) {
            if (x.is_string()) g.emplace_back(x.get<std::string>());
            else g.emplace_back(x.get<long long>());
        }
        gens.push_back(std::move(g));
    }
    return LatticeCone(std::move(gens));
}

// ---------------------------------------------------------------------------
// homogeneous polynomials:
// { "n":..., "N":..., "terms": [{"index":[...], "num":"...", "den":"..."}] }

inline json homogpoly_to_json(const HomogPolynomial& p) {
    json terms = json::array();
    for (const auto& [idx, c] : p.terms) {
        json t;
        t["index"] = idx;
        t["num"] = num(c).str();
        t["den"] = den(c).str();
        terms.push_back(t);
    }
    return json{{"n", p.n}, {"N", p.degree}, {"terms", terms}};
}

inline HomogPolynomial homogpoly_from_json(const json& j) {
    HomogPolynomial p(j.at("n").get<int>(), j.at("N").get<int>());
    for (const auto& t : j.at("terms")) {
        MultiIndex idx = t.at("index").get<MultiIndex>();
        Rat c = make_rat(Int(t.at("num").get<std::string>()), Int(t.at("den").get<std::string>()));
        p.add_term(idx, c);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Laurent polynomials, JSON mirror: { "vars":[...], "terms":[{"coeff":..., "exps":[...]}] }

template <class T>
inline json laurent_to_json(const LaurentPolynomial<T>& f) {
    json terms = json::array();
    for (const auto& [e, c] : f.terms) {
        json t;
        t["coeff"] = RingTraits<T>::to_string(c);
        t["exps"] = e;
        terms.push_back(t);
    }
    return json{{"vars", f.vars}, {"terms", terms}};
}

// ---------------------------------------------------------------------------
// Laurent polynomial text: c1*x^e1*y^e2 + c2*... with integer or num/den coefficients

template <class T>
inline std::string laurent_to_text(const LaurentPolynomial<T>& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : f.terms) {
        std::string cs = RingTraits<T>::to_string(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        if (neg) cs = cs.substr(1);
        std::vector<std::string> factors;
        bool all_zero = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            all_zero = false;
            std::string fpart = f.vars[i];
            if (e[i] != 1) fpart += "^" + std::to_string(e[i]);
            factors.push_back(fpart);
        }
        if (all_zero || cs != "1") {
            os << cs;
            if (!all_zero) os << "*";
        }
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) os << "*";
            os << factors[i];
        }
        first = false;
    }
    return os.str();
}

namespace detail {

struct TextCursor {
    const std::string& s;
    size_t pos = 0;
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
};

inline std::string parse_number_token(TextCursor& c) {
    c.skip_ws();
    size_t start = c.pos;
    if (c.pos < c.s.size() && (c.s[c.pos] == '+' || c.s[c.pos] == '-')) ++c.pos;
    while (c.pos < c.s.size() &&
           (std::isdigit(static_cast<unsigned char>(c.s[c.pos])) || c.s[c.pos] == '/'))
        ++c.pos;
    return c.s.substr(start, c.pos - start);
}

inline std::string parse_ident(TextCursor& c) {
    c.skip_ws();
    size_t start = c.pos;
    while (c.pos < c.s.size() && (std::isalnum(static_cast<unsigned char>(c.s[c.pos])) || c.s[c.pos] == '_'))
        ++c.pos;
    return c.s.substr(start, c.pos - start);
}

}  // namespace detail

/// Parses the text format written by laurent_to_text over the given variables.
template <class T>
inline LaurentPolynomial<T> laurent_from_text(const std::string& text,
                                              const std::vector<std::string>& vars,
                                              const T& one) {
    LaurentPolynomial<T> out(vars);
    detail::TextCursor cur{text};
    if (cur.done()) return out;
    bool first = true;
    while (!cur.done()) {
        int sign = 1;
        char ch = cur.peek();
        if (ch == '+' || ch == '-') {
            sign = (ch == '-') ? -1 : 1;
            ++cur.pos;
        } else if (!first) {
            throw std::invalid_argument("laurent_from_text: expected + or - between terms");
        }
        first = false;
        // term: factors separated by '*'; a factor is a number or var[^exp]
        Rat coeff = 1;
        std::vector<long> exps(vars.size(), 0);
        bool any = false;
        while (true) {
            char pc = cur.peek();
            if (std::isdigit(static_cast<unsigned char>(pc))) {
                coeff *= rat_from_string(detail::parse_number_token(cur));
                any = true;
            } else if (std::isalpha(static_cast<unsigned char>(pc)) || pc == '_') {
                std::string name = detail::parse_ident(cur);
                long e = 1;
                cur.skip_ws();
                if (cur.peek() == '^') {
                    ++cur.pos;
                    e = std::stol(detail::parse_number_token(cur));
                }
                bool known = false;
                for (size_t i = 0; i < vars.size(); ++i)
                    if (vars[i] == name) {
                        exps[i] += e;
                        known = true;
                        break;
                    }
                if (!known) throw std::invalid_argument("laurent_from_text: unknown variable " + name);
                any = true;
            } else {
                throw std::invalid_argument("laurent_from_text: expected a factor");
            }
            if (cur.peek() == '*') {
                ++cur.pos;
                continue;
            }
            break;
        }
        if (!any) throw std::invalid_argument("laurent_from_text: empty term");
        if (sign < 0) coeff = -coeff;
        T c = one;
        if constexpr (std::is_same_v<T, Zmod>) {
            if (den(coeff) != 1) c = Zmod(num(coeff), one.q) * RingTraits<Zmod>::invert(Zmod(den(coeff), one.q));
            else c = Zmod(num(coeff), one.q);
        } else {
            c = RingTraits<T>::from_rat(coeff);
        }
        out.add_term(exps, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// congruence reports as JSONL rows

inline json congruence_report_to_json(const CongruenceReport& rep) {
    json j;
    j["r"] = rep.r;
    j["q"] = rep.q.str();
    json pv = json::array();
    for (const Int& x : rep.p) pv.push_back(x.str());
    j["p"] = pv;
    j["kind"] = (rep.kind == CongruenceKind::ToddT) ? "t" : "s";
    j["lhs"] = rep.lhs.str();
    j["rhs"] = rep.rhs.str();
    j["d"] = rep.d.str();
    j["holds"] = rep.holds;
    return j;
}

}  // namespace toddsum
