#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "toddsum/rational.hpp"

namespace toddsum {

using LatticeVector = std::vector<Int>;

inline Int content(const LatticeVector& v) {
    Int g = 0;
    for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
    return g;
}

inline bool is_zero_vector(const LatticeVector& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

inline bool is_primitive(const LatticeVector& v) { return content(v) == 1; }

inline LatticeVector make_primitive(const LatticeVector& v) {
    Int g = content(v);
    if (g == 0) throw std::invalid_argument("make_primitive: zero vector");
    LatticeVector w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
    return w;
}

using IntMatrix = std::vector<std::vector<Int>>;  // row major

inline Int det(const IntMatrix& m) {
    size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Int tot = 0;
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        IntMatrix minor(n - 1, std::vector<Int>(n - 1));
        for (size_t r = 1; r < n; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[r - 1][cc++] = m[r][c];
            }
        }
        Int term = m[0][j] * det(minor);
        if (j % 2) tot -= term; else tot += term;
    }
    return tot;
}

// adj(M) = det(M) * M^{-1}
inline IntMatrix adjugate(const IntMatrix& m) {
    size_t n = m.size();
    IntMatrix adj(n, std::vector<Int>(n));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, std::vector<Int>(n - 1));
            size_t rr = 0;
            for (size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                size_t cc = 0;
                for (size_t c = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor[rr][cc++] = m[r][c];
                }
                ++rr;
            }
            Int cof = det(minor);
            adj[i][j] = ((i + j) % 2) ? -cof : cof;
        }
    }
    return adj;
}

/// Ordered tuple of primitive lattice vectors; m generators in Z^n.
struct LatticeCone {
    std::vector<LatticeVector> generators;

    LatticeCone() = default;
    explicit LatticeCone(std::vector<LatticeVector> gens) : generators(std::move(gens)) {
        for (const auto& g : generators)
            if (!is_primitive(g)) throw std::invalid_argument("LatticeCone: generator not primitive");
    }

    size_t num_generators() const { return generators.size(); }
    size_t ambient_dim() const { return generators.empty() ? 0 : generators.front().size(); }

    // generator matrix M_C with generators as columns
    IntMatrix matrix() const {
        size_t n = ambient_dim(), m = num_generators();
        IntMatrix M(n, std::vector<Int>(m));
        for (size_t j = 0; j < m; ++j)
            for (size_t i = 0; i < n; ++i) M[i][j] = generators[j][i];
        return M;
    }

    Int determinant() const {
        if (num_generators() != ambient_dim())
            throw std::invalid_argument("determinant: cone is not full dimensional");
        return det(matrix());
    }

    bool is_degenerate() const {
        return num_generators() != ambient_dim() || determinant() == 0;
    }

    bool is_nonsingular() const {
        if (num_generators() != ambient_dim()) return false;
        Int d = determinant();
        return d == 1 || d == -1;
    }

    LatticeCone face(size_t i) const {
        std::vector<LatticeVector> g;
        for (size_t j = 0; j < generators.size(); ++j)
            if (j != i) g.push_back(generators[j]);
        LatticeCone c;
        c.generators = std::move(g);
        return c;
    }

    auto operator<=>(const LatticeCone& o) const = default;
};

/// Element of the free abelian group on lattice cones; no zero coefficients stored.
struct ConeChain {
    std::map<LatticeCone, Int> terms;

    void add(const LatticeCone& c, const Int& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms.emplace(c, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms.erase(it);
        }
    }

    bool empty() const { return terms.empty(); }
    bool operator==(const ConeChain& o) const { return terms == o.terms; }
};

/// C(q; p_1,...,p_{n-1}): generators e_1,...,e_{n-1} and (p_1,...,p_{n-1},q).
inline LatticeCone standard_cone(const Int& q, const std::vector<Int>& p) {
    if (q < 1) throw std::invalid_argument("standard_cone: q must be positive");
    size_t n = p.size() + 1;
    if (n < 2) throw std::invalid_argument("standard_cone: need n >= 2");
    for (const Int& pi : p)
        if (boost::multiprecision::gcd(mod_norm(pi, q), q) != 1)
            throw std::invalid_argument("standard_cone: gcd(p_i, q) != 1");
    std::vector<LatticeVector> gens;
    for (size_t i = 0; i + 1 < n; ++i) {
        LatticeVector e(n, 0);
        e[i] = 1;
        gens.push_back(std::move(e));
    }
    LatticeVector last(p);
    last.push_back(q);
    gens.push_back(make_primitive(last));
    if (gens.back() != last) throw std::invalid_argument("standard_cone: (p,q) not primitive");
    return LatticeCone(std::move(gens));
}

inline bool is_standard_form(const LatticeCone& c, Int& q_out, std::vector<Int>& p_out) {
    size_t n = c.ambient_dim();
    if (n < 2 || c.num_generators() != n) return false;
    for (size_t j = 0; j + 1 < n; ++j) {
        for (size_t i = 0; i < n; ++i)
            if (c.generators[j][i] != Int(i == j ? 1 : 0)) return false;
    }
    const LatticeVector& last = c.generators[n - 1];
    if (last[n - 1] < 1) return false;
    q_out = last[n - 1];
    p_out.assign(last.begin(), last.end() - 1);
    for (const Int& pi : p_out)
        if (boost::multiprecision::gcd(mod_norm(pi, q_out), q_out) != 1) return false;
    return true;
}

/// Dual cone with primitive inward facet normals as generators.
inline LatticeCone dual_cone(const LatticeCone& c) {
    if (c.is_degenerate()) throw std::invalid_argument("dual_cone: degenerate cone");
    IntMatrix M = c.matrix();
    Int d = det(M);
    IntMatrix adj = adjugate(M);  // row i of adj = d * (row i of M^{-1})
    std::vector<LatticeVector> rows;
    for (size_t i = 0; i < M.size(); ++i) {
        LatticeVector u = adj[i];
        if (d < 0)
            for (Int& x : u) x = -x;
        rows.push_back(make_primitive(u));
    }
    return LatticeCone(std::move(rows));
}

/// All lattice points of the half-open parallelepiped P_C; exactly |det M_C| of them.
inline std::vector<LatticeVector> parallelepiped_lattice_points(const LatticeCone& c) {
    if (c.is_degenerate())
        throw std::invalid_argument("parallelepiped_lattice_points: degenerate cone");
    size_t n = c.ambient_dim();
    IntMatrix M = c.matrix();
    Int d = det(M);
    IntMatrix adj = adjugate(M);
    std::vector<Int> lo(n, 0), hi(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (M[i][j] < 0) lo[i] += M[i][j];
            if (M[i][j] > 0) hi[i] += M[i][j];
        }
    std::vector<LatticeVector> out;
    LatticeVector u(n);
    std::function<void(size_t)> rec = [&](size_t pos) {
        if (pos == n) {
            // barycentric coordinates: a = adj*u / d, need all in [0,1)
            for (size_t i = 0; i < n; ++i) {
                Int s = 0;
                for (size_t j = 0; j < n; ++j) s += adj[i][j] * u[j];
                if (d > 0) {
                    if (s < 0 || s >= d) return;
                } else {
                    if (s > 0 || s <= d) return;
                }
            }
            out.push_back(u);
            return;
        }
        for (Int v = lo[pos]; v <= hi[pos]; ++v) {
            u[pos] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

inline ConeChain boundary(const LatticeCone& c) {
    ConeChain out;
    for (size_t i = 0; i < c.num_generators(); ++i)
        out.add(c.face(i), (i % 2 == 0) ? 1 : -1);
    return out;
}

inline ConeChain boundary(const ConeChain& ch) {
    ConeChain out;
    for (const auto& [cone, coeff] : ch.terms)
        for (size_t i = 0; i < cone.num_generators(); ++i)
            out.add(cone.face(i), ((i % 2 == 0) ? coeff : -coeff));
    return out;
}

// Chain-level subdivision of a k-cone by v: the chain C - (-1)^k d(C,v), which
// differs from C by a boundary and whose k-dimensional support is the stellar
// subdivision of C at v.
inline ConeChain subdivide(const LatticeCone& c, const LatticeVector& v) {
    if (!is_primitive(v)) throw std::invalid_argument("subdivide: v not primitive");
    size_t k = c.num_generators();
    LatticeCone ext = c;
    ext.generators.push_back(v);
    ConeChain out;
    out.add(c, 1);
    ConeChain b = boundary(ext);
    Int sgn = (k % 2 == 0) ? -1 : 1;
    for (const auto& [cone, coeff] : b.terms) out.add(cone, sgn * coeff);
    return out;
}

/// Fulton-style recursive nonsingular subdivision; every output cone has
/// determinant of the same sign as C and absolute value 1.
inline std::vector<std::pair<int, LatticeCone>> nonsingular_subdivision(const LatticeCone& c) {
    if (c.is_degenerate())
        throw std::invalid_argument("nonsingular_subdivision: degenerate cone");
    Int d = c.determinant();
    if (d == 1 || d == -1) return {{1, c}};

    auto points = parallelepiped_lattice_points(c);
    size_t n = c.ambient_dim();
    IntMatrix adj = adjugate(c.matrix());
    // pick nonzero point minimizing the sum of barycentric coordinates,
    // ties broken lexicographically on coordinates
    std::optional<LatticeVector> best;
    Rat best_sum = 0;
    std::vector<Rat> best_bary, bary(n);
    for (const auto& u : points) {
        if (is_zero_vector(u)) continue;
        Rat sum = 0;
        for (size_t i = 0; i < n; ++i) {
            Int s = 0;
            for (size_t j = 0; j < n; ++j) s += adj[i][j] * u[j];
            bary[i] = make_rat(s, d);
            sum += bary[i];
        }
        if (!best || sum < best_sum || (sum == best_sum && u < *best)) {
            best = u;
            best_sum = sum;
            best_bary = bary;
        }
    }
    if (!best) throw std::logic_error("nonsingular_subdivision: no subdivision point found");
    LatticeVector w = make_primitive(*best);

    std::vector<std::pair<int, LatticeCone>> out;
    for (size_t i = 0; i < n; ++i) {
        if (best_bary[i] == 0) continue;
        LatticeCone piece = c;
        piece.generators[i] = w;
        auto sub = nonsingular_subdivision(piece);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

// exact membership test: w in |D| for full dimensional nondegenerate D
inline bool cone_contains(const LatticeCone& d, const LatticeVector& w) {
    size_t n = d.ambient_dim();
    Int dd = d.determinant();
    IntMatrix adj = adjugate(d.matrix());
    for (size_t i = 0; i < n; ++i) {
        Int s = 0;
        for (size_t j = 0; j < n; ++j) s += adj[i][j] * w[j];
        if (dd > 0 ? s < 0 : s > 0) return false;
    }
    return true;
}

struct OuterInnerSplit {
    std::vector<LatticeCone> outer;  // indexed by facet, duplicates collapsed by equality
    std::vector<LatticeCone> inner;
};

/// Splits a nonsingular subdivision of C into the outer cones D_j (the unique
/// cone containing the j-th facet of C) and the remaining inner cones.
inline OuterInnerSplit outer_inner_split(const LatticeCone& c,
                                         const std::vector<std::pair<int, LatticeCone>>& subdivision) {
    size_t n = c.ambient_dim();
    OuterInnerSplit out;
    for (size_t j = 0; j < n; ++j) {
        std::optional<LatticeCone> found;
        for (const auto& [sgn, dcone] : subdivision) {
            bool contains = true;
            for (size_t k = 0; k < n && contains; ++k) {
                if (k == j) continue;
                contains = cone_contains(dcone, c.generators[k]);
            }
            if (contains) {
                if (found && !(*found == dcone))
                    throw std::invalid_argument("outer_inner_split: facet contained in several cones");
                found = dcone;
            }
        }
        if (!found) throw std::invalid_argument("outer_inner_split: facet contained in no cone");
        out.outer.push_back(*found);
    }
    for (const auto& [sgn, dcone] : subdivision) {
        bool is_outer = false;
        for (const auto& oc : out.outer)
            if (oc == dcone) { is_outer = true; break; }
        if (!is_outer) out.inner.push_back(dcone);
    }
    return out;
}

}  // namespace toddsum
