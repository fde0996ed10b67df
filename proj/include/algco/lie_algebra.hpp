#pragma once

#include "linalg.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace algco {

/**
 * Finite-dimensional Lie algebra over Q, presented by structure constants
 * on a fixed basis e_0..e_{n-1}:  [e_i, e_j] = sum_k c(i,j,k) e_k.
 *
 * Construction does not validate antisymmetry/Jacobi; call
 * check_lie_algebra() to get a full violation report.
 */
class LieAlgebra {
public:
    LieAlgebra() = default;
    LieAlgebra(std::string name, std::size_t dim)
        : m_name(std::move(name)), m_dim(dim), m_c(dim * dim * dim, Rational(0)) {}

    const std::string& name() const { return m_name; }
    std::size_t dim() const { return m_dim; }

    const Rational& c(std::size_t i, std::size_t j, std::size_t k) const {
        return m_c[(i * m_dim + j) * m_dim + k];
    }

    /// Sets [e_i, e_j] = coeffs and the antisymmetric counterpart.
    void set_bracket(std::size_t i, std::size_t j, const QVector& coeffs) {
        if (coeffs.size() != m_dim) throw DimensionMismatch("set_bracket: bad coefficient count");
        for (std::size_t k = 0; k < m_dim; ++k) {
            m_c[(i * m_dim + j) * m_dim + k] = coeffs[k];
            m_c[(j * m_dim + i) * m_dim + k] = -coeffs[k];
        }
    }

    /// Bilinear extension of the bracket to arbitrary coefficient vectors.
    QVector bracket(const QVector& a, const QVector& b) const {
        if (a.size() != m_dim || b.size() != m_dim) throw DimensionMismatch("bracket: bad vector");
        QVector r(m_dim, Rational(0));
        for (std::size_t i = 0; i < m_dim; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < m_dim; ++j) {
                if (b[j] == 0) continue;
                const Rational f = a[i] * b[j];
                for (std::size_t k = 0; k < m_dim; ++k)
                    if (!(c(i, j, k) == 0)) r[k] += f * c(i, j, k);
            }
        }
        return r;
    }

    /// Matrix of ad_a = [a, -] in the defining basis.
    QMatrix ad(const QVector& a) const {
        QMatrix m(m_dim, m_dim);
        for (std::size_t j = 0; j < m_dim; ++j) {
            QVector ej(m_dim, Rational(0));
            ej[j] = 1;
            QVector col = bracket(a, ej);
            for (std::size_t k = 0; k < m_dim; ++k) m(k, j) = col[k];
        }
        return m;
    }

    QMatrix ad(std::size_t i) const {
        QVector ei(m_dim, Rational(0));
        ei[i] = 1;
        return ad(ei);
    }

private:
    std::string m_name;
    std::size_t m_dim = 0;
    std::vector<Rational> m_c; // flattened (i, j, k)
};

/// One violated structure identity with the offending indices and residual.
struct StructureViolation {
    enum class Kind { Antisymmetry, Jacobi, Representation, Morphism } kind;
    std::vector<std::size_t> indices;
    Rational residual;
};

struct StructureReport {
    std::vector<StructureViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks antisymmetry (all i <= j) and the Jacobi identity (all i < j < l),
/// reporting every violated instance.
inline StructureReport check_lie_algebra(const LieAlgebra& g) {
    StructureReport rep;
    const std::size_t n = g.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Rational r = g.c(i, j, k) + g.c(j, i, k);
                if (!(r == 0))
                    rep.violations.push_back({StructureViolation::Kind::Antisymmetry, {i, j, k}, r});
            }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t l = j + 1; l < n; ++l)
                for (std::size_t k = 0; k < n; ++k) {
                    Rational r(0);
                    for (std::size_t m = 0; m < n; ++m)
                        r += g.c(j, l, m) * g.c(i, m, k)   // [e_i,[e_j,e_l]]
                           + g.c(l, i, m) * g.c(j, m, k)   // [e_j,[e_l,e_i]]
                           + g.c(i, j, m) * g.c(l, m, k);  // [e_l,[e_i,e_j]]
                    if (!(r == 0))
                        rep.violations.push_back({StructureViolation::Kind::Jacobi, {i, j, l, k}, r});
                }
    return rep;
}

/**
 * Representation of a Lie algebra on Q^fiber_dim: matrices rho(e_i) with
 * rho([a,b]) = rho(a)rho(b) - rho(b)rho(a).  Equivalently, a flat
 * Lie-algebra connection on the trivial bundle over a point.
 */
struct Representation {
    LieAlgebra algebra;
    std::size_t fiber_dim = 0;
    std::vector<QMatrix> rho; // one fiber_dim x fiber_dim matrix per basis element

    QMatrix act(const QVector& a) const {
        QMatrix m(fiber_dim, fiber_dim);
        for (std::size_t i = 0; i < algebra.dim(); ++i)
            if (!(a[i] == 0)) m = m + rho[i] * a[i];
        return m;
    }
};

/// Curvature check: every pair (i, j) with
/// rho(e_i)rho(e_j) - rho(e_j)rho(e_i) != rho([e_i,e_j]) is reported.
inline StructureReport check_representation(const Representation& r) {
    StructureReport rep;
    const std::size_t n = r.algebra.dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (r.rho[i].rows() != r.fiber_dim || r.rho[i].cols() != r.fiber_dim)
            throw DimensionMismatch("representation: rho matrix shape");
        for (std::size_t j = i + 1; j < n; ++j) {
            QMatrix curv = r.rho[i] * r.rho[j] - r.rho[j] * r.rho[i];
            for (std::size_t k = 0; k < n; ++k)
                if (!(r.algebra.c(i, j, k) == 0)) curv = curv - r.rho[k] * r.algebra.c(i, j, k);
            if (!curv.is_zero()) {
                Rational worst(0);
                for (std::size_t p = 0; p < curv.rows(); ++p)
                    for (std::size_t q = 0; q < curv.cols(); ++q)
                        if (abs(curv(p, q)) > abs(worst)) worst = curv(p, q);
                rep.violations.push_back({StructureViolation::Kind::Representation, {i, j}, worst});
            }
        }
    }
    return rep;
}

inline Representation trivial_rep(const LieAlgebra& g, std::size_t fiber_dim = 1) {
    return {g, fiber_dim, std::vector<QMatrix>(g.dim(), QMatrix(fiber_dim, fiber_dim))};
}

inline Representation adjoint_rep(const LieAlgebra& g) {
    Representation r{g, g.dim(), {}};
    for (std::size_t i = 0; i < g.dim(); ++i) r.rho.push_back(g.ad(i));
    return r;
}

/// Linear map between Lie algebras; columns are the images of basis vectors.
struct LieMorphism {
    LieAlgebra source, target;
    QMatrix mat; // target.dim x source.dim

    QVector apply(const QVector& a) const { return mat.apply(a); }
};

/// Bracket-compatibility defects: phi([e_i,e_j]) - [phi e_i, phi e_j].
inline StructureReport check_morphism(const LieMorphism& phi) {
    StructureReport rep;
    if (phi.mat.rows() != phi.target.dim() || phi.mat.cols() != phi.source.dim())
        throw DimensionMismatch("morphism: matrix shape");
    const std::size_t n = phi.source.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            QVector cij(n, Rational(0));
            for (std::size_t k = 0; k < n; ++k) cij[k] = phi.source.c(i, j, k);
            QVector lhs = phi.apply(cij);
            QVector rhs = phi.target.bracket(phi.mat.col(i), phi.mat.col(j));
            for (std::size_t k = 0; k < phi.target.dim(); ++k) {
                const Rational r = lhs[k] - rhs[k];
                if (!(r == 0))
                    rep.violations.push_back({StructureViolation::Kind::Morphism, {i, j, k}, r});
            }
        }
    return rep;
}

inline bool is_morphism(const LieMorphism& phi) { return check_morphism(phi).ok(); }

inline LieMorphism compose(const LieMorphism& psi, const LieMorphism& phi) {
    if (psi.source.dim() != phi.target.dim())
        throw DimensionMismatch("compose: middle dimensions differ");
    return {phi.source, psi.target, psi.mat * phi.mat};
}

/// Product algebra: cross brackets vanish, each factor keeps its own.
inline LieAlgebra direct_product(const LieAlgebra& g, const LieAlgebra& h) {
    const std::size_t n = g.dim(), m = h.dim();
    LieAlgebra p(g.name() + "x" + h.name(), n + m);
    QVector coeffs(n + m, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) coeffs[k] = g.c(i, j, k);
            p.set_bracket(i, j, coeffs);
            for (std::size_t k = 0; k < n; ++k) coeffs[k] = 0;
        }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k) coeffs[n + k] = h.c(i, j, k);
            p.set_bracket(n + i, n + j, coeffs);
            for (std::size_t k = 0; k < m; ++k) coeffs[n + k] = 0;
        }
    return p;
}

/**
 * Semidirect sum g |x V along a representation: on pairs (a, v),
 * [(a1,v1),(a2,v2)] = ([a1,a2], rho(a1)v2 - rho(a2)v1).  Satisfies Jacobi
 * exactly when rho is flat (given that g itself does).
 */
inline LieAlgebra semidirect(const Representation& r) {
    const LieAlgebra& g = r.algebra;
    const std::size_t n = g.dim(), m = r.fiber_dim;
    LieAlgebra s(g.name() + "|x" + std::to_string(m), n + m);
    QVector coeffs(n + m, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) coeffs[k] = g.c(i, j, k);
            s.set_bracket(i, j, coeffs);
            for (std::size_t k = 0; k < n; ++k) coeffs[k] = 0;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) coeffs[n + b] = r.rho[i](b, a);
            s.set_bracket(i, n + a, coeffs);
            for (std::size_t b = 0; b < m; ++b) coeffs[n + b] = 0;
        }
    return s;
}

/// rho'(x) = rho(phi(x)): pullback of a representation along a morphism.
inline Representation pullback_rep(const LieMorphism& phi, const Representation& r) {
    if (r.algebra.dim() != phi.target.dim())
        throw DimensionMismatch("pullback_rep: representation not over the morphism target");
    Representation p{phi.source, r.fiber_dim, {}};
    for (std::size_t i = 0; i < phi.source.dim(); ++i) p.rho.push_back(r.act(phi.mat.col(i)));
    return p;
}

/// External tensor product over g x h on E (x) F:
/// rho(a,b) = rho_E(a) (x) I + I (x) rho_F(b), indexed Kronecker-style.
inline Representation tensor_rep(const Representation& rE, const Representation& rF) {
    Representation t{direct_product(rE.algebra, rF.algebra), rE.fiber_dim * rF.fiber_dim, {}};
    const QMatrix iE = QMatrix::identity(rE.fiber_dim), iF = QMatrix::identity(rF.fiber_dim);
    for (std::size_t i = 0; i < rE.algebra.dim(); ++i) t.rho.push_back(rE.rho[i].kron(iF));
    for (std::size_t j = 0; j < rF.algebra.dim(); ++j) t.rho.push_back(iE.kron(rF.rho[j]));
    return t;
}

// ---------------------------------------------------------------------------
// Built-in model algebras and representations
// ---------------------------------------------------------------------------

inline LieAlgebra abelian(std::size_t n) { return LieAlgebra("abelian" + std::to_string(n), n); }

/// Heisenberg algebra: [x, y] = z, z central.
inline LieAlgebra heisenberg3() {
    LieAlgebra g("heisenberg3", 3);
    g.set_bracket(0, 1, {Rational(0), Rational(0), Rational(1)});
    return g;
}

/// sl2 in the (h, e, f) basis: [h,e] = 2e, [h,f] = -2f, [e,f] = h.
inline LieAlgebra sl2() {
    LieAlgebra g("sl2", 3);
    g.set_bracket(0, 1, {Rational(0), Rational(2), Rational(0)});
    g.set_bracket(0, 2, {Rational(0), Rational(0), Rational(-2)});
    g.set_bracket(1, 2, {Rational(1), Rational(0), Rational(0)});
    return g;
}

/// so3: [x,y] = z, [y,z] = x, [z,x] = y.
inline LieAlgebra so3() {
    LieAlgebra g("so3", 3);
    g.set_bracket(0, 1, {Rational(0), Rational(0), Rational(1)});
    g.set_bracket(1, 2, {Rational(1), Rational(0), Rational(0)});
    g.set_bracket(2, 0, {Rational(0), Rational(1), Rational(0)});
    return g;
}

/// Defining 2-dimensional representation of sl2.
inline Representation sl2_standard_rep() {
    Representation r{sl2(), 2, {}};
    r.rho = {QMatrix{{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}},
             QMatrix{{Rational(0), Rational(1)}, {Rational(0), Rational(0)}},
             QMatrix{{Rational(0), Rational(0)}, {Rational(1), Rational(0)}}};
    return r;
}

/// Defining 3-dimensional (strictly upper triangular) representation.
inline Representation heisenberg3_standard_rep() {
    auto E = [](int i, int j) {
        QMatrix m(3, 3);
        m(i, j) = 1;
        return m;
    };
    return {heisenberg3(), 3, {E(0, 1), E(1, 2), E(0, 2)}};
}

/// One-dimensional character of an abelian algebra, e_i |-> (w_i).
inline Representation weight_rep(const LieAlgebra& g, const QVector& weights) {
    if (weights.size() != g.dim()) throw DimensionMismatch("weight_rep: weight count");
    Representation r{g, 1, {}};
    for (const auto& w : weights) r.rho.push_back(QMatrix{{w}});
    return r;
}

} // namespace algco
