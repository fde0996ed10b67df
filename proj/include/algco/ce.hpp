#pragma once
#include <algorithm>

#include "complexes.hpp"
#include "lie_algebra.hpp"

#include <cstdint>
#include <vector>

namespace algco {

// ---------------------------------------------------------------------------
// Exterior monomial combinatorics.
//
// Lambda^k g* is given the basis { a*_{s_1} ^ ... ^ a*_{s_k} : s_1<...<s_k }
// with k-subsets enumerated lexicographically; a k-cochain with values in a
// fiber of dimension m is stored as the coordinate vector indexed by
// subset_rank * m + fiber_index.
// ---------------------------------------------------------------------------

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

using Subset = std::vector<unsigned>;

inline std::vector<Subset> k_subsets(unsigned n, unsigned k) {
    std::vector<Subset> out;
    if (k > n) return out;
    Subset s(k);
    for (unsigned i = 0; i < k; ++i) s[i] = i;
    while (true) {
        out.push_back(s);
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && s[i] == n - k + i) --i;
        if (i < 0) break;
        ++s[i];
        for (unsigned j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
    return out;
}

/// Lexicographic rank of a sorted k-subset of {0..n-1}.
inline std::size_t subset_rank(unsigned n, const Subset& s) {
    std::size_t r = 0;
    unsigned prev = 0;
    for (unsigned i = 0; i < s.size(); ++i) {
        for (unsigned v = prev; v < s[i]; ++v) r += binomial(n - 1 - v, s.size() - 1 - i);
        prev = s[i] + 1;
    }
    return r;
}

/// Sorted insertion of m into sorted R (m not in R): returns the sign
/// (-1)^{#{r in R : r < m}} of moving a*_m past the smaller generators,
/// and writes the merged subset.
inline int insert_with_sign(const Subset& R, unsigned m, Subset& merged) {
    merged.clear();
    merged.reserve(R.size() + 1);
    int before = 0;
    bool placed = false;
    for (unsigned r : R) {
        if (!placed && m < r) {
            merged.push_back(m);
            placed = true;
        }
        if (!placed) ++before;
        merged.push_back(r);
    }
    if (!placed) merged.push_back(m);
    return before % 2 == 0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Twisted differential assembly (generic scalar: exact Rational or double).
// ---------------------------------------------------------------------------

/**
 * Matrices of the twisted differential
 *
 *   (d w)(a_1..a_{k+1}) =   sum_j (-1)^{j+1} rho(a_j) w(.. a_j omitted ..)
 *                         + sum_{j<l} (-1)^{j+l} w([a_j,a_l], .. both omitted ..)
 *
 * on the monomial basis, for k = 0..n-1.  `c(i,j,k)` supplies the structure
 * constants, `rho` the fiber action of each basis element.
 */
template <class S, class Bracket>
std::vector<Matrix<S>> ce_differentials(std::size_t n, std::size_t fiber, Bracket c,
                                        const std::vector<Matrix<S>>& rho) {
    std::vector<Matrix<S>> ds;
    Subset sub, merged;
    for (unsigned k = 0; k < n; ++k) {
        Matrix<S> d(binomial(n, k + 1) * fiber, binomial(n, k) * fiber);
        const auto rows = k_subsets(static_cast<unsigned>(n), k + 1);
        for (std::size_t ti = 0; ti < rows.size(); ++ti) {
            const Subset& T = rows[ti];
            // action terms: drop the j-th argument (0-based j, sign (-1)^j)
            for (unsigned j = 0; j <= k; ++j) {
                sub = T;
                sub.erase(sub.begin() + j);
                const std::size_t colm = subset_rank(n, sub) * fiber;
                const Matrix<S>& R = rho[T[j]];
                for (std::size_t a = 0; a < fiber; ++a)
                    for (std::size_t b = 0; b < fiber; ++b) {
                        if (R(a, b) == S(0)) continue;
                        S v = j % 2 == 0 ? R(a, b) : -R(a, b);
                        d(ti * fiber + a, colm + b) += v;
                    }
            }
            // bracket terms: contract arguments j < l into [a_j, a_l]
            for (unsigned j = 0; j <= k; ++j)
                for (unsigned l = j + 1; l <= k; ++l) {
                    sub = T;
                    sub.erase(sub.begin() + l);
                    sub.erase(sub.begin() + j);
                    const int sign0 = (j + l) % 2 == 0 ? 1 : -1;
                    for (unsigned m = 0; m < n; ++m) {
                        const S coeff = c(T[j], T[l], m);
                        if (coeff == S(0)) continue;
                        if (std::find(sub.begin(), sub.end(), m) != sub.end()) continue;
                        const int eps = insert_with_sign(sub, m, merged);
                        const std::size_t colm = subset_rank(n, merged) * fiber;
                        S v = coeff * S(sign0 * eps);
                        for (std::size_t a = 0; a < fiber; ++a) d(ti * fiber + a, colm + a) += v;
                    }
                }
        }
        ds.push_back(std::move(d));
    }
    return ds;
}

// ---------------------------------------------------------------------------
// The exact complex of a representation.
// ---------------------------------------------------------------------------

/**
 * Cochain complex of a Lie algebra with coefficients in a representation,
 * assembled over Q and validated on construction: broken structure constants
 * raise NotAComplex, a curved (non-flat) action raises FlatnessViolated --
 * both detected by d^2 != 0 and attributed via the structure checks.
 */
class CEComplex {
public:
    explicit CEComplex(Representation rep) : m_rep(std::move(rep)) {
        const std::size_t n = m_rep.algebra.dim();
        for (std::size_t k = 0; k <= n; ++k)
            m_gc.dims.push_back(binomial(n, k) * m_rep.fiber_dim);
        auto c = [this](unsigned i, unsigned j, unsigned k) { return m_rep.algebra.c(i, j, k); };
        m_gc.diffs = ce_differentials<Rational>(n, m_rep.fiber_dim, c, m_rep.rho);
        for (std::size_t k = 0; k + 2 <= n; ++k) {
            if ((m_gc.diffs[k + 1] * m_gc.diffs[k]).is_zero()) continue;
            if (!check_lie_algebra(m_rep.algebra).ok())
                throw NotAComplex("structure constants violate antisymmetry/Jacobi");
            throw FlatnessViolated("action is not flat: d^2 != 0 starting at degree " +
                                   std::to_string(k));
        }
    }

    const Representation& rep() const { return m_rep; }
    const LieAlgebra& algebra() const { return m_rep.algebra; }
    std::size_t fiber_dim() const { return m_rep.fiber_dim; }
    std::size_t top() const { return m_rep.algebra.dim(); }

    const GenericComplex& complex() const { return m_gc; }
    std::size_t dim_at(std::size_t k) const { return m_gc.dim_at(k); }
    QMatrix diff(std::size_t k) const { return m_gc.diff(k); }

    std::size_t index_of(const Subset& s, std::size_t fiber_index) const {
        return subset_rank(static_cast<unsigned>(top()), s) * m_rep.fiber_dim + fiber_index;
    }

private:
    Representation m_rep;
    GenericComplex m_gc;
};

// ---------------------------------------------------------------------------
// Pullback along a morphism.
// ---------------------------------------------------------------------------

/**
 * Matrices of w |-> w(phi ., .., phi .) per degree, where H is the matrix of
 * phi : g -> h (shape dim_h x dim_g).  The degree-k block entry at
 * (row S, col T) is the T,S minor of H, tensored with the identity on the
 * fiber; degree 0 is the fiber identity.  Returned for k = 0..dim_g.
 */
template <class S>
std::vector<Matrix<S>> pullback_cochain_matrices(const Matrix<S>& H, std::size_t fiber) {
    const unsigned ng = static_cast<unsigned>(H.cols()), nh = static_cast<unsigned>(H.rows());
    std::vector<Matrix<S>> out;
    for (unsigned k = 0; k <= ng; ++k) {
        const auto rowsets = k_subsets(ng, k);
        const auto colsets = k_subsets(nh, k);
        Matrix<S> P(binomial(ng, k) * fiber, binomial(nh, k) * fiber);
        for (std::size_t si = 0; si < rowsets.size(); ++si)
            for (std::size_t tj = 0; tj < colsets.size(); ++tj) {
                Matrix<S> minor(k, k);
                for (unsigned a = 0; a < k; ++a)
                    for (unsigned b = 0; b < k; ++b) minor(a, b) = H(colsets[tj][a], rowsets[si][b]);
                const S det = k == 0 ? S(1) : determinant(minor);
                if (det == S(0)) continue;
                for (std::size_t f = 0; f < fiber; ++f)
                    P(si * fiber + f, tj * fiber + f) = det;
            }
        out.push_back(std::move(P));
    }
    return out;
}

/**
 * Chain map Omega^*(h, E) -> Omega^*(g, phi*E) induced by a morphism
 * phi : g -> h.  `target` must be the complex of pullback_rep(phi, source
 * representation); the chain-map identity holds exactly iff phi preserves
 * brackets.
 */
inline ChainMap pullback_cochain_map(const LieMorphism& phi, std::size_t fiber) {
    ChainMap F;
    F.maps = pullback_cochain_matrices<Rational>(phi.mat, fiber);
    return F;
}

// ---------------------------------------------------------------------------
// Wedge product (scalar cochain  ^  fiber-valued cochain).
// ---------------------------------------------------------------------------

/// (w ^ eta)(a_1..a_{k+l}) = sum over shuffles of w(..) * eta(..); in
/// coordinates, disjoint monomials merge with the inversion-count sign.
/// k+l beyond the algebra dimension lands in a zero-dimensional space.
inline QVector wedge(std::size_t n, std::size_t fiber, std::size_t k, const QVector& w,
                     std::size_t l, const QVector& eta) {
    if (w.size() != binomial(n, k) || eta.size() != binomial(n, l) * fiber)
        throw DimensionMismatch("wedge: operand sizes");
    const unsigned un = static_cast<unsigned>(n);
    QVector out(binomial(n, k + l) * fiber, Rational(0));
    const auto Ss = k_subsets(un, static_cast<unsigned>(k));
    const auto Rs = k_subsets(un, static_cast<unsigned>(l));
    Subset merged;
    for (std::size_t si = 0; si < Ss.size(); ++si) {
        if (w[si] == 0) continue;
        for (std::size_t ri = 0; ri < Rs.size(); ++ri) {
            // merge S and R; bail on a common generator, count inversions
            const Subset &S = Ss[si], &R = Rs[ri];
            merged.clear();
            std::size_t a = 0, b = 0;
            long inversions = 0;
            bool disjoint = true;
            while (a < S.size() && b < R.size()) {
                if (S[a] == R[b]) { disjoint = false; break; }
                if (S[a] < R[b]) { merged.push_back(S[a++]); }
                else { merged.push_back(R[b++]); inversions += static_cast<long>(S.size() - a); }
            }
            if (!disjoint) continue;
            while (a < S.size()) merged.push_back(S[a++]);
            while (b < R.size()) merged.push_back(R[b++]);
            const Rational f = inversions % 2 == 0 ? w[si] : -w[si];
            const std::size_t base = subset_rank(un, merged) * fiber;
            for (std::size_t x = 0; x < fiber; ++x)
                if (!(eta[ri * fiber + x] == 0)) out[base + x] += f * eta[ri * fiber + x];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gauge transport.
// ---------------------------------------------------------------------------

/**
 * Chain isomorphism Omega^*(g, E_rho) -> Omega^*(g, E_rho') induced by an
 * invertible fiber map theta with theta rho(x) = rho'(x) theta for all x.
 * Throws NotGaugeEquivalent when theta fails to intertwine (or is singular).
 */
inline ChainMap gauge_transport(const CEComplex& from, const CEComplex& to, const QMatrix& theta) {
    if (from.algebra().dim() != to.algebra().dim())
        throw DimensionMismatch("gauge_transport: different algebras");
    if (theta.rows() != to.fiber_dim() || theta.cols() != from.fiber_dim())
        throw DimensionMismatch("gauge_transport: theta shape");
    if (!inverse(theta)) throw NotGaugeEquivalent("theta is singular");
    for (std::size_t i = 0; i < from.algebra().dim(); ++i)
        if (!(theta * from.rep().rho[i] - to.rep().rho[i] * theta).is_zero())
            throw NotGaugeEquivalent("theta does not intertwine the actions at basis index " +
                                     std::to_string(i));
    ChainMap F;
    const std::size_t n = from.algebra().dim();
    for (std::size_t k = 0; k <= n; ++k)
        F.maps.push_back(QMatrix::identity(binomial(n, k)).kron(theta));
    return F;
}

} // namespace algco
