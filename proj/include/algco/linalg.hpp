#pragma once

#include "matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <type_traits>
#include <vector>

namespace algco {

/// Echelon form produced by fraction-free (Bareiss) elimination.  Rows are
/// scaled to integers up front so every intermediate entry stays integral;
/// the row space is preserved, so kernels/solves can be read off directly.
struct Echelon {
    QMatrix R;
    std::vector<std::size_t> pivots; // pivot column of each of the first `rank` rows
    std::size_t rank = 0;
};

namespace detail {

inline void integerize_rows(QMatrix& A) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < A.cols(); ++j) l = boost::multiprecision::lcm(l, denom(A(i, j)));
        if (l == 1) continue;
        const Rational f(l);
        for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) *= f;
    }
}

} // namespace detail

inline Echelon echelon_form(QMatrix A) {
    detail::integerize_rows(A);
    Echelon e;
    Rational prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        std::size_t pr = r;
        while (pr < A.rows() && A(pr, c) == 0) ++pr;
        if (pr == A.rows()) continue;
        if (pr != r)
            for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A(pr, j), A(r, j));
        for (std::size_t i = r + 1; i < A.rows(); ++i) {
            const Rational aic = A(i, c);
            for (std::size_t j = c; j < A.cols(); ++j)
                A(i, j) = (A(r, c) * A(i, j) - aic * A(r, j)) / prev;
        }
        prev = A(r, c);
        e.pivots.push_back(c);
        ++r;
    }
    e.R = std::move(A);
    e.rank = r;
    return e;
}

inline std::size_t rank(const QMatrix& A) { return echelon_form(A).rank; }

namespace detail {

/// Scale a rational vector to integer entries with content 1; the sign is
/// fixed so that entry `anchor` (known nonzero) is positive.
inline void canonicalize(QVector& v, std::size_t anchor) {
    Int l = 1;
    for (const auto& x : v) l = boost::multiprecision::lcm(l, denom(x));
    Int g = 0;
    for (auto& x : v) { x *= Rational(l); g = boost::multiprecision::gcd(g, numer(x)); }
    if (g > 1)
        for (auto& x : v) x /= Rational(g);
    if (v[anchor] < 0)
        for (auto& x : v) x = -x;
}

} // namespace detail

/// Basis of ker(A) = {x : Ax = 0}; one canonical integer vector per free
/// column, in ascending free-column order.
inline std::vector<QVector> kernel_basis(const QMatrix& A) {
    const Echelon e = echelon_form(A);
    std::vector<bool> is_pivot(A.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t f = 0; f < A.cols(); ++f) {
        if (is_pivot[f]) continue;
        QVector x(A.cols(), Rational(0));
        x[f] = 1;
        for (std::size_t rr = e.rank; rr-- > 0;) {
            const std::size_t pc = e.pivots[rr];
            Rational s(0);
            for (std::size_t j = pc + 1; j < A.cols(); ++j)
                if (!(x[j] == 0)) s += e.R(rr, j) * x[j];
            x[pc] = -s / e.R(rr, pc);
        }
        detail::canonicalize(x, f);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Solve A X = B exactly; std::nullopt when inconsistent.  Free variables
/// are set to zero, so the result is deterministic.
inline std::optional<QMatrix> solve(const QMatrix& A, const QMatrix& B) {
    if (A.rows() != B.rows()) throw DimensionMismatch("solve: row counts differ");
    const Echelon e = echelon_form(A.hcat(B));
    for (auto p : e.pivots)
        if (p >= A.cols()) return std::nullopt;
    QMatrix X(A.cols(), B.cols());
    for (std::size_t k = 0; k < B.cols(); ++k) {
        for (std::size_t rr = e.rank; rr-- > 0;) {
            const std::size_t pc = e.pivots[rr];
            Rational s = e.R(rr, A.cols() + k);
            for (std::size_t j = pc + 1; j < A.cols(); ++j)
                if (!(X(j, k) == 0)) s -= e.R(rr, j) * X(j, k);
            X(pc, k) = s / e.R(rr, pc);
        }
    }
    return X;
}

inline std::optional<QVector> solve(const QMatrix& A, const QVector& b) {
    auto X = solve(A, QMatrix::from_columns(b.size(), {b}));
    if (!X) return std::nullopt;
    return X->col(0);
}

inline bool in_span(const QMatrix& basis_cols, const QVector& v) {
    return solve(basis_cols, v).has_value();
}

inline std::optional<QMatrix> inverse(const QMatrix& A) {
    if (A.rows() != A.cols()) throw DimensionMismatch("inverse: not square");
    auto X = solve(A, QMatrix::identity(A.rows()));
    if (!X) return std::nullopt;
    // solve() rejects only inconsistent systems; a rank-deficient square A
    // with consistent RHS must be caught here.
    if (rank(A) != A.rows()) return std::nullopt;
    return X;
}

/// A list of vectors spanning a subspace of Q^ambient (not necessarily
/// independent unless produced by one of the basis routines).
struct SubspaceBasis {
    std::size_t ambient = 0;
    std::vector<QVector> vectors;

    std::size_t size() const { return vectors.size(); }
    QMatrix as_columns() const { return QMatrix::from_columns(ambient, vectors); }
};

/// Pivot columns of A, as columns of the original matrix.
inline SubspaceBasis column_space_basis(const QMatrix& A) {
    SubspaceBasis b;
    b.ambient = A.rows();
    for (auto p : echelon_form(A).pivots) b.vectors.push_back(A.col(p));
    return b;
}

/**
 * Completion of span(sub) to span(big) by vectors picked from big itself
 * (pivot completion): returns those big.vectors whose addition increases the
 * rank, scanning in order.  Throws SubspaceNotContained unless
 * span(sub) <= span(big), DimensionMismatch on ambient mismatch.
 */
inline std::vector<QVector> quotient_basis(const SubspaceBasis& sub, const SubspaceBasis& big) {
    if (sub.ambient != big.ambient) throw DimensionMismatch("quotient_basis: ambient dims differ");
    const QMatrix B = big.as_columns();
    const QMatrix S = sub.as_columns();
    if (!sub.vectors.empty() && rank(B.hcat(S)) != rank(B))
        throw SubspaceNotContained("quotient_basis: sub not inside big");
    // pivots of [sub | big] beyond the sub block are exactly the big vectors
    // whose greedy addition raises the rank
    std::vector<QVector> reps;
    for (auto p : echelon_form(S.hcat(B)).pivots)
        if (p >= sub.vectors.size()) reps.push_back(big.vectors[p - sub.vectors.size()]);
    return reps;
}

/// Determinant over any field (plain Gaussian elimination; used for the
/// small minors of pullback/compound matrices, both exact and double).
template <class S>
S determinant(Matrix<S> A) {
    if (A.rows() != A.cols()) throw DimensionMismatch("determinant: not square");
    const std::size_t n = A.rows();
    S det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pr = c;
        if constexpr (std::is_floating_point_v<S>) {
            for (std::size_t i = c + 1; i < n; ++i)
                if (std::abs(A(i, c)) > std::abs(A(pr, c))) pr = i;
        } else {
            while (pr < n && A(pr, c) == S(0)) ++pr;
            if (pr == n) return S(0);
        }
        if (A(pr, c) == S(0)) return S(0);
        if (pr != c) {
            for (std::size_t j = c; j < n; ++j) std::swap(A(pr, j), A(c, j));
            det = -det;
        }
        det = det * A(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            const S f = A(i, c) / A(c, c);
            if (f == S(0)) continue;
            for (std::size_t j = c; j < n; ++j) A(i, j) = A(i, j) - f * A(c, j);
        }
    }
    return det;
}

} // namespace algco
