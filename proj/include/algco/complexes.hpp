#pragma once

#include "linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace algco {

/**
 * A finite cochain complex of Q-vector spaces: spaces Q^{dims[k]} for
 * k = 0..dims.size()-1, differentials diffs[k] : Q^{dims[k]} -> Q^{dims[k+1]}
 * (diffs has one entry less than dims; maps beyond the top are zero).
 */
struct GenericComplex {
    std::vector<std::size_t> dims;
    std::vector<QMatrix> diffs;

    std::size_t top() const { return dims.empty() ? 0 : dims.size() - 1; }
    std::size_t dim_at(std::size_t k) const { return k < dims.size() ? dims[k] : 0; }

    /// Differential out of degree k; zero map (of the right shape) off the end.
    QMatrix diff(std::size_t k) const {
        if (k + 1 < dims.size()) return diffs[k];
        return QMatrix(dim_at(k + 1), dim_at(k));
    }
};

/// Shape and d^2 = 0 validation; throws NotAComplex with the failing degree.
inline void validate_complex(const GenericComplex& C) {
    if (!C.dims.empty() && C.diffs.size() + 1 != C.dims.size())
        throw NotAComplex("differential count must be dims count - 1");
    for (std::size_t k = 0; k + 1 < C.dims.size(); ++k) {
        if (C.diffs[k].rows() != C.dims[k + 1] || C.diffs[k].cols() != C.dims[k])
            throw NotAComplex("differential shape mismatch at degree " + std::to_string(k));
        if (k + 2 < C.dims.size() && !(C.diffs[k + 1] * C.diffs[k]).is_zero())
            throw NotAComplex("d^2 != 0 at degree " + std::to_string(k));
    }
}

/// Kernel/image data of one degree: Betti number plus explicit cocycle
/// representatives (pivot completion of the coboundary space inside the
/// cocycle space, so representatives are actual kernel basis vectors).
struct DegreeCohomology {
    std::size_t degree = 0;
    std::size_t betti = 0;
    std::vector<QVector> representatives;
};

inline DegreeCohomology cohomology(const GenericComplex& C, std::size_t k) {
    DegreeCohomology H;
    H.degree = k;
    if (C.dim_at(k) == 0) return H;
    SubspaceBasis Z{C.dim_at(k), kernel_basis(C.diff(k))};
    SubspaceBasis B = k == 0 ? SubspaceBasis{C.dim_at(k), {}} : column_space_basis(C.diff(k - 1));
    H.representatives = quotient_basis(B, Z);
    H.betti = H.representatives.size();
    return H;
}

inline std::vector<std::size_t> betti_numbers(const GenericComplex& C) {
    std::vector<std::size_t> b;
    for (std::size_t k = 0; k < C.dims.size(); ++k) b.push_back(cohomology(C, k).betti);
    return b;
}

inline long euler_characteristic(const GenericComplex& C) {
    long chi = 0;
    for (std::size_t k = 0; k < C.dims.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(C.dims[k]);
    return chi;
}

/**
 * Coordinates of the class [v] in the representative basis of H^k, i.e.
 * solves v = reps * a + d(z) and returns a.  nullopt when v is not a cocycle
 * (equivalently, not in span(reps) + coboundaries).
 */
inline std::optional<QVector> class_in_basis(const GenericComplex& C, std::size_t k,
                                             const DegreeCohomology& H, const QVector& v) {
    QMatrix M = QMatrix::from_columns(C.dim_at(k), H.representatives);
    if (k > 0) M = M.hcat(C.diff(k - 1));
    auto x = solve(M, v);
    if (!x) return std::nullopt;
    return QVector(x->begin(), x->begin() + H.betti);
}

/// Column-wise class_in_basis: one elimination for all columns of V.  Result
/// is H.betti x V.cols(); nullopt when some column is not a cocycle.
inline std::optional<QMatrix> classes_in_basis(const GenericComplex& C, std::size_t k,
                                               const DegreeCohomology& H, const QMatrix& V) {
    QMatrix M = QMatrix::from_columns(C.dim_at(k), H.representatives);
    if (k > 0) M = M.hcat(C.diff(k - 1));
    auto X = solve(M, V);
    if (!X) return std::nullopt;
    QMatrix out(H.betti, V.cols());
    for (std::size_t i = 0; i < H.betti; ++i)
        for (std::size_t j = 0; j < V.cols(); ++j) out(i, j) = (*X)(i, j);
    return out;
}

/// Degree-wise linear maps F_k : C^k -> D^k; entries beyond maps.size() are zero.
struct ChainMap {
    std::vector<QMatrix> maps;

    QMatrix at(std::size_t k, const GenericComplex& C, const GenericComplex& D) const {
        if (k < maps.size()) return maps[k];
        return QMatrix(D.dim_at(k), C.dim_at(k));
    }
};

/// First degree where d_D F != F d_C, or nullopt when F is a chain map.
inline std::optional<std::size_t> chain_map_defect(const GenericComplex& C, const GenericComplex& D,
                                                   const ChainMap& F) {
    const std::size_t topk = std::max(C.dims.size(), D.dims.size());
    for (std::size_t k = 0; k < topk; ++k) {
        QMatrix lhs = D.diff(k) * F.at(k, C, D);
        QMatrix rhs = F.at(k + 1, C, D) * C.diff(k);
        if (!(lhs - rhs).is_zero()) return k;
    }
    return std::nullopt;
}

/// Matrix of H^k(F) : H^k(C) -> H^k(D) in the representative bases.
/// Throws LiftFailure if some image class cannot be expressed (i.e. F is not
/// a chain map onto cocycles).
inline QMatrix induced_map(const GenericComplex& C, const GenericComplex& D, const ChainMap& F,
                           std::size_t k, const DegreeCohomology& HC, const DegreeCohomology& HD) {
    const QMatrix img = F.at(k, C, D) * QMatrix::from_columns(C.dim_at(k), HC.representatives);
    auto coords = classes_in_basis(D, k, HD, img);
    if (!coords) throw LiftFailure("induced_map: image of a cocycle is not a cocycle class");
    return *coords;
}

/// Degree-wise convolution (the product rule for Betti numbers of tensor
/// factors over a field).
inline std::vector<std::size_t> betti_convolution(const std::vector<std::size_t>& a,
                                                  const std::vector<std::size_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::size_t> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

/**
 * Tensor-product total complex of two complexes with the standard sign:
 * on the (p,q) block, D = d_A (x) I + (-1)^p I (x) d_B.  Blocks of fixed
 * total degree are laid out by ascending p; within a block the index is
 * a*dimB+b (Kronecker convention).
 */
struct TensorComplex {
    GenericComplex total;
    std::vector<std::size_t> dimsA, dimsB;

    std::size_t dimA(std::size_t p) const { return p < dimsA.size() ? dimsA[p] : 0; }
    std::size_t dimB(std::size_t q) const { return q < dimsB.size() ? dimsB[q] : 0; }

    /// Offset of block (p, q) inside total degree p+q.
    std::size_t offset(std::size_t p, std::size_t q) const {
        std::size_t off = 0;
        for (std::size_t pp = 0; pp < p; ++pp) off += dimA(pp) * dimB(p + q - pp);
        return off;
    }
};

inline TensorComplex tensor_complex(const GenericComplex& A, const GenericComplex& B) {
    TensorComplex T;
    T.dimsA = A.dims;
    T.dimsB = B.dims;
    const std::size_t topT = A.top() + B.top();
    for (std::size_t t = 0; t <= topT; ++t) {
        std::size_t dim = 0;
        for (std::size_t p = 0; p <= t; ++p) dim += T.dimA(p) * T.dimB(t - p);
        T.total.dims.push_back(dim);
    }
    for (std::size_t t = 0; t < topT; ++t) {
        QMatrix d(T.total.dims[t + 1], T.total.dims[t]);
        for (std::size_t p = 0; p <= t; ++p) {
            const std::size_t q = t - p;
            const std::size_t blk = T.dimA(p) * T.dimB(q);
            if (blk == 0) continue;
            const std::size_t src = T.offset(p, q);
            // horizontal: d_A (x) I into block (p+1, q)
            if (T.dimA(p + 1) > 0) {
                QMatrix h = A.diff(p).kron(QMatrix::identity(T.dimB(q)));
                const std::size_t dst = T.offset(p + 1, q);
                for (std::size_t i = 0; i < h.rows(); ++i)
                    for (std::size_t j = 0; j < h.cols(); ++j)
                        if (!(h(i, j) == 0)) d(dst + i, src + j) = h(i, j);
            }
            // vertical: (-1)^p I (x) d_B into block (p, q+1)
            if (T.dimB(q + 1) > 0) {
                QMatrix v = QMatrix::identity(T.dimA(p)).kron(B.diff(q));
                if (p % 2 == 1) v = -v;
                const std::size_t dst = T.offset(p, q + 1);
                for (std::size_t i = 0; i < v.rows(); ++i)
                    for (std::size_t j = 0; j < v.cols(); ++j)
                        if (!(v(i, j) == 0)) d(dst + i, src + j) = v(i, j);
            }
        }
        T.total.diffs.push_back(std::move(d));
    }
    return T;
}

/// F (x) G on the tensor total complexes (valid chain map when F, G are).
inline ChainMap tensor_chain_map(const TensorComplex& S, const TensorComplex& T,
                                 const std::vector<QMatrix>& F, const std::vector<QMatrix>& G) {
    auto Fat = [&](std::size_t p) {
        return p < F.size() ? F[p] : QMatrix(T.dimA(p), S.dimA(p));
    };
    auto Gat = [&](std::size_t q) {
        return q < G.size() ? G[q] : QMatrix(T.dimB(q), S.dimB(q));
    };
    ChainMap M;
    for (std::size_t t = 0; t < S.total.dims.size(); ++t) {
        QMatrix m(T.total.dim_at(t), S.total.dims[t]);
        for (std::size_t p = 0; p <= t; ++p) {
            const std::size_t q = t - p;
            if (S.dimA(p) * S.dimB(q) == 0 || T.dimA(p) * T.dimB(q) == 0) continue;
            QMatrix blk = Fat(p).kron(Gat(q));
            const std::size_t src = S.offset(p, q), dst = T.offset(p, q);
            for (std::size_t i = 0; i < blk.rows(); ++i)
                for (std::size_t j = 0; j < blk.cols(); ++j)
                    if (!(blk(i, j) == 0)) m(dst + i, src + j) = blk(i, j);
        }
        M.maps.push_back(std::move(m));
    }
    return M;
}

} // namespace algco
