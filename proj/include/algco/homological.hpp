#pragma once

#include "ce.hpp"
#include "complexes.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace algco {

// ---------------------------------------------------------------------------
// Short exact sequences of complexes and the snake-lemma boundary.
// ---------------------------------------------------------------------------

/// 0 -> C --i--> D --p--> E -> 0, degree-wise.
struct ShortExactSequence {
    GenericComplex C, D, E;
    ChainMap i, p;
};

/// Degree-wise validation: chain maps, i injective, p surjective, p i = 0,
/// rank i + rank p = dim D (so ker p = im i).  Throws NotExact / NotAComplex.
inline void validate_ses(const ShortExactSequence& s) {
    validate_complex(s.C);
    validate_complex(s.D);
    validate_complex(s.E);
    if (auto k = chain_map_defect(s.C, s.D, s.i))
        throw NotExact("i is not a chain map at degree " + std::to_string(*k));
    if (auto k = chain_map_defect(s.D, s.E, s.p))
        throw NotExact("p is not a chain map at degree " + std::to_string(*k));
    const std::size_t topk = std::max(s.C.dims.size(), std::max(s.D.dims.size(), s.E.dims.size()));
    for (std::size_t k = 0; k < topk; ++k) {
        const QMatrix ik = s.i.at(k, s.C, s.D), pk = s.p.at(k, s.D, s.E);
        if (!(pk * ik).is_zero()) throw NotExact("p i != 0 at degree " + std::to_string(k));
        const std::size_t ri = rank(ik), rp = rank(pk);
        if (ri != s.C.dim_at(k)) throw NotExact("i not injective at degree " + std::to_string(k));
        if (rp != s.E.dim_at(k)) throw NotExact("p not surjective at degree " + std::to_string(k));
        if (ri + rp != s.D.dim_at(k))
            throw NotExact("ker p != im i at degree " + std::to_string(k));
    }
}

/**
 * Boundary of one cohomology class through the snake lemma: lift a cocycle
 * of E through p, push through d_D, pull back through i.  The optional
 * `lift_shift` (an element of ker p_q) perturbs the lift; the resulting
 * class never changes, which the tests exercise.
 */
inline QVector connect_cocycle(const ShortExactSequence& s, std::size_t q, const QVector& cocycleE,
                               const QVector* lift_shift = nullptr) {
    auto x = solve(s.p.at(q, s.D, s.E), cocycleE);
    if (!x) throw LiftFailure("connecting map: cocycle does not lift through p");
    if (lift_shift) {
        if (lift_shift->size() != x->size()) throw DimensionMismatch("lift shift size");
        for (std::size_t i = 0; i < x->size(); ++i) (*x)[i] += (*lift_shift)[i];
    }
    const QVector w = s.D.diff(q).apply(*x);
    auto y = solve(s.i.at(q + 1, s.C, s.D), w);
    if (!y) throw LiftFailure("connecting map: d(lift) is not in the image of i");
    return *y;
}

/// All cohomologies of an SES plus the connecting matrices
/// delta[q] : H^q(E) -> H^{q+1}(C) in the representative bases.
struct LongExactData {
    std::vector<DegreeCohomology> HC, HD, HE;
    std::vector<QMatrix> ibar, pbar, delta;
};

inline LongExactData connecting_map(const ShortExactSequence& s) {
    LongExactData L;
    const std::size_t topk =
        std::max(s.C.dims.size(), std::max(s.D.dims.size(), s.E.dims.size()));
    for (std::size_t q = 0; q <= topk; ++q) {
        L.HC.push_back(cohomology(s.C, q));
        L.HD.push_back(cohomology(s.D, q));
        L.HE.push_back(cohomology(s.E, q));
    }
    for (std::size_t q = 0; q < topk; ++q) {
        L.ibar.push_back(induced_map(s.C, s.D, s.i, q, L.HC[q], L.HD[q]));
        L.pbar.push_back(induced_map(s.D, s.E, s.p, q, L.HD[q], L.HE[q]));
        // Snake all representatives of H^q(E) at once: one elimination per
        // stage instead of one per class.
        const QMatrix RE = QMatrix::from_columns(s.E.dim_at(q), L.HE[q].representatives);
        auto X = solve(s.p.at(q, s.D, s.E), RE);
        if (!X) throw LiftFailure("connecting map: cocycle does not lift through p");
        auto Y = solve(s.i.at(q + 1, s.C, s.D), s.D.diff(q) * *X);
        if (!Y) throw LiftFailure("connecting map: d(lift) is not in the image of i");
        auto coords = classes_in_basis(s.C, q + 1, L.HC[q + 1], *Y);
        if (!coords) throw LiftFailure("connecting map: boundary is not a cocycle class");
        L.delta.push_back(std::move(*coords));
    }
    return L;
}

/// Rank bookkeeping for ... -> H^q(C) -> H^q(D) -> H^q(E) -> H^{q+1}(C) -> ...
struct LESReport {
    bool exact = true;
    std::vector<std::string> failures;

    void fail(std::string msg) {
        exact = false;
        failures.push_back(std::move(msg));
    }
};

inline LESReport les_exactness_check(const ShortExactSequence& s, const LongExactData& L) {
    validate_ses(s);
    LESReport rep;
    const std::size_t topk = L.delta.size();
    auto zero_comp = [](const QMatrix& A, const QMatrix& B) { return (A * B).is_zero(); };
    for (std::size_t q = 0; q < topk; ++q) {
        // H^q(C): ker ibar = im delta_{q-1}
        const std::size_t rd_prev = q == 0 ? 0 : rank(L.delta[q - 1]);
        if (q > 0 && !zero_comp(L.ibar[q], L.delta[q - 1]))
            rep.fail("ibar delta != 0 at degree " + std::to_string(q));
        if (rank(L.ibar[q]) + rd_prev != L.HC[q].betti)
            rep.fail("exactness fails at H^" + std::to_string(q) + "(C)");
        // H^q(D): ker pbar = im ibar
        if (!zero_comp(L.pbar[q], L.ibar[q]))
            rep.fail("pbar ibar != 0 at degree " + std::to_string(q));
        if (rank(L.ibar[q]) + rank(L.pbar[q]) != L.HD[q].betti)
            rep.fail("exactness fails at H^" + std::to_string(q) + "(D)");
        // H^q(E): ker delta = im pbar
        if (!zero_comp(L.delta[q], L.pbar[q]))
            rep.fail("delta pbar != 0 at degree " + std::to_string(q));
        if (rank(L.pbar[q]) + rank(L.delta[q]) != L.HE[q].betti)
            rep.fail("exactness fails at H^" + std::to_string(q) + "(E)");
    }
    return rep;
}

inline LESReport les_exactness_check(const ShortExactSequence& s) {
    return les_exactness_check(s, connecting_map(s));
}

// ---------------------------------------------------------------------------
// Simplicial cochain complexes.
// ---------------------------------------------------------------------------

/// Finite abstract simplicial complex, closed under faces by construction.
struct SimplicialComplex {
    std::size_t n_vertices = 0;
    std::vector<std::vector<Subset>> simplices; // [d] = sorted list of (d+1)-subsets

    static SimplicialComplex from_maximal(std::size_t n_vertices,
                                          const std::vector<Subset>& maximal) {
        SimplicialComplex K;
        K.n_vertices = n_vertices;
        std::set<Subset> faces;
        for (const auto& m : maximal) {
            Subset s = m;
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw DimensionMismatch("simplex with repeated vertex");
            for (unsigned v : s)
                if (v >= n_vertices) throw DimensionMismatch("vertex out of range");
            // all non-empty subsets
            const std::size_t full = (std::size_t(1) << s.size()) - 1;
            for (std::size_t mask = 1; mask <= full; ++mask) {
                Subset f;
                for (std::size_t b = 0; b < s.size(); ++b)
                    if (mask & (std::size_t(1) << b)) f.push_back(s[b]);
                faces.insert(f);
            }
        }
        for (const auto& f : faces) {
            if (K.simplices.size() < f.size()) K.simplices.resize(f.size());
            K.simplices[f.size() - 1].push_back(f);
        }
        for (auto& level : K.simplices) std::sort(level.begin(), level.end());
        return K;
    }

    std::size_t count(std::size_t d) const {
        return d < simplices.size() ? simplices[d].size() : 0;
    }

    bool contains(const Subset& f) const {
        if (f.empty() || f.size() > simplices.size()) return false;
        const auto& level = simplices[f.size() - 1];
        return std::binary_search(level.begin(), level.end(), f);
    }

    bool is_subcomplex_of(const SimplicialComplex& big) const {
        for (const auto& level : simplices)
            for (const auto& f : level)
                if (!big.contains(f)) return false;
        return true;
    }

    /// Intersection (simplices present in both).
    SimplicialComplex intersect(const SimplicialComplex& o) const {
        SimplicialComplex K;
        K.n_vertices = std::max(n_vertices, o.n_vertices);
        K.simplices.resize(std::min(simplices.size(), o.simplices.size()));
        for (std::size_t d = 0; d < K.simplices.size(); ++d)
            for (const auto& f : simplices[d])
                if (o.contains(f)) K.simplices[d].push_back(f);
        while (!K.simplices.empty() && K.simplices.back().empty()) K.simplices.pop_back();
        return K;
    }

    /// Alternating-sign coboundary complex on simplex-indexed cochains.
    GenericComplex cochain_complex() const {
        GenericComplex C;
        for (std::size_t d = 0; d < simplices.size(); ++d) C.dims.push_back(simplices[d].size());
        for (std::size_t d = 0; d + 1 < simplices.size(); ++d) {
            std::map<Subset, std::size_t> index;
            for (std::size_t i = 0; i < simplices[d].size(); ++i) index[simplices[d][i]] = i;
            QMatrix delta(count(d + 1), count(d));
            for (std::size_t r = 0; r < simplices[d + 1].size(); ++r) {
                const Subset& sigma = simplices[d + 1][r];
                for (std::size_t j = 0; j < sigma.size(); ++j) {
                    Subset face = sigma;
                    face.erase(face.begin() + j);
                    delta(r, index.at(face)) = (j % 2 == 0) ? 1 : -1;
                }
            }
            C.diffs.push_back(std::move(delta));
        }
        return C;
    }
};

/// Cochain restriction onto a subcomplex: coordinate projection per degree.
inline ChainMap restriction_chain_map(const SimplicialComplex& big, const SimplicialComplex& sub) {
    if (!sub.is_subcomplex_of(big)) throw SubspaceNotContained("restriction: not a subcomplex");
    ChainMap F;
    for (std::size_t d = 0; d < sub.simplices.size(); ++d) {
        std::map<Subset, std::size_t> index;
        for (std::size_t i = 0; i < big.simplices[d].size(); ++i) index[big.simplices[d][i]] = i;
        QMatrix m(sub.count(d), big.count(d));
        for (std::size_t r = 0; r < sub.simplices[d].size(); ++r)
            m(r, index.at(sub.simplices[d][r])) = 1;
        F.maps.push_back(std::move(m));
    }
    return F;
}

// ---------------------------------------------------------------------------
// Two-set Mayer-Vietoris.
// ---------------------------------------------------------------------------

/**
 * Builds 0 -> C -> U (+) V -> W -> 0 from cover pieces and restriction chain
 * maps jU : U -> W, jV : V -> W; the glued complex C is the kernel of
 * (u, v) |-> jV v - jU u with the induced differential, and the sequence is
 * validated (p surjectivity is the genuinely model-dependent condition).
 */
inline ShortExactSequence mv_two_set(const GenericComplex& U, const GenericComplex& V,
                                     const GenericComplex& W, const ChainMap& jU,
                                     const ChainMap& jV) {
    if (chain_map_defect(U, W, jU) || chain_map_defect(V, W, jV))
        throw NotExact("restriction maps must be chain maps");
    ShortExactSequence s;
    const std::size_t topk = std::max(U.dims.size(), V.dims.size());
    // D = U (+) V with block-diagonal differential
    for (std::size_t k = 0; k < topk; ++k) s.D.dims.push_back(U.dim_at(k) + V.dim_at(k));
    for (std::size_t k = 0; k + 1 < topk; ++k) {
        QMatrix d(s.D.dims[k + 1], s.D.dims[k]);
        const QMatrix du = U.diff(k), dv = V.diff(k);
        for (std::size_t i = 0; i < du.rows(); ++i)
            for (std::size_t j = 0; j < du.cols(); ++j) d(i, j) = du(i, j);
        for (std::size_t i = 0; i < dv.rows(); ++i)
            for (std::size_t j = 0; j < dv.cols(); ++j)
                d(U.dim_at(k + 1) + i, U.dim_at(k) + j) = dv(i, j);
        s.D.diffs.push_back(std::move(d));
    }
    s.E.dims = W.dims;
    s.E.dims.resize(topk, 0);
    for (std::size_t k = 0; k + 1 < topk; ++k)
        s.E.diffs.push_back(W.diff(k));
    // p = (-jU | jV)
    for (std::size_t k = 0; k < topk; ++k)
        s.p.maps.push_back((-jU.at(k, U, W)).hcat(jV.at(k, V, W)));
    // C = ker p, i = inclusion, induced differential by lifting through i
    std::vector<QMatrix> kernels;
    for (std::size_t k = 0; k < topk; ++k) {
        auto kb = kernel_basis(s.p.maps[k]);
        s.C.dims.push_back(kb.size());
        kernels.push_back(QMatrix::from_columns(s.D.dims[k], kb));
        s.i.maps.push_back(kernels.back());
    }
    for (std::size_t k = 0; k + 1 < topk; ++k) {
        auto lifted = solve(kernels[k + 1], s.D.diff(k) * kernels[k]);
        if (!lifted) throw LiftFailure("glued differential does not preserve the kernel");
        s.C.diffs.push_back(std::move(*lifted));
    }
    validate_ses(s);
    return s;
}

// ---------------------------------------------------------------------------
// Cech-style gluing against a nerve with constant transition data.
// ---------------------------------------------------------------------------

/// Double complex (nerve cochains) (x) (CE cochains) with vertical sign
/// (-1)^p, totalized; reports both the direct Betti numbers of the total
/// complex and the degree-convolution of the factor Betti numbers.
struct GlueResult {
    TensorComplex tot;
    std::vector<std::size_t> betti_total;
    std::vector<std::size_t> betti_convolution;
    bool match = false;
};

inline GlueResult cech_ce_double(const SimplicialComplex& nerve, const Representation& rep) {
    GlueResult g;
    const GenericComplex cech = nerve.cochain_complex();
    const CEComplex ce(rep);
    g.tot = tensor_complex(cech, ce.complex());
    validate_complex(g.tot.total);
    g.betti_total = betti_numbers(g.tot.total);
    g.betti_convolution = betti_convolution(betti_numbers(cech), betti_numbers(ce.complex()));
    g.betti_convolution.resize(g.betti_total.size(), 0);
    g.match = g.betti_total == g.betti_convolution;
    return g;
}

} // namespace algco
