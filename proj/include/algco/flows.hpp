#pragma once

#include "ce.hpp"
#include "lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace algco {

// ---------------------------------------------------------------------------
// Small double-precision helpers on Matrix<double>.
// ---------------------------------------------------------------------------

inline double inf_norm(const DMatrix& m) {
    double r = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j)));
    return r;
}

inline double inf_norm(const std::vector<double>& v) {
    double r = 0;
    for (double x : v) r = std::max(r, std::abs(x));
    return r;
}

/// Matrix exponential by plain series (desk-scale arguments only).
inline DMatrix dexp(const DMatrix& A, int terms = 48) {
    DMatrix r = DMatrix::identity(A.rows());
    DMatrix term = r;
    for (int k = 1; k <= terms; ++k) {
        term = term * A * (1.0 / k);
        r = r + term;
    }
    return r;
}

/// Exact exponential of a nilpotent matrix (the series terminates; a square
/// matrix that has not annihilated by its dimension never will).
inline QMatrix qexp_nilpotent(const QMatrix& A) {
    QMatrix r = QMatrix::identity(A.rows());
    if (A.rows() == 0) return r;
    QMatrix term = r;
    for (std::size_t k = 1; k <= A.rows(); ++k) {
        term = term * A * Rational(1, static_cast<long>(k));
        if (term.is_zero()) return r;
        r = r + term;
    }
    throw std::domain_error("qexp_nilpotent: matrix is not nilpotent");
}

inline DMatrix dad(const LieAlgebra& g, const std::vector<double>& a) {
    DMatrix m(g.dim(), g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < g.dim(); ++j)
            for (std::size_t k = 0; k < g.dim(); ++k)
                m(k, j) += a[i] * to_double(g.c(i, j, k));
    }
    return m;
}

inline std::vector<double> dbracket(const LieAlgebra& g, const std::vector<double>& a,
                                    const std::vector<double>& b) {
    return dad(g, a).apply(b);
}

// ---------------------------------------------------------------------------
// Time-dependent curves and the classical RK4 flow integrator.
// ---------------------------------------------------------------------------

/// Vector-valued control curve on [0,1]: dense polynomial coefficients
/// (ascending powers) or uniformly spaced samples with linear interpolation.
struct Curve {
    enum class Kind { Polynomial, Samples } kind = Kind::Polynomial;
    std::vector<std::vector<double>> data;

    std::size_t dim() const { return data.empty() ? 0 : data.front().size(); }

    std::vector<double> eval(double t) const {
        std::vector<double> v(dim(), 0.0);
        if (data.empty()) return v;
        if (kind == Kind::Polynomial) {
            double p = 1.0;
            for (const auto& coeff : data) {
                for (std::size_t i = 0; i < v.size(); ++i) v[i] += p * coeff[i];
                p *= t;
            }
        } else {
            if (data.size() == 1) return data.front();
            const double x = std::clamp(t, 0.0, 1.0) * (data.size() - 1);
            const std::size_t lo = std::min(static_cast<std::size_t>(x), data.size() - 2);
            const double f = x - lo;
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = (1 - f) * data[lo][i] + f * data[lo + 1][i];
        }
        return v;
    }
};

/// Grid of RK4 iterates of Y' = A(t) Y on [0,1], Y(0) = Y0; values[k] is the
/// solution at t = k/steps.
inline std::vector<DMatrix> rk4_linear_flow(const std::function<DMatrix(double)>& A,
                                            const DMatrix& Y0, int steps) {
    std::vector<DMatrix> grid;
    grid.reserve(steps + 1);
    grid.push_back(Y0);
    const double h = 1.0 / steps;
    DMatrix Y = Y0;
    for (int n = 0; n < steps; ++n) {
        const double t = n * h;
        const DMatrix A1 = A(t), A2 = A(t + h / 2), A3 = A(t + h);
        const DMatrix k1 = A1 * Y;
        const DMatrix k2 = A2 * (Y + k1 * (h / 2));
        const DMatrix k3 = A2 * (Y + k2 * (h / 2));
        const DMatrix k4 = A3 * (Y + k3 * h);
        Y = Y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6);
        grid.push_back(Y);
    }
    return grid;
}

// ---------------------------------------------------------------------------
// Homotopies of morphisms driven by a curve in the target algebra.
// ---------------------------------------------------------------------------

/// Solution grid of psi' = -ad_{c(t)} o psi with psi(0) = psi0 : g -> h.
struct HomotopySolution {
    LieAlgebra g, h;
    DMatrix psi0;
    Curve c;
    int steps = 0;
    std::vector<DMatrix> psi;
};

inline HomotopySolution integrate_homotopy(const LieAlgebra& g, const LieAlgebra& h,
                                           const DMatrix& psi0, const Curve& c, int steps) {
    if (psi0.rows() != h.dim() || psi0.cols() != g.dim())
        throw DimensionMismatch("integrate_homotopy: psi0 shape");
    if (c.dim() != h.dim()) throw DimensionMismatch("integrate_homotopy: curve dimension");
    HomotopySolution s{g, h, psi0, c, steps, {}};
    auto A = [&](double t) { return -dad(h, c.eval(t)); };
    s.psi = rk4_linear_flow(A, psi0, steps);
    return s;
}

/// Worst bracket-compatibility defect over the whole grid:
/// max_{t,i<j} | [psi_t e_i, psi_t e_j]_h - psi_t [e_i, e_j]_g |.
inline double morphism_defect(const LieAlgebra& g, const LieAlgebra& h,
                              const std::vector<DMatrix>& grid) {
    double worst = 0;
    const std::size_t n = g.dim();
    for (const auto& psi : grid) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                std::vector<double> lhs = dbracket(h, psi.col(i), psi.col(j));
                std::vector<double> cij(n, 0.0);
                for (std::size_t k = 0; k < n; ++k) cij[k] = to_double(g.c(i, j, k));
                std::vector<double> rhs = psi.apply(cij);
                for (std::size_t k = 0; k < h.dim(); ++k)
                    worst = std::max(worst, std::abs(lhs[k] - rhs[k]));
            }
    }
    return worst;
}

inline double morphism_defect(const HomotopySolution& s) {
    return morphism_defect(s.g, s.h, s.psi);
}

/// Least-squares slope of log2(error) against log2(h) over a halving ladder;
/// RK4 should sit near 4.
inline double convergence_order(const std::vector<double>& errors) {
    double sum = 0;
    std::size_t cnt = 0;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        if (errors[i + 1] <= 0 || errors[i] <= 0) continue;
        sum += std::log2(errors[i] / errors[i + 1]);
        ++cnt;
    }
    return cnt ? sum / cnt : 0.0;
}

/// Triviality transport: integrates Theta' = -ad_{c(t)} Theta, Theta(0) = I,
/// and reports max_t |psi_t - Theta_t psi_0|.
struct TrivialityResult {
    std::vector<DMatrix> theta;
    double max_err = 0;
};

inline TrivialityResult triviality_check(const HomotopySolution& s) {
    TrivialityResult r;
    auto A = [&](double t) { return -dad(s.h, s.c.eval(t)); };
    r.theta = rk4_linear_flow(A, DMatrix::identity(s.h.dim()), s.steps);
    for (std::size_t k = 0; k < s.psi.size(); ++k)
        r.max_err = std::max(r.max_err, inf_norm(r.theta[k] * s.psi0 - s.psi[k]));
    return r;
}

// ---------------------------------------------------------------------------
// Flow identities for a single derivation / inner flow.
// ---------------------------------------------------------------------------

/// Central-difference reconstruction of a derivation from its flow
/// (Xi_t = exp(-tD) on the fiber, pulled back as Xi_{-t} after transport):
/// returns the worst error of (Xi_h* e - Xi_{-h}* e)/(2h) against D e.
inline double flow_derivation_error(const DMatrix& D, const std::vector<double>& e, double h) {
    const DMatrix plus = dexp(D * h), minus = dexp(D * (-h));
    const std::vector<double> ep = plus.apply(e), em = minus.apply(e), de = D.apply(e);
    double worst = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        worst = std::max(worst, std::abs((ep[i] - em[i]) / (2 * h) - de[i]));
    return worst;
}

/// Inner flow Xi = exp(lambda ad_a) must preserve the bracket:
/// max_{i<j} | [Xi e_i, Xi e_j] - Xi [e_i, e_j] |.
inline double bracket_invariance_error(const LieAlgebra& g, const std::vector<double>& a,
                                       double lambda) {
    const DMatrix Xi = dexp(dad(g, a) * lambda);
    double worst = 0;
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j) {
            std::vector<double> lhs = dbracket(g, Xi.col(i), Xi.col(j));
            std::vector<double> cij(g.dim(), 0.0);
            for (std::size_t k = 0; k < g.dim(); ++k) cij[k] = to_double(g.c(i, j, k));
            std::vector<double> rhs = Xi.apply(cij);
            for (std::size_t k = 0; k < g.dim(); ++k)
                worst = std::max(worst, std::abs(lhs[k] - rhs[k]));
        }
    return worst;
}

/// Compatibility of the inner flow with a representation:
/// rho(exp(-l ad_a) b) exp(-l rho(a)) = exp(-l rho(a)) rho(b) for basis b.
inline double semidirect_flow_error(const Representation& rep, const std::vector<double>& a,
                                    double lambda) {
    const LieAlgebra& g = rep.algebra;
    std::vector<DMatrix> rho;
    for (const auto& m : rep.rho) rho.push_back(to_double(m));
    DMatrix rho_a(rep.fiber_dim, rep.fiber_dim);
    for (std::size_t i = 0; i < g.dim(); ++i) rho_a = rho_a + rho[i] * a[i];
    const DMatrix flowG = dexp(dad(g, a) * (-lambda));
    const DMatrix flowF = dexp(rho_a * (-lambda));
    double worst = 0;
    for (std::size_t j = 0; j < g.dim(); ++j) {
        const std::vector<double> bj = flowG.col(j);
        DMatrix rho_bj(rep.fiber_dim, rep.fiber_dim);
        for (std::size_t i = 0; i < g.dim(); ++i) rho_bj = rho_bj + rho[i] * bj[i];
        worst = std::max(worst, inf_norm(rho_bj * flowF - flowF * rho[j]));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Fiber transport along a homotopy and the induced gauge relation.
// ---------------------------------------------------------------------------

/// 2-norm of the least-squares residual min_x |Ax - b|_2 (modified
/// Gram-Schmidt; rank deficiency handled by a column threshold).
inline double lstsq_residual(const DMatrix& A, std::vector<double> b) {
    std::vector<std::vector<double>> qcols;
    for (std::size_t j = 0; j < A.cols(); ++j) {
        std::vector<double> v = A.col(j);
        for (const auto& q : qcols) {
            double dot = 0;
            for (std::size_t i = 0; i < v.size(); ++i) dot += q[i] * v[i];
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * q[i];
        }
        double nrm = 0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) continue;
        for (double& x : v) x /= nrm;
        qcols.push_back(std::move(v));
    }
    for (const auto& q : qcols) {
        double dot = 0;
        for (std::size_t i = 0; i < b.size(); ++i) dot += q[i] * b[i];
        for (std::size_t i = 0; i < b.size(); ++i) b[i] -= dot * q[i];
    }
    double nrm = 0;
    for (double x : b) nrm += x * x;
    return std::sqrt(nrm);
}

/**
 * End-to-end check of endpoint transport for a homotopy psi_t of
 * morphisms g -> h against a representation of h:
 *
 *  - integrates the fiber transport Theta' = -rho(c(t)) Theta, Theta(0)=I;
 *  - gauge residual of rho(psi_1 x) Theta(1) = Theta(1) rho(psi_0 x);
 *  - cochain-level comparison of the two pullback chain maps: for every
 *    closed generator w of the h-side complex, Phi_1* w must agree with
 *    (I (x) Theta(1)) Phi_0* w up to a numeric coboundary of the
 *    psi_1-pulled-back differential.
 */
struct TransportCheck {
    DMatrix theta1{0, 0};
    double gauge_residual = 0;
    double cochain_residual = 0;
    bool conditioning_warning = false;
};

inline TransportCheck endpoint_transport_check(const HomotopySolution& s, const Representation& rep) {
    if (rep.algebra.dim() != s.h.dim())
        throw DimensionMismatch("endpoint_transport_check: representation not over the target algebra");
    TransportCheck out;
    std::vector<DMatrix> rho;
    for (const auto& m : rep.rho) rho.push_back(to_double(m));
    auto rho_of = [&](const std::vector<double>& v) {
        DMatrix m(rep.fiber_dim, rep.fiber_dim);
        for (std::size_t i = 0; i < rho.size(); ++i)
            if (v[i] != 0.0) m = m + rho[i] * v[i];
        return m;
    };
    auto A = [&](double t) { return -rho_of(s.c.eval(t)); };
    out.theta1 = rk4_linear_flow(A, DMatrix::identity(rep.fiber_dim), s.steps).back();
    out.conditioning_warning = std::abs(determinant(out.theta1)) < 1e-8;

    const DMatrix& psi1 = s.psi.back();
    const std::size_t n = s.g.dim();
    for (std::size_t i = 0; i < n; ++i) {
        const DMatrix lhs = rho_of(psi1.col(i)) * out.theta1;
        const DMatrix rhs = out.theta1 * rho_of(s.psi0.col(i));
        out.gauge_residual = std::max(out.gauge_residual, inf_norm(lhs - rhs));
    }

    // cochain-level comparison of pullbacks
    const CEComplex target(rep); // exact h-side complex
    std::vector<DMatrix> rho1;   // pulled-back action along psi_1 (numeric)
    for (std::size_t i = 0; i < n; ++i) rho1.push_back(rho_of(psi1.col(i)));
    auto cnum = [&](unsigned i, unsigned j, unsigned k) { return to_double(s.g.c(i, j, k)); };
    const auto d1 = ce_differentials<double>(n, rep.fiber_dim, cnum, rho1);
    const auto P1 = pullback_cochain_matrices<double>(psi1, rep.fiber_dim);
    const auto P0 = pullback_cochain_matrices<double>(s.psi0, rep.fiber_dim);

    for (std::size_t k = 0; k <= target.top() && k <= n; ++k) {
        const auto closed = kernel_basis(target.diff(k));
        if (closed.empty()) continue;
        const DMatrix& P1k = P1[k];
        const DMatrix theta_k =
            DMatrix::identity(binomial(n, k)).kron(out.theta1);
        const DMatrix& P0k = P0[k];
        const DMatrix bd = k == 0 ? DMatrix(P1k.rows(), 0) : d1[k - 1];
        for (const auto& w : closed) {
            std::vector<double> wd(w.size());
            for (std::size_t i = 0; i < w.size(); ++i) wd[i] = to_double(w[i]);
            const std::vector<double> a = P1k.apply(wd);
            const std::vector<double> b = theta_k.apply(P0k.apply(wd));
            std::vector<double> r(a.size());
            double scale = 1.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                r[i] = a[i] - b[i];
                scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
            }
            out.cochain_residual =
                std::max(out.cochain_residual, lstsq_residual(bd, r) / scale);
        }
    }
    return out;
}

} // namespace algco
