#include "algco/flows.hpp"

#include "algco/complexes.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace algco;

namespace {
Rational Q(long p, long q = 1) { return Rational(p, q); }

Curve poly_curve(std::vector<std::vector<double>> coeffs) {
    Curve c;
    c.kind = Curve::Kind::Polynomial;
    c.data = std::move(coeffs);
    return c;
}

// c(t) = (1/2, t/3, t^2/5): mildly time-dependent so3 control
Curve so3_curve() { return poly_curve({{0.5, 0, 0}, {0, 1.0 / 3, 0}, {0, 0, 0.2}}); }
} // namespace

TEST_CASE("curve evaluation") {
    const Curve p = poly_curve({{1, 0}, {0, 2}});
    CHECK(p.eval(0.5) == std::vector<double>{1.0, 1.0});
    CHECK(p.eval(0.0) == std::vector<double>{1.0, 0.0});

    Curve s;
    s.kind = Curve::Kind::Samples;
    s.data = {{0, 0}, {2, 4}, {4, 0}};
    CHECK(s.eval(0.25) == std::vector<double>{1.0, 2.0});
    CHECK(s.eval(0.75) == std::vector<double>{3.0, 2.0});
    CHECK(s.eval(1.0) == std::vector<double>{4.0, 0.0});
}

TEST_CASE("rk4 against the scalar exponential") {
    auto A = [](double) { return DMatrix{{1.0}}; };
    const auto grid = rk4_linear_flow(A, DMatrix::identity(1), 100);
    CHECK(grid.size() == 101);
    // classical global bound for y' = y on [0,1]: e * h^4 / 120 ~ 2.3e-10
    CHECK(std::abs(grid.back()(0, 0) - std::exp(1.0)) < 1e-9);

    std::vector<double> errs;
    for (int n : {10, 20, 40, 80})
        errs.push_back(std::abs(rk4_linear_flow(A, DMatrix::identity(1), n).back()(0, 0) -
                                std::exp(1.0)));
    const double order = convergence_order(errs);
    CHECK(order > 3.5);
    CHECK(order < 4.5);
}

TEST_CASE("homotopy flow keeps morphisms morphisms") {
    const LieAlgebra g = so3();
    const auto sol = integrate_homotopy(g, g, DMatrix::identity(3), so3_curve(), 1000);
    CHECK(morphism_defect(sol) < 1e-8);

    SECTION("step-halving fit lands at fourth order") {
        // On 3-dim unimodular algebras Cayley-Hamilton folds odd powers of
        // ad back into derivations and the defect superconverges at order 5,
        // so the generic fourth-order rate is measured on a 5-dim algebra.
        const LieAlgebra s = semidirect(sl2_standard_rep());
        const Curve c = poly_curve({{0.7, -0.2, 0.3, 0.4, -0.5},
                                    {0.1, 0.6, -0.4, 0.2, 0.3},
                                    {-0.2, 0.1, 0.5, -0.3, 0.2}});
        std::vector<double> defects;
        for (int n : {25, 50, 100, 200})
            defects.push_back(
                morphism_defect(integrate_homotopy(s, s, DMatrix::identity(5), c, n)));
        const double order = convergence_order(defects);
        CHECK(order > 3.5);
        CHECK(order < 4.5);
    }

    SECTION("three-dimensional defect superconvergence at fifth order") {
        std::vector<double> defects;
        for (int n : {25, 50, 100})
            defects.push_back(
                morphism_defect(integrate_homotopy(g, g, DMatrix::identity(3), so3_curve(), n)));
        const double order = convergence_order(defects);
        CHECK(order > 4.5);
        CHECK(order < 5.5);
    }
}

TEST_CASE("constant curve matches the matrix exponential") {
    const LieAlgebra g = so3();
    const std::vector<double> c0{0.4, -0.3, 0.7};
    const auto sol = integrate_homotopy(g, g, DMatrix::identity(3), poly_curve({c0}), 1000);
    const DMatrix oracle = dexp(dad(g, c0) * (-1.0));
    CHECK(inf_norm(sol.psi.back() - oracle) < 1e-8);
}

TEST_CASE("abelian target freezes the flow bitwise") {
    const LieAlgebra a = abelian(2);
    DMatrix psi0{{1, 2, 0}, {0, 1, 5}};
    const auto sol = integrate_homotopy(abelian(3), a, psi0, poly_curve({{1, 2}, {3, 4}}), 50);
    for (const auto& m : sol.psi) CHECK(m == psi0);
}

TEST_CASE("non-derivation drift destroys the bracket") {
    const LieAlgebra g = so3();
    // the identity is not a derivation of a nonabelian algebra
    auto A = [](double) { return DMatrix::identity(3); };
    const auto grid = rk4_linear_flow(A, DMatrix::identity(3), 200);
    CHECK(morphism_defect(g, g, grid) > 1e-2);
}

TEST_CASE("transport reproduces the flow and its generator") {
    const LieAlgebra g = so3();
    const auto sol = integrate_homotopy(g, g, DMatrix{{1, 0, 0}, {0, 0, -1}, {0, 1, 0}},
                                        so3_curve(), 400);
    const auto tr = triviality_check(sol);
    CHECK(tr.theta.size() == 401);
    CHECK(tr.max_err < 1e-6);

    SECTION("central differences recover the derivation at second order") {
        const DMatrix D = dad(g, {0.3, -0.2, 0.5});
        const std::vector<double> e{1.0, 2.0, -1.0};
        const double e1 = flow_derivation_error(D, e, 1e-2);
        const double e2 = flow_derivation_error(D, e, 5e-3);
        CHECK(e1 < 1e-3);
        CHECK(e1 / e2 > 3.0);
        CHECK(e1 / e2 < 5.0);
    }
}

TEST_CASE("inner flows are bracket automorphisms") {
    CHECK(bracket_invariance_error(so3(), {0.3, -0.2, 0.5}, 0.7) < 1e-10);
    CHECK(bracket_invariance_error(sl2(), {0.1, 0.4, -0.3}, 0.5) < 1e-10);

    SECTION("nilpotent case is exact over the rationals") {
        const LieAlgebra h = heisenberg3();
        const QMatrix Xi = qexp_nilpotent(h.ad(0) * Q(3, 7));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j) {
                QVector ei(3), ej(3);
                ei[i] = 1;
                ej[j] = 1;
                CHECK(h.bracket(Xi.apply(ei), Xi.apply(ej)) ==
                      Xi.apply(h.bracket(ei, ej)));
            }
    }

    SECTION("non-nilpotent input is rejected") {
        CHECK_THROWS_AS(qexp_nilpotent(QMatrix::identity(2)), std::domain_error);
    }
}

TEST_CASE("inner flows intertwine with the fiber flow of a representation") {
    CHECK(semidirect_flow_error(sl2_standard_rep(), {0.2, 0.3, -0.1}, 0.6) < 1e-10);
    CHECK(semidirect_flow_error(adjoint_rep(so3()), {1.0, 0.5, -0.25}, 0.4) < 1e-9);

    SECTION("heisenberg case holds exactly") {
        const Representation r = heisenberg3_standard_rep();
        const Rational lam = Q(5, 3);
        const QMatrix flowG = qexp_nilpotent(r.algebra.ad(0) * (-lam));
        QMatrix rho_a = r.rho[0]; // a = e_0
        const QMatrix flowF = qexp_nilpotent(rho_a * (-lam));
        for (std::size_t j = 0; j < 3; ++j) {
            QMatrix rho_bj(3, 3);
            for (std::size_t i = 0; i < 3; ++i) rho_bj = rho_bj + r.rho[i] * flowG(i, j);
            CHECK(rho_bj * flowF == flowF * r.rho[j]);
        }
    }
}

TEST_CASE("least squares residual") {
    const DMatrix A{{1, 0}, {0, 1}, {0, 0}};
    CHECK(std::abs(lstsq_residual(A, {1, 2, 3}) - 3.0) < 1e-12);
    const DMatrix B{{1, 1}, {1, 1}, {0, 0}}; // rank deficient
    CHECK(std::abs(lstsq_residual(B, {1, 1, 2}) - 2.0) < 1e-12);
    CHECK(lstsq_residual(DMatrix(3, 0), {0, 3, 4}) == 5.0);
}

TEST_CASE("fiber transport intertwines the endpoint pullbacks") {
    const LieAlgebra g = so3();
    const auto sol = integrate_homotopy(g, g, DMatrix::identity(3), so3_curve(), 400);

    SECTION("adjoint coefficients") {
        const auto tc = endpoint_transport_check(sol, adjoint_rep(g));
        CHECK_FALSE(tc.conditioning_warning);
        CHECK(tc.gauge_residual < 1e-6);
        CHECK(tc.cochain_residual < 1e-6);
    }

    SECTION("trivial coefficients compare bare pullbacks up to coboundary") {
        const auto tc = endpoint_transport_check(sol, trivial_rep(g, 1));
        CHECK(tc.gauge_residual == 0.0); // theta stays the 1x1 identity
        CHECK(tc.cochain_residual < 1e-6);
    }

    SECTION("zero curve is exactly trivial") {
        const auto still = integrate_homotopy(g, g, DMatrix::identity(3),
                                              poly_curve({{0, 0, 0}}), 50);
        const auto tc = endpoint_transport_check(still, adjoint_rep(g));
        CHECK(tc.theta1 == DMatrix::identity(3));
        CHECK(tc.gauge_residual == 0.0);
        CHECK(tc.cochain_residual == 0.0);
    }
}

TEST_CASE("nilpotent transport on the heisenberg algebra") {
    const LieAlgebra h = heisenberg3();
    const Curve c = poly_curve({{0.5, 0, 0}, {0, 0.25, 0}});
    const auto sol = integrate_homotopy(h, h, DMatrix::identity(3), c, 400);
    CHECK(morphism_defect(sol) < 1e-9);
    const auto tc = endpoint_transport_check(sol, heisenberg3_standard_rep());
    CHECK(tc.gauge_residual < 1e-6);
    CHECK(tc.cochain_residual < 1e-6);
}
