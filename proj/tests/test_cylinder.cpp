#include "algco/cylinder.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace algco;

namespace {
Rational Q(long p, long q = 1) { return Rational(p, q); }

Poly random_poly(std::mt19937_64& rng, unsigned maxdeg) {
    std::uniform_int_distribution<long> c(-3, 3);
    std::uniform_int_distribution<unsigned> dd(0, maxdeg);
    Poly p;
    const unsigned deg = dd(rng);
    for (unsigned e = 0; e <= deg; ++e) p.add_term(e, Q(c(rng)));
    return p;
}

CylinderForm random_form(const CylinderComplex& cx, std::mt19937_64& rng, std::size_t k,
                         unsigned maxdeg = 5) {
    CylinderForm f = cx.zero(k);
    for (auto& p : f.base) p = random_poly(rng, maxdeg);
    for (auto& p : f.dt) p = random_poly(rng, maxdeg);
    return f;
}
} // namespace

TEST_CASE("polynomial ring basics") {
    Poly p; // 2 + 3t^2
    p.add_term(0, Q(2));
    p.add_term(2, Q(3));
    CHECK(p.eval(Q(2)) == 14);
    CHECK(p.derivative().eval(Q(2)) == 12);
    CHECK(p.integral().eval(Q(1)) == Q(3)); // 2t + t^3 at 1
    CHECK(p.integral().eval(Q(0)) == 0);
    CHECK((p - p).is_zero());
    CHECK((p * Q(0)).is_zero());
}

TEST_CASE("homotopy operator: frozen signs") {
    CylinderComplex cx(trivial_rep(sl2()));

    // K(dt ^ e) = t (x) e on total degree 1
    CylinderForm f1 = cx.zero(1);
    f1.dt[0] = Poly(Q(1));
    auto k1 = cx.homotopy_K(f1);
    REQUIRE(k1.degree == 0);
    CHECK(k1.base[0] == Poly::t());

    // K(t dt ^ eta) = -(t^2/2) (x) eta for eta a 1-form (total degree 2)
    CylinderForm f2 = cx.zero(2);
    f2.dt[1] = Poly::t();
    auto k2 = cx.homotopy_K(f2);
    REQUIRE(k2.degree == 1);
    Poly expect;
    expect.add_term(2, Q(-1, 2));
    CHECK(k2.base[1] == expect);
    CHECK(k2.base[0].is_zero());

    // K annihilates pure base forms
    CylinderForm f3 = cx.zero(2);
    f3.base[0] = Poly::t(3);
    CHECK(cx.homotopy_K(f3).is_zero());
}

TEST_CASE("cylinder differential squares to zero") {
    std::mt19937_64 rng(5150);
    for (auto rep : {trivial_rep(sl2()), sl2_standard_rep(), adjoint_rep(heisenberg3())}) {
        CylinderComplex cx(std::move(rep));
        for (std::size_t k = 0; k <= cx.top(); ++k)
            for (int trial = 0; trial < 5; ++trial) {
                auto f = random_form(cx, rng, k);
                CHECK(cx.differential(cx.differential(f)).is_zero());
            }
    }
}

TEST_CASE("slice and projection pullbacks") {
    CylinderComplex cx(sl2_standard_rep());
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> c(-4, 4);

    // I_t* Pr* = id for several rational parameter values
    for (const auto& t0 : {Q(0), Q(1), Q(-2), Q(1, 3), Q(7, 5)}) {
        for (std::size_t k = 0; k <= 3; ++k) {
            QVector w(cx.base_dim(k));
            for (auto& x : w) x = Q(c(rng));
            CHECK(cx.incl_pullback(cx.proj_pullback(k, w), t0) == w);
        }
    }

    // both pullbacks are chain maps
    const auto& ce = cx.base_complex();
    for (std::size_t k = 0; k <= 3; ++k) {
        QVector w(cx.base_dim(k));
        for (auto& x : w) x = Q(c(rng));
        auto lhs = cx.differential(cx.proj_pullback(k, w));
        auto rhs = cx.proj_pullback(k + 1, ce.diff(k).apply(w));
        CHECK((lhs.degree == rhs.degree));
        for (std::size_t i = 0; i < lhs.base.size(); ++i) CHECK(lhs.base[i] == rhs.base[i]);
        for (const auto& p : lhs.dt) CHECK(p.is_zero());

        auto f = random_form(cx, rng, k);
        const Rational t0 = Q(2, 3);
        CHECK(cx.incl_pullback(cx.differential(f), t0) == ce.diff(k).apply(cx.incl_pullback(f, t0)));
    }
}

TEST_CASE("cylinder homotopy identity holds exactly") {
    std::mt19937_64 rng(424242);
    std::vector<Representation> reps;
    reps.push_back(trivial_rep(abelian(2)));
    reps.push_back(trivial_rep(sl2()));
    reps.push_back(sl2_standard_rep());
    reps.push_back(heisenberg3_standard_rep());
    reps.push_back(trivial_rep(direct_product(abelian(1), sl2()), 2));
    for (auto& rep : reps) {
        CylinderComplex cx(rep);
        for (std::size_t k = 0; k <= cx.top(); ++k)
            for (int trial = 0; trial < 4; ++trial)
                CHECK(cx.homotopy_identity_defect(random_form(cx, rng, k)).is_zero());
    }
}
