#include "algco/linalg.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace algco;

namespace {

Rational Q(long p, long q = 1) { return Rational(p, q); }

QMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> den(1, 3);
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(num(rng), den(rng));
    return m;
}

} // namespace

TEST_CASE("rational string round trip") {
    CHECK(rational_to_string(Q(-3, 6)) == "-1/2");
    CHECK(rational_to_string(Q(4, 2)) == "2");
    CHECK(rational_from_string("7/-21") == Q(-1, 3));
    CHECK(rational_from_string("-5") == Q(-5));
    CHECK(denom(rational_from_string("7/-21")) == 3); // canonical: q > 0
    CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("x"), std::invalid_argument);
}

TEST_CASE("rank of frozen examples") {
    CHECK(rank(QMatrix{{Q(1), Q(2)}, {Q(2), Q(4)}}) == 1);
    CHECK(rank(QMatrix{{Q(2), Q(4)}, {Q(3), Q(5)}}) == 2);
    CHECK(rank(QMatrix(0, 3)) == 0);
    CHECK(rank(QMatrix(3, 0)) == 0);
    // rank is invariant under row scaling by 1/7
    QMatrix a{{Q(1, 7), Q(2, 7), Q(3, 7)}, {Q(2), Q(4), Q(6)}, {Q(0), Q(1), Q(1)}};
    CHECK(rank(a) == 2);
}

TEST_CASE("kernel of frozen examples") {
    auto k = kernel_basis(QMatrix{{Q(1), Q(2)}, {Q(2), Q(4)}});
    REQUIRE(k.size() == 1);
    CHECK(k[0] == QVector{Q(-2), Q(1)});

    CHECK(kernel_basis(QMatrix{{Q(1), Q(0)}, {Q(0), Q(1)}}).empty());

    // 0xN matrix: kernel is everything
    auto full = kernel_basis(QMatrix(0, 3));
    REQUIRE(full.size() == 3);
    CHECK(full[0] == QVector{Q(1), Q(0), Q(0)});
    CHECK(full[2] == QVector{Q(0), Q(0), Q(1)});
}

TEST_CASE("rank-nullity and kernel correctness on random matrices") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t r = 1 + trial % 5, c = 1 + (trial * 7) % 6;
        QMatrix a = random_matrix(rng, r, c);
        auto ker = kernel_basis(a);
        CHECK(rank(a) + ker.size() == c);
        for (const auto& v : ker) {
            auto av = a.apply(v);
            for (const auto& x : av) CHECK(x == 0);
        }
        // kernel vectors are independent
        if (!ker.empty())
            CHECK(rank(QMatrix::from_columns(c, ker)) == ker.size());
    }
}

TEST_CASE("solve: consistent and inconsistent systems") {
    QMatrix a{{Q(1), Q(2)}, {Q(2), Q(4)}};
    CHECK_FALSE(solve(a, QVector{Q(1), Q(0)}).has_value());
    auto x = solve(a, QVector{Q(1), Q(2)});
    REQUIRE(x.has_value());
    CHECK(a.apply(*x) == QVector{Q(1), Q(2)});

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        QMatrix m = random_matrix(rng, 3, 4);
        QVector t{Q(1, 2), Q(-2), Q(3, 5), Q(0)};
        auto b = m.apply(t);
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        CHECK(m.apply(*sol) == b);
    }
}

TEST_CASE("inverse") {
    QMatrix a{{Q(2), Q(1)}, {Q(7), Q(4)}};
    auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK((a * *inv) == QMatrix::identity(2));
    CHECK((*inv * a) == QMatrix::identity(2));
    CHECK_FALSE(inverse(QMatrix{{Q(1), Q(2)}, {Q(2), Q(4)}}).has_value());
}

TEST_CASE("column space basis picks pivot columns") {
    QMatrix a{{Q(1), Q(2), Q(0)}, {Q(2), Q(4), Q(1)}};
    auto cs = column_space_basis(a);
    REQUIRE(cs.size() == 2);
    CHECK(cs.vectors[0] == QVector{Q(1), Q(2)});
    CHECK(cs.vectors[1] == QVector{Q(0), Q(1)});
}

TEST_CASE("quotient_basis completes sub inside big") {
    SubspaceBasis sub{3, {{Q(1), Q(0), Q(0)}}};
    SubspaceBasis big{3, {{Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)}, {Q(1), Q(1), Q(0)}}};
    auto reps = quotient_basis(sub, big);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0] == QVector{Q(0), Q(1), Q(0)});

    SubspaceBasis outside{3, {{Q(0), Q(0), Q(1)}}};
    CHECK_THROWS_AS(quotient_basis(outside, big), SubspaceNotContained);
    SubspaceBasis wrong{2, {{Q(1), Q(0)}}};
    CHECK_THROWS_AS(quotient_basis(wrong, big), DimensionMismatch);
    // sub == big: nothing to add
    CHECK(quotient_basis(big, big).empty());
}

TEST_CASE("kronecker product") {
    QMatrix a{{Q(1), Q(2)}, {Q(3), Q(4)}};
    QMatrix b{{Q(0), Q(1)}, {Q(1), Q(0)}};
    QMatrix k = a.kron(b);
    REQUIRE(k.rows() == 4);
    CHECK(k(0, 1) == 1);
    CHECK(k(0, 3) == 2);
    CHECK(k(3, 0) == 3);
    CHECK(k(2, 3) == 4);

    // (A kron B)(x ox y) = Ax ox By with index i*len(y)+j
    QVector x{Q(1), Q(-1)}, y{Q(2), Q(5)};
    QVector xy(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) xy[i * 2 + j] = x[i] * y[j];
    auto lhs = k.apply(xy);
    auto ax = a.apply(x), by = b.apply(y);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(lhs[i * 2 + j] == ax[i] * by[j]);
}

TEST_CASE("determinant over both fields") {
    CHECK(determinant(QMatrix{{Q(2), Q(1)}, {Q(7), Q(4)}}) == 1);
    CHECK(determinant(QMatrix{{Q(1), Q(2)}, {Q(2), Q(4)}}) == 0);
    DMatrix d{{2.0, 1.0}, {7.0, 4.0}};
    CHECK(determinant(d) == Catch::Approx(1.0));
}
