#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ncpt/intmatrix.hpp"
#include "ncpt/linalg.hpp"
#include "ncpt/phase.hpp"
#include "ncpt/rational.hpp"

using namespace ncpt;

TEST_CASE("rational arithmetic stays reduced") {
    Rat a(2, 4);
    CHECK(a.num() == 1);
    CHECK(a.den() == 2);
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(-3, 6) == Rat(1, -2));
    CHECK(Rat(7, 3).floor() == 2);
    CHECK(Rat(-7, 3).floor() == -3);
    CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("phases live in [0,1) and form a group") {
    CHECK(PhaseQ(5, 4) == PhaseQ(1, 4));
    CHECK(PhaseQ(-1, 4) == PhaseQ(3, 4));
    CHECK((PhaseQ(1, 2) + PhaseQ(1, 2)).is_zero());

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> num(-20, 20), den(1, 12);
    for (int i = 0; i < 200; ++i) {
        PhaseQ a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
        CHECK((a + b) + c == a + (b + c));
        CHECK((a + (-a)).is_zero());
        CHECK(a + b == b + a);
    }
}

TEST_CASE("phase_to_scalar") {
    CHECK(phase_to_scalar(PhaseQ(0, 1)) == CScalar(1.0, 0.0));
    CHECK(phase_to_scalar(PhaseQ(1, 2)) == CScalar(-1.0, 0.0));
    CHECK(phase_to_scalar(PhaseQ(1, 4)) == CScalar(0.0, 1.0));

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> num(-20, 20), den(1, 12);
    for (int i = 0; i < 200; ++i) {
        PhaseQ a(num(rng), den(rng)), b(num(rng), den(rng));
        CHECK(std::abs(std::abs(phase_to_scalar(a)) - 1.0) <= tolerance());
        // homomorphism up to 4*tol
        CScalar lhs = phase_to_scalar(a + b);
        CScalar rhs = phase_to_scalar(a) * phase_to_scalar(b);
        CHECK(std::abs(lhs - rhs) <= 4 * tolerance());
    }
}

TEST_CASE("gauss rational field ops") {
    GaussRational i(Rat(0), Rat(1));
    CHECK(i * i == GaussRational(Rat(-1)));
    GaussRational z(Rat(3, 2), Rat(-1, 3));
    CHECK(z / z == GaussRational(Rat(1)));
    CHECK((z * z.conj()).im.is_zero());
}

TEST_CASE("smith normal form basics") {
    SECTION("1x1 zero") {
        auto s = smith_normal_form(IntMatrix(std::vector<std::vector<long long>>{{0}}));
        CHECK(s.diag == std::vector<long long>{0});
    }
    SECTION("2x2 identity") {
        auto s = smith_normal_form(IntMatrix::identity(2));
        CHECK(s.diag == std::vector<long long>({1, 1}));
    }
    SECTION("torsion shows up") {
        auto s = smith_normal_form(IntMatrix({{2, 0}, {0, 3}}));
        CHECK(s.diag == std::vector<long long>({1, 6}));
    }
}

TEST_CASE("smith normal form on random matrices, factorization re-verified") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_int_distribution<long long> ent(-5, 5);
    for (int trial = 0; trial < 60; ++trial) {
        int r = dim(rng), c = dim(rng);
        IntMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = ent(rng);
        // smith_normal_form throws if its own verification fails
        auto s = smith_normal_form(m);
        for (size_t t = 0; t + 1 < s.diag.size(); ++t)
            if (s.diag[t] != 0) CHECK(s.diag[t + 1] % s.diag[t] == 0);
    }
}

TEST_CASE("integer linear solve") {
    IntMatrix A({{2, 0}, {0, 3}});
    auto sol = solve_integer(A, {4, 9});
    REQUIRE(sol);
    CHECK(sol->particular == std::vector<long long>({2, 3}));
    CHECK(!solve_integer(A, {1, 0}));

    IntMatrix B({{1, -1}});
    auto s2 = solve_integer(B, {0});
    REQUIRE(s2);
    CHECK(s2->kernel.size() == 1);

    SECTION("random systems: particular solves, kernel annihilates") {
        std::mt19937_64 rng(47);
        std::uniform_int_distribution<int> dim(1, 5);
        std::uniform_int_distribution<long long> ent(-4, 4);
        for (int t = 0; t < 40; ++t) {
            int r = dim(rng), c = dim(rng);
            IntMatrix m(r, c);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) m.at(i, j) = ent(rng);
            // build a solvable right side from a random integer vector
            std::vector<long long> x(c);
            for (auto& v : x) v = ent(rng);
            auto sol2 = solve_integer(m, m.apply(x));
            REQUIRE(sol2);
            CHECK(m.apply(sol2->particular) == m.apply(x));
            for (auto& k : sol2->kernel)
                CHECK(m.apply(k) == std::vector<long long>(r, 0));
        }
    }
}

TEST_CASE("exact echelon, kernel and inverse over Q(i)") {
    GMatrix m = {{GaussRational(1), GaussRational(2)}, {GaussRational(2), GaussRational(4)}};
    CHECK(rank(m) == 1);
    auto k = kernel(m);
    REQUIRE(k.size() == 1);
    CHECK(gvec_is_zero(gmat_apply(m, k[0])));

    GMatrix a = {{GaussRational(Rat(0), Rat(1)), GaussRational(1)},
                 {GaussRational(1), GaussRational(0)}};
    auto inv = inverse(a);
    REQUIRE(inv);
    CHECK(gmat_mul(a, *inv) == gmat_identity(2));
}
