#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ncpt/findim.hpp"
#include "support/random_algebras.hpp"

using namespace ncpt;

using namespace ncpt::testsupport;

TEST_CASE("structure algebra validation") {
    CHECK_NOTHROW(algebra_cn(3));
    CHECK_NOTHROW(algebra_m2());
    // a wrong unit vector must be rejected
    std::vector<std::vector<GVec>> c(2, std::vector<GVec>(2, GVec(2)));
    c[0][0][0] = GaussRational(1);
    c[0][1][1] = c[1][0][1] = GaussRational(1);
    GVec unit(2);
    unit[1] = GaussRational(1);
    CHECK_THROWS(StructureAlgebra(c, unit));
}

TEST_CASE("radical of the stock algebras") {
    SECTION("dual numbers: span{e}") {
        Subspace r = radical(algebra_dual_numbers());
        REQUIRE(r.dim() == 1);
        GVec eps(2);
        eps[1] = GaussRational(1);
        CHECK(r.contains(eps));
        // brute-force enumeration of nilpotent elements agrees
        Subspace oracle = nilpotent_span_oracle(algebra_dual_numbers(), 2);
        CHECK(oracle.dim() == 1);
        CHECK(oracle.contains(eps));
    }
    SECTION("C^n is semisimple") { CHECK(radical(algebra_cn(3)).dim() == 0); }
    SECTION("M_2(C) is semisimple") { CHECK(radical(algebra_m2()).dim() == 0); }
    SECTION("C[x]/(x^2-1) is semisimple") { CHECK(radical(algebra_cx_sq_one()).dim() == 0); }
}

TEST_CASE("radical is basis independent") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; ++t) {
        GMatrix P = random_unimodular(3, rng);
        StructureAlgebra A = algebra_cn(3);
        StructureAlgebra B = conjugate_algebra(A, P);
        CHECK(radical(B).dim() == 0);

        int rd = 0;
        StructureAlgebra C = random_commutative_algebra(rng, &rd);
        CHECK(radical(C).dim() == rd);
    }
}

TEST_CASE("radical equals brute-force nilpotent span on random commutative algebras") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 25; ++t) {
        int rd = 0;
        StructureAlgebra A = random_commutative_algebra(rng, &rd);
        Subspace r = radical(A);
        Subspace oracle = nilpotent_span_oracle(A, 12);
        REQUIRE(r.dim() == oracle.dim());
        for (auto& v : oracle.basis) CHECK(r.contains(v));
        for (auto& v : r.basis) {
            // radical vectors are themselves nilpotent
            GVec p = v;
            for (int e = 1; e < A.dim() + 1; ++e) p = A.mul(p, v);
            CHECK(gvec_is_zero(p));
        }
    }
}

TEST_CASE("semisimple quotient") {
    SECTION("dual numbers collapse to C") {
        auto q = semisimple_quotient(algebra_dual_numbers());
        CHECK(q.algebra.dim() == 1);
        GVec eps(2);
        eps[1] = GaussRational(1);
        CHECK(gvec_is_zero(gmat_apply(q.projection, eps)));
    }
    SECTION("C^n unchanged") {
        auto q = semisimple_quotient(algebra_cn(3));
        CHECK(q.algebra.dim() == 3);
    }
    SECTION("C[x]/(x^2-1) unchanged") {
        auto q = semisimple_quotient(algebra_cx_sq_one());
        CHECK(q.algebra.dim() == 2);
    }
}

TEST_CASE("characters") {
    SECTION("C^n gives the coordinate projections") {
        auto chis = characters(algebra_cn(3), 7);
        REQUIRE(chis.size() == 3);
        for (auto& chi : chis) {
            int ones = 0;
            for (auto& v : chi.values) {
                if (std::abs(v - CScalar(1, 0)) < 1e-9) ++ones;
                else CHECK(std::abs(v) < 1e-9);
            }
            CHECK(ones == 1);
        }
    }
    SECTION("dual numbers: single character killing e") {
        auto chis = characters(algebra_dual_numbers(), 7);
        REQUIRE(chis.size() == 1);
        CHECK(std::abs(chis[0].values[0] - CScalar(1, 0)) < 1e-9);
        CHECK(std::abs(chis[0].values[1]) < 1e-9);
    }
    SECTION("C[x]/(x^2-1): x maps to +1 and -1") {
        auto chis = characters(algebra_cx_sq_one(), 7);
        REQUIRE(chis.size() == 2);
        CHECK(std::abs(chis[0].values[1] + CScalar(1, 0)) < 1e-6);
        CHECK(std::abs(chis[1].values[1] - CScalar(1, 0)) < 1e-6);
    }
    SECTION("characters vanish on the radical, count matches quotient") {
        std::mt19937_64 rng(19);
        for (int t = 0; t < 10; ++t) {
            int rd = 0;
            StructureAlgebra A = random_commutative_algebra(rng, &rd);
            auto q = semisimple_quotient(A);
            auto chis = characters(A, 100 + t);
            CHECK(int(chis.size()) == q.algebra.dim());
            Subspace r = radical(A);
            for (auto& chi : chis)
                for (auto& v : r.basis) CHECK(std::abs(chi.eval(v)) <= 1e-6);
        }
    }
    SECTION("same seed, same output") {
        auto a = characters(algebra_cn(3), 42);
        auto b = characters(algebra_cn(3), 42);
        for (size_t i = 0; i < a.size(); ++i) CHECK(character_distance(a[i], b[i]) == 0.0);
    }
}

TEST_CASE("automorphism descent") {
    SECTION("identity descends to identities") {
        auto d = descend_automorphism(algebra_dual_numbers(), gmat_identity(2));
        CHECK(d.on_radical == gmat_identity(1));
        CHECK(d.on_quotient == gmat_identity(1));
    }
    SECTION("dual numbers, e -> 2e") {
        GMatrix phi = gmat_identity(2);
        phi[1][1] = GaussRational(2);
        auto d = descend_automorphism(algebra_dual_numbers(), phi);
        CHECK(d.on_radical[0][0] == GaussRational(2));
        CHECK(d.on_quotient == gmat_identity(1));
    }
    SECTION("C^2 swap descends to the swap") {
        GMatrix swap(2, GVec(2));
        swap[0][1] = swap[1][0] = GaussRational(1);
        auto d = descend_automorphism(algebra_cn(2), swap);
        CHECK(d.on_quotient == swap);
    }
    SECTION("non-automorphisms are rejected") {
        GMatrix bad = gmat_identity(2);
        bad[0][1] = GaussRational(5);
        CHECK_THROWS(descend_automorphism(algebra_cn(2), bad));
    }
}

TEST_CASE("character permutations") {
    auto chis2 = characters(algebra_cn(2), 7);
    SECTION("identity") {
        auto p = character_permutation(algebra_cn(2), gmat_identity(2), chis2);
        CHECK(p == std::vector<int>({0, 1}));
    }
    SECTION("swap on C^2 is a transposition") {
        GMatrix swap(2, GVec(2));
        swap[0][1] = swap[1][0] = GaussRational(1);
        auto p = character_permutation(algebra_cn(2), swap, chis2);
        CHECK(p == std::vector<int>({1, 0}));
    }
    SECTION("3-cycle on C^3") {
        GMatrix cyc(3, GVec(3));
        cyc[1][0] = cyc[2][1] = cyc[0][2] = GaussRational(1); // b0->b1->b2->b0
        auto chis = characters(algebra_cn(3), 7);
        auto p = character_permutation(algebra_cn(3), cyc, chis);
        // a 3-cycle: applying it three times gives the identity, once does not
        std::vector<int> twice(3), thrice(3);
        for (int i = 0; i < 3; ++i) twice[i] = p[p[i]];
        for (int i = 0; i < 3; ++i) thrice[i] = p[twice[i]];
        CHECK(thrice == std::vector<int>({0, 1, 2}));
        CHECK(p != std::vector<int>({0, 1, 2}));
    }
    SECTION("group homomorphism on random automorphisms of C^3") {
        // automorphisms of C^n are the coordinate permutations
        std::mt19937_64 rng(77);
        auto chis = characters(algebra_cn(3), 7);
        std::vector<int> base{0, 1, 2};
        for (int t = 0; t < 10; ++t) {
            std::vector<int> s1 = base, s2 = base;
            std::shuffle(s1.begin(), s1.end(), rng);
            std::shuffle(s2.begin(), s2.end(), rng);
            auto mk = [&](const std::vector<int>& s) {
                GMatrix m(3, GVec(3));
                for (int i = 0; i < 3; ++i) m[s[i]][i] = GaussRational(1);
                return m;
            };
            GMatrix m1 = mk(s1), m2 = mk(s2);
            auto p1 = character_permutation(algebra_cn(3), m1, chis);
            auto p2 = character_permutation(algebra_cn(3), m2, chis);
            auto p12 = character_permutation(algebra_cn(3), gmat_mul(m1, m2), chis);
            for (int i = 0; i < 3; ++i) CHECK(p12[i] == p1[p2[i]]);
        }
    }
}
