#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ncpt/nctorus.hpp"
#include "ncpt/repmatrix.hpp"

using namespace ncpt;

namespace {

NcTorusElement random_element(const ThetaMatrix& theta, std::mt19937_64& rng, int window = 3,
                              int terms = 4) {
    std::uniform_int_distribution<long long> deg(-window, window);
    std::uniform_real_distribution<double> co(-1.0, 1.0);
    std::map<MultiIndex, CScalar> c;
    for (int t = 0; t < terms; ++t) {
        MultiIndex k(theta.n());
        for (auto& x : k) x = deg(rng);
        c[k] += CScalar(co(rng), co(rng));
    }
    return NcTorusElement(theta, std::move(c));
}

TorusPoint random_torus_point(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> num(-12, 12), den(1, 9);
    TorusPoint t(n);
    for (auto& p : t) p = PhaseQ(num(rng), den(rng));
    return t;
}

} // namespace

TEST_CASE("sigma: normal ordering cocycle") {
    ThetaMatrix th = ThetaMatrix::two_torus(Rat(1, 3));
    MultiIndex e1{1, 0}, e2{0, 1}, zero{0, 0};
    CHECK(sigma(th, e1, e2).is_zero());           // already normal-ordered
    CHECK(sigma(th, e2, e1) == PhaseQ(-1, 3));    // theta_21 = -theta_12
    CHECK(sigma(th, {2, -1}, zero).is_zero());    // unit law

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> deg(-4, 4);
    for (int i = 0; i < 200; ++i) {
        MultiIndex k{deg(rng), deg(rng)}, l{deg(rng), deg(rng)}, m{deg(rng), deg(rng)};
        // cocycle identity, exact in Q/Z
        CHECK(sigma(th, k, l) + sigma(th, mi_add(k, l), m) ==
              sigma(th, l, m) + sigma(th, k, mi_add(l, m)));
    }
}

TEST_CASE("clock-shift relation pins the cocycle orientation") {
    for (long long q : {2, 3, 5}) {
        ThetaMatrix th = ThetaMatrix::two_torus(Rat(1, q));
        Eigen::MatrixXcd u1 = rep_matrix(NcTorusElement::generator(th, 0));
        Eigen::MatrixXcd u2 = rep_matrix(NcTorusElement::generator(th, 1));
        CScalar w = phase_to_scalar(PhaseQ(1, q));
        CHECK(mat_max_norm(u1 * u2 - w * (u2 * u1)) <= 1e-12);
        // rep(U_1) rep(U_2) rep(U_2)^-1 rep(U_1)^-1 = exp(2 pi i theta) after the swap
        Eigen::MatrixXcd lhs =
            u1 * u2 * u1.inverse() * u2.inverse();
        CHECK(mat_max_norm(lhs - w * Eigen::MatrixXcd::Identity(q, q)) <= 1e-9);
    }
}

TEST_CASE("rep_matrix is the multiplication oracle") {
    std::mt19937_64 rng(17);
    for (long long q : {2, 3, 5, 7}) {
        ThetaMatrix th = ThetaMatrix::two_torus(Rat(1, q));
        CHECK(mat_max_norm(rep_matrix(NcTorusElement::one(th)) -
                           Eigen::MatrixXcd::Identity(q, q)) == 0.0);
        for (int i = 0; i < 50; ++i) {
            NcTorusElement a = random_element(th, rng), b = random_element(th, rng);
            Eigen::MatrixXcd lhs = rep_matrix(multiply(a, b));
            Eigen::MatrixXcd rhs = rep_matrix(a) * rep_matrix(b);
            CHECK(mat_max_norm(lhs - rhs) <= 1e-9);
        }
    }
}

TEST_CASE("multiplication basics") {
    ThetaMatrix th = ThetaMatrix::two_torus(Rat(1, 3));
    std::mt19937_64 rng(5);

    SECTION("monomial product carries the sigma phase") {
        MultiIndex k{0, 1}, l{1, 0};
        NcTorusElement p = multiply(NcTorusElement::monomial(th, k, {1, 0}),
                                    NcTorusElement::monomial(th, l, {1, 0}));
        REQUIRE(p.coeffs().size() == 1);
        CHECK(approx_eq(p.coeff({1, 1}), phase_to_scalar(PhaseQ(-1, 3))));
    }
    SECTION("unit is neutral") {
        for (int i = 0; i < 20; ++i) {
            NcTorusElement a = random_element(th, rng);
            CHECK(multiply(NcTorusElement::one(th), a).approx_equal(a));
            CHECK(multiply(a, NcTorusElement::one(th)).approx_equal(a));
        }
    }
    SECTION("theta = 0 degenerates to Laurent polynomial product") {
        ThetaMatrix flat(2);
        NcTorusElement x = NcTorusElement::generator(flat, 0);
        NcTorusElement y = NcTorusElement::generator(flat, 1);
        CHECK(multiply(x, y).approx_equal(multiply(y, x)));
    }
    SECTION("associativity on random triples") {
        for (int i = 0; i < 30; ++i) {
            NcTorusElement a = random_element(th, rng), b = random_element(th, rng),
                           c = random_element(th, rng);
            NcTorusElement lhs = multiply(multiply(a, b), c);
            NcTorusElement rhs = multiply(a, multiply(b, c));
            CHECK(sub(lhs, rhs).norm_l1() <= tolerance() * double(1 + lhs.coeffs().size()));
        }
    }
    SECTION("support containment and grading") {
        for (int i = 0; i < 30; ++i) {
            NcTorusElement a = random_element(th, rng), b = random_element(th, rng);
            NcTorusElement p = multiply(a, b);
            for (auto& [m, v] : p.coeffs()) {
                bool in_sum = false;
                for (auto& [k, av] : a.coeffs())
                    for (auto& [l, bv] : b.coeffs())
                        if (mi_add(k, l) == m) in_sum = true;
                CHECK(in_sum);
                // graded product: the degree-m part comes only from k+l = m
                NcTorusElement part = NcTorusElement::zero(th);
                for (auto& [k, av] : a.coeffs())
                    part = add(part, multiply(isotypic_component(a, k),
                                              isotypic_component(b, mi_add(m, mi_neg(k)))));
                CHECK(approx_eq(part.coeff(m), v));
            }
        }
    }
}

TEST_CASE("star involution") {
    ThetaMatrix th = ThetaMatrix::two_torus(Rat(1, 3));
    std::mt19937_64 rng(29);

    CHECK(star(NcTorusElement::one(th)).approx_equal(NcTorusElement::one(th)));
    NcTorusElement s = NcTorusElement::monomial(th, MultiIndex{0, 0}, {0.5, 2.0});
    CHECK(star(s).approx_equal(NcTorusElement::monomial(th, MultiIndex{0, 0}, {0.5, -2.0})));

    // unitarity of U^{(1,1)}
    NcTorusElement u = NcTorusElement::monomial(th, MultiIndex{1, 1}, {1, 0});
    CHECK(multiply(star(u), u).approx_equal(NcTorusElement::one(th)));

    for (int i = 0; i < 30; ++i) {
        NcTorusElement a = random_element(th, rng), b = random_element(th, rng);
        CHECK(star(star(a)).approx_equal(a));
        CHECK(star(multiply(a, b)).approx_equal(multiply(star(b), star(a))));
        // oracle cross-check: rep(star a) = rep(a)^dagger
        CHECK(mat_max_norm(rep_matrix(star(a)) - rep_matrix(a).adjoint()) <= 1e-9);
    }
}

TEST_CASE("torus action") {
    ThetaMatrix th = ThetaMatrix::two_torus(Rat(1, 5));
    std::mt19937_64 rng(31);

    SECTION("t = 0 is the identity") {
        NcTorusElement a = random_element(th, rng);
        CHECK(act(TorusPoint{PhaseQ(), PhaseQ()}, a).approx_equal(a));
    }
    SECTION("act scales U^k by t^k, phase exact") {
        TorusPoint t{PhaseQ(1, 3), PhaseQ(1, 7)};
        MultiIndex k{2, -1};
        CHECK(act_phase(t, k) == PhaseQ(2, 3) + PhaseQ(-1, 7));
        NcTorusElement u = NcTorusElement::monomial(th, k, {1, 0});
        CHECK(act(t, u).approx_equal(
            NcTorusElement::monomial(th, k, phase_to_scalar(act_phase(t, k)))));
    }
    SECTION("automorphism property and inverse") {
        for (int i = 0; i < 30; ++i) {
            TorusPoint t = random_torus_point(2, rng);
            NcTorusElement a = random_element(th, rng), b = random_element(th, rng);
            CHECK(act(t, multiply(a, b)).approx_equal(multiply(act(t, a), act(t, b))));
            CHECK(act(torus_neg(t), act(t, a)).approx_equal(a));
        }
    }
    SECTION("fixed modes are exactly those with integral pairing") {
        TorusPoint t{PhaseQ(1, 2), PhaseQ(1, 3)};
        CHECK(act_phase(t, {2, 3}).is_zero());
        CHECK(!act_phase(t, {1, 0}).is_zero());
    }
}

TEST_CASE("isotypic components partition") {
    ThetaMatrix th = ThetaMatrix::two_torus(Rat(1, 3));
    std::mt19937_64 rng(37);
    NcTorusElement a = random_element(th, rng, 3, 6);
    MultiIndex k{1, 0}, l{0, 1};
    NcTorusElement u = add(NcTorusElement::monomial(th, k, {1, 0}),
                           NcTorusElement::monomial(th, l, {2, 0}));
    CHECK(isotypic_component(u, k).approx_equal(NcTorusElement::monomial(th, k, {1, 0})));
    CHECK(isotypic_component(a, {9, 9}).is_zero());

    NcTorusElement sum = NcTorusElement::zero(th);
    for (auto& [m, v] : a.coeffs()) sum = add(sum, isotypic_component(a, m));
    CHECK(sum.approx_equal(a));
}

TEST_CASE("invertibility certification") {
    ThetaMatrix th = ThetaMatrix::two_torus(Rat(1, 3));

    SECTION("monomial unit") {
        NcTorusElement a = NcTorusElement::monomial(th, MultiIndex{2, -1}, {3, 0});
        auto v = certify_invertible(a);
        REQUIRE(v.tag == InvertTag::Invertible);
        CHECK(v.certificate == InvertCertificate::Monomial);
        CHECK(multiply(a, v.inverse).approx_equal(NcTorusElement::one(th)));
        // homogeneous inverse of homogeneous unit, opposite degree
        REQUIRE(v.inverse.coeffs().size() == 1);
        CHECK(v.inverse.coeffs().begin()->first == MultiIndex{-2, 1});
    }
    SECTION("Neumann series") {
        NcTorusElement a = add(NcTorusElement::one(th),
                               NcTorusElement::monomial(th, MultiIndex{1, 0}, {0.4, 0}));
        auto v = certify_invertible(a);
        REQUIRE(v.tag == InvertTag::Invertible);
        CHECK(v.certificate == InvertCertificate::Neumann);
        CHECK(sub(multiply(a, v.inverse), NcTorusElement::one(th)).norm_l1() <= 1e-6);
    }
    SECTION("honest Unknown for a genuine non-unit") {
        ThetaMatrix flat(2);
        NcTorusElement a = add(NcTorusElement::generator(flat, 0),
                               NcTorusElement::generator(flat, 1));
        CHECK(certify_invertible(a).tag == InvertTag::Unknown);
    }
    SECTION("zero") {
        CHECK(certify_invertible(NcTorusElement::zero(th)).tag == InvertTag::Zero);
    }
}

TEST_CASE("exact monomial group matches float multiplication") {
    ThetaMatrix th = ThetaMatrix::two_torus(Rat(2, 7));
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long long> deg(-3, 3);
    for (int i = 0; i < 100; ++i) {
        Monomial a{PhaseQ(deg(rng), 5), {deg(rng), deg(rng)}};
        Monomial b{PhaseQ(deg(rng), 5), {deg(rng), deg(rng)}};
        Monomial ab = mono_mul(th, a, b);
        NcTorusElement ea = NcTorusElement::monomial(th, a);
        NcTorusElement eb = NcTorusElement::monomial(th, b);
        CHECK(multiply(ea, eb).approx_equal(NcTorusElement::monomial(th, ab)));
        Monomial inv = mono_inverse(th, a);
        CHECK(multiply(ea, NcTorusElement::monomial(th, inv))
                  .approx_equal(NcTorusElement::one(th)));
    }
}
