#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "test_util.hpp"
#include "z2s/errors.hpp"
#include "z2s/gmforms.hpp"

using namespace z2s;
using namespace oracle;
using testutil::uniform;

TEST_CASE("evaluate_q") {
    Z4QuadForm one(identity_bits(1), {1});
    CHECK(evaluate_q(one, {0}) == 0);
    CHECK(evaluate_q(one, {1}) == 1);
    Z4QuadForm two(identity_bits(2), {1, 1});
    CHECK(evaluate_q(two, {1, 1}) == 2);
    for (int t = 0; t < 50; ++t) {
        Z4QuadForm f = random_z4(uniform(1, 5));
        for (unsigned long m = 0; m < (1ul << f.dim()); ++m)
            CHECK(evaluate_q(f, bits_of(m, f.dim())) == q_oracle(f, bits_of(m, f.dim())));
    }
    CHECK_THROWS_AS(evaluate_q(two, {1}), DimMismatch);
    CHECK_THROWS_AS(Z4QuadForm(identity_bits(1), {2}), InvalidParity);
    CHECK_THROWS_AS(Z4QuadForm(BitMatrix{{0, 1}, {0, 0}}, {0, 0}), ShapeMismatch);
}

TEST_CASE("Brown-Kervaire examples") {
    CHECK(brown_kervaire(Z4QuadForm(identity_bits(1), {1})) == 1);
    CHECK(brown_kervaire(Z4QuadForm(identity_bits(1), {3})) == 7);
    Z4QuadForm hyp(BitMatrix{{0, 1}, {1, 0}}, {0, 0});
    GaussSum g = gauss_sum(hyp);
    CHECK(g.re == 2);
    CHECK(g.im == 0);
    CHECK(brown_kervaire(hyp) == 0);
    CHECK(brown_kervaire(Z4QuadForm(BitMatrix{{0, 1}, {1, 0}}, {2, 2})) == 4);
    CHECK_THROWS_AS(brown_kervaire(Z4QuadForm(BitMatrix{{0, 0}, {0, 1}}, {0, 1})), DegenerateForm);
}

TEST_CASE("Gauss sums have modulus sqrt(2^dim)") {
    for (int t = 0; t < 200; ++t) {
        Z4QuadForm f = random_nondegenerate_z4(uniform(1, 8));
        GaussSum g = gauss_sum(f);
        std::complex<double> o = gauss_oracle(f);
        CHECK(double(g.re) == o.real());
        CHECK(double(g.im) == o.imag());
        CHECK(g.re * g.re + g.im * g.im == (std::int64_t(1) << f.dim()));
        const double ph = std::arg(o) / (M_PI / 4);
        const int beta = ((int(std::lround(ph)) % 8) + 8) % 8;
        CHECK(std::abs(ph - std::round(ph)) < 1e-9);
        CHECK(brown_kervaire(f) == beta);
    }
}

TEST_CASE("Brown-Kervaire is additive") {
    for (int t = 0; t < 100; ++t) {
        Z4QuadForm x = random_nondegenerate_z4(uniform(1, 4));
        Z4QuadForm y = random_nondegenerate_z4(uniform(1, 4));
        CHECK(brown_kervaire(direct_sum(x, y)) == (brown_kervaire(x) + brown_kervaire(y)) % 8);
    }
}

TEST_CASE("Arf invariant") {
    Z2QuadForm h0{{{0, 1}, {1, 0}}, {0, 0}};
    Z2QuadForm h1{{{0, 1}, {1, 0}}, {1, 1}};
    CHECK(arf(h0) == 0);
    CHECK(arf(h1) == 1);
    CHECK(arf(Z2QuadForm{{{0, 1}, {1, 0}}, {1, 0}}) == 0);
    auto sum = [](const Z2QuadForm& a, const Z2QuadForm& b) {
        const std::size_t n = a.q_basis.size(), m = b.q_basis.size();
        Z2QuadForm s{BitMatrix(n + m, Bits(n + m, 0)), a.q_basis};
        s.q_basis.insert(s.q_basis.end(), b.q_basis.begin(), b.q_basis.end());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s.bilinear[i][j] = a.bilinear[i][j];
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) s.bilinear[n + i][n + j] = b.bilinear[i][j];
        return s;
    };
    CHECK(arf(sum(h0, h0)) == 0);
    CHECK(arf(sum(h0, h1)) == 1);
    CHECK(arf(sum(h1, h1)) == 0);
    CHECK_THROWS_AS(arf(Z2QuadForm{{{0, 0}, {0, 0}}, {0, 0}}), DegenerateForm);
}

TEST_CASE("Massey range and extremality") {
    CHECK(massey_range(1, 0) == std::vector<long>{-2, 2});
    CHECK(massey_range(2, 0) == std::vector<long>{-4, 0, 4});
    CHECK(massey_range(3, 2) == std::vector<long>{-2, 2, 6, 10});
    CHECK(is_extremal({2, 4, 0, 1}));
    CHECK_FALSE(is_extremal({2, 0, 0, 1}));
    CHECK(is_extremal({3, 10, 2, 1}));
    CHECK_THROWS_AS(is_extremal({2, 2, 0, 1}), EulerOutOfRange);
    for (long h = 1; h <= 10; ++h)
        for (long sk = -6; sk <= 6; sk += 2) {
            auto r = massey_range(h, sk);
            CHECK(r.size() == std::size_t(h + 1));
            for (std::size_t i = 0; i < r.size(); ++i) {
                SurfaceInvariants inv{h, r[i], sk, 1};
                CHECK(is_extremal(inv) == (i == 0 || i + 1 == r.size()));
                const long s = inv.sigma_cover();
                CHECK(std::abs(s) <= h);
                CHECK(((s - h) % 2 + 2) % 2 == 0);
            }
        }
}

TEST_CASE("standard forms and the Guillou-Marin congruence") {
    Z4QuadForm a = standard_gm_form(1, -2);
    CHECK(a.q_basis == std::vector<int>{1});
    CHECK(brown_kervaire(a) == 1);
    Z4QuadForm b = standard_gm_form(1, 2);
    CHECK(b.q_basis == std::vector<int>{3});
    CHECK(brown_kervaire(b) == 7);
    Z4QuadForm c = standard_gm_form(2, 0);
    CHECK(brown_kervaire(c) == 0);
    CHECK(check_gm_congruence(a, -2, 0));
    CHECK_FALSE(check_gm_congruence(a, 2, 0));
    CHECK(check_gm_congruence(standard_gm_form(3, -6), -6, 0));
    CHECK(brown_kervaire(standard_gm_form(3, -6)) == 3);
    CHECK_THROWS_AS(check_gm_congruence(a, 1, 0), OddEulerNumber);
    CHECK_THROWS_AS(standard_gm_form(2, 2), EulerOutOfRange);
    for (long h = 1; h <= 6; ++h)
        for (long e : massey_range(h, 0)) {
            Z4QuadForm f = standard_gm_form(h, e);
            CHECK(f.dim() == std::size_t(h));
            CHECK(check_gm_congruence(f, e, 0));
        }
}

TEST_CASE("Z/4 isometries") {
    Z4QuadForm x(identity_bits(2), {1, 3}), y(identity_bits(2), {3, 1});
    auto m = z4_isometry(x, y);
    REQUIRE(m.has_value());
    for (unsigned long v = 0; v < 4; ++v) {
        Bits img(2, 0);
        for (std::size_t j = 0; j < 2; ++j)
            if ((v >> j) & 1)
                for (std::size_t i = 0; i < 2; ++i) img[i] ^= (*m)[i][j];
        CHECK(evaluate_q(y, img) == evaluate_q(x, bits_of(v, 2)));
    }
    CHECK_FALSE(z4_isometry(Z4QuadForm(identity_bits(2), {1, 1}), Z4QuadForm(identity_bits(2), {3, 3})));
    for (int t = 0; t < 20; ++t) {
        Z4QuadForm f = random_nondegenerate_z4(uniform(1, 4));
        CHECK(z4_isometry(f, f).has_value());
    }
}
