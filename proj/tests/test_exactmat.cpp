#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "test_util.hpp"
#include "z2s/exactmat.hpp"
#include "z2s/zforms.hpp"

using namespace z2s;
using namespace oracle;
using testutil::random_matrix;
using testutil::uniform;

TEST_CASE("smith normal form on appendix matrices") {
    CHECK(smith_normal_form(IntMatrix::identity(3)).D == IntMatrix::identity(3));
    auto s = smith_normal_form(IntMatrix{{4, 0}, {0, 4}});
    CHECK(s.diagonal() == std::vector<Int>{4, 4});
    QuadFormZ q(IntMatrix{{4, 4, 4}, {0, 2, 2}, {0, 0, 2}});
    CHECK(cokernel_invariants(q.symmetrize().gram).torsion == std::vector<Int>{2, 2, 8});
    CHECK(cokernel_invariants(IntMatrix(1, 1)) == Cokernel{1, {}});
    auto c3 = cokernel_invariants(x_form(3).scaled(2).symmetrize().gram);
    CHECK(c3 == Cokernel{0, {2, 2, 8}});
    auto c4 = cokernel_invariants(x_form(4).scaled(2).symmetrize().gram);
    CHECK(c4 == Cokernel{0, {2, 2, 4, 4}});
}

TEST_CASE("smith normal form fuzz against determinantal divisors and coset enumeration") {
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t r = uniform(1, 3), c = uniform(1, 3);
        IntMatrix m = random_matrix(r, c, 4);
        const IntMatrix copy = m;
        auto s = smith_normal_form(m);
        REQUIRE(m == copy);
        CHECK(s.U * m * s.V == s.D);
        CHECK(is_unimodular(s.U));
        CHECK(is_unimodular(s.V));
        auto d = s.diagonal();
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j) CHECK(s.D(i, j) == 0);
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            CHECK(d[i] >= 0);
            if (d[i] == 0)
                CHECK(d[i + 1] == 0);
            else
                CHECK(d[i + 1] % d[i] == 0);
        }
        Int prod = 1;
        for (std::size_t k = 1; k <= std::min(r, c); ++k) {
            prod *= d[k - 1];
            CHECK(abs(minor_gcd(m, k)) == prod);
        }
        auto coker = cokernel_invariants(m);
        std::size_t rank = 0;
        for (const auto& x : d)
            if (x != 0) ++rank;
        CHECK(coker.free_rank == r - rank);

        if (r == c && det(m) != 0) {
            CHECK(torsion_matches_cosets(m, coker.torsion));
        }
    }
}

TEST_CASE("rational inverse") {
    RatMatrix inv = rational_inverse(IntMatrix{{4, 0}, {0, 4}});
    CHECK(inv(0, 0) == Rat(1, 4));
    CHECK(inv(0, 1) == 0);
    CHECK(rational_inverse(IntMatrix::identity(3)) == to_rat(IntMatrix::identity(3)));
    CHECK_THROWS_AS(rational_inverse(IntMatrix{{1, 2}, {2, 4}}), SingularMatrix);
    int done = 0;
    while (done < 200) {
        const std::size_t n = uniform(1, 4);
        IntMatrix m = random_matrix(n, n, 5);
        if (det(m) == 0) continue;
        CHECK(to_rat(m) * rational_inverse(m) == to_rat(IntMatrix::identity(n)));
        ++done;
    }
    for (int t = 0; t < 20; ++t) {
        IntMatrix u = testutil::random_unimodular(4);
        IntMatrix ui = unimodular_inverse(u);
        CHECK(u * ui == IntMatrix::identity(4));
        CHECK(is_integral(rational_inverse(u)));
    }
}

TEST_CASE("determinant against cofactor expansion") {
    std::function<Int(const IntMatrix&)> cof = [&](const IntMatrix& m) -> Int {
        const std::size_t n = m.rows();
        if (n == 0) return 1;
        Int s = 0;
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (std::size_t i = 1; i < n; ++i)
                for (std::size_t k = 0, c = 0; k < n; ++k)
                    if (k != j) minor(i - 1, c++) = m(i, k);
            Int t = m(0, j) * cof(minor);
            s += j % 2 ? Int(-t) : t;
        }
        return s;
    };
    CHECK(det(IntMatrix::identity(4)) == 1);
    CHECK(det(IntMatrix{{4, 4}, {0, 2}}) == 8);
    CHECK(det(IntMatrix{{2, 0}, {0, 2}}) == 4);
    CHECK_THROWS_AS(det(IntMatrix(2, 3)), NonSquare);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = uniform(1, 5);
        IntMatrix m = random_matrix(n, n, 6);
        CHECK(det(m) == cof(m));
        CHECK(det(to_rat(m)) == Rat(cof(m)));
    }
}

TEST_CASE("summand test") {
    CHECK_FALSE(has_integer_left_inverse(IntMatrix{{2}, {0}}));
    CHECK(has_integer_left_inverse(IntMatrix{{1}, {0}}));
    // a lagrangian of H+(Z): span(e1)
    CHECK(has_integer_left_inverse(IntMatrix{{1}, {0}}));
    CHECK(has_integer_left_inverse(IntMatrix{{1, 0}, {0, 0}, {0, 1}}));
    for (int t = 0; t < 50; ++t) {
        IntMatrix x = random_matrix(3, 2, 3);
        if (!has_integer_left_inverse(x)) continue;
        IntMatrix w = complete_basis(x);
        CHECK(is_unimodular(hcat(x, w)));
    }
    CHECK_THROWS_AS(complete_basis(IntMatrix{{2}, {0}}), PreconditionViolated);
}

TEST_CASE("integral solve") {
    IntMatrix x{{1, 0}, {2, 1}, {0, 3}};
    IntMatrix c{{4}, {-5}};
    IntMatrix out;
    REQUIRE(solve_integral(x, x * c, out));
    CHECK(out == c);
    CHECK_FALSE(solve_integral(IntMatrix{{2}}, IntMatrix{{1}}, out));
}

TEST_CASE("matrix text format") {
    IntMatrix m{{1, -2, 3}, {0, 40, -5}};
    CHECK(parse_matrix(format_matrix(m)) == m);
    CHECK(parse_inline_matrix("2 2 / 0 1") == IntMatrix{{2, 2}, {0, 1}});
    CHECK_THROWS_AS(parse_matrix("2 2 1 2 3"), ParseError);
    CHECK_THROWS_AS(parse_inline_matrix("1 2 / 3"), ParseError);
    CHECK(rat_str(Rat(6, 8)) == "3/4");
    CHECK(frac_mod1(Rat(-1, 4)) == Rat(3, 4));
    CHECK(mod_floor(Int(-3), Int(8)) == 5);
}

TEST_CASE("big integer growth stays exact") {
    IntMatrix m(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) m(i, j) = Int(1) << (10 * (i + j));
    m(0, 0) += 1;
    auto s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
}
