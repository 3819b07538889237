#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "test_util.hpp"
#include "z2s/zforms.hpp"

using namespace z2s;
using testutil::uniform;

namespace {

// Characteristic polynomial by Faddeev-LeVerrier; coefficients c_0..c_n of
// det(xI - A), highest first.
std::vector<Rat> charpoly(const IntMatrix& a) {
    const std::size_t n = a.rows();
    RatMatrix A = to_rat(a), M = RatMatrix(n, n);
    std::vector<Rat> c(n + 1);
    c[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        M = A * M + to_rat(IntMatrix::identity(n)).scaled(c[k - 1]);
        RatMatrix AM = A * M;
        Rat tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
        c[k] = -tr / Rat(static_cast<long>(k));
    }
    return c;
}

long sign_changes(const std::vector<Rat>& c) {
    long s = 0;
    int last = 0;
    for (const auto& x : c) {
        int sg = sgn(x);
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++s;
        last = sg;
    }
    return s;
}

// Real-rooted polynomial: Descartes' rule counts the positive roots exactly.
long signature_oracle(const IntMatrix& a) {
    auto c = charpoly(a);
    long pos = sign_changes(c);
    for (std::size_t k = 0; k < c.size(); ++k)
        if ((c.size() - 1 - k) % 2 == 1) c[k] = -c[k];
    long neg = sign_changes(c);
    return pos - neg;
}

IntMatrix e8() {
    IntMatrix g(8, 8);
    for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
    const int edges[][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 7}};
    for (auto& e : edges) g(e[0], e[1]) = g(e[1], e[0]) = -1;
    return g;
}

IntMatrix random_definite(std::size_t n) {
    for (;;) {
        IntMatrix b = testutil::random_matrix(n, n, 2);
        if (det(b) == 0) continue;
        IntMatrix g = b.transpose() * b;
        bool small = true;
        for (std::size_t i = 0; i < n; ++i) small = small && g(i, i) <= 8;
        if (small) return g;
    }
}

}  // namespace

TEST_CASE("symmetrisation and canonical reps") {
    QuadFormZ q(IntMatrix{{4, 4}, {0, 2}});
    CHECK(q.symmetrize().gram == IntMatrix{{8, 4}, {4, 4}});
    QuadFormZ qt(IntMatrix{{12, 32, -16}, {0, 22, -22}, {0, 0, 6}});
    CHECK(qt.symmetrize().gram == qt.rep + qt.rep.transpose());
    CHECK(QuadFormZ(IntMatrix(2, 2)).symmetrize().gram.is_zero());
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = uniform(1, 4);
        IntMatrix r = testutil::random_matrix(n, n, 5);
        IntMatrix b = testutil::random_matrix(n, n, 5);
        CHECK(canonicalize(canonicalize(r)) == canonicalize(r));
        CHECK(QuadFormZ(r) == QuadFormZ(r + b - b.transpose()));
        CHECK(QuadFormZ(r).symmetrize().gram == QuadFormZ(r + b - b.transpose()).symmetrize().gram);
    }
    CHECK(QuadFormZ(IntMatrix{{2, 2}, {-2, 2}}) == QuadFormZ(IntMatrix{{2, 0}, {0, 2}}));
}

TEST_CASE("constructors") {
    CHECK(hyperbolic(0).rank() == 0);
    CHECK(hyperbolic(1).rep == IntMatrix{{0, 1}, {0, 0}});
    CHECK(det(hyperbolic(2).symmetrize().gram) == 1);
    CHECK(x_form(1).rep == IntMatrix{{2}});
    CHECK(x_form(1).symmetrize().gram == IntMatrix{{4}});
    CHECK(x_form(2).rep == IntMatrix{{2, 2}, {0, 1}});
    CHECK(x_form(3).rep == IntMatrix{{2, 2, 2}, {0, 1, 1}, {0, 0, 1}});
    CHECK(x_form(-2).rep == IntMatrix{{-2, -2}, {0, -1}});
    for (long n = -6; n <= 6; ++n) {
        if (n == 0) continue;
        SymFormZ a = x_form(n).symmetrize();
        CHECK(is_definite(a));
        CHECK(signature(a) == n);
    }
    CHECK(theta_ab(1, 1).rep == IntMatrix{{0, 2}, {0, 0}});
    CHECK(theta_ab(2, 0) == x_form(2));
    CHECK(theta_ab(2, 1) == direct_sum(x_form(1), hyperbolic(1)));
    CHECK(signature(theta_ab(2, 1).symmetrize()) == 1);
    CHECK_THROWS_AS(theta_ab(0, 0), InvalidSignature);
}

TEST_CASE("theta_ab rank, signature, nondegeneracy") {
    for (long a = 0; a <= 8; ++a)
        for (long b = 0; a + b <= 8; ++b) {
            if (a + b < 1) continue;
            QuadFormZ t = theta_ab(a, b);
            SymFormZ s = t.symmetrize();
            CHECK(t.rank() == static_cast<std::size_t>(a + b));
            CHECK(is_nondegenerate(s));
            CHECK(signature(s) == a - b);
            CHECK(signature_oracle(s.gram) == a - b);
        }
}

TEST_CASE("signature against Descartes count of the characteristic polynomial") {
    CHECK(signature(SymFormZ(IntMatrix::identity(5))) == 5);
    CHECK(signature(SymFormZ(IntMatrix{{0, 1}, {1, 0}})) == 0);
    CHECK(signature(x_form(3).symmetrize()) == 3);
    CHECK_THROWS_AS(signature(SymFormZ(IntMatrix{{1, 1}, {1, 1}})), DegenerateForm);
    int done = 0;
    while (done < 150) {
        const std::size_t n = uniform(1, 5);
        IntMatrix b = testutil::random_matrix(n, n, 4);
        IntMatrix g = b + b.transpose();
        if (det(g) == 0) continue;
        CHECK(signature(SymFormZ(g)) == signature_oracle(g));
        ++done;
    }
}

TEST_CASE("parity and definiteness predicates") {
    SymFormZ d22(IntMatrix{{2, 0}, {0, 2}});
    CHECK(is_even(d22));
    CHECK(is_definite(d22));
    CHECK_FALSE(is_nonsingular(d22));
    SymFormZ d1m1(IntMatrix{{1, 0}, {0, -1}});
    CHECK_FALSE(is_even(d1m1));
    CHECK_FALSE(is_definite(d1m1));
    CHECK(is_nonsingular(d1m1));
    SymFormZ E8(e8());
    CHECK(is_even(E8));
    CHECK(is_definite(E8));
    CHECK(det(E8.gram) == 1);
    CHECK(is_nonsingular(E8));
}

TEST_CASE("odd indefinite classification") {
    CHECK(classify_odd_indefinite(2, 0).gram == IntMatrix{{1, 0}, {0, -1}});
    CHECK(classify_odd_indefinite(3, 1).gram == IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}});
    CHECK(classify_odd_indefinite(4, -2).gram(3, 3) == -1);
    CHECK(classify_odd_indefinite(4, -2).gram(0, 0) == 1);
    CHECK_THROWS_AS(classify_odd_indefinite(2, 2), InvalidSignature);
    CHECK_THROWS_AS(classify_odd_indefinite(3, 0), InvalidSignature);
    for (long r = 2; r <= 8; ++r)
        for (long s = -r + 2; s <= r - 2; s += 2) {
            SymFormZ f = classify_odd_indefinite(r, s);
            CHECK(f.rank() == static_cast<std::size_t>(r));
            CHECK(signature(f) == s);
            CHECK_FALSE(is_even(f));
            CHECK_FALSE(is_definite(f));
            CHECK(is_nonsingular(f));
        }
}

TEST_CASE("even sublattice") {
    auto r = even_sublattice_form(SymFormZ(IntMatrix{{1, 0}, {0, -1}}));
    CHECK(r.basis == IntMatrix{{2, 1}, {0, 1}});
    CHECK(r.restricted.symmetrize().gram == IntMatrix{{4, 2}, {2, 0}});
    auto r3 = even_sublattice_form(SymFormZ(IntMatrix::identity(3)));
    CHECK(r3.restricted.symmetrize().gram == x_form(3).symmetrize().gram);
    auto r1 = even_sublattice_form(SymFormZ(IntMatrix{{1}}));
    CHECK(r1.restricted.symmetrize().gram == IntMatrix{{4}});
    CHECK_THROWS_AS(even_sublattice_form(SymFormZ(IntMatrix{{2, 1}, {1, 2}})), FormAlreadyEven);
    for (long rk = 1; rk <= 6; ++rk)
        for (long s = -rk; s <= rk; s += 2) {
            SymFormZ a(IntMatrix::identity(rk));
            for (long i = 0; i < (rk - s) / 2; ++i) a.gram(i, i) = -1;
            IntMatrix u = testutil::random_unimodular(rk);
            SymFormZ moved(u.transpose() * a.gram * u);
            auto es = even_sublattice_form(moved);
            SymFormZ g = es.restricted.symmetrize();
            CHECK(is_even(g));
            CHECK(g.gram == es.basis.transpose() * moved.gram * es.basis);
            CHECK(cokernel_invariants(es.basis) == Cokernel{0, {2}});
            // every basis vector has even square, and so the span is the even sublattice
            for (std::size_t j = 0; j < es.basis.cols(); ++j) {
                IntMatrix v = es.basis.col(j);
                CHECK(mpz_even_p((v.transpose() * moved.gram * v)(0, 0).get_mpz_t()));
            }
        }
}

TEST_CASE("automorphism groups of definite forms") {
    auto a22 = aut_group(SymFormZ(IntMatrix{{2, 0}, {0, 2}}));
    CHECK(a22.size() == 8);
    std::set<std::vector<long>> got;
    for (const auto& m : a22) got.insert({m(0, 0).get_si(), m(0, 1).get_si(), m(1, 0).get_si(), m(1, 1).get_si()});
    std::set<std::vector<long>> want;
    for (long e1 : {1, -1})
        for (long e2 : {1, -1}) {
            want.insert({e1, 0, 0, e2});
            want.insert({0, e1, e2, 0});
        }
    CHECK(got == want);
    QuadFormZ qt(IntMatrix{{12, 32, -16}, {0, 22, -22}, {0, 0, 6}});
    CHECK(aut_group(qt.symmetrize()).size() == 48);
    CHECK(aut_group(QuadFormZ(IntMatrix{{4, 4, 4}, {0, 2, 2}, {0, 0, 2}}).symmetrize()).size() == 48);
}

TEST_CASE("4H+ has four automorphisms with e1 e2 = 1") {
    SymFormZ a = QuadFormZ(IntMatrix{{0, 4}, {0, 0}}).symmetrize();
    auto g = aut_group(a);
    REQUIRE(g.size() == 4);
    for (const auto& m : g) {
        bool diag = m(0, 1) == 0 && m(1, 0) == 0;
        bool anti = m(0, 0) == 0 && m(1, 1) == 0;
        CHECK((diag || anti));
        if (diag) CHECK(m(0, 0) * m(1, 1) == 1);
        if (anti) CHECK(m(0, 1) * m(1, 0) == 1);
    }
    CHECK(aut_group(SymFormZ(IntMatrix{{1, 0}, {0, -1}})).size() == 4);
    CHECK_THROWS_AS(aut_group(SymFormZ(IntMatrix{{1, 0}, {0, -2}})), IndefiniteForm);
    CHECK_THROWS_AS(aut_group(SymFormZ(IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}})), IndefiniteForm);
}

TEST_CASE("aut_group is a group") {
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = uniform(1, 3);
        IntMatrix g = random_definite(n);
        if (uniform(0, 1)) g = -g;
        auto aut = aut_group(SymFormZ(g));
        std::set<std::vector<long>> keys;
        auto key = [](const IntMatrix& m) {
            std::vector<long> k;
            for (const auto& x : m.data()) k.push_back(x.get_si());
            return k;
        };
        for (const auto& m : aut) {
            CHECK(m.transpose() * g * m == g);
            keys.insert(key(m));
        }
        CHECK(keys.size() == aut.size());
        CHECK(keys.count(key(IntMatrix::identity(n))) == 1);
        for (std::size_t i = 0; i < aut.size(); i += 1 + aut.size() / 8) {
            CHECK(keys.count(key(unimodular_inverse(aut[i]))) == 1);
            for (std::size_t j = 0; j < aut.size(); j += 1 + aut.size() / 8)
                CHECK(keys.count(key(aut[i] * aut[j])) == 1);
        }
    }
}

TEST_CASE("isometry search") {
    SymFormZ a = QuadFormZ(IntMatrix{{4, 4}, {0, 2}}).symmetrize();
    SymFormZ b(IntMatrix{{4, 0}, {0, 4}});
    auto w = is_isometric(a, b);
    REQUIRE(w.has_value());
    CHECK(w->transpose() * a.gram * *w == b.gram);
    CHECK_FALSE(is_isometric(SymFormZ(IntMatrix{{2}}), SymFormZ(IntMatrix{{4}})).has_value());
    CHECK_THROWS_AS(is_isometric(SymFormZ(IntMatrix{{2}}), b), RankMismatch);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = uniform(1, 4);
        IntMatrix g = random_definite(n);
        IntMatrix m = testutil::random_unimodular(n);
        SymFormZ bb(m.transpose() * g * m);
        auto iso = is_isometric(SymFormZ(g), bb);
        REQUIRE(iso.has_value());
        CHECK(iso->transpose() * g * *iso == bb.gram);
    }
}

TEST_CASE("short vectors are exact") {
    SymFormZ a(IntMatrix{{2, 1}, {1, 2}});
    auto v = short_vectors(a, Int(2));
    CHECK(v.size() == 7);  // zero and the six roots of A2
    for (int t = 0; t < 20; ++t) {
        IntMatrix g = random_definite(3);
        auto vs = short_vectors(SymFormZ(g), Int(6));
        // |x_i| <= sqrt(bound * (A^-1)_ii)
        RatMatrix inv = rational_inverse(g);
        long box[3];
        for (int i = 0; i < 3; ++i) box[i] = static_cast<long>(std::sqrt(6 * inv(i, i).get_d())) + 1;
        std::size_t brute = 0;
        for (long x = -box[0]; x <= box[0]; ++x)
            for (long y = -box[1]; y <= box[1]; ++y)
                for (long z = -box[2]; z <= box[2]; ++z) {
                    IntMatrix c{{x}, {y}, {z}};
                    if ((c.transpose() * g * c)(0, 0) <= 6) ++brute;
                }
        CHECK(vs.size() == brute);
    }
}
