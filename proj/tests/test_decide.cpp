#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "z2s/decide.hpp"
#include "z2s/errors.hpp"

using namespace z2s;

TEST_CASE("decide examples") {
    Verdict v = decide({2, 0, 0, 1});
    CHECK(v.applicable_theorem == Theorem::TheoremB);
    CHECK(v.a == 1);
    CHECK(v.b == 1);
    CHECK(v.ell5_route == "direct bAut");

    Verdict w = decide({3, -6, 0, 1});
    CHECK(w.applicable_theorem == Theorem::TheoremB);
    CHECK(w.route == Route::Appendix_bAut);
    CHECK(w.sigma_cover == 3);
    CHECK(w.extremal);
    CHECK(w.orbit_count == std::optional<std::size_t>(1));
    REQUIRE(w.linkform.has_value());
    CHECK(w.linkform->factors == std::vector<Int>{2, 2, 8});

    Verdict n = decide({9, 18, 0, 1});
    CHECK(n.applicable_theorem == Theorem::None);
    CHECK(n.reason.find("definite h=9 beyond classification") != std::string::npos);

    Verdict k = decide({4, 0, 0, 1});
    CHECK(k.applicable_theorem == Theorem::TheoremB);
    CHECK(k.route == Route::Nikulin);

    CHECK(decide({3, -6, 0, 1}, {.closed = true}).applicable_theorem == Theorem::TheoremA);
}

TEST_CASE("decide validation") {
    CHECK_THROWS_AS(decide({2, 2, 0, 1}), EulerOutOfRange);
    CHECK_THROWS_AS(decide({2, 12, 0, 1}), EulerOutOfRange);
    CHECK_THROWS_AS(decide({2, 0, 1, 1}), InvalidParity);
    CHECK_THROWS_AS(decide({2, 0, 0, 2}), InvalidParity);
    CHECK_THROWS_AS(decide({2, 4, 2, 1}, {.closed = true}), PreconditionViolated);
}

TEST_CASE("every small genus is covered") {
    for (long h = 1; h <= 3; ++h)
        for (long e : massey_range(h, 0)) {
            Verdict v = decide({h, e, 0, 1});
            CHECK(v.applicable_theorem == Theorem::TheoremB);
            CHECK(v.reason.empty());
        }
}

TEST_CASE("definite bound") {
    Verdict v = decide({3, -6, 0, 1}, {.definite_bound = 2});
    CHECK(v.applicable_theorem == Theorem::None);
    CHECK_FALSE(v.reason.empty());
    CHECK(decide({4, 8, 0, 1}).applicable_theorem == Theorem::TheoremB);
    CHECK(decide({4, 8, 0, 1}, {.definite_bound = 3}).applicable_theorem == Theorem::None);
}

TEST_CASE("determinant other than one") {
    Verdict v = decide({3, 2, 0, 3});
    CHECK(v.applicable_theorem == Theorem::None);
    CHECK(v.reason.find("form classification unavailable") != std::string::npos);
}

TEST_CASE("stabilisation always applies") {
    for (long h = 1; h <= 8; ++h)
        for (long sk = -4; sk <= 4; sk += 2)
            for (long d : {1, 3, 5, 7, 9, 15})
                for (long e : massey_range(h, sk)) {
                    Verdict v = decide({h, e, sk, d}, {.stabilized = true});
                    CHECK(v.applicable_theorem == Theorem::TheoremC_stabilized);
                    CHECK(v.route == Route::Stabilized_Nikulin);
                }
}

TEST_CASE("decide is deterministic") {
    for (long e : massey_range(3, 0)) {
        Verdict x = decide({3, e, 0, 1}), y = decide({3, e, 0, 1});
        CHECK(x.applicable_theorem == y.applicable_theorem);
        CHECK(x.route == y.route);
        CHECK(x.orbit_count == y.orbit_count);
        CHECK(x.theta == y.theta);
    }
}

TEST_CASE("appendix reproduction") {
    AppendixReport r = reproduce_appendix();
    CHECK(r.all_ok());
    CHECK(r.notices.empty());
    CHECK(r.checks.size() > 10);
    CHECK_FALSE(format_report(r).empty());

    AppendixExpectations bad;
    bad.h3_nu = "3/16 1/2 1/2";
    try {
        reproduce_appendix(bad);
        FAIL("mismatch not detected");
    } catch (const MismatchDetected& e) {
        CHECK(std::string(e.what()).find("11/16 1/2 1/2") != std::string::npos);
    }
    bad = {};
    bad.h3_prefilter = 191;
    CHECK_THROWS_AS(reproduce_appendix(bad), MismatchDetected);

    AppendixReport s = reproduce_appendix({}, 1);
    CHECK(s.all_ok());
    CHECK(s.notices.size() == 2);
    CHECK(s.checks.empty());
    AppendixReport t = reproduce_appendix({}, 2);
    CHECK(t.notices.size() == 1);
    CHECK_FALSE(t.checks.empty());
}
