#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "z2s/errors.hpp"
#include "z2s/json_io.hpp"

using namespace z2s;

TEST_CASE("verdicts round trip through json") {
    std::size_t n = 0;
    for (long h = 1; h <= 9; ++h)
        for (long sk : {-2, 0, 2})
            for (long d : {1, 3})
                for (bool stab : {false, true})
                    for (long e : massey_range(h, sk)) {
                        DecideOptions o;
                        o.stabilized = stab;
                        o.definite_bound = 3;
                        Verdict v = decide({h, e, sk, d}, o);
                        Json j = to_json(v);
                        Json back = to_json(verdict_from_json(Json::parse(j.dump())));
                        CHECK(back == j);
                        ++n;
                    }
    CHECK(n > 100);
}

TEST_CASE("verdict schema") {
    Json j = to_json(decide({3, -6, 0, 1}));
    for (const char* k : {"applicable_theorem", "route", "reason", "sigma_cover", "a", "b", "extremal", "theta",
                          "linkform", "orbit_count", "ell5_route", "notes"})
        CHECK(j.contains(k));
    CHECK(j["applicable_theorem"] == "TheoremB");
    CHECK(j["linkform"]["nu_generators"] == Json::array({"1/2", "1/2", "3/16"}));
    Json none = to_json(decide({9, 18, 0, 1}));
    CHECK(none["applicable_theorem"] == "None");
    CHECK(none["theta"].is_null());
    none["reason"] = "";
    CHECK_THROWS_AS(verdict_from_json(none), ParseError);
    CHECK_THROWS_AS(verdict_from_json(Json::object()), ParseError);
}

TEST_CASE("integers and linking forms") {
    Int big("123456789012345678901234567890");
    CHECK(to_json(big).is_string());
    CHECK(int_from_json(to_json(big)) == big);
    CHECK(int_from_json(to_json(Int(-7))) == -7);
    FinQuadLinkForm L = boundary_form(theta_ab(3, 0).scaled(2));
    CHECK(linkform_from_json(to_json(L)) == L);
    IntMatrix m{{1, -2}, {3, 4}};
    CHECK(int_matrix_from_json(to_json(m)) == m);
    CHECK_THROWS_AS(int_matrix_from_json(Json::array({Json::array({1, 2}), Json::array({1})})), ParseError);
}
