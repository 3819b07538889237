#include "z2s/json_io.hpp"

#include "z2s/errors.hpp"

namespace z2s {

Json to_json(const Int& x) {
    if (x.fits_slong_p()) return Json(x.get_si());
    return Json(x.get_str());
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        Int x;
        if (x.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad integer string");
        return x;
    }
    throw ParseError("expected an integer");
}

Json to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

IntMatrix int_matrix_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected a matrix");
    const std::size_t r = j.size(), c = r ? j[0].size() : 0;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!j[i].is_array() || j[i].size() != c) throw ParseError("ragged matrix");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = int_from_json(j[i][k]);
    }
    return m;
}

Json to_json(const FinQuadLinkForm& L) {
    FinQuadLinkForm r = L.reduced();
    Int den = 1;
    for (const auto& q : r.R.data()) den = lcm(den, Int(q.get_den()));
    IntMatrix num(r.R.rows(), r.R.cols());
    for (std::size_t i = 0; i < num.rows(); ++i)
        for (std::size_t j = 0; j < num.cols(); ++j) num(i, j) = Rat(r.R(i, j) * den).get_num();
    Json f = Json::array(), nu = Json::array();
    for (const auto& d : r.factors) f.push_back(to_json(d));
    for (std::size_t i = 0; i < r.factors.size(); ++i) nu.push_back(rat_str(r.nu_generator(i)));
    return {{"factors", f}, {"denominator", to_json(den)}, {"numerators", to_json(num)}, {"nu_generators", nu}};
}

FinQuadLinkForm linkform_from_json(const Json& j) {
    std::vector<Int> f;
    for (const auto& d : j.at("factors")) f.push_back(int_from_json(d));
    const Int den = int_from_json(j.at("denominator"));
    if (den <= 0) throw ParseError("denominator must be positive");
    IntMatrix num = int_matrix_from_json(j.at("numerators"));
    RatMatrix R = to_rat(num);
    for (std::size_t i = 0; i < R.rows(); ++i)
        for (std::size_t k = 0; k < R.cols(); ++k) {
            R(i, k) /= den;
            R(i, k).canonicalize();
        }
    return FinQuadLinkForm(f, R);
}

Theorem theorem_from_string(const std::string& s) {
    for (Theorem t : {Theorem::TheoremA, Theorem::TheoremB, Theorem::TheoremC_stabilized, Theorem::None})
        if (to_string(t) == s) return t;
    throw ParseError("unknown theorem " + s);
}

Route route_from_string(const std::string& s) {
    for (Route r : {Route::Appendix_bAut, Route::Nikulin, Route::Stabilized_Nikulin, Route::NoRoute})
        if (to_string(r) == s) return r;
    throw ParseError("unknown route " + s);
}

Json to_json(const Verdict& v) {
    Json j;
    j["applicable_theorem"] = to_string(v.applicable_theorem);
    j["route"] = to_string(v.route);
    j["reason"] = v.reason;
    j["sigma_cover"] = v.sigma_cover;
    j["a"] = v.a;
    j["b"] = v.b;
    j["extremal"] = v.extremal;
    j["theta"] = v.theta ? to_json(v.theta->rep) : Json();
    j["linkform"] = v.linkform ? to_json(*v.linkform) : Json();
    j["orbit_count"] = v.orbit_count ? Json(*v.orbit_count) : Json();
    j["ell5_route"] = v.ell5_route;
    j["notes"] = v.notes;
    return j;
}

Verdict verdict_from_json(const Json& j) {
    Verdict v;
    try {
        v.applicable_theorem = theorem_from_string(j.at("applicable_theorem").get<std::string>());
        v.route = route_from_string(j.at("route").get<std::string>());
        v.reason = j.at("reason").get<std::string>();
        v.sigma_cover = j.at("sigma_cover").get<long>();
        v.a = j.at("a").get<long>();
        v.b = j.at("b").get<long>();
        v.extremal = j.at("extremal").get<bool>();
        if (!j.at("theta").is_null()) v.theta = QuadFormZ(int_matrix_from_json(j["theta"]));
        if (!j.at("linkform").is_null()) v.linkform = linkform_from_json(j["linkform"]);
        if (!j.at("orbit_count").is_null()) v.orbit_count = j["orbit_count"].get<std::size_t>();
        v.ell5_route = j.at("ell5_route").get<std::string>();
        v.notes = j.at("notes").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("verdict json: ") + e.what());
    }
    if (v.applicable_theorem == Theorem::None && v.reason.empty())
        throw ParseError("verdict json: None without a reason");
    return v;
}

Json to_json(const BAutResult& r) {
    Json w = Json::array();
    for (const auto& x : r.witnesses) w.push_back(to_json(x.matrix));
    return {{"orbit_count", r.orbit_count}, {"trivial", r.trivial},         {"aut_theta", r.aut_theta},
            {"image_size", r.image_size},   {"aut_boundary", r.aut_boundary}, {"witnesses", w}};
}

Json to_json(const Ell5Result& r) {
    Json j{{"status", to_string(r.status)}, {"route", r.route}, {"reason", r.reason}};
    j["orbit_count"] = r.orbit_count ? Json(r.orbit_count) : Json();
    return j;
}

Json to_json(const NikulinResult& r) {
    return {{"result", r.surjective ? "Surjective" : "NotApplicable"}, {"reason", r.reason}};
}

Json to_json(const HomologyTable& t) {
    Json j = Json::object();
    for (const auto& [deg, g] : t) {
        if (g.is_zero()) continue;
        j["H" + std::to_string(deg)] = {{"free_rank", g.free_rank}, {"torsion", g.torsion}, {"text", g.to_string()}};
    }
    return j;
}

Json to_json(const AppendixReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}});
    return {{"all_ok", r.all_ok()}, {"notices", r.notices}, {"checks", checks}};
}

}  // namespace z2s
