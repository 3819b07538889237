// Thin binding: structured results cross the boundary as JSON text and are
// decoded on the Python side.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "z2s/decide.hpp"
#include "z2s/errors.hpp"
#include "z2s/json_io.hpp"

namespace py = pybind11;
using namespace z2s;

namespace {

QuadFormZ form(const std::string& theta, bool doubled) {
    QuadFormZ t(parse_inline_matrix(theta));
    return doubled ? t.scaled(2) : t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact quadratic and linking form computations";

    // messages start with the error kind, e.g. "EulerOutOfRange: ..."
    py::register_exception<Error>(m, "Error");

    m.def("snf", [](const std::string& mat) {
        IntMatrix a = parse_inline_matrix(mat);
        SnfResult s = smith_normal_form(a);
        Cokernel c = cokernel_invariants(a);
        Json tors = Json::array(), diag = Json::array();
        for (const auto& t : c.torsion) tors.push_back(to_json(t));
        for (const auto& d : s.diagonal()) diag.push_back(to_json(d));
        return Json{{"diagonal", diag}, {"D", to_json(s.D)}, {"U", to_json(s.U)}, {"V", to_json(s.V)},
                    {"free_rank", c.free_rank}, {"torsion", tors}}
            .dump();
    });
    m.def("boundary_form", [](const std::string& theta, bool doubled) {
        return to_json(boundary_form(form(theta, doubled))).dump();
    });
    m.def("baut", [](const std::string& theta, bool doubled, std::size_t cap) {
        return to_json(baut(form(theta, doubled), cap)).dump();
    });
    m.def("nikulin", [](const std::string& theta, bool doubled) {
        return to_json(nikulin_check(form(theta, doubled))).dump();
    });
    m.def("ell5", [](const std::string& theta, bool doubled, std::size_t bound, std::size_t cap) {
        return to_json(ell5_trivial(form(theta, doubled), bound, cap)).dump();
    });
    m.def("theta_ab", [](long a, long b) { return to_json(theta_ab(a, b).rep).dump(); });
    m.def("brown_kervaire", [](const std::vector<std::vector<int>>& lam, const std::vector<int>& q) {
        return brown_kervaire(Z4QuadForm(lam, q));
    });
    m.def("massey_range", &massey_range);
    m.def("homology_tables", [](long h, long e, const std::vector<long>& h1k) {
        Json j;
        j["circle_bundle_punctured"] = to_json(homology_circle_bundle(h, e, true));
        j["circle_bundle"] = to_json(homology_circle_bundle(h, e, false));
        j["exterior"] = to_json(homology_exterior(h));
        j["boundary_exterior"] = to_json(homology_boundary_exterior(h));
        if (e % 2 == 0) j["boundary_double_cover"] = to_json(boundary_universal_cover(h, e, FinAbGroup(0, h1k)));
        j["branched_cover"] = to_json(homology_branched_cover(h));
        return j.dump();
    });
    m.def("decide", [](long h, long e, long sigma_k, long det_k, bool stabilized, std::size_t definite_bound,
                       bool closed, std::size_t cap) {
        DecideOptions o;
        o.stabilized = stabilized;
        o.definite_bound = definite_bound;
        o.closed = closed;
        o.cap = cap;
        return to_json(decide({h, e, sigma_k, det_k}, o)).dump();
    });
    m.def("reproduce_appendix", [](std::size_t bound) { return to_json(reproduce_appendix({}, bound)).dump(); });
    m.attr("DEFAULT_CAP") = kDefaultGroupCap;
}
