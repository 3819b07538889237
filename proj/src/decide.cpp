#include "z2s/decide.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace z2s {

std::string to_string(Theorem t) {
    switch (t) {
        case Theorem::TheoremA: return "TheoremA";
        case Theorem::TheoremB: return "TheoremB";
        case Theorem::TheoremC_stabilized: return "TheoremC_stabilized";
        default: return "None";
    }
}

std::string to_string(Route r) {
    switch (r) {
        case Route::Appendix_bAut: return "Appendix_bAut";
        case Route::Nikulin: return "Nikulin";
        case Route::Stabilized_Nikulin: return "Stabilized_Nikulin";
        default: return "None";
    }
}

namespace {

// Largest rank for which every odd definite unimodular lattice is diagonal.
constexpr long kDiagonalRankLimit = 8;

Verdict abstain(Verdict v, std::string why) {
    v.applicable_theorem = Theorem::None;
    v.route = Route::NoRoute;
    v.reason = std::move(why);
    return v;
}

}  // namespace

Verdict decide(const SurfaceInvariants& inv, const DecideOptions& opts) {
    if (inv.h < 1) throw PreconditionViolated("genus must be positive");
    if (inv.sigma_k % 2 != 0) throw InvalidParity("knot signature must be even");
    if (inv.det_k_abs <= 0 || inv.det_k_abs % 2 == 0) throw InvalidParity("|det K| must be a positive odd integer");
    if (!in_massey_range(inv.h, inv.e, inv.sigma_k))
        throw EulerOutOfRange("e = " + std::to_string(inv.e) + " outside the range for h = " +
                              std::to_string(inv.h) + ", sigma(K) = " + std::to_string(inv.sigma_k));
    if (opts.closed && (inv.sigma_k != 0 || inv.det_k_abs != 1))
        throw PreconditionViolated("a closed surface has the unknot as boundary");

    Verdict v;
    v.sigma_cover = inv.sigma_cover();
    if (std::labs(v.sigma_cover) > inv.h || (inv.h - v.sigma_cover) % 2 != 0)
        throw InvalidParity("signature of the branched cover has the wrong parity");
    v.a = (inv.h + v.sigma_cover) / 2;
    v.b = (inv.h - v.sigma_cover) / 2;
    v.extremal = is_extremal(inv);

    if (opts.stabilized) {
        v.route = Route::Stabilized_Nikulin;
        v.applicable_theorem = Theorem::TheoremC_stabilized;
        if (inv.det_k_abs != 1) {
            // the added 2H+ block is indefinite, raises the rank by two without odd
            // torsion and carries the required summand on its own
            v.notes.push_back("form of the cover unknown; Nikulin conditions hold for every "
                              "nondegenerate form once 2H+ is added");
            return v;
        }
        QuadFormZ theta = direct_sum(theta_ab(v.a, v.b), hyperbolic(1)).scaled(2);
        v.theta = theta;
        v.linkform = boundary_form(theta);
        auto nk = nikulin_check(theta);
        if (!nk.surjective) throw MismatchDetected("stabilised form fails the Nikulin check: " + nk.reason);
        v.ell5_route = "Nikulin";
        v.orbit_count = 1;
        return v;
    }

    if (inv.det_k_abs != 1)
        return abstain(v, "form classification unavailable: |det K| = " + std::to_string(inv.det_k_abs));
    if (v.extremal && inv.h > kDiagonalRankLimit)
        return abstain(v, "definite h=" + std::to_string(inv.h) +
                              " beyond classification: the cover may carry a nondiagonal form such as E8 + (1)");

    QuadFormZ theta = theta_ab(v.a, v.b).scaled(2);
    v.theta = theta;
    v.linkform = boundary_form(theta);
    if (v.extremal && static_cast<std::size_t>(inv.h) > opts.definite_bound)
        return abstain(v, "definite h=" + std::to_string(inv.h) + " beyond definite_bound " +
                              std::to_string(opts.definite_bound));

    Ell5Result r = ell5_trivial(theta, opts.definite_bound, opts.cap);
    v.ell5_route = r.route;
    if (r.orbit_count > 0) v.orbit_count = r.orbit_count;
    switch (r.status) {
        case Ell5Status::Trivial:
            v.applicable_theorem = opts.closed ? Theorem::TheoremA : Theorem::TheoremB;
            v.route = r.route == "Nikulin" ? Route::Nikulin : Route::Appendix_bAut;
            if (v.extremal && inv.h > 3) v.notes.push_back("extremal case settled by the computed bAut");
            return v;
        case Ell5Status::Nontrivial:
            return abstain(v, "bAut has " + std::to_string(r.orbit_count) +
                                  " orbits; the method gives no conclusion");
        default:
            return abstain(v, r.reason.empty() ? "l5 triviality undecided" : r.reason);
    }
}

bool AppendixReport::all_ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const AppendixCheck& c) { return c.ok; });
}

namespace {

std::string join_factors(const std::vector<Int>& f) {
    std::ostringstream os;
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? " " : "") << f[i];
    return os.str();
}

std::string join_nu(const FinQuadLinkForm& L) {
    std::ostringstream os;
    for (std::size_t i = 0; i < L.factors.size(); ++i) os << (i ? " " : "") << rat_str(L.nu_generator(i));
    return os.str();
}

template <class T>
void check(AppendixReport& r, const std::string& name, const T& expected, const T& actual) {
    std::ostringstream e, a;
    e << expected;
    a << actual;
    r.checks.push_back({name, e.str(), a.str(), expected == actual});
}

std::set<std::vector<long>> as_keys(const std::vector<IntMatrix>& ms) {
    std::set<std::vector<long>> out;
    for (const auto& m : ms) {
        std::vector<long> k;
        for (const auto& x : m.data()) k.push_back(x.get_si());
        out.insert(k);
    }
    return out;
}

std::vector<IntMatrix> signed_permutations(long modulus) {
    std::vector<IntMatrix> out;
    for (long e1 : {1, -1})
        for (long e2 : {1, -1}) {
            IntMatrix d{{e1, 0}, {0, e2}}, s{{0, e1}, {e2, 0}};
            for (auto* m : {&d, &s}) {
                if (modulus > 0)
                    for (std::size_t i = 0; i < 2; ++i)
                        for (std::size_t j = 0; j < 2; ++j) (*m)(i, j) = mod_floor((*m)(i, j), Int(modulus));
                out.push_back(*m);
            }
        }
    return out;
}

void appendix_h2(AppendixReport& r, const AppendixExpectations& ex) {
    const QuadFormZ psi(IntMatrix{{4, 4}, {0, 2}});
    // e1 - e2, e2 diagonalises the form
    const IntMatrix P{{1, 0}, {-1, 1}};
    const QuadFormZ diag = psi.pullback(P);
    check(r, "h=2 diagonal representative", std::string("[2 0; 0 2]"),
          std::string(diag.canonical() == QuadFormZ(IntMatrix{{2, 0}, {0, 2}}) ? "[2 0; 0 2]" : "other"));
    BoundaryData bd = boundary_data_in_basis(diag, IntMatrix::identity(2), {4, 4});
    check(r, "h=2 invariant factors", ex.h2_factors, join_factors(boundary_form(psi).factors));
    check(r, "h=2 nu on generators", ex.h2_nu, join_nu(bd.form));
    check(r, "h=2 b(e1,e2)", std::string("0"), rat_str(bd.form.b({1, 0}, {0, 1})));
    auto aut = aut_group(diag.symmetrize());
    check(r, "h=2 |Aut(theta)|", ex.h2_aut, aut.size());
    check(r, "h=2 Aut(theta) matrices", std::string("signed permutations"),
          std::string(as_keys(aut) == as_keys(signed_permutations(0)) ? "signed permutations" : "other"));
    BAutResult b = baut(bd, kDefaultGroupCap, true);
    std::vector<IntMatrix> img;
    for (const auto& f : b.image) img.push_back(f.matrix);
    check(r, "h=2 Im(d) matrices", std::string("signed permutations mod 4"),
          std::string(as_keys(img) == as_keys(signed_permutations(4)) ? "signed permutations mod 4" : "other"));
    check(r, "h=2 |Aut(d theta)|", ex.h2_aut, b.aut_boundary);
    check(r, "h=2 bAut orbits", ex.h2_orbits, b.orbit_count);
    check(r, "h=2 bAut orbits, original basis", ex.h2_orbits, baut(psi).orbit_count);
}

void appendix_h3(AppendixReport& r, const AppendixExpectations& ex) {
    const QuadFormZ psi(IntMatrix{{4, 4, 4}, {0, 2, 2}, {0, 0, 2}});
    check(r, "h=3 invariant factors", ex.h3_factors, join_factors(boundary_form(psi).factors));
    const IntMatrix D{{-1, 2, 2}, {-1, 1, 0}, {-2, 2, 1}};
    BoundaryData bd = boundary_data_in_basis(psi, D, {8, 2, 2});
    check(r, "h=3 nu on generators", ex.h3_nu, join_nu(bd.form));
    RatMatrix bm = bd.form.b_matrix();
    std::ostringstream bs;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) bs << (i || j ? " " : "") << rat_str(bm(i, j));
    check(r, "h=3 b matrix", std::string("3/8 0 0 0 0 1/2 0 1/2 0"), bs.str());
    BAutResult b = baut(bd, kDefaultGroupCap, true);
    check(r, "h=3 |Aut(theta)|", ex.h3_aut, b.aut_theta);
    check(r, "h=3 |Im(d)|", ex.h3_image, b.image_size);
    std::size_t x0 = 0, y0 = 0, x0_shape = 0;
    for (const auto& f : b.image) {
        const Int& t = f.matrix(0, 0);
        if (t == 1 || t == 7) {
            ++x0;
            const IntMatrix& m = f.matrix;
            if (m(0, 1) == 0 && m(0, 2) == 0 && m(1, 0) == 0 && m(2, 0) == 0) ++x0_shape;
        } else if (t == 3 || t == 5) {
            ++y0;
        }
    }
    check(r, "h=3 |X0| (top-left +-1)", ex.h3_x0, x0);
    check(r, "h=3 X0 block shape (+-1) + GL2(F2)", ex.h3_x0, x0_shape);
    check(r, "h=3 |Y0| (top-left +-3)", ex.h3_y0, y0);
    check(r, "h=3 nu-only candidates", ex.h3_prefilter, count_nu_generator_candidates(bd.form));
    check(r, "h=3 |Aut(d theta)|", ex.h3_aut, b.aut_boundary);
    check(r, "h=3 bAut orbits", ex.h3_orbits, b.orbit_count);
}

}  // namespace

AppendixReport reproduce_appendix(const AppendixExpectations& ex, std::size_t definite_bound) {
    AppendixReport r;
    if (definite_bound >= 2)
        appendix_h2(r, ex);
    else
        r.notices.push_back("skipping h=2: definite_bound " + std::to_string(definite_bound) + " < 2");
    if (definite_bound >= 3)
        appendix_h3(r, ex);
    else
        r.notices.push_back("skipping h=3: definite_bound " + std::to_string(definite_bound) + " < 3");
    if (!r.all_ok()) {
        std::ostringstream os;
        for (const auto& c : r.checks)
            if (!c.ok) os << c.name << ": expected " << c.expected << ", got " << c.actual << "; ";
        throw MismatchDetected(os.str());
    }
    return r;
}

std::string format_report(const AppendixReport& r) {
    std::ostringstream os;
    for (const auto& n : r.notices) os << "notice: " << n << "\n";
    std::size_t w = 0;
    for (const auto& c : r.checks) w = std::max(w, c.name.size());
    for (const auto& c : r.checks) {
        os << (c.ok ? "ok    " : "FAIL  ") << c.name << std::string(w - c.name.size() + 2, ' ') << c.actual;
        if (!c.ok) os << "  (expected " << c.expected << ")";
        os << "\n";
    }
    return os.str();
}

}  // namespace z2s
