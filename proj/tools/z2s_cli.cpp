// Command line front end. Exit codes: 0 done (None verdicts included),
// 2 usage or input error, 3 internal mismatch.
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "z2s/decide.hpp"
#include "z2s/errors.hpp"
#include "z2s/json_io.hpp"

using namespace z2s;

namespace {

constexpr int kUsage = 2;
constexpr int kMismatch = 3;

bool g_json = false;

void emit(const Json& j, const std::string& text) {
    if (g_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string nu_line(const FinQuadLinkForm& L) {
    std::ostringstream os;
    for (std::size_t i = 0; i < L.num_generators(); ++i)
        os << (i ? "  " : "") << "nu(g" << i + 1 << ") = " << rat_str(L.nu_generator(i));
    return os.str();
}

std::string factors_line(const FinQuadLinkForm& L) {
    if (L.factors.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < L.factors.size(); ++i) os << (i ? " + " : "") << "Z/" << L.factors[i];
    return os.str();
}

struct ThetaArgs {
    std::string theta;
    bool doubled = false;
    long a = -1, b = -1;

    void add(CLI::App* c) {
        c->add_option("--theta", theta, "form representative, rows separated by '/'");
        c->add_flag("--doubled", doubled, "use 2 theta");
        c->add_option("--a", a, "use theta_{a,b}");
        c->add_option("--b", b, "use theta_{a,b}");
    }
    QuadFormZ get() const {
        QuadFormZ t;
        if (!theta.empty()) {
            if (a >= 0 || b >= 0) throw CLI::ValidationError("give either --theta or --a/--b");
            t = QuadFormZ(parse_inline_matrix(theta));
        } else if (a >= 0 && b >= 0) {
            t = theta_ab(a, b);
        } else {
            throw CLI::ValidationError("a form is required: --theta or --a and --b");
        }
        return doubled ? t.scaled(2) : t;
    }
};

std::vector<int> parse_digits(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.size() != 1 || tok[0] < '0' || tok[0] > '3') throw CLI::ValidationError("--q takes Z/4 digits like 1,1,3");
        out.push_back(tok[0] - '0');
    }
    return out;
}

std::string rows_of(const RatMatrix& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << " ";
        for (std::size_t j = 0; j < m.cols(); ++j) os << " " << rat_str(m(i, j));
        os << "\n";
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic forms, linking forms and unknotting verdicts for nonorientable surfaces"};
    app.set_help_flag("--help", "print this help");  // -h is taken by the genus
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", g_json, "machine readable output");

    std::string matrix;
    auto* snf = app.add_subcommand("snf", "Smith normal form and cokernel of an integer matrix");
    snf->add_option("--matrix", matrix, "rows separated by '/'")->required();

    ThetaArgs bf_args, aut_args, baut_args, nk_args, ell_args;
    std::string gens, factors;
    auto* bf = app.add_subcommand("boundary-form", "boundary linking form of a quadratic form");
    bf_args.add(bf);
    bf->add_option("--gens", gens, "generator columns in Z^n, rows separated by '/'");
    bf->add_option("--factors", factors, "orders of the chosen generators, comma separated");

    bool list = false;
    std::size_t cap = kDefaultGroupCap;
    auto* aut = app.add_subcommand("aut", "automorphism groups of a definite form and of its boundary");
    aut_args.add(aut);
    aut->add_flag("--list", list, "print every automorphism of the boundary form");
    aut->add_option("--cap", cap, "group size cap");

    auto* ba = app.add_subcommand("baut", "orbits of Aut(d theta) under the image of the boundary map");
    baut_args.add(ba);
    ba->add_option("--cap", cap, "group size cap");

    bool nk_stab = false;
    auto* nk = app.add_subcommand("nikulin", "Nikulin surjectivity criterion");
    nk_args.add(nk);
    nk->add_flag("--stabilized", nk_stab, "add H+ before doubling");

    std::size_t ell_bound = 64;
    auto* ell = app.add_subcommand("ell5", "triviality of l5 for a form");
    ell_args.add(ell);
    ell->add_option("--definite-bound", ell_bound, "largest definite rank to enumerate");
    ell->add_option("--cap", cap, "group size cap");

    std::string q, bilinear;
    long br_e = 0;
    int br_arf = 0;
    bool br_has_e = false;
    auto* br = app.add_subcommand("brown", "Brown-Kervaire invariant of a Z/4 quadratic form");
    br->add_option("--q", q, "values on basis vectors, e.g. 1,1,3")->required();
    br->add_option("--bilinear", bilinear, "Z/2 form, rows separated by '/'; identity by default");
    auto* e_opt = br->add_option("--e", br_e, "check the Guillou-Marin congruence for this Euler number");
    br->add_option("--arf", br_arf, "Arf invariant of the boundary knot")->check(CLI::Range(0, 1));

    long inv_h = 1, inv_e = 0;
    std::string h1k;
    auto* inv = app.add_subcommand("invariants", "homology tables for a surface of genus h");
    inv->add_option("--h", inv_h, "nonorientable genus")->required();
    inv->add_option("--e", inv_e, "normal Euler number");
    inv->add_option("--h1-cover", h1k, "torsion of H_1 of the double branched cover of K, comma separated");

    SurfaceInvariants si;
    DecideOptions dopts;
    auto* dec = app.add_subcommand("decide", "which unknotting theorem applies");
    dec->add_option("--h", si.h, "nonorientable genus")->required();
    dec->add_option("--e", si.e, "normal Euler number")->required();
    dec->add_option("--sigma-k", si.sigma_k, "signature of the boundary knot");
    dec->add_option("--det-k", si.det_k_abs, "|det| of the boundary knot");
    dec->add_flag("--stabilized", dopts.stabilized, "after adding one tube");
    dec->add_option("--definite-bound", dopts.definite_bound, "largest definite genus to enumerate");
    dec->add_flag("--closed", dopts.closed, "closed surface (unknot boundary)");
    dec->add_option("--cap", dopts.cap, "group size cap");

    std::size_t app_bound = 5;
    auto* apx = app.add_subcommand("appendix", "recompute and self-check the h=2,3 linking form tables");
    apx->add_option("--definite-bound", app_bound, "largest definite genus to enumerate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }
    br_has_e = e_opt->count() > 0;

    try {
        if (*snf) {
            IntMatrix m = parse_inline_matrix(matrix);
            SnfResult s = smith_normal_form(m);
            Cokernel c = cokernel_invariants(m);
            Json tors = Json::array();
            for (const auto& t : c.torsion) tors.push_back(to_json(t));
            Json diag = Json::array();
            for (const auto& d : s.diagonal()) diag.push_back(to_json(d));
            std::ostringstream os;
            os << "D =\n" << format_matrix(s.D) << "U =\n" << format_matrix(s.U) << "V =\n" << format_matrix(s.V);
            os << "cokernel: free rank " << c.free_rank << ", torsion";
            for (const auto& t : c.torsion) os << " " << t;
            os << "\n";
            emit({{"diagonal", diag}, {"D", to_json(s.D)}, {"U", to_json(s.U)}, {"V", to_json(s.V)},
                  {"free_rank", c.free_rank}, {"torsion", tors}},
                 os.str());
        } else if (*bf) {
            QuadFormZ t = bf_args.get();
            FinQuadLinkForm L;
            if (!gens.empty()) {
                std::vector<Int> f;
                std::stringstream ss(factors);
                std::string tok;
                while (std::getline(ss, tok, ',')) f.emplace_back(tok);
                L = boundary_form_in_basis(t, parse_inline_matrix(gens), f);
            } else {
                L = boundary_form(t);
            }
            std::ostringstream os;
            os << "T = " << factors_line(L) << "\n" << nu_line(L) << "\nb =\n" << rows_of(L.b_matrix());
            emit(to_json(L), os.str());
        } else if (*aut) {
            QuadFormZ t = aut_args.get();
            auto g = aut_group(t.symmetrize());
            FinQuadLinkForm L = boundary_form(t);
            auto a = aut_linkform(L, cap);
            Json la = Json::array();
            std::ostringstream os;
            os << "|Aut(theta)| = " << g.size() << "\n|Aut(d theta)| = " << a.size() << "\n";
            for (const auto& f : a) {
                if (list) os << format_matrix(f.matrix) << "\n";
                la.push_back(to_json(f.matrix));
            }
            Json j{{"aut_theta", g.size()}, {"aut_boundary", a.size()}};
            if (list) j["boundary_automorphisms"] = la;
            emit(j, os.str());
        } else if (*ba) {
            QuadFormZ t = baut_args.get();
            BAutResult r = baut(t, cap);
            std::ostringstream os;
            os << (r.trivial ? "trivial" : "nontrivial") << "\norbits = " << r.orbit_count
               << "\n|Aut(theta)| = " << r.aut_theta << "\n|Im d| = " << r.image_size
               << "\n|Aut(d theta)| = " << r.aut_boundary << "\n";
            emit(to_json(r), os.str());
        } else if (*nk) {
            QuadFormZ t = nk_args.get();
            if (nk_stab) t = direct_sum(t, hyperbolic(1));
            if (!nk_args.doubled && nk_args.theta.empty()) t = t.scaled(2);
            NikulinResult r = nikulin_check(t);
            emit(to_json(r), std::string(r.surjective ? "Surjective" : "NotApplicable") + " (" + r.reason + ")\n");
        } else if (*ell) {
            QuadFormZ t = ell_args.get();
            Ell5Result r = ell5_trivial(t, ell_bound, cap);
            std::ostringstream os;
            os << to_string(r.status);
            if (!r.route.empty()) os << " via " << r.route;
            if (r.orbit_count) os << ", " << r.orbit_count << " orbits";
            if (!r.reason.empty()) os << " (" << r.reason << ")";
            emit(to_json(r), os.str() + "\n");
        } else if (*br) {
            std::vector<int> qv = parse_digits(q);
            BitMatrix lam(qv.size(), Bits(qv.size(), 0));
            if (bilinear.empty()) {
                for (std::size_t i = 0; i < qv.size(); ++i) lam[i][i] = 1;
            } else {
                IntMatrix m = parse_inline_matrix(bilinear);
                if (m.rows() != qv.size() || m.cols() != qv.size()) throw CLI::ValidationError("--bilinear has the wrong size");
                for (std::size_t i = 0; i < qv.size(); ++i)
                    for (std::size_t j = 0; j < qv.size(); ++j) lam[i][j] = int(mod_floor(m(i, j), 2).get_si());
            }
            Z4QuadForm f(lam, qv);
            GaussSum g = gauss_sum(f);
            const int beta = brown_kervaire(f);
            Json j{{"beta", beta}, {"gauss_sum", {g.re, g.im}}};
            std::ostringstream os;
            os << "beta = " << beta << " (mod 8), Gauss sum = " << g.re << (g.im < 0 ? " - " : " + ")
               << std::labs(g.im) << "i\n";
            if (br_has_e) {
                const bool ok = check_gm_congruence(f, br_e, br_arf);
                j["congruence"] = ok;
                os << "beta = -e/2 + 4 Arf (mod 8): " << (ok ? "holds" : "fails") << "\n";
            }
            emit(j, os.str());
        } else if (*inv) {
            FinAbGroup k;
            if (!h1k.empty()) {
                std::vector<long> cyc;
                std::stringstream ss(h1k);
                std::string tok;
                while (std::getline(ss, tok, ',')) cyc.push_back(std::stol(tok));
                k = FinAbGroup(0, cyc);
            }
            Json j;
            std::ostringstream os;
            auto table = [&](const std::string& key, const std::string& title, const HomologyTable& t) {
                j[key] = to_json(t);
                os << title << "\n" << format_table(t);
            };
            table("circle_bundle_punctured", "punctured circle bundle", homology_circle_bundle(inv_h, inv_e, true));
            table("circle_bundle", "circle bundle", homology_circle_bundle(inv_h, inv_e, false));
            table("exterior", "exterior X_F", homology_exterior(inv_h));
            table("boundary_exterior", "boundary of X_F", homology_boundary_exterior(inv_h));
            if (inv_e % 2 == 0)
                table("boundary_double_cover", "double cover of the boundary", boundary_universal_cover(inv_h, inv_e, k));
            table("branched_cover", "double branched cover", homology_branched_cover(inv_h));
            j["exterior_zz2_H2"] = zz2_homology_exterior(inv_h)[2].to_string();
            j["branched_cover_module_H2"] = branched_cover_module(inv_h).to_string();
            os << "H_2(X_F; Z[Z/2]) = " << zz2_homology_exterior(inv_h)[2].to_string() << "\n";
            os << "H_2 of the branched cover as a module = " << branched_cover_module(inv_h).to_string() << "\n";
            emit(j, os.str());
        } else if (*dec) {
            Verdict v = decide(si, dopts);
            std::ostringstream os;
            os << "theorem: " << to_string(v.applicable_theorem) << "\nroute: " << to_string(v.route) << "\n";
            if (!v.reason.empty()) os << "reason: " << v.reason << "\n";
            os << "sigma(cover) = " << v.sigma_cover << ", (a,b) = (" << v.a << "," << v.b << ")"
               << (v.extremal ? ", extremal" : "") << "\n";
            if (v.linkform) os << "boundary form: " << factors_line(*v.linkform) << "; " << nu_line(*v.linkform) << "\n";
            if (v.orbit_count) os << "bAut orbits: " << *v.orbit_count << "\n";
            for (const auto& n : v.notes) os << "note: " << n << "\n";
            emit(to_json(v), os.str());
        } else if (*apx) {
            AppendixReport r = reproduce_appendix({}, app_bound);
            emit(to_json(r), format_report(r));
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const MismatchDetected& e) {
        std::cerr << e.what() << "\n";
        return kMismatch;
    } catch (const GaussSumAnomaly& e) {
        std::cerr << e.what() << "\n";
        return kMismatch;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    }
    return 0;
}
