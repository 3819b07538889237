#pragma once

#include <optional>
#include <string>
#include <vector>

#include "z2s/gmforms.hpp"
#include "z2s/linkforms.hpp"
#include "z2s/zforms.hpp"

namespace z2s {

enum class Theorem { TheoremA, TheoremB, TheoremC_stabilized, None };
enum class Route { Appendix_bAut, Nikulin, Stabilized_Nikulin, NoRoute };

std::string to_string(Theorem t);
std::string to_string(Route r);

struct Verdict {
    Theorem applicable_theorem = Theorem::None;
    Route route = Route::NoRoute;
    std::string reason;  // always set when applicable_theorem is None

    long sigma_cover = 0;  // signature of the double branched cover
    long a = 0, b = 0;
    bool extremal = false;
    std::optional<QuadFormZ> theta;  // 2 theta_{a,b}, stabilised when requested
    std::optional<FinQuadLinkForm> linkform;
    std::optional<std::size_t> orbit_count;
    std::string ell5_route;  // route reported by ell5_trivial
    std::vector<std::string> notes;
};

struct DecideOptions {
    bool stabilized = false;
    std::size_t definite_bound = 5;
    // F is closed: the boundary knot is the unknot.
    bool closed = false;
    std::size_t cap = kDefaultGroupCap;
};

// EulerOutOfRange, InvalidParity, PreconditionViolated.
Verdict decide(const SurfaceInvariants& inv, const DecideOptions& opts = {});

struct AppendixCheck {
    std::string name;
    std::string expected;
    std::string actual;
    bool ok = false;
};

struct AppendixReport {
    std::vector<AppendixCheck> checks;
    std::vector<std::string> notices;
    bool all_ok() const;
};

// Reference values; tests override single fields to exercise the mismatch path.
struct AppendixExpectations {
    std::string h2_factors = "4 4";
    std::string h2_nu = "1/8 1/8";
    std::size_t h2_aut = 8;
    std::size_t h2_orbits = 1;
    std::string h3_factors = "2 2 8";
    std::string h3_nu = "11/16 1/2 1/2";
    std::size_t h3_aut = 48;
    std::size_t h3_image = 48;
    std::size_t h3_x0 = 12;
    std::size_t h3_y0 = 36;
    std::size_t h3_prefilter = 192;
    std::size_t h3_orbits = 1;
};

// Runs every appendix computation with definite rank at most definite_bound.
// MismatchDetected listing each differing value.
AppendixReport reproduce_appendix(const AppendixExpectations& expect = {}, std::size_t definite_bound = 5);
std::string format_report(const AppendixReport& r);

}  // namespace z2s
