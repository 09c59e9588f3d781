#pragma once
// Decay certifier: turns verdicts on l-cubes inside a big cube into a proven
// bound on the big cube's Green's function.
//
// Every site x of the big cube carries an upper bound B(x) on
// max_m |G(x,m)| over the inner boundary sites m. The trivial bound is
// 1/dist(E, sigma). A site whose l-cube is good improves it through the
// geometric resolvent identity,
//     B(x) <= 2d (2l+1)^{d-1} e^{-gamma l} max_{q' outside Lambda_l(x)} B(q'),
// and a site inside a non-resonant bad region M of radius r takes a detour,
//     B(x) <= 2d (2r+1)^{d-1} e^{sqrt r} max_{q' outside M} B(q').
// Iterating these inequalities from the trivial bound only ever lowers B and
// every iterate is a valid bound, so the certified rate is sound by
// construction. The walk that realizes the final bound is kept as the trail.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "anderson/green.hpp"

namespace anderson {

enum class MsaPath { Weak, Strong };

const char* to_string(MsaPath p);
MsaPath parse_msa_path(const std::string& s);

struct RegionInfo {
    Cube cube;
    bool well_inside = false;
    double dist = 0.0;  // dist(E, sigma(H_M)); only computed when well inside
    bool resonant = false;
};

struct CertifierInputs {
    Cube big;
    double E = 0.0;
    double gamma = 0.0;
    Coord l = 1;
    MsaPath path = MsaPath::Weak;
    std::vector<CubeVerdict> sub_verdicts;   // every Lambda_l(x) well inside big
    std::vector<Site> disjoint_bad_centers;  // greedy maximal pairwise-disjoint bad cubes
    std::vector<RegionInfo> regions;         // cover of all bad cubes
    double big_dist = 0.0;
    bool big_resonant = false;
    std::shared_ptr<const Resolvent> big_resolvent;  // reused for confirmation
};

// Maximal number of pairwise disjoint bad l-cubes each path can absorb.
std::size_t bad_cube_gate(MsaPath path);

CertifierInputs collect_certifier_inputs(const Cube& big, const Potential& v, double E, double gamma, Coord l,
                                         MsaPath path);

struct WalkStep {
    Site site;
    std::string kind;  // "exponential", "detour" or "trivial"
    double factor = 0.0;
    Coord radius = 0;  // l-cube radius or detour region radius
};

struct Certificate {
    Cube big;
    double E = 0.0;
    double gamma_in = 0.0;
    Coord l = 0;
    double alpha = 0.0;
    MsaPath path = MsaPath::Weak;

    bool issued = false;
    std::optional<double> gamma_out;
    std::string reason;  // why no certificate, empty when issued

    std::size_t bad_cubes = 0;
    std::size_t disjoint_bad = 0;
    std::size_t gate = 0;
    std::size_t regions = 0;

    double rho = 0.0;            // detour-then-step factor, must be <= 1 with bad regions
    double rate_floor = 0.0;     // 2/sqrt(l) weak, 12/sqrt(l) strong (recorded, not enforced)
    bool floor_met = false;
    double step_factor = 0.0;    // 2d(2l+1)^{d-1} e^{-gamma l}
    double gamma_tilde = 0.0;    // gamma - (d-1) ln(2l+1)/l - ln(2d)/l
    double k0_lower = 0.0;       // L/(l+1) - sqrt(L)/(l+1) - 2
    double chain_rate = 0.0;     // rate from the plain chain bound without bad regions
    double corollary_rate = 0.0; // gamma(1 - 4/l^{alpha-1}) - 2/l^{alpha/2}
    double corollary_full = 0.0; // gamma(1 - 4/l^{alpha-1}) - (3d ln(2l+1)/l + 1/l^{alpha/2})
    bool corollary_applicable = false;  // 3d ln(2l+1)/l <= 1/l^{alpha/2}

    double trivial_bound = 0.0;  // 1/dist(E, sigma(H_L))
    double walk_bound = 0.0;     // max over inner sites of B(x)
    std::size_t iterations = 0;
    std::size_t steps = 0;
    std::size_t detours = 0;
    std::vector<double> factors;
    std::vector<WalkStep> trail;

    std::optional<CubeVerdict> confirmation;  // direct classification at gamma_out
    bool pass = false;  // issued and confirmed
};

Certificate certify_decay(const CertifierInputs& in, double alpha);

// Collects inputs, certifies and (when issued) confirms by direct classification.
Certificate certify_and_confirm(const Cube& big, const Potential& v, double E, double gamma, Coord l,
                                MsaPath path, double alpha);

}  // namespace anderson
