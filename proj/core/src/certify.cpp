#include "anderson/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anderson/errors.hpp"

namespace anderson {

const char* to_string(MsaPath p) { return p == MsaPath::Weak ? "weak" : "strong"; }

MsaPath parse_msa_path(const std::string& s) {
    if (s == "weak") return MsaPath::Weak;
    if (s == "strong") return MsaPath::Strong;
    throw DomainError("unknown path '" + s + "' (expected weak or strong)");
}

std::size_t bad_cube_gate(MsaPath path) { return path == MsaPath::Weak ? 1 : 3; }

namespace {

double edge_count(double d, Coord r) { return 2.0 * d * std::pow(2.0 * static_cast<double>(r) + 1.0, d - 1.0); }

double spectrum_distance(const Cube& c, const Potential& v, double E) {
    const HamMatrix h = build_h(c, BoundaryKind::Simple, &v);
    return distance_to_spectrum(eigen(h, false).values, E);
}

}  // namespace

CertifierInputs collect_certifier_inputs(const Cube& big, const Potential& v, double E, double gamma, Coord l,
                                         MsaPath path) {
    if (l < 1 || l >= big.radius) throw DomainError("certifier needs 1 <= l < L");
    CertifierInputs in;
    in.big = big;
    in.E = E;
    in.gamma = gamma;
    in.l = l;
    in.path = path;

    for (const Cube& c : subcubes(big, l)) in.sub_verdicts.push_back(classify_cube(c, v, E, gamma));

    for (const auto& sv : in.sub_verdicts) {
        if (sv.good) continue;
        bool disjoint = true;
        for (const auto& m : in.disjoint_bad_centers)
            if (dist_inf(m, sv.cube.center) <= 2 * l) disjoint = false;
        if (disjoint) in.disjoint_bad_centers.push_back(sv.cube.center);
    }

    std::vector<Cube> cover;
    if (in.disjoint_bad_centers.size() <= bad_cube_gate(path)) {
        if (path == MsaPath::Strong) {
            cover = merge_bad_regions(in.disjoint_bad_centers, l);
        } else {
            for (const auto& m : in.disjoint_bad_centers) cover.emplace_back(m, 2 * l);
        }
    }
    for (const Cube& c : cover) {
        RegionInfo r;
        r.cube = c;
        r.well_inside = well_inside(c, big);
        if (r.well_inside) {
            r.dist = spectrum_distance(c, v, E);
            r.resonant = is_resonant(r.dist, c.radius);
        }
        in.regions.push_back(r);
    }

    auto res = std::make_shared<const Resolvent>(build_h(big, BoundaryKind::Simple, &v), E);
    in.big_dist = res->distance();
    in.big_resonant = is_resonant(in.big_dist, big.radius);
    in.big_resolvent = std::move(res);
    return in;
}

Certificate certify_decay(const CertifierInputs& in, double alpha) {
    const Cube& big = in.big;
    const double d = static_cast<double>(big.dim());
    const double l = static_cast<double>(in.l);
    const double L = static_cast<double>(big.radius);
    const double g = in.gamma;

    Certificate c;
    c.big = big;
    c.E = in.E;
    c.gamma_in = g;
    c.l = in.l;
    c.alpha = alpha;
    c.path = in.path;
    c.gate = bad_cube_gate(in.path);
    c.disjoint_bad = in.disjoint_bad_centers.size();
    c.regions = in.regions.size();
    for (const auto& sv : in.sub_verdicts) c.bad_cubes += sv.good ? 0 : 1;

    // Closed-form quantities of the analytic induction step, kept for comparison.
    c.step_factor = edge_count(d, in.l) * std::exp(-g * l);
    c.gamma_tilde = g - (d - 1.0) * std::log(2.0 * l + 1.0) / l - std::log(2.0 * d) / l;
    c.k0_lower = L / (l + 1.0) - std::sqrt(L) / (l + 1.0) - 2.0;
    c.corollary_rate = g * (1.0 - 4.0 / std::pow(l, alpha - 1.0)) - 2.0 / std::pow(l, alpha / 2.0);
    c.corollary_full = g * (1.0 - 4.0 / std::pow(l, alpha - 1.0)) -
                       (3.0 * d * std::log(2.0 * l + 1.0) / l + 1.0 / std::pow(l, alpha / 2.0));
    c.corollary_applicable = 3.0 * d * std::log(2.0 * l + 1.0) / l <= 1.0 / std::pow(l, alpha / 2.0);
    if (in.path == MsaPath::Weak) {
        c.rho = 4.0 * d * d * std::pow(4.0 * l + 1.0, d - 1.0) * std::pow(2.0 * l + 1.0, d - 1.0) *
                std::exp(std::sqrt(2.0 * l)) * std::exp(-g * l);
        c.rate_floor = 2.0 / std::sqrt(l);
    } else {
        c.rho = 4.0 * d * d * std::pow(20.0 * l + 5.0, d - 1.0) * std::pow(2.0 * l + 1.0, d - 1.0) *
                std::exp(std::sqrt(10.0 * l + 2.0)) * std::exp(-g * l);
        c.rate_floor = 12.0 / std::sqrt(l);
    }
    c.floor_met = g >= c.rate_floor;
    c.trivial_bound = in.big_dist > 0 ? 1.0 / in.big_dist : std::numeric_limits<double>::infinity();
    if (in.big_dist > 0) {
        const double k0 = std::max(0.0, std::floor(c.k0_lower));
        c.chain_rate = (c.gamma_tilde * l * k0 - std::log(c.trivial_bound)) / L;
    }

    auto refuse = [&](std::string why) {
        c.reason = std::move(why);
        return c;
    };
    if (in.big_resonant) return refuse("big cube is resonant");
    if (c.disjoint_bad > c.gate)
        return refuse(std::to_string(c.disjoint_bad) + " disjoint bad cubes exceed the gate of " +
                      std::to_string(c.gate));
    for (const auto& r : in.regions)
        if (r.well_inside && r.resonant) return refuse("bad region " + r.cube.str() + " is resonant");
    if (!in.regions.empty() && c.rho > 1.0) return refuse("rate too small: detour factor rho > 1");

    // Per-site update rule.
    const std::size_t n = big.size();
    std::vector<double> factor(n, 0.0);
    std::vector<int> region_of(n, -1);
    std::vector<std::vector<std::size_t>> next(n);
    std::vector<char> can_step(n, 0);

    std::vector<std::vector<std::size_t>> region_exits(in.regions.size());
    for (std::size_t k = 0; k < in.regions.size(); ++k) {
        const auto& r = in.regions[k];
        if (!r.well_inside) continue;
        for (const Site& s : boundary(r.cube, big).outer_sites) region_exits[k].push_back(big.index_of(s));
    }

    std::vector<char> good_centre(n, 0);
    for (const auto& sv : in.sub_verdicts)
        if (sv.good) good_centre[big.index_of(sv.cube.center)] = 1;

    for (std::size_t i = 0; i < n; ++i) {
        const Site x = big.site_at(i);
        for (std::size_t k = 0; k < in.regions.size(); ++k) {
            if (in.regions[k].cube.contains(x)) {
                region_of[i] = static_cast<int>(k);
                break;
            }
        }
        if (region_of[i] >= 0) {
            const auto& r = in.regions[static_cast<std::size_t>(region_of[i])];
            if (!r.well_inside) continue;
            can_step[i] = 1;
            factor[i] = edge_count(d, r.cube.radius) * std::exp(std::sqrt(static_cast<double>(r.cube.radius)));
            next[i] = region_exits[static_cast<std::size_t>(region_of[i])];
        } else if (good_centre[i]) {
            can_step[i] = 1;
            factor[i] = c.step_factor;
            for (const Site& s : boundary(Cube(x, in.l), big).outer_sites) next[i].push_back(big.index_of(s));
        }
    }

    // Monotone iteration from the trivial bound.
    const double D = c.trivial_bound;
    std::vector<double> B(n, D), Bn(n, D);
    std::size_t it = 0;
    const std::size_t max_iter = 20 * n + 100;
    for (; it < max_iter; ++it) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!can_step[i]) continue;
            double m = 0.0;
            for (std::size_t j : next[i]) m = std::max(m, B[j]);
            const double v = std::min(D, factor[i] * m);
            if (v < B[i] * (1.0 - 1e-14)) changed = true;
            Bn[i] = std::min(B[i], v);
        }
        B.swap(Bn);
        for (std::size_t i = 0; i < n; ++i) Bn[i] = B[i];
        if (!changed) break;
    }
    c.iterations = it;

    const Cube inner(big.center, std::min(inner_radius_for(big.radius), big.radius));
    std::size_t worst = big.index_of(inner.site_at(0));
    for (std::size_t k = 0; k < inner.size(); ++k) {
        const std::size_t i = big.index_of(inner.site_at(k));
        if (B[i] > B[worst]) worst = i;
    }
    c.walk_bound = B[worst];

    // Trail of the walk realizing the bound at the worst inner site.
    std::size_t cur = worst;
    for (std::size_t guard = 0; guard < 4 * n; ++guard) {
        WalkStep s;
        s.site = big.site_at(cur);
        if (!can_step[cur] || B[cur] >= D) {
            s.kind = "trivial";
            s.factor = D;
            c.trail.push_back(s);
            c.factors.push_back(D);
            break;
        }
        std::size_t arg = next[cur].front();
        for (std::size_t j : next[cur])
            if (B[j] > B[arg]) arg = j;
        const bool detour = region_of[cur] >= 0;
        s.kind = detour ? "detour" : "exponential";
        s.factor = factor[cur];
        s.radius = detour ? in.regions[static_cast<std::size_t>(region_of[cur])].cube.radius : in.l;
        c.trail.push_back(s);
        c.factors.push_back(s.factor);
        (detour ? c.detours : c.steps) += 1;
        cur = arg;
    }

    // Small safety margin covers rounding in the sub-cube solves.
    const double rate = -std::log(c.walk_bound * (1.0 + 1e-6)) / L;
    if (!(rate > 0.0)) return refuse("walk bound does not decay: certified rate <= 0");
    c.gamma_out = rate;
    c.issued = true;
    return c;
}

Certificate certify_and_confirm(const Cube& big, const Potential& v, double E, double gamma, Coord l,
                                MsaPath path, double alpha) {
    const CertifierInputs in = collect_certifier_inputs(big, v, E, gamma, l, path);
    Certificate c = certify_decay(in, alpha);
    if (c.issued) {
        c.confirmation = classify_from_resolvent(*in.big_resolvent, *c.gamma_out);
        c.pass = c.confirmation->good;
    }
    return c;
}

}  // namespace anderson
