#include "anderson/msa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "anderson/green.hpp"
#include "anderson/parallel.hpp"
#include "anderson/spectral.hpp"

namespace anderson {

namespace {

std::string join(const std::vector<std::string>& v) {
    std::string s = "invalid msa parameters:";
    for (const auto& x : v) s += "\n  - " + x;
    return s;
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

GateStatus gate(std::string name, std::string expr, double lhs, double rhs) {
    return GateStatus{std::move(name), std::move(expr), lhs, rhs, lhs >= rhs};
}

void require_trials(const McOptions& mc) {
    if (mc.trials == 0) throw DomainError("at least one trial is required");
}

double cube_volume(std::size_t d, double L) { return std::pow(2.0 * L + 1.0, static_cast<double>(d)); }

}  // namespace

ParameterError::ParameterError(std::vector<std::string> v) : DomainError(join(v)), violations(std::move(v)) {}

MsaParams MsaParams::defaults(std::size_t d) {
    MsaParams m;
    m.d = d;
    m.p = 2.0 * static_cast<double>(d) + 2.0;
    m.alpha = 0.5 * (1.0 + m.alpha_upper());
    return m;
}

std::vector<std::string> validate(const MsaParams& m) {
    std::vector<std::string> out;
    if (m.d < 1) out.push_back("dimension d must be at least 1");
    const double d = static_cast<double>(m.d);
    if (!(m.p > 2.0 * d)) out.push_back("p > 2d violated (p = " + num(m.p) + ", 2d = " + num(2.0 * d) + ")");
    if (!(m.alpha > 1.0 && m.alpha < m.alpha_upper()))
        out.push_back("1 < alpha < 2p/(p+2d) violated (alpha = " + num(m.alpha) + ", 2p/(p+2d) = " +
                      num(m.alpha_upper()) + ")");
    if (!(m.alpha < 2.0)) out.push_back("alpha < 2 violated (alpha = " + num(m.alpha) + ")");
    if (!(m.L0 >= 1.0) || !std::isfinite(m.L0) || m.L0 != std::floor(m.L0))
        out.push_back("L0 must be a positive integer (L0 = " + num(m.L0) + ")");
    if (!std::isfinite(m.gamma0) || m.gamma0 < 0) out.push_back("gamma0 must be finite and >= 0");
    if (m.energy && !std::isfinite(*m.energy)) out.push_back("energy must be finite");
    if (m.interval && !(m.interval->first <= m.interval->second))
        out.push_back("energy interval [E1, E2] needs E1 <= E2");
    return out;
}

void require_valid(const MsaParams& m) {
    auto v = validate(m);
    if (!v.empty()) throw ParameterError(std::move(v));
}

double next_scale(double l, double alpha) {
    const long double r = std::pow(static_cast<long double>(l), static_cast<long double>(alpha));
    // pow may land a hair above an exact integer power; do not round that up.
    const long double c = std::ceil(r * (1.0L - 1e-15L));
    return static_cast<double>(std::max(c, static_cast<long double>(l) + 1.0L));
}

RateReport rate_recursion(double gamma0, const std::vector<double>& scales, double alpha) {
    RateReport rep;
    if (scales.empty()) return rep;
    double g = gamma0;
    rep.gamma.push_back(g);
    for (std::size_t k = 0; k + 1 < scales.size(); ++k) {
        const double L = scales[k];
        g = g * (1.0 - 4.0 / std::pow(L, alpha - 1.0)) - 2.0 / std::pow(L, alpha / 2.0);
        rep.gamma.push_back(g);
    }
    const double L0 = scales.front();
    rep.gates_hold = gamma0 >= 16.0 / std::pow(L0, alpha / 2.0) && std::pow(L0, alpha - 1.0) >= 32.0 &&
                     std::pow(L0, (alpha - 1.0) * (alpha - 1.0)) >= 2.0;
    rep.min_gamma = *std::min_element(rep.gamma.begin(), rep.gamma.end());
    rep.half_floor_holds = gamma0 > 0 && rep.min_gamma >= gamma0 / 2.0;
    rep.sqrt_floor_holds = true;
    rep.nonincreasing = true;
    for (std::size_t k = 0; k < rep.gamma.size(); ++k) {
        if (rep.gamma[k] < 2.0 / std::sqrt(scales[k])) rep.sqrt_floor_holds = false;
        if (k > 0 && rep.gamma[k] > rep.gamma[k - 1]) rep.nonincreasing = false;
        if (!rep.first_negative && rep.gamma[k] < 0) rep.first_negative = k;
    }
    return rep;
}

TailSum scale_tail_sum(double L0, double alpha, double beta) {
    TailSum t;
    t.beta = beta;
    t.bound = 2.0 / std::pow(L0, beta);
    t.precondition = std::pow(L0, beta * (alpha - 1.0)) >= 2.0 * (1.0 - 1e-12);
    double L = L0;
    for (;;) {
        const double term = std::pow(L, -beta);
        t.sum += term;
        ++t.terms;
        if (term <= 1e-17 * t.sum || t.terms >= 200) break;
        L = next_scale(L, alpha);
        if (!std::isfinite(L)) break;
    }
    t.holds = t.sum <= t.bound;
    return t;
}

MsaSchedule build_schedule(const MsaParams& params, std::size_t k_max) {
    require_valid(params);
    MsaSchedule s;
    const double a = params.alpha;
    const double d = static_cast<double>(params.d);
    s.L.push_back(params.L0);
    for (std::size_t k = 0; k < k_max; ++k) {
        const double nxt = next_scale(s.L.back(), a);
        if (!std::isfinite(nxt)) break;
        s.L.push_back(nxt);
    }
    for (double L : s.L)
        if (L >= 9007199254740992.0) s.exact_integers = false;
    const RateReport rr = rate_recursion(params.gamma0, s.L, a);
    s.gamma = rr.gamma;

    const double L0 = params.L0;
    s.gates.push_back(gate("initial_rate", "gamma0 >= 16/L0^(alpha/2)", params.gamma0, 16.0 / std::pow(L0, a / 2.0)));
    s.gates.push_back(gate("scale_growth", "L0^(alpha-1) >= 32", std::pow(L0, a - 1.0), 32.0));
    s.gates.push_back(gate("scale_growth_squared", "L0^((alpha-1)^2) >= 2", std::pow(L0, (a - 1.0) * (a - 1.0)), 2.0));
    for (double beta : {a - 1.0, a / 2.0}) {
        const TailSum t = scale_tail_sum(L0, a, beta);
        // lhs >= rhs convention: bound minus sum must be nonnegative.
        s.gates.push_back(gate("tail_sum_beta_" + num(beta), "sum_k 1/L_k^beta <= 2/L0^beta", t.bound, t.sum));
    }
    s.gates.push_back(gate("rate_half_floor", "min_k gamma_k >= gamma0/2", rr.min_gamma, params.gamma0 / 2.0));
    for (std::size_t k = 0; k < s.L.size(); ++k)
        s.gates.push_back(gate("rate_sqrt_floor_k" + std::to_string(k), "gamma_k >= 2/sqrt(L_k)", s.gamma[k],
                               2.0 / std::sqrt(s.L[k])));

    for (std::size_t k = 0; k + 1 < s.L.size(); ++k) {
        BudgetLine b;
        b.k = k;
        b.L_k = s.L[k];
        b.L_next = s.L[k + 1];
        // L_k-cubes whose centres lie in the enlarged annulus, counted exactly.
        const double outer = 2.0 * (8.0 * b.L_next - b.L_k - 1.0) + 1.0;
        const double inner = 2.0 * (3.0 * b.L_k + 1.0) + 1.0;
        b.cube_count = std::pow(outer, d) - std::pow(inner, d);
        b.count_bound = b.cube_count / std::pow(b.L_k, 2.0 * params.p);
        b.constant = b.cube_count / std::pow(b.L_next, d);
        b.power_bound = b.constant / std::pow(b.L_k, 2.0 * params.p - a * d);
        s.budgets.push_back(b);
    }
    return s;
}

ScaleEstimate single_scale_probability(std::size_t d, Coord L, double E, double gamma, const Distribution& dist,
                                       const McOptions& mc, double p) {
    require_trials(mc);
    const Cube cube = Cube::centered(d, L);
    auto bad = parallel_map(mc.trials, mc.workers, [&](std::size_t r) -> int {
        const Potential v = sample_potential(cube, dist, mc.seed, r);
        return classify_cube(cube, v, E, gamma).good ? 0 : 1;
    });
    std::uint64_t k = 0;
    for (int b : bad) k += static_cast<std::uint64_t>(b);
    ScaleEstimate s;
    s.estimate = proportion_estimate(k, mc.trials, mc.seed);
    s.target = std::pow(static_cast<double>(L), -p);
    s.below_target = s.estimate.ci_hi <= s.target;
    return s;
}

TwoCubeScaleEstimate two_cube_probability(std::size_t d, Coord L, std::pair<double, double> interval, double dE,
                                          double gamma, const Distribution& dist, const McOptions& mc, double p,
                                          const Site& offset1, const Site& offset2) {
    require_trials(mc);
    if (!(dE > 0)) throw DomainError("grid step must be positive");
    if (!(interval.first <= interval.second)) throw DomainError("energy interval needs E1 <= E2");
    if (offset1.dim() != d || offset2.dim() != d) throw DomainError("cube offsets must have dimension d");
    const Cube c1(offset1, L), c2(offset2, L);
    if (dist_inf(c1.center, c2.center) <= 2 * L) throw DomainError("two-cube probability needs disjoint cubes");

    std::vector<double> grid;
    const auto steps = static_cast<std::size_t>(std::floor((interval.second - interval.first) / dE + 1e-9));
    for (std::size_t i = 0; i <= steps; ++i) grid.push_back(interval.first + static_cast<double>(i) * dE);
    if (grid.back() < interval.second) grid.push_back(interval.second);
    const double h = grid.size() == 1 ? 0.0 : dE / 2.0;
    const double threshold = std::exp(-gamma * static_cast<double>(L));

    struct Outcome {
        int grid_fail = 0, interval_fail = 0;
    };
    auto outcomes = parallel_map(mc.trials, mc.workers, [&](std::size_t r) {
        const Potential v1 = sample_potential(c1, dist, mc.seed, r);
        const Potential v2 = sample_potential(c2, dist, mc.seed, r);
        const SpectralResolvent r1(build_h(c1, BoundaryKind::Simple, &v1));
        const SpectralResolvent r2(build_h(c2, BoundaryKind::Simple, &v2));
        Outcome o;
        for (double E : grid) {
            const CubeVerdict a = classify_cube(r1, E, gamma);
            const CubeVerdict b = classify_cube(r2, E, gamma);
            if (!a.good && !b.good) o.grid_fail = 1;
            // Good on the whole cell [E-h, E+h] by the resolvent Lipschitz bound.
            auto cell_good = [&](const CubeVerdict& v) {
                if (!v.good || v.dist_to_spectrum <= h) return false;
                return v.max_abs_green + resolvent_lipschitz_margin(h, v.dist_to_spectrum, v.dist_to_spectrum - h) <=
                       threshold;
            };
            if (!cell_good(a) && !cell_good(b)) o.interval_fail = 1;
            if (o.grid_fail) break;
        }
        return o;
    });
    std::uint64_t gf = 0, itf = 0;
    for (const auto& o : outcomes) {
        gf += static_cast<std::uint64_t>(o.grid_fail);
        itf += static_cast<std::uint64_t>(o.interval_fail);
    }
    TwoCubeScaleEstimate t;
    t.grid_level = proportion_estimate(gf, mc.trials, mc.seed);
    t.interval_level = proportion_estimate(itf, mc.trials, mc.seed);
    t.target = std::pow(static_cast<double>(L), -2.0 * p);
    t.grid_points = grid.size();
    t.cell_half_width = h;
    t.below_target = t.interval_level.ci_hi <= t.target;
    return t;
}

InductionBudget evaluate_budget(double l, double p, double alpha, std::size_t d, double norm_g) {
    InductionBudget b;
    b.l = l;
    b.L = next_scale(l, alpha);
    const double dd = static_cast<double>(d);
    const double target = std::pow(b.L, -p) / 3.0;
    const double vol_L = cube_volume(d, b.L);
    auto add = [&](std::string name, double value) { b.terms.push_back({std::move(name), value, target, value <= target}); };
    add("resonant_big_cube", 4.0 * norm_g * vol_L * std::exp(-std::sqrt(b.L)));
    add("resonant_2l_region", 4.0 * norm_g * vol_L * std::pow(4.0 * l + 1.0, dd) * std::exp(-std::sqrt(2.0 * l)));
    add("two_bad_subcubes", vol_L * vol_L * std::pow(l, -2.0 * p));
    b.all_pass = std::all_of(b.terms.begin(), b.terms.end(), [](const BudgetTerm& t) { return t.pass; });
    b.marginal = alpha >= 2.0 * p / (p + 2.0 * dd) * (1.0 - 1e-12);
    return b;
}

InductionBudget induction_budget_check(double l, double p, double alpha, std::size_t d, double norm_g,
                                       double scan_limit) {
    InductionBudget b = evaluate_budget(l, p, alpha, d, norm_g);
    double x = 2.0;
    while (x <= scan_limit) {
        if (evaluate_budget(x, p, alpha, d, norm_g).all_pass) {
            b.smallest_l = x;
            break;
        }
        x = x < 1e5 ? x + 1.0 : std::ceil(x * 1.01);
    }
    return b;
}

LargeDisorderReport initial_scale_large_disorder(std::size_t d, Coord L0, double gamma, double p,
                                                 const Distribution& dist, const McOptions& mc, double grid_step) {
    const auto g = dist.density_bound();
    if (!g) throw HypothesisError("large-disorder estimate needs a bounded density; " + dist.describe() + " has none");
    if (L0 < 1) throw DomainError("L0 must be at least 1");
    LargeDisorderReport rep;
    const double L = static_cast<double>(L0);
    const double geom = 2.0 * 4.0 * std::exp(gamma * L) * std::pow(2.0 * L + 1.0, 2.0 * static_cast<double>(d));
    rep.bound = geom * *g;
    rep.target = std::pow(L, -2.0 * p);
    rep.threshold_g = rep.target / geom;
    rep.analytic_pass = rep.bound <= rep.target;
    if (mc.trials == 0) return rep;
    if (!(grid_step > 0)) throw DomainError("grid step must be positive");

    Site shift = Site::origin(d);
    shift.x[0] = 2 * L0 + 1;
    const Cube c1 = Cube::centered(d, L0), c2(shift, L0);
    const auto [lo, hi] = dist.support();
    const double E_lo = lo - 1.0, E_hi = hi + 4.0 * static_cast<double>(d) + 1.0;
    const double eps = std::exp(-gamma * L);
    struct Outcome {
        int spectral = 0, grid = 0;
    };
    auto outcomes = parallel_map(mc.trials, mc.workers, [&](std::size_t r) {
        const Potential v1 = sample_potential(c1, dist, mc.seed, r);
        const Potential v2 = sample_potential(c2, dist, mc.seed, r);
        const SpectralResolvent r1(build_h(c1, BoundaryKind::Simple, &v1));
        const SpectralResolvent r2(build_h(c2, BoundaryKind::Simple, &v2));
        Outcome o;
        o.spectral = min_pair_distance(r1.eigenvalues(), r2.eigenvalues()) < 2.0 * eps ? 1 : 0;
        for (double E = E_lo; E <= E_hi && !o.grid; E += grid_step)
            if (!classify_cube(r1, E, gamma).good && !classify_cube(r2, E, gamma).good) o.grid = 1;
        return o;
    });
    std::uint64_t s = 0, gr = 0;
    for (const auto& o : outcomes) {
        s += static_cast<std::uint64_t>(o.spectral);
        gr += static_cast<std::uint64_t>(o.grid);
    }
    rep.spectral_event = proportion_estimate(s, mc.trials, mc.seed);
    rep.grid_event = proportion_estimate(gr, mc.trials, mc.seed);
    rep.mc_consistent = rep.spectral_event->ci_lo <= rep.bound && rep.grid_event->ci_lo <= rep.bound;
    return rep;
}

std::vector<Site> tiling_centers(std::size_t d, Coord ell0, Coord r) {
    if (r < 1 || r % 2 == 0) throw DomainError("tiling needs an odd number r of cubes per side");
    if (ell0 < 0) throw DomainError("ell0 must be nonnegative");
    const Cube index_cube = Cube::centered(d, (r - 1) / 2);
    std::vector<Site> out;
    for (const Site& i : cube_sites(index_cube)) {
        Site c = i;
        for (auto& x : c.x) x *= 2 * ell0 + 1;
        out.push_back(c);
    }
    return out;
}

namespace {

double neumann_ground(const Cube& cube, const Potential& v) {
    return eigen(build_h(cube, BoundaryKind::Neumann, &v), false).values[0];
}

}  // namespace

LowEnergyReport initial_scale_low_energy(std::size_t d, const Distribution& dist, const LowEnergyOptions& opt) {
    LowEnergyReport rep;
    rep.ell0 = opt.ell0;
    rep.r = opt.r;
    rep.tile_centers = tiling_centers(d, opt.ell0, opt.r);
    rep.L0 = opt.r * opt.ell0 + (opt.r - 1) / 2;
    const Cube big = Cube::centered(d, rep.L0);
    rep.big_sites = big.size();
    rep.tiled_sites = rep.tile_centers.size() * Cube::centered(d, opt.ell0).size();
    std::vector<Cube> tiles;
    for (const auto& c : rep.tile_centers) tiles.emplace_back(c, opt.ell0);
    {
        std::vector<Site> covered;
        for (const auto& t : tiles)
            for (const auto& s : cube_sites(t)) covered.push_back(s);
        const SiteSet u(covered);
        rep.tiling_exact = u.size() == rep.big_sites && rep.tiled_sites == rep.big_sites &&
                           std::all_of(covered.begin(), covered.end(), [&](const Site& s) { return big.contains(s); });
    }
    if (!rep.tiling_exact) throw DomainError("tiling of the big cube is not exact");

    // (a) Decoupling into tiles only lowers the Neumann ground state.
    if (opt.tiling_trials > 0) {
        auto margins = parallel_map(opt.tiling_trials, opt.workers, [&](std::size_t t) {
            const Potential v = sample_potential(big, dist, opt.seed, t);
            double m = std::numeric_limits<double>::infinity();
            for (const auto& tile : tiles) m = std::min(m, neumann_ground(tile, v));
            return neumann_ground(big, v) - m;
        });
        rep.inequality_checks = opt.tiling_trials;
        rep.min_margin = *std::min_element(margins.begin(), margins.end());
        for (double m : margins)
            if (m < -1e-12) ++rep.inequality_violations;
    }

    // (b) Small-cube tails at the threshold 1/(beta ell^2) with beta = 1/c(ell).
    const McOptions tail_mc{opt.tail_trials, opt.seed ^ 0x7461696cULL, opt.workers};
    for (Coord ell : opt.tail_ells) {
        TailRow row;
        row.ell0 = ell;
        const double e1 = free_neumann_gap(d, ell);
        row.c = static_cast<double>(ell * ell) * e1;
        row.threshold = e1;
        if (opt.tail_trials > 0) row.tail = ground_state_tail(d, ell, row.threshold, dist, tail_mc);
        rep.tails.push_back(row);
    }
    if (rep.tails.size() >= 2 && opt.tail_trials > 0) {
        rep.tail_decreasing = true;
        for (std::size_t i = 1; i < rep.tails.size(); ++i)
            if (!(rep.tails[i].tail.ci_hi < rep.tails[i - 1].tail.ci_lo)) rep.tail_decreasing = false;
        const double small = std::max(rep.tails.front().tail.estimate, 1.0 / static_cast<double>(opt.tail_trials));
        rep.decay_exponent_ratio = std::log(rep.tails.back().tail.ci_hi) / std::log(small);
    }

    // (c) Union bound over the r^d tiles at 2 gamma = 1/(beta ell0^2).
    const double e1 = free_neumann_gap(d, opt.ell0);
    rep.gamma = e1 / 2.0;
    rep.rate_times_sqrt_L0 = rep.gamma * std::sqrt(static_cast<double>(rep.L0));
    if (opt.tail_trials > 0) {
        const Cube tile0 = Cube::centered(d, opt.ell0);
        auto hits = parallel_map(opt.tail_trials, opt.workers, [&](std::size_t t) {
            const Potential vt = sample_potential(tile0, dist, tail_mc.seed ^ 0x756e696fULL, t);
            const Potential vb = sample_potential(big, dist, tail_mc.seed ^ 0x6469726cULL, t);
            return std::pair<int, int>{neumann_ground(tile0, vt) <= 2.0 * rep.gamma ? 1 : 0,
                                       neumann_ground(big, vb) <= 2.0 * rep.gamma ? 1 : 0};
        });
        std::uint64_t kt = 0, kb = 0;
        for (auto [a, b] : hits) {
            kt += static_cast<std::uint64_t>(a);
            kb += static_cast<std::uint64_t>(b);
        }
        const McEstimate tile_tail = proportion_estimate(kt, opt.tail_trials, tail_mc.seed);
        rep.union_bound = std::pow(static_cast<double>(opt.r), static_cast<double>(d)) * tile_tail.ci_hi;
        rep.direct = proportion_estimate(kb, opt.tail_trials, tail_mc.seed);
        rep.union_consistent = rep.direct->ci_lo <= rep.union_bound;
    }
    return rep;
}

}  // namespace anderson
