#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "anderson/anderson.hpp"

namespace anderson::lab::detail {

namespace {

using I = std::int64_t;

Site axis_site(std::size_t d, Coord x) {
    Site s = Site::origin(d);
    s.x[0] = x;
    return s;
}

Record& put(Record& r, const std::string& prefix, const McEstimate& m) {
    r.set(prefix, m.estimate);
    r.set(prefix + "_ci_lo", m.ci_lo);
    r.set(prefix + "_ci_hi", m.ci_hi);
    if (m.successes) r.set(prefix + "_hits", static_cast<I>(*m.successes));
    return r;
}

std::vector<double> energy_list(Reader& r) {
    if (r.has("interval")) {
        const auto iv = r.numbers("interval");
        const double step = r.number("grid_step", 0.1);
        r.require(iv.size() == 2 && iv[0] <= iv[1], "interval must be [E1, E2] with E1 <= E2");
        r.require(step > 0, "grid_step must be positive");
        std::vector<double> out;
        if (iv.size() != 2 || !(step > 0) || iv[0] > iv[1]) return out;
        const auto n = static_cast<std::size_t>(std::floor((iv[1] - iv[0]) / step + 1e-9));
        for (std::size_t i = 0; i <= n; ++i) out.push_back(iv[0] + static_cast<double>(i) * step);
        return out;
    }
    return r.numbers("energies", std::vector<double>{0.5});
}

// ---------------------------------------------------------------- dos
Prepared dos(Reader& r, std::size_t d) {
    const Coord L = r.integer("L", 4);
    const BoundaryKind bc = r.boundary("bc", BoundaryKind::Simple);
    const Distribution dist = r.distribution("distribution", Distribution::uniform(0.0, 1.0));
    const auto energies = energy_list(r);
    const double eta = r.number("probe_eta", 0.0);
    const std::uint64_t trials = r.count("trials", 1000);
    r.require(L >= 0, "L must be >= 0");
    r.require(eta >= 0, "probe_eta must be >= 0 (0 disables the trace probe)");
    r.require(trials >= 1, "trials must be >= 1");
    return {trials, [=](const Context& c) {
                std::vector<Record> out;
                const McOptions mc{trials, c.seed, c.workers};
                const IdsCurve curve = ids_curve(energies, d, L, bc, dist, mc);
                for (std::size_t i = 0; i < energies.size(); ++i) {
                    Record rec;
                    rec.set("row_type", std::string("ids")).set("E", energies[i]).set("L", static_cast<I>(L));
                    put(rec, "N", curve.values[i]);
                    if (eta > 0) {
                        const auto probe = ids_convergence_probe({energies[i], eta}, d, L, dist, c.seed, 0);
                        rec.set("probe_difference", probe.difference).set("probe_bound", probe.bound);
                        rec.check("probe_within_bound", probe.within_bound);
                    }
                    out.push_back(std::move(rec));
                }
                return out;
            }};
}

// ---------------------------------------------------------------- wegner
Prepared wegner(Reader& r, std::size_t d) {
    const Coord L = r.integer("L", 2);
    const double E = r.number("energy", 0.5);
    auto eps = r.numbers("eps", std::vector<double>{0.05, 0.025});
    const BoundaryKind bc = r.boundary("bc", BoundaryKind::Simple);
    const Distribution dist = r.distribution("distribution", Distribution::uniform(0.0, 1.0));
    const std::uint64_t trials = r.count("trials", 10000);
    r.require(L >= 0, "L must be >= 0");
    r.require(!eps.empty(), "eps must list at least one window half-width");
    for (double e : eps) r.require(e > 0, "every eps must be positive");
    r.require(trials >= 1, "trials must be >= 1");
    r.require(dist.density_bound().has_value(), "wegner needs a distribution with a bounded density");
    return {trials, [=](const Context& c) {
                std::vector<Record> out;
                const Cube cube = Cube::centered(d, L);
                std::vector<double> means;
                for (double e : eps) {
                    const WegnerResult w = wegner_experiment(E, e, cube, dist, {trials, c.seed, c.workers}, bc);
                    Record rec;
                    rec.set("row_type", std::string("window")).set("E", E).set("eps", e);
                    rec.set("sites", static_cast<I>(cube.size()));
                    put(rec, "count", w.count);
                    rec.set("bound", w.bound).check("pass", w.pass);
                    means.push_back(w.count.estimate);
                    out.push_back(std::move(rec));
                }
                for (std::size_t i = 1; i < eps.size(); ++i) {
                    Record rec;
                    const double ratio = means[0] > 0 ? means[i] / means[0] : 0.0;
                    const double expected = eps[i] / eps[0];
                    rec.set("row_type", std::string("linearity")).set("eps", eps[i]).set("ratio", ratio);
                    rec.set("expected_ratio", expected);
                    rec.check("linearity_pass", std::abs(ratio - expected) <= 0.2);
                    out.push_back(std::move(rec));
                }
                return out;
            }};
}

// ---------------------------------------------------------------- two_cube_wegner
Prepared two_cube_wegner(Reader& r, std::size_t d) {
    const Coord L = r.integer("L", 1);
    const Coord gap = r.integer("gap", 0);
    auto eps = r.numbers("eps", std::vector<double>{0.01});
    const Distribution dist = r.distribution("distribution", Distribution::uniform(0.0, 1.0));
    const std::uint64_t trials = r.count("trials", 10000);
    r.require(L >= 0 && gap >= 0, "L and gap must be >= 0");
    for (double e : eps) r.require(e >= 0, "every eps must be >= 0");
    r.require(trials >= 1, "trials must be >= 1");
    r.require(dist.density_bound().has_value(), "two_cube_wegner needs a distribution with a bounded density");
    return {trials, [=](const Context& c) {
                std::vector<Record> out;
                const Cube c1 = Cube::centered(d, L), c2(axis_site(d, 2 * L + 1 + gap), L);
                for (double e : eps) {
                    const TwoCubeResult t = two_cube_resonance_experiment(c1, c2, e, dist, {trials, c.seed, c.workers});
                    Record rec;
                    rec.set("eps", e).set("sites1", static_cast<I>(c1.size())).set("sites2", static_cast<I>(c2.size()));
                    put(rec, "pair_close", t.pair_close);
                    put(rec, "common_energy", t.common_energy);
                    rec.set("bound", t.bound).set("pair_bound", t.pair_bound).check("pass", t.pass);
                    out.push_back(std::move(rec));
                }
                return out;
            }};
}

// ---------------------------------------------------------------- lifshitz
Prepared lifshitz(Reader& r, std::size_t d) {
    const auto Ls = r.integers("L", std::vector<I>{8, 16, 32});
    const auto tail_Ls = r.integers("tail_L", std::vector<I>{2, 3});
    const Distribution dist = r.distribution("distribution", Distribution::uniform(0.0, 1.0));
    const std::uint64_t trials = r.count("trials", 100000);
    const double lo = r.number("gap_scaled_min", 1.0), hi = r.number("gap_scaled_max", 15.0);
    for (I L : Ls) r.require(L >= 2, "every L must be >= 2");
    for (I L : tail_Ls) r.require(L >= 2, "every tail_L must be >= 2");
    r.require(!Ls.empty(), "L must list at least one radius");
    return {trials, [=](const Context& c) {
                std::vector<Record> out;
                const LifshitzReport geo = lifshitz_probes(d, {Ls.begin(), Ls.end()}, dist, {0, c.seed, c.workers});
                for (const auto& row : geo.rows) {
                    Record rec;
                    rec.set("row_type", std::string("geometry")).set("L", static_cast<I>(row.L));
                    rec.set("neumann_gap", row.neumann_gap).set("gap_scaled", row.gap_scaled);
                    rec.set("tent_quotient", row.tent_quotient).set("tent_scaled", row.tent_scaled);
                    rec.check("gap_scaled_in_range", row.gap_scaled >= lo && row.gap_scaled <= hi);
                    out.push_back(std::move(rec));
                }
                Record sum;
                sum.set("row_type", std::string("constants")).set("c", geo.c).set("c0", geo.c0);
                out.push_back(std::move(sum));
                if (trials > 0 && !tail_Ls.empty()) {
                    const LifshitzReport tails =
                        lifshitz_probes(d, {tail_Ls.begin(), tail_Ls.end()}, dist, {trials, c.seed, c.workers});
                    for (const auto& row : tails.rows) {
                        Record rec;
                        rec.set("row_type", std::string("tail")).set("L", static_cast<I>(row.L));
                        rec.set("threshold", row.threshold);
                        put(rec, "tail", *row.tail);
                        out.push_back(std::move(rec));
                    }
                    if (tails.rows.size() >= 2) {
                        Record rec;
                        rec.set("row_type", std::string("tail_summary"));
                        rec.check("tail_decreasing", tails.tail_decreasing);
                        out.push_back(std::move(rec));
                    }
                }
                return out;
            }};
}

// ---------------------------------------------------------------- green_check
struct GreenInstance {
    Cube inner, ambient;
    Site n, m;
};

GreenInstance random_green_instance(std::size_t d, Coord L, KeyedStream& rng) {
    auto pick = [&](Coord lo, Coord hi) { return lo + static_cast<Coord>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    GreenInstance g;
    g.ambient = Cube::centered(d, L);
    const Coord l = pick(0, L - 1);
    Site c = Site::origin(d);
    for (auto& x : c.x) x = pick(-(L - 1 - l), L - 1 - l);
    g.inner = Cube(c, l);
    g.n = g.inner.site_at(static_cast<std::size_t>(rng() % g.inner.size()));
    do {
        g.m = g.ambient.site_at(static_cast<std::size_t>(rng() % g.ambient.size()));
    } while (g.inner.contains(g.m));
    return g;
}

Prepared green_check(Reader& r, std::size_t d) {
    const Coord L = r.integer("L", 4);
    const std::uint64_t instances = r.count("instances", 100);
    const Distribution dist = r.distribution("distribution", Distribution::scaled_uniform(4.0));
    const double min_dist = r.number("min_spectral_distance", 1e-6);
    r.require(L >= 1, "L must be >= 1 so that a proper inner cube exists");
    r.require(instances >= 1, "instances must be >= 1");
    return {instances, [=](const Context& c) {
                std::vector<Record> out;
                auto reports = parallel_map(instances, c.workers, [&](std::size_t i) {
                    KeyedStream rng(c.seed, i, 0x67726565);
                    const GreenInstance g = random_green_instance(d, L, rng);
                    const Potential v = sample_potential(g.ambient, dist, c.seed, i);
                    const auto [a, b] = dist.support();
                    const double E_lo = a - 1.0, E_hi = b + 4.0 * static_cast<double>(d) + 1.0;
                    const auto s1 = eigen(build_h(g.inner, BoundaryKind::Simple, &v), false).values;
                    const auto s2 = eigen(build_h(g.ambient, BoundaryKind::Simple, &v), false).values;
                    double E = rng.uniform(E_lo, E_hi);
                    while (distance_to_spectrum(s1, E) < min_dist || distance_to_spectrum(s2, E) < min_dist)
                        E = rng.uniform(E_lo, E_hi);
                    return std::pair{E, geometric_resolvent_check(g.inner, g.ambient, v, E, g.n, g.m)};
                });
                for (std::size_t i = 0; i < reports.size(); ++i) {
                    const auto& [E, rep] = reports[i];
                    Record rec;
                    rec.set("instance", static_cast<I>(i)).set("E", E).set("lhs", rep.lhs).set("rhs", rep.rhs);
                    rec.set("residual", rep.residual).set("relative", rep.relative);
                    rec.check("pass", rep.within_tolerance);
                    out.push_back(std::move(rec));
                }
                return out;
            }};
}

// ---------------------------------------------------------------- ct_check
Prepared ct_check(Reader& r, std::size_t d) {
    const Coord L = r.integer("L", 3);
    const std::uint64_t instances = r.count("instances", 100);
    const Distribution dist = r.distribution("distribution", Distribution::scaled_uniform(4.0));
    const double dmin = r.number("delta_min", 0.05), dmax = r.number("delta_max", 1.0);
    r.require(L >= 0, "L must be >= 0");
    r.require(instances >= 1, "instances must be >= 1");
    r.require(dmin > 0 && dmin <= dmax && dmax <= 1.0, "need 0 < delta_min <= delta_max <= 1");
    return {instances, [=](const Context& c) {
                std::vector<Record> out;
                const Cube cube = Cube::centered(d, L);
                auto reports = parallel_map(instances, c.workers, [&](std::size_t i) {
                    KeyedStream rng(c.seed, i, 0x6374);
                    const Potential v = sample_potential(cube, dist, c.seed, i);
                    const HamMatrix h = build_h(cube, BoundaryKind::Simple, &v);
                    const auto s = eigen(h, false).values;
                    const double delta = rng.uniform(dmin, dmax);
                    // Alternate between energies below and above the spectrum at distance delta.
                    const double E = i % 2 == 0 ? s[0] - delta : s[s.size() - 1] + delta;
                    return std::pair{combes_thomas_check(h, E), resolvent_norm_check(h, std::complex<double>(E, 0.0))};
                });
                for (std::size_t i = 0; i < reports.size(); ++i) {
                    const auto& [ct, rn] = reports[i];
                    Record rec;
                    rec.set("instance", static_cast<I>(i)).set("delta", ct.delta).set("worst_ratio", ct.worst_ratio);
                    rec.set("mu", ct.mu).set("commutator_norm", ct.commutator_norm).set("commutator_bound", ct.commutator_bound);
                    rec.set("resolvent_norm", rn.norm).set("inverse_distance", rn.inv_dist);
                    rec.set("resolvent_relative_error", rn.relative_error);
                    rec.check("ct_pass", ct.pass);
                    rec.check("resolvent_pass", rn.relative_error <= 1e-8);
                    out.push_back(std::move(rec));
                }
                return out;
            }};
}

// ---------------------------------------------------------------- msa helpers
MsaParams read_msa(Reader& r, std::size_t d, bool need_schedule) {
    MsaParams m = MsaParams::defaults(d);
    m.p = r.number("p", m.p);
    const double upper = 2.0 * m.p / (m.p + 2.0 * static_cast<double>(d));
    m.alpha = r.number("alpha", 0.5 * (1.0 + upper));
    if (need_schedule) {
        m.L0 = r.number("L0", 10.0);
        m.gamma0 = r.number("gamma0", 16.0 / std::pow(m.L0, m.alpha / 2.0));
    }
    m.path = MsaPath::Weak;
    for (const auto& e : validate(m)) r.error(e);
    return m;
}

// ---------------------------------------------------------------- msa_single
Prepared msa_single(Reader& r, std::size_t d) {
    const MsaParams m = read_msa(r, d, false);
    const Coord L = r.integer("L", 8);
    const double E = r.number("energy", 0.5);
    const double gamma = r.number("gamma", 0.5);
    const Distribution dist = r.distribution("distribution", Distribution::scaled_uniform(100.0));
    const std::uint64_t trials = r.count("trials", 1000);
    r.require(L >= 1, "L must be >= 1");
    r.require(trials >= 1, "trials must be >= 1");
    return {trials, [=](const Context& c) {
                const ScaleEstimate s = single_scale_probability(d, L, E, gamma, dist, {trials, c.seed, c.workers}, m.p);
                Record rec;
                rec.set("L", static_cast<I>(L)).set("E", E).set("gamma", gamma).set("p", m.p);
                put(rec, "p_bad", s.estimate);
                rec.set("target", s.target).set("below_target", s.below_target);
                return std::vector<Record>{rec};
            }};
}

// ---------------------------------------------------------------- msa_two_cube
Prepared msa_two_cube(Reader& r, std::size_t d) {
    const MsaParams m = read_msa(r, d, false);
    const Coord L = r.integer("L", 8);
    const auto iv = r.numbers("interval", std::vector<double>{0.0, 1.0});
    const double step = r.number("grid_step", 0.05);
    const double gamma = r.number("gamma", 0.5);
    const Coord gap = r.integer("gap", 0);
    const Distribution dist = r.distribution("distribution", Distribution::scaled_uniform(100.0));
    const std::uint64_t trials = r.count("trials", 1000);
    r.require(L >= 1 && gap >= 0, "need L >= 1 and gap >= 0");
    r.require(iv.size() == 2 && iv[0] <= iv[1], "interval must be [E1, E2] with E1 <= E2");
    r.require(step > 0, "grid_step must be positive");
    r.require(trials >= 1, "trials must be >= 1");
    return {trials, [=](const Context& c) {
                const TwoCubeScaleEstimate t =
                    two_cube_probability(d, L, {iv[0], iv[1]}, step, gamma, dist, {trials, c.seed, c.workers}, m.p,
                                         Site::origin(d), axis_site(d, 2 * L + 1 + gap));
                Record rec;
                rec.set("L", static_cast<I>(L)).set("E1", iv[0]).set("E2", iv[1]).set("grid_step", step);
                rec.set("grid_points", static_cast<I>(t.grid_points)).set("cell_half_width", t.cell_half_width);
                put(rec, "grid_level", t.grid_level);
                put(rec, "interval_level", t.interval_level);
                rec.set("target", t.target).set("below_target", t.below_target);
                return std::vector<Record>{rec};
            }};
}

// ---------------------------------------------------------------- msa_schedule
Prepared msa_schedule(Reader& r, std::size_t d) {
    const MsaParams m = read_msa(r, d, true);
    const auto k_max = r.count("k_max", 20);
    const auto budget_l = r.numbers("budget_l", std::vector<double>{});
    const double norm_g = r.number("norm_g", 1.0);
    r.require(norm_g > 0, "norm_g must be positive");
    for (double l : budget_l) r.require(l >= 1, "every budget_l must be >= 1");
    return {0, [=](const Context&) {
                std::vector<Record> out;
                const MsaSchedule s = build_schedule(m, k_max);
                const RateReport rr = rate_recursion(m.gamma0, s.L, m.alpha);
                for (std::size_t k = 0; k < s.L.size(); ++k) {
                    Record rec;
                    rec.set("row_type", std::string("scale")).set("k", static_cast<I>(k)).set("L_k", s.L[k]);
                    rec.set("gamma_k", s.gamma[k]).set("sqrt_floor", 2.0 / std::sqrt(s.L[k]));
                    if (k < s.budgets.size()) {
                        const auto& b = s.budgets[k];
                        rec.set("cube_count", b.cube_count).set("count_bound", b.count_bound);
                        rec.set("budget_constant", b.constant).set("power_bound", b.power_bound);
                    }
                    out.push_back(std::move(rec));
                }
                for (const auto& g : s.gates) {
                    Record rec;
                    rec.set("row_type", std::string("gate")).set("name", g.name).set("expression", g.expression);
                    rec.set("lhs", g.lhs).set("rhs", g.rhs).set("gate_pass", g.pass);
                    out.push_back(std::move(rec));
                }
                for (double beta : {m.alpha - 1.0, m.alpha / 2.0}) {
                    const TailSum t = scale_tail_sum(m.L0, m.alpha, beta);
                    Record rec;
                    rec.set("row_type", std::string("tail_sum")).set("beta", beta).set("sum", t.sum).set("bound", t.bound);
                    rec.set("precondition", t.precondition);
                    rec.check("tail_sum_consistent", !t.precondition || t.holds);
                    out.push_back(std::move(rec));
                }
                for (double l : budget_l) {
                    const InductionBudget b = induction_budget_check(l, m.p, m.alpha, d, norm_g);
                    Record rec;
                    rec.set("row_type", std::string("budget")).set("l", b.l).set("L", b.L);
                    for (const auto& t : b.terms) {
                        rec.set(t.name, t.value);
                        rec.set(t.name + "_pass", t.pass);
                    }
                    rec.set("budget_target", b.terms.front().target).set("all_pass", b.all_pass);
                    rec.set("marginal", b.marginal);
                    if (b.smallest_l) rec.set("smallest_l", *b.smallest_l);
                    out.push_back(std::move(rec));
                }
                Record sum;
                sum.set("row_type", std::string("summary")).set("alpha", m.alpha).set("p", m.p).set("gamma0", m.gamma0);
                sum.set("gates_hold", rr.gates_hold).set("min_gamma", rr.min_gamma);
                sum.set("half_floor_holds", rr.half_floor_holds).set("sqrt_floor_holds", rr.sqrt_floor_holds);
                sum.set("exact_integers", s.exact_integers);
                sum.set("first_negative", rr.first_negative ? static_cast<I>(*rr.first_negative) : I{-1});
                sum.set("nonincreasing", rr.nonincreasing);
                // Under the gates the recursion multiplier is positive, so both must hold.
                sum.check("rate_consistent", !rr.gates_hold || (rr.half_floor_holds && rr.nonincreasing));
                out.push_back(std::move(sum));
                return out;
            }};
}

// ---------------------------------------------------------------- initial_scale
Prepared initial_scale(Reader& r, std::size_t d) {
    const std::string mode = r.text("mode", std::string("large_disorder"));
    if (mode == "large_disorder") {
        const Coord L0 = r.integer("L0", 5);
        const double gamma = r.number("gamma", 0.5);
        const double p = r.number("p", 2.0 * static_cast<double>(d) + 2.0);
        const double step = r.number("grid_step", 0.05);
        const Distribution dist = r.distribution("distribution", Distribution::scaled_uniform(100.0));
        const std::uint64_t trials = r.count("trials", 1000);
        r.require(L0 >= 1, "L0 must be >= 1");
        r.require(p > 2.0 * static_cast<double>(d), "p > 2d violated");
        r.require(step > 0, "grid_step must be positive");
        r.require(dist.density_bound().has_value(), "large-disorder estimate needs a bounded density");
        return {trials, [=](const Context& c) {
                    const LargeDisorderReport rep =
                        initial_scale_large_disorder(d, L0, gamma, p, dist, {trials, c.seed, c.workers}, step);
                    Record rec;
                    rec.set("mode", std::string("large_disorder")).set("L0", static_cast<I>(L0)).set("gamma", gamma);
                    rec.set("bound", rep.bound).set("target", rep.target).set("threshold_norm_g", rep.threshold_g);
                    rec.set("analytic_pass", rep.analytic_pass);
                    if (rep.spectral_event) put(rec, "spectral_event", *rep.spectral_event);
                    if (rep.grid_event) put(rec, "grid_event", *rep.grid_event);
                    rec.check("mc_consistent", rep.mc_consistent);
                    return std::vector<Record>{rec};
                }};
    }
    if (mode != "low_energy") r.error("mode must be large_disorder or low_energy (got '" + mode + "')");
    LowEnergyOptions opt;
    opt.ell0 = r.integer("ell0", 2);
    opt.r = r.integer("r", 3);
    const auto ells = r.integers("tail_ell0", std::vector<I>{3, 5});
    opt.tail_ells.assign(ells.begin(), ells.end());
    opt.tiling_trials = r.count("tiling_trials", 200);
    opt.tail_trials = r.count("trials", 100000);
    const Distribution dist = r.distribution("distribution", Distribution::uniform(0.0, 1.0));
    r.require(opt.r >= 1 && opt.r % 2 == 1, "r must be odd (the tiling needs a centre cube)");
    r.require(opt.ell0 >= 1, "ell0 must be >= 1");
    for (I e : ells) r.require(e >= 1, "every tail_ell0 must be >= 1");
    return {opt.tail_trials, [=](const Context& c) mutable {
                opt.seed = c.seed;
                opt.workers = c.workers;
                const LowEnergyReport rep = initial_scale_low_energy(d, dist, opt);
                std::vector<Record> out;
                Record t;
                t.set("mode", std::string("low_energy")).set("row_type", std::string("tiling"));
                t.set("ell0", static_cast<I>(rep.ell0)).set("r", static_cast<I>(rep.r)).set("L0", static_cast<I>(rep.L0));
                t.set("big_sites", static_cast<I>(rep.big_sites)).set("tiled_sites", static_cast<I>(rep.tiled_sites));
                t.set("checks", static_cast<I>(rep.inequality_checks)).set("min_margin", rep.min_margin);
                t.check("tiling_exact", rep.tiling_exact);
                t.check("tiling_inequality", rep.inequality_violations == 0);
                out.push_back(std::move(t));
                for (const auto& row : rep.tails) {
                    Record rec;
                    rec.set("mode", std::string("low_energy")).set("row_type", std::string("tail"));
                    rec.set("ell0", static_cast<I>(row.ell0)).set("c", row.c).set("threshold", row.threshold);
                    if (opt.tail_trials > 0) put(rec, "tail", row.tail);
                    out.push_back(std::move(rec));
                }
                Record u;
                u.set("mode", std::string("low_energy")).set("row_type", std::string("union"));
                u.set("gamma", rep.gamma).set("union_bound", rep.union_bound);
                if (rep.direct) put(u, "direct", *rep.direct);
                u.set("rate_times_sqrt_L0", rep.rate_times_sqrt_L0);
                u.set("decay_exponent_ratio", rep.decay_exponent_ratio);
                if (opt.tail_trials > 0) {
                    if (rep.tails.size() >= 2) u.check("tail_decreasing", rep.tail_decreasing);
                    u.check("union_consistent", rep.union_consistent);
                }
                out.push_back(std::move(u));
                return out;
            }};
}

// ---------------------------------------------------------------- dynamics
Prepared dynamics(Reader& r, std::size_t d) {
    const Coord L = r.integer("L", 10);
    const double T = r.number("T", 100.0);
    const Distribution dist = r.distribution("distribution", Distribution::scaled_uniform(50.0));
    auto radii = r.integers("radii", std::vector<I>{L / 2, L});
    const double p = r.number("moment_p", 2.0);
    const double sample_step = r.number("sample_step", 1.0);
    r.require(L >= 0, "L must be >= 0");
    r.require(T > 0, "T must be positive");
    r.require(p >= 0, "moment_p must be >= 0");
    r.require(sample_step > 0, "sample_step must be positive");
    for (I x : radii) r.require(x >= 0 && x <= L, "every radius must lie in [0, L]");
    return {0, [=](const Context& c) {
                const Cube cube = Cube::centered(d, L);
                const Potential v = sample_potential(cube, dist, c.seed, 0);
                const HamMatrix h = build_h(cube, BoundaryKind::Simple, &v);
                const EvolutionPlan plan = make_plan(h, delta_state(h, Site::origin(d)));
                const std::vector<Coord> rr(radii.begin(), radii.end());
                const SurvivalProfile prof = survival_profile(plan, rr, T);
                std::vector<double> times;
                const auto n = static_cast<std::size_t>(std::floor(T / sample_step + 1e-9));
                for (std::size_t i = 0; i <= n; ++i) times.push_back(static_cast<double>(i) * sample_step);
                const MomentProfile mom = transport_moment(plan, p, times);
                std::vector<Record> out;
                double unit_err = 0.0;
                for (std::size_t i = 0; i < times.size(); ++i) {
                    const Eigen::VectorXcd psi = evolve(plan, times[i]);
                    unit_err = std::max(unit_err, std::abs(psi.squaredNorm() - plan.norm2));
                    Record rec;
                    rec.set("row_type", std::string("series")).set("t", times[i]);
                    for (Coord rad : rr) {
                        double in = 0.0;
                        for (std::size_t k = 0; k < h.size(); ++k)
                            if (norm_inf(h.sites()[k]) <= rad) in += std::norm(psi[static_cast<Eigen::Index>(k)]);
                        rec.set("inside_r" + std::to_string(rad), in);
                    }
                    rec.set("moment", mom.values[i]);
                    out.push_back(std::move(rec));
                }
                for (const auto& row : prof.rows) {
                    Record rec;
                    rec.set("row_type", std::string("survival")).set("radius", static_cast<I>(row.radius));
                    rec.set("inside_average", row.inside_average).set("outside_average", row.outside_average);
                    rec.check("split_pass", row.max_split_error <= 1e-10);
                    out.push_back(std::move(rec));
                }
                std::vector<double> energies(plan.energies.data(), plan.energies.data() + plan.energies.size());
                const WienerReport w = wiener_average(energies, spectral_weights(plan), T);
                Record sum;
                sum.set("row_type", std::string("summary")).set("T", T);
                sum.set("unitarity_error", std::max(unit_err, prof.max_unitarity_error));
                sum.set("wiener_average", w.average).set("atomic_sum", w.atomic_sum).set("atoms", static_cast<I>(w.atoms));
                sum.set("moment_max", mom.max).set("plateau_ratio", plateau_ratio(mom, T / 2.0, T));
                sum.check("unitarity_pass", std::max(unit_err, prof.max_unitarity_error) <= 1e-10);
                out.push_back(std::move(sum));
                return out;
            }};
}

}  // namespace

const std::map<std::string, Preparer>& registry() {
    static const std::map<std::string, Preparer> r{
        {"dos", dos},
        {"wegner", wegner},
        {"two_cube_wegner", two_cube_wegner},
        {"lifshitz", lifshitz},
        {"green_check", green_check},
        {"ct_check", ct_check},
        {"msa_single", msa_single},
        {"msa_two_cube", msa_two_cube},
        {"msa_schedule", msa_schedule},
        {"initial_scale", initial_scale},
        {"dynamics", dynamics},
    };
    return r;
}

}  // namespace anderson::lab::detail
