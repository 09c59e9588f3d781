#include "anderson/dos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "anderson/errors.hpp"
#include "anderson/parallel.hpp"
#include "anderson/spectral.hpp"

namespace anderson {

namespace {

Eigen::VectorXd realization_spectrum(const Cube& cube, BoundaryKind bc, const Distribution& dist,
                                     std::uint64_t seed, std::uint64_t r) {
    const Potential v = sample_potential(cube, dist, seed, r);
    return eigen(build_h(cube, bc, &v), false).values;
}

void require_trials(const McOptions& mc) {
    if (mc.trials == 0) throw DomainError("at least one trial is required");
}

}  // namespace

McEstimate ids_estimate(double E, std::size_t d, Coord L, BoundaryKind bc, const Distribution& dist,
                        const McOptions& mc) {
    require_trials(mc);
    const Cube cube = Cube::centered(d, L);
    const double n = static_cast<double>(cube.size());
    auto samples = parallel_map(mc.trials, mc.workers, [&](std::size_t r) {
        const Potential v = sample_potential(cube, dist, mc.seed, r);
        return static_cast<double>(counting(build_h(cube, bc, &v), E).count) / n;
    });
    return mean_estimate(samples, mc.seed);
}

IdsCurve ids_curve(const std::vector<double>& energies, std::size_t d, Coord L, BoundaryKind bc,
                   const Distribution& dist, const McOptions& mc) {
    require_trials(mc);
    if (!std::is_sorted(energies.begin(), energies.end())) throw DomainError("energy grid must be ascending");
    const Cube cube = Cube::centered(d, L);
    const double n = static_cast<double>(cube.size());
    auto counts = parallel_map(mc.trials, mc.workers, [&](std::size_t r) {
        const Eigen::VectorXd ev = realization_spectrum(cube, bc, dist, mc.seed, r);
        std::vector<double> row(energies.size());
        for (std::size_t k = 0; k < energies.size(); ++k)
            row[k] = static_cast<double>(counting_dense(ev, energies[k]).count) / n;
        return row;
    });
    IdsCurve c;
    c.energies = energies;
    c.L = L;
    c.d = d;
    c.bc = bc;
    c.dist = dist;
    c.trials = mc.trials;
    for (std::size_t k = 0; k < energies.size(); ++k) {
        std::vector<double> s(mc.trials);
        for (std::size_t r = 0; r < mc.trials; ++r) s[r] = counts[r][k];
        c.values.push_back(mean_estimate(s, mc.seed));
    }
    return c;
}

namespace {

// Sum over sites of `sub` of (H - z)^{-1}(n,n), via the eigendecomposition of H.
std::complex<double> restricted_trace(const HamMatrix& h, const Cube& sub, std::complex<double> z) {
    const Spectrum s = eigen(h, true);
    const Eigen::MatrixXd& v = *s.vectors;
    std::vector<Eigen::Index> rows;
    for (std::size_t i = 0; i < sub.size(); ++i)
        rows.push_back(static_cast<Eigen::Index>(h.sites().index_of(sub.site_at(i))));
    std::complex<double> tr = 0.0;
    for (Eigen::Index j = 0; j < s.values.size(); ++j) {
        double w = 0.0;
        for (Eigen::Index r : rows) w += v(r, j) * v(r, j);
        tr += w / (s.values[j] - z);
    }
    return tr;
}

}  // namespace

ConvergenceProbe ids_convergence_probe(std::complex<double> z, std::size_t d, Coord L,
                                       const std::optional<Distribution>& dist, std::uint64_t seed,
                                       std::uint64_t realization, std::optional<Coord> buffer) {
    if (z.imag() == 0.0) throw DomainError("convergence probe needs Im z != 0");
    if (L < 1) throw DomainError("convergence probe needs L >= 1");
    const Coord B = buffer.value_or(L);
    const Cube small = Cube::centered(d, L);
    const Cube ambient = Cube::centered(d, L + B);
    const Potential v = dist ? sample_potential(ambient, *dist, seed, realization) : zero_potential(ambient);
    const HamMatrix hs = build_h(small, BoundaryKind::Simple, &v);
    const HamMatrix ha = build_h(ambient, BoundaryKind::Simple, &v);
    const double n = static_cast<double>(small.size());
    const std::complex<double> diff = (restricted_trace(hs, small, z) - restricted_trace(ha, small, z)) / n;
    ConvergenceProbe p;
    p.difference = std::abs(diff);
    p.constant = kTraceProbeConstantPerDim * static_cast<double>(d);
    p.bound = p.constant / (z.imag() * z.imag() * static_cast<double>(L));
    p.within_bound = p.difference <= p.bound;
    return p;
}

WegnerResult wegner_experiment(double E, double eps, const Cube& cube, const Distribution& dist,
                               const McOptions& mc, BoundaryKind bc) {
    const auto g = dist.density_bound();
    if (!g) throw HypothesisError("Wegner estimate needs a bounded density; " + dist.describe() + " has none");
    if (!(eps > 0)) throw DomainError("Wegner window needs eps > 0");
    require_trials(mc);
    auto samples = parallel_map(mc.trials, mc.workers, [&](std::size_t r) {
        const Eigen::VectorXd ev = realization_spectrum(cube, bc, dist, mc.seed, r);
        std::size_t k = 0;
        for (Eigen::Index i = 0; i < ev.size(); ++i) k += (ev[i] > E - eps && ev[i] <= E + eps) ? 1 : 0;
        return static_cast<double>(k);
    });
    WegnerResult w;
    w.count = mean_estimate(samples, mc.seed);
    w.bound = 4.0 * *g * static_cast<double>(cube.size()) * eps;
    w.pass = w.count.ci_hi <= w.bound;
    return w;
}

double min_pair_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        best = std::min(best, std::abs(a[i] - b[j]));
        if (a[i] < b[j]) ++i; else ++j;
    }
    return best;
}

TwoCubeResult two_cube_resonance_experiment(const Cube& c1, const Cube& c2, double eps, const Distribution& dist,
                                            const McOptions& mc) {
    const auto g = dist.density_bound();
    if (!g) throw HypothesisError("two-cube estimate needs a bounded density; " + dist.describe() + " has none");
    if (!(eps >= 0)) throw DomainError("eps must be nonnegative");
    if (dist_inf(c1.center, c2.center) <= c1.radius + c2.radius)
        throw DomainError("two-cube experiment needs disjoint cubes");
    require_trials(mc);
    // Site-keyed sampling makes the two cubes of one realization independent.
    auto dmin = parallel_map(mc.trials, mc.workers, [&](std::size_t r) {
        return min_pair_distance(realization_spectrum(c1, BoundaryKind::Simple, dist, mc.seed, r),
                                 realization_spectrum(c2, BoundaryKind::Simple, dist, mc.seed, r));
    });
    std::uint64_t close = 0, common = 0;
    for (double x : dmin) {
        close += x < eps ? 1 : 0;
        common += x < 2.0 * eps ? 1 : 0;
    }
    TwoCubeResult t;
    t.pair_close = proportion_estimate(close, mc.trials, mc.seed);
    t.common_energy = proportion_estimate(common, mc.trials, mc.seed);
    const double vol = static_cast<double>(c1.size()) * static_cast<double>(c2.size());
    t.bound = 8.0 * *g * eps * vol;
    t.pair_bound = 4.0 * *g * eps * vol;
    t.pass = t.pair_close.ci_hi <= t.bound && t.common_energy.ci_hi <= t.bound;
    return t;
}

double free_neumann_gap(std::size_t d, Coord L) {
    const Cube c = Cube::centered(d, L);
    return eigen(build_h(c, BoundaryKind::Neumann, nullptr), false).values[1];
}

double tent_rayleigh_quotient(std::size_t d, Coord L) {
    const Cube c = Cube::centered(d, L);
    const HamMatrix h = build_h(c, BoundaryKind::Dirichlet, nullptr);
    Eigen::VectorXd psi(static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        psi[static_cast<Eigen::Index>(i)] = static_cast<double>(L - norm_inf(c.site_at(i) - c.center));
    return psi.dot(h.sparse() * psi) / psi.squaredNorm();
}

McEstimate ground_state_tail(std::size_t d, Coord L, double threshold, const Distribution& dist,
                             const McOptions& mc) {
    require_trials(mc);
    const Cube cube = Cube::centered(d, L);
    auto hits = parallel_map(mc.trials, mc.workers, [&](std::size_t r) -> int {
        return realization_spectrum(cube, BoundaryKind::Neumann, dist, mc.seed, r)[0] < threshold ? 1 : 0;
    });
    std::uint64_t k = 0;
    for (int h : hits) k += static_cast<std::uint64_t>(h);
    return proportion_estimate(k, mc.trials, mc.seed);
}

LifshitzReport lifshitz_probes(std::size_t d, const std::vector<Coord>& Ls, const Distribution& dist,
                               const McOptions& mc) {
    if (Ls.empty()) throw DomainError("need at least one L");
    LifshitzReport rep;
    rep.c = std::numeric_limits<double>::infinity();
    for (Coord L : Ls) {
        if (L < 2) throw DomainError("Lifshitz probes need L >= 2");
        LifshitzRow row;
        row.L = L;
        row.neumann_gap = free_neumann_gap(d, L);
        row.gap_scaled = static_cast<double>(L * L) * row.neumann_gap;
        row.tent_quotient = tent_rayleigh_quotient(d, L);
        row.tent_scaled = static_cast<double>(L * L) * row.tent_quotient;
        rep.c = std::min(rep.c, row.gap_scaled);
        rep.c0 = std::max(rep.c0, row.tent_scaled);
        rep.rows.push_back(row);
    }
    if (mc.trials > 0) {
        for (auto& row : rep.rows) {
            row.threshold = rep.c / (3.0 * static_cast<double>(row.L * row.L));
            row.tail = ground_state_tail(d, row.L, row.threshold, dist, mc);
        }
        rep.tail_decreasing = rep.rows.size() >= 2;
        for (std::size_t i = 1; i < rep.rows.size(); ++i)
            if (!(rep.rows[i].tail->ci_hi < rep.rows[i - 1].tail->ci_lo)) rep.tail_decreasing = false;
    }
    return rep;
}

std::optional<double> double_log_slope(std::size_t d, Coord L, const Distribution& dist,
                                       const std::vector<double>& energies, const McOptions& mc) {
    const IdsCurve c = ids_curve(energies, d, L, BoundaryKind::Simple, dist, mc);
    const double e0 = dist.support().first;
    std::vector<double> x, y;
    for (std::size_t k = 0; k < energies.size(); ++k) {
        const double n = c.values[k].estimate;
        if (n <= 0.0 || n >= 1.0 || energies[k] <= e0) continue;
        x.push_back(std::log(energies[k] - e0));
        y.push_back(std::log(std::abs(std::log(n))));
    }
    if (x.size() < 2) return std::nullopt;
    return linear_fit(x, y).slope;
}

}  // namespace anderson
