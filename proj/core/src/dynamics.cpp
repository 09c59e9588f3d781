#include "anderson/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "anderson/errors.hpp"
#include "anderson/spectral.hpp"

namespace anderson {

EvolutionPlan make_plan(const HamMatrix& h, const Eigen::VectorXcd& psi0) {
    if (static_cast<std::size_t>(psi0.size()) != h.size()) throw DomainError("initial state has the wrong size");
    Spectrum s = eigen(h, true);
    EvolutionPlan p;
    p.sites = h.site_ptr();
    p.energies = std::move(s.values);
    p.vectors = std::move(*s.vectors);
    p.psi0 = psi0;
    p.coeffs = p.vectors.transpose().cast<std::complex<double>>() * psi0;
    p.norm2 = psi0.squaredNorm();
    p.spectral_radius = p.energies.size() ? p.energies.cwiseAbs().maxCoeff() : 0.0;
    return p;
}

Eigen::VectorXcd delta_state(const HamMatrix& h, const Site& s) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(h.size()));
    v[static_cast<Eigen::Index>(h.sites().index_of(s))] = 1.0;
    return v;
}

Eigen::VectorXcd evolve(const EvolutionPlan& plan, double t) {
    if (t == 0.0) return plan.psi0;
    Eigen::VectorXcd c = plan.coeffs;
    for (Eigen::Index j = 0; j < c.size(); ++j) c[j] *= std::polar(1.0, -t * plan.energies[j]);
    return plan.vectors.cast<std::complex<double>>() * c;
}

EvolutionPlan filtered(const EvolutionPlan& plan, double a, double b) {
    EvolutionPlan f = plan;
    for (Eigen::Index j = 0; j < f.coeffs.size(); ++j)
        if (f.energies[j] < a || f.energies[j] > b) f.coeffs[j] = 0.0;
    f.psi0 = f.vectors.cast<std::complex<double>>() * f.coeffs;
    f.norm2 = f.psi0.squaredNorm();
    return f;
}

std::vector<double> time_grid(double T, double spectral_radius) {
    if (!(T > 0)) throw DomainError("time horizon must be positive");
    std::size_t n = 1;
    if (spectral_radius > 0) {
        const double step = std::numbers::pi / (4.0 * spectral_radius);
        n = static_cast<std::size_t>(std::ceil(T / step));
    }
    n = std::max<std::size_t>(n, 1);
    std::vector<double> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i) t[i] = T * static_cast<double>(i) / static_cast<double>(n);
    return t;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
    if (t.size() != f.size() || t.size() < 2) throw DomainError("trapezoid needs matching grids of length >= 2");
    double s = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
    return s;
}

SurvivalProfile survival_profile(const EvolutionPlan& plan, const std::vector<Coord>& radii, double T) {
    const auto& cube = plan.sites->cube();
    if (!cube) throw DomainError("survival profile needs a cube");
    for (Coord r : radii)
        if (r < 0 || r > cube->radius) throw DomainError("inner radius must lie in [0, cube radius]");
    SurvivalProfile prof;
    prof.T = T;
    prof.times = time_grid(T, plan.spectral_radius);
    const std::size_t nt = prof.times.size();
    // Distance of each site from the centre, computed once.
    std::vector<Coord> reach(plan.sites->size());
    for (std::size_t i = 0; i < reach.size(); ++i) reach[i] = dist_inf((*plan.sites)[i], cube->center);

    std::vector<std::vector<double>> outside(radii.size(), std::vector<double>(nt));
    prof.inside_series.assign(radii.size(), std::vector<double>(nt));
    std::vector<double> split_err(radii.size(), 0.0);
    for (std::size_t k = 0; k < nt; ++k) {
        const Eigen::VectorXcd psi = evolve(plan, prof.times[k]);
        const double total = psi.squaredNorm();
        prof.max_unitarity_error = std::max(prof.max_unitarity_error, std::abs(total - plan.norm2));
        for (std::size_t r = 0; r < radii.size(); ++r) {
            double in = 0.0, out = 0.0;
            for (std::size_t i = 0; i < reach.size(); ++i)
                (reach[i] <= radii[r] ? in : out) += std::norm(psi[static_cast<Eigen::Index>(i)]);
            prof.inside_series[r][k] = in;
            outside[r][k] = out;
            split_err[r] = std::max(split_err[r], std::abs(in + out - plan.norm2));
        }
    }
    for (std::size_t r = 0; r < radii.size(); ++r) {
        SurvivalRow row;
        row.radius = radii[r];
        row.inside_average = trapezoid(prof.times, prof.inside_series[r]) / T;
        row.outside_average = trapezoid(prof.times, outside[r]) / T;
        row.max_split_error = split_err[r];
        prof.rows.push_back(row);
    }
    return prof;
}

double atomic_sum(const std::vector<double>& energies, const std::vector<double>& weights, std::size_t* atoms) {
    if (energies.size() != weights.size()) throw DomainError("energies and weights differ in length");
    std::vector<std::pair<double, double>> ew;
    for (std::size_t i = 0; i < energies.size(); ++i) ew.emplace_back(energies[i], weights[i]);
    std::sort(ew.begin(), ew.end());
    double sum = 0.0, group = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < ew.size(); ++i) {
        // Chain grouping: consecutive energies within the tolerance share an atom.
        if (i > 0 && ew[i].first - ew[i - 1].first > kAtomGroupingTol) {
            sum += group * group;
            group = 0.0;
            ++n;
        }
        group += ew[i].second;
    }
    if (!ew.empty()) {
        sum += group * group;
        ++n;
    }
    if (atoms) *atoms = n;
    return sum;
}

std::pair<double, double> fourier_square_two_ways(const std::vector<double>& energies,
                                                  const std::vector<double>& weights, double t) {
    std::complex<double> mu = 0.0;
    for (std::size_t j = 0; j < energies.size(); ++j) mu += weights[j] * std::polar(1.0, -t * energies[j]);
    double pairs = 0.0;
    for (std::size_t j = 0; j < energies.size(); ++j)
        for (std::size_t k = 0; k < energies.size(); ++k)
            pairs += weights[j] * weights[k] * std::cos(t * (energies[j] - energies[k]));
    return {std::norm(mu), pairs};
}

WienerReport wiener_average(const std::vector<double>& energies, const std::vector<double>& weights, double T) {
    if (energies.size() != weights.size() || energies.empty())
        throw DomainError("wiener average needs matching nonempty energies and weights");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0) throw DomainError("spectral weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw DomainError("spectral weights must sum to 1");
    double rho = 0.0;
    for (double e : energies) rho = std::max(rho, std::abs(e));
    WienerReport rep;
    rep.T = T;
    const std::vector<double> t = time_grid(T, rho);
    std::vector<double> f(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) f[i] = fourier_square_two_ways(energies, weights, t[i]).first;
    rep.average = trapezoid(t, f) / T;
    rep.atomic_sum = atomic_sum(energies, weights, &rep.atoms);
    rep.difference = std::abs(rep.average - rep.atomic_sum);
    return rep;
}

std::vector<double> spectral_weights(const EvolutionPlan& plan) {
    std::vector<double> w(static_cast<std::size_t>(plan.coeffs.size()));
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = std::norm(plan.coeffs[static_cast<Eigen::Index>(j)]) / plan.norm2;
    return w;
}

MomentProfile transport_moment(const EvolutionPlan& plan, double p, const std::vector<double>& times) {
    if (!(p >= 0)) throw DomainError("moment order must be nonnegative");
    MomentProfile m;
    m.p = p;
    m.times = times;
    std::vector<double> weight(plan.sites->size());
    for (std::size_t i = 0; i < weight.size(); ++i) {
        const double x = static_cast<double>(norm_inf((*plan.sites)[i]));
        // |X|^0 is the identity, including at the origin.
        weight[i] = p == 0.0 ? 1.0 : std::pow(x, 2.0 * p);
    }
    for (double t : times) {
        const Eigen::VectorXcd psi = evolve(plan, t);
        double s = 0.0;
        for (std::size_t i = 0; i < weight.size(); ++i) s += weight[i] * std::norm(psi[static_cast<Eigen::Index>(i)]);
        m.values.push_back(std::sqrt(s));
    }
    m.max = m.values.empty() ? 0.0 : *std::max_element(m.values.begin(), m.values.end());
    return m;
}

double plateau_ratio(const MomentProfile& m, double t_lo, double t_hi) {
    std::vector<double> w;
    for (std::size_t i = 0; i < m.times.size(); ++i)
        if (m.times[i] >= t_lo && m.times[i] <= t_hi) w.push_back(m.values[i]);
    if (w.empty()) throw DomainError("no samples in the plateau window");
    const double mx = *std::max_element(w.begin(), w.end());
    std::sort(w.begin(), w.end());
    const std::size_t n = w.size();
    const double med = n % 2 ? w[n / 2] : 0.5 * (w[n / 2 - 1] + w[n / 2]);
    return mx / med;
}

}  // namespace anderson
