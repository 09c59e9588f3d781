#include "anderson/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "anderson/errors.hpp"
#include "anderson/rng.hpp"

namespace anderson {

namespace {
void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite (compact support required)");
}
}  // namespace

Distribution Distribution::uniform(double a, double b) {
    require_finite(a, "uniform lower bound");
    require_finite(b, "uniform upper bound");
    if (!(b > a)) throw DomainError("uniform distribution requires a < b");
    Distribution d;
    d.kind = Kind::Uniform;
    d.a = a;
    d.b = b;
    return d;
}

Distribution Distribution::scaled_uniform(double lambda) {
    require_finite(lambda, "disorder amplitude");
    if (!(lambda > 0)) throw DomainError("scaled uniform requires lambda > 0");
    Distribution d;
    d.kind = Kind::ScaledUniform;
    d.lambda = lambda;
    return d;
}

Distribution Distribution::bernoulli(double p, double v0, double v1) {
    require_finite(v0, "bernoulli value v0");
    require_finite(v1, "bernoulli value v1");
    if (!(p >= 0 && p <= 1)) throw DomainError("bernoulli probability must lie in [0,1]");
    Distribution d;
    d.kind = Kind::Bernoulli;
    d.p = p;
    d.v0 = v0;
    d.v1 = v1;
    return d;
}

Distribution Distribution::constant(double v) {
    require_finite(v, "constant potential value");
    Distribution d;
    d.kind = Kind::Constant;
    d.v0 = v;
    return d;
}

std::optional<double> Distribution::density_bound() const {
    switch (kind) {
        case Kind::Uniform: return 1.0 / (b - a);
        case Kind::ScaledUniform: return 1.0 / lambda;
        case Kind::Bernoulli:
        case Kind::Constant: return std::nullopt;
    }
    return std::nullopt;
}

std::pair<double, double> Distribution::support() const {
    switch (kind) {
        case Kind::Uniform: return {a, b};
        case Kind::ScaledUniform: return {0.0, lambda};
        case Kind::Bernoulli: return {std::min(v0, v1), std::max(v0, v1)};
        case Kind::Constant: return {v0, v0};
    }
    return {0.0, 0.0};
}

double Distribution::transform(double u) const {
    switch (kind) {
        case Kind::Uniform: return a + (b - a) * u;
        case Kind::ScaledUniform: return lambda * u;
        case Kind::Bernoulli: return u < p ? v1 : v0;
        case Kind::Constant: return v0;
    }
    return 0.0;
}

const char* to_string(Distribution::Kind k) {
    switch (k) {
        case Distribution::Kind::Uniform: return "uniform";
        case Distribution::Kind::ScaledUniform: return "scaled_uniform";
        case Distribution::Kind::Bernoulli: return "bernoulli";
        case Distribution::Kind::Constant: return "constant";
    }
    return "?";
}

std::string Distribution::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
        case Kind::Uniform: os << "uniform(" << a << "," << b << ")"; break;
        case Kind::ScaledUniform: os << "scaled_uniform(" << lambda << ")"; break;
        case Kind::Bernoulli: os << "bernoulli(" << p << ";" << v0 << "," << v1 << ")"; break;
        case Kind::Constant: os << "constant(" << v0 << ")"; break;
    }
    return os.str();
}

double disorder_parameter(const Distribution& dist) {
    auto g = dist.density_bound();
    if (!g) throw HypothesisError("distribution " + dist.describe() + " has no density");
    return 1.0 / *g;
}

double Potential::at(const Site& s) const {
    auto i = sites->find(s);
    if (!i) throw DomainError("potential not defined at site " + s.str());
    return values[static_cast<Eigen::Index>(*i)];
}

std::string Potential::provenance() const {
    std::ostringstream os;
    os << label;
    if (seed) os << " seed=" << seed->base_seed << " realization=" << seed->realization;
    if (cap) {
        os.precision(17);
        os << " cap=" << *cap;
    }
    return os.str();
}

Potential sample_potential(std::shared_ptr<const SiteSet> sites, const Distribution& dist,
                           std::uint64_t base_seed, std::uint64_t realization) {
    Potential p;
    p.values.resize(static_cast<Eigen::Index>(sites->size()));
    for (std::size_t i = 0; i < sites->size(); ++i)
        p.values[static_cast<Eigen::Index>(i)] =
            dist.transform(site_uniform(base_seed, realization, (*sites)[i]));
    p.sites = std::move(sites);
    p.seed = SeedInfo{base_seed, realization};
    p.label = dist.describe();
    return p;
}

Potential sample_potential(const Cube& cube, const Distribution& dist, std::uint64_t base_seed,
                           std::uint64_t realization) {
    return sample_potential(std::make_shared<const SiteSet>(cube), dist, base_seed, realization);
}

Potential make_potential(const Cube& cube, Eigen::VectorXd values, std::string label) {
    if (static_cast<std::size_t>(values.size()) != cube.size())
        throw DomainError("potential length does not match cube size");
    Potential p;
    p.sites = std::make_shared<const SiteSet>(cube);
    p.values = std::move(values);
    p.label = std::move(label);
    return p;
}

Potential zero_potential(const Cube& cube) {
    return make_potential(cube, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cube.size())), "zero");
}

Potential restrict_potential(const Potential& v, std::shared_ptr<const SiteSet> sites) {
    Potential r;
    r.values.resize(static_cast<Eigen::Index>(sites->size()));
    for (std::size_t i = 0; i < sites->size(); ++i) r.values[static_cast<Eigen::Index>(i)] = v.at((*sites)[i]);
    r.sites = std::move(sites);
    r.seed = v.seed;
    r.cap = v.cap;
    r.label = v.label;
    return r;
}

Potential shifted_potential(const Potential& v, const Cube& target, const Site& shift) {
    Potential r;
    r.sites = std::make_shared<const SiteSet>(target);
    r.values.resize(static_cast<Eigen::Index>(target.size()));
    for (std::size_t i = 0; i < target.size(); ++i)
        r.values[static_cast<Eigen::Index>(i)] = v.at(target.site_at(i) + shift);
    r.seed = v.seed;
    r.cap = v.cap;
    r.label = v.label + " shifted by " + shift.str();
    return r;
}

Potential truncate_potential(const Potential& p, double cap) {
    if (!(cap >= 0)) throw DomainError("truncation cap must be >= 0");
    Potential r = p;
    r.values = p.values.cwiseMin(cap);
    r.cap = p.cap ? std::min(*p.cap, cap) : cap;
    return r;
}

}  // namespace anderson
