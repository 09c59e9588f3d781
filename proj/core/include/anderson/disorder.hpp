#pragma once
// I.i.d. site potentials: distributions with declared density bound and
// support, keyed sampling, truncation.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "anderson/lattice.hpp"

namespace anderson {

struct Distribution {
    enum class Kind { Uniform, ScaledUniform, Bernoulli, Constant };

    Kind kind = Kind::Uniform;
    double a = 0.0, b = 1.0;    // Uniform bounds
    double lambda = 1.0;        // ScaledUniform amplitude
    double p = 0.5;             // Bernoulli probability of v1
    double v0 = 0.0, v1 = 1.0;  // Bernoulli values / Constant uses v0

    static Distribution uniform(double a, double b);
    static Distribution scaled_uniform(double lambda);
    static Distribution bernoulli(double p, double v0, double v1);
    // Point mass, handy for deterministic potentials (V = const). No density.
    static Distribution constant(double v);

    // ||g||_inf, or nothing when the law has no bounded density.
    std::optional<double> density_bound() const;
    std::pair<double, double> support() const;
    // Quantile-style map from a uniform draw u in [0,1).
    double transform(double u) const;
    std::string describe() const;
};

const char* to_string(Distribution::Kind k);

// delta(g) = 1/||g||_inf; throws HypothesisError when there is no density.
double disorder_parameter(const Distribution& dist);

struct SeedInfo {
    std::uint64_t base_seed = 0;
    std::uint64_t realization = 0;
};

struct Potential {
    std::shared_ptr<const SiteSet> sites;
    Eigen::VectorXd values;
    std::optional<SeedInfo> seed;  // empty for hand-built potentials
    std::optional<double> cap;     // set by truncate_potential
    std::string label;

    std::size_t size() const { return static_cast<std::size_t>(values.size()); }
    double at(const Site& s) const;  // throws DomainError if the site is missing
    std::string provenance() const;
};

Potential sample_potential(const Cube& cube, const Distribution& dist, std::uint64_t base_seed,
                           std::uint64_t realization);
Potential sample_potential(std::shared_ptr<const SiteSet> sites, const Distribution& dist,
                           std::uint64_t base_seed, std::uint64_t realization);
// Hand-specified values over the lexicographic sites of a cube.
Potential make_potential(const Cube& cube, Eigen::VectorXd values, std::string label = "given");
Potential zero_potential(const Cube& cube);
// Restrict (copy) values onto a subset; every site must be present.
Potential restrict_potential(const Potential& v, std::shared_ptr<const SiteSet> sites);
// Translate: result(n) = v(n + shift) on the cube `target`.
Potential shifted_potential(const Potential& v, const Cube& target, const Site& shift);

Potential truncate_potential(const Potential& p, double cap);

}  // namespace anderson
