#pragma once
// Time evolution on a finite cube through the eigendecomposition of H, and
// the time-averaged diagnostics built on it.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "anderson/lattice.hpp"
#include "anderson/operator.hpp"

namespace anderson {

struct EvolutionPlan {
    std::shared_ptr<const SiteSet> sites;
    Eigen::VectorXd energies;
    Eigen::MatrixXd vectors;   // orthonormal columns
    Eigen::VectorXcd psi0;
    Eigen::VectorXcd coeffs;   // <phi_j, psi0>
    double norm2 = 0.0;        // ||psi0||^2
    double spectral_radius = 0.0;
};

// Full eigendecomposition; throws CapabilityError above the dense cap.
EvolutionPlan make_plan(const HamMatrix& h, const Eigen::VectorXcd& psi0);
Eigen::VectorXcd delta_state(const HamMatrix& h, const Site& s);

// psi(t) = sum_j exp(-i t E_j) <phi_j, psi0> phi_j; t = 0 returns psi0 itself.
Eigen::VectorXcd evolve(const EvolutionPlan& plan, double t);

// Same plan with coefficients outside [a, b] removed (spectral filter).
EvolutionPlan filtered(const EvolutionPlan& plan, double a, double b);

// Uniform grid on [0, T] whose step does not exceed pi / (4 rho).
std::vector<double> time_grid(double T, double spectral_radius);
double trapezoid(const std::vector<double>& t, const std::vector<double>& f);

struct SurvivalRow {
    Coord radius = 0;
    double inside_average = 0.0;   // (1/T) int ||chi_r psi(t)||^2 dt
    double outside_average = 0.0;  // (1/T) int ||(1 - chi_r) psi(t)||^2 dt
    double max_split_error = 0.0;  // max_t |inside + outside - ||psi||^2|
};

struct SurvivalProfile {
    double T = 0.0;
    std::vector<double> times;
    std::vector<SurvivalRow> rows;
    std::vector<std::vector<double>> inside_series;  // per radius, per sampled time
    double max_unitarity_error = 0.0;                // max_t | ||psi(t)||^2 - ||psi0||^2 |
};

// Radii are measured from the centre of the plan's cube.
SurvivalProfile survival_profile(const EvolutionPlan& plan, const std::vector<Coord>& radii, double T);

struct WienerReport {
    double T = 0.0;
    double average = 0.0;     // (1/T) int_0^T |mu_hat(t)|^2 dt, trapezoid
    double atomic_sum = 0.0;  // sum over distinct energies of (grouped weight)^2
    std::size_t atoms = 0;
    double difference = 0.0;
};

inline constexpr double kAtomGroupingTol = 1e-9;

// Weights must sum to 1 (within 1e-9).
WienerReport wiener_average(const std::vector<double>& energies, const std::vector<double>& weights, double T);
double atomic_sum(const std::vector<double>& energies, const std::vector<double>& weights,
                  std::size_t* atoms = nullptr);
// |mu_hat(t)|^2 evaluated as a squared modulus and as a double sum over pairs.
std::pair<double, double> fourier_square_two_ways(const std::vector<double>& energies,
                                                  const std::vector<double>& weights, double t);
std::vector<double> spectral_weights(const EvolutionPlan& plan);

struct MomentProfile {
    double p = 0.0;
    std::vector<double> times;
    std::vector<double> values;  // || |X|^p psi(t) ||, |X| psi(n) = |n|_inf psi(n)
    double max = 0.0;
};

MomentProfile transport_moment(const EvolutionPlan& plan, double p, const std::vector<double>& times);
// max / median of the profile over the window [t_lo, t_hi].
double plateau_ratio(const MomentProfile& m, double t_lo, double t_hi);

}  // namespace anderson
