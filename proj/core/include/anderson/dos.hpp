#pragma once
// Density of states on finite cubes: integrated density of states estimates,
// the finite-volume trace approximation probe, Wegner experiments and the
// Lifshitz-tail ingredients.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anderson/disorder.hpp"
#include "anderson/operator.hpp"
#include "anderson/stats.hpp"

namespace anderson {

struct IdsCurve {
    std::vector<double> energies;
    std::vector<McEstimate> values;  // N_L(E) per energy
    Coord L = 0;
    std::size_t d = 1;
    BoundaryKind bc = BoundaryKind::Simple;
    Distribution dist;
    std::uint64_t trials = 0;
};

struct McOptions {
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

McEstimate ids_estimate(double E, std::size_t d, Coord L, BoundaryKind bc, const Distribution& dist,
                        const McOptions& mc);
// All energies share the same realizations (one spectrum per realization).
IdsCurve ids_curve(const std::vector<double>& energies, std::size_t d, Coord L, BoundaryKind bc,
                   const Distribution& dist, const McOptions& mc);

struct ConvergenceProbe {
    double difference = 0.0;  // |per-site trace on Lambda_L - restricted per-site trace on Lambda_{L+B}|
    double bound = 0.0;       // c' / ((Im z)^2 L)
    double constant = 0.0;    // c' (frozen)
    bool within_bound = false;
};

// Per-site boundary constant: |difference| <= d / ((Im z)^2 L).
inline constexpr double kTraceProbeConstantPerDim = 1.0;

// `dist` absent means V = 0. Buffer B defaults to L.
ConvergenceProbe ids_convergence_probe(std::complex<double> z, std::size_t d, Coord L,
                                       const std::optional<Distribution>& dist, std::uint64_t seed,
                                       std::uint64_t realization, std::optional<Coord> buffer = std::nullopt);

struct WegnerResult {
    McEstimate count;  // eigenvalues in (E - eps, E + eps]
    double bound = 0.0;  // 4 ||g|| |Lambda| eps
    bool pass = false;   // upper CI <= bound
};

// Refuses distributions without a bounded density (HypothesisError).
WegnerResult wegner_experiment(double E, double eps, const Cube& cube, const Distribution& dist,
                               const McOptions& mc, BoundaryKind bc = BoundaryKind::Simple);

struct TwoCubeResult {
    McEstimate pair_close;  // P(min |E_i - E'_j| < eps)
    McEstimate common_energy;  // P(some E within eps of both spectra) = P(min distance < 2 eps)
    double bound = 0.0;  // 8 ||g|| eps |Lambda_1| |Lambda_2|
    double pair_bound = 0.0;  // 4 ||g|| eps |Lambda_1| |Lambda_2|
    bool pass = false;
};

TwoCubeResult two_cube_resonance_experiment(const Cube& c1, const Cube& c2, double eps, const Distribution& dist,
                                            const McOptions& mc);

// Smallest |a_i - b_j| between two sorted lists.
double min_pair_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct LifshitzRow {
    Coord L = 0;
    double neumann_gap = 0.0;  // E_1 of the free Neumann Laplacian
    double gap_scaled = 0.0;   // L^2 E_1
    double tent_quotient = 0.0;// Rayleigh quotient of L - |n|_inf on the free Dirichlet Laplacian
    double tent_scaled = 0.0;  // L^2 * quotient
    double threshold = 0.0;    // c / (3 L^2)
    std::optional<McEstimate> tail;  // P(E_0(H^N) < threshold)
};

struct LifshitzReport {
    std::vector<LifshitzRow> rows;
    double c = 0.0;   // min over L of L^2 E_1
    double c0 = 0.0;  // max over L of L^2 * tent quotient
    bool tail_decreasing = false;  // upper CI at larger L below lower CI at smaller L (consecutive rows)
    std::optional<double> double_log_slope;  // diagnostic only
};

double free_neumann_gap(std::size_t d, Coord L);
double tent_rayleigh_quotient(std::size_t d, Coord L);
// P(E_0(H^N_{Lambda_L}) < threshold).
McEstimate ground_state_tail(std::size_t d, Coord L, double threshold, const Distribution& dist,
                             const McOptions& mc);

// tail_trials = 0 skips the Monte-Carlo parts.
LifshitzReport lifshitz_probes(std::size_t d, const std::vector<Coord>& Ls, const Distribution& dist,
                               const McOptions& mc);

// Slope of ln|ln N(E)| against ln(E - E_0) from IDS data near the band bottom.
std::optional<double> double_log_slope(std::size_t d, Coord L, const Distribution& dist,
                                       const std::vector<double>& energies, const McOptions& mc);

}  // namespace anderson
