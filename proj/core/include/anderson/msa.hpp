#pragma once
// Multiscale analysis bookkeeping: length and rate schedules, gate
// inequalities, probability budgets, Monte-Carlo estimates of bad-cube
// probabilities at one scale and both initial-scale estimates.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anderson/certify.hpp"
#include "anderson/disorder.hpp"
#include "anderson/dos.hpp"
#include "anderson/errors.hpp"
#include "anderson/stats.hpp"

namespace anderson {

struct ParameterError : DomainError {
    explicit ParameterError(std::vector<std::string> v);
    std::vector<std::string> violations;
};

struct MsaParams {
    std::size_t d = 1;
    double alpha = 0.0;
    double p = 0.0;
    double gamma0 = 1.0;
    double L0 = 10.0;
    std::optional<double> energy;
    std::optional<std::pair<double, double>> interval;
    std::optional<Distribution> dist;
    MsaPath path = MsaPath::Weak;

    // p = 2d + 2 and alpha at the midpoint of (1, 2p/(p+2d)).
    static MsaParams defaults(std::size_t d);
    double alpha_upper() const { return 2.0 * p / (p + 2.0 * static_cast<double>(d)); }
};

// Every violated constraint, phrased with its formula and the offending value.
std::vector<std::string> validate(const MsaParams& params);
void require_valid(const MsaParams& params);  // throws ParameterError

struct GateStatus {
    std::string name;
    std::string expression;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct BudgetLine {
    std::size_t k = 0;
    double L_k = 0.0, L_next = 0.0;
    double cube_count = 0.0;   // number of L_k-cubes well inside the enlarged annulus
    double count_bound = 0.0;  // cube_count / L_k^{2p}
    double constant = 0.0;     // cube_count / L_next^d
    double power_bound = 0.0;  // constant * L_next^d / L_k^{2p} rewritten as C / L_k^{2p - alpha d}
};

struct MsaSchedule {
    std::vector<double> L;      // L_0, L_1, ... (exact integers while below 2^53)
    std::vector<double> gamma;  // rate lower bounds from the recursion
    std::vector<GateStatus> gates;
    std::vector<BudgetLine> budgets;
    bool exact_integers = true;
};

// ceil(l^alpha), guarded against pow rounding at exact integer powers.
double next_scale(double l, double alpha);

MsaSchedule build_schedule(const MsaParams& params, std::size_t k_max);

struct RateReport {
    std::vector<double> gamma;
    double min_gamma = 0.0;
    bool gates_hold = false;         // gamma_0 >= 16/L_0^{alpha/2}, L_0^{alpha-1} >= 32, L_0^{(alpha-1)^2} >= 2
    bool half_floor_holds = false;   // min gamma_k >= gamma_0 / 2
    bool sqrt_floor_holds = false;   // gamma_k >= 2/sqrt(L_k) for all k
    bool nonincreasing = false;
    std::optional<std::size_t> first_negative;
};

// gamma_{k+1} = gamma_k (1 - 4/L_k^{alpha-1}) - 2/L_k^{alpha/2}.
RateReport rate_recursion(double gamma0, const std::vector<double>& scales, double alpha);

struct TailSum {
    double beta = 0.0;
    double sum = 0.0;
    double bound = 0.0;        // 2 / L_0^beta
    bool precondition = false; // L_0^{beta(alpha-1)} >= 2
    bool holds = false;
    std::size_t terms = 0;
};

// Partial sums of 1/L_k^beta until the terms stop contributing.
TailSum scale_tail_sum(double L0, double alpha, double beta);

struct ScaleEstimate {
    McEstimate estimate;
    double target = 0.0;  // 1/L^p (single) or 1/L^{2p} (two-cube)
    bool below_target = false;
};

ScaleEstimate single_scale_probability(std::size_t d, Coord L, double E, double gamma, const Distribution& dist,
                                       const McOptions& mc, double p);

struct TwoCubeScaleEstimate {
    McEstimate grid_level;      // both cubes bad at some grid energy
    McEstimate interval_level;  // some grid cell where neither cube is certified good throughout
    double target = 0.0;        // 1/L^{2p}
    std::size_t grid_points = 0;
    double cell_half_width = 0.0;
    bool below_target = false;
};

TwoCubeScaleEstimate two_cube_probability(std::size_t d, Coord L, std::pair<double, double> interval, double dE,
                                          double gamma, const Distribution& dist, const McOptions& mc, double p,
                                          const Site& offset1, const Site& offset2);

struct BudgetTerm {
    std::string name;
    double value = 0.0;
    double target = 0.0;  // L^{-p} / 3
    bool pass = false;
};

struct InductionBudget {
    double l = 0.0, L = 0.0;
    std::vector<BudgetTerm> terms;
    bool all_pass = false;
    bool marginal = false;  // alpha at (or above) the upper limit 2p/(p+2d)
    std::optional<double> smallest_l;  // first scanned l where all terms pass
};

InductionBudget evaluate_budget(double l, double p, double alpha, std::size_t d, double norm_g);
InductionBudget induction_budget_check(double l, double p, double alpha, std::size_t d, double norm_g,
                                       double scan_limit = 1e12);

struct LargeDisorderReport {
    double bound = 0.0;      // 2 C ||g|| e^{gamma L0} (2 L0 + 1)^{2d}, C = 4
    double target = 0.0;     // L0^{-2p}
    double threshold_g = 0.0;// largest ||g|| with bound <= target
    bool analytic_pass = false;
    std::optional<McEstimate> spectral_event;  // P(dist(sigma_1, sigma_2) < 2 e^{gamma L0})
    std::optional<McEstimate> grid_event;      // P(both cubes bad at some grid energy)
    bool mc_consistent = true;                 // lower CI of the events <= bound
};

LargeDisorderReport initial_scale_large_disorder(std::size_t d, Coord L0, double gamma, double p,
                                                 const Distribution& dist, const McOptions& mc,
                                                 double grid_step = 0.05);

struct TailRow {
    Coord ell0 = 0;
    double c = 0.0;         // ell0^2 E_1 of the free Neumann Laplacian (so beta = 1/c)
    double threshold = 0.0; // 1/(beta ell0^2)
    McEstimate tail;        // P(E_0(H^N_{ell0}) < threshold)
};

struct LowEnergyReport {
    Coord ell0 = 0, r = 0, L0 = 0;
    std::size_t big_sites = 0, tiled_sites = 0;
    bool tiling_exact = false;
    std::vector<Site> tile_centers;

    std::uint64_t inequality_checks = 0;
    std::uint64_t inequality_violations = 0;
    double min_margin = 0.0;  // min over realizations of E_0(big) - min_j E_0(tile j)

    std::vector<TailRow> tails;
    bool tail_decreasing = false;   // upper CI at larger ell0 < lower CI at smaller ell0
    double decay_exponent_ratio = 0.0;  // ln P(larger)/ln P(smaller), conservative (upper CI)

    double gamma = 0.0;       // 1/(2 beta ell0^2)
    double union_bound = 0.0; // r^d * upper CI of the tile tail at 2 gamma
    std::optional<McEstimate> direct;  // P(E_0(H^N_{L0}) <= 2 gamma)
    bool union_consistent = false;
    double rate_times_sqrt_L0 = 0.0;  // gamma sqrt(L0): compare with C in gamma >= C/sqrt(L0)
};

struct LowEnergyOptions {
    Coord ell0 = 2;
    Coord r = 3;
    std::vector<Coord> tail_ells{3, 5};
    std::uint64_t tiling_trials = 200;
    std::uint64_t tail_trials = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

std::vector<Site> tiling_centers(std::size_t d, Coord ell0, Coord r);
LowEnergyReport initial_scale_low_energy(std::size_t d, const Distribution& dist, const LowEnergyOptions& opt);

}  // namespace anderson
