#pragma once
// Monte-Carlo estimates with 95% confidence intervals.

#include <cstdint>
#include <optional>
#include <vector>

namespace anderson {

struct McEstimate {
    std::uint64_t trials = 0;
    std::optional<std::uint64_t> successes;  // set for proportions
    double estimate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double sample_sd = 0.0;  // per-trial standard deviation (means only)
    std::uint64_t base_seed = 0;
};

inline constexpr double kZ95 = 1.959963984540054;

// Wilson score interval for a binomial proportion.
McEstimate proportion_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t base_seed);

// Sample mean with a normal-approximation interval; samples summed in order.
McEstimate mean_estimate(const std::vector<double>& samples, std::uint64_t base_seed);

// Least-squares slope and intercept with coefficient of determination.
struct LinearFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);
// Fit y = slope * x (through the origin); r2 uses the uncentred total sum.
LinearFit linear_fit_origin(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace anderson
