#include "anderson/stats.hpp"

#include <cmath>

#include "anderson/errors.hpp"

namespace anderson {

McEstimate proportion_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t base_seed) {
    if (trials == 0) throw DomainError("estimate needs at least one trial");
    if (successes > trials) throw DomainError("more successes than trials");
    McEstimate e;
    e.trials = trials;
    e.successes = successes;
    e.base_seed = base_seed;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    e.estimate = p;
    e.ci_lo = std::max(0.0, std::min(p, centre - half));
    e.ci_hi = std::min(1.0, std::max(p, centre + half));
    e.sample_sd = std::sqrt(p * (1.0 - p));
    return e;
}

McEstimate mean_estimate(const std::vector<double>& samples, std::uint64_t base_seed) {
    if (samples.empty()) throw DomainError("estimate needs at least one trial");
    McEstimate e;
    e.trials = samples.size();
    e.base_seed = base_seed;
    double sum = 0.0;
    for (double s : samples) sum += s;
    const double n = static_cast<double>(samples.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (double s : samples) ss += (s - mean) * (s - mean);
    const double sd = samples.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    const double half = kZ95 * sd / std::sqrt(n);
    e.estimate = mean;
    e.ci_lo = mean - half;
    e.ci_hi = mean + half;
    e.sample_sd = sd;
    return e;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("linear fit needs two or more points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit f;
    f.slope = sxx > 0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    f.r2 = (sxx > 0 && syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

LinearFit linear_fit_origin(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty()) throw DomainError("linear fit needs points");
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    LinearFit f;
    f.slope = sxx > 0 ? sxy / sxx : 0.0;
    double sse = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sse += (y[i] - f.slope * x[i]) * (y[i] - f.slope * x[i]);
    f.r2 = syy > 0 ? 1.0 - sse / syy : 1.0;
    return f;
}

}  // namespace anderson
