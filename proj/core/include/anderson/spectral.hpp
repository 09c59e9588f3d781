#pragma once
// Finite-volume eigenproblems: spectra, eigenvalue counting (dense or by
// inertia of a sparse LDL^T factorization), rank-one interlacing, Temple's
// lower bound and resolvent norms.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "anderson/operator.hpp"

namespace anderson {

inline constexpr double kEigenResidualTol = 1e-8;   // relative to ||H||
inline constexpr double kOrthonormalityTol = 1e-10;
inline constexpr double kTieTol = 1e-12;

struct Spectrum {
    Eigen::VectorXd values;                 // ascending, with multiplicity
    std::optional<Eigen::MatrixXd> vectors; // columns orthonormal
    std::size_t size() const { return static_cast<std::size_t>(values.size()); }
};

Spectrum eigen(const HamMatrix& h, bool want_vectors);
Spectrum eigen(const Eigen::MatrixXd& a, bool want_vectors);

struct SpectrumQuality {
    double max_residual = 0.0;          // max_j ||A v_j - E_j v_j||
    double norm = 0.0;                  // ||A|| (largest |eigenvalue|)
    double orthonormality_error = 0.0;  // max |V^T V - I|
    bool ok = false;
};
SpectrumQuality check_spectrum(const Eigen::MatrixXd& a, const Spectrum& s);

struct CountResult {
    std::size_t count = 0;  // #{E_n < E}
    bool boundary = false;  // some eigenvalue within kTieTol of E
    std::string method;     // "dense" or "inertia"
};

// Dense eigenvalue count within the dense cap, inertia count beyond it.
CountResult counting(const HamMatrix& h, double E);
CountResult counting(const Eigen::MatrixXd& a, double E);
CountResult counting_dense(const Eigen::VectorXd& sorted_values, double E);
// Sylvester inertia: number of negative pivots of LDL^T(A - E).
CountResult counting_inertia(const Eigen::SparseMatrix<double>& a, double E);

// dist(E, sigma) from a sorted spectrum.
double distance_to_spectrum(const Eigen::VectorXd& sorted_values, double E);

struct InterlaceReport {
    Eigen::VectorXd before, after;
    bool holds = true;
    double worst_violation = 0.0;  // largest amount by which an inequality fails (<= 0 when it holds)
};
InterlaceReport interlace_rank_one(const Eigen::MatrixXd& a, const Eigen::VectorXd& unit, double c,
                                   double tol = 1e-10);
InterlaceReport interlace_rank_one(const HamMatrix& h, const Eigen::VectorXd& unit, double c, double tol = 1e-10);

struct TempleReport {
    double bound = 0.0;     // <A> - (<A^2> - <A>^2)/(E1 - <A>)
    double mean = 0.0;      // <psi, A psi>
    double variance = 0.0;  // <A^2> - <A>^2
    double e0 = 0.0;        // computed ground state energy
    bool holds = false;     // bound <= e0 (+ tolerance)
};
TempleReport temple_bound(const Eigen::MatrixXd& a, const Eigen::VectorXd& psi, double E1);
TempleReport temple_bound(const HamMatrix& h, const Eigen::VectorXd& psi, double E1);

struct ResolventNormReport {
    double norm = 0.0;      // largest singular value of (A - z)^{-1}
    double inv_dist = 0.0;  // 1 / dist(z, sigma(A))
    double relative_error = 0.0;
};
ResolventNormReport resolvent_norm_check(const Eigen::MatrixXd& a, std::complex<double> z);
ResolventNormReport resolvent_norm_check(const HamMatrix& h, std::complex<double> z);

}  // namespace anderson
