#include "anderson/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <Eigen/SparseCholesky>

#include "anderson/errors.hpp"

namespace anderson {

Spectrum eigen(const Eigen::MatrixXd& a, bool want_vectors) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, want_vectors ? Eigen::ComputeEigenvectors
                                                                      : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver did not converge");
    Spectrum s;
    s.values = es.eigenvalues();
    if (want_vectors) s.vectors = es.eigenvectors();
    return s;
}

Spectrum eigen(const HamMatrix& h, bool want_vectors) {
    if (want_vectors && !h.is_dense_regime())
        throw CapabilityError("eigenvectors requested for " + std::to_string(h.size()) +
                              " sites, above the dense cap of " + std::to_string(h.dense_cap()));
    return eigen(h.dense(), want_vectors);
}

SpectrumQuality check_spectrum(const Eigen::MatrixXd& a, const Spectrum& s) {
    SpectrumQuality q;
    q.norm = s.values.size() ? s.values.cwiseAbs().maxCoeff() : 0.0;
    if (!s.vectors) return q;
    const Eigen::MatrixXd& v = *s.vectors;
    const Eigen::MatrixXd r = a * v - v * s.values.asDiagonal();
    q.max_residual = r.colwise().norm().maxCoeff();
    q.orthonormality_error =
        (v.transpose() * v - Eigen::MatrixXd::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
    q.ok = q.max_residual <= kEigenResidualTol * std::max(1.0, q.norm) &&
           q.orthonormality_error <= kOrthonormalityTol;
    return q;
}

CountResult counting_dense(const Eigen::VectorXd& v, double E) {
    CountResult c;
    c.method = "dense";
    const double* first = v.data();
    const double* last = v.data() + v.size();
    c.count = static_cast<std::size_t>(std::lower_bound(first, last, E) - first);
    const double* lo = std::lower_bound(first, last, E - kTieTol);
    c.boundary = lo != last && *lo <= E + kTieTol;
    return c;
}

namespace {
// Number of negative pivots; nullopt on breakdown (zero or non-finite pivot).
std::optional<std::size_t> negative_pivots(const Eigen::SparseMatrix<double>& a, double shift) {
    Eigen::SparseMatrix<double> m = a;
    for (Eigen::Index i = 0; i < m.rows(); ++i) m.coeffRef(i, i) -= shift;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(m);
    if (ldlt.info() != Eigen::Success) return std::nullopt;
    std::size_t neg = 0;
    const Eigen::VectorXd d = ldlt.vectorD();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (!std::isfinite(d[i]) || d[i] == 0.0) return std::nullopt;
        if (d[i] < 0) ++neg;
    }
    return neg;
}
}  // namespace

CountResult counting_inertia(const Eigen::SparseMatrix<double>& a, double E) {
    CountResult c;
    c.method = "inertia";
    const auto below = negative_pivots(a, E - kTieTol);
    const auto above = negative_pivots(a, E + kTieTol);
    const auto at = negative_pivots(a, E);
    if (!below || !above || *below != *above) c.boundary = true;
    if (at) {
        c.count = *at;
    } else if (below) {
        // Singular at E itself: eigenvalues equal to E are not counted.
        c.count = *below;
        c.boundary = true;
    } else {
        throw NearSingularError("inertia count broke down near E", 0.0);
    }
    return c;
}

CountResult counting(const Eigen::MatrixXd& a, double E) {
    return counting_dense(eigen(a, false).values, E);
}

CountResult counting(const HamMatrix& h, double E) {
    if (h.is_dense_regime()) return counting(h.dense(), E);
    return counting_inertia(h.sparse(), E);
}

double distance_to_spectrum(const Eigen::VectorXd& v, double E) {
    if (v.size() == 0) return std::numeric_limits<double>::infinity();
    const double* first = v.data();
    const double* last = v.data() + v.size();
    const double* it = std::lower_bound(first, last, E);
    double d = std::numeric_limits<double>::infinity();
    if (it != last) d = std::min(d, *it - E);
    if (it != first) d = std::min(d, E - *(it - 1));
    return d;
}

InterlaceReport interlace_rank_one(const Eigen::MatrixXd& a, const Eigen::VectorXd& unit, double c, double tol) {
    if (c < 0) throw DomainError("rank-one coupling must be nonnegative");
    if (std::abs(unit.norm() - 1.0) > 1e-10) throw DomainError("rank-one vector must have unit norm");
    InterlaceReport r;
    r.before = eigen(a, false).values;
    const Eigen::MatrixXd b = a + c * unit * unit.transpose();
    r.after = eigen(b, false).values;
    double worst = -std::numeric_limits<double>::infinity();
    const Eigen::Index n = r.before.size();
    for (Eigen::Index k = 0; k < n; ++k) {
        worst = std::max(worst, r.before[k] - r.after[k]);
        if (k + 1 < n) worst = std::max(worst, r.after[k] - r.before[k + 1]);
    }
    r.worst_violation = n ? worst : 0.0;
    r.holds = r.worst_violation <= tol;
    return r;
}

InterlaceReport interlace_rank_one(const HamMatrix& h, const Eigen::VectorXd& unit, double c, double tol) {
    return interlace_rank_one(h.dense(), unit, c, tol);
}

TempleReport temple_bound(const Eigen::MatrixXd& a, const Eigen::VectorXd& psi, double E1) {
    if (std::abs(psi.norm() - 1.0) > 1e-10) throw DomainError("Temple trial vector must have unit norm");
    TempleReport r;
    const Eigen::VectorXd ap = a * psi;
    r.mean = psi.dot(ap);
    if (!(r.mean < E1))
        throw PreconditionError("Temple's inequality needs <psi,A psi> < E1 (got " + std::to_string(r.mean) +
                                " >= " + std::to_string(E1) + ")");
    r.variance = std::max(0.0, ap.squaredNorm() - r.mean * r.mean);
    r.bound = r.mean - r.variance / (E1 - r.mean);
    r.e0 = eigen(a, false).values[0];
    r.holds = r.bound <= r.e0 + 1e-12 * std::max(1.0, std::abs(r.e0));
    return r;
}

TempleReport temple_bound(const HamMatrix& h, const Eigen::VectorXd& psi, double E1) {
    return temple_bound(h.dense(), psi, E1);
}

ResolventNormReport resolvent_norm_check(const Eigen::MatrixXd& a, std::complex<double> z) {
    const Eigen::VectorXd ev = eigen(a, false).values;
    double dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < ev.size(); ++i) dist = std::min(dist, std::abs(std::complex<double>(ev[i]) - z));
    if (dist <= kTieTol) throw NearSingularError("z lies on the spectrum", dist);
    Eigen::MatrixXcd m = a.cast<std::complex<double>>();
    m.diagonal().array() -= z;
    const Eigen::MatrixXcd inv = m.partialPivLu().inverse();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(inv);
    ResolventNormReport r;
    r.norm = svd.singularValues()[0];
    r.inv_dist = 1.0 / dist;
    r.relative_error = std::abs(r.norm - r.inv_dist) / r.inv_dist;
    return r;
}

ResolventNormReport resolvent_norm_check(const HamMatrix& h, std::complex<double> z) {
    return resolvent_norm_check(h.dense(), z);
}

}  // namespace anderson
