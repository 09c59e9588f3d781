#pragma once
// Green's functions G_E(n,m) = (H - E)^{-1}(n,m) on finite site sets:
// columns, the geometric resolvent identity, good/resonant classification of
// cubes and the Combes-Thomas off-diagonal bound.

#include <memory>
#include <optional>

#include <Eigen/Core>
#include <Eigen/LU>

#include "anderson/disorder.hpp"
#include "anderson/lattice.hpp"
#include "anderson/operator.hpp"
#include "anderson/spectral.hpp"

namespace anderson {

inline constexpr double kSingularTol = 1e-12;

struct GreenColumn {
    std::shared_ptr<const SiteSet> sites;
    double E = 0.0;
    Site source;
    Eigen::VectorXd values;
    double residual = 0.0;  // ||(H - E) g - delta_m|| / ||g||
    double at(const Site& n) const { return values[static_cast<Eigen::Index>(sites->index_of(n))]; }
};

// Factorization of H - E at one real energy, with dist(E, sigma(H)).
class Resolvent {
public:
    Resolvent(const HamMatrix& h, double E);
    double energy() const { return E_; }
    double distance() const { return dist_; }
    const Eigen::VectorXd& eigenvalues() const { return values_; }
    bool singular() const { return dist_ <= kSingularTol; }
    const HamMatrix& matrix() const { return *h_; }
    // Column (H - E)^{-1} delta_m; throws NearSingularError when E is on the spectrum.
    Eigen::VectorXd column(std::size_t m) const;
    Eigen::MatrixXd columns(const std::vector<std::size_t>& ms) const;
    Eigen::MatrixXd inverse() const;

private:
    std::shared_ptr<const HamMatrix> h_;
    double E_;
    double dist_;
    Eigen::VectorXd values_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

// Full eigendecomposition reused across many real energies.
class SpectralResolvent {
public:
    explicit SpectralResolvent(const HamMatrix& h);
    const Eigen::VectorXd& eigenvalues() const { return values_; }
    const Eigen::MatrixXd& eigenvectors() const { return vectors_; }
    double distance(double E) const { return distance_to_spectrum(values_, E); }
    double entry(std::size_t n, std::size_t m, double E) const;
    const HamMatrix& matrix() const { return *h_; }

private:
    std::shared_ptr<const HamMatrix> h_;
    Eigen::VectorXd values_;
    Eigen::MatrixXd vectors_;
};

GreenColumn green_column(const HamMatrix& h, double E, const Site& m);

struct GeometricResolventReport {
    double lhs = 0.0;       // G^{ambient}(n,m)
    double rhs = 0.0;       // sum over boundary edges of G^{inner}(n,k) G^{ambient}(k',m)
    double residual = 0.0;  // |lhs - rhs|
    double relative = 0.0;  // residual / max(|lhs|, tiny)
    bool within_tolerance = false;  // residual <= 1e-8 |lhs| + 1e-12
};

// Simple boundary conditions; n in inner, m in ambient \ inner.
GeometricResolventReport geometric_resolvent_check(const Cube& inner, const Cube& ambient, const Potential& v,
                                                   double E, const Site& n, const Site& m);

struct CubeVerdict {
    Cube cube;
    double E = 0.0;
    double gamma = 0.0;
    bool good = false;
    double rate_measured = 0.0;  // -ln(max |G|) / L over required pairs
    bool resonant = false;       // dist < exp(-sqrt(L))
    double dist_to_spectrum = 0.0;
    double max_abs_green = 0.0;
};

// Radius of the inner cube whose sites are the n in the decay condition.
Coord inner_radius_for(Coord L);

// Sites n with |n - c|_inf <= floor(sqrt(L)) and m with |m - c|_inf == L.
CubeVerdict classify_cube(const HamMatrix& h, double E, double gamma);
CubeVerdict classify_cube(const Cube& cube, const Potential& v, double E, double gamma);
CubeVerdict classify_cube(const SpectralResolvent& r, double E, double gamma);
CubeVerdict classify_from_resolvent(const Resolvent& r, double gamma);

bool is_resonant(double dist, Coord L);

// |G_E - G_E'| entrywise <= |E - E'| / (dist_E dist_E').
double resolvent_lipschitz_margin(double dE, double dist_E, double dist_E2);

struct CombesThomasReport {
    double delta = 0.0;           // dist(E, sigma(H))
    bool in_hypothesis = false;   // 0 < delta <= 1
    double worst_ratio = 0.0;     // max |G(n,m)| / ((2/delta) exp(-delta |n-m|_1 / (12 d)))
    std::size_t worst_n = 0, worst_m = 0;
    double mu = 0.0;              // delta / (12 d)
    double commutator_norm = 0.0; // || F^{-1} H F - H ||
    double commutator_bound = 0.0;// 2 d mu e^mu
    bool pass = false;            // only meaningful when in_hypothesis
};

CombesThomasReport combes_thomas_check(const HamMatrix& h, double E, std::optional<Site> weight_origin = std::nullopt);

}  // namespace anderson
