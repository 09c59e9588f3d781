#include "anderson/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "anderson/errors.hpp"

namespace anderson {

Resolvent::Resolvent(const HamMatrix& h, double E) : h_(std::make_shared<const HamMatrix>(h)), E_(E) {
    Eigen::MatrixXd a = h.dense();
    values_ = eigen(a, false).values;
    dist_ = distance_to_spectrum(values_, E);
    a.diagonal().array() -= E;
    if (!singular()) lu_.compute(a);
}

Eigen::VectorXd Resolvent::column(std::size_t m) const {
    if (singular()) throw NearSingularError("energy lies on the spectrum", dist_);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(h_->size()));
    rhs[static_cast<Eigen::Index>(m)] = 1.0;
    return lu_.solve(rhs);
}

Eigen::MatrixXd Resolvent::columns(const std::vector<std::size_t>& ms) const {
    if (singular()) throw NearSingularError("energy lies on the spectrum", dist_);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(h_->size()),
                                                 static_cast<Eigen::Index>(ms.size()));
    for (std::size_t k = 0; k < ms.size(); ++k) rhs(static_cast<Eigen::Index>(ms[k]), static_cast<Eigen::Index>(k)) = 1.0;
    return lu_.solve(rhs);
}

Eigen::MatrixXd Resolvent::inverse() const {
    if (singular()) throw NearSingularError("energy lies on the spectrum", dist_);
    return lu_.inverse();
}

SpectralResolvent::SpectralResolvent(const HamMatrix& h) : h_(std::make_shared<const HamMatrix>(h)) {
    Spectrum s = eigen(h, true);
    values_ = s.values;
    vectors_ = *s.vectors;
}

double SpectralResolvent::entry(std::size_t n, std::size_t m, double E) const {
    const auto in = static_cast<Eigen::Index>(n), im = static_cast<Eigen::Index>(m);
    double g = 0.0;
    for (Eigen::Index j = 0; j < values_.size(); ++j) g += vectors_(in, j) * vectors_(im, j) / (values_[j] - E);
    return g;
}

GreenColumn green_column(const HamMatrix& h, double E, const Site& m) {
    const std::size_t idx = h.sites().index_of(m);
    Resolvent r(h, E);
    if (r.singular()) throw NearSingularError("green_column: E is within 1e-12 of the spectrum", r.distance());
    GreenColumn g;
    g.sites = h.site_ptr();
    g.E = E;
    g.source = m;
    g.values = r.column(idx);
    Eigen::MatrixXd a = h.dense();
    a.diagonal().array() -= E;
    Eigen::VectorXd res = a * g.values;
    res[static_cast<Eigen::Index>(idx)] -= 1.0;
    g.residual = res.norm() / std::max(g.values.norm(), std::numeric_limits<double>::min());
    return g;
}

GeometricResolventReport geometric_resolvent_check(const Cube& inner, const Cube& ambient, const Potential& v,
                                                   double E, const Site& n, const Site& m) {
    if (!well_inside(inner, ambient)) throw DomainError("inner cube must be well inside the ambient cube");
    if (!inner.contains(n)) throw DomainError("n must lie in the inner cube");
    if (inner.contains(m) || !ambient.contains(m))
        throw PreconditionError("m must lie in the ambient cube outside the inner cube");
    const HamMatrix h1 = build_h(inner, BoundaryKind::Simple, &v);
    const HamMatrix h2 = build_h(ambient, BoundaryKind::Simple, &v);
    const Resolvent r1(h1, E), r2(h2, E);
    if (r1.singular() || r2.singular())
        throw PreconditionError("energy is on the spectrum of one of the cubes");

    const Eigen::VectorXd g1n = r1.column(inner.index_of(n));    // G1(., n) = G1(n, .)
    const Eigen::VectorXd g2m = r2.column(ambient.index_of(m));  // G2(., m)

    GeometricResolventReport rep;
    rep.lhs = g2m[static_cast<Eigen::Index>(ambient.index_of(n))];
    for (const auto& e : boundary(inner, ambient).edges)
        rep.rhs += g1n[static_cast<Eigen::Index>(inner.index_of(e.inner))] *
                   g2m[static_cast<Eigen::Index>(ambient.index_of(e.outer))];
    rep.residual = std::abs(rep.lhs - rep.rhs);
    rep.relative = rep.residual / std::max(std::abs(rep.lhs), std::numeric_limits<double>::min());
    rep.within_tolerance = rep.residual <= 1e-8 * std::abs(rep.lhs) + 1e-12;
    return rep;
}

Coord inner_radius_for(Coord L) {
    auto r = static_cast<Coord>(std::floor(std::sqrt(static_cast<double>(L))));
    while ((r + 1) * (r + 1) <= L) ++r;
    while (r * r > L) --r;
    return r;
}

bool is_resonant(double dist, Coord L) { return dist < std::exp(-std::sqrt(static_cast<double>(L))); }

double resolvent_lipschitz_margin(double dE, double dist_E, double dist_E2) {
    return std::abs(dE) / (dist_E * dist_E2);
}

namespace {

struct PairIndices {
    std::vector<std::size_t> inner, boundary;
};

PairIndices required_pairs(const HamMatrix& h) {
    if (!h.cube()) throw DomainError("classification needs a cube-shaped matrix");
    const Cube& c = *h.cube();
    PairIndices p;
    const Cube in(c.center, std::min(inner_radius_for(c.radius), c.radius));
    for (std::size_t i = 0; i < in.size(); ++i) p.inner.push_back(c.index_of(in.site_at(i)));
    for (const auto& s : inner_boundary_sites(c)) p.boundary.push_back(c.index_of(s));
    return p;
}

CubeVerdict finish(CubeVerdict v, double max_g) {
    const double L = static_cast<double>(v.cube.radius);
    v.max_abs_green = max_g;
    v.rate_measured = L > 0 ? -std::log(max_g) / L : std::numeric_limits<double>::infinity();
    v.good = std::isfinite(max_g) && max_g <= std::exp(-v.gamma * L);
    return v;
}

CubeVerdict singular_verdict(CubeVerdict v) {
    v.good = false;
    v.resonant = true;
    v.max_abs_green = std::numeric_limits<double>::infinity();
    v.rate_measured = -std::numeric_limits<double>::infinity();
    return v;
}

}  // namespace

CubeVerdict classify_from_resolvent(const Resolvent& r, double gamma) {
    const HamMatrix& h = r.matrix();
    const PairIndices p = required_pairs(h);
    CubeVerdict v;
    v.cube = *h.cube();
    v.E = r.energy();
    v.gamma = gamma;
    v.dist_to_spectrum = r.distance();
    v.resonant = is_resonant(r.distance(), v.cube.radius);
    if (r.singular()) return singular_verdict(v);
    // G is symmetric, so solving for columns at the inner sites suffices.
    const Eigen::MatrixXd cols = r.columns(p.inner);
    double max_g = 0.0;
    for (Eigen::Index k = 0; k < cols.cols(); ++k)
        for (std::size_t b : p.boundary) max_g = std::max(max_g, std::abs(cols(static_cast<Eigen::Index>(b), k)));
    return finish(v, max_g);
}

CubeVerdict classify_cube(const HamMatrix& h, double E, double gamma) {
    return classify_from_resolvent(Resolvent(h, E), gamma);
}

CubeVerdict classify_cube(const Cube& cube, const Potential& v, double E, double gamma) {
    if (cube.radius < 1) throw DomainError("classification needs L >= 1");
    return classify_cube(build_h(cube, BoundaryKind::Simple, &v), E, gamma);
}

CubeVerdict classify_cube(const SpectralResolvent& r, double E, double gamma) {
    const HamMatrix& h = r.matrix();
    const PairIndices p = required_pairs(h);
    CubeVerdict v;
    v.cube = *h.cube();
    v.E = E;
    v.gamma = gamma;
    v.dist_to_spectrum = r.distance(E);
    v.resonant = is_resonant(v.dist_to_spectrum, v.cube.radius);
    if (v.dist_to_spectrum <= kSingularTol) return singular_verdict(v);
    // Project the inner columns onto the eigenbasis once per energy.
    const Eigen::MatrixXd& vec = r.eigenvectors();
    const Eigen::VectorXd w = (r.eigenvalues().array() - E).inverse().matrix();
    double max_g = 0.0;
    for (std::size_t n : p.inner) {
        const Eigen::RowVectorXd rn = vec.row(static_cast<Eigen::Index>(n)).cwiseProduct(w.transpose());
        for (std::size_t b : p.boundary)
            max_g = std::max(max_g, std::abs(rn.dot(vec.row(static_cast<Eigen::Index>(b)))));
    }
    return finish(v, max_g);
}

CombesThomasReport combes_thomas_check(const HamMatrix& h, double E, std::optional<Site> weight_origin) {
    const Resolvent r(h, E);
    if (r.singular()) throw NearSingularError("Combes-Thomas check: E on the spectrum", r.distance());
    CombesThomasReport rep;
    const double d = static_cast<double>(h.dim());
    rep.delta = r.distance();
    rep.in_hypothesis = rep.delta > 0 && rep.delta <= 1.0;
    const Eigen::MatrixXd g = r.inverse();
    const SiteSet& s = h.sites();
    const std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dist = static_cast<double>(dist_1(s[i], s[j]));
            const double bound = (2.0 / rep.delta) * std::exp(-rep.delta * dist / (12.0 * d));
            const double ratio = std::abs(g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) / bound;
            if (ratio > rep.worst_ratio) {
                rep.worst_ratio = ratio;
                rep.worst_n = i;
                rep.worst_m = j;
            }
        }
    }
    // Weighted commutator with F u(n) = exp(mu |n0 - n|_1) u(n).
    rep.mu = rep.delta / (12.0 * d);
    const Site n0 = weight_origin ? *weight_origin : (h.cube() ? h.cube()->center : s[0]);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (auto [i, j] : h.edges()) {
        const double wi = static_cast<double>(dist_1(n0, s[i]));
        const double wj = static_cast<double>(dist_1(n0, s[j]));
        // (F^{-1} H F)(i,j) - H(i,j) with H(i,j) = -1.
        c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = -(std::exp(rep.mu * (wj - wi)) - 1.0);
        c(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = -(std::exp(rep.mu * (wi - wj)) - 1.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.transpose() * c, Eigen::EigenvaluesOnly);
    rep.commutator_norm = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    rep.commutator_bound = 2.0 * d * rep.mu * std::exp(rep.mu);
    rep.pass = rep.worst_ratio <= 1.0 && rep.commutator_norm <= rep.commutator_bound * (1.0 + 1e-12);
    return rep;
}

}  // namespace anderson
