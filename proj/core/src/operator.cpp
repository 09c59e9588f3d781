#include "anderson/operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "anderson/errors.hpp"

namespace anderson {

const char* to_string(BoundaryKind bc) {
    switch (bc) {
        case BoundaryKind::Simple: return "simple";
        case BoundaryKind::Neumann: return "neumann";
        case BoundaryKind::Dirichlet: return "dirichlet";
    }
    return "?";
}

BoundaryKind parse_boundary_kind(const std::string& s) {
    if (s == "simple") return BoundaryKind::Simple;
    if (s == "neumann") return BoundaryKind::Neumann;
    if (s == "dirichlet") return BoundaryKind::Dirichlet;
    throw DomainError("unknown boundary condition '" + s + "' (expected simple, neumann or dirichlet)");
}

HamMatrix::HamMatrix(std::shared_ptr<const SiteSet> sites, BoundaryKind bc, std::vector<int> kinetic_diag,
                     Eigen::VectorXd potential, std::string potential_ref, std::size_t dense_cap)
    : sites_(std::move(sites)),
      bc_(bc),
      kinetic_(std::move(kinetic_diag)),
      potential_(std::move(potential)),
      potential_ref_(std::move(potential_ref)),
      dense_cap_(dense_cap) {
    const auto& set = *sites_;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const Site& s = set[i];
        // Only forward neighbours (+e_k) so each edge is listed once.
        Site t(s);
        for (std::size_t k = 0; k < s.dim(); ++k) {
            t[k] = s[k] + 1;
            if (auto j = set.find(t)) edges_.emplace_back(std::min(i, *j), std::max(i, *j));
            t[k] = s[k];
        }
    }
    std::sort(edges_.begin(), edges_.end());
}

double HamMatrix::entry(std::size_t i, std::size_t j) const {
    if (i == j) return diag(i);
    return dist_1((*sites_)[i], (*sites_)[j]) == 1 ? -1.0 : 0.0;
}

Eigen::MatrixXd HamMatrix::kinetic_dense() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) k(i, i) = kinetic_[static_cast<std::size_t>(i)];
    for (auto [i, j] : edges_) {
        k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = -1.0;
        k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = -1.0;
    }
    return k;
}

Eigen::MatrixXd HamMatrix::dense() const {
    Eigen::MatrixXd h = kinetic_dense();
    h.diagonal() += potential_;
    return h;
}

Eigen::SparseMatrix<double> HamMatrix::sparse() const {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(size() + 2 * edges_.size());
    for (std::size_t i = 0; i < size(); ++i)
        t.emplace_back(static_cast<int>(i), static_cast<int>(i), diag(i));
    for (auto [i, j] : edges_) {
        t.emplace_back(static_cast<int>(i), static_cast<int>(j), -1.0);
        t.emplace_back(static_cast<int>(j), static_cast<int>(i), -1.0);
    }
    Eigen::SparseMatrix<double> s(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
    s.setFromTriplets(t.begin(), t.end());
    return s;
}

double HamMatrix::norm_bound() const {
    std::vector<double> row(size(), 0.0);
    for (std::size_t i = 0; i < size(); ++i) row[i] = std::abs(diag(i));
    for (auto [i, j] : edges_) {
        row[i] += 1.0;
        row[j] += 1.0;
    }
    return row.empty() ? 0.0 : *std::max_element(row.begin(), row.end());
}

int kinetic_diagonal(BoundaryKind bc, const SiteSet& sites, const Site& s) {
    const int d = static_cast<int>(sites.dim());
    switch (bc) {
        case BoundaryKind::Simple: return 2 * d;
        case BoundaryKind::Neumann: return sites.neighbours_inside(s);
        case BoundaryKind::Dirichlet: return 4 * d - sites.neighbours_inside(s);
    }
    return 0;
}

HamMatrix build_h(std::shared_ptr<const SiteSet> sites, BoundaryKind bc, const Potential* potential,
                  std::size_t dense_cap) {
    const auto n = static_cast<Eigen::Index>(sites->size());
    std::vector<int> kin(sites->size());
    for (std::size_t i = 0; i < sites->size(); ++i) kin[i] = kinetic_diagonal(bc, *sites, (*sites)[i]);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    std::string ref = "zero";
    if (potential) {
        const bool same = potential->sites == sites ||
                          (potential->sites->cube() && sites->cube() && *potential->sites->cube() == *sites->cube());
        if (same) {
            v = potential->values;
        } else {
            for (Eigen::Index i = 0; i < n; ++i) v[i] = potential->at((*sites)[static_cast<std::size_t>(i)]);
        }
        ref = potential->provenance();
    }
    return HamMatrix(std::move(sites), bc, std::move(kin), std::move(v), std::move(ref), dense_cap);
}

HamMatrix build_h(const Cube& cube, BoundaryKind bc, const Potential* potential, std::size_t dense_cap) {
    return build_h(std::make_shared<const SiteSet>(cube), bc, potential, dense_cap);
}

Eigen::MatrixXd gamma(const SiteSet& inner, const Cube& ambient, BoundaryKind bc) {
    for (const auto& s : inner.sites())
        if (!ambient.contains(s)) throw DomainError("inner set is not contained in the ambient cube");
    const auto n = static_cast<Eigen::Index>(ambient.size());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    const BoundarySet b = boundary(inner, ambient);
    const double diag_step = bc == BoundaryKind::Neumann ? 1.0 : bc == BoundaryKind::Dirichlet ? -1.0 : 0.0;
    for (const auto& e : b.edges) {
        const auto i = static_cast<Eigen::Index>(ambient.index_of(e.inner));
        const auto j = static_cast<Eigen::Index>(ambient.index_of(e.outer));
        g(i, j) = -1.0;
        g(j, i) = -1.0;
        // Each cut edge removes one neighbour on both of its sides.
        g(i, i) += diag_step;
        g(j, j) += diag_step;
    }
    return g;
}

Eigen::MatrixXd direct_sum_dense(const std::vector<HamMatrix>& blocks, const SiteSet& union_sites) {
    const auto n = static_cast<Eigen::Index>(union_sites.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const auto& b : blocks) {
        std::vector<Eigen::Index> map(b.size());
        for (std::size_t i = 0; i < b.size(); ++i)
            map[i] = static_cast<Eigen::Index>(union_sites.index_of(b.sites()[i]));
        for (std::size_t i = 0; i < b.size(); ++i) m(map[i], map[i]) = b.diag(i);
        for (auto [i, j] : b.edges()) {
            m(map[i], map[j]) = -1.0;
            m(map[j], map[i]) = -1.0;
        }
    }
    return m;
}

SplittingReport verify_splitting(const Cube& inner, const Cube& ambient, BoundaryKind bc,
                                 const Potential& potential) {
    if (!well_inside(inner, ambient)) throw DomainError("splitting requires inner cube well inside ambient");
    auto amb = std::make_shared<const SiteSet>(ambient);
    auto in = std::make_shared<const SiteSet>(inner);
    auto rest = std::make_shared<const SiteSet>(SiteSet::difference(ambient, *in));

    const HamMatrix h2 = build_h(amb, bc, &potential);
    const HamMatrix h1 = build_h(in, bc, &potential);
    const HamMatrix h3 = build_h(rest, bc, &potential);
    const Eigen::MatrixXd g = gamma(*in, ambient, bc);

    // Kinetic parts are small integers and potentials are copied verbatim, so
    // both differences below are computed without rounding.
    const auto n = static_cast<Eigen::Index>(ambient.size());
    Eigen::MatrixXd kin_split = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd v_split(n);
    for (const HamMatrix* b : {&h1, &h3}) {
        const Eigen::MatrixXd k = b->kinetic_dense();
        std::vector<Eigen::Index> map(b->size());
        for (std::size_t i = 0; i < b->size(); ++i)
            map[i] = static_cast<Eigen::Index>(ambient.index_of(b->sites()[i]));
        for (std::size_t i = 0; i < b->size(); ++i) {
            v_split[map[i]] = b->potential()[static_cast<Eigen::Index>(i)];
            for (std::size_t j = 0; j < b->size(); ++j)
                kin_split(map[i], map[j]) = k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    Eigen::MatrixXd diff = h2.kinetic_dense() - kin_split - g;
    diff.diagonal() += h2.potential() - v_split;

    SplittingReport r;
    r.residual = diff.cwiseAbs().maxCoeff();
    const Eigen::MatrixXd assembled = direct_sum_dense({h1, h3}, *amb) + g;
    r.float_residual = (h2.dense() - assembled).cwiseAbs().maxCoeff();
    r.inner_size = h1.size();
    r.outer_size = h3.size();
    return r;
}

double shift_covariance_check(Coord L, const Site& j, const Potential& potential_on_shifted_cube,
                              BoundaryKind bc) {
    const Cube shifted(j, L);
    const Cube origin = Cube::centered(j.dim(), L);
    const HamMatrix hj = build_h(shifted, bc, &potential_on_shifted_cube);
    const Potential back = shifted_potential(potential_on_shifted_cube, origin, j);
    const HamMatrix h0 = build_h(origin, bc, &back);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> a(hj.dense(), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> b(h0.dense(), Eigen::EigenvaluesOnly);
    return (a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff();
}

void write_coo(std::ostream& os, const HamMatrix& h) {
    char buf[96];
    auto line = [&](std::size_t i, std::size_t j, double v) {
        std::snprintf(buf, sizeof buf, "%zu %zu %.17g\n", i, j, v);
        os << buf;
    };
    // Row-major order over nonzeros.
    std::vector<std::vector<std::size_t>> nbr(h.size());
    for (auto [i, j] : h.edges()) {
        nbr[i].push_back(j);
        nbr[j].push_back(i);
    }
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto& row = nbr[i];
        row.push_back(i);
        std::sort(row.begin(), row.end());
        for (std::size_t j : row) line(i, j, h.entry(i, j));
    }
}

}  // namespace anderson
