#pragma once
// Restricted Hamiltonians H_Lambda^X for X in {Simple, Neumann, Dirichlet},
// boundary coupling operators, and exact identity checks.
//
// A HamMatrix keeps its integer kinetic diagonal apart from the potential so
// that structural identities can be checked in exact arithmetic.

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "anderson/disorder.hpp"
#include "anderson/lattice.hpp"

namespace anderson {

enum class BoundaryKind { Simple, Neumann, Dirichlet };

const char* to_string(BoundaryKind bc);
BoundaryKind parse_boundary_kind(const std::string& s);

inline constexpr std::size_t kDefaultDenseCap = 4096;

class HamMatrix {
public:
    HamMatrix(std::shared_ptr<const SiteSet> sites, BoundaryKind bc, std::vector<int> kinetic_diag,
              Eigen::VectorXd potential, std::string potential_ref, std::size_t dense_cap);

    std::size_t size() const { return sites_->size(); }
    std::size_t dim() const { return sites_->dim(); }
    const SiteSet& sites() const { return *sites_; }
    std::shared_ptr<const SiteSet> site_ptr() const { return sites_; }
    const std::optional<Cube>& cube() const { return sites_->cube(); }
    BoundaryKind bc() const { return bc_; }
    const std::vector<int>& kinetic_diag() const { return kinetic_; }
    const Eigen::VectorXd& potential() const { return potential_; }
    const std::string& potential_ref() const { return potential_ref_; }
    std::size_t dense_cap() const { return dense_cap_; }
    bool is_dense_regime() const { return size() <= dense_cap_; }

    double diag(std::size_t i) const { return kinetic_[i] + potential_[static_cast<Eigen::Index>(i)]; }
    // Entry (i,j); -1 between nearest neighbours, 0 elsewhere off the diagonal.
    double entry(std::size_t i, std::size_t j) const;

    Eigen::MatrixXd dense() const;
    Eigen::SparseMatrix<double> sparse() const;
    // Kinetic part only (integer valued), used by exact identity checks.
    Eigen::MatrixXd kinetic_dense() const;
    // Neighbour index pairs (i < j), lexicographic in i.
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
    // Gershgorin bound on the operator norm.
    double norm_bound() const;

private:
    std::shared_ptr<const SiteSet> sites_;
    BoundaryKind bc_;
    std::vector<int> kinetic_;
    Eigen::VectorXd potential_;
    std::string potential_ref_;
    std::size_t dense_cap_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

// Kinetic diagonal for site s of set Lambda: 2d, n_Lambda(s), or 4d - n_Lambda(s).
int kinetic_diagonal(BoundaryKind bc, const SiteSet& sites, const Site& s);

HamMatrix build_h(std::shared_ptr<const SiteSet> sites, BoundaryKind bc, const Potential* potential,
                  std::size_t dense_cap = kDefaultDenseCap);
HamMatrix build_h(const Cube& cube, BoundaryKind bc, const Potential* potential,
                  std::size_t dense_cap = kDefaultDenseCap);
inline HamMatrix build_h(const Cube& cube, BoundaryKind bc, const Potential& potential,
                         std::size_t dense_cap = kDefaultDenseCap) {
    return build_h(cube, bc, &potential, dense_cap);
}

// Relative boundary operator for inner subset of ambient: -1 on the edges of
// the relative boundary, plus the diagonal correction of the chosen boundary
// condition. Integer valued, indexed by the ambient cube.
Eigen::MatrixXd gamma(const SiteSet& inner, const Cube& ambient, BoundaryKind bc);

struct SplittingReport {
    double residual = 0.0;        // max |H_2 - (H_1 (+) H_{2\1} + Gamma)|, exact arithmetic
    double float_residual = 0.0;  // same difference after rounding assembled entries
    std::size_t inner_size = 0, outer_size = 0;
};

SplittingReport verify_splitting(const Cube& inner, const Cube& ambient, BoundaryKind bc,
                                 const Potential& potential);

// Max difference between sorted spectra of H on Lambda_L(j) and on Lambda_L(0)
// with the potential translated back by j.
double shift_covariance_check(Coord L, const Site& j, const Potential& potential_on_shifted_cube,
                              BoundaryKind bc = BoundaryKind::Simple);

// Block-diagonal direct sum over disjoint site sets (ordering of the union).
Eigen::MatrixXd direct_sum_dense(const std::vector<HamMatrix>& blocks, const SiteSet& union_sites);

// Coordinate-list dump: "row col value" per nonzero, 17 significant digits.
void write_coo(std::ostream& os, const HamMatrix& h);

}  // namespace anderson
