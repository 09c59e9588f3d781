#pragma once
// Small oracles shared by the unit tests. They deliberately avoid the library
// code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "anderson/anderson.hpp"

namespace testutil {

using namespace anderson;

// Dense matrix assembled straight from the definitions: 2d or n_Lambda or
// 4d - n_Lambda on the diagonal, -1 between nearest neighbours.
inline Eigen::MatrixXd reference_matrix(const Cube& c, BoundaryKind bc, const Eigen::VectorXd& v) {
    const auto sites = cube_sites(c);
    const auto n = static_cast<Eigen::Index>(sites.size());
    const int d = static_cast<int>(c.dim());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        int inside = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (dist_1(sites[static_cast<std::size_t>(i)], sites[static_cast<std::size_t>(j)]) == 1) {
                h(i, j) = -1.0;
                ++inside;
            }
        }
        const int diag = bc == BoundaryKind::Simple ? 2 * d : bc == BoundaryKind::Neumann ? inside : 4 * d - inside;
        h(i, i) = diag + (v.size() ? v[i] : 0.0);
    }
    return h;
}

inline Eigen::VectorXd sorted_eigs(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline Eigen::VectorXd random_vector(std::mt19937_64& g, Eigen::Index n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = u(g);
    return v;
}

inline Eigen::MatrixXd random_symmetric(std::mt19937_64& g, Eigen::Index n) {
    Eigen::MatrixXd a(n, n);
    std::normal_distribution<double> z(0.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = z(g);
    return 0.5 * (a + a.transpose());
}

inline Potential random_potential(std::mt19937_64& g, const Cube& c, double lo = 0.0, double hi = 1.0) {
    return make_potential(c, random_vector(g, static_cast<Eigen::Index>(c.size()), lo, hi), "test");
}

}  // namespace testutil
