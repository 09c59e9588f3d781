#include <doctest.h>

#include <sstream>

#include "helpers.hpp"

using namespace anderson;
using namespace testutil;

TEST_SUITE("operator") {

TEST_CASE("three-site matrices for each boundary condition") {
    const Cube c = Cube::centered(1, 1);
    const Eigen::MatrixXd s = build_h(c, BoundaryKind::Simple, nullptr).dense();
    const Eigen::MatrixXd n = build_h(c, BoundaryKind::Neumann, nullptr).dense();
    const Eigen::MatrixXd d = build_h(c, BoundaryKind::Dirichlet, nullptr).dense();
    CHECK(s.diagonal() == Eigen::Vector3d(2, 2, 2));
    CHECK(n.diagonal() == Eigen::Vector3d(1, 2, 1));
    CHECK(d.diagonal() == Eigen::Vector3d(3, 2, 3));
    for (const auto* m : {&s, &n, &d}) {
        CHECK((*m)(0, 1) == -1.0);
        CHECK((*m)(1, 2) == -1.0);
        CHECK((*m)(0, 2) == 0.0);
        CHECK(*m == m->transpose());
    }
    CHECK((n * Eigen::Vector3d::Ones()).norm() == 0.0);
    CHECK(sorted_eigs(d)[0] > sorted_eigs(s)[0]);
}

TEST_CASE("construction matches the definitions") {
    std::mt19937_64 g(11);
    for (std::size_t dim = 1; dim <= 3; ++dim) {
        const Cube c(Site(std::vector<Coord>(dim, 2)), dim == 3 ? 1 : 2);
        const Potential v = random_potential(g, c, -1.0, 1.0);
        for (auto bc : {BoundaryKind::Simple, BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
            const HamMatrix h = build_h(c, bc, v);
            CHECK((h.dense() - reference_matrix(c, bc, v.values)).cwiseAbs().maxCoeff() == 0.0);
            CHECK((Eigen::MatrixXd(h.sparse()) - h.dense()).cwiseAbs().maxCoeff() == 0.0);
            for (std::size_t i = 0; i < h.size(); ++i)
                for (std::size_t j = 0; j < h.size(); ++j)
                    CHECK(h.entry(i, j) == h.dense()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
    }
    // A potential lacking a site is rejected.
    const Potential small = zero_potential(Cube::centered(1, 1));
    CHECK_THROWS_AS(build_h(Cube::centered(1, 2), BoundaryKind::Simple, small), DomainError);
}

TEST_CASE("boundary operator") {
    const SiteSet inner(Cube::centered(1, 1));
    const Cube amb = Cube::centered(1, 2);
    const Eigen::MatrixXd gs = gamma(inner, amb, BoundaryKind::Simple);
    CHECK((gs.array() == -1.0).count() == 4);  // two couplings, both orientations
    CHECK(gs.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(gs(amb.index_of(Site{-1}), amb.index_of(Site{-2})) == -1.0);
    CHECK(gs(amb.index_of(Site{1}), amb.index_of(Site{2})) == -1.0);

    const Eigen::MatrixXd gn = gamma(inner, amb, BoundaryKind::Neumann);
    for (Coord x : {-2, -1, 1, 2}) CHECK(gn(amb.index_of(Site{x}), amb.index_of(Site{x})) == 1.0);
    CHECK(sorted_eigs(gn).minCoeff() >= -1e-12);
    const Eigen::MatrixXd gd = gamma(inner, amb, BoundaryKind::Dirichlet);
    CHECK(sorted_eigs(gd).maxCoeff() <= 1e-12);
    CHECK((gd.diagonal() + gn.diagonal()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(gamma(SiteSet(Cube::centered(1, 3)), amb, BoundaryKind::Simple), DomainError);
}

TEST_CASE("exact splitting") {
    std::mt19937_64 g(5);
    struct Case {
        std::size_t d;
        BoundaryKind bc;
    };
    for (Case cs : {Case{1, BoundaryKind::Simple}, Case{2, BoundaryKind::Neumann}, Case{2, BoundaryKind::Dirichlet}}) {
        const Cube amb = Cube::centered(cs.d, 3);
        const Cube in = Cube::centered(cs.d, 1);
        const auto rep = verify_splitting(in, amb, cs.bc, random_potential(g, amb, -3, 3));
        CHECK(rep.residual == 0.0);
        CHECK(rep.float_residual == 0.0);
        CHECK(rep.inner_size + rep.outer_size == amb.size());
    }
    CHECK_THROWS_AS(verify_splitting(Cube(Site{2}, 1), Cube::centered(1, 3), BoundaryKind::Simple,
                                     zero_potential(Cube::centered(1, 3))),
                    DomainError);
}

TEST_CASE("shift covariance") {
    std::mt19937_64 g(9);
    const Cube c0 = Cube::centered(1, 2);
    CHECK(shift_covariance_check(2, Site{0}, random_potential(g, c0)) == 0.0);
    CHECK(shift_covariance_check(2, Site{5}, random_potential(g, Cube(Site{5}, 2))) <= 1e-12);
    CHECK(shift_covariance_check(1, Site{3, -4}, random_potential(g, Cube(Site{3, -4}, 1))) <= 1e-12);
}

TEST_CASE("bracketing and spectrum containment") {
    std::mt19937_64 g(21);
    for (int t = 0; t < 20; ++t) {
        const std::size_t d = 1 + static_cast<std::size_t>(t % 2);
        const Cube c = Cube::centered(d, 2);
        const Potential v = random_potential(g, c, 0.0, 3.0);
        const auto en = sorted_eigs(build_h(c, BoundaryKind::Neumann, v).dense());
        const auto es = sorted_eigs(build_h(c, BoundaryKind::Simple, v).dense());
        const auto ed = sorted_eigs(build_h(c, BoundaryKind::Dirichlet, v).dense());
        for (Eigen::Index k = 0; k < en.size(); ++k) {
            CHECK(en[k] <= es[k] + 1e-12);
            CHECK(es[k] <= ed[k] + 1e-12);
        }
        CHECK(es.minCoeff() >= v.values.minCoeff() - 1e-12);
        CHECK(es.maxCoeff() <= v.values.maxCoeff() + 4.0 * static_cast<double>(d) + 1e-12);
    }
}

TEST_CASE("Neumann quadratic form") {
    std::mt19937_64 g(3);
    const Cube c = Cube::centered(2, 2);
    const HamMatrix h = build_h(c, BoundaryKind::Neumann, nullptr);
    const Eigen::VectorXd u = random_vector(g, static_cast<Eigen::Index>(c.size()), -1, 1);
    double form = 0.0;
    for (const auto& [i, j] : h.edges()) {
        const double diff = u[static_cast<Eigen::Index>(i)] - u[static_cast<Eigen::Index>(j)];
        form += diff * diff;
    }
    CHECK(u.dot(h.dense() * u) == doctest::Approx(form).epsilon(1e-12));
}

TEST_CASE("coordinate dump") {
    std::ostringstream os;
    write_coo(os, build_h(Cube::centered(1, 0), BoundaryKind::Simple, make_potential(Cube::centered(1, 0), Eigen::VectorXd::Constant(1, 0.1))));
    CHECK(os.str() == "0 0 2.1000000000000001\n");
}

}  // TEST_SUITE
