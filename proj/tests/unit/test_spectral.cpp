#include <doctest.h>

#include "helpers.hpp"

using namespace anderson;
using namespace testutil;

TEST_SUITE("spectral") {

TEST_CASE("small spectra") {
    const Spectrum s = eigen(build_h(Cube::centered(1, 0), BoundaryKind::Simple, nullptr), false);
    CHECK(s.values[0] == doctest::Approx(2.0));
    Eigen::Matrix2d two;
    two << 2, -1, -1, 2;
    const Spectrum t = eigen(Eigen::MatrixXd(two), true);
    CHECK(t.values[0] == doctest::Approx(1.0));
    CHECK(t.values[1] == doctest::Approx(3.0));

    const Spectrum n = eigen(build_h(Cube::centered(1, 1), BoundaryKind::Neumann, nullptr), true);
    CHECK(std::abs(n.values[0]) < 1e-12);
    const Eigen::VectorXd v0 = n.vectors->col(0);
    CHECK((v0.cwiseAbs().array() - 1.0 / std::sqrt(3.0)).abs().maxCoeff() < 1e-12);

    Eigen::VectorXd diag(4);
    diag << 3, -1, 2, 0.5;
    const Spectrum dg = eigen(Eigen::MatrixXd(diag.asDiagonal()), false);
    CHECK(dg.values == (Eigen::VectorXd(4) << -1, 0.5, 2, 3).finished());
}

TEST_CASE("quality of eigenpairs and reconstruction") {
    std::mt19937_64 g(1);
    for (int t = 0; t < 5; ++t) {
        const Cube c = Cube::centered(2, 3);
        const HamMatrix h = build_h(c, BoundaryKind::Simple, random_potential(g, c, 0, 5));
        const Spectrum s = eigen(h, true);
        const auto q = check_spectrum(h.dense(), s);
        CHECK(q.ok);
        CHECK(q.max_residual <= kEigenResidualTol * q.norm);
        CHECK(q.orthonormality_error <= kOrthonormalityTol);
        const Eigen::MatrixXd back = *s.vectors * s.values.asDiagonal() * s.vectors->transpose();
        CHECK((back - h.dense()).cwiseAbs().maxCoeff() <= 1e-10);
        for (Eigen::Index i = 1; i < s.values.size(); ++i) CHECK(s.values[i - 1] <= s.values[i]);
    }
}

TEST_CASE("vectors above the dense cap are refused") {
    const HamMatrix h = build_h(Cube::centered(1, 4), BoundaryKind::Simple, nullptr, 4);
    CHECK_THROWS_AS(eigen(h, true), CapabilityError);
    const CountResult c = counting(h, 2.0);
    CHECK(c.method == "inertia");
}

TEST_CASE("counting") {
    Eigen::Matrix2d two;
    two << 2, -1, -1, 2;
    CHECK(counting(Eigen::MatrixXd(two), 2.0).count == 1);
    CHECK(counting(Eigen::MatrixXd(two), 0.5).count == 0);
    const CountResult tie = counting(Eigen::MatrixXd(two), 1.0);
    CHECK(tie.count <= 1);
    CHECK(tie.boundary);

    std::mt19937_64 g(2);
    for (int t = 0; t < 20; ++t) {
        const Eigen::MatrixXd a = random_symmetric(g, 50);
        const Eigen::VectorXd ev = sorted_eigs(a);
        const double E = std::uniform_real_distribution<double>(ev.minCoeff() - 1, ev.maxCoeff() + 1)(g);
        const std::size_t oracle = static_cast<std::size_t>((ev.array() < E).count());
        CHECK(counting_inertia(a.sparseView(), E).count == oracle);
        CHECK(counting(a, E).count == oracle);
    }
    // Inertia on lattice Hamiltonians beyond the dense cap matches dense counts.
    for (int t = 0; t < 10; ++t) {
        const Cube c = Cube::centered(2, 5);
        const Potential v = random_potential(g, c, 0, 2);
        const HamMatrix sparse = build_h(c, BoundaryKind::Simple, v, 10);
        const HamMatrix dense = build_h(c, BoundaryKind::Simple, v);
        const double E = 1.0 + 0.37 * t;
        CHECK(counting(sparse, E).count == counting(dense, E).count);
    }
}

TEST_CASE("counting jumps by the multiplicity") {
    Eigen::VectorXd d(5);
    d << 0, 1, 1, 1, 4;
    const Eigen::MatrixXd a = d.asDiagonal();
    CHECK(counting(a, 1.0 + 1e-6).count - counting(a, 1.0 - 1e-6).count == 3);
}

TEST_CASE("nonnegative potential raises every eigenvalue") {
    std::mt19937_64 g(3);
    const Cube c = Cube::centered(2, 2);
    for (int t = 0; t < 10; ++t) {
        const Potential v = random_potential(g, c, -1, 1);
        Potential w = v;
        w.values += random_vector(g, v.values.size(), 0, 0.5);
        const auto a = eigen(build_h(c, BoundaryKind::Simple, v), false).values;
        const auto b = eigen(build_h(c, BoundaryKind::Simple, w), false).values;
        CHECK(((b - a).array() >= -1e-12).all());
    }
}

TEST_CASE("rank-one interlacing") {
    Eigen::MatrixXd a = Eigen::Vector2d(0, 1).asDiagonal();
    const auto r = interlace_rank_one(a, Eigen::Vector2d(1, 0), 1.0);
    CHECK(r.holds);
    CHECK(r.after[0] == doctest::Approx(1.0));
    CHECK(r.after[1] == doctest::Approx(1.0));
    const auto z = interlace_rank_one(a, Eigen::Vector2d(1, 0), 0.0);
    CHECK(z.after == z.before);
    CHECK_THROWS_AS(interlace_rank_one(a, Eigen::Vector2d(1, 0), -1.0), DomainError);

    std::mt19937_64 g(4);
    for (int t = 0; t < 20; ++t) {
        const Eigen::MatrixXd m = random_symmetric(g, 20);
        Eigen::VectorXd u = random_vector(g, 20, -1, 1);
        u.normalize();
        const auto rep = interlace_rank_one(m, u, 5.0);
        CHECK(rep.holds);
        // Independent check of the sandwich.
        const Eigen::VectorXd e = sorted_eigs(m), f = sorted_eigs(m + 5.0 * u * u.transpose());
        for (Eigen::Index n = 0; n < 20; ++n) {
            CHECK(e[n] <= f[n] + 1e-10);
            if (n + 1 < 20) CHECK(f[n] <= e[n + 1] + 1e-10);
        }
    }
}

TEST_CASE("Temple's inequality") {
    const Eigen::MatrixXd a = Eigen::Vector2d(0, 2).asDiagonal();
    const auto exact = temple_bound(a, Eigen::Vector2d(1, 0), 2.0);
    CHECK(exact.bound == doctest::Approx(0.0));
    CHECK(exact.holds);
    const auto mix = temple_bound(a, Eigen::Vector2d(std::sqrt(0.9), std::sqrt(0.1)), 2.0);
    CHECK(mix.mean == doctest::Approx(0.2));
    CHECK(mix.variance == doctest::Approx(0.36));
    CHECK(std::abs(mix.bound) < 1e-12);
    CHECK_THROWS_AS(temple_bound(a, Eigen::Vector2d(0, 1), 2.0), PreconditionError);

    std::mt19937_64 g(5);
    for (int t = 0; t < 10; ++t) {
        Eigen::VectorXd d = random_vector(g, 10, 1, 5);
        d[0] = 0.0;
        Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(random_symmetric(g, 10)).householderQ();
        const Eigen::MatrixXd m = q * d.asDiagonal() * q.transpose();
        Eigen::VectorXd psi = q.col(0) + 0.05 * random_vector(g, 10, -1, 1);
        psi.normalize();
        const auto rep = temple_bound(m, psi, d.tail(9).minCoeff());
        CHECK(rep.holds);
        CHECK(rep.bound <= 1e-12);
        CHECK(rep.mean >= -1e-12);
    }
}

TEST_CASE("resolvent norm equals inverse distance") {
    const Eigen::MatrixXd a = Eigen::Vector2d(1, 3).asDiagonal();
    const auto r = resolvent_norm_check(a, {2.0, 0.0});
    CHECK(r.norm == doctest::Approx(1.0));
    CHECK(r.inv_dist == doctest::Approx(1.0));
    const auto c = resolvent_norm_check(a, {2.0, 1.0});
    CHECK(c.norm == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(c.norm <= 1.0);
    CHECK_THROWS_AS(resolvent_norm_check(a, {1.0, 0.0}), NearSingularError);
    std::mt19937_64 g(6);
    for (int t = 0; t < 10; ++t) {
        const Eigen::MatrixXd m = random_symmetric(g, 30);
        const std::complex<double> z(std::normal_distribution<double>(0, 2)(g), 0.3);
        CHECK(resolvent_norm_check(m, z).relative_error <= 1e-8);
    }
}

}  // TEST_SUITE
