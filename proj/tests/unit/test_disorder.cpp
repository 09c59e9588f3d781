#include <doctest.h>

#include "helpers.hpp"

using namespace anderson;

TEST_SUITE("disorder") {

TEST_CASE("distribution metadata") {
    const auto u = Distribution::uniform(0, 1);
    CHECK(*u.density_bound() == 1.0);
    CHECK(disorder_parameter(u) == 1.0);
    CHECK(disorder_parameter(Distribution::scaled_uniform(50)) == doctest::Approx(50.0));
    CHECK(Distribution::scaled_uniform(50).support() == std::pair<double, double>{0.0, 50.0});
    const auto b = Distribution::bernoulli(0.5, 0, 1);
    CHECK_FALSE(b.density_bound().has_value());
    CHECK_THROWS_AS(disorder_parameter(b), HypothesisError);
    CHECK_THROWS(Distribution::uniform(1, 0));
}

TEST_CASE("sampling is deterministic and within support") {
    const Cube c = Cube::centered(2, 3);
    const auto d = Distribution::uniform(-1, 2);
    const Potential a = sample_potential(c, d, 17, 4), b = sample_potential(c, d, 17, 4);
    CHECK(a.values == b.values);
    CHECK(a.values.minCoeff() >= -1.0);
    CHECK(a.values.maxCoeff() <= 2.0);
    CHECK(sample_potential(c, d, 17, 5).values != a.values);
    REQUIRE(a.seed.has_value());
    CHECK(a.seed->realization == 4);
}

TEST_CASE("site-keyed values agree on overlapping cubes") {
    const auto d = Distribution::uniform(0, 1);
    const Potential a = sample_potential(Cube(Site{0}, 2), d, 3, 8);
    const Potential b = sample_potential(Cube(Site{1}, 2), d, 3, 8);
    for (Coord x = -1; x <= 2; ++x) CHECK(a.at(Site{x}) == b.at(Site{x}));
}

TEST_CASE("empirical moments") {
    const Cube c = Cube::centered(1, 49999);  // 99999 sites
    const Potential v = sample_potential(c, Distribution::uniform(0, 1), 1, 0);
    CHECK(std::abs(v.values.mean() - 0.5) < 0.005);
    const Potential t = truncate_potential(v, 0.5);
    CHECK(std::abs(t.values.mean() - 0.375) < 0.01);
    REQUIRE(t.cap.has_value());
    CHECK(*t.cap == 0.5);
}

TEST_CASE("truncation") {
    const Cube c = Cube::centered(1, 0);
    const Potential two = make_potential(Cube(Site{0}, 0), Eigen::VectorXd::Constant(1, 0.9));
    CHECK(truncate_potential(two, 0.5).values[0] == 0.5);
    Eigen::VectorXd v(3);
    v << 0.1, 0.9, 0.3;
    const Potential p = make_potential(Cube::centered(1, 1), v);
    const Eigen::VectorXd want = (Eigen::VectorXd(3) << 0.1, 0.5, 0.3).finished();
    CHECK(truncate_potential(p, 0.5).values == want);
    CHECK(truncate_potential(p, 10.0).values == v);
    CHECK_THROWS(truncate_potential(p, -1.0));
    (void)c;
}

TEST_CASE("distinct sites are uncorrelated") {
    const Cube c = Cube::centered(1, 1);
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    const int n = 10000;
    for (int r = 0; r < n; ++r) {
        const Potential v = sample_potential(c, Distribution::uniform(0, 1), 99, static_cast<std::uint64_t>(r));
        const double x = v.values[0], y = v.values[1];
        sx += x; sy += y; sxx += x * x; syy += y * y; sxy += x * y;
    }
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double corr = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
    CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("eigenvalues rise with the disorder amplitude") {
    const Cube c = Cube::centered(1, 4);
    Eigen::VectorXd prev;
    for (double lambda : {1.0, 2.0, 5.0, 10.0}) {
        const Potential v = sample_potential(c, Distribution::scaled_uniform(lambda), 4, 0);
        const auto e = testutil::sorted_eigs(build_h(c, BoundaryKind::Simple, v).dense());
        if (prev.size()) CHECK(((e - prev).array() >= -1e-12).all());
        prev = e;
    }
}

TEST_CASE("potential transforms") {
    Eigen::VectorXd v(3);
    v << 1, 2, 3;
    const Potential p = make_potential(Cube(Site{5}, 1), v);
    const Potential s = shifted_potential(p, Cube::centered(1, 1), Site{5});
    CHECK(s.values == v);
    CHECK_THROWS_AS(p.at(Site{0}), DomainError);
    auto sub = std::make_shared<const SiteSet>(Cube(Site{5}, 0));
    CHECK(restrict_potential(p, sub).values[0] == 2.0);
}

}  // TEST_SUITE
