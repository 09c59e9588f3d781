#include <doctest.h>

#include <set>

#include "anderson/lattice.hpp"
#include "anderson/errors.hpp"

using namespace anderson;

TEST_SUITE("lattice") {

TEST_CASE("cube enumeration") {
    const auto s = cube_sites(Cube::centered(1, 2));
    REQUIRE(s.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(s[i] == Site{i - 2});
    CHECK(cube_sites(Cube::centered(2, 1)).size() == 9);
    CHECK(cube_sites(Cube::centered(3, 2)).size() == 125);

    const Cube c(Site{1, -2}, 2);
    const auto sites = cube_sites(c);
    CHECK(std::is_sorted(sites.begin(), sites.end()));
    for (std::size_t i = 0; i < sites.size(); ++i) {
        CHECK(c.index_of(sites[i]) == i);
        CHECK(c.site_at(i) == sites[i]);
    }
}

TEST_CASE("norms") {
    const Site a{3, -4, 1};
    CHECK(norm_inf(a) == 4);
    CHECK(norm_1(a) == 8);
    CHECK(dist_inf(a, Site{0, 0, 0}) == 4);
}

TEST_CASE("boundary of a cube") {
    const auto b = boundary(Cube::centered(1, 1));
    CHECK(b.edges.size() == 2);
    CHECK(b.inner_sites == std::vector<Site>{Site{-1}, Site{1}});
    CHECK(b.outer_sites == std::vector<Site>{Site{-2}, Site{2}});

    for (std::size_t d = 1; d <= 3; ++d) {
        for (Coord L = 1; L <= 3; ++L) {
            const Cube c = Cube::centered(d, L);
            const auto bs = boundary(c);
            // Exact count (2L+1)^d - (2L-1)^d; it equals 2d (2L)^(d-1) for d <= 2
            // and exceeds it by 2 in d = 3.
            std::size_t outer = 1, inner = 1, closed_form = 2 * d;
            for (std::size_t i = 0; i < d; ++i) {
                outer *= static_cast<std::size_t>(2 * L + 1);
                inner *= static_cast<std::size_t>(2 * L - 1);
            }
            for (std::size_t i = 1; i < d; ++i) closed_form *= static_cast<std::size_t>(2 * L);
            CHECK(inner_boundary_sites(c).size() == outer - inner);
            if (d <= 2) CHECK(inner_boundary_sites(c).size() == closed_form);
            else CHECK(inner_boundary_sites(c).size() == closed_form + 2);
            // Missing neighbour counts of inner boundary sites add up to the edge count.
            const SiteSet set(c);
            std::size_t missing = 0;
            for (const auto& s : bs.inner_sites) missing += 2 * d - static_cast<std::size_t>(set.neighbours_inside(s));
            CHECK(missing == bs.edges.size());
            for (const auto& e : bs.edges) {
                CHECK(dist_1(e.inner, e.outer) == 1);
                CHECK(c.contains(e.inner));
                CHECK_FALSE(c.contains(e.outer));
            }
        }
    }
}

TEST_CASE("relative boundary keeps edges inside the ambient cube") {
    const auto b = boundary(Cube::centered(1, 1), Cube::centered(1, 2));
    REQUIRE(b.edges.size() == 2);
    std::set<std::pair<Coord, Coord>> got;
    for (const auto& e : b.edges) got.insert({e.inner[0], e.outer[0]});
    CHECK(got == std::set<std::pair<Coord, Coord>>{{-1, -2}, {1, 2}});
    // Clipping: an inner cube touching the ambient boundary loses the outside edges.
    const auto clipped = boundary(Cube(Site{1}, 1), Cube::centered(1, 2));
    CHECK(clipped.edges.size() == 1);
    CHECK_THROWS_AS(boundary(SiteSet(std::vector<Site>{})), DomainError);
}

TEST_CASE("subcubes agree with a brute-force scan") {
    CHECK(subcubes(Cube::centered(1, 5), 1).size() == 7);
    CHECK(subcubes(Cube::centered(1, 2), 1).size() == 1);
    CHECK(subcubes(Cube::centered(2, 5), 1).size() == 49);
    CHECK_THROWS_AS(subcubes(Cube::centered(1, 3), 3), DomainError);
    for (std::size_t d = 1; d <= 3; ++d) {
        for (Coord L = 1; L <= (d == 3 ? 4 : 6); ++L) {
            const Cube big = Cube::centered(d, L);
            for (Coord l = 0; l < L; ++l) {
                std::vector<Cube> brute;
                const auto inner = inner_boundary_sites(big);
                for (const auto& c : cube_sites(Cube::centered(d, L))) {
                    const Cube sub(c, l);
                    bool ok = true;
                    for (const auto& s : cube_sites(sub)) {
                        if (!big.contains(s) || std::find(inner.begin(), inner.end(), s) != inner.end()) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) brute.push_back(sub);
                }
                CHECK(subcubes(big, l) == brute);
            }
        }
    }
}

TEST_CASE("annuli") {
    const std::vector<Coord> scales{2, 4, 9};
    const Annulus a = make_annulus(scales, 0, false), ap = make_annulus(scales, 0, true);
    CHECK(a.inner_radius == 6);
    CHECK(a.outer_radius == 24);
    CHECK(ap.inner_radius == 4);
    CHECK(ap.outer_radius == 32);

    const auto c = annulus_distance_check(Site{7, 0}, 0, scales);
    CHECK(c.distance == 3);
    CHECK(c.holds);

    // Just inside: |n| = 3 L_k + 1, distance L_k + 1.
    const auto in = annulus_distance_check(Site{7}, 0, scales);
    CHECK(in.distance == 3);
    // Outer edge: |n| = 6 L_{k+1}, distance 2 L_{k+1} = |n| / 3.
    const auto out = annulus_distance_check(Site{24}, 0, scales);
    CHECK(out.distance == 8);
    CHECK(out.holds);
    CHECK_THROWS_AS(annulus_distance_check(Site{3}, 0, scales), DomainError);

    // Every site of the window outside Lambda_{3 L_0} lies in some A_k.
    const std::vector<Coord> sc{1, 2, 3, 6, 15};
    for (const auto& s : cube_sites(Cube::centered(2, 30))) {
        bool covered = false;
        for (std::size_t k = 0; k + 1 < sc.size(); ++k) covered = covered || make_annulus(sc, k, false).contains(s);
        if (norm_inf(s) > 3 * sc[0] && norm_inf(s) <= 6 * sc.back()) CHECK(covered);
        if (norm_inf(s) <= 3 * sc[0]) CHECK_FALSE(covered);
    }
    // The distance bound holds for every site of every annulus.
    for (std::size_t k = 0; k + 1 < sc.size(); ++k)
        for (Coord r = 3 * sc[k] + 1; r <= 6 * sc[k + 1]; ++r) CHECK(annulus_distance_check(Site{r}, k, sc).holds);
}

TEST_CASE("merging bad regions") {
    const Coord l = 2;
    auto far = merge_bad_regions({Site{0, 0}, Site{100, 0}, Site{0, 100}}, l);
    REQUIRE(far.size() == 3);
    for (const auto& c : far) CHECK(c.radius == 2 * l);

    // 2l-cubes at sup distance 4l+1 touch.
    CHECK(cubes_touch(Cube(Site{0, 0}, 4), Cube(Site{9, 0}, 4)));
    CHECK_FALSE(cubes_touch(Cube(Site{0, 0}, 4), Cube(Site{10, 0}, 4)));
    auto pair = merge_bad_regions({Site{0, 0}, Site{9, 0}, Site{100, 100}}, l);
    REQUIRE(pair.size() == 2);
    CHECK(pair[0] == Cube(Site{0, 0}, 13));
    CHECK(pair[1] == Cube(Site{100, 100}, 4));

    auto chain = merge_bad_regions({Site{0, 0}, Site{9, 0}, Site{18, 0}}, l);
    REQUIRE(chain.size() == 1);
    CHECK(chain[0] == Cube(Site{0, 0}, 22));

    CHECK_THROWS_AS(merge_bad_regions({Site{0}, Site{10}, Site{20}, Site{30}}, 1), DomainError);

    // Random configurations: output pairwise non-touching and covering.
    std::uint64_t state = 7;
    auto next = [&] { state = state * 6364136223846793005ULL + 1442695040888963407ULL; return static_cast<Coord>((state >> 33) % 41) - 20; };
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Site> centers;
        while (centers.size() < 3) {
            Site s{next(), next()};
            if (std::find(centers.begin(), centers.end(), s) == centers.end()) centers.push_back(s);
        }
        const auto regions = merge_bad_regions(centers, 1);
        for (std::size_t i = 0; i < regions.size(); ++i)
            for (std::size_t j = i + 1; j < regions.size(); ++j) CHECK_FALSE(cubes_touch(regions[i], regions[j]));
        for (const auto& c : centers)
            for (const auto& s : cube_sites(Cube(c, 2))) {
                bool in = false;
                for (const auto& r : regions) in = in || r.contains(s);
                CHECK(in);
            }
    }
}

}  // TEST_SUITE
