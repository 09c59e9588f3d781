#pragma once
// Integer lattice geometry on Z^d: sites, cubes, boundaries, sub-cube
// collections, annuli and the merging of bad regions. No floating point.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace anderson {

using Coord = std::int64_t;

struct Site {
    std::vector<Coord> x;

    Site() = default;
    explicit Site(std::size_t dim) : x(dim, 0) {}
    Site(std::initializer_list<Coord> c) : x(c) {}
    explicit Site(std::vector<Coord> c) : x(std::move(c)) {}

    std::size_t dim() const { return x.size(); }
    Coord& operator[](std::size_t i) { return x[i]; }
    Coord operator[](std::size_t i) const { return x[i]; }

    static Site origin(std::size_t dim) { return Site(dim); }

    friend bool operator==(const Site&, const Site&) = default;
    friend auto operator<=>(const Site& a, const Site& b) { return a.x <=> b.x; }
    Site operator+(const Site& o) const;
    Site operator-(const Site& o) const;
    std::string str() const;
};

struct SiteHash {
    std::size_t operator()(const Site& s) const noexcept;
};

Coord norm_inf(const Site& n);
Coord norm_1(const Site& n);
Coord dist_inf(const Site& a, const Site& b);
Coord dist_1(const Site& a, const Site& b);

// Lambda_L(n0) = { n : |n - n0|_inf <= L }.
struct Cube {
    Site center;
    Coord radius = 0;

    Cube() = default;
    Cube(Site c, Coord r);
    static Cube centered(std::size_t dim, Coord r) { return Cube(Site::origin(dim), r); }

    std::size_t dim() const { return center.dim(); }
    Coord side() const { return 2 * radius + 1; }
    std::size_t size() const;
    bool contains(const Site& s) const;
    // Lexicographic index, first coordinate most significant.
    std::size_t index_of(const Site& s) const;
    Site site_at(std::size_t idx) const;
    friend bool operator==(const Cube&, const Cube&) = default;
    std::string str() const;
};

std::vector<Site> cube_sites(const Cube& cube);

// Ordered set of sites with a bijective site <-> index map. Built from a cube
// it answers index queries arithmetically, otherwise through a hash map.
class SiteSet {
public:
    explicit SiteSet(const Cube& cube);
    explicit SiteSet(std::vector<Site> sites);  // sorted and deduplicated here

    static SiteSet difference(const Cube& outer, const SiteSet& inner);

    std::size_t size() const { return sites_.size(); }
    std::size_t dim() const { return dim_; }
    bool empty() const { return sites_.empty(); }
    const Site& operator[](std::size_t i) const { return sites_[i]; }
    const std::vector<Site>& sites() const { return sites_; }
    bool contains(const Site& s) const;
    std::optional<std::size_t> find(const Site& s) const;
    std::size_t index_of(const Site& s) const;  // throws if absent
    const std::optional<Cube>& cube() const { return cube_; }
    // Number of nearest neighbours of s that lie in the set.
    int neighbours_inside(const Site& s) const;

private:
    std::size_t dim_ = 0;
    std::vector<Site> sites_;
    std::optional<Cube> cube_;
    std::unordered_map<Site, std::size_t, SiteHash> index_;
};

// Calls f(neighbour) for the 2d nearest neighbours of s in fixed order
// (-e1, +e1, -e2, +e2, ...).
void for_each_neighbour(const Site& s, const std::function<void(const Site&)>& f);

struct BoundaryEdge {
    Site inner;
    Site outer;
    friend bool operator==(const BoundaryEdge&, const BoundaryEdge&) = default;
};

struct BoundarySet {
    std::vector<BoundaryEdge> edges;
    std::vector<Site> inner_sites;  // sorted
    std::vector<Site> outer_sites;  // sorted
};

// Edges with one end in `inner` and the other outside. With an ambient cube the
// edges are clipped to ambient x ambient (relative boundary).
BoundarySet boundary(const SiteSet& inner, const std::optional<Cube>& ambient = std::nullopt);
BoundarySet boundary(const Cube& inner, const std::optional<Cube>& ambient = std::nullopt);

// Inner boundary of a cube: sites with |n - c|_inf == L.
std::vector<Site> inner_boundary_sites(const Cube& cube);

// A is well inside B: A subset of B and disjoint from the inner boundary of B.
bool well_inside(const Cube& a, const Cube& b);

// Cubes Lambda_l(n) well inside `big`, centres in lexicographic order.
std::vector<Cube> subcubes(const Cube& big, Coord l);

// Two site sets touch iff some pair is at sup-distance <= 1 (overlap included).
bool cubes_touch(const Cube& a, const Cube& b);

struct Annulus {
    std::size_t k = 0;
    Coord inner_radius = 0;  // excluded cube radius
    Coord outer_radius = 0;  // enclosing cube radius
    bool enlarged = false;
    bool contains(const Site& n) const;
};

// A_k = Lambda_{6 L_{k+1}} \ Lambda_{3 L_k}, enlarged A_k+ = Lambda_{8 L_{k+1}} \ Lambda_{2 L_k}.
Annulus make_annulus(const std::vector<Coord>& scales, std::size_t k, bool enlarged);

struct AnnulusCheck {
    Coord distance = 0;       // distance from n to the boundary of the enlarged annulus
    Coord required = 0;       // ceil(|n|/3) - 1
    bool holds = false;       // distance >= required
    bool near_boundary = false;  // holds only thanks to the integer slack: 3*distance < |n|
};

AnnulusCheck annulus_distance_check(const Site& n, std::size_t k, const std::vector<Coord>& scales);

// Cover of the 2l-cubes around up to three bad centres by pairwise
// non-touching cubes of radius 2l, 6l+1 or 10l+2.
std::vector<Cube> merge_bad_regions(const std::vector<Site>& centers, Coord l);

}  // namespace anderson
