#include "anderson/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "anderson/errors.hpp"

namespace anderson {

Site Site::operator+(const Site& o) const {
    if (o.dim() != dim()) throw DomainError("site dimension mismatch");
    Site r(*this);
    for (std::size_t i = 0; i < x.size(); ++i) r.x[i] += o.x[i];
    return r;
}

Site Site::operator-(const Site& o) const {
    if (o.dim() != dim()) throw DomainError("site dimension mismatch");
    Site r(*this);
    for (std::size_t i = 0; i < x.size(); ++i) r.x[i] -= o.x[i];
    return r;
}

std::string Site::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << ')';
    return os.str();
}

std::size_t SiteHash::operator()(const Site& s) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Coord c : s.x) {
        h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

Coord norm_inf(const Site& n) {
    Coord m = 0;
    for (Coord c : n.x) m = std::max(m, std::abs(c));
    return m;
}

Coord norm_1(const Site& n) {
    Coord s = 0;
    for (Coord c : n.x) s += std::abs(c);
    return s;
}

Coord dist_inf(const Site& a, const Site& b) { return norm_inf(a - b); }
Coord dist_1(const Site& a, const Site& b) { return norm_1(a - b); }

Cube::Cube(Site c, Coord r) : center(std::move(c)), radius(r) {
    if (r < 0) throw DomainError("cube radius must be nonnegative");
    if (center.dim() == 0) throw DomainError("cube dimension must be at least 1");
}

std::size_t Cube::size() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < dim(); ++i) n *= static_cast<std::size_t>(side());
    return n;
}

bool Cube::contains(const Site& s) const {
    if (s.dim() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        if (std::abs(s[i] - center[i]) > radius) return false;
    return true;
}

std::size_t Cube::index_of(const Site& s) const {
    if (!contains(s)) throw DomainError("site " + s.str() + " not in cube " + str());
    std::size_t idx = 0;
    const auto w = static_cast<std::size_t>(side());
    for (std::size_t i = 0; i < dim(); ++i)
        idx = idx * w + static_cast<std::size_t>(s[i] - center[i] + radius);
    return idx;
}

Site Cube::site_at(std::size_t idx) const {
    if (idx >= size()) throw DomainError("cube index out of range");
    Site s(dim());
    const auto w = static_cast<std::size_t>(side());
    for (std::size_t i = dim(); i-- > 0;) {
        s[i] = center[i] - radius + static_cast<Coord>(idx % w);
        idx /= w;
    }
    return s;
}

std::string Cube::str() const {
    std::ostringstream os;
    os << "Lambda_" << radius << center.str();
    return os.str();
}

std::vector<Site> cube_sites(const Cube& cube) {
    std::vector<Site> out;
    out.reserve(cube.size());
    for (std::size_t i = 0; i < cube.size(); ++i) out.push_back(cube.site_at(i));
    return out;
}

SiteSet::SiteSet(const Cube& cube) : dim_(cube.dim()), sites_(cube_sites(cube)), cube_(cube) {}

SiteSet::SiteSet(std::vector<Site> sites) : sites_(std::move(sites)) {
    if (sites_.empty()) throw DomainError("site set must be nonempty");
    dim_ = sites_.front().dim();
    for (const auto& s : sites_)
        if (s.dim() != dim_) throw DomainError("mixed dimensions in site set");
    std::sort(sites_.begin(), sites_.end());
    sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
    index_.reserve(sites_.size());
    for (std::size_t i = 0; i < sites_.size(); ++i) index_.emplace(sites_[i], i);
}

SiteSet SiteSet::difference(const Cube& outer, const SiteSet& inner) {
    std::vector<Site> rest;
    for (std::size_t i = 0; i < outer.size(); ++i) {
        Site s = outer.site_at(i);
        if (!inner.contains(s)) rest.push_back(std::move(s));
    }
    if (rest.empty()) throw DomainError("set difference is empty");
    return SiteSet(std::move(rest));
}

std::optional<std::size_t> SiteSet::find(const Site& s) const {
    if (cube_) {
        if (!cube_->contains(s)) return std::nullopt;
        return cube_->index_of(s);
    }
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool SiteSet::contains(const Site& s) const { return find(s).has_value(); }

std::size_t SiteSet::index_of(const Site& s) const {
    auto i = find(s);
    if (!i) throw DomainError("site " + s.str() + " not in site set");
    return *i;
}

int SiteSet::neighbours_inside(const Site& s) const {
    int n = 0;
    for_each_neighbour(s, [&](const Site& t) { n += contains(t) ? 1 : 0; });
    return n;
}

void for_each_neighbour(const Site& s, const std::function<void(const Site&)>& f) {
    Site t(s);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        t[i] = s[i] - 1;
        f(t);
        t[i] = s[i] + 1;
        f(t);
        t[i] = s[i];
    }
}

BoundarySet boundary(const SiteSet& inner, const std::optional<Cube>& ambient) {
    if (inner.empty()) throw DomainError("boundary of an empty set");
    BoundarySet b;
    for (const auto& s : inner.sites()) {
        if (ambient && !ambient->contains(s))
            throw DomainError("inner set not contained in ambient cube");
        bool on_edge = false;
        for_each_neighbour(s, [&](const Site& t) {
            if (inner.contains(t)) return;
            if (ambient && !ambient->contains(t)) return;
            b.edges.push_back({s, t});
            b.outer_sites.push_back(t);
            on_edge = true;
        });
        if (on_edge) b.inner_sites.push_back(s);
    }
    std::sort(b.outer_sites.begin(), b.outer_sites.end());
    b.outer_sites.erase(std::unique(b.outer_sites.begin(), b.outer_sites.end()), b.outer_sites.end());
    return b;
}

BoundarySet boundary(const Cube& inner, const std::optional<Cube>& ambient) {
    return boundary(SiteSet(inner), ambient);
}

std::vector<Site> inner_boundary_sites(const Cube& cube) {
    std::vector<Site> out;
    for (std::size_t i = 0; i < cube.size(); ++i) {
        Site s = cube.site_at(i);
        if (dist_inf(s, cube.center) == cube.radius) out.push_back(std::move(s));
    }
    return out;
}

bool well_inside(const Cube& a, const Cube& b) {
    if (a.dim() != b.dim()) return false;
    // Every site of a must satisfy |s - b.center|_inf <= b.radius - 1.
    return dist_inf(a.center, b.center) + a.radius <= b.radius - 1;
}

std::vector<Cube> subcubes(const Cube& big, Coord l) {
    if (l < 0 || l >= big.radius) throw DomainError("subcubes require 0 <= l < L");
    const Coord reach = big.radius - l - 1;
    std::vector<Cube> out;
    if (reach < 0) return out;
    Cube centres(big.center, reach);
    out.reserve(centres.size());
    for (std::size_t i = 0; i < centres.size(); ++i) out.emplace_back(centres.site_at(i), l);
    return out;
}

bool cubes_touch(const Cube& a, const Cube& b) {
    return dist_inf(a.center, b.center) <= a.radius + b.radius + 1;
}

bool Annulus::contains(const Site& n) const {
    const Coord r = norm_inf(n);
    return r > inner_radius && r <= outer_radius;
}

Annulus make_annulus(const std::vector<Coord>& scales, std::size_t k, bool enlarged) {
    if (k + 1 >= scales.size()) throw DomainError("annulus index beyond schedule");
    Annulus a;
    a.k = k;
    a.enlarged = enlarged;
    a.inner_radius = (enlarged ? 2 : 3) * scales[k];
    a.outer_radius = (enlarged ? 8 : 6) * scales[k + 1];
    return a;
}

AnnulusCheck annulus_distance_check(const Site& n, std::size_t k, const std::vector<Coord>& scales) {
    const Annulus a = make_annulus(scales, k, false);
    if (!a.contains(n)) throw DomainError("site " + n.str() + " is not in annulus A_" + std::to_string(k));
    const Annulus plus = make_annulus(scales, k, true);
    const Coord r = norm_inf(n);
    AnnulusCheck c;
    c.distance = std::min(plus.outer_radius - r, r - plus.inner_radius);
    c.required = (r + 2) / 3 - 1;
    c.holds = c.distance >= c.required;
    c.near_boundary = c.holds && 3 * c.distance < r;
    return c;
}

std::vector<Cube> merge_bad_regions(const std::vector<Site>& centers, Coord l) {
    if (centers.size() > 3) throw DomainError("at most three bad centres can be merged");
    if (l < 0) throw DomainError("merge radius must be nonnegative");
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (centers[i] == centers[j]) throw DomainError("bad centres must be distinct");

    std::vector<Cube> regions;
    for (const auto& c : centers) regions.emplace_back(c, 2 * l);

    bool merged = true;
    while (merged && regions.size() > 1) {
        merged = false;
        for (std::size_t i = 0; i < regions.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < regions.size() && !merged; ++j) {
                if (!cubes_touch(regions[i], regions[j])) continue;
                // The larger region keeps its centre; two fresh 2l-cubes grow to
                // 6l+1, a grown region meeting a third grows to 10l+2.
                const bool grown = regions[i].radius > 2 * l || regions[j].radius > 2 * l;
                const std::size_t keep = regions[j].radius > regions[i].radius ? j : i;
                Cube m(regions[keep].center, grown ? 10 * l + 2 : 6 * l + 1);
                regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(j));
                regions[i] = m;
                merged = true;
            }
        }
    }
    return regions;
}

}  // namespace anderson
