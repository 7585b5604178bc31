// Copyright 2026 The covertlat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// Exact integer models of the square, honeycomb, heavy-hex and heavy-square
/// lattices, with boundary enumeration and the extremal shape constructors.
///
/// Coordinates
/// -----------
/// Square sites are (i, j) with s = 0; neighbors differ by one unit in i or j.
///
/// Honeycomb sites use a two-site basis (i, j, s). Sublattice A has s = 0 and
/// sublattice B has s = 1. Adjacency:
///
///     A(i, j) -- B(i, j), B(i - 1, j), B(i, j - 1)
///     B(i, j) -- A(i, j), A(i + 1, j), A(i, j + 1)
///
/// The hexagonal face F(i, j) is the six-cycle
///
///     B(i, j), A(i + 1, j), B(i + 1, j), A(i + 1, j + 1), B(i, j + 1), A(i, j + 1)
///
/// and faces form a triangular lattice whose six neighbors of F(i, j) are
/// (i +- 1, j), (i, j +- 1), (i + 1, j - 1) and (i - 1, j + 1).
///
/// The heavy lattices are the once-subdivided square and honeycomb lattices.
/// Their vertices are either Base(site) or Sub(u, w) for an adjacent pair of
/// base sites, stored with u < w.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covertlat/errors.hpp"

namespace covertlat {

enum class LatticeKind : std::uint8_t { Square, Hex, HeavyHex, HeavySquare };

inline constexpr std::array<LatticeKind, 4> kAllLatticeKinds = {
    LatticeKind::Square, LatticeKind::Hex, LatticeKind::HeavyHex, LatticeKind::HeavySquare};

inline std::string_view to_string(LatticeKind kind) {
    switch (kind) {
        case LatticeKind::Square:
            return "square";
        case LatticeKind::Hex:
            return "hex";
        case LatticeKind::HeavyHex:
            return "heavy-hex";
        case LatticeKind::HeavySquare:
            return "heavy-square";
    }
    return "?";
}

inline LatticeKind parse_lattice_kind(std::string_view text) {
    for (LatticeKind k : kAllLatticeKinds) {
        if (to_string(k) == text) {
            return k;
        }
    }
    throw UnsupportedKind("unknown lattice kind '" + std::string(text) + "'");
}

constexpr bool is_heavy(LatticeKind kind) {
    return kind == LatticeKind::HeavyHex || kind == LatticeKind::HeavySquare;
}

/// The lattice that a heavy lattice subdivides (identity for Square/Hex).
constexpr LatticeKind base_kind(LatticeKind kind) {
    switch (kind) {
        case LatticeKind::HeavyHex:
            return LatticeKind::Hex;
        case LatticeKind::HeavySquare:
            return LatticeKind::Square;
        default:
            return kind;
    }
}

constexpr bool is_hex_family(LatticeKind kind) {
    return base_kind(kind) == LatticeKind::Hex;
}

struct Site {
    int i = 0;
    int j = 0;
    int s = 0;

    auto operator<=>(const Site &) const = default;
    bool operator==(const Site &) const = default;
};

/// Neighbors of a site on a base (Square or Hex) lattice.
struct SiteNeighbors {
    std::array<Site, 4> sites{};
    std::size_t count = 0;

    const Site *begin() const {
        return sites.data();
    }
    const Site *end() const {
        return sites.data() + count;
    }
    bool contains(const Site &x) const {
        return std::find(begin(), end(), x) != end();
    }
};

inline bool valid_site(const Site &site, LatticeKind base) {
    if (base == LatticeKind::Square) {
        return site.s == 0;
    }
    return site.s == 0 || site.s == 1;
}

inline SiteNeighbors site_neighbors(const Site &v, LatticeKind base) {
    SiteNeighbors out;
    if (base == LatticeKind::Square) {
        out.sites = {Site{v.i + 1, v.j, 0}, Site{v.i - 1, v.j, 0}, Site{v.i, v.j + 1, 0}, Site{v.i, v.j - 1, 0}};
        out.count = 4;
    } else if (v.s == 0) {
        out.sites[0] = Site{v.i, v.j, 1};
        out.sites[1] = Site{v.i - 1, v.j, 1};
        out.sites[2] = Site{v.i, v.j - 1, 1};
        out.count = 3;
    } else {
        out.sites[0] = Site{v.i, v.j, 0};
        out.sites[1] = Site{v.i + 1, v.j, 0};
        out.sites[2] = Site{v.i, v.j + 1, 0};
        out.count = 3;
    }
    return out;
}

inline bool sites_adjacent(const Site &u, const Site &w, LatticeKind base) {
    return valid_site(u, base) && valid_site(w, base) && site_neighbors(u, base).contains(w);
}

/// A vertex of one of the four lattices. Comparison orders by kind, then
/// base vertices before subdivision vertices, then coordinates.
struct LatticeVertex {
    LatticeKind kind = LatticeKind::Square;
    bool sub = false;
    Site a{};
    Site b{};  // second endpoint of a subdivision vertex, zero otherwise

    auto operator<=>(const LatticeVertex &) const = default;
    bool operator==(const LatticeVertex &) const = default;

    static LatticeVertex square(int i, int j) {
        return LatticeVertex{LatticeKind::Square, false, Site{i, j, 0}, Site{}};
    }
    static LatticeVertex hex(int i, int j, int s) {
        return checked(LatticeVertex{LatticeKind::Hex, false, Site{i, j, s}, Site{}});
    }
    /// Base vertex of any lattice kind.
    static LatticeVertex base(LatticeKind kind, Site site) {
        return checked(LatticeVertex{kind, false, site, Site{}});
    }
    /// Subdivision vertex on the base edge {u, w}; order-independent.
    static LatticeVertex subdivision(LatticeKind kind, Site u, Site w) {
        if (w < u) {
            std::swap(u, w);
        }
        return checked(LatticeVertex{kind, true, u, w});
    }

    /// Throws InvalidVertex unless this is a well-formed vertex of `kind`.
    void validate() const {
        LatticeKind bk = base_kind(kind);
        if (sub) {
            if (!is_heavy(kind)) {
                throw InvalidVertex("subdivision vertex on a lattice that is not subdivided");
            }
            if (!(a < b) || !sites_adjacent(a, b, bk)) {
                throw InvalidVertex("subdivision vertex endpoints are not an ordered adjacent pair");
            }
        } else {
            if (!valid_site(a, bk) || b != Site{}) {
                throw InvalidVertex("malformed base vertex");
            }
        }
    }

   private:
    static LatticeVertex checked(LatticeVertex v) {
        v.validate();
        return v;
    }
};

using VertexSet = std::set<LatticeVertex>;
using LatticeEdge = std::pair<LatticeVertex, LatticeVertex>;  // first < second
using EdgeSet = std::set<LatticeEdge>;

inline LatticeEdge make_edge(const LatticeVertex &u, const LatticeVertex &w) {
    return u < w ? LatticeEdge{u, w} : LatticeEdge{w, u};
}

/// Adjacent vertices of v in its own lattice.
inline std::vector<LatticeVertex> neighbor_list(const LatticeVertex &v) {
    v.validate();
    std::vector<LatticeVertex> out;
    LatticeKind bk = base_kind(v.kind);
    if (!is_heavy(v.kind)) {
        for (const Site &w : site_neighbors(v.a, bk)) {
            out.push_back(LatticeVertex{v.kind, false, w, Site{}});
        }
    } else if (v.sub) {
        out.push_back(LatticeVertex{v.kind, false, v.a, Site{}});
        out.push_back(LatticeVertex{v.kind, false, v.b, Site{}});
    } else {
        for (const Site &w : site_neighbors(v.a, bk)) {
            out.push_back(LatticeVertex::subdivision(v.kind, v.a, w));
        }
    }
    return out;
}

inline VertexSet neighbors(const LatticeVertex &v) {
    auto list = neighbor_list(v);
    return VertexSet(list.begin(), list.end());
}

/// Degree every vertex of this form must have.
inline std::size_t expected_degree(const LatticeVertex &v) {
    if (v.sub) {
        return 2;
    }
    return base_kind(v.kind) == LatticeKind::Square ? 4 : 3;
}

inline bool adjacent(const LatticeVertex &u, const LatticeVertex &w) {
    if (u.kind != w.kind) {
        return false;
    }
    auto nb = neighbor_list(u);
    return std::find(nb.begin(), nb.end(), w) != nb.end();
}

namespace detail {

inline void require_single_kind(const VertexSet &set) {
    if (set.empty()) {
        return;
    }
    LatticeKind k = set.begin()->kind;
    for (const auto &v : set) {
        if (v.kind != k) {
            throw KindMismatch("vertex set mixes lattice kinds");
        }
        v.validate();
    }
}

}  // namespace detail

/// N(S): vertices outside S with at least one neighbor inside S.
inline VertexSet vertex_boundary(const VertexSet &set) {
    detail::require_single_kind(set);
    VertexSet out;
    for (const auto &v : set) {
        for (const auto &w : neighbor_list(v)) {
            if (!set.contains(w)) {
                out.insert(w);
            }
        }
    }
    return out;
}

/// E(S): lattice edges with exactly one endpoint in S.
inline EdgeSet edge_boundary(const VertexSet &set) {
    detail::require_single_kind(set);
    EdgeSet out;
    for (const auto &v : set) {
        for (const auto &w : neighbor_list(v)) {
            if (!set.contains(w)) {
                out.insert(make_edge(v, w));
            }
        }
    }
    return out;
}

/// Base-lattice sites of the base vertices in a (heavy) vertex set.
inline std::set<Site> base_projection(const VertexSet &set) {
    std::set<Site> out;
    for (const auto &v : set) {
        if (!v.sub) {
            out.insert(v.a);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shapes.

/// Square-lattice graph ball {(i, j) : |i| + |j| <= r}.
inline VertexSet diamond(int r, int ci = 0, int cj = 0) {
    if (r < 0) {
        throw PreconditionError("diamond radius must be nonnegative");
    }
    VertexSet out;
    for (int di = -r; di <= r; ++di) {
        int rest = r - std::abs(di);
        for (int dj = -rest; dj <= rest; ++dj) {
            out.insert(LatticeVertex::square(ci + di, cj + dj));
        }
    }
    return out;
}

/// Adds every subdivision vertex whose endpoints are both base sites in the set.
inline void add_internal_subdivisions(VertexSet &set, LatticeKind kind) {
    LatticeKind bk = base_kind(kind);
    auto sites = base_projection(set);
    for (const Site &u : sites) {
        for (const Site &w : site_neighbors(u, bk)) {
            if (sites.contains(w)) {
                set.insert(LatticeVertex::subdivision(kind, u, w));
            }
        }
    }
}

/// Adds every subdivision vertex with exactly one endpoint among the base sites.
inline void add_outgoing_subdivisions(VertexSet &set, LatticeKind kind) {
    LatticeKind bk = base_kind(kind);
    auto sites = base_projection(set);
    for (const Site &u : sites) {
        for (const Site &w : site_neighbors(u, bk)) {
            if (!sites.contains(w)) {
                set.insert(LatticeVertex::subdivision(kind, u, w));
            }
        }
    }
}

/// w x h block of square sites with lower-left corner (i0, j0). On the heavy
/// square lattice the block carries its internal subdivision vertices.
inline VertexSet square_block(int i0, int j0, int w, int h, LatticeKind kind = LatticeKind::Square) {
    if (base_kind(kind) != LatticeKind::Square) {
        throw UnsupportedKind("square_block needs a square or heavy-square lattice");
    }
    if (w < 0 || h < 0) {
        throw PreconditionError("block dimensions must be nonnegative");
    }
    VertexSet out;
    for (int i = i0; i < i0 + w; ++i) {
        for (int j = j0; j < j0 + h; ++j) {
            out.insert(LatticeVertex::base(kind, Site{i, j, 0}));
        }
    }
    if (is_heavy(kind)) {
        add_internal_subdivisions(out, kind);
    }
    return out;
}

/// The six honeycomb sites of face F(i, j), in cyclic order.
inline std::array<Site, 6> hex_face_sites(int i, int j) {
    return {Site{i, j, 1}, Site{i + 1, j, 0}, Site{i + 1, j, 1},
            Site{i + 1, j + 1, 0}, Site{i, j + 1, 1}, Site{i, j + 1, 0}};
}

/// Hop distance between faces in the triangular face lattice.
inline int face_distance(int di, int dj) {
    return std::max({std::abs(di), std::abs(dj), std::abs(di + dj)});
}

/// Sites of the hexagonal disk of radius r centered on face F(ci, cj):
/// the union of all faces within face distance r.
inline std::set<Site> hex_disk_sites(int r, int ci = 0, int cj = 0) {
    if (r < 0) {
        throw PreconditionError("hex disk radius must be nonnegative");
    }
    std::set<Site> out;
    for (int di = -r; di <= r; ++di) {
        for (int dj = -r; dj <= r; ++dj) {
            if (face_distance(di, dj) <= r) {
                for (const Site &s : hex_face_sites(ci + di, cj + dj)) {
                    out.insert(s);
                }
            }
        }
    }
    return out;
}

/// Hexagonal disk on the Hex or HeavyHex lattice. On HeavyHex the disk carries
/// all subdivision vertices between its base sites; `include_outgoing` also
/// assigns the subdivision vertex of every outgoing edge to the disk.
inline VertexSet hex_disk(int r, LatticeKind kind = LatticeKind::Hex, bool include_outgoing = false, int ci = 0,
                          int cj = 0) {
    if (!is_hex_family(kind)) {
        throw UnsupportedKind("hex_disk needs a hex or heavy-hex lattice");
    }
    VertexSet out;
    for (const Site &s : hex_disk_sites(r, ci, cj)) {
        out.insert(LatticeVertex::base(kind, s));
    }
    if (kind == LatticeKind::HeavyHex) {
        add_internal_subdivisions(out, kind);
        if (include_outgoing) {
            add_outgoing_subdivisions(out, kind);
        }
    }
    return out;
}

/// Every vertex of `kind` whose base sites lie in the box |i|, |j| <= half_width.
inline VertexSet box_vertices(LatticeKind kind, int half_width) {
    VertexSet out;
    LatticeKind bk = base_kind(kind);
    int smax = bk == LatticeKind::Square ? 0 : 1;
    for (int i = -half_width; i <= half_width; ++i) {
        for (int j = -half_width; j <= half_width; ++j) {
            for (int s = 0; s <= smax; ++s) {
                out.insert(LatticeVertex::base(kind, Site{i, j, s}));
            }
        }
    }
    if (is_heavy(kind)) {
        add_internal_subdivisions(out, kind);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Drawing coordinates.

/// Integer raster position (column, row) of a vertex, rows increasing upward.
///
/// Square sites map to (2i, j). Honeycomb sites map to (2i + j + s, 3j + s),
/// which is the planar embedding with bond length 1 scaled by (2/sqrt(3), 2).
/// On heavy lattices every base position is doubled and a subdivision vertex
/// sits at the sum of its endpoints' base positions (the doubled midpoint).
inline std::pair<int, int> raster_position(const LatticeVertex &v) {
    auto base_pos = [&](const Site &s) -> std::pair<int, int> {
        if (base_kind(v.kind) == LatticeKind::Square) {
            return {2 * s.i, s.j};
        }
        return {2 * s.i + s.j + s.s, 3 * s.j + s.s};
    };
    if (!is_heavy(v.kind)) {
        return base_pos(v.a);
    }
    auto pa = base_pos(v.a);
    if (!v.sub) {
        return {2 * pa.first, 2 * pa.second};
    }
    auto pb = base_pos(v.b);
    return {pa.first + pb.first, pa.second + pb.second};
}

/// Planar position with unit bond length on the base lattice.
inline std::pair<double, double> planar_position(const LatticeVertex &v) {
    auto site_xy = [&](const Site &s) -> std::pair<double, double> {
        if (base_kind(v.kind) == LatticeKind::Square) {
            return {double(s.i), double(s.j)};
        }
        const double h = std::sqrt(3.0) / 2.0;
        return {h * (2 * s.i + s.j + s.s), 1.5 * s.j + 0.5 * s.s};
    };
    auto pa = site_xy(v.a);
    if (!v.sub) {
        return pa;
    }
    auto pb = site_xy(v.b);
    return {(pa.first + pb.first) / 2, (pa.second + pb.second) / 2};
}

inline std::string to_string(const Site &s, LatticeKind base) {
    if (base == LatticeKind::Square) {
        return "(" + std::to_string(s.i) + "," + std::to_string(s.j) + ")";
    }
    return "(" + std::to_string(s.i) + "," + std::to_string(s.j) + "," + std::to_string(s.s) + ")";
}

inline std::string to_string(const LatticeVertex &v) {
    LatticeKind bk = base_kind(v.kind);
    if (v.sub) {
        return "sub" + to_string(v.a, bk) + to_string(v.b, bk);
    }
    return to_string(v.a, bk);
}

}  // namespace covertlat
