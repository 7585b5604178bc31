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

/// Devices, buffered placements and CZ edge-set scheduling.
///
/// A placement puts n computational qubits inside a compact region (a block
/// on square lattices, a hexagonal disk on honeycomb lattices), idles the rest
/// of the region, and idles the region's vertex boundary in the coupler graph
/// as a buffer. Nothing in the region is then coupled to any other qubit.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "covertlat/errors.hpp"
#include "covertlat/isoperimetry.hpp"
#include "covertlat/lattice.hpp"

namespace covertlat {

struct Qubit {
    int id = 0;
    LatticeVertex vertex;
};

using Coupler = std::pair<int, int>;  // first < second

inline Coupler make_coupler(int a, int b) {
    return a < b ? Coupler{a, b} : Coupler{b, a};
}

class DeviceTopology {
   public:
    DeviceTopology() = default;

    /// Validates ids, vertices, lattice consistency of every coupler, and the
    /// excluded list.
    DeviceTopology(std::string name, LatticeKind kind, std::vector<Qubit> qubits, const std::set<Coupler> &couplers,
                   std::set<int> excluded = {})
        : name_(std::move(name)), kind_(kind), qubits_(std::move(qubits)), excluded_(std::move(excluded)) {
        std::sort(qubits_.begin(), qubits_.end(), [](const Qubit &a, const Qubit &b) { return a.id < b.id; });
        for (const auto &q : qubits_) {
            if (q.vertex.kind != kind_) {
                throw SchemaError("qubit " + std::to_string(q.id) + " is not on a " + std::string(to_string(kind_)) +
                                  " lattice");
            }
            q.vertex.validate();
            if (!by_id_.emplace(q.id, q.vertex).second) {
                throw SchemaError("duplicate qubit id " + std::to_string(q.id));
            }
            if (!by_vertex_.emplace(q.vertex, q.id).second) {
                throw SchemaError("two qubits share vertex " + to_string(q.vertex));
            }
            adjacency_[q.id];
        }
        for (const auto &[a, b] : couplers) {
            if (a == b) {
                throw SchemaError("coupler joins qubit " + std::to_string(a) + " to itself");
            }
            if (!by_id_.contains(a) || !by_id_.contains(b)) {
                throw SchemaError("coupler references an unknown qubit");
            }
            if (!adjacent(by_id_.at(a), by_id_.at(b))) {
                throw GeometryError("coupler " + std::to_string(a) + "-" + std::to_string(b) +
                                    " joins non-adjacent lattice vertices");
            }
            couplers_.insert(make_coupler(a, b));
            adjacency_[a].insert(b);
            adjacency_[b].insert(a);
        }
        for (int e : excluded_) {
            if (!by_id_.contains(e)) {
                throw SchemaError("excluded qubit " + std::to_string(e) + " does not exist");
            }
        }
    }

    const std::string &name() const {
        return name_;
    }
    LatticeKind kind() const {
        return kind_;
    }
    const std::vector<Qubit> &qubits() const {
        return qubits_;
    }
    const std::set<Coupler> &couplers() const {
        return couplers_;
    }
    const std::set<int> &excluded() const {
        return excluded_;
    }
    std::size_t size() const {
        return qubits_.size();
    }
    bool has_qubit(int id) const {
        return by_id_.contains(id);
    }
    bool is_excluded(int id) const {
        return excluded_.contains(id);
    }
    const LatticeVertex &vertex(int id) const {
        return by_id_.at(id);
    }
    std::optional<int> qubit_at(const LatticeVertex &v) const {
        auto it = by_vertex_.find(v);
        if (it == by_vertex_.end()) {
            return std::nullopt;
        }
        return it->second;
    }
    /// Coupler-graph neighbors.
    const std::set<int> &neighbors(int id) const {
        return adjacency_.at(id);
    }
    std::set<int> active_qubits() const {
        std::set<int> out;
        for (const auto &q : qubits_) {
            if (!excluded_.contains(q.id)) {
                out.insert(q.id);
            }
        }
        return out;
    }

   private:
    std::string name_;
    LatticeKind kind_ = LatticeKind::Square;
    std::vector<Qubit> qubits_;
    std::set<Coupler> couplers_;
    std::set<int> excluded_;
    std::map<int, LatticeVertex> by_id_;
    std::map<LatticeVertex, int> by_vertex_;
    std::map<int, std::set<int>> adjacency_;
};

/// Device holding every vertex of `vertices` (ids in sorted vertex order) and a
/// coupler on every lattice edge between them.
inline DeviceTopology device_from_vertices(std::string name, const VertexSet &vertices, std::set<int> excluded = {}) {
    if (vertices.empty()) {
        throw PreconditionError("device needs at least one qubit");
    }
    detail::require_single_kind(vertices);
    std::vector<Qubit> qubits;
    std::map<LatticeVertex, int> ids;
    for (const auto &v : vertices) {
        int id = int(qubits.size());
        qubits.push_back(Qubit{id, v});
        ids.emplace(v, id);
    }
    std::set<Coupler> couplers;
    for (const auto &v : vertices) {
        for (const auto &w : neighbor_list(v)) {
            auto it = ids.find(w);
            if (it != ids.end()) {
                couplers.insert(make_coupler(ids.at(v), it->second));
            }
        }
    }
    return DeviceTopology(std::move(name), vertices.begin()->kind, std::move(qubits), couplers, std::move(excluded));
}

inline DeviceTopology synthetic_square_device(int width, int height) {
    return device_from_vertices("square-" + std::to_string(width) + "x" + std::to_string(height),
                                square_block(0, 0, width, height));
}

/// Hexagonal-disk-shaped honeycomb or heavy-hex device.
inline DeviceTopology synthetic_hex_device(LatticeKind kind, int radius) {
    return device_from_vertices(std::string(to_string(kind)) + "-disk-" + std::to_string(radius),
                                hex_disk(radius, kind, true));
}

/// Coupler-graph N(S) over non-excluded qubits.
inline std::set<int> device_vertex_boundary(const DeviceTopology &device, const std::set<int> &set) {
    std::set<int> out;
    for (int q : set) {
        for (int w : device.neighbors(q)) {
            if (!set.contains(w) && !device.is_excluded(w)) {
                out.insert(w);
            }
        }
    }
    return out;
}

/// BFS hop distance from the nearest source over the coupler graph; qubits
/// not reachable are absent.
inline std::map<int, int> hop_distances(const DeviceTopology &device, const std::set<int> &sources) {
    std::map<int, int> dist;
    std::queue<int> todo;
    for (int s : sources) {
        dist[s] = 0;
        todo.push(s);
    }
    while (!todo.empty()) {
        int q = todo.front();
        todo.pop();
        for (int w : device.neighbors(q)) {
            if (!dist.contains(w)) {
                dist[w] = dist[q] + 1;
                todo.push(w);
            }
        }
    }
    return dist;
}

struct Placement {
    std::set<int> computational;
    std::set<int> interior_idle;
    std::set<int> buffer;
    std::set<int> willie;
    std::size_t overhead = 0;
    std::string shape;
    std::optional<LatticeVertex> anchor;

    std::set<int> region() const {
        std::set<int> out = computational;
        out.insert(interior_idle.begin(), interior_idle.end());
        return out;
    }
    /// Qubits that run Ramsey probes: the buffer and everything outside it.
    std::set<int> spectators() const {
        std::set<int> out = buffer;
        out.insert(willie.begin(), willie.end());
        return out;
    }
};

/// Derives buffer, willie and overhead from a computational set and the idle
/// qubits inside its region.
inline Placement make_placement(const DeviceTopology &device, std::set<int> computational,
                                std::set<int> interior_idle = {}, std::string shape = "custom",
                                std::optional<LatticeVertex> anchor = std::nullopt) {
    for (int q : computational) {
        if (!device.has_qubit(q) || device.is_excluded(q)) {
            throw PreconditionError("computational qubit " + std::to_string(q) + " is missing or excluded");
        }
        if (interior_idle.contains(q)) {
            throw PreconditionError("qubit " + std::to_string(q) + " is both computational and idle");
        }
    }
    for (int q : interior_idle) {
        if (!device.has_qubit(q) || device.is_excluded(q)) {
            throw PreconditionError("idle qubit " + std::to_string(q) + " is missing or excluded");
        }
    }
    Placement p;
    p.computational = std::move(computational);
    p.interior_idle = std::move(interior_idle);
    p.buffer = device_vertex_boundary(device, p.region());
    for (int q : device.active_qubits()) {
        if (!p.computational.contains(q) && !p.interior_idle.contains(q) && !p.buffer.contains(q)) {
            p.willie.insert(q);
        }
    }
    p.overhead = p.interior_idle.size() + p.buffer.size();
    p.shape = std::move(shape);
    p.anchor = anchor;
    return p;
}

/// Couplers joining the idle region to willie. Empty for every valid placement.
inline std::vector<Coupler> separation_violations(const DeviceTopology &device, const Placement &p) {
    std::vector<Coupler> out;
    auto region = p.region();
    for (const auto &[a, b] : device.couplers()) {
        if ((region.contains(a) && p.willie.contains(b)) || (region.contains(b) && p.willie.contains(a))) {
            out.push_back(Coupler{a, b});
        }
    }
    return out;
}

/// 2 sqrt(n) + 4 ceil(sqrt(n)): idle plus boundary qubits of the k x k block
/// construction with k = ceil(sqrt(n)).
inline double square_overhead_bound(std::size_t n) {
    double r = std::sqrt(double(n));
    return 2.0 * r + 4.0 * std::ceil(r - 1e-12);
}

inline std::size_t ceil_sqrt(std::size_t n) {
    auto k = std::size_t(std::sqrt(double(n)));
    while (k * k < n) {
        ++k;
    }
    while (k > 0 && (k - 1) * (k - 1) >= n) {
        --k;
    }
    return k;
}

/// Number of vertices in the hexagonal disk of radius r.
inline std::size_t hex_disk_size(int r, LatticeKind kind) {
    auto m = std::size_t(r + 1);
    if (kind == LatticeKind::Hex) {
        return 6 * m * m;
    }
    // 6 m^2 sites plus (3 * 6 m^2 - 6 m) / 2 internal bonds.
    return 15 * m * m - 3 * m;
}

namespace detail {

struct Candidate {
    std::string shape;
    LatticeVertex anchor;
    std::vector<LatticeVertex> ordered;  // computational selection order
};

inline std::vector<LatticeVertex> raster_order(const VertexSet &region) {
    std::vector<LatticeVertex> out(region.begin(), region.end());
    std::stable_sort(out.begin(), out.end(), [](const LatticeVertex &a, const LatticeVertex &b) {
        auto pa = raster_position(a);
        auto pb = raster_position(b);
        return std::pair{pa.second, pa.first} < std::pair{pb.second, pb.first};
    });
    return out;
}

inline std::vector<LatticeVertex> hex_face_cycle(LatticeKind kind, int i, int j) {
    auto sites = hex_face_sites(i, j);
    std::vector<LatticeVertex> out;
    for (std::size_t k = 0; k < sites.size(); ++k) {
        out.push_back(LatticeVertex::base(kind, sites[k]));
        if (kind == LatticeKind::HeavyHex) {
            out.push_back(LatticeVertex::subdivision(kind, sites[k], sites[(k + 1) % sites.size()]));
        }
    }
    return out;
}

struct SiteBox {
    int imin = 0, imax = 0, jmin = 0, jmax = 0;
};

inline SiteBox site_box(const DeviceTopology &device) {
    SiteBox box{std::numeric_limits<int>::max(), std::numeric_limits<int>::min(), std::numeric_limits<int>::max(),
                std::numeric_limits<int>::min()};
    for (const auto &q : device.qubits()) {
        for (const Site &s : {q.vertex.a, q.vertex.sub ? q.vertex.b : q.vertex.a}) {
            box.imin = std::min(box.imin, s.i);
            box.imax = std::max(box.imax, s.i);
            box.jmin = std::min(box.jmin, s.j);
            box.jmax = std::max(box.jmax, s.j);
        }
    }
    return box;
}

/// Candidate regions of size >= n, in a deterministic order. The visitor
/// returns false to stop the scan.
template <class Visit>
void for_each_candidate(const DeviceTopology &device, std::size_t n, Visit &&visit) {
    LatticeKind kind = device.kind();
    SiteBox box = site_box(device);
    if (base_kind(kind) == LatticeKind::Square) {
        std::vector<std::pair<int, int>> dims;
        if (kind == LatticeKind::Square) {
            auto k = int(ceil_sqrt(n));
            int other = int((n + std::size_t(k) - 1) / std::size_t(k));
            dims = {{k, k}, {k, other}, {other, k}};
        } else {
            int k = 1;
            while (std::size_t(3 * k * k - 2 * k) < n) {
                ++k;
            }
            dims = {{k, k}};
        }
        std::sort(dims.begin(), dims.end());
        dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
        for (auto [w, h] : dims) {
            for (int i0 = box.imin; i0 + w - 1 <= box.imax; ++i0) {
                for (int j0 = box.jmin; j0 + h - 1 <= box.jmax; ++j0) {
                    VertexSet region = square_block(i0, j0, w, h, kind);
                    Candidate c{"block " + std::to_string(w) + "x" + std::to_string(h),
                                LatticeVertex::base(kind, Site{i0, j0, 0}), raster_order(region)};
                    if (!visit(c)) {
                        return;
                    }
                }
            }
        }
        return;
    }
    int r = 0;
    while (hex_disk_size(r, kind) < n) {
        ++r;
    }
    for (int ci = box.imin - 1; ci <= box.imax; ++ci) {
        for (int cj = box.jmin - 1; cj <= box.jmax; ++cj) {
            LatticeVertex anchor = LatticeVertex::base(kind, Site{ci, cj, 1});
            if (n < hex_disk_size(0, kind)) {
                auto cycle = hex_face_cycle(kind, ci, cj);
                for (std::size_t start = 0; start < cycle.size(); ++start) {
                    std::vector<LatticeVertex> arc;
                    for (std::size_t k = 0; k < n; ++k) {
                        arc.push_back(cycle[(start + k) % cycle.size()]);
                    }
                    Candidate c{"arc " + std::to_string(n) + " start " + std::to_string(start), arc.front(), arc};
                    if (!visit(c)) {
                        return;
                    }
                }
            }
            VertexSet region = hex_disk(r, kind, false, ci, cj);
            Candidate c{"disk r=" + std::to_string(r), anchor, raster_order(region)};
            if (!visit(c)) {
                return;
            }
        }
    }
}

/// Region qubits when every region vertex is a live qubit and every lattice
/// neighbor of the region exists on the device; nullopt otherwise.
inline std::optional<std::vector<int>> interior_region(const DeviceTopology &device, const Candidate &c) {
    std::vector<int> ids;
    ids.reserve(c.ordered.size());
    for (const auto &v : c.ordered) {
        auto q = device.qubit_at(v);
        if (!q || device.is_excluded(*q)) {
            return std::nullopt;
        }
        ids.push_back(*q);
    }
    VertexSet region(c.ordered.begin(), c.ordered.end());
    for (const auto &v : vertex_boundary(region)) {
        if (!device.qubit_at(v)) {
            return std::nullopt;
        }
    }
    return ids;
}

inline bool feasible(const DeviceTopology &device, std::size_t n) {
    bool found = false;
    for_each_candidate(device, n, [&](const Candidate &c) {
        found = interior_region(device, c).has_value();
        return !found;
    });
    return found;
}

}  // namespace detail

/// Buffered placement of n computational qubits. Scans every translation (and,
/// for honeycomb arcs, rotation) of the candidate shapes whose region and
/// lattice boundary lie on the device, and returns the one with least overhead;
/// ties go to the smallest anchor vertex. With `anchor`, only candidates with
/// that anchor are considered.
inline Placement plan(const DeviceTopology &device, std::size_t n,
                      std::optional<LatticeVertex> anchor = std::nullopt) {
    if (n == 0) {
        throw PreconditionError("a placement needs at least one computational qubit");
    }
    std::optional<Placement> best;
    std::size_t active = device.active_qubits().size();
    if (n <= active) {
        detail::for_each_candidate(device, n, [&](const detail::Candidate &c) {
            if (anchor && c.anchor != *anchor) {
                return true;
            }
            auto ids = detail::interior_region(device, c);
            if (!ids) {
                return true;
            }
            std::set<int> comp(ids->begin(), ids->begin() + std::ptrdiff_t(n));
            std::set<int> idle(ids->begin() + std::ptrdiff_t(n), ids->end());
            Placement p = make_placement(device, std::move(comp), std::move(idle), c.shape, c.anchor);
            if (!best || p.overhead < best->overhead ||
                (p.overhead == best->overhead && (*p.anchor < *best->anchor ||
                                                  (*p.anchor == *best->anchor && p.shape < best->shape)))) {
                best = std::move(p);
            }
            return true;
        });
    }
    if (best) {
        return *best;
    }
    std::size_t lo = 0;
    std::size_t hi = std::min(n - 1, active);
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (detail::feasible(device, mid)) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    throw InfeasiblePlacement("no buffered placement of " + std::to_string(n) + " qubits fits on " + device.name() +
                                  (anchor ? " at the requested anchor" : "") + "; largest feasible n is " +
                                  std::to_string(lo),
                              lo);
}

// ---------------------------------------------------------------------------
// Edge sets.

struct EdgeSchedule {
    std::vector<std::vector<Coupler>> sets;

    std::size_t edge_count() const {
        std::size_t total = 0;
        for (const auto &s : sets) {
            total += s.size();
        }
        return total;
    }
};

/// Couplers with both endpoints computational.
inline std::vector<Coupler> computational_edges(const Placement &p, const DeviceTopology &device) {
    std::vector<Coupler> out;
    for (const auto &[a, b] : device.couplers()) {
        if (p.computational.contains(a) && p.computational.contains(b)) {
            out.push_back(Coupler{a, b});
        }
    }
    return out;
}

namespace detail {

inline bool is_bipartite(const std::vector<Coupler> &edges) {
    std::map<int, std::vector<int>> adj;
    for (const auto &[a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::map<int, int> side;
    for (const auto &[start, unused] : adj) {
        if (side.contains(start)) {
            continue;
        }
        side[start] = 0;
        std::queue<int> todo;
        todo.push(start);
        while (!todo.empty()) {
            int q = todo.front();
            todo.pop();
            for (int w : adj[q]) {
                auto it = side.find(w);
                if (it == side.end()) {
                    side[w] = 1 - side[q];
                    todo.push(w);
                } else if (it->second == side[q]) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace detail

/// Splits the computational couplers into matchings. Edges are taken in
/// sorted order and given the lowest color free at both ends. When none of
/// the first max-degree colors is free at both ends on a bipartite graph, the
/// alternating path of two colors is swapped first (Konig), so bipartite
/// regions use exactly max-degree edge sets.
inline EdgeSchedule schedule_edges(const Placement &placement, const DeviceTopology &device) {
    std::vector<Coupler> edges = computational_edges(placement, device);
    EdgeSchedule schedule;
    if (edges.empty()) {
        return schedule;
    }
    std::map<int, int> degree;
    for (const auto &[a, b] : edges) {
        ++degree[a];
        ++degree[b];
    }
    int max_degree = 0;
    for (const auto &[q, d] : degree) {
        max_degree = std::max(max_degree, d);
    }
    bool bipartite = detail::is_bipartite(edges);

    // at[q][color] = neighbor reached from q by the edge of that color.
    std::map<int, std::map<int, int>> at;
    auto free_at = [&](int q, int c) { return !at[q].contains(c); };
    auto smallest_free = [&](int q) {
        int c = 0;
        while (!free_at(q, c)) {
            ++c;
        }
        return c;
    };
    for (const auto &[u, v] : edges) {
        int color = -1;
        for (int c = 0; c < max_degree; ++c) {
            if (free_at(u, c) && free_at(v, c)) {
                color = c;
                break;
            }
        }
        if (color < 0 && bipartite) {
            int a = smallest_free(u);
            int b = smallest_free(v);
            std::vector<std::tuple<int, int, int>> path;
            int cur = v;
            int col = a;
            while (at[cur].contains(col)) {
                int next = at[cur][col];
                path.emplace_back(cur, next, col);
                cur = next;
                col = col == a ? b : a;
            }
            for (const auto &[x, y, c] : path) {
                at[x].erase(c);
                at[y].erase(c);
            }
            for (const auto &[x, y, c] : path) {
                int swapped = c == a ? b : a;
                at[x][swapped] = y;
                at[y][swapped] = x;
            }
            color = a;
        }
        if (color < 0) {
            color = max_degree;
            while (!(free_at(u, color) && free_at(v, color))) {
                ++color;
            }
        }
        at[u][color] = v;
        at[v][color] = u;
    }
    std::map<int, std::vector<Coupler>> by_color;
    for (const auto &[q, colors] : at) {
        for (const auto &[c, w] : colors) {
            if (q < w) {
                by_color[c].push_back(Coupler{q, w});
            }
        }
    }
    for (auto &[c, set] : by_color) {
        std::sort(set.begin(), set.end());
        schedule.sets.push_back(std::move(set));
    }
    return schedule;
}

enum class Proximity { NN, NonNN };

inline std::string_view to_string(Proximity p) {
    return p == Proximity::NN ? "NN" : "nonNN";
}

/// Spectator classification for one edge set: a spectator is NN when a coupler
/// joins it to an endpoint of an active edge.
inline std::map<int, Proximity> classify_spectators(const Placement &placement, const EdgeSchedule &schedule,
                                                    const DeviceTopology &device, std::size_t edge_set_index) {
    if (edge_set_index >= schedule.sets.size()) {
        throw PreconditionError("edge set index " + std::to_string(edge_set_index) + " out of range");
    }
    std::set<int> active;
    for (const auto &[a, b] : schedule.sets[edge_set_index]) {
        active.insert(a);
        active.insert(b);
    }
    std::map<int, Proximity> out;
    for (int q : placement.spectators()) {
        bool nn = std::any_of(device.neighbors(q).begin(), device.neighbors(q).end(),
                              [&](int w) { return active.contains(w); });
        out[q] = nn ? Proximity::NN : Proximity::NonNN;
    }
    return out;
}

/// Character map of a placement: C computational, o idle region, B buffer,
/// . willie, x excluded.
inline std::string render_ascii(const DeviceTopology &device, const Placement &p) {
    std::map<std::pair<int, int>, char> cells;
    int cmin = std::numeric_limits<int>::max(), cmax = std::numeric_limits<int>::min();
    int rmin = cmin, rmax = cmax;
    for (const auto &q : device.qubits()) {
        auto [c, r] = raster_position(q.vertex);
        char ch = '.';
        if (device.is_excluded(q.id)) {
            ch = 'x';
        } else if (p.computational.contains(q.id)) {
            ch = 'C';
        } else if (p.interior_idle.contains(q.id)) {
            ch = 'o';
        } else if (p.buffer.contains(q.id)) {
            ch = 'B';
        }
        cells[{c, r}] = ch;
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    std::string out;
    for (int r = rmax; r >= rmin; --r) {
        std::string line;
        for (int c = cmin; c <= cmax; ++c) {
            auto it = cells.find({c, r});
            line.push_back(it == cells.end() ? ' ' : it->second);
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        if (!line.empty()) {
            out += line;
            out.push_back('\n');
        }
    }
    return out;
}

}  // namespace covertlat
