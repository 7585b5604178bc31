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

/// Closed-form lower bounds on boundary sizes of finite vertex sets, and
/// runtime checks of those bounds against enumerated boundaries.
///
///   square       |E(S)| >= 4 sqrt(|S|)          |N(S)| >= 2 sqrt(2 |S|)
///   honeycomb    |E(S)| >= sqrt(6 |S|)          |N(S)| >= sqrt(6 |S|)
///   heavy-hex    |N(S)| >= (-9 + sqrt(81 + 60 |S|)) / 5
///
/// Heavy lattices also admit the subdivision transfer bound: the boundary of
/// S is at least the boundary of its base projection S', so the base-lattice
/// bound evaluated at |S'| applies. The heavy-square checks use that route.

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "covertlat/errors.hpp"
#include "covertlat/lattice.hpp"
#include "covertlat/random.hpp"

namespace covertlat {

inline constexpr double kBoundSlack = 1e-9;

enum class BoundaryKind { Vertex, Edge };

inline std::string_view to_string(BoundaryKind which) {
    return which == BoundaryKind::Vertex ? "vertex" : "edge";
}

inline BoundaryKind parse_boundary_kind(std::string_view text) {
    if (text == "vertex") {
        return BoundaryKind::Vertex;
    }
    if (text == "edge") {
        return BoundaryKind::Edge;
    }
    throw PreconditionError("boundary kind must be 'vertex' or 'edge'");
}

inline double bound_square_vertex(double n) {
    return 2.0 * std::sqrt(2.0 * n);
}

inline double bound_square_edge(double n) {
    return 4.0 * std::sqrt(n);
}

inline double bound_hex_vertex(double n) {
    return std::sqrt(6.0 * n);
}

inline double bound_hex_edge(double n) {
    return std::sqrt(6.0 * n);
}

/// Positive root of 5 N^2 + 18 N - 12 n = 0, obtained by eliminating the
/// honeycomb part of S from |N| >= sqrt(6 |S_H|) and |S| <= 5/2 |S_H| + 3/2 |N|.
inline double bound_heavyhex_vertex(double n) {
    return (-9.0 + std::sqrt(81.0 + 60.0 * n)) / 5.0;
}

/// Bound on the base lattice itself (Square or Hex).
inline double base_bound(LatticeKind base, BoundaryKind which, double n) {
    if (base == LatticeKind::Square) {
        return which == BoundaryKind::Vertex ? bound_square_vertex(n) : bound_square_edge(n);
    }
    if (base == LatticeKind::Hex) {
        return which == BoundaryKind::Vertex ? bound_hex_vertex(n) : bound_hex_edge(n);
    }
    throw UnsupportedKind("base_bound needs a square or hex lattice");
}

struct BoundReport {
    LatticeKind kind = LatticeKind::Square;
    BoundaryKind which = BoundaryKind::Vertex;
    std::size_t set_size = 0;
    std::size_t boundary_size = 0;
    double bound_value = 0.0;
    bool satisfied = true;
    double gap = 0.0;  // boundary_size - bound_value
};

inline BoundReport make_report(LatticeKind kind, BoundaryKind which, std::size_t set_size, std::size_t boundary,
                               double bound) {
    BoundReport r;
    r.kind = kind;
    r.which = which;
    r.set_size = set_size;
    r.boundary_size = boundary;
    r.bound_value = bound;
    r.gap = double(boundary) - bound;
    r.satisfied = r.gap >= -kBoundSlack;
    return r;
}

inline std::size_t boundary_size(const VertexSet &set, BoundaryKind which) {
    return which == BoundaryKind::Vertex ? vertex_boundary(set).size() : edge_boundary(set).size();
}

/// Subdivision transfer: compares |N(S)| (or |E(S)|) against the base bound
/// at |S'|, where S' is the base projection of S. Heavy lattices only.
inline BoundReport evaluate_transfer_bound(const VertexSet &set, BoundaryKind which) {
    if (set.empty()) {
        throw PreconditionError("transfer bound needs a nonempty set to determine its lattice");
    }
    LatticeKind kind = set.begin()->kind;
    if (!is_heavy(kind)) {
        throw UnsupportedKind("transfer bound applies to subdivided lattices only");
    }
    std::size_t boundary = boundary_size(set, which);
    double bound = base_bound(base_kind(kind), which, double(base_projection(set).size()));
    return make_report(kind, which, set.size(), boundary, bound);
}

/// Computes the report for the bound that applies to S's lattice. The empty
/// set is reported against `kind_hint`. Heavy-hex edge boundaries have no
/// closed form and raise UnsupportedKind; use evaluate_transfer_bound.
inline BoundReport evaluate_bound(const VertexSet &set, BoundaryKind which,
                                  LatticeKind kind_hint = LatticeKind::Square) {
    LatticeKind kind = set.empty() ? kind_hint : set.begin()->kind;
    if (kind == LatticeKind::HeavyHex && which == BoundaryKind::Edge) {
        throw UnsupportedKind("no closed-form edge bound on the heavy-hex lattice");
    }
    if (set.empty()) {
        return make_report(kind, which, 0, 0, 0.0);
    }
    switch (kind) {
        case LatticeKind::Square:
        case LatticeKind::Hex:
            return make_report(kind, which, set.size(), boundary_size(set, which),
                               base_bound(kind, which, double(set.size())));
        case LatticeKind::HeavyHex:
            return make_report(kind, which, set.size(), boundary_size(set, which),
                               bound_heavyhex_vertex(double(set.size())));
        case LatticeKind::HeavySquare:
            return evaluate_transfer_bound(set, which);
    }
    throw UnsupportedKind("unknown lattice kind");
}

/// evaluate_bound, raising PropertyViolation if the bound fails.
inline BoundReport check_bound(const VertexSet &set, BoundaryKind which,
                               LatticeKind kind_hint = LatticeKind::Square) {
    BoundReport r = evaluate_bound(set, which, kind_hint);
    if (!r.satisfied) {
        throw PropertyViolation("isoperimetric bound violated: |boundary| = " + std::to_string(r.boundary_size) +
                                " < " + std::to_string(r.bound_value) + " for |S| = " +
                                std::to_string(r.set_size));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Random sets.

inline LatticeVertex origin_vertex(LatticeKind kind) {
    return LatticeVertex::base(kind, Site{0, 0, 0});
}

/// Connected set of `size` vertices grown from the origin; each step adds a
/// uniformly chosen vertex of the current vertex boundary.
inline VertexSet random_connected_set(LatticeKind kind, std::size_t size, Rng &rng) {
    VertexSet set;
    if (size == 0) {
        return set;
    }
    std::vector<LatticeVertex> frontier{origin_vertex(kind)};
    VertexSet seen{frontier.front()};
    while (set.size() < size) {
        std::size_t k = uniform_index(rng, frontier.size());
        LatticeVertex v = frontier[k];
        frontier[k] = frontier.back();
        frontier.pop_back();
        set.insert(v);
        for (const auto &w : neighbor_list(v)) {
            if (seen.insert(w).second) {
                frontier.push_back(w);
            }
        }
    }
    return set;
}

/// `size` distinct vertices drawn uniformly from a box around the origin; the
/// result is typically disconnected.
inline VertexSet random_arbitrary_set(LatticeKind kind, std::size_t size, Rng &rng, int half_width = 12) {
    VertexSet box = box_vertices(kind, half_width);
    std::vector<LatticeVertex> pool(box.begin(), box.end());
    if (size > pool.size()) {
        throw PreconditionError("requested more vertices than the sampling box holds");
    }
    for (std::size_t k = 0; k < size; ++k) {
        std::size_t pick = k + uniform_index(rng, pool.size() - k);
        std::swap(pool[k], pool[pick]);
    }
    return VertexSet(pool.begin(), pool.begin() + std::ptrdiff_t(size));
}

}  // namespace covertlat
