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

/// Once-subdivided graphs and the constructions relating boundaries in a graph
/// G' to boundaries in its subdivision G:
///
///  * |N_G(S)| >= |N_G'(S')| and |E_G(S)| >= |E_G'(S')| whenever S meets V(G')
///    exactly in S', witnessed by explicit injections N_G'(S') -> N_G(S) and
///    E_G'(S') -> E_G(S);
///  * the two supersets of S' on which each inequality is tight.

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "covertlat/errors.hpp"
#include "covertlat/lattice.hpp"

namespace covertlat {

template <class Id>
using Adjacency = std::map<Id, std::set<Id>>;

/// N(S) in an adjacency-map graph. Every member of S must be a vertex.
template <class Id>
std::set<Id> graph_vertex_boundary(const Adjacency<Id> &adj, const std::set<Id> &set) {
    std::set<Id> out;
    for (const Id &v : set) {
        auto it = adj.find(v);
        if (it == adj.end()) {
            throw PreconditionError("vertex set is not contained in the graph");
        }
        for (const Id &w : it->second) {
            if (!set.contains(w)) {
                out.insert(w);
            }
        }
    }
    return out;
}

/// E(S) as (inside, outside) pairs.
template <class Id>
std::set<std::pair<Id, Id>> graph_edge_boundary(const Adjacency<Id> &adj, const std::set<Id> &set) {
    std::set<std::pair<Id, Id>> out;
    for (const Id &v : set) {
        auto it = adj.find(v);
        if (it == adj.end()) {
            throw PreconditionError("vertex set is not contained in the graph");
        }
        for (const Id &w : it->second) {
            if (!set.contains(w)) {
                out.emplace(v, w);
            }
        }
    }
    return out;
}

using GraphEdge = std::pair<std::string, std::string>;  // first < second

/// Finite simple graph on string ids.
class FiniteGraph {
   public:
    FiniteGraph() = default;

    FiniteGraph(std::set<std::string> vertices, const std::vector<GraphEdge> &edges)
        : vertices_(std::move(vertices)) {
        for (const auto &v : vertices_) {
            if (v.empty()) {
                throw PreconditionError("vertex ids must be nonempty");
            }
            adjacency_[v];
        }
        for (const auto &[u, w] : edges) {
            add_edge(u, w);
        }
    }

    void add_vertex(const std::string &v) {
        if (v.empty()) {
            throw PreconditionError("vertex ids must be nonempty");
        }
        vertices_.insert(v);
        adjacency_[v];
    }

    void add_edge(const std::string &u, const std::string &w) {
        if (u == w) {
            throw PreconditionError("self-loop on '" + u + "'");
        }
        if (!vertices_.contains(u) || !vertices_.contains(w)) {
            throw PreconditionError("edge {" + u + ", " + w + "} references a missing vertex");
        }
        edges_.insert(u < w ? GraphEdge{u, w} : GraphEdge{w, u});
        adjacency_[u].insert(w);
        adjacency_[w].insert(u);
    }

    const std::set<std::string> &vertices() const {
        return vertices_;
    }
    const std::set<GraphEdge> &edges() const {
        return edges_;
    }
    const Adjacency<std::string> &adjacency() const {
        return adjacency_;
    }
    bool has_edge(const std::string &u, const std::string &w) const {
        return edges_.contains(u < w ? GraphEdge{u, w} : GraphEdge{w, u});
    }

   private:
    std::set<std::string> vertices_;
    std::set<GraphEdge> edges_;
    Adjacency<std::string> adjacency_;
};

/// A vertex of a subdivided graph: an original vertex, or the inserted vertex
/// on the original edge {u, w} (u < w).
struct SubNode {
    bool sub = false;
    std::string u;
    std::string w;

    static SubNode base(std::string v) {
        return SubNode{false, std::move(v), {}};
    }
    static SubNode on_edge(std::string a, std::string b) {
        if (b < a) {
            std::swap(a, b);
        }
        return SubNode{true, std::move(a), std::move(b)};
    }

    auto operator<=>(const SubNode &) const = default;
    bool operator==(const SubNode &) const = default;
};

inline std::string to_string(const SubNode &n) {
    return n.sub ? "sub(" + n.u + "," + n.w + ")" : n.u;
}

using SubNodeSet = std::set<SubNode>;

class SubdividedGraph {
   public:
    explicit SubdividedGraph(FiniteGraph base) : base_(std::move(base)) {
        for (const auto &v : base_.vertices()) {
            adjacency_[SubNode::base(v)];
        }
        for (const auto &[u, w] : base_.edges()) {
            SubNode mid = SubNode::on_edge(u, w);
            SubNode bu = SubNode::base(u);
            SubNode bw = SubNode::base(w);
            adjacency_[mid] = {bu, bw};
            adjacency_[bu].insert(mid);
            adjacency_[bw].insert(mid);
        }
    }

    const FiniteGraph &base() const {
        return base_;
    }
    const Adjacency<SubNode> &adjacency() const {
        return adjacency_;
    }
    std::size_t vertex_count() const {
        return adjacency_.size();
    }
    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto &[v, nb] : adjacency_) {
            twice += nb.size();
        }
        return twice / 2;
    }

   private:
    FiniteGraph base_;
    Adjacency<SubNode> adjacency_;
};

inline SubdividedGraph subdivide(const FiniteGraph &g) {
    return SubdividedGraph(g);
}

namespace detail {

inline void require_base_subset(const FiniteGraph &g, const std::set<std::string> &s_base) {
    for (const auto &v : s_base) {
        if (!g.vertices().contains(v)) {
            throw PreconditionError("'" + v + "' is not a vertex of the base graph");
        }
    }
}

inline SubNodeSet lift(const std::set<std::string> &s_base) {
    SubNodeSet out;
    for (const auto &v : s_base) {
        out.insert(SubNode::base(v));
    }
    return out;
}

}  // namespace detail

/// S' plus every inserted vertex with at least one endpoint in S'. Its vertex
/// boundary in G equals N_G'(S') as a set of original vertices.
inline SubNodeSet optimal_vertex_superset(const SubdividedGraph &g, const std::set<std::string> &s_base) {
    detail::require_base_subset(g.base(), s_base);
    SubNodeSet out = detail::lift(s_base);
    for (const auto &[u, w] : g.base().edges()) {
        if (s_base.contains(u) || s_base.contains(w)) {
            out.insert(SubNode::on_edge(u, w));
        }
    }
    return out;
}

/// S' plus every inserted vertex with both endpoints in S'. Each boundary edge
/// of S' in G' then contributes exactly one boundary edge in G.
inline SubNodeSet optimal_edge_superset(const SubdividedGraph &g, const std::set<std::string> &s_base) {
    detail::require_base_subset(g.base(), s_base);
    SubNodeSet out = detail::lift(s_base);
    for (const auto &[u, w] : g.base().edges()) {
        if (s_base.contains(u) && s_base.contains(w)) {
            out.insert(SubNode::on_edge(u, w));
        }
    }
    return out;
}

/// The original vertices of a subdivided-graph vertex set.
inline std::set<std::string> base_part(const SubNodeSet &set) {
    std::set<std::string> out;
    for (const auto &n : set) {
        if (!n.sub) {
            out.insert(n.u);
        }
    }
    return out;
}

namespace detail {

inline void require_compatible(const SubdividedGraph &g, const SubNodeSet &set,
                               const std::set<std::string> &s_base) {
    require_base_subset(g.base(), s_base);
    for (const auto &n : set) {
        if (!g.adjacency().contains(n)) {
            throw PreconditionError("'" + to_string(n) + "' is not a vertex of the subdivided graph");
        }
    }
    if (base_part(set) != s_base) {
        throw PreconditionError("S must meet the original vertices exactly in S'");
    }
}

/// Smallest neighbor of u (in G') that lies in S'.
inline const std::string &witness(const FiniteGraph &g, const std::string &u, const std::set<std::string> &s_base) {
    for (const auto &w : g.adjacency().at(u)) {
        if (s_base.contains(w)) {
            return w;
        }
    }
    throw PreconditionError("'" + u + "' has no neighbor in S'");
}

}  // namespace detail

/// Injection f: N_G'(S') -> N_G(S). For u in N_G'(S') with witness w(u), the
/// smallest neighbor of u in S', f(u) = u when sub(u, w(u)) is in S and
/// f(u) = sub(u, w(u)) otherwise.
inline std::map<std::string, SubNode> boundary_injection(const SubdividedGraph &g, const SubNodeSet &set,
                                                         const std::set<std::string> &s_base) {
    detail::require_compatible(g, set, s_base);
    std::map<std::string, SubNode> f;
    for (const auto &u : graph_vertex_boundary(g.base().adjacency(), s_base)) {
        SubNode mid = SubNode::on_edge(u, detail::witness(g.base(), u, s_base));
        f.emplace(u, set.contains(mid) ? SubNode::base(u) : mid);
    }
    return f;
}

using SubEdge = std::pair<SubNode, SubNode>;

/// Injection E_G'(S') -> E_G(S). A boundary edge {u, w} with u in S' maps to
/// {sub(u, w), w} when sub(u, w) is in S and to {u, sub(u, w)} otherwise.
/// Keys and values are (inside, outside) pairs.
inline std::map<GraphEdge, SubEdge> edge_boundary_injection(const SubdividedGraph &g, const SubNodeSet &set,
                                                            const std::set<std::string> &s_base) {
    detail::require_compatible(g, set, s_base);
    std::map<GraphEdge, SubEdge> f;
    for (const auto &[u, w] : graph_edge_boundary(g.base().adjacency(), s_base)) {
        SubNode mid = SubNode::on_edge(u, w);
        if (set.contains(mid)) {
            f.emplace(GraphEdge{u, w}, SubEdge{mid, SubNode::base(w)});
        } else {
            f.emplace(GraphEdge{u, w}, SubEdge{SubNode::base(u), mid});
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Lattice patches as finite graphs.

inline std::string lattice_id(const LatticeVertex &v) {
    return to_string(v);
}

/// Induced subgraph of the lattice on a finite patch of base vertices.
inline FiniteGraph patch_graph(const VertexSet &patch) {
    FiniteGraph g;
    for (const auto &v : patch) {
        g.add_vertex(lattice_id(v));
    }
    for (const auto &v : patch) {
        for (const auto &w : neighbor_list(v)) {
            if (patch.contains(w) && v < w) {
                g.add_edge(lattice_id(v), lattice_id(w));
            }
        }
    }
    return g;
}

}  // namespace covertlat
