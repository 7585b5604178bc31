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


#include <cmath>

#include <gtest/gtest.h>

#include "covertlat/lattice.hpp"

using namespace covertlat;

namespace {

LatticeVertex hh_base(int i, int j, int s) {
    return LatticeVertex::base(LatticeKind::HeavyHex, Site{i, j, s});
}

double planar_distance(const LatticeVertex &u, const LatticeVertex &w) {
    auto [x0, y0] = planar_position(u);
    auto [x1, y1] = planar_position(w);
    return std::hypot(x1 - x0, y1 - y0);
}

}  // namespace

TEST(lattice, square_neighbors) {
    VertexSet expect{LatticeVertex::square(1, 0), LatticeVertex::square(-1, 0), LatticeVertex::square(0, 1),
                     LatticeVertex::square(0, -1)};
    EXPECT_EQ(neighbors(LatticeVertex::square(0, 0)), expect);
}

TEST(lattice, hex_neighbors_have_unit_planar_distance) {
    for (int s = 0; s <= 1; ++s) {
        auto v = LatticeVertex::hex(0, 0, s);
        auto nb = neighbors(v);
        ASSERT_EQ(nb.size(), 3u);
        for (const auto &w : nb) {
            EXPECT_NEAR(planar_distance(v, w), 1.0, 1e-12);
        }
    }
    // Geometric oracle: within a window, the lattice edges are exactly the
    // unit-distance site pairs.
    VertexSet window = box_vertices(LatticeKind::Hex, 3);
    for (const auto &u : window) {
        for (const auto &w : window) {
            bool unit = std::abs(planar_distance(u, w) - 1.0) < 1e-9;
            EXPECT_EQ(adjacent(u, w), unit) << to_string(u) << " " << to_string(w);
        }
    }
}

TEST(lattice, heavy_neighbors) {
    Site u{0, 0, 0};
    Site w{0, 0, 1};
    auto sub = LatticeVertex::subdivision(LatticeKind::HeavyHex, w, u);
    EXPECT_EQ(sub, LatticeVertex::subdivision(LatticeKind::HeavyHex, u, w));
    EXPECT_EQ(neighbors(sub), (VertexSet{hh_base(0, 0, 0), hh_base(0, 0, 1)}));
    EXPECT_EQ(neighbors(hh_base(0, 0, 0)).size(), 3u);
    auto hs = LatticeVertex::base(LatticeKind::HeavySquare, Site{0, 0, 0});
    EXPECT_EQ(neighbors(hs).size(), 4u);
    for (const auto &x : neighbors(hs)) {
        EXPECT_TRUE(x.sub);
    }
}

TEST(lattice, degree_and_symmetry) {
    for (LatticeKind kind : kAllLatticeKinds) {
        for (const auto &v : box_vertices(kind, 3)) {
            auto nb = neighbors(v);
            EXPECT_EQ(nb.size(), expected_degree(v));
            for (const auto &w : nb) {
                EXPECT_TRUE(neighbors(w).contains(v));
            }
        }
    }
}

TEST(lattice, invalid_vertices) {
    EXPECT_THROW(LatticeVertex::subdivision(LatticeKind::HeavyHex, Site{0, 0, 0}, Site{1, 0, 0}), InvalidVertex);
    EXPECT_THROW(LatticeVertex::subdivision(LatticeKind::Hex, Site{0, 0, 0}, Site{0, 0, 1}), InvalidVertex);
    EXPECT_THROW(LatticeVertex::hex(0, 0, 2), InvalidVertex);
    EXPECT_THROW(LatticeVertex::base(LatticeKind::Square, Site{0, 0, 1}), InvalidVertex);
    LatticeVertex bad{LatticeKind::HeavySquare, true, Site{0, 0, 0}, Site{2, 0, 0}};
    EXPECT_THROW(neighbors(bad), InvalidVertex);
}

TEST(lattice, boundaries_of_small_sets) {
    EXPECT_TRUE(vertex_boundary({}).empty());
    EXPECT_TRUE(edge_boundary({}).empty());
    EXPECT_EQ(edge_boundary({LatticeVertex::square(0, 0)}).size(), 4u);
    EXPECT_EQ(vertex_boundary(diamond(1)).size(), 8u);
    EXPECT_EQ(vertex_boundary(hex_disk(0)).size(), 6u);
    EXPECT_EQ(edge_boundary(hex_disk(0)).size(), 6u);
    VertexSet mixed{LatticeVertex::square(0, 0), LatticeVertex::hex(0, 0, 0)};
    EXPECT_THROW(vertex_boundary(mixed), KindMismatch);
    EXPECT_THROW(edge_boundary(mixed), KindMismatch);
}

TEST(lattice, boundary_invariants) {
    for (LatticeKind kind : kAllLatticeKinds) {
        VertexSet window = box_vertices(kind, 2);
        // Every other vertex of the window: a disconnected test set.
        VertexSet set;
        bool take = true;
        for (const auto &v : window) {
            if (take) {
                set.insert(v);
            }
            take = !take;
        }
        for (const auto &u : vertex_boundary(set)) {
            EXPECT_FALSE(set.contains(u));
            bool touches = false;
            for (const auto &w : neighbors(u)) {
                touches |= set.contains(w);
            }
            EXPECT_TRUE(touches);
        }
        for (const auto &[u, w] : edge_boundary(set)) {
            EXPECT_NE(set.contains(u), set.contains(w));
            EXPECT_TRUE(adjacent(u, w));
        }
    }
}

TEST(lattice, diamond_sizes) {
    EXPECT_EQ(diamond(0), VertexSet{LatticeVertex::square(0, 0)});
    EXPECT_EQ(diamond(1).size(), 5u);
    EXPECT_EQ(diamond(2).size(), 13u);
    for (int r = 0; r <= 20; ++r) {
        auto d = diamond(r);
        EXPECT_EQ(d.size(), std::size_t(2 * r * r + 2 * r + 1));
        for (const auto &v : d) {
            EXPECT_LE(std::abs(v.a.i) + std::abs(v.a.j), r);
        }
    }
    EXPECT_THROW(diamond(-1), PreconditionError);
}

TEST(lattice, hex_disk_sizes_and_nesting) {
    EXPECT_EQ(hex_disk(0).size(), 6u);
    for (int r = 0; r <= 6; ++r) {
        auto d = hex_disk(r);
        EXPECT_EQ(d.size(), std::size_t(6 * (r + 1) * (r + 1)));
        auto next = hex_disk(r + 1);
        EXPECT_TRUE(std::includes(next.begin(), next.end(), d.begin(), d.end()));
        EXPECT_LT(d.size(), next.size());
    }
    EXPECT_THROW(hex_disk(0, LatticeKind::Square), UnsupportedKind);
    EXPECT_THROW(hex_disk(0, LatticeKind::HeavySquare), UnsupportedKind);
}

TEST(lattice, heavy_hex_disk) {
    auto d0 = hex_disk(0, LatticeKind::HeavyHex);
    ASSERT_EQ(d0.size(), 12u);
    std::size_t subs = 0;
    for (const auto &v : d0) {
        subs += v.sub;
    }
    EXPECT_EQ(subs, 6u);
    for (int r = 0; r <= 4; ++r) {
        // Oracle: base sites of the honeycomb disk plus one vertex per internal bond.
        auto base = hex_disk(r);
        std::size_t bonds = 0;
        for (const auto &u : base) {
            for (const auto &w : neighbors(u)) {
                bonds += base.contains(w);
            }
        }
        auto heavy = hex_disk(r, LatticeKind::HeavyHex);
        EXPECT_EQ(heavy.size(), base.size() + bonds / 2);
        auto with_out = hex_disk(r, LatticeKind::HeavyHex, true);
        EXPECT_EQ(with_out.size(), heavy.size() + std::size_t(6 * (r + 1)));
    }
}

TEST(lattice, square_block_and_planar_map) {
    EXPECT_EQ(square_block(0, 0, 3, 2).size(), 6u);
    // 2x2 heavy-square block: 4 sites + 4 internal bonds.
    EXPECT_EQ(square_block(0, 0, 2, 2, LatticeKind::HeavySquare).size(), 8u);
    EXPECT_THROW(square_block(0, 0, 2, 2, LatticeKind::Hex), UnsupportedKind);
    auto sub = LatticeVertex::subdivision(LatticeKind::HeavyHex, Site{0, 0, 0}, Site{0, 0, 1});
    auto [x, y] = planar_position(sub);
    EXPECT_NEAR(planar_distance(sub, hh_base(0, 0, 0)), 0.5, 1e-12);
    EXPECT_NEAR(std::hypot(x, y), 0.5, 1e-12);
}

TEST(lattice, names) {
    for (LatticeKind kind : kAllLatticeKinds) {
        EXPECT_EQ(parse_lattice_kind(to_string(kind)), kind);
    }
    EXPECT_THROW(parse_lattice_kind("triangular"), UnsupportedKind);
    EXPECT_EQ(to_string(LatticeVertex::subdivision(LatticeKind::HeavyHex, Site{0, 0, 1}, Site{0, 0, 0})),
              "sub(0,0,0)(0,0,1)");
}
