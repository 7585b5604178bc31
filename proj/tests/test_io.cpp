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


#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "covertlat/io.hpp"

using namespace covertlat;
using covertlat::io::json;

TEST(io, vertex_json_forms) {
    EXPECT_EQ(io::vertex_to_json(LatticeVertex::square(2, -1)), json::parse("[2,-1]"));
    EXPECT_EQ(io::vertex_to_json(LatticeVertex::hex(0, 1, 1)), json::parse("[0,1,1]"));
    auto sub = LatticeVertex::subdivision(LatticeKind::HeavyHex, Site{0, 0, 1}, Site{0, 0, 0});
    EXPECT_EQ(io::vertex_to_json(sub), json::parse(R"(["sub",[0,0,0],[0,0,1]])"));
    EXPECT_EQ(io::vertex_from_json(json::parse(R"(["sub",[0,0,1],[0,0,0]])"), LatticeKind::HeavyHex), sub);
    EXPECT_THROW(io::vertex_from_json(json::parse(R"(["sub",[0,0,0],[3,0,0]])"), LatticeKind::HeavyHex),
                 InvalidVertex);
    EXPECT_THROW(io::vertex_from_json(json::parse("[1,2,3]"), LatticeKind::Square), SchemaError);
    EXPECT_THROW(io::vertex_from_json(json::parse("[1,2,2]"), LatticeKind::Hex), InvalidVertex);
    EXPECT_THROW(io::vertex_from_json(json::parse(R"(["sub",[0,0],[1,0]])"), LatticeKind::Square), InvalidVertex);
}

TEST(io, vertex_sets_are_sorted_lists) {
    for (LatticeKind kind : kAllLatticeKinds) {
        VertexSet set = box_vertices(kind, 1);
        json j = io::vertex_set_to_json(set);
        EXPECT_EQ(io::vertex_set_from_json(j, kind), set);
        // Canonical order: base vertices lexicographically, then sub vertices.
        std::vector<LatticeVertex> listed;
        for (const auto &x : j) {
            listed.push_back(io::vertex_from_json(x, kind));
        }
        EXPECT_TRUE(std::is_sorted(listed.begin(), listed.end()));
    }
}

TEST(io, bound_report_row) {
    auto r = check_bound(hex_disk(0), BoundaryKind::Edge);
    EXPECT_EQ(io::csv_row(r), "hex,edge,6,6,6,0,true");
    auto j = io::to_json(r);
    EXPECT_EQ(j["set_size"], 6);
    EXPECT_EQ(j["satisfied"], true);
}

TEST(io, finite_graph_round_trip) {
    FiniteGraph g({"a", "b", "c"}, {{"b", "a"}, {"b", "c"}});
    auto back = io::finite_graph_from_json(io::to_json(g));
    EXPECT_EQ(back.vertices(), g.vertices());
    EXPECT_EQ(back.edges(), g.edges());
    EXPECT_THROW(io::finite_graph_from_json(json::parse(R"({"vertices":["a"],"edges":[["a","z"]]})")),
                 PreconditionError);
    EXPECT_THROW(io::finite_graph_from_json(json::parse(R"({"vertices":["a"]})")), SchemaError);
}

TEST(io, device_round_trip_and_errors) {
    auto d = synthetic_hex_device(LatticeKind::HeavyHex, 1);
    auto back = io::device_from_json(io::to_json(d));
    EXPECT_EQ(back.size(), d.size());
    EXPECT_EQ(back.couplers(), d.couplers());
    EXPECT_EQ(io::to_json(back), io::to_json(d));

    json bad_geom = json::parse(R"({"name":"x","kind":"square",
        "qubits":[{"id":0,"vertex":[0,0]},{"id":1,"vertex":[1,1]}],"couplers":[[0,1]]})");
    EXPECT_THROW(io::device_from_json(bad_geom), GeometryError);
    json dup = json::parse(R"({"name":"x","kind":"square",
        "qubits":[{"id":0,"vertex":[0,0]},{"id":0,"vertex":[1,0]}],"couplers":[]})");
    EXPECT_THROW(io::device_from_json(dup), SchemaError);
    json no_kind = json::parse(R"({"name":"x","qubits":[],"couplers":[]})");
    EXPECT_THROW(io::device_from_json(no_kind), SchemaError);
    json bad_kind = json::parse(R"({"name":"x","kind":"kagome","qubits":[],"couplers":[]})");
    EXPECT_THROW(io::device_from_json(bad_kind), SchemaError);
    json bad_type = json::parse(R"({"name":"x","kind":"square","qubits":[{"id":"a","vertex":[0,0]}],"couplers":[]})");
    EXPECT_THROW(io::device_from_json(bad_type), SchemaError);

    auto path = std::filesystem::temp_directory_path() / "covertlat_bad_device.json";
    std::ofstream(path) << "{ not json";
    EXPECT_THROW(io::load_device(path.string()), SchemaError);
    EXPECT_THROW(io::load_device("/nonexistent/device.json"), SchemaError);
}

TEST(io, ramsey_tables_round_trip) {
    ramsey::RamseyRecord r;
    r.qubit = 12;
    r.edge_set = 3;
    r.baseline_delta_hz = 300012.345678901234;
    r.active_delta_hz = 391311.1;
    r.shift_hz = r.active_delta_hz - r.baseline_delta_hz;
    r.detected = true;
    r.nn = Proximity::NN;
    r.fit_ok = true;
    ramsey::RamseyRecord s = r;
    s.qubit = 13;
    s.nn = Proximity::NonNN;
    s.detected = false;
    s.fit_ok = false;
    std::string csv = io::records_csv("emerald", "2", {r, s});
    auto back = io::parse_records_csv(csv);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].baseline_delta_hz, r.baseline_delta_hz);
    EXPECT_EQ(back[0].shift_hz, r.shift_hz);
    EXPECT_EQ(back[1].nn, Proximity::NonNN);
    EXPECT_EQ(io::records_csv("emerald", "2", back), csv);

    ramsey::SummaryRow row{"3", 9, 10, 12, 1, 30};
    std::string sum = io::summary_csv({row});
    EXPECT_EQ(sum, "experiment,n,nn_detected,nn_total,nonnn_detected,nonnn_total\n3,9,10,12,1,30\n");
    EXPECT_EQ(io::summary_csv(io::parse_summary_csv(sum)), sum);
    EXPECT_THROW(io::parse_summary_csv("wrong,header\n"), SchemaError);
    EXPECT_THROW(io::parse_summary_csv(std::string(io::kSummaryCsvHeader) + "\n1,2\n"), SchemaError);
}

TEST(io, density_matrix_json) {
    auto rho = io::density_matrix_from_json(json::parse("[[[0.5,0],[0,-0.5]],[[0,0.5],[0.5,0]]]"));
    EXPECT_EQ(rho.dim(), 2u);
    EXPECT_EQ(rho(0, 1), Complex(0, -0.5));
    EXPECT_THROW(io::density_matrix_from_json(json::parse("[[[1,0]],[[0,0]]]")), SchemaError);
    EXPECT_THROW(io::density_matrix_from_json(json::parse("[[[2,0]]]")), PreconditionError);
    auto b = io::to_json(k_shot_budget(0.05, 100));
    EXPECT_EQ(b["k_shot_bound"], 0.5);
}
