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

/// JSON and CSV forms of the library's data.
///
/// Vertices are coordinate arrays: [i, j] on square lattices, [i, j, s] on
/// honeycomb lattices, and ["sub", u, w] for subdivision vertices with u < w.
/// Vertex sets are sorted lists. Real numbers in CSV use %.17g so they parse
/// back to the identical double.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "covertlat/budget.hpp"
#include "covertlat/errors.hpp"
#include "covertlat/isoperimetry.hpp"
#include "covertlat/lattice.hpp"
#include "covertlat/placement.hpp"
#include "covertlat/ramsey.hpp"
#include "covertlat/subdivision.hpp"

namespace covertlat::io {

using nlohmann::json;

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SchemaError("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// Vertices.

inline json site_to_json(const Site &s, LatticeKind base) {
    if (base == LatticeKind::Square) {
        return json::array({s.i, s.j});
    }
    return json::array({s.i, s.j, s.s});
}

inline Site site_from_json(const json &j, LatticeKind base) {
    std::size_t want = base == LatticeKind::Square ? 2 : 3;
    if (!j.is_array() || j.size() != want) {
        throw SchemaError("site must be an array of " + std::to_string(want) + " integers");
    }
    for (const auto &x : j) {
        if (!x.is_number_integer()) {
            throw SchemaError("site coordinates must be integers");
        }
    }
    Site s{j[0].get<int>(), j[1].get<int>(), want == 3 ? j[2].get<int>() : 0};
    if (!valid_site(s, base)) {
        throw InvalidVertex("site " + j.dump() + " is not on the " + std::string(to_string(base)) + " lattice");
    }
    return s;
}

inline json vertex_to_json(const LatticeVertex &v) {
    LatticeKind bk = base_kind(v.kind);
    if (v.sub) {
        return json::array({"sub", site_to_json(v.a, bk), site_to_json(v.b, bk)});
    }
    return site_to_json(v.a, bk);
}

inline LatticeVertex vertex_from_json(const json &j, LatticeKind kind) {
    LatticeKind bk = base_kind(kind);
    if (j.is_array() && j.size() == 3 && j[0].is_string()) {
        if (j[0] != "sub") {
            throw SchemaError("tagged vertex must start with \"sub\"");
        }
        if (!is_heavy(kind)) {
            throw InvalidVertex("subdivision vertex on a lattice that is not subdivided");
        }
        return LatticeVertex::subdivision(kind, site_from_json(j[1], bk), site_from_json(j[2], bk));
    }
    return LatticeVertex::base(kind, site_from_json(j, bk));
}

inline json vertex_set_to_json(const VertexSet &set) {
    json out = json::array();
    for (const auto &v : set) {
        out.push_back(vertex_to_json(v));
    }
    return out;
}

inline VertexSet vertex_set_from_json(const json &j, LatticeKind kind) {
    if (!j.is_array()) {
        throw SchemaError("vertex set must be an array");
    }
    VertexSet out;
    for (const auto &x : j) {
        out.insert(vertex_from_json(x, kind));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bound reports.

inline json to_json(const BoundReport &r) {
    return json{{"kind", to_string(r.kind)},        {"which", to_string(r.which)},
                {"set_size", r.set_size},           {"boundary_size", r.boundary_size},
                {"bound", r.bound_value},           {"gap", r.gap},
                {"satisfied", r.satisfied}};
}

inline const char *kBoundCsvHeader = "kind,which,set_size,boundary_size,bound,gap,satisfied";

inline std::string csv_row(const BoundReport &r) {
    return std::string(to_string(r.kind)) + "," + std::string(to_string(r.which)) + "," +
           std::to_string(r.set_size) + "," + std::to_string(r.boundary_size) + "," + format_double(r.bound_value) +
           "," + format_double(r.gap) + "," + (r.satisfied ? "true" : "false");
}

// ---------------------------------------------------------------------------
// Finite graphs.

inline json to_json(const FiniteGraph &g) {
    json edges = json::array();
    for (const auto &[u, w] : g.edges()) {
        edges.push_back(json::array({u, w}));
    }
    return json{{"vertices", g.vertices()}, {"edges", edges}};
}

inline FiniteGraph finite_graph_from_json(const json &j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
        throw SchemaError("graph document needs 'vertices' and 'edges'");
    }
    std::set<std::string> vertices;
    for (const auto &v : j.at("vertices")) {
        if (!v.is_string()) {
            throw SchemaError("vertex ids must be strings");
        }
        vertices.insert(v.get<std::string>());
    }
    std::vector<GraphEdge> edges;
    for (const auto &e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
            throw SchemaError("edges must be [u, w] string pairs");
        }
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return FiniteGraph(std::move(vertices), edges);
}

// ---------------------------------------------------------------------------
// Devices.

inline DeviceTopology device_from_json(const json &j) {
    try {
        if (!j.is_object()) {
            throw SchemaError("device document must be an object");
        }
        for (const char *key : {"name", "kind", "qubits", "couplers"}) {
            if (!j.contains(key)) {
                throw SchemaError(std::string("device document lacks '") + key + "'");
            }
        }
        LatticeKind kind = parse_lattice_kind(j.at("kind").get<std::string>());
        std::vector<Qubit> qubits;
        for (const auto &q : j.at("qubits")) {
            if (!q.is_object() || !q.contains("id") || !q.contains("vertex") || !q.at("id").is_number_integer()) {
                throw SchemaError("qubit entries need an integer 'id' and a 'vertex'");
            }
            qubits.push_back(Qubit{q.at("id").get<int>(), vertex_from_json(q.at("vertex"), kind)});
        }
        std::set<Coupler> couplers;
        for (const auto &c : j.at("couplers")) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
                throw SchemaError("couplers must be [int, int] pairs");
            }
            int a = c[0].get<int>();
            int b = c[1].get<int>();
            if (!couplers.insert(make_coupler(a, b)).second) {
                throw SchemaError("duplicate coupler " + c.dump());
            }
        }
        std::set<int> excluded;
        if (j.contains("excluded")) {
            for (const auto &e : j.at("excluded")) {
                excluded.insert(e.get<int>());
            }
        }
        return DeviceTopology(j.at("name").get<std::string>(), kind, std::move(qubits), couplers,
                              std::move(excluded));
    } catch (const json::exception &e) {
        throw SchemaError(std::string("malformed device document: ") + e.what());
    } catch (const UnsupportedKind &e) {
        throw SchemaError(e.what());
    }
}

inline DeviceTopology load_device(const std::string &path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error &e) {
        throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
    }
    return device_from_json(j);
}

inline json to_json(const DeviceTopology &d) {
    json qubits = json::array();
    for (const auto &q : d.qubits()) {
        qubits.push_back(json{{"id", q.id}, {"vertex", vertex_to_json(q.vertex)}});
    }
    json couplers = json::array();
    for (const auto &[a, b] : d.couplers()) {
        couplers.push_back(json::array({a, b}));
    }
    return json{{"name", d.name()},   {"kind", to_string(d.kind())}, {"qubits", qubits},
                {"couplers", couplers}, {"excluded", d.excluded()}};
}

inline json to_json(const Placement &p) {
    json out{{"computational", p.computational},
             {"interior_idle", p.interior_idle},
             {"buffer", p.buffer},
             {"willie", p.willie},
             {"overhead", p.overhead},
             {"shape", p.shape}};
    out["anchor"] = p.anchor ? vertex_to_json(*p.anchor) : json(nullptr);
    return out;
}

inline json to_json(const EdgeSchedule &s) {
    json sets = json::array();
    for (const auto &set : s.sets) {
        json edges = json::array();
        for (const auto &[a, b] : set) {
            edges.push_back(json::array({a, b}));
        }
        sets.push_back(edges);
    }
    return json{{"edge_sets", sets}};
}

// ---------------------------------------------------------------------------
// Ramsey tables.

inline const char *kRecordsCsvHeader =
    "device,experiment,qubit,edge_set,nn,baseline_delta_hz,active_delta_hz,shift_hz,detected,fit_ok";
inline const char *kSummaryCsvHeader = "experiment,n,nn_detected,nn_total,nonnn_detected,nonnn_total";
inline const char *kTraceCsvHeader = "qubit,run,tau_s,p_hat,p_fit";

inline std::string records_csv(const std::string &device, const std::string &experiment,
                               const std::vector<ramsey::RamseyRecord> &records) {
    std::string out = std::string(kRecordsCsvHeader) + "\n";
    for (const auto &r : records) {
        out += device + "," + experiment + "," + std::to_string(r.qubit) + "," + std::to_string(r.edge_set) + "," +
               std::string(to_string(r.nn)) + "," + format_double(r.baseline_delta_hz) + "," +
               format_double(r.active_delta_hz) + "," + format_double(r.shift_hz) + "," +
               (r.detected ? "true" : "false") + "," + (r.fit_ok ? "true" : "false") + "\n";
    }
    return out;
}

inline std::string summary_csv(const std::vector<ramsey::SummaryRow> &rows) {
    std::string out = std::string(kSummaryCsvHeader) + "\n";
    for (const auto &s : rows) {
        out += s.experiment + "," + std::to_string(s.n) + "," + std::to_string(s.nn_detected) + "," +
               std::to_string(s.nn_total) + "," + std::to_string(s.nonnn_detected) + "," +
               std::to_string(s.nonnn_total) + "\n";
    }
    return out;
}

inline std::string traces_csv(const std::vector<ramsey::TracePoint> &points) {
    std::string out = std::string(kTraceCsvHeader) + "\n";
    for (const auto &p : points) {
        out += std::to_string(p.qubit) + "," + p.run + "," + format_double(p.tau) + "," + format_double(p.p_hat) +
               "," + format_double(p.p_fit) + "\n";
    }
    return out;
}

/// Splits CSV text into rows of fields after checking the header line.
inline std::vector<std::vector<std::string>> parse_csv(const std::string &text, const std::string &header) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw SchemaError("unexpected CSV header");
    }
    std::size_t columns = std::count(header.begin(), header.end(), ',') + 1;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) {
            fields.push_back(f);
        }
        if (!line.empty() && line.back() == ',') {
            fields.emplace_back();
        }
        if (fields.size() != columns) {
            throw SchemaError("CSV row has " + std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(columns));
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

namespace detail {

inline bool parse_bool(const std::string &s) {
    if (s == "true") {
        return true;
    }
    if (s == "false") {
        return false;
    }
    throw SchemaError("expected true/false, got '" + s + "'");
}

inline Proximity parse_proximity(const std::string &s) {
    if (s == "NN") {
        return Proximity::NN;
    }
    if (s == "nonNN") {
        return Proximity::NonNN;
    }
    throw SchemaError("expected NN/nonNN, got '" + s + "'");
}

}  // namespace detail

/// Inverse of records_csv for the persisted columns.
inline std::vector<ramsey::RamseyRecord> parse_records_csv(const std::string &text) {
    std::vector<ramsey::RamseyRecord> out;
    for (const auto &f : parse_csv(text, kRecordsCsvHeader)) {
        ramsey::RamseyRecord r;
        r.qubit = std::stoi(f[2]);
        r.edge_set = std::stoul(f[3]);
        r.nn = detail::parse_proximity(f[4]);
        r.baseline_delta_hz = std::stod(f[5]);
        r.active_delta_hz = std::stod(f[6]);
        r.shift_hz = std::stod(f[7]);
        r.detected = detail::parse_bool(f[8]);
        r.fit_ok = detail::parse_bool(f[9]);
        out.push_back(r);
    }
    return out;
}

inline std::vector<ramsey::SummaryRow> parse_summary_csv(const std::string &text) {
    std::vector<ramsey::SummaryRow> out;
    for (const auto &f : parse_csv(text, kSummaryCsvHeader)) {
        out.push_back(ramsey::SummaryRow{f[0], std::stoul(f[1]), std::stoul(f[2]), std::stoul(f[3]),
                                         std::stoul(f[4]), std::stoul(f[5])});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Budget.

/// Density matrix from nested arrays of [re, im] pairs.
inline DensityMatrix density_matrix_from_json(const json &j) {
    if (!j.is_array() || j.empty()) {
        throw SchemaError("density matrix must be a nonempty array of rows");
    }
    std::size_t d = j.size();
    ComplexMatrix m(d);
    for (std::size_t r = 0; r < d; ++r) {
        if (!j[r].is_array() || j[r].size() != d) {
            throw SchemaError("density matrix must be square");
        }
        for (std::size_t c = 0; c < d; ++c) {
            const auto &z = j[r][c];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                throw SchemaError("matrix entries must be [re, im] pairs");
            }
            m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    return DensityMatrix(std::move(m));
}

inline json to_json(const CovertBudget &b) {
    return json{{"delta", b.delta},
                {"k", b.k},
                {"delta_qre", b.delta_qre},
                {"k_shot_bound", b.k_shot_bound},
                {"stein_exponent_bound", b.stein_exponent_bound}};
}

}  // namespace covertlat::io
