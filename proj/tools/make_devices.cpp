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


// Writes the bundled device documents. The layouts approximate the published
// coupler maps of a 54-qubit square-lattice device and a 156-qubit heavy-hex
// device; they are reconstructions, not vendor calibration data.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "covertlat/io.hpp"

using namespace covertlat;

namespace {

void write(const std::string &path, const DeviceTopology &device, const std::string &provenance) {
    auto doc = io::to_json(device);
    doc["provenance"] = provenance;
    // One qubit or coupler per line keeps the files diffable.
    std::ofstream out(path);
    out << "{\n";
    std::size_t k = 0;
    for (const auto &[key, value] : doc.items()) {
        out << "  " << io::json(key).dump() << ": ";
        if (value.is_array() && !value.empty()) {
            out << "[\n";
            for (std::size_t i = 0; i < value.size(); ++i) {
                out << "    " << value[i].dump() << (i + 1 < value.size() ? ",\n" : "\n");
            }
            out << "  ]";
        } else {
            out << value.dump();
        }
        out << (++k < doc.size() ? ",\n" : "\n");
    }
    out << "}\n";
    std::cerr << path << ": " << device.size() << " qubits, " << device.couplers().size() << " couplers\n";
}

DeviceTopology emerald() {
    VertexSet vertices = square_block(0, 0, 7, 7);
    for (int i = 2; i <= 4; ++i) {
        vertices.insert(LatticeVertex::square(i, -1));
    }
    for (int i = 2; i <= 3; ++i) {
        vertices.insert(LatticeVertex::square(i, 7));
    }
    DeviceTopology full = device_from_vertices("emerald", vertices);
    // The periphery does not carry a coupler at every lattice position.
    Coupler missing = make_coupler(*full.qubit_at(LatticeVertex::square(2, -1)),
                                   *full.qubit_at(LatticeVertex::square(3, -1)));
    std::set<Coupler> couplers = full.couplers();
    couplers.erase(missing);
    return DeviceTopology("emerald", LatticeKind::Square, full.qubits(), couplers);
}

DeviceTopology ibm_fez() {
    const LatticeKind kind = LatticeKind::HeavyHex;
    VertexSet vertices = hex_disk(2, kind, true);
    auto inner = base_projection(vertices);
    std::set<Site> outer;
    for (const auto &v : vertices) {
        if (v.sub) {
            for (const Site &s : {v.a, v.b}) {
                if (!inner.contains(s)) {
                    outer.insert(s);
                }
            }
        }
    }
    // Twelve of the outer sites, taken in sorted order.
    std::size_t added = 0;
    for (const Site &s : outer) {
        if (added == 12) {
            break;
        }
        vertices.insert(LatticeVertex::base(kind, s));
        ++added;
    }
    return device_from_vertices("ibm_fez", vertices);
}

}  // namespace

int main(int argc, char **argv) {
    std::string dir = argc > 1 ? argv[1] : "data/devices";
    write(dir + "/emerald.json", emerald(),
          "Approximate 54-qubit square-lattice layout: a 7x7 grid plus five periphery qubits, with one periphery "
          "coupler absent. Reconstructed from a published figure; not vendor data.");
    write(dir + "/ibm_fez.json", ibm_fez(),
          "Approximate 156-qubit heavy-hex layout: a radius-2 hexagonal disk with its outgoing subdivision "
          "vertices and twelve outer base vertices. Reconstructed from a published figure; not vendor data.");
    return 0;
}
