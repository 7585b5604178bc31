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


// Acceptance suite: one PASS/FAIL line per criterion. Every tolerance and
// sample count is pinned below.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "covertlat/budget.hpp"
#include "covertlat/io.hpp"
#include "covertlat/isoperimetry.hpp"
#include "covertlat/placement.hpp"
#include "covertlat/ramsey.hpp"
#include "covertlat/subdivision.hpp"

namespace fs = std::filesystem;
using namespace covertlat;

namespace {

// Criterion 1.
constexpr int kConnectedSets = 1000;
constexpr int kArbitrarySets = 200;
constexpr std::size_t kMaxSetSize = 200;
constexpr double kSweepSeconds = 30.0;
// Criterion 2.
constexpr double kExtremalTol = 1e-9;
// Criterion 3.
constexpr int kRandomGraphs = 500;
constexpr std::size_t kMaxGraphVertices = 30;
// Criterion 4.
constexpr int kSquareDevice = 30;
constexpr std::size_t kMaxN = 100;
constexpr int kHeavyHexDevice = 7;
constexpr double kHeavyHexSlopeTol = 0.25;  // relative to sqrt(12/5)
// Criterion 5.
constexpr double kInjectedShiftHz = 91.30e3;
constexpr double kRecoveryTolHz = 2e3;
constexpr double kEmeraldThresholdHz = 12.85e3;
constexpr int kFitSeeds = 100;
constexpr int kFitPassesNeeded = 95;
constexpr double kFitSeconds = 60.0;
// Criterion 6.
constexpr int kNullSeeds = 10;
constexpr double kMaxFalsePositiveRate = 0.05;
constexpr int kMonotoneSeeds = 100;
constexpr double kShiftStepHz = 5e3;
constexpr int kShiftPoints = 10;
// Criterion 7.
constexpr int kPinskerPairs = 500;
constexpr int kProductPairs = 100;
constexpr double kAdditivityTol = 1e-8;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
    bool pass = false;
    std::string detail;
};

// ---------------------------------------------------------------------------

Verdict isoperimetric_sweep() {
    auto t0 = Clock::now();
    std::size_t checked = 0;
    for (LatticeKind kind : kAllLatticeKinds) {
        for (int t = 0; t < kConnectedSets + kArbitrarySets; ++t) {
            Rng rng = make_stream(1, {std::uint64_t(kind), std::uint64_t(t)});
            std::size_t n = 1 + uniform_index(rng, kMaxSetSize);
            VertexSet s = t < kConnectedSets ? random_connected_set(kind, n, rng) : random_arbitrary_set(kind, n, rng);
            auto r = evaluate_bound(s, BoundaryKind::Vertex);
            ++checked;
            if (!r.satisfied) {
                return {false, std::string(to_string(kind)) + " set of size " + std::to_string(n) + " violates"};
            }
        }
    }
    double secs = seconds_since(t0);
    std::ostringstream os;
    os << checked << " sets, " << secs << " s";
    return {secs < kSweepSeconds, os.str()};
}

Verdict extremality() {
    for (int r = 0; r <= 4; ++r) {
        for (auto which : {BoundaryKind::Vertex, BoundaryKind::Edge}) {
            auto rep = evaluate_bound(hex_disk(r), which);
            if (std::abs(rep.gap) > kExtremalTol) {
                return {false, "hex_disk(" + std::to_string(r) + ") gap " + std::to_string(rep.gap)};
            }
        }
    }
    auto d1 = evaluate_bound(diamond(1), BoundaryKind::Vertex);
    auto d2 = evaluate_bound(diamond(2), BoundaryKind::Vertex);
    bool ok = d1.set_size == 5 && d1.boundary_size == 8 &&
              std::abs(d1.bound_value - 2 * std::sqrt(10.0)) < kExtremalTol && d2.set_size == 13 &&
              d2.boundary_size == 12 && std::abs(d2.bound_value - 2 * std::sqrt(26.0)) < kExtremalTol;
    return {ok, "hex disks r=0..4 tight; diamonds |S|=5/13, |N|=8/12"};
}

Verdict subdivision_transfer() {
    Rng rng = make_stream(3, {});
    std::size_t injections = 0;
    for (int t = 0; t < kRandomGraphs; ++t) {
        std::size_t n = 1 + uniform_index(rng, kMaxGraphVertices);
        double density = uniform01(rng);
        std::set<std::string> vs;
        for (std::size_t k = 0; k < n; ++k) {
            vs.insert("v" + std::to_string(k));
        }
        std::vector<GraphEdge> edges;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                if (uniform01(rng) < density) {
                    edges.emplace_back("v" + std::to_string(a), "v" + std::to_string(b));
                }
            }
        }
        FiniteGraph base(vs, edges);
        auto g = subdivide(base);
        std::set<std::string> s_base;
        for (const auto &v : vs) {
            if (uniform01(rng) < 0.4) {
                s_base.insert(v);
            }
        }
        SubNodeSet set;
        for (const auto &v : s_base) {
            set.insert(SubNode::base(v));
        }
        for (const auto &[u, w] : base.edges()) {
            if (uniform01(rng) < 0.5) {
                set.insert(SubNode::on_edge(u, w));
            }
        }
        auto nb = graph_vertex_boundary(g.adjacency(), set);
        auto eb = graph_edge_boundary(g.adjacency(), set);
        auto nb0 = graph_vertex_boundary(base.adjacency(), s_base);
        auto eb0 = graph_edge_boundary(base.adjacency(), s_base);
        if (nb.size() < nb0.size() || eb.size() < eb0.size()) {
            return {false, "inequality fails on graph " + std::to_string(t)};
        }
        if (graph_vertex_boundary(g.adjacency(), optimal_vertex_superset(g, s_base)).size() != nb0.size() ||
            graph_edge_boundary(g.adjacency(), optimal_edge_superset(g, s_base)).size() != eb0.size()) {
            return {false, "equality construction fails on graph " + std::to_string(t)};
        }
        auto f = boundary_injection(g, set, s_base);
        SubNodeSet image;
        for (const auto &[u, v] : f) {
            if (!nb.contains(v)) {
                return {false, "injection leaves N(S) on graph " + std::to_string(t)};
            }
            image.insert(v);
        }
        if (image.size() != f.size() || f.size() != nb0.size()) {
            return {false, "injection not injective on graph " + std::to_string(t)};
        }
        injections += f.size();
    }
    return {true, std::to_string(kRandomGraphs) + " graphs, " + std::to_string(injections) + " mapped vertices"};
}

Verdict overhead_law() {
    auto sq = synthetic_square_device(kSquareDevice, kSquareDevice);
    double worst = 0;
    for (std::size_t n = 1; n <= kMaxN; ++n) {
        auto p = plan(sq, n);
        if (double(p.overhead) > square_overhead_bound(n) + 1e-9 || !separation_violations(sq, p).empty()) {
            return {false, "square n=" + std::to_string(n) + " overhead " + std::to_string(p.overhead)};
        }
        worst = std::max(worst, double(p.overhead) / square_overhead_bound(n));
    }
    if (plan(sq, 25).overhead != 20) {
        return {false, "square n=25 overhead is not 20"};
    }
    auto hh = synthetic_hex_device(LatticeKind::HeavyHex, kHeavyHexDevice);
    const double leading = std::sqrt(12.0 / 5.0);
    std::ostringstream os;
    os << "square worst overhead/bound " << worst << "; heavy-hex disks";
    for (int r = 0; r <= 3; ++r) {
        std::size_t n = hex_disk_size(r, LatticeKind::HeavyHex);
        auto p = plan(hh, n);
        VertexSet region;
        for (int q : p.region()) {
            region.insert(hh.vertex(q));
        }
        auto rep = evaluate_bound(region, BoundaryKind::Vertex);
        double slope = double(p.overhead) / std::sqrt(double(n));
        os << " n=" << n << " (overhead " << p.overhead << ", gap " << rep.gap << ")";
        if (!(rep.gap > 0) || std::abs(slope - leading) > kHeavyHexSlopeTol * leading ||
            !separation_violations(hh, p).empty()) {
            return {false, os.str()};
        }
    }
    return {true, os.str()};
}

Verdict fit_recovery() {
    auto t0 = Clock::now();
    ramsey::RamseyConfig cfg;
    const double gamma = 1.0 / 20e-6;
    int shifted_ok = 0;
    int null_ok = 0;
    for (int s = 0; s < kFitSeeds; ++s) {
        auto seed = std::uint64_t(s);
        Rng rb = make_stream(seed, {1});
        Rng ra = make_stream(seed, {2});
        Rng rn = make_stream(seed, {3});
        auto base = ramsey::fit(ramsey::simulate({cfg.f_osc_hz, gamma}, cfg, rb), cfg);
        auto act = ramsey::fit(ramsey::simulate({cfg.f_osc_hz + kInjectedShiftHz, gamma}, cfg, ra), cfg);
        auto null = ramsey::fit(ramsey::simulate({cfg.f_osc_hz, gamma}, cfg, rn), cfg);
        auto d = ramsey::detect(base, act, kEmeraldThresholdHz);
        shifted_ok += d.detected && std::abs(d.shift_hz - kInjectedShiftHz) <= kRecoveryTolHz;
        auto z = ramsey::detect(base, null, kEmeraldThresholdHz);
        null_ok += z.fit_ok && !z.detected;
    }
    double secs = seconds_since(t0);
    std::ostringstream os;
    os << "91.30 kHz recovered+detected " << shifted_ok << "/" << kFitSeeds << ", 0 kHz not detected " << null_ok
       << "/" << kFitSeeds << ", " << secs << " s";
    return {shifted_ok >= kFitPassesNeeded && null_ok >= kFitPassesNeeded && secs < kFitSeconds, os.str()};
}

Verdict null_and_monotone() {
    auto device = io::load_device(std::string(COVERTLAT_DATA_DIR) + "/devices/emerald.json");
    auto placement = plan(device, 2);
    auto schedule = schedule_edges(placement, device);
    std::size_t trials = 0;
    std::size_t false_pos = 0;
    std::map<int, std::pair<int, int>> per_spectator;
    for (int s = 0; s < kNullSeeds; ++s) {
        ramsey::RamseyConfig cfg;
        cfg.seed = std::uint64_t(1000 + s);
        auto res = ramsey::run_experiment(device, placement, schedule, ramsey::CrosstalkModel{}, cfg);
        for (const auto &r : res.records) {
            if (r.fit_ok) {
                ++trials;
                false_pos += r.detected;
                per_spectator[r.qubit].first += r.detected;
                per_spectator[r.qubit].second += 1;
            }
        }
    }
    double rate = double(false_pos) / double(trials);
    double worst = 0;
    for (const auto &[q, c] : per_spectator) {
        worst = std::max(worst, double(c.first) / c.second);
    }

    ramsey::RamseyConfig cfg;
    const double gamma = 1.0 / 20e-6;
    std::vector<int> detections(kShiftPoints, 0);
    for (int s = 0; s < kMonotoneSeeds; ++s) {
        auto seed = std::uint64_t(s);
        Rng rb = make_stream(seed, {11});
        auto base = ramsey::fit(ramsey::simulate({cfg.f_osc_hz, gamma}, cfg, rb), cfg);
        for (int k = 0; k < kShiftPoints; ++k) {
            Rng ra = make_stream(seed, {12});
            auto act = ramsey::fit(ramsey::simulate({cfg.f_osc_hz + kShiftStepHz * k, gamma}, cfg, ra), cfg);
            detections[std::size_t(k)] += ramsey::detect(base, act, kEmeraldThresholdHz).detected;
        }
    }
    bool monotone = std::is_sorted(detections.begin(), detections.end());
    std::ostringstream os;
    os << "null false-positive rate " << rate << " over " << trials << " spectator trials (worst spectator " << worst
       << "); detections vs shift";
    for (int d : detections) {
        os << " " << d;
    }
    return {rate <= kMaxFalsePositiveRate && monotone, os.str()};
}

Verdict pinsker_suite() {
    for (std::size_t d : {2, 3, 4}) {
        Rng rng = make_stream(7, {d});
        for (int t = 0; t < kPinskerPairs; ++t) {
            if (!pinsker_check(random_density_matrix(d, rng), random_density_matrix(d, rng)).holds) {
                return {false, "Pinsker fails at d=" + std::to_string(d)};
            }
        }
    }
    Rng rng = make_stream(8, {});
    double worst_add = 0;
    for (int t = 0; t < kProductPairs; ++t) {
        auto a = random_density_matrix(2, rng);
        auto b = random_density_matrix(2, rng);
        for (int k = 1; k <= 4; ++k) {
            if (!product_pinsker_demo(a, b, k).holds) {
                return {false, "product bound fails at k=" + std::to_string(k)};
            }
        }
        auto c = random_density_matrix(2, rng);
        auto e = random_density_matrix(2, rng);
        double joint = quantum_relative_entropy(tensor(a, c), tensor(b, e));
        double sum = quantum_relative_entropy(a, b) + quantum_relative_entropy(c, e);
        worst_add = std::max(worst_add, std::abs(joint - sum));
    }
    auto budget = k_shot_budget(0.05, 100);
    // 8 * 0.05^2 rounds to one ulp above the double nearest 0.02.
    const double ulp = std::nextafter(0.02, 1.0) - 0.02;
    bool budget_ok = std::abs(budget.delta_qre - 0.02) <= ulp && budget.k_shot_bound == 0.5;
    std::ostringstream os;
    os << "additivity error " << worst_add << ", budget (" << io::format_double(budget.delta_qre) << ", "
       << budget.k_shot_bound << ")";
    return {worst_add <= kAdditivityTol && budget_ok, os.str()};
}

int run_cli(const std::string &args) {
    std::string cmd = std::string("'") + COVERTLAT_CLI + "' " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict determinism() {
    fs::path root = fs::temp_directory_path() / "covertlat_acceptance";
    fs::remove_all(root);
    const std::string dev = std::string(COVERTLAT_DATA_DIR) + "/devices/";
    struct Command {
        std::string name;
        std::string args;
        std::set<std::string> outputs;
    };
    std::vector<Command> commands = {
        {"bounds", "bounds --kind heavy-hex --shape random --count 50 --seed 4", {"bounds.csv"}},
        {"plan", "plan " + dev + "ibm_fez.json --n 12 --json --ascii", {"placement.json", "placement.txt"}},
        {"simulate",
         "simulate " + dev + "emerald.json --n 4 --zeta-nn 60e3 --zeta-nn-sigma 20e3 --zeta-lr 15e3 --jitter 3e3 "
         "--seed 21 --traces",
         {"records.csv", "summary.csv", "traces.csv"}},
        {"budget", "budget --delta 0.02 --k 40 --target 0.3", {"budget.json"}},
    };
    auto listing = [](const fs::path &dir) {
        std::set<std::string> names;
        for (const auto &entry : fs::directory_iterator(dir)) {
            names.insert(entry.path().filename().string());
        }
        names.erase("manifest.json");
        return names;
    };
    std::size_t compared = 0;
    for (const auto &c : commands) {
        fs::path first = root / c.name / "first";
        fs::path second = root / c.name / "second";
        if (run_cli(c.args + " --out " + first.string()) != 0) {
            return {false, c.name + " failed"};
        }
        if (run_cli("replay --manifest " + (first / "manifest.json").string() + " --out " + second.string()) != 0) {
            return {false, c.name + " replay failed"};
        }
        if (listing(first) != c.outputs || listing(second) != c.outputs) {
            return {false, c.name + " produced an unexpected set of files"};
        }
        for (const auto &file : c.outputs) {
            if (io::read_file((first / file).string()) != io::read_file((second / file).string())) {
                return {false, c.name + "/" + file + " differs on replay"};
            }
            ++compared;
        }
    }
    return {true, std::to_string(compared) + " output files byte-identical on replay"};
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<Verdict()> check;
    };
    std::vector<Criterion> criteria = {
        {"isoperimetric soundness sweep", isoperimetric_sweep},
        {"extremal shapes", extremality},
        {"subdivision boundary transfer on random graphs", subdivision_transfer},
        {"placement overhead law", overhead_law},
        {"Ramsey fit recovery", fit_recovery},
        {"null false positives and monotone detection", null_and_monotone},
        {"Pinsker suite and shot budget", pinsker_suite},
        {"CLI replay determinism", determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Verdict v;
        try {
            v = criteria[k].check();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].name << " -- "
                  << v.detail << std::endl;
    }
    std::cout << (criteria.size() - std::size_t(failed)) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
