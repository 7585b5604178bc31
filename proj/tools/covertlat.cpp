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


// covertlat command-line tool.
//
//   covertlat bounds   --kind K --shape disk|diamond|block|random|scatter ...
//   covertlat plan     DEVICE --n N [--json] [--ascii]
//   covertlat simulate DEVICE --n N --zeta-nn HZ [--zeta-lr HZ --lr-decay X] --seed S --out DIR
//   covertlat budget   --delta D (--k K | --target T)
//   covertlat replay   --manifest FILE [--out DIR] [--check]
//
// Every run writes its outputs and a manifest.json into --out (default ".").
// Exit codes: 0 success, 2 usage, 3 infeasible placement, 4 runtime failure.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "covertlat/budget.hpp"
#include "covertlat/io.hpp"
#include "covertlat/isoperimetry.hpp"
#include "covertlat/placement.hpp"
#include "covertlat/ramsey.hpp"

#ifndef COVERTLAT_VERSION
#define COVERTLAT_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using covertlat::io::json;
using namespace covertlat;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kInfeasible = 3, kFailure = 4 };

/// Bad flag combination discovered after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Outputs of one command: file name (relative to --out) to contents, plus
/// text for stdout and the exit code.
struct RunResult {
    std::map<std::string, std::string> files;
    std::string stdout_text;
    int exit_code = kOk;
};

std::string fnv1a64(const std::string &data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_atomic(const fs::path &path, const std::string &contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write '" + tmp.string() + "'");
        }
        out << contents;
        if (!out.flush()) {
            throw Error("write to '" + tmp.string() + "' failed");
        }
    }
    fs::rename(tmp, path);
}

std::optional<std::uint64_t> env_seed() {
    const char *s = std::getenv("COVERTLAT_SEED");
    if (s == nullptr || *s == '\0') {
        return std::nullopt;
    }
    try {
        std::size_t used = 0;
        auto v = std::stoull(s, &used, 0);
        if (used != std::string(s).size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw UsageError(std::string("COVERTLAT_SEED is not an unsigned integer: '") + s + "'");
    }
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsConfig {
    std::string kind;
    std::string shape = "disk";
    int radius = 0;
    int size = 0;  // block side, or fixed random-set size (0: sizes 1-200)
    std::string which = "vertex";
    int count = 1;
    std::uint64_t seed = 1;
    bool json_out = false;

    json to_json() const {
        return json{{"kind", kind},   {"shape", shape}, {"radius", radius}, {"size", size},
                    {"which", which}, {"count", count}, {"seed", seed},     {"json", json_out}};
    }
    static BoundsConfig from_json(const json &j) {
        BoundsConfig c;
        c.kind = j.at("kind");
        c.shape = j.at("shape");
        c.radius = j.at("radius");
        c.size = j.at("size");
        c.which = j.at("which");
        c.count = j.at("count");
        c.seed = j.at("seed");
        c.json_out = j.at("json");
        return c;
    }
};

RunResult run_bounds(const BoundsConfig &c) {
    LatticeKind kind;
    BoundaryKind which;
    try {
        kind = parse_lattice_kind(c.kind);
        which = parse_boundary_kind(c.which);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
    std::vector<VertexSet> sets;
    if (c.shape == "disk") {
        if (!is_hex_family(kind)) {
            throw UsageError("--shape disk needs --kind hex or heavy-hex");
        }
        sets.push_back(hex_disk(c.radius, kind));
    } else if (c.shape == "diamond") {
        if (kind != LatticeKind::Square) {
            throw UsageError("--shape diamond needs --kind square");
        }
        sets.push_back(diamond(c.radius));
    } else if (c.shape == "block") {
        if (base_kind(kind) != LatticeKind::Square) {
            throw UsageError("--shape block needs --kind square or heavy-square");
        }
        if (c.size < 1) {
            throw UsageError("--shape block needs --size >= 1");
        }
        sets.push_back(square_block(0, 0, c.size, c.size, kind));
    } else if (c.shape == "random" || c.shape == "scatter") {
        if (c.count < 1) {
            throw UsageError("--count must be at least 1");
        }
        for (int t = 0; t < c.count; ++t) {
            Rng rng = make_stream(c.seed, {std::uint64_t(kind), std::uint64_t(t)});
            std::size_t n = c.size > 0 ? std::size_t(c.size) : 1 + uniform_index(rng, 200);
            sets.push_back(c.shape == "random" ? random_connected_set(kind, n, rng)
                                               : random_arbitrary_set(kind, n, rng));
        }
    } else {
        throw UsageError("unknown --shape '" + c.shape + "'");
    }

    std::string csv = std::string(io::kBoundCsvHeader) + "\n";
    json reports = json::array();
    bool all_ok = true;
    for (const auto &s : sets) {
        BoundReport r;
        try {
            r = evaluate_bound(s, which, kind);
        } catch (const UnsupportedKind &e) {
            throw UsageError(e.what());
        }
        all_ok = all_ok && r.satisfied;
        csv += io::csv_row(r) + "\n";
        reports.push_back(io::to_json(r));
    }
    RunResult out;
    out.files["bounds.csv"] = csv;
    if (c.json_out) {
        out.files["bounds.json"] = reports.dump(2) + "\n";
        out.stdout_text = reports.dump(2) + "\n";
    } else {
        out.stdout_text = csv;
    }
    if (!all_ok) {
        out.stdout_text += "error: isoperimetric bound violated\n";
        out.exit_code = kFailure;
    }
    return out;
}

// ---------------------------------------------------------------------------
// plan

struct PlanConfig {
    std::string device;
    std::size_t n = 1;
    bool json_out = false;
    bool ascii = false;

    json to_json() const {
        return json{{"device", device}, {"n", n}, {"json", json_out}, {"ascii", ascii}};
    }
    static PlanConfig from_json(const json &j) {
        PlanConfig c;
        c.device = j.at("device");
        c.n = j.at("n");
        c.json_out = j.at("json");
        c.ascii = j.at("ascii");
        return c;
    }
};

RunResult run_plan(const PlanConfig &c) {
    DeviceTopology device = io::load_device(c.device);
    RunResult out;
    Placement p;
    try {
        p = plan(device, c.n);
    } catch (const InfeasiblePlacement &e) {
        out.stdout_text = std::string("error: ") + e.what() + "\nlargest_feasible_n=" +
                          std::to_string(e.largest_feasible_n()) + "\n";
        out.exit_code = kInfeasible;
        return out;
    }
    EdgeSchedule schedule = schedule_edges(p, device);
    json doc = io::to_json(p);
    doc["device"] = device.name();
    doc["n"] = c.n;
    doc["overhead_bound"] = square_overhead_bound(c.n);
    doc["schedule"] = io::to_json(schedule);
    std::string ascii = render_ascii(device, p);
    out.files["placement.json"] = doc.dump(2) + "\n";
    out.files["placement.txt"] = ascii;
    if (c.json_out) {
        out.stdout_text += doc.dump(2) + "\n";
    }
    if (c.ascii) {
        out.stdout_text += ascii;
    }
    out.stdout_text += "overhead=" + std::to_string(p.overhead) + " bound=" +
                       io::format_double(square_overhead_bound(c.n)) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateConfig {
    std::string device;
    std::size_t n = 2;
    std::string experiment = "1";
    double zeta_nn = 0.0;
    double zeta_nn_sigma = 0.0;
    double zeta_lr = 0.0;
    double lr_decay = 0.5;
    std::uint64_t seed = 1;
    double t2_star = 20e-6;
    double jitter = 0.0;
    std::optional<double> threshold;
    int shots = 1024;
    double f_osc = 3.0e5;
    bool traces = false;

    json to_json() const {
        return json{{"device", device},
                    {"n", n},
                    {"experiment", experiment},
                    {"zeta_nn_hz", zeta_nn},
                    {"zeta_nn_sigma_hz", zeta_nn_sigma},
                    {"zeta_lr_hz", zeta_lr},
                    {"lr_decay", lr_decay},
                    {"seed", seed},
                    {"t2_star_s", t2_star},
                    {"detuning_jitter_hz", jitter},
                    {"threshold_hz", threshold ? json(*threshold) : json(nullptr)},
                    {"shots", shots},
                    {"f_osc_hz", f_osc},
                    {"traces", traces}};
    }
    static SimulateConfig from_json(const json &j) {
        SimulateConfig c;
        c.device = j.at("device");
        c.n = j.at("n");
        c.experiment = j.at("experiment");
        c.zeta_nn = j.at("zeta_nn_hz");
        c.zeta_nn_sigma = j.at("zeta_nn_sigma_hz");
        c.zeta_lr = j.at("zeta_lr_hz");
        c.lr_decay = j.at("lr_decay");
        c.seed = j.at("seed");
        c.t2_star = j.at("t2_star_s");
        c.jitter = j.at("detuning_jitter_hz");
        if (!j.at("threshold_hz").is_null()) {
            c.threshold = j.at("threshold_hz").get<double>();
        }
        c.shots = j.at("shots");
        c.f_osc = j.at("f_osc_hz");
        c.traces = j.at("traces");
        return c;
    }
};

RunResult run_simulate(const SimulateConfig &c) {
    DeviceTopology device = io::load_device(c.device);
    RunResult out;
    Placement p;
    try {
        p = plan(device, c.n);
    } catch (const InfeasiblePlacement &e) {
        out.stdout_text = std::string("error: ") + e.what() + "\nlargest_feasible_n=" +
                          std::to_string(e.largest_feasible_n()) + "\n";
        out.exit_code = kInfeasible;
        return out;
    }
    EdgeSchedule schedule = schedule_edges(p, device);
    ramsey::RamseyConfig cfg;
    cfg.seed = c.seed;
    cfg.shots = c.shots;
    cfg.f_osc_hz = c.f_osc;
    ramsey::ExperimentOptions opt;
    opt.device = device.name();
    opt.experiment = c.experiment;
    opt.t2_star_s = c.t2_star;
    opt.detuning_jitter_hz = c.jitter;
    opt.threshold_hz = c.threshold;
    opt.keep_traces = c.traces;
    ramsey::CrosstalkModel model{c.zeta_nn, c.zeta_nn_sigma, c.zeta_lr, c.lr_decay};
    auto result = ramsey::run_experiment(device, p, schedule, model, cfg, opt);

    out.files["records.csv"] = io::records_csv(device.name(), c.experiment, result.records);
    out.files["summary.csv"] = io::summary_csv({result.summary});
    if (c.traces) {
        out.files["traces.csv"] = io::traces_csv(result.traces);
    }
    out.stdout_text = "threshold_hz=" + io::format_double(result.threshold_hz) + "\n" + out.files["summary.csv"];
    return out;
}

// ---------------------------------------------------------------------------
// budget

struct BudgetConfig {
    double delta = 0.0;
    std::optional<std::uint64_t> k;
    std::optional<double> target;

    json to_json() const {
        return json{{"delta", delta}, {"k", k ? json(*k) : json(nullptr)},
                    {"target", target ? json(*target) : json(nullptr)}};
    }
    static BudgetConfig from_json(const json &j) {
        BudgetConfig c;
        c.delta = j.at("delta");
        if (!j.at("k").is_null()) {
            c.k = j.at("k").get<std::uint64_t>();
        }
        if (!j.at("target").is_null()) {
            c.target = j.at("target").get<double>();
        }
        return c;
    }
};

RunResult run_budget(const BudgetConfig &c) {
    if (!c.k && !c.target) {
        throw UsageError("budget needs --k or --target");
    }
    if (c.delta < 0.0 || (c.target && *c.target < 0.0)) {
        throw UsageError("budget inputs must be nonnegative");
    }
    if (c.k && *c.k < 1) {
        throw UsageError("--k must be at least 1");
    }
    json doc;
    if (c.k) {
        doc = io::to_json(k_shot_budget(c.delta, *c.k));
    } else {
        doc = json{{"delta", c.delta}, {"delta_qre", 8.0 * c.delta * c.delta}};
    }
    if (c.target) {
        doc["target"] = *c.target;
        doc["max_shots"] = max_shots(c.delta, *c.target);
    }
    RunResult out;
    out.files["budget.json"] = doc.dump(2) + "\n";
    out.stdout_text = out.files["budget.json"];
    return out;
}

// ---------------------------------------------------------------------------
// Dispatch and manifests.

RunResult run_command(const std::string &command, const json &config) {
    if (command == "bounds") {
        return run_bounds(BoundsConfig::from_json(config));
    }
    if (command == "plan") {
        return run_plan(PlanConfig::from_json(config));
    }
    if (command == "simulate") {
        return run_simulate(SimulateConfig::from_json(config));
    }
    if (command == "budget") {
        return run_budget(BudgetConfig::from_json(config));
    }
    throw UsageError("unknown command '" + command + "'");
}

std::vector<std::string> input_files(const std::string &command, const json &config) {
    if (command == "plan" || command == "simulate") {
        return {config.at("device").get<std::string>()};
    }
    return {};
}

/// Runs a command, writes its files and manifest into `out_dir`, and prints
/// its stdout text.
int execute(const std::string &command, const json &config, const fs::path &out_dir,
            const std::vector<std::string> &argv, std::map<std::string, std::string> *hashes = nullptr) {
    RunResult result = run_command(command, config);
    std::cout << result.stdout_text;
    if (result.exit_code == kInfeasible) {
        return result.exit_code;
    }
    fs::create_directories(out_dir);
    json manifest;
    manifest["tool"] = "covertlat";
    manifest["version"] = COVERTLAT_VERSION;
    manifest["command"] = command;
    manifest["argv"] = argv;
    manifest["config"] = config;
    manifest["seed"] = config.contains("seed") ? config.at("seed") : json(nullptr);
    json inputs = json::object();
    for (const auto &path : input_files(command, config)) {
        inputs[path] = fnv1a64(io::read_file(path));
    }
    manifest["inputs"] = inputs;
    json outputs = json::object();
    for (const auto &[name, contents] : result.files) {
        write_atomic(out_dir / name, contents);
        if (hashes) {
            (*hashes)[name] = fnv1a64(contents);
        }
        outputs[name] = {{"path", (out_dir / name).string()}, {"fnv1a64", fnv1a64(contents)}};
    }
    manifest["outputs"] = outputs;
    write_atomic(out_dir / "manifest.json", manifest.dump(2) + "\n");
    return result.exit_code;
}

int replay(const std::string &manifest_path, const std::optional<std::string> &out_dir, bool check) {
    json m;
    try {
        m = json::parse(io::read_file(manifest_path));
    } catch (const json::exception &e) {
        throw UsageError(std::string("unreadable manifest: ") + e.what());
    }
    std::string command = m.at("command");
    const json &config = m.at("config");
    for (const auto &[path, hash] : m.at("inputs").items()) {
        if (fnv1a64(io::read_file(path)) != hash.get<std::string>()) {
            std::cerr << "error: input '" << path << "' changed since the manifest was written\n";
            return kFailure;
        }
    }
    fs::path dir = out_dir ? fs::path(*out_dir) : fs::path(manifest_path).parent_path();
    if (dir.empty()) {
        dir = ".";
    }
    std::vector<std::string> argv = m.at("argv");
    std::map<std::string, std::string> hashes;
    int code = execute(command, config, dir, argv, &hashes);
    if (check) {
        for (const auto &[name, entry] : m.at("outputs").items()) {
            auto it = hashes.find(name);
            if (it == hashes.end() || it->second != entry.at("fnv1a64").get<std::string>()) {
                std::cerr << "error: output '" << name << "' differs from the manifest\n";
                return kFailure;
            }
        }
        std::cerr << "replay check: all outputs identical\n";
    }
    return code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Covert placement planning, Ramsey detection simulation and covertness budgets."};
    app.set_version_flag("--version", COVERTLAT_VERSION);
    app.require_subcommand(1);
    std::string out_dir = ".";

    BoundsConfig bc;
    auto *bounds = app.add_subcommand("bounds", "Check isoperimetric bounds on lattice vertex sets");
    bounds->add_option("--kind", bc.kind, "square | hex | heavy-hex | heavy-square")->required();
    bounds->add_option("--shape", bc.shape, "disk | diamond | block | random | scatter")->capture_default_str();
    bounds->add_option("--radius", bc.radius, "disk or diamond radius")->check(CLI::NonNegativeNumber);
    bounds->add_option("--size", bc.size, "block side, or fixed size of random sets")->check(CLI::NonNegativeNumber);
    bounds->add_option("--which", bc.which, "vertex | edge")->capture_default_str();
    bounds->add_option("--count", bc.count, "number of random sets")->check(CLI::PositiveNumber);
    bounds->add_option("--seed", bc.seed, "random seed (COVERTLAT_SEED overrides)");
    bounds->add_flag("--json", bc.json_out, "print JSON instead of CSV");
    bounds->add_option("--out", out_dir, "output directory")->capture_default_str();

    PlanConfig pc;
    auto *plan_cmd = app.add_subcommand("plan", "Plan a buffered placement on a device");
    plan_cmd->add_option("device", pc.device, "device JSON file")->required()->check(CLI::ExistingFile);
    plan_cmd->add_option("--n", pc.n, "computational qubits")->required()->check(CLI::PositiveNumber);
    plan_cmd->add_flag("--json", pc.json_out, "print the placement JSON");
    plan_cmd->add_flag("--ascii", pc.ascii, "print the lattice map");
    plan_cmd->add_option("--out", out_dir, "output directory")->capture_default_str();

    SimulateConfig sc;
    std::optional<double> threshold;
    auto *sim = app.add_subcommand("simulate", "Simulate the spectator Ramsey experiment");
    sim->add_option("device", sc.device, "device JSON file")->required()->check(CLI::ExistingFile);
    sim->add_option("--n", sc.n, "computational qubits")->required()->check(CLI::PositiveNumber);
    sim->add_option("--experiment", sc.experiment, "experiment label")->capture_default_str();
    sim->add_option("--zeta-nn", sc.zeta_nn, "NN detuning shift in Hz");
    sim->add_option("--zeta-nn-sigma", sc.zeta_nn_sigma, "spread of the NN shift in Hz")
        ->check(CLI::NonNegativeNumber);
    sim->add_option("--zeta-lr", sc.zeta_lr, "long-range shift in Hz at two hops");
    sim->add_option("--lr-decay", sc.lr_decay, "long-range decay per extra hop")->capture_default_str();
    sim->add_option("--seed", sc.seed, "random seed (COVERTLAT_SEED overrides)");
    sim->add_option("--t2", sc.t2_star, "T2* in seconds")->check(CLI::PositiveNumber)->capture_default_str();
    sim->add_option("--jitter", sc.jitter, "per-run detuning jitter in Hz")->check(CLI::NonNegativeNumber);
    sim->add_option("--threshold", threshold, "fixed detection threshold in Hz (default: calibrate)")
        ->check(CLI::NonNegativeNumber);
    sim->add_option("--shots", sc.shots, "shots per delay")->check(CLI::PositiveNumber)->capture_default_str();
    sim->add_flag("--traces", sc.traces, "also write traces.csv");
    sim->add_option("--out", out_dir, "output directory")->capture_default_str();

    BudgetConfig budc;
    std::optional<std::uint64_t> k;
    std::optional<double> target;
    auto *bud = app.add_subcommand("budget", "Multi-shot covertness budget");
    bud->add_option("--delta", budc.delta, "per-shot covertness parameter")->required()->check(
        CLI::NonNegativeNumber);
    bud->add_option("--k", k, "shot count")->check(CLI::PositiveNumber);
    bud->add_option("--target", target, "total covertness target")->check(CLI::NonNegativeNumber);
    bud->add_option("--out", out_dir, "output directory")->capture_default_str();

    std::string manifest;
    std::optional<std::string> replay_out;
    bool check = false;
    auto *rep = app.add_subcommand("replay", "Re-run a command from its manifest");
    rep->add_option("--manifest", manifest, "manifest.json path")->required()->check(CLI::ExistingFile);
    rep->add_option("--out", replay_out, "output directory (default: the manifest's directory)");
    rep->add_flag("--check", check, "fail unless every output matches the manifest hashes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    std::vector<std::string> args(argv, argv + argc);
    try {
        auto seed = env_seed();
        if (*bounds) {
            if (seed) {
                bc.seed = *seed;
            }
            return execute("bounds", bc.to_json(), out_dir, args);
        }
        if (*plan_cmd) {
            pc.device = fs::absolute(pc.device).string();
            return execute("plan", pc.to_json(), out_dir, args);
        }
        if (*sim) {
            if (seed) {
                sc.seed = *seed;
            }
            sc.threshold = threshold;
            sc.device = fs::absolute(sc.device).string();
            return execute("simulate", sc.to_json(), out_dir, args);
        }
        if (*bud) {
            budc.k = k;
            budc.target = target;
            return execute("budget", budc.to_json(), out_dir, args);
        }
        if (*rep) {
            return replay(manifest, replay_out, check);
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const InfeasiblePlacement &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}
