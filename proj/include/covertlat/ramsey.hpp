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

/// Spectator Ramsey detection: shot-sampled decaying-cosine signals, a
/// multi-start Levenberg-Marquardt fit of the detuning, threshold detection,
/// and per-experiment aggregation of NN and non-NN detections.
///
/// Signal model, with the detuning in Hz:
///
///     P0(tau) = offset + amplitude * exp(-gamma * tau) * cos(2 pi delta tau)
///
/// offset = amplitude = 1/2 gives the ideal Ramsey fringe.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "covertlat/errors.hpp"
#include "covertlat/placement.hpp"
#include "covertlat/random.hpp"

namespace covertlat::ramsey {

inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = count == 1 ? lo : lo + (hi - lo) * double(k) / double(count - 1);
    }
    return out;
}

struct RamseyConfig {
    std::vector<double> tau_points = linspace(0.0, 11e-6, 39);  // seconds
    double f_osc_hz = 3.0e5;
    int shots = 1024;
    std::uint64_t seed = 0;

    void validate() const {
        if (shots < 1) {
            throw PreconditionError("shots must be at least 1");
        }
        if (tau_points.empty()) {
            throw PreconditionError("at least one delay is required");
        }
        for (std::size_t k = 0; k < tau_points.size(); ++k) {
            if (tau_points[k] < 0.0 || (k > 0 && !(tau_points[k] > tau_points[k - 1]))) {
                throw PreconditionError("delays must be nonnegative and strictly increasing");
            }
        }
    }
};

struct SignalParams {
    double delta_hz = 0.0;
    double gamma = 0.0;  // 1/s, the inverse of T2*
    double amplitude = 0.5;
    double offset = 0.5;

    void validate() const {
        if (!(gamma >= 0.0)) {
            throw PreconditionError("dephasing rate must be nonnegative");
        }
        if (offset - std::abs(amplitude) < -1e-12 || offset + std::abs(amplitude) > 1.0 + 1e-12) {
            throw PreconditionError("offset +- amplitude must stay within [0, 1]");
        }
    }
};

inline double model_probability(const SignalParams &p, double tau) {
    if (tau < 0.0) {
        throw PreconditionError("delay must be nonnegative");
    }
    double envelope = p.gamma == 0.0 ? 1.0 : std::exp(-p.gamma * tau);
    double v = p.offset + p.amplitude * envelope * std::cos(2.0 * std::numbers::pi * p.delta_hz * tau);
    return std::clamp(v, 0.0, 1.0);
}

struct Sample {
    double tau = 0.0;
    int count = 0;  // shots that returned |0>
};

/// One shot-sampled sweep. Each shot compares its own uniform draw against the
/// model probability, so for a fixed stream counts are monotone in the
/// probability at every delay.
inline std::vector<Sample> simulate(const SignalParams &params, const RamseyConfig &cfg, Rng &rng) {
    cfg.validate();
    params.validate();
    std::vector<Sample> out;
    out.reserve(cfg.tau_points.size());
    for (double tau : cfg.tau_points) {
        double p = model_probability(params, tau);
        int count = 0;
        for (int s = 0; s < cfg.shots; ++s) {
            count += uniform01(rng) < p ? 1 : 0;
        }
        out.push_back(Sample{tau, count});
    }
    return out;
}

inline std::vector<Sample> simulate(const SignalParams &params, const RamseyConfig &cfg) {
    Rng rng(stream_seed(cfg.seed, {}));
    return simulate(params, cfg, rng);
}

struct FitOptions {
    int starts = 8;            // detuning starts spread over [0, 2 f_osc]
    int scan_points = 17;      // local detuning scan around each start
    bool weighted = false;     // binomial 1/variance weights
    int max_iterations = 300;
    double min_amplitude = 0.05;
};

struct FitResult {
    SignalParams params;
    bool converged = false;
    bool decoherence_like = false;  // no resolvable oscillation
    double residual = 0.0;          // RMS of p_hat - model
    int iterations = 0;
};

namespace detail {

// Internal units: microseconds and MHz keep every parameter of order one.
struct Problem {
    std::vector<double> t;  // us
    std::vector<double> y;
    std::vector<double> w;
};

using Vec4 = std::array<double, 4>;  // offset, amplitude, gamma (1/us), delta (MHz)

inline double cost(const Problem &pr, const Vec4 &x) {
    double c = 0.0;
    for (std::size_t k = 0; k < pr.t.size(); ++k) {
        double e = std::exp(-x[2] * pr.t[k]);
        double m = x[0] + x[1] * e * std::cos(2.0 * std::numbers::pi * x[3] * pr.t[k]);
        double r = pr.y[k] - m;
        c += pr.w[k] * r * r;
    }
    return c;
}

/// Best offset/amplitude for fixed gamma and delta; returns the cost.
inline double project_linear(const Problem &pr, Vec4 &x) {
    double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
    for (std::size_t k = 0; k < pr.t.size(); ++k) {
        double f = std::exp(-x[2] * pr.t[k]) * std::cos(2.0 * std::numbers::pi * x[3] * pr.t[k]);
        double w = pr.w[k];
        s11 += w;
        s12 += w * f;
        s22 += w * f * f;
        b1 += w * pr.y[k];
        b2 += w * f * pr.y[k];
    }
    double det = s11 * s22 - s12 * s12;
    if (std::abs(det) < 1e-14 * std::max(1.0, s11 * s22)) {
        x[0] = b1 / s11;
        x[1] = 0.0;
    } else {
        x[0] = (b1 * s22 - b2 * s12) / det;
        x[1] = (s11 * b2 - s12 * b1) / det;
    }
    return cost(pr, x);
}

/// Solves the 4x4 system a * x = b by Gaussian elimination with partial
/// pivoting. Returns false when singular.
inline bool solve4(std::array<std::array<double, 4>, 4> a, Vec4 b, Vec4 &x) {
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) {
                piv = r;
            }
        }
        if (std::abs(a[piv][col]) < 1e-300) {
            return false;
        }
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < 4; ++r) {
            double f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    for (int r = 3; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 4; ++c) {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    return true;
}

struct LmOutcome {
    Vec4 x;
    double cost;
    int iterations;
    bool converged;
};

inline LmOutcome levenberg_marquardt(const Problem &pr, Vec4 x, double gamma_max, int max_iterations) {
    double c = cost(pr, x);
    double lambda = 1e-3;
    int it = 0;
    bool converged = false;
    for (; it < max_iterations; ++it) {
        std::array<std::array<double, 4>, 4> jtj{};
        Vec4 g{};
        for (std::size_t k = 0; k < pr.t.size(); ++k) {
            double t = pr.t[k];
            double e = std::exp(-x[2] * t);
            double ph = 2.0 * std::numbers::pi * x[3] * t;
            double co = std::cos(ph);
            double si = std::sin(ph);
            double m = x[0] + x[1] * e * co;
            double r = pr.y[k] - m;
            Vec4 j{1.0, e * co, -t * x[1] * e * co, -2.0 * std::numbers::pi * t * x[1] * e * si};
            for (int a = 0; a < 4; ++a) {
                g[a] += pr.w[k] * j[a] * r;
                for (int b = 0; b < 4; ++b) {
                    jtj[a][b] += pr.w[k] * j[a] * j[b];
                }
            }
        }
        bool stepped = false;
        while (lambda < 1e12) {
            auto a = jtj;
            for (int d = 0; d < 4; ++d) {
                a[d][d] += lambda * std::max(jtj[d][d], 1e-12);
            }
            Vec4 step{};
            if (!solve4(a, g, step)) {
                lambda *= 10;
                continue;
            }
            Vec4 trial = x;
            for (int d = 0; d < 4; ++d) {
                trial[d] += step[d];
            }
            trial[2] = std::clamp(trial[2], 0.0, gamma_max);
            double ct = cost(pr, trial);
            if (ct < c) {
                double decrease = c - ct;
                double rel_step = 0.0;
                for (int d = 0; d < 4; ++d) {
                    rel_step = std::max(rel_step, std::abs(trial[d] - x[d]) / (std::abs(x[d]) + 1e-6));
                }
                x = trial;
                c = ct;
                lambda = std::max(lambda / 10, 1e-12);
                stepped = true;
                if (decrease <= 1e-14 * c + 1e-300 || rel_step < 1e-13) {
                    converged = true;
                }
                break;
            }
            lambda *= 10;
        }
        if (!stepped) {
            // No descent direction left at working precision: a stationary point.
            converged = true;
        }
        if (converged) {
            break;
        }
    }
    return LmOutcome{x, c, it, converged};
}

/// Sampling rate of evenly spaced delays, or nothing when the spacing varies.
inline std::optional<double> uniform_sampling_rate(const std::vector<double> &t) {
    if (t.size() < 2) {
        return std::nullopt;
    }
    double step = (t.back() - t.front()) / double(t.size() - 1);
    for (std::size_t k = 1; k < t.size(); ++k) {
        if (std::abs(t[k] - t[k - 1] - step) > 1e-9 * step) {
            return std::nullopt;
        }
    }
    return 1.0 / step;
}

}  // namespace detail

/// Least-squares fit of the signal model to empirical probabilities
/// count / shots. Each detuning start is refined by a short scan of the
/// linearly-projected cost, then polished by Levenberg-Marquardt; the start
/// with the smallest cost wins.
inline FitResult fit(const std::vector<Sample> &data, const RamseyConfig &cfg, const FitOptions &opt = {}) {
    if (data.size() < 5) {
        throw PreconditionError("a Ramsey fit needs at least five delays");
    }
    if (cfg.shots < 1) {
        throw PreconditionError("shots must be at least 1");
    }
    detail::Problem pr;
    double n = double(cfg.shots);
    for (const auto &s : data) {
        double p = double(s.count) / n;
        pr.t.push_back(s.tau * 1e6);
        pr.y.push_back(p);
        pr.w.push_back(opt.weighted ? 1.0 / std::max(p * (1.0 - p) / n, 1.0 / (n * n)) : 1.0);
    }
    double t_max = *std::max_element(pr.t.begin(), pr.t.end());
    if (!(t_max > 0.0)) {
        throw PreconditionError("delays must span a positive interval");
    }

    FitResult result;
    bool constant = std::all_of(data.begin(), data.end(), [&](const Sample &s) { return s.count == data[0].count; });
    if (constant) {
        result.params = SignalParams{0.0, std::numeric_limits<double>::infinity(), 0.0, pr.y[0]};
        result.converged = false;
        result.decoherence_like = true;
        return result;
    }

    const double gamma_max = 50.0 / t_max;
    const double f_span = 2.0 * cfg.f_osc_hz * 1e-6;
    const int starts = std::max(opt.starts, 1);
    const double spacing = starts > 1 ? f_span / (starts - 1) : f_span;
    const double gamma0 = 1.0 / t_max;

    std::optional<detail::LmOutcome> best;
    for (int k = 0; k < starts; ++k) {
        double f0 = starts > 1 ? spacing * k : 0.5 * f_span;
        detail::Vec4 x{0.5, 0.5, gamma0, f0};
        double best_scan = std::numeric_limits<double>::infinity();
        detail::Vec4 seed = x;
        for (int s = 0; s < opt.scan_points; ++s) {
            double f = f0 - spacing / 2 + spacing * (s + 0.5) / opt.scan_points;
            if (f < 0.0) {
                continue;
            }
            detail::Vec4 trial{0.0, 0.0, gamma0, f};
            double c = detail::project_linear(pr, trial);
            if (c < best_scan) {
                best_scan = c;
                seed = trial;
            }
        }
        auto out = detail::levenberg_marquardt(pr, seed, gamma_max, opt.max_iterations);
        if (!best || out.cost < best->cost) {
            best = out;
        }
    }

    auto x = best->x;
    x[3] = std::abs(x[3]);
    // On a uniform delay grid every detuning f + k * f_s fits identically;
    // report the alias in the principal band [0, f_s / 2].
    if (auto fs = detail::uniform_sampling_rate(pr.t)) {
        x[3] = std::fmod(x[3], *fs);
        x[3] = std::min(x[3], *fs - x[3]);
    }
    result.params.offset = x[0];
    result.params.amplitude = x[1];
    result.params.gamma = x[2] * 1e6;
    result.params.delta_hz = x[3] * 1e6;
    result.iterations = best->iterations;
    double sq = 0.0;
    for (std::size_t k = 0; k < pr.t.size(); ++k) {
        double m = x[0] + x[1] * std::exp(-x[2] * pr.t[k]) * std::cos(2.0 * std::numbers::pi * x[3] * pr.t[k]);
        sq += (pr.y[k] - m) * (pr.y[k] - m);
    }
    result.residual = std::sqrt(sq / double(pr.t.size()));
    bool at_bound = x[2] >= gamma_max * (1.0 - 1e-9);
    result.decoherence_like = at_bound || std::abs(x[1]) < opt.min_amplitude;
    result.converged = best->converged && !result.decoherence_like;
    return result;
}

// ---------------------------------------------------------------------------
// Detection.

struct Detection {
    double shift_hz = 0.0;
    bool detected = false;
    bool fit_ok = false;
};

/// Shift of the active detuning from a baseline detuning; detected when the
/// magnitude strictly exceeds the threshold.
inline Detection detect(double baseline_delta_hz, const FitResult &active, double threshold_hz,
                        bool baseline_ok = true) {
    Detection d;
    d.fit_ok = baseline_ok && active.converged;
    d.shift_hz = active.params.delta_hz - baseline_delta_hz;
    d.detected = d.fit_ok && std::abs(d.shift_hz) > threshold_hz;
    return d;
}

inline Detection detect(const FitResult &baseline, const FitResult &active, double threshold_hz) {
    return detect(baseline.params.delta_hz, active, threshold_hz, baseline.converged);
}

/// Twice the population standard deviation of second-minus-first detunings
/// over baseline pairs where both fits converged.
inline double calibrate_threshold(const std::vector<std::pair<FitResult, FitResult>> &pairs) {
    std::vector<double> diffs;
    for (const auto &[a, b] : pairs) {
        if (a.converged && b.converged) {
            diffs.push_back(b.params.delta_hz - a.params.delta_hz);
        }
    }
    if (diffs.size() < 2) {
        throw PreconditionError("threshold calibration needs at least two converged baseline pairs");
    }
    double mean = 0.0;
    for (double d : diffs) {
        mean += d;
    }
    mean /= double(diffs.size());
    double var = 0.0;
    for (double d : diffs) {
        var += (d - mean) * (d - mean);
    }
    var /= double(diffs.size());
    return 2.0 * std::sqrt(var);
}

/// Per-run detuning jitter whose calibrated threshold is `threshold_hz`
/// (shot noise neglected): the baseline difference of two runs has standard
/// deviation sqrt(2) times the jitter.
inline double jitter_for_threshold(double threshold_hz) {
    return threshold_hz / (2.0 * std::numbers::sqrt2);
}

// ---------------------------------------------------------------------------
// Experiments.

/// Injected detuning shifts. NN spectators shift by zeta_nn (plus an optional
/// Gaussian spread per spectator and edge set); spectators h >= 2 hops from
/// the nearest active qubit shift by zeta_lr * lr_decay^(h - 2).
struct CrosstalkModel {
    double zeta_nn_hz = 0.0;
    double zeta_nn_sigma_hz = 0.0;
    double zeta_lr_hz = 0.0;
    double lr_decay = 0.5;
};

inline double gaussian(Rng &rng) {
    // Box-Muller on the portable uniform source.
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline double injected_shift(const CrosstalkModel &model, Proximity proximity, int hops, Rng &rng) {
    if (proximity == Proximity::NN) {
        double spread = model.zeta_nn_sigma_hz > 0.0 ? model.zeta_nn_sigma_hz * gaussian(rng) : 0.0;
        return model.zeta_nn_hz + spread;
    }
    if (model.zeta_lr_hz == 0.0 || hops < 2) {
        return 0.0;
    }
    return model.zeta_lr_hz * std::pow(model.lr_decay, hops - 2);
}

struct ExperimentOptions {
    std::string device;
    std::string experiment = "1";
    double t2_star_s = 20e-6;
    double detuning_jitter_hz = 0.0;
    std::optional<double> threshold_hz;  // calibrated from the baselines when absent
    double cz_gate_time_s = 100e-9;
    FitOptions fit;
    bool keep_traces = false;
};

struct RamseyRecord {
    int qubit = 0;
    std::size_t edge_set = 0;
    double baseline_delta_hz = 0.0;
    double active_delta_hz = 0.0;
    double shift_hz = 0.0;
    bool detected = false;
    Proximity nn = Proximity::NonNN;
    bool fit_ok = false;
    double injected_shift_hz = 0.0;
    std::size_t cz_gates = 0;  // CZ repetitions that fit in the longest delay
};

struct SummaryRow {
    std::string experiment;
    std::size_t n = 0;
    std::size_t nn_detected = 0;
    std::size_t nn_total = 0;
    std::size_t nonnn_detected = 0;
    std::size_t nonnn_total = 0;
};

struct TracePoint {
    int qubit = 0;
    std::string run;  // "baseline1", "baseline2" or "active<k>"
    double tau = 0.0;
    double p_hat = 0.0;
    double p_fit = 0.0;
};

struct ExperimentResult {
    std::vector<RamseyRecord> records;
    SummaryRow summary;
    double threshold_hz = 0.0;
    std::vector<std::pair<FitResult, FitResult>> baseline_pairs;
    std::vector<TracePoint> traces;
};

namespace detail {

enum : std::uint64_t { kRoleBaseline1 = 1, kRoleBaseline2 = 2, kRoleActive = 3, kRoleCrosstalk = 4 };

inline FitResult run_once(double delta_hz, const ExperimentOptions &opt, const RamseyConfig &cfg, Rng &rng,
                          int qubit, const std::string &run, std::vector<TracePoint> *traces) {
    double jitter = opt.detuning_jitter_hz > 0.0 ? opt.detuning_jitter_hz * gaussian(rng) : 0.0;
    SignalParams truth{std::max(0.0, delta_hz + jitter), 1.0 / opt.t2_star_s, 0.5, 0.5};
    auto data = simulate(truth, cfg, rng);
    FitResult f = fit(data, cfg, opt.fit);
    if (traces) {
        for (const auto &s : data) {
            double p_fit = std::isfinite(f.params.gamma)
                               ? f.params.offset + f.params.amplitude * std::exp(-f.params.gamma * s.tau) *
                                                       std::cos(2.0 * std::numbers::pi * f.params.delta_hz * s.tau)
                               : f.params.offset;
            traces->push_back(TracePoint{qubit, run, s.tau, double(s.count) / cfg.shots, p_fit});
        }
    }
    return f;
}

}  // namespace detail

/// Simulates two baseline sweeps per spectator, then one active sweep per
/// (spectator, edge set) with the model's injected shift, and aggregates
/// detections. The baseline detuning of a spectator is the mean of its
/// converged baseline fits. Every sweep draws from its own stream derived
/// from (seed, qubit, edge set, role).
inline ExperimentResult run_experiment(const DeviceTopology &device, const Placement &placement,
                                       const EdgeSchedule &schedule, const CrosstalkModel &model,
                                       const RamseyConfig &cfg, const ExperimentOptions &opt = {}) {
    cfg.validate();
    if (!(opt.t2_star_s > 0.0)) {
        throw PreconditionError("T2* must be positive");
    }
    ExperimentResult result;
    std::vector<TracePoint> *traces = opt.keep_traces ? &result.traces : nullptr;
    const auto spectators = placement.spectators();

    struct Baseline {
        double delta = 0.0;
        bool ok = false;
    };
    std::map<int, Baseline> baselines;
    for (int q : spectators) {
        auto uq = std::uint64_t(std::uint32_t(q));
        Rng r1 = make_stream(cfg.seed, {uq, 0, detail::kRoleBaseline1});
        Rng r2 = make_stream(cfg.seed, {uq, 0, detail::kRoleBaseline2});
        FitResult b1 = detail::run_once(cfg.f_osc_hz, opt, cfg, r1, q, "baseline1", traces);
        FitResult b2 = detail::run_once(cfg.f_osc_hz, opt, cfg, r2, q, "baseline2", traces);
        Baseline b;
        double sum = 0.0;
        int used = 0;
        for (const FitResult *f : {&b1, &b2}) {
            if (f->converged) {
                sum += f->params.delta_hz;
                ++used;
            }
        }
        b.ok = used > 0;
        b.delta = used > 0 ? sum / used : 0.0;
        baselines[q] = b;
        result.baseline_pairs.emplace_back(std::move(b1), std::move(b2));
    }
    result.threshold_hz = opt.threshold_hz ? *opt.threshold_hz : calibrate_threshold(result.baseline_pairs);

    const double max_tau = cfg.tau_points.back();
    const auto cz_gates = std::size_t(std::floor(max_tau / opt.cz_gate_time_s + 1e-9));
    result.summary.experiment = opt.experiment;
    result.summary.n = placement.computational.size();
    for (std::size_t e = 0; e < schedule.sets.size(); ++e) {
        auto proximity = classify_spectators(placement, schedule, device, e);
        std::set<int> active;
        for (const auto &[a, b] : schedule.sets[e]) {
            active.insert(a);
            active.insert(b);
        }
        auto hops = hop_distances(device, active);
        for (int q : spectators) {
            auto uq = std::uint64_t(std::uint32_t(q));
            Rng xt = make_stream(cfg.seed, {uq, e, detail::kRoleCrosstalk});
            Rng ra = make_stream(cfg.seed, {uq, e, detail::kRoleActive});
            auto h = hops.find(q);
            int hop = h == hops.end() ? std::numeric_limits<int>::max() : h->second;
            double shift = injected_shift(model, proximity.at(q), hop, xt);
            FitResult a = detail::run_once(cfg.f_osc_hz + shift, opt, cfg, ra, q, "active" + std::to_string(e),
                                           traces);
            const Baseline &b = baselines.at(q);
            Detection d = detect(b.delta, a, result.threshold_hz, b.ok);
            RamseyRecord rec;
            rec.qubit = q;
            rec.edge_set = e;
            rec.baseline_delta_hz = b.delta;
            rec.active_delta_hz = a.params.delta_hz;
            rec.shift_hz = d.shift_hz;
            rec.detected = d.detected;
            rec.nn = proximity.at(q);
            rec.fit_ok = d.fit_ok;
            rec.injected_shift_hz = shift;
            rec.cz_gates = cz_gates;
            result.records.push_back(rec);
            if (!rec.fit_ok) {
                continue;
            }
            if (rec.nn == Proximity::NN) {
                ++result.summary.nn_total;
                result.summary.nn_detected += rec.detected ? 1 : 0;
            } else {
                ++result.summary.nonnn_total;
                result.summary.nonnn_detected += rec.detected ? 1 : 0;
            }
        }
    }
    return result;
}

}  // namespace covertlat::ramsey
