#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "clifford.hpp"
#include "matrix.hpp"
#include "noise.hpp"
#include "parallel.hpp"
#include "two_qubit.hpp"

namespace geomgate {

// Which dimensionless channel a 1/f trace drives.
enum class OneOverFChannel { delta, epsilon, both };

struct RBConfig {
    Flavor flavor = Flavor::dynamical;
    NoiseModel noise = NoiseModel::make_static(0.0, 0.0);
    OneOverFChannel channel = OneOverFChannel::delta;
    std::vector<int> lengths = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    int sequences_per_length = 20;       // K
    int realizations_per_sequence = 50;  // M
    std::uint64_t root_seed = 1;
    double rabi = 2.0 * std::numbers::pi;  // Omega-bar: one loop per time unit
    int steps_per_segment = 32;            // minimum sub-steps for 1/f traces
    unsigned workers = 0;

    void check() const {
        if (lengths.empty()) throw std::invalid_argument("RBConfig: no lengths");
        int prev = 0;
        for (int n : lengths) {
            if (n < 1 || n <= prev)
                throw std::invalid_argument("RBConfig: lengths must be strictly increasing, >= 1");
            prev = n;
        }
        if (sequences_per_length < 1 || realizations_per_sequence < 1)
            throw std::invalid_argument("RBConfig: counts must be >= 1");
        if (!(rabi > 0)) throw std::invalid_argument("RBConfig: rabi <= 0");
        if (steps_per_segment < 1) throw std::invalid_argument("RBConfig: steps < 1");
    }
};

// sub-step grid for trace-driven evolution: the shortest Clifford segment
// (area pi/2) gets steps_per_segment samples
inline double rb_trace_dt(const RBConfig& cfg) {
    return (std::numbers::pi / 2) / cfg.rabi / cfg.steps_per_segment;
}

// Default 1/f band, shared by every flavor and sequence length of one study:
// omega_ir spans the total RB sequence duration, counted as n_max Rabi loops
// (n_max * t0 at the reference Rabi); omega_uv is the sub-step Nyquist.
inline std::pair<double, double> rb_default_band(const RBConfig& cfg) {
    if (cfg.lengths.empty()) throw std::invalid_argument("rb_default_band: no lengths");
    const double t_band =
        static_cast<double>(cfg.lengths.back()) * (2.0 * std::numbers::pi / cfg.rabi);
    return {2.0 * std::numbers::pi / t_band, std::numbers::pi / rb_trace_dt(cfg)};
}

struct RBPoint {
    int n = 0;
    double mean_fidelity = 0.0;
    double standard_error = 0.0;
};

struct RBResult {
    std::vector<RBPoint> points;
    double fitted_d = 0.0;
    double fit_residual = 0.0;
};

// Single-parameter least squares against (1 + e^{-d n})/2; log-linear start,
// then Gauss-Newton. Returns (d, rms residual); d = -1 flags non-convergence.
inline std::pair<double, double> fit_decay(const std::vector<std::pair<int, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_decay: need >= 3 points");
    {
        int distinct = 1;
        for (std::size_t i = 1; i < points.size(); ++i)
            if (points[i].first != points[0].first) ++distinct;
        if (distinct < 3) throw std::invalid_argument("fit_decay: need >= 3 distinct lengths");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t used = 0;
    for (const auto& [n, f] : points) {
        const double y = 2.0 * f - 1.0;
        if (y <= 1e-12) continue;
        const double ly = std::log(y);
        sx += n;
        sy += ly;
        sxx += static_cast<double>(n) * n;
        sxy += n * ly;
        ++used;
    }
    double d = 0.0;
    if (used >= 2) {
        const double denom = static_cast<double>(used) * sxx - sx * sx;
        if (denom > 0) d = -(static_cast<double>(used) * sxy - sx * sy) / denom;
    }
    if (!(d > 0)) d = 1e-6;

    auto rms = [&](double dd) {
        double s = 0;
        for (const auto& [n, f] : points) {
            const double r = 0.5 * (1.0 + std::exp(-dd * n)) - f;
            s += r * r;
        }
        return std::sqrt(s / static_cast<double>(points.size()));
    };

    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        double g = 0, h = 0;
        for (const auto& [n, f] : points) {
            const double e = std::exp(-d * n);
            const double r = 0.5 * (1.0 + e) - f;
            const double jac = -0.5 * n * e;
            g += r * jac;
            h += jac * jac;
        }
        if (h <= 0) break;
        double step = g / h;
        // keep d nonnegative; the model is flat there for noiseless data
        double nd = d - step;
        if (nd < 0) nd = d / 2;
        if (std::abs(nd - d) <= 1e-14 * std::max(1.0, d)) {
            d = nd;
            converged = true;
            break;
        }
        d = nd;
    }
    const double resid = rms(d);
    if (!converged || !std::isfinite(d)) return {-1.0, resid};
    return {d < 0 ? 0.0 : d, resid};
}

struct ImprovementRatio {
    double kappa_as_defined = 0.0;  // d_geometric / d_dynamical
    double dyn_over_geo = 0.0;      // > 1 means the geometric gate wins
};

inline ImprovementRatio improvement_ratio(double d_dynamical, double d_geometric) {
    if (!(d_dynamical > 0) || !(d_geometric > 0))
        throw std::invalid_argument("improvement_ratio: nonpositive d");
    return {d_geometric / d_dynamical, d_dynamical / d_geometric};
}

namespace detail {

struct CompiledClifford {
    // flattened physical segments, time order
    std::vector<PulseSegment> segments;
    double duration = 0.0;
};

// Flatten each Clifford's per-flavor pulse program once; RB then only chains
// segment exponentials.
inline std::vector<CompiledClifford> compile_table(const std::vector<CliffordCompilation>& table,
                                                   Flavor flavor, double rabi) {
    std::vector<CompiledClifford> out;
    out.reserve(table.size());
    for (const auto& c : table) {
        CompiledClifford cc;
        if (flavor == Flavor::dynamical) {
            for (auto it = c.dynamical_seq.rbegin(); it != c.dynamical_seq.rend(); ++it)
                cc.segments.push_back({rabi, it->axis_phase, it->angle / rabi});
        } else {
            for (auto it = c.geometric_seq.rbegin(); it != c.geometric_seq.rend(); ++it) {
                const Schedule s = geometric_schedule(*it, rabi);
                for (const auto& seg : s.segments) cc.segments.push_back(seg);
            }
        }
        for (const auto& seg : cc.segments) cc.duration += seg.duration;
        out.push_back(std::move(cc));
    }
    return out;
}

// 2x2 state-vector step through one segment under constant noise: exact.
inline void apply_segment_constant(V2& v, const PulseSegment& seg, double eps, double delta,
                                   double ref_rabi) {
    if (seg.duration <= 0) return;
    v = segment_unitary(seg, eps, delta, ref_rabi, seg.duration) * v;
}

// Sub-stepped trace-driven evolution, the 1/f hot path. pos tracks the
// sub-step index on the trace grid (dt-aligned segments).
inline void apply_segment_trace(V2& v, const PulseSegment& seg, const std::vector<double>& dvals,
                                const std::vector<double>& evals, double ref_rabi, double dt,
                                std::size_t& pos) {
    if (seg.duration <= 0) return;
    const auto nsub = static_cast<std::size_t>(std::llround(seg.duration / dt));
    const double h = seg.duration / static_cast<double>(nsub);
    const double cs = std::cos(seg.phase), sn = std::sin(seg.phase);
    const double half_rabi_h = 0.5 * seg.rabi * h;
    const std::size_t last = dvals.size() - 1;
    for (std::size_t i = 0; i < nsub; ++i, ++pos) {
        const std::size_t idx = pos <= last ? pos : last;
        const double half = (1.0 + evals[idx]) * half_rabi_h;
        const double ax = half * cs, ay = half * sn, az = dvals[idx] * ref_rabi * h;
        // inline su2_exp * v, avoiding temporaries in the hot loop
        const double r = std::sqrt(ax * ax + ay * ay + az * az);
        const double c = std::cos(r);
        const double s = r > 0 ? std::sin(r) / r : 1.0;
        const cx v0 = v(0), v1 = v(1);
        const cx m00(c, -s * az), m11(c, s * az);
        const cx m01(-s * ay, -s * ax), m10(s * ay, -s * ax);
        v(0) = m00 * v0 + m01 * v1;
        v(1) = m10 * v0 + m11 * v1;
    }
}

}  // namespace detail

// State-based RB from |0>: for each length, K random sequences plus the
// inverting recovery element, M noise realizations each, survival
// |<0|psi>|^2. Cell seeds derive from (root_seed, length_idx, seq_idx,
// real_idx) so results are independent of worker count.
inline RBResult run_rb(const RBConfig& cfg) {
    cfg.check();
    const auto table = build_clifford_table(
        cfg.flavor == Flavor::geometric_path2 ? Path::path2 : Path::path1);
    const auto compiled = detail::compile_table(table, cfg.flavor, cfg.rabi);

    const std::size_t n_lengths = cfg.lengths.size();
    const auto K = static_cast<std::size_t>(cfg.sequences_per_length);
    const auto M = static_cast<std::size_t>(cfg.realizations_per_sequence);

    // survival sums per (length, sequence) cell, preallocated for determinism
    std::vector<double> cell_sum(n_lengths * K, 0.0);
    std::vector<double> cell_sumsq(n_lengths * K, 0.0);

    const bool is_static = cfg.noise.is_static();
    const double dt = is_static ? 0.0 : rb_trace_dt(cfg);

    parallel_for(n_lengths * K, [&](std::size_t item) {
        const std::size_t li = item / K;
        const std::size_t k = item % K;
        const int n = cfg.lengths[li];

        // sequence draw (seed layer 1)
        Rng seq_rng(derive_seed(cfg.root_seed, li + 1, k + 1, 0));
        std::vector<int> seq(static_cast<std::size_t>(n) + 1);
        U2 prod = U2::Identity();
        for (int i = 0; i < n; ++i) {
            const int idx = static_cast<int>(seq_rng.uniform() * 24.0) % 24;
            seq[static_cast<std::size_t>(i)] = idx;
            prod = table[static_cast<std::size_t>(idx)].target * prod;
        }
        seq[static_cast<std::size_t>(n)] = recovery_index(table, prod);

        double total_duration = 0.0;
        std::size_t total_substeps = 0;
        std::optional<detail::SynthPlan> plan;
        if (!is_static) {
            for (int idx : seq) {
                total_duration += compiled[static_cast<std::size_t>(idx)].duration;
            }
            total_substeps = static_cast<std::size_t>(std::llround(total_duration / dt));
            // one plan per sequence: the M realizations share the grid layout
            plan = detail::make_synth_plan(cfg.noise.as_one_over_f(), total_substeps, dt);
        }

        double sum = 0.0, sumsq = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            const std::uint64_t noise_seed = derive_seed(cfg.root_seed, li + 1, k + 1, m + 1);
            V2 v;
            v << 1, 0;
            if (is_static) {
                const auto [dlt, eps] = sample_static(cfg.noise, noise_seed);
                for (int idx : seq)
                    for (const auto& seg : compiled[static_cast<std::size_t>(idx)].segments)
                        detail::apply_segment_constant(v, seg, eps, dlt, cfg.rabi);
            } else {
                std::vector<double> dvals, evals;
                const bool want_d = cfg.channel != OneOverFChannel::epsilon;
                const bool want_e = cfg.channel != OneOverFChannel::delta;
                if (want_d)
                    dvals = detail::synthesize_trace(*plan, total_substeps, dt,
                                                     derive_seed(noise_seed, 0xd));
                else
                    dvals.assign(total_substeps, 0.0);
                if (want_e)
                    evals = detail::synthesize_trace(*plan, total_substeps, dt,
                                                     derive_seed(noise_seed, 0xe));
                else
                    evals.assign(total_substeps, 0.0);
                std::size_t pos = 0;
                for (int idx : seq)
                    for (const auto& seg : compiled[static_cast<std::size_t>(idx)].segments)
                        detail::apply_segment_trace(v, seg, dvals, evals, cfg.rabi, dt, pos);
            }
            // accumulate moments of (surv - 1): the naive E[x^2] - mean^2
            // cancels catastrophically when every survival sits at 1
            const double dev = std::norm(v(0)) - 1.0;
            sum += dev;
            sumsq += dev * dev;
        }
        cell_sum[item] = sum;
        cell_sumsq[item] = sumsq;
    }, cfg.workers);

    RBResult res;
    std::vector<std::pair<int, double>> fit_points;
    for (std::size_t li = 0; li < n_lengths; ++li) {
        double s = 0, ss = 0;
        for (std::size_t k = 0; k < K; ++k) {
            s += cell_sum[li * K + k];
            ss += cell_sumsq[li * K + k];
        }
        const double cnt = static_cast<double>(K * M);
        const double mean_dev = s / cnt;
        const double var = std::max(0.0, ss / cnt - mean_dev * mean_dev);
        RBPoint p;
        p.n = cfg.lengths[li];
        p.mean_fidelity = 1.0 + mean_dev;
        p.standard_error = cnt > 1 ? std::sqrt(var / (cnt - 1)) : 0.0;
        res.points.push_back(p);
        fit_points.emplace_back(p.n, p.mean_fidelity);
    }
    const auto [d, resid] = fit_decay(fit_points);
    res.fitted_d = d;
    res.fit_residual = resid;
    return res;
}

}  // namespace geomgate
