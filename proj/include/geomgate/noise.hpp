#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

#include "fft.hpp"

namespace geomgate {

// splitmix64 step; used to derive decorrelated sub-seeds from a root seed so
// that parallel realizations are reproducible regardless of scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t s = root;
    std::uint64_t h = splitmix64(s);
    s ^= a * 0xff51afd7ed558ccdull;
    h ^= splitmix64(s);
    s ^= b * 0xc4ceb9fe1a85ec53ull;
    h ^= splitmix64(s);
    s ^= c * 0x2545f4914f6cdd1dull;
    h ^= splitmix64(s);
    return h;
}

// Gaussian and uniform draws are hand-rolled on top of mt19937_64 because the
// std distributions are not specified bit-for-bit across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double gauss() {  // Box-Muller, one value per pair kept for simplicity
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::mt19937_64 eng_;
};

struct StaticNoiseModel {
    double sigma_delta = 0.0;
    double sigma_epsilon = 0.0;
};

// S(omega) = A / (omega * t0)^alpha, one-sided over angular frequency, hard
// band [omega_ir, omega_uv]. Synthesized component amplitudes are
// cell-integrated (amp^2 = 2 * integral of S over the cell), so the trace
// variance equals the analytic band integral of S for every alpha and grid.
struct OneOverFModel {
    double amplitude_a = 0.0;
    double alpha = 1.0;
    double t0 = 1.0;
    double omega_ir = 0.0;
    double omega_uv = 0.0;
};

struct NoiseModel {
    std::variant<StaticNoiseModel, OneOverFModel> variant;

    static NoiseModel make_static(double sigma_delta, double sigma_epsilon) {
        if (sigma_delta < 0 || sigma_epsilon < 0)
            throw std::invalid_argument("NoiseModel: negative sigma");
        return {StaticNoiseModel{sigma_delta, sigma_epsilon}};
    }
    static NoiseModel make_one_over_f(double a, double alpha, double t0, double omega_ir,
                                      double omega_uv) {
        if (a < 0) throw std::invalid_argument("NoiseModel: negative amplitude");
        if (alpha < 0 || alpha > 3)
            throw std::invalid_argument("NoiseModel: alpha outside [0, 3]");
        if (!(t0 > 0)) throw std::invalid_argument("NoiseModel: t0 <= 0");
        if (!(omega_ir > 0) || !(omega_uv > omega_ir))
            throw std::invalid_argument("NoiseModel: bad band");
        return {OneOverFModel{a, alpha, t0, omega_ir, omega_uv}};
    }

    bool is_static() const { return std::holds_alternative<StaticNoiseModel>(variant); }
    const StaticNoiseModel& as_static() const {
        if (!is_static()) throw std::invalid_argument("NoiseModel: not static");
        return std::get<StaticNoiseModel>(variant);
    }
    const OneOverFModel& as_one_over_f() const {
        if (is_static()) throw std::invalid_argument("NoiseModel: not 1/f");
        return std::get<OneOverFModel>(variant);
    }
};

inline std::pair<double, double> sample_static(const NoiseModel& model, std::uint64_t seed) {
    const auto& m = model.as_static();
    Rng rng(seed);
    const double d = m.sigma_delta > 0 ? m.sigma_delta * rng.gauss() : 0.0;
    const double e = m.sigma_epsilon > 0 ? m.sigma_epsilon * rng.gauss() : 0.0;
    return {d, e};
}

namespace detail {

// integral of A/(w t0)^alpha over [a, b], 0 if the interval is empty
inline double band_power(double amplitude_a, double alpha, double t0, double a, double b) {
    if (!(b > a)) return 0.0;
    const double xa = a * t0, xb = b * t0;
    if (std::abs(alpha - 1.0) < 1e-12) return amplitude_a * std::log(xb / xa) / t0;
    return amplitude_a * (std::pow(xb, 1.0 - alpha) - std::pow(xa, 1.0 - alpha)) /
           ((1.0 - alpha) * t0);
}

// Precomputed component layout for one (model, n_samples, dt) combination.
// The band is partitioned into cells, one random-phase cosine per cell:
//   - FFT-grid cells at w_k = k*dw, k = 1..N/2, covering [dw/2, nyquist]
//   - sub-fundamental cells at w_j = j*omega_ir covering [omega_ir, dw/2),
//     summed directly since the FFT grid cannot represent them
// clipped to [omega_ir, omega_uv], each with amp^2 = 2 * integral of S over
// its cell. Reusable across seeds, so RB shares one plan per sequence.
struct SynthPlan {
    std::size_t n_fft = 0;
    std::vector<double> sub_omega;
    std::vector<double> sub_amp;
    std::vector<double> grid_amp;  // index k-1 holds bin k = 1..N/2
};

inline SynthPlan make_synth_plan(const OneOverFModel& m, std::size_t n_samples, double dt) {
    if (n_samples < 2) throw std::invalid_argument("generate_one_over_f: n_samples < 2");
    if (!(dt > 0)) throw std::invalid_argument("generate_one_over_f: dt <= 0");
    const double nyquist = std::numbers::pi / dt;
    if (m.omega_ir >= nyquist)
        throw std::invalid_argument("generate_one_over_f: band not resolvable at this dt");

    SynthPlan plan;
    plan.n_fft = next_pow2(n_samples);
    const double d_omega = 2.0 * std::numbers::pi / (static_cast<double>(plan.n_fft) * dt);
    const double boundary = d_omega / 2;

    for (std::size_t j = 1;; ++j) {
        const double w = static_cast<double>(j) * m.omega_ir;
        if (w >= boundary || w > m.omega_uv) break;
        const double hi = std::min({w + m.omega_ir, boundary, m.omega_uv});
        const double power = band_power(m.amplitude_a, m.alpha, m.t0, w, hi);
        plan.sub_omega.push_back(w);
        plan.sub_amp.push_back(std::sqrt(2.0 * power));
    }
    plan.grid_amp.resize(plan.n_fft / 2);
    for (std::size_t k = 1; k <= plan.n_fft / 2; ++k) {
        const double w = static_cast<double>(k) * d_omega;
        const double lo = std::max(w - boundary, m.omega_ir);
        const double hi = std::min(w + boundary, m.omega_uv);
        plan.grid_amp[k - 1] = std::sqrt(2.0 * band_power(m.amplitude_a, m.alpha, m.t0, lo, hi));
    }
    return plan;
}

// Phase draw order is fixed (sub-band ascending, then every grid bin), so a
// trace is a pure function of (model, n_samples, dt, seed).
inline std::vector<double> synthesize_trace(const SynthPlan& plan, std::size_t n_samples,
                                            double dt, std::uint64_t seed) {
    Rng rng(seed);
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> sub_phi(plan.sub_omega.size());
    for (auto& phi : sub_phi) phi = two_pi * rng.uniform();

    std::vector<std::complex<double>> spec(plan.n_fft, {0.0, 0.0});
    for (std::size_t k = 1; k <= plan.n_fft / 2; ++k) {
        const double phi = two_pi * rng.uniform();
        const double amp = plan.grid_amp[k - 1];
        if (amp > 0) spec[k] = {amp * std::cos(phi), amp * std::sin(phi)};
    }
    fft_radix2(spec, +1);
    std::vector<double> out(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) out[i] = spec[i].real();

    // slow components via phasor recurrence: z_j tracks e^{i(w_j t + phi_j)}
    for (std::size_t j = 0; j < plan.sub_omega.size(); ++j) {
        const double amp = plan.sub_amp[j];
        if (amp <= 0) continue;
        std::complex<double> z(std::cos(sub_phi[j]), std::sin(sub_phi[j]));
        const std::complex<double> step(std::cos(plan.sub_omega[j] * dt),
                                        std::sin(plan.sub_omega[j] * dt));
        for (std::size_t i = 0; i < n_samples; ++i) {
            out[i] += amp * z.real();
            z *= step;
        }
    }
    return out;
}

}  // namespace detail

// Random-phase spectral synthesis: x(t) = sum_k amp_k cos(w_k t + phi_k) with
// amp_k^2 = 2 * integral of S over component k's cell (see SynthPlan).
inline std::vector<double> generate_one_over_f(const NoiseModel& model, std::size_t n_samples,
                                               double dt, std::uint64_t seed) {
    const auto& m = model.as_one_over_f();
    const detail::SynthPlan plan = detail::make_synth_plan(m, n_samples, dt);
    bool any = !plan.sub_amp.empty();
    for (double a : plan.grid_amp)
        if (a > 0) any = true;
    if (!any && m.amplitude_a > 0)
        throw std::invalid_argument("generate_one_over_f: no components inside the band");
    return detail::synthesize_trace(plan, n_samples, dt, seed);
}

// Welch-style averaged periodogram (Hann window, >= 8 segments), angular
// frequency bins. Scale is fixed so doubling A doubles the estimate.
inline std::vector<std::pair<double, double>> psd_estimate(const std::vector<double>& trace,
                                                           double dt, int n_segments = 8) {
    if (trace.size() < 64) throw std::invalid_argument("psd_estimate: trace too short");
    if (n_segments < 8) n_segments = 8;
    const std::size_t raw_len = trace.size() / static_cast<std::size_t>(n_segments);
    std::size_t seg_len = 1;
    while (seg_len * 2 <= raw_len) seg_len *= 2;
    if (seg_len < 8) throw std::invalid_argument("psd_estimate: segments too short");

    std::vector<double> window(seg_len);
    double wnorm = 0.0;
    for (std::size_t i = 0; i < seg_len; ++i) {
        window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                         static_cast<double>(seg_len));
        wnorm += window[i] * window[i];
    }

    std::vector<double> acc(seg_len / 2, 0.0);
    for (int s = 0; s < n_segments; ++s) {
        std::vector<std::complex<double>> buf(seg_len);
        for (std::size_t i = 0; i < seg_len; ++i)
            buf[i] = trace[static_cast<std::size_t>(s) * raw_len + i] * window[i];
        fft_radix2(buf, -1);
        for (std::size_t k = 0; k < seg_len / 2; ++k) acc[k] += std::norm(buf[k]);
    }

    // one-sided density normalization against the angular-frequency bin width
    const double d_omega = 2.0 * std::numbers::pi / (static_cast<double>(seg_len) * dt);
    std::vector<std::pair<double, double>> out;
    out.reserve(seg_len / 2 - 1);
    for (std::size_t k = 1; k < seg_len / 2; ++k) {
        const double w = static_cast<double>(k) * d_omega;
        const double p = acc[k] / static_cast<double>(n_segments) / wnorm / d_omega * 2.0;
        out.emplace_back(w, p);
    }
    return out;
}

// Least-squares log-log slope over the central part of the band.
inline double psd_slope(const std::vector<std::pair<double, double>>& psd) {
    std::vector<double> lw, lp;
    for (const auto& [w, p] : psd)
        if (p > 0) {
            lw.push_back(std::log(w));
            lp.push_back(std::log(p));
        }
    if (lw.size() < 4) throw std::invalid_argument("psd_slope: too few positive bins");
    const double lo = lw.front() + 0.2 * (lw.back() - lw.front());
    const double hi = lw.front() + 0.8 * (lw.back() - lw.front());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < lw.size(); ++i) {
        if (lw[i] < lo || lw[i] > hi) continue;
        sx += lw[i];
        sy += lp[i];
        sxx += lw[i] * lw[i];
        sxy += lw[i] * lp[i];
        ++n;
    }
    if (n < 2) throw std::invalid_argument("psd_slope: empty fit window");
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

}  // namespace geomgate
