#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"

namespace geomgate {

// Dimensionless noise samples on a uniform time grid; delta is in units of
// the schedule's reference Rabi frequency.
struct NoiseTrace {
    double dt = 0.0;
    std::vector<double> delta;
    std::vector<double> epsilon;

    std::size_t size() const { return delta.size(); }
    double total_time() const { return dt * static_cast<double>(delta.size()); }

    static NoiseTrace constant(double delta_val, double epsilon_val, double total_time, double dt) {
        if (!(dt > 0) || !(total_time >= 0))
            throw std::invalid_argument("NoiseTrace::constant: bad dt or duration");
        const auto n = static_cast<std::size_t>(std::ceil(total_time / dt - 1e-12)) + 1;
        NoiseTrace t;
        t.dt = dt;
        t.delta.assign(n, delta_val);
        t.epsilon.assign(n, epsilon_val);
        return t;
    }

    void validate() const {
        if (delta.size() != epsilon.size())
            throw std::invalid_argument("NoiseTrace: channel length mismatch");
        for (double v : delta)
            if (!std::isfinite(v)) throw std::invalid_argument("NoiseTrace: non-finite delta");
        for (double v : epsilon)
            if (!std::isfinite(v)) throw std::invalid_argument("NoiseTrace: non-finite epsilon");
    }
};

struct PulseSegment {
    double rabi = 0.0;      // angular frequency
    double phase = 0.0;     // radians
    double duration = 0.0;  // time units; zero-duration no-ops allowed

    double area() const { return rabi * duration; }
};

enum class Frame { single_qubit, two_qubit_odd_subspace };

struct Schedule {
    std::vector<PulseSegment> segments;
    Frame frame = Frame::single_qubit;
    double ref_rabi = 0.0;  // the Omega-bar that scales delta

    double total_duration() const {
        double t = 0;
        for (const auto& s : segments) t += s.duration;
        return t;
    }
    double min_active_duration() const {
        double m = 0;
        for (const auto& s : segments)
            if (s.duration > 0 && (m == 0 || s.duration < m)) m = s.duration;
        return m;
    }
    void check() const {
        if (segments.empty()) throw std::invalid_argument("Schedule: empty");
        for (const auto& s : segments) {
            if (!(s.rabi >= 0) || !std::isfinite(s.rabi))
                throw std::invalid_argument("Schedule: bad rabi");
            if (!(s.duration >= 0) || !std::isfinite(s.duration))
                throw std::invalid_argument("Schedule: bad duration");
        }
    }
};

inline U2 segment_unitary(const PulseSegment& s, double eps, double delta, double ref_rabi,
                          double duration) {
    const double half_area = 0.5 * s.rabi * duration;
    return su2_exp((1.0 + eps) * half_area * std::cos(s.phase),
                   (1.0 + eps) * half_area * std::sin(s.phase),
                   delta * ref_rabi * duration);
}

inline U2 ideal_unitary_2(const Schedule& s) {
    s.check();
    U2 u = U2::Identity();
    for (const auto& seg : s.segments)
        u = segment_unitary(seg, 0.0, 0.0, 0.0, seg.duration) * u;
    return u;
}

inline U4 ideal_unitary_4(const Schedule& s) {
    return embed_odd_subspace(ideal_unitary_2(s));
}

// Constant-(delta, epsilon) evolution; exact per segment, so no substepping.
inline U2 evolve_constant_2(const Schedule& s, double delta, double eps) {
    s.check();
    U2 u = U2::Identity();
    for (const auto& seg : s.segments)
        u = segment_unitary(seg, eps, delta, s.ref_rabi, seg.duration) * u;
    return u;
}

inline U4 evolve_constant_4(const Schedule& s, double delta, double eps) {
    return embed_odd_subspace(evolve_constant_2(s, delta, eps));
}

// Time-ordered product of sub-step exponentials of
// (1+eps_k) H(t_k) + delta_k * ref_rabi * sigma_z, noise sampled at sub-step
// midpoints from the trace grid.
inline U2 evolve_noisy_2(const Schedule& s, const NoiseTrace& noise, int steps_per_segment) {
    s.check();
    if (steps_per_segment < 1)
        throw std::invalid_argument("evolve_noisy: steps_per_segment < 1");
    if (!(noise.dt > 0)) throw std::invalid_argument("evolve_noisy: trace dt <= 0");
    const double T = s.total_duration();
    if (noise.total_time() < T - 1e-9 * std::max(1.0, T))
        throw std::invalid_argument("evolve_noisy: trace shorter than schedule");
    const double m = s.min_active_duration();
    if (m > 0 && noise.dt > m / steps_per_segment * (1 + 1e-9))
        throw std::invalid_argument("evolve_noisy: trace too coarse for steps_per_segment");

    U2 u = U2::Identity();
    double t0 = 0.0;
    const auto last = noise.size() - 1;
    for (const auto& seg : s.segments) {
        if (seg.duration <= 0) continue;
        const auto nsub = static_cast<std::size_t>(
            std::max<long long>(steps_per_segment, std::llround(seg.duration / noise.dt)));
        const double h = seg.duration / static_cast<double>(nsub);
        const double cs = std::cos(seg.phase), sn = std::sin(seg.phase);
        for (std::size_t i = 0; i < nsub; ++i) {
            const double tm = t0 + (static_cast<double>(i) + 0.5) * h;
            auto idx = static_cast<std::size_t>(tm / noise.dt);
            if (idx > last) idx = last;
            const double half = 0.5 * (1.0 + noise.epsilon[idx]) * seg.rabi * h;
            u = su2_exp(half * cs, half * sn, noise.delta[idx] * s.ref_rabi * h) * u;
        }
        t0 += seg.duration;
    }
    return u;
}

inline U4 evolve_noisy_4(const Schedule& s, const NoiseTrace& noise, int steps_per_segment) {
    return embed_odd_subspace(evolve_noisy_2(s, noise, steps_per_segment));
}

}  // namespace geomgate
