#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "matrix.hpp"
#include "schedule.hpp"

namespace geomgate {

enum class Path { path1 = 1, path2 = 2 };

// Closed-loop gate parameters: U(gamma, theta, phi) = exp[i gamma n.sigma]
// with n = (sin t cos p, sin t sin p, cos t); path 2 shifts the middle-arc
// phase by pi, multiplying the result by -1.
struct GeometricParams {
    double gamma = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    Path path = Path::path1;

    GeometricParams() = default;
    GeometricParams(double g, double t, double p, Path pa) : gamma(g), theta(t), phi(p), path(pa) {
        if (!std::isfinite(g) || !std::isfinite(t) || !std::isfinite(p))
            throw std::invalid_argument("GeometricParams: non-finite");
        if (t < -1e-12 || t > std::numbers::pi + 1e-12)
            throw std::invalid_argument("GeometricParams: theta outside [0, pi]");
        theta = std::clamp(t, 0.0, std::numbers::pi);
    }
};

// Three arcs with areas (theta, pi, pi - theta); degenerate theta keeps the
// zero-duration end segments so the loop time stays 2*pi/rabi.
inline Schedule geometric_schedule(const GeometricParams& p, double rabi) {
    if (!(rabi > 0)) throw std::invalid_argument("geometric_schedule: rabi <= 0");
    const double pi = std::numbers::pi;
    const double mid =
        p.phi + p.gamma + pi / 2 - (p.path == Path::path2 ? pi : 0.0);
    Schedule s;
    s.frame = Frame::single_qubit;
    s.ref_rabi = rabi;
    s.segments.push_back({rabi, p.phi - pi / 2, p.theta / rabi});
    s.segments.push_back({rabi, mid, pi / rabi});
    s.segments.push_back({rabi, p.phi - pi / 2, (pi - p.theta) / rabi});
    return s;
}

inline U2 geometric_unitary(const GeometricParams& p) {
    const double g = p.gamma - (p.path == Path::path2 ? std::numbers::pi : 0.0);
    const double nx = std::sin(p.theta) * std::cos(p.phi);
    const double ny = std::sin(p.theta) * std::sin(p.phi);
    const double nz = std::cos(p.theta);
    return su2_exp(-g * nx, -g * ny, -g * nz);
}

inline V2 psi_plus(double theta, double phi) {
    V2 v;
    v << std::cos(theta / 2), std::sin(theta / 2) * std::exp(cx(0, phi));
    return v;
}

inline V2 psi_minus(double theta, double phi) {
    V2 v;
    v << std::sin(theta / 2) * std::exp(cx(0, -phi)), -std::cos(theta / 2);
    return v;
}

// Evolves the orthogonal pair through the loop and reads the acquired global
// phases; both overlaps must have modulus 1 (cyclic evolution).
inline std::pair<double, double> cyclic_phase_check(const GeometricParams& p, double rabi) {
    const U2 u = ideal_unitary_2(geometric_schedule(p, rabi));
    const V2 vp = psi_plus(p.theta, p.phi), vm = psi_minus(p.theta, p.phi);
    const cx op = vp.dot(u * vp);  // Eigen dot conjugates the left argument
    const cx om = vm.dot(u * vm);
    if (std::abs(std::abs(op) - 1.0) > 1e-10 || std::abs(std::abs(om) - 1.0) > 1e-10)
        throw std::runtime_error("cyclic_phase_check: evolution not cyclic");
    return {std::arg(op), std::arg(om)};
}

namespace detail {
inline U2 hamiltonian_at(const PulseSegment& seg) {
    U2 h;
    const double c = 0.5 * seg.rabi * std::cos(seg.phase);
    const double s = 0.5 * seg.rabi * std::sin(seg.phase);
    h(0, 0) = 0;
    h(0, 1) = cx(c, -s);
    h(1, 0) = cx(c, s);
    h(1, 1) = 0;
    return h;
}
}  // namespace detail

// alpha = -int <psi|H|psi> dt on a time grid along the evolution. Within a
// constant segment <psi|H|psi> is conserved, so the grid sum is exact.
inline double dynamical_phase_integral(const Schedule& s, double theta0, double phi0,
                                       int steps_per_segment = 512) {
    V2 v = psi_plus(theta0, phi0);
    double alpha = 0.0;
    for (const auto& seg : s.segments) {
        if (seg.duration <= 0) continue;
        const double h = seg.duration / steps_per_segment;
        const U2 ham = detail::hamiltonian_at(seg);
        const U2 step = segment_unitary(seg, 0.0, 0.0, 0.0, h);
        for (int i = 0; i < steps_per_segment; ++i) {
            alpha -= std::real(v.dot(ham * v)) * h;
            v = step * v;
        }
    }
    return alpha;
}

// max_t |<psi(t)|H(t)|psi(t)>| / rabi; ~0 certifies parallel transport.
inline double geodesic_condition_check(const Schedule& s, double theta0, double phi0,
                                       int steps_per_segment = 512) {
    V2 v = psi_plus(theta0, phi0);
    double worst = 0.0;
    double rabi_scale = 0.0;
    for (const auto& seg : s.segments) rabi_scale = std::max(rabi_scale, seg.rabi);
    if (rabi_scale <= 0) return 0.0;
    for (const auto& seg : s.segments) {
        if (seg.duration <= 0) continue;
        const double h = seg.duration / steps_per_segment;
        const U2 ham = detail::hamiltonian_at(seg);
        const U2 step = segment_unitary(seg, 0.0, 0.0, 0.0, h);
        for (int i = 0; i < steps_per_segment; ++i) {
            worst = std::max(worst, std::abs(std::real(v.dot(ham * v))));
            v = step * v;
        }
    }
    return worst / rabi_scale;
}

}  // namespace geomgate
