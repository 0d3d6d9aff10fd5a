#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "schedule.hpp"

namespace geomgate {

inline double wrap_2pi(double x) {
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(x, two_pi);
    if (r < 0) r += two_pi;
    return r;
}

// One x-y-plane rotation R(r, gamma): axis_phase = 0 -> +x, pi/2 -> +y.
struct RotationSpec {
    double axis_phase = 0.0;
    double angle = 0.0;

    RotationSpec() = default;
    RotationSpec(double phase, double gamma) {
        if (!std::isfinite(phase) || !std::isfinite(gamma))
            throw std::invalid_argument("RotationSpec: non-finite");
        // negative angles folded into the antipodal axis so pulse areas stay >= 0
        if (gamma < 0) {
            phase += std::numbers::pi;
            gamma = -gamma;
        }
        axis_phase = wrap_2pi(phase);
        angle = gamma;
    }
};

inline U2 rotation_unitary(const RotationSpec& r) {
    return su2_exp(0.5 * r.angle * std::cos(r.axis_phase),
                   0.5 * r.angle * std::sin(r.axis_phase), 0.0);
}

inline std::pair<Schedule, U2> dynamical_rotation(const RotationSpec& spec, double rabi) {
    if (!(rabi > 0)) throw std::invalid_argument("dynamical_rotation: rabi <= 0");
    Schedule s;
    s.frame = Frame::single_qubit;
    s.ref_rabi = rabi;
    s.segments.push_back({rabi, spec.axis_phase, spec.angle / rabi});
    return {s, rotation_unitary(spec)};
}

// Leftmost spec applied last in time, matching operator-product notation.
inline std::pair<Schedule, U2> compose_sequence(const std::vector<RotationSpec>& specs,
                                                double rabi) {
    if (specs.empty()) throw std::invalid_argument("compose_sequence: empty");
    Schedule s;
    s.frame = Frame::single_qubit;
    s.ref_rabi = rabi;
    U2 u = U2::Identity();
    for (auto it = specs.rbegin(); it != specs.rend(); ++it)
        s.segments.push_back({rabi, it->axis_phase, it->angle / rabi});
    for (const auto& spec : specs) u = u * rotation_unitary(spec);
    return {s, u};
}

}  // namespace geomgate
