#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dynamical.hpp"
#include "geometric.hpp"
#include "matrix.hpp"
#include "schedule.hpp"

namespace geomgate {

enum class Flavor { dynamical, geometric_path1, geometric_path2 };

inline const char* flavor_name(Flavor f) {
    switch (f) {
        case Flavor::dynamical: return "dynamical";
        case Flavor::geometric_path1: return "geometric-path1";
        case Flavor::geometric_path2: return "geometric-path2";
    }
    return "?";
}

struct TwoQubitLabParams {
    double ez = 0.0;       // E_z
    double dez = 0.0;      // delta E_z
    double j0 = 0.0;       // static exchange offset
    double j1 = 0.0;       // oscillating exchange amplitude
    double omega_j = 0.0;  // drive frequency
    double psi = 0.0;      // drive phase

    bool rwa_regime() const { return dez > 0 && j1 / dez < 0.1 && j0 / dez < 0.1; }
};

struct TwoQubitGeometricParams {
    double xi = 0.0;
    double vartheta = 0.0;
    double psi = 0.0;
    Path path = Path::path1;

    TwoQubitGeometricParams() = default;
    TwoQubitGeometricParams(double x, double v, double p, Path pa)
        : xi(x), vartheta(v), psi(p), path(pa) {
        if (v < -1e-12 || v > std::numbers::pi + 1e-12)
            throw std::invalid_argument("TwoQubitGeometricParams: vartheta outside [0, pi]");
        vartheta = std::clamp(v, 0.0, std::numbers::pi);
    }
};

// Eq.-(6) matrix in the basis {|00>, |01>, |10>, |11>} with J(t) = j_now.
inline U4 lab_hamiltonian(const TwoQubitLabParams& p, double j_now) {
    U4 h = U4::Zero();
    h(0, 0) = p.ez + j_now / 2;
    h(1, 1) = p.dez / 2;
    h(2, 2) = -p.dez / 2;
    h(3, 3) = -p.ez + j_now / 2;
    h(1, 2) = j_now / 2;
    h(2, 1) = j_now / 2;
    return h;
}

inline Schedule rwa_schedule(const TwoQubitGeometricParams& p, double j_rabi) {
    Schedule s = geometric_schedule(GeometricParams(p.xi, p.vartheta, p.psi, p.path), j_rabi);
    s.frame = Frame::two_qubit_odd_subspace;
    return s;
}

inline U4 two_qubit_geometric_unitary(const TwoQubitGeometricParams& p) {
    return embed_odd_subspace(geometric_unitary(GeometricParams(p.xi, p.vartheta, p.psi, p.path)));
}

inline const U4& iswap_matrix() {
    static const U4 m = [] {
        U4 u = U4::Identity();
        u(1, 1) = 0;
        u(2, 2) = 0;
        u(1, 2) = cx(0, 1);
        u(2, 1) = cx(0, 1);
        return u;
    }();
    return m;
}

// Single pi-area segment. Drive phase pi, not 0: exp[-i(pi/2)sx~] has a -i
// block, which differs from Eq. (10)'s iSWAP by a subspace-only sign that is
// not a global phase on the 4x4; phase pi lands on the +i block exactly.
inline std::pair<Schedule, U4> iswap_dynamical(double j_rabi) {
    if (!(j_rabi > 0)) throw std::invalid_argument("iswap_dynamical: rabi <= 0");
    Schedule s;
    s.frame = Frame::two_qubit_odd_subspace;
    s.ref_rabi = j_rabi;
    s.segments.push_back({j_rabi, std::numbers::pi, std::numbers::pi / j_rabi});
    return {s, iswap_matrix()};
}

// Numerically integrates the interaction-picture Eq. (7) with the full
// oscillating J(t) (counter-rotating terms retained) across the rwa_schedule
// segment phases, and returns the infidelity against the Eq.-(10) target.
inline double verify_rwa(const TwoQubitLabParams& p, const TwoQubitGeometricParams& target,
                         int steps_per_cycle = 64) {
    if (!(p.dez > 0)) throw std::invalid_argument("verify_rwa: dez <= 0");
    if (std::abs(p.omega_j - p.dez) > 1e-9 * p.dez)
        throw std::invalid_argument("verify_rwa: drive off resonance");
    if (p.j1 / p.dez > 0.1) throw std::invalid_argument("verify_rwa: outside RWA regime");
    if (p.j1 == 0) return 0.0;  // no drive: identity evolution in this picture

    // RWA Rabi frequency in the odd subspace is j1/2
    const Schedule sched = rwa_schedule(target, p.j1 / 2);
    const double dt = 2 * std::numbers::pi / p.omega_j / steps_per_cycle;

    U2 u = U2::Identity();  // odd-subspace block, interaction picture
    double t = 0.0;
    for (const auto& seg : sched.segments) {
        if (seg.duration <= 0) continue;
        const auto nsub = static_cast<long long>(std::ceil(seg.duration / dt));
        const double h = seg.duration / static_cast<double>(nsub);
        for (long long i = 0; i < nsub; ++i) {
            const double tm = t + (static_cast<double>(i) + 0.5) * h;
            const double jt = p.j0 + p.j1 * std::cos(p.omega_j * tm + seg.phase);
            // H_I = (J/2) e^{i dez t} |01><10| + h.c. = (J/2)(cos(dez t) sx~ - sin(dez t) sy~)
            u = su2_exp(0.5 * jt * std::cos(p.dez * tm) * h,
                        -0.5 * jt * std::sin(p.dez * tm) * h, 0.0) *
                u;
        }
        t += seg.duration;
    }
    return 1.0 - gate_fidelity(two_qubit_geometric_unitary(target), embed_odd_subspace(u));
}

// One element of the CNOT composite: a single-qubit rotation on one qubit or
// an iSWAP two-qubit segment group.
struct CnotElement {
    bool two_qubit = false;
    int qubit = 0;
    RotationSpec rot;
};

// CNOT = L_after . iSWAP . (Rx_0(-pi/2) x I) . iSWAP . L_before with x/y-only
// local layers (z-rotations pre-expanded); verified against the CNOT matrix
// at build time. Qubit 0 is the control (left tensor factor).
inline std::vector<CnotElement> cnot_elements() {
    const double pi = std::numbers::pi;
    std::vector<CnotElement> seq;  // time order: first applied first
    auto rot = [&](int q, double phase, double angle) {
        CnotElement e;
        e.qubit = q;
        e.rot = RotationSpec(phase, angle);
        seq.push_back(e);
    };
    auto iswap = [&] {
        CnotElement e;
        e.two_qubit = true;
        seq.push_back(e);
    };
    // before-layer:  qubit0: Rx(pi/2) Ry(-pi/2) Rx(-pi/2)   (leftmost applied last)
    //                qubit1: Rx(pi/2) Ry(-pi/2) Rx(pi/2)
    rot(0, 0, -pi / 2);
    rot(0, pi / 2, -pi / 2);
    rot(0, 0, pi / 2);
    rot(1, 0, pi / 2);
    rot(1, pi / 2, -pi / 2);
    rot(1, 0, pi / 2);
    iswap();
    rot(0, 0, -pi / 2);  // middle layer
    iswap();
    rot(1, 0, -pi / 2);  // after-layer: qubit1: Ry(-pi/2) Rx(-pi/2)
    rot(1, pi / 2, -pi / 2);
    return seq;
}

inline const U4& cnot_matrix() {
    static const U4 m = [] {
        U4 u = U4::Identity();
        u(2, 2) = 0;
        u(3, 3) = 0;
        u(2, 3) = 1;
        u(3, 2) = 1;
        return u;
    }();
    return m;
}

namespace detail {

inline U4 embed_on_qubit(const U2& u, int qubit) {
    U4 m = U4::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                if (qubit == 0)
                    m(2 * a + c, 2 * b + c) = u(a, b);
                else
                    m(2 * c + a, 2 * c + b) = u(a, b);
            }
    return m;
}

}  // namespace detail

struct CnotComposite {
    std::vector<CnotElement> elements;
    std::vector<Schedule> schedules;  // one per element, in time order
    U4 ideal = U4::Identity();
};

// A path-2 iSWAP equals iSWAP.(ZxZ): the subspace sign is not a global
// phase. Commuting the two ZxZ factors out of the composite conjugates the
// layer between the iSWAPs, so that layer's rotation angles flip sign for
// path 2. Single-qubit path-2 replacements only contribute global signs.
inline CnotComposite cnot_compose(Flavor flavor, double rabi, double j_rabi) {
    if (!(rabi > 0) || !(j_rabi > 0)) throw std::invalid_argument("cnot_compose: rabi <= 0");
    const double pi = std::numbers::pi;
    const bool path2 = flavor == Flavor::geometric_path2;
    CnotComposite c;
    c.elements = cnot_elements();

    int iswaps_seen = 0;
    for (auto& e : c.elements) {
        if (e.two_qubit) {
            ++iswaps_seen;
            if (flavor == Flavor::dynamical) {
                c.schedules.push_back(iswap_dynamical(j_rabi).first);
            } else {
                c.schedules.push_back(rwa_schedule(
                    TwoQubitGeometricParams(pi / 2, pi / 2, 0.0,
                                            path2 ? Path::path2 : Path::path1),
                    j_rabi));
            }
            continue;
        }
        if (path2 && iswaps_seen == 1) e.rot = RotationSpec(e.rot.axis_phase, -e.rot.angle);
        if (flavor == Flavor::dynamical) {
            c.schedules.push_back(dynamical_rotation(e.rot, rabi).first);
        } else {
            c.schedules.push_back(geometric_schedule(
                GeometricParams(-e.rot.angle / 2, pi / 2, e.rot.axis_phase,
                                path2 ? Path::path2 : Path::path1),
                rabi));
        }
    }

    U4 u = U4::Identity();
    for (std::size_t i = 0; i < c.elements.size(); ++i) {
        const U2 block = ideal_unitary_2(c.schedules[i]);
        u = (c.elements[i].two_qubit ? embed_odd_subspace(block)
                                     : detail::embed_on_qubit(block, c.elements[i].qubit)) *
            u;
    }
    c.ideal = u;
    if (gate_fidelity(cnot_matrix(), u) < 1.0 - 1e-10)
        throw std::runtime_error("cnot_compose: decomposition failed verification");
    return c;
}

// Constant-noise evolution of the whole composite. Single-qubit segments see
// the Eq.-(14) channel in their own qubit's frame; two-qubit segments see
// epsilon on H_2R and delta * j_rabi * sigma_z~ in the odd subspace, with one
// (delta, epsilon) realization across the composite.
inline U4 cnot_evolve_constant(const CnotComposite& c, double delta, double eps,
                               bool noise_on_single = true, bool noise_on_two = true) {
    U4 u = U4::Identity();
    for (std::size_t i = 0; i < c.elements.size(); ++i) {
        const auto& e = c.elements[i];
        const bool on = e.two_qubit ? noise_on_two : noise_on_single;
        const U2 block = evolve_constant_2(c.schedules[i], on ? delta : 0.0, on ? eps : 0.0);
        u = (e.two_qubit ? embed_odd_subspace(block) : detail::embed_on_qubit(block, e.qubit)) * u;
    }
    return u;
}

enum class NoiseKind { systematic, detuning };

inline std::vector<std::pair<double, double>> cnot_fidelity_sweep(
    Flavor flavor, NoiseKind kind, const std::vector<double>& amplitudes, double rabi,
    double j_rabi, bool noise_on_single = true, bool noise_on_two = true) {
    for (double a : amplitudes)
        if (std::abs(a) > 0.1)
            throw std::invalid_argument("cnot_fidelity_sweep: |amplitude| > 0.1");
    const CnotComposite c = cnot_compose(flavor, rabi, j_rabi);
    std::vector<std::pair<double, double>> out;
    out.reserve(amplitudes.size());
    for (double a : amplitudes) {
        const double delta = kind == NoiseKind::detuning ? a : 0.0;
        const double eps = kind == NoiseKind::systematic ? a : 0.0;
        const U4 v = cnot_evolve_constant(c, delta, eps, noise_on_single, noise_on_two);
        out.emplace_back(a, gate_fidelity(c.ideal, v));
    }
    return out;
}

}  // namespace geomgate
