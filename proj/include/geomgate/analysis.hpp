#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dynamical.hpp"
#include "geometric.hpp"
#include "rb.hpp"
#include "schedule.hpp"
#include "two_qubit.hpp"

namespace geomgate {

// Second-order fidelity coefficients of Eq. (15): F = 1 + c_eps eps^2 + c_delta delta^2.
struct ExpansionReport {
    Flavor flavor = Flavor::dynamical;
    double gamma = 0.0;  // rotation angle of the target x-axis gate
    double c_epsilon = 0.0;
    double c_delta = 0.0;
};

namespace detail {

// Fidelity of the flavor's x-axis rotation gate under constant (delta, eps).
inline double noisy_gate_fidelity(Flavor flavor, double gamma, double eps, double delta,
                                  double rabi) {
    if (flavor == Flavor::dynamical) {
        const auto [sched, ideal] = dynamical_rotation(RotationSpec(0.0, gamma), rabi);
        return gate_fidelity(ideal, evolve_constant_2(sched, delta, eps));
    }
    const Path path = flavor == Flavor::geometric_path1 ? Path::path1 : Path::path2;
    const GeometricParams p(-gamma / 2, std::numbers::pi / 2, 0.0, path);
    return gate_fidelity(geometric_unitary(p),
                         evolve_constant_2(geometric_schedule(p, rabi), delta, eps));
}

}  // namespace detail

// Central second differences at h and h/2 with one Richardson step. F(0) = 1
// exactly, so c(h) = (F(h) - 2 + F(-h)) / (2 h^2).
inline ExpansionReport extract_coefficients(Flavor flavor, double gamma,
                                            double rabi = 2.0 * std::numbers::pi,
                                            double h = 1e-3) {
    if (!(std::abs(gamma) <= std::numbers::pi + 1e-12))
        throw std::invalid_argument("extract_coefficients: |gamma| > pi");
    if (!(h > 0)) throw std::invalid_argument("extract_coefficients: h <= 0");

    auto coeff = [&](bool eps_channel) {
        auto c = [&](double hh) {
            const double fp = eps_channel
                                  ? detail::noisy_gate_fidelity(flavor, gamma, hh, 0.0, rabi)
                                  : detail::noisy_gate_fidelity(flavor, gamma, 0.0, hh, rabi);
            const double fm = eps_channel
                                  ? detail::noisy_gate_fidelity(flavor, gamma, -hh, 0.0, rabi)
                                  : detail::noisy_gate_fidelity(flavor, gamma, 0.0, -hh, rabi);
            return (fp - 2.0 + fm) / (2.0 * hh * hh);
        };
        return (4.0 * c(h / 2) - c(h)) / 3.0;
    };

    ExpansionReport r;
    r.flavor = flavor;
    r.gamma = gamma;
    r.c_epsilon = coeff(true);
    r.c_delta = coeff(false);
    return r;
}

struct DeltaFRow {
    double gamma = 0.0;
    double delta_f_eps = 0.0;    // c_eps(geometric) - c_eps(dynamical), per eps^2
    double delta_f_delta = 0.0;  // c_delta(geometric) - c_delta(dynamical), per delta^2
};

// Eqs. (16)-(17): geometric-minus-dynamical coefficient differences over a gamma grid.
inline std::vector<DeltaFRow> delta_f_curves(Path path, const std::vector<double>& gammas,
                                             double rabi = 2.0 * std::numbers::pi) {
    const Flavor geo = path == Path::path1 ? Flavor::geometric_path1 : Flavor::geometric_path2;
    std::vector<DeltaFRow> out;
    out.reserve(gammas.size());
    for (double g : gammas) {
        const auto rg = extract_coefficients(geo, g, rabi);
        const auto rd = extract_coefficients(Flavor::dynamical, g, rabi);
        out.push_back({g, rg.c_epsilon - rd.c_epsilon, rg.c_delta - rd.c_delta});
    }
    return out;
}

// Amplitude A such that the band integral of S(w) = A/(w t0)^alpha equals
// sigma_target^2 — keeps the synthesized rms comparable across alpha. Exact
// under the cell-integrated synthesis convention.
inline double calibrated_amplitude(double alpha, double sigma_target, double t0,
                                   double omega_ir, double omega_uv) {
    if (!(sigma_target > 0) || !(t0 > 0) || !(omega_ir > 0) || !(omega_uv > omega_ir))
        throw std::invalid_argument("calibrated_amplitude: bad arguments");
    return sigma_target * sigma_target /
           detail::band_power(1.0, alpha, t0, omega_ir, omega_uv);
}

struct KappaCell {
    double alpha = 0.0;
    double amplitude = 0.0;  // A t0 in the PSD convention
    double d_dyn = 0.0;
    double d_g1 = 0.0;
    double d_g2 = 0.0;

    ImprovementRatio ratio_path1() const { return improvement_ratio(d_dyn, d_g1); }
    ImprovementRatio ratio_path2() const { return improvement_ratio(d_dyn, d_g2); }
};

// Figs. 4-6 driver: one RB run per (alpha, amplitude, flavor) cell under 1/f
// noise on the requested channel. rb_defaults supplies lengths/K/M/seed;
// flavor and noise fields are overwritten per cell.
inline std::vector<KappaCell> kappa_study(NoiseKind kind, const std::vector<double>& alphas,
                                          const std::vector<double>& amplitudes,
                                          const RBConfig& rb_defaults) {
    for (double a : alphas)
        if (a < 0 || a > 3) throw std::invalid_argument("kappa_study: alpha outside [0, 3]");
    std::vector<KappaCell> out;
    for (double alpha : alphas) {
        for (double amp : amplitudes) {
            KappaCell cell;
            cell.alpha = alpha;
            cell.amplitude = amp;
            for (Flavor f : {Flavor::dynamical, Flavor::geometric_path1,
                             Flavor::geometric_path2}) {
                RBConfig cfg = rb_defaults;
                cfg.flavor = f;
                const auto [w_ir, w_uv] = rb_default_band(cfg);
                cfg.noise = NoiseModel::make_one_over_f(amp, alpha, 1.0, w_ir, w_uv);
                cfg.channel = kind == NoiseKind::detuning ? OneOverFChannel::delta
                                                          : OneOverFChannel::epsilon;
                const RBResult res = run_rb(cfg);
                (f == Flavor::dynamical
                     ? cell.d_dyn
                     : f == Flavor::geometric_path1 ? cell.d_g1 : cell.d_g2) = res.fitted_d;
            }
            out.push_back(cell);
        }
    }
    return out;
}

}  // namespace geomgate
