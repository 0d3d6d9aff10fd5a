#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynamical.hpp"
#include "geometric.hpp"
#include "matrix.hpp"

namespace geomgate {

struct CliffordCompilation {
    int index = 0;
    U2 target = U2::Identity();
    std::vector<RotationSpec> dynamical_seq;      // leftmost applied last
    std::vector<GeometricParams> geometric_seq;   // same order, path field set later
};

namespace detail {

inline U2 axis_rotation(double nx, double ny, double nz, double angle) {
    const double r = std::sqrt(nx * nx + ny * ny + nz * nz);
    return su2_exp(angle / 2 * nx / r, angle / 2 * ny / r, angle / 2 * nz / r);
}

}  // namespace detail

// The 24 rows: targets as axis-angle rotations and the printed dynamical
// compilations (left-to-right product order, leftmost applied last in time).
// The geometric replacement for R(axis phase p, area g > 0) is
// U(-g/2, pi/2, p); the path only changes the middle-arc phase.
inline std::vector<CliffordCompilation> build_clifford_table(Path path = Path::path1) {
    const double pi = std::numbers::pi;
    const double X = 0, NX = pi, Y = pi / 2, NY = -pi / 2;

    struct Row {
        double nx, ny, nz, angle;
        std::vector<std::pair<double, double>> rots;  // (axis_phase, area)
    };
    const std::vector<Row> rows = {
        {1, 0, 0, 0, {{X, 2 * pi}}},
        {1, 0, 0, -pi / 2, {{NX, pi / 2}}},
        {1, 0, 0, pi / 2, {{X, pi / 2}}},
        {1, 0, 0, pi, {{X, pi}}},
        {0, 1, 0, -pi / 2, {{NY, pi / 2}}},
        {0, 1, 0, pi / 2, {{Y, pi / 2}}},
        {0, 1, 0, pi, {{Y, pi}}},
        {0, 0, 1, -pi / 2, {{X, pi / 2}, {NY, pi / 2}, {NX, pi / 2}}},
        {0, 0, 1, pi / 2, {{X, pi / 2}, {Y, pi / 2}, {NX, pi / 2}}},
        {0, 0, 1, pi, {{X, pi}, {Y, pi}}},
        {1, 0, 1, pi, {{NY, pi / 2}, {X, pi}}},
        {1, 0, -1, pi, {{Y, pi / 2}, {X, pi}}},
        {1, 1, 0, pi, {{X, pi / 2}, {Y, pi / 2}, {X, pi / 2}}},
        {1, -1, 0, pi, {{X, pi / 2}, {NY, pi / 2}, {X, pi / 2}}},
        {0, 1, 1, pi, {{X, pi / 2}, {Y, pi}}},
        {0, 1, -1, pi, {{NX, pi / 2}, {Y, pi}}},
        {1, 1, 1, 2 * pi / 3, {{X, pi / 2}, {Y, pi / 2}}},
        {1, 1, 1, 4 * pi / 3, {{NY, pi / 2}, {NX, pi / 2}}},
        {1, 1, -1, 2 * pi / 3, {{Y, pi / 2}, {X, pi / 2}}},
        {1, 1, -1, 4 * pi / 3, {{NX, pi / 2}, {NY, pi / 2}}},
        {1, -1, 1, 2 * pi / 3, {{NY, pi / 2}, {X, pi / 2}}},
        {1, -1, 1, 4 * pi / 3, {{NX, pi / 2}, {Y, pi / 2}}},
        {-1, 1, 1, 2 * pi / 3, {{Y, pi / 2}, {NX, pi / 2}}},
        {-1, 1, 1, 4 * pi / 3, {{X, pi / 2}, {NY, pi / 2}}},
    };

    std::vector<CliffordCompilation> table;
    table.reserve(24);
    int total_rots = 0;
    for (int i = 0; i < 24; ++i) {
        const auto& r = rows[static_cast<std::size_t>(i)];
        CliffordCompilation c;
        c.index = i;
        c.target = i == 0 ? U2::Identity() : detail::axis_rotation(r.nx, r.ny, r.nz, r.angle);
        for (const auto& [phase, area] : r.rots) {
            c.dynamical_seq.emplace_back(phase, area);
            c.geometric_seq.emplace_back(-area / 2, std::numbers::pi / 2, phase, path);
        }
        total_rots += static_cast<int>(c.dynamical_seq.size());

        U2 dyn = U2::Identity();
        U2 geo = U2::Identity();
        for (const auto& spec : c.dynamical_seq) dyn = dyn * rotation_unitary(spec);
        for (const auto& g : c.geometric_seq) geo = geo * geometric_unitary(g);
        if (gate_fidelity(c.target, dyn) < 1.0 - 1e-10)
            throw std::runtime_error("build_clifford_table: dynamical row C" + std::to_string(i) +
                                     " fails target check");
        if (gate_fidelity(c.target, geo) < 1.0 - 1e-10)
            throw std::runtime_error("build_clifford_table: geometric row C" + std::to_string(i) +
                                     " fails target check");
        table.push_back(std::move(c));
    }
    if (total_rots != 45)
        throw std::runtime_error("build_clifford_table: rotation count != 45 (mean 1.875)");
    return table;
}

// Index of the unique element inverting prod up to global phase.
inline int recovery_index(const std::vector<CliffordCompilation>& table, const U2& prod) {
    int best = -1;
    double best_f = -1.0;
    for (const auto& c : table) {
        const double f = std::abs((c.target * prod).trace()) / 2.0;
        if (f > best_f) {
            best_f = f;
            best = c.index;
        }
    }
    if (best_f < 1.0 - 1e-9)
        throw std::runtime_error("recovery_index: no inverting element (not in the group?)");
    return best;
}

}  // namespace geomgate
