#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace geomgate {

using cx = std::complex<double>;
using U2 = Eigen::Matrix2cd;
using U4 = Eigen::Matrix4cd;
using V2 = Eigen::Vector2cd;
using V4 = Eigen::Vector4cd;

inline const U2& pauli_x() {
    static const U2 m = (U2() << 0, 1, 1, 0).finished();
    return m;
}
inline const U2& pauli_y() {
    static const U2 m = (U2() << 0, cx(0, -1), cx(0, 1), 0).finished();
    return m;
}
inline const U2& pauli_z() {
    static const U2 m = (U2() << 1, 0, 0, -1).finished();
    return m;
}

// exp[-i (ax sx + ay sy + az sz)], closed form.
inline U2 su2_exp(double ax, double ay, double az) {
    if (!std::isfinite(ax) || !std::isfinite(ay) || !std::isfinite(az))
        throw std::invalid_argument("su2_exp: non-finite coefficient");
    const double r = std::sqrt(ax * ax + ay * ay + az * az);
    const double c = std::cos(r);
    const double s = r > 0 ? std::sin(r) / r : 1.0;
    U2 u;
    u(0, 0) = cx(c, -s * az);
    u(0, 1) = cx(-s * ay, -s * ax);
    u(1, 0) = cx(s * ay, -s * ax);
    u(1, 1) = cx(c, s * az);
    return u;
}

// F = |Tr(ideal^dag actual)| / dim, global-phase invariant.
template <typename MatA, typename MatB>
double gate_fidelity(const MatA& ideal, const MatB& actual) {
    if (ideal.rows() != actual.rows() || ideal.cols() != actual.cols())
        throw std::invalid_argument("gate_fidelity: dimension mismatch");
    return std::abs((ideal.adjoint() * actual).trace()) / static_cast<double>(ideal.rows());
}

// u acting on span{|01>,|10>}, identity on |00>,|11> (the Eq.-10 block layout).
inline U4 embed_odd_subspace(const U2& u) {
    U4 m = U4::Identity();
    m(1, 1) = u(0, 0);
    m(1, 2) = u(0, 1);
    m(2, 1) = u(1, 0);
    m(2, 2) = u(1, 1);
    return m;
}

template <typename Mat>
double unitarity_defect(const Mat& u) {
    return (u.adjoint() * u - Mat::Identity()).cwiseAbs().maxCoeff();
}

template <typename Mat>
double hermiticity_defect(const Mat& h) {
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace geomgate
