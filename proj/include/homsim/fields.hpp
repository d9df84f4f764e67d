#pragma once

// Two-mode complex field algebra: 50/50 beam splitter, one-arm phase shifter
// and the composed Mach-Zehnder transfer. Everything is templated on the real
// scalar; the simulator instantiates double.

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace homsim {

template <typename Scalar>
using ComplexAmplitude = std::complex<Scalar>;

/// Column vector (upper port a, lower port b).
template <typename Scalar>
using FieldPair = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

/// Lossless 2x2 element; builders below always return unitary matrices.
template <typename Scalar>
using TwoModeTransfer = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

using ComplexAmplituded = ComplexAmplitude<double>;
using FieldPaird = FieldPair<double>;
using TwoModeTransferd = TwoModeTransfer<double>;

template <typename Scalar = double>
FieldPair<Scalar> make_field_pair(std::complex<Scalar> a, std::complex<Scalar> b) {
    FieldPair<Scalar> f;
    f << a, b;
    return f;
}

/// (1/sqrt 2) [[1, i], [i, 1]]
template <typename Scalar = double>
TwoModeTransfer<Scalar> beam_splitter() {
    using C = std::complex<Scalar>;
    const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
    TwoModeTransfer<Scalar> m;
    m << C(s, 0), C(0, s),
         C(0, s), C(s, 0);
    return m;
}

/// diag(1, e^{i phi}): the phase acts on the lower (idler) arm only.
template <typename Scalar>
TwoModeTransfer<Scalar> phase_shifter(Scalar phi) {
    TwoModeTransfer<Scalar> m = TwoModeTransfer<Scalar>::Zero();
    m(0, 0) = Scalar(1);
    m(1, 1) = std::polar(Scalar(1), phi);
    return m;
}

/// outer * inner (inner acts first).
template <typename DerivedOuter, typename DerivedInner>
auto compose(const Eigen::MatrixBase<DerivedOuter>& outer,
             const Eigen::MatrixBase<DerivedInner>& inner) {
    using Scalar = typename DerivedOuter::Scalar::value_type;
    return TwoModeTransfer<Scalar>(outer * inner);
}

/// (1/2) [[1 - e^{i phi}, i(1 + e^{i phi})], [i(1 + e^{i phi}), -(1 - e^{i phi})]]
///
/// Equals beam_splitter() * phase_shifter(phi) * beam_splitter() entrywise.
template <typename Scalar>
TwoModeTransfer<Scalar> mzi_transfer(Scalar phi) {
    using C = std::complex<Scalar>;
    const C e = std::polar(Scalar(1), phi);
    const C i(0, 1);
    const Scalar h = Scalar(0.5);
    TwoModeTransfer<Scalar> m;
    m << h * (C(1) - e), h * i * (C(1) + e),
         h * i * (C(1) + e), -h * (C(1) - e);
    return m;
}

template <typename DerivedT, typename DerivedF>
auto apply(const Eigen::MatrixBase<DerivedT>& t, const Eigen::MatrixBase<DerivedF>& f) {
    using Scalar = typename DerivedT::Scalar::value_type;
    return FieldPair<Scalar>(t * f);
}

template <typename Scalar>
Scalar intensity(const std::complex<Scalar>& a) {
    return a.real() * a.real() + a.imag() * a.imag();
}

template <typename Scalar>
Scalar total_intensity(const FieldPair<Scalar>& f) {
    return intensity(f(0)) + intensity(f(1));
}

template <typename Scalar>
bool is_finite(const std::complex<Scalar>& a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
}

/// Largest entry magnitude of M M^H - I.
template <typename Derived>
auto unitarity_defect(const Eigen::MatrixBase<Derived>& m) {
    using C = typename Derived::Scalar;
    const Eigen::Matrix<C, 2, 2> d = m * m.adjoint() - Eigen::Matrix<C, 2, 2>::Identity();
    return d.cwiseAbs().maxCoeff();
}

}  // namespace homsim
