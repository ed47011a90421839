// Copyright 2026 The ftopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FTOPT_GATE_SIM_HPP
#define FTOPT_GATE_SIM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ftopt {

// Resonantly driven qubit in a zero-temperature waveguide. The gate is a square
// pulse rotating the qubit by theta about x; spontaneous emission at rate gamma
// is the only noise. Everything is integrated in the rotating frame after the
// RWA, where the drive is the constant Hamiltonian (Omega/2) sigma_x (hbar = 1).
// Basis ordering is (|0>, |1>) with sigma_z = |0><0| - |1><1| and the lowering
// operator sigma_- = |0><1|.

using Mat2 = Eigen::Matrix2cd;
using Ptm = Eigen::Matrix4d;

struct GateSpec {
    double theta = std::numbers::pi;
    double gamma = 1;
    double n_g = 1;     ///< mean photon number in the pulse
    double omega0 = 0;  ///< qubit angular frequency; 0 when unknown (no RWA check)
};

inline GateSpec make_gate_spec(double theta, double gamma, double n_g, double omega0 = 0) {
    if (!(theta > 0 && theta <= 2 * std::numbers::pi)) {
        throw std::invalid_argument("gate: theta must lie in (0, 2 pi]");
    }
    if (!(gamma > 0) || std::isinf(gamma)) {
        throw std::invalid_argument("gate: gamma must be finite and > 0");
    }
    if (!(n_g > 0) || std::isinf(n_g)) {
        throw std::invalid_argument("gate: n_g must be finite and > 0");
    }
    if (!(omega0 >= 0) || std::isinf(omega0)) {
        throw std::invalid_argument("gate: omega0 must be finite and >= 0");
    }
    return GateSpec{theta, gamma, n_g, omega0};
}

struct PulseParams {
    double omega = 0;  ///< Rabi frequency
    double tau = 0;    ///< pulse duration
};

/// Omega = 4 gamma n_g / theta and tau = theta^2 / (4 gamma n_g), so Omega tau = theta.
inline PulseParams pulse_params(const GateSpec &spec) {
    return {4 * spec.gamma * spec.n_g / spec.theta, spec.theta * spec.theta / (4 * spec.gamma * spec.n_g)};
}

/// (omega0/gamma)/n_g; +inf when omega0 is unknown.
inline double gate_rwa_margin(const GateSpec &spec) {
    if (spec.omega0 == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return spec.omega0 / spec.gamma / spec.n_g;
}

inline constexpr double kRwaMarginalRatio = 100;

namespace pauli {

inline const std::array<Mat2, 4> &basis() {
    static const std::array<Mat2, 4> b = [] {
        using C = std::complex<double>;
        std::array<Mat2, 4> m;
        m[0] << 1, 0, 0, 1;
        m[1] << 0, 1, 1, 0;
        m[2] << 0, C(0, -1), C(0, 1), 0;
        m[3] << 1, 0, 0, -1;
        return m;
    }();
    return b;
}

}  // namespace pauli

/// Pauli transfer matrix R_ij = (1/2) Tr(sigma_i E(sigma_j)) of a map given on
/// the Pauli operators.
template <typename Map>
Ptm ptm_of(const Map &apply) {
    const auto &P = pauli::basis();
    Ptm R;
    for (int j = 0; j < 4; j++) {
        Mat2 out = apply(P[j]);
        for (int i = 0; i < 4; i++) {
            R(i, j) = 0.5 * (P[i] * out).trace().real();
        }
    }
    return R;
}

/// PTM of rho -> U rho U^dagger with U = exp(-i theta sigma_x / 2).
inline Ptm x_rotation_ptm(double theta) {
    using C = std::complex<double>;
    Mat2 U;
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    U << c, C(0, -s), C(0, -s), c;
    return ptm_of([&](const Mat2 &rho) -> Mat2 { return U * rho * U.adjoint(); });
}

/// Applies a PTM to an arbitrary 2x2 operator.
inline Mat2 apply_ptm(const Ptm &R, const Mat2 &X) {
    const auto &P = pauli::basis();
    // Real and imaginary Pauli components go through R separately so
    // non-Hermitian inputs (|i><j|) are handled.
    Eigen::Vector4d in_re, in_im;
    for (int j = 0; j < 4; j++) {
        std::complex<double> c = 0.5 * (P[j] * X).trace();
        in_re(j) = c.real();
        in_im(j) = c.imag();
    }
    Eigen::Vector4d out = R * in_re;
    Eigen::Vector4d out_im = R * in_im;
    Mat2 Y = Mat2::Zero();
    for (int i = 0; i < 4; i++) {
        Y += std::complex<double>(out(i), out_im(i)) * P[i];
    }
    return Y;
}

/// Choi matrix J = sum_ij |i><j| (x) E(|i><j|).
inline Eigen::Matrix4cd choi_from_ptm(const Ptm &R) {
    Eigen::Matrix4cd J = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            Mat2 Eij = Mat2::Zero();
            Eij(i, j) = 1;
            J.block<2, 2>(2 * i, 2 * j) = apply_ptm(R, Eij);
        }
    }
    return J;
}

inline double min_choi_eigenvalue(const Ptm &R) {
    Eigen::Matrix4cd J = choi_from_ptm(R);
    Eigen::Matrix4cd H = 0.5 * (J + J.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(H, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

/// Max deviation of the first PTM row from (1, 0, 0, 0).
inline double trace_preservation_error(const Ptm &R) {
    return std::max({std::abs(R(0, 0) - 1), std::abs(R(0, 1)), std::abs(R(0, 2)), std::abs(R(0, 3))});
}

/// Diagonal of the chi matrix (chi_00, p_x, p_y, p_z) from a trace-preserving PTM.
///
/// With s_a = (1/2) Tr{sigma_a E(sigma_a)} = R_aa, the diagonal satisfies
///   s_0 = chi_00 + chi_11 + chi_22 + chi_33
///   s_a = chi_00 + chi_aa - sum_{b != 0,a} chi_bb   (a = 1, 2, 3)
/// The coefficient matrix M obeys M M = 4 I, so chi = M s / 4.
inline std::array<double, 4> extract_chi_diag(const Ptm &R) {
    if (trace_preservation_error(R) > 1e-9) {
        throw std::invalid_argument("extract_chi_diag: map is not trace preserving");
    }
    static const Eigen::Matrix4d M = (Eigen::Matrix4d() << 1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1)
                                         .finished();
    Eigen::Vector4d s = R.diagonal();
    Eigen::Vector4d chi = M * s / 4.0;
    return {chi(0), chi(1), chi(2), chi(3)};
}

struct QubitChannel {
    Ptm ptm = Ptm::Identity();
    std::array<double, 4> chi_diag{1, 0, 0, 0};
    bool converged = false;
    long steps = 0;  ///< RK4 steps used for the reported map
    double rwa_margin = std::numeric_limits<double>::infinity();
    bool rwa_warning = false;
};

namespace detail {

inline Mat2 lindblad_rhs(const Mat2 &rho, double omega, double gamma) {
    static const Mat2 sm = (Mat2() << 0, 1, 0, 0).finished();
    static const Mat2 sp = sm.adjoint();
    static const Mat2 n_exc = sp * sm;
    const std::complex<double> minus_i(0, -1);
    Mat2 H = (omega / 2) * pauli::basis()[1];
    return minus_i * (H * rho - rho * H) + gamma * (sm * rho * sp - 0.5 * (n_exc * rho + rho * n_exc));
}

inline Mat2 rk4_evolve(Mat2 rho, double omega, double gamma, double tau, long steps) {
    const double h = tau / static_cast<double>(steps);
    for (long n = 0; n < steps; n++) {
        Mat2 k1 = lindblad_rhs(rho, omega, gamma);
        Mat2 k2 = lindblad_rhs(rho + (h / 2) * k1, omega, gamma);
        Mat2 k3 = lindblad_rhs(rho + (h / 2) * k2, omega, gamma);
        Mat2 k4 = lindblad_rhs(rho + h * k3, omega, gamma);
        rho += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return rho;
}

/// Default step count: h <= min(tau/1000, 0.01/Omega, 0.01/gamma).
inline long default_steps(const GateSpec &spec) {
    auto [omega, tau] = pulse_params(spec);
    double h = std::min({tau / 1000, 0.01 / omega, 0.01 / spec.gamma});
    return static_cast<long>(std::ceil(tau / h));
}

}  // namespace detail

/// Pauli transfer matrix of the noisy pulse (no ideal-gate inversion) using a
/// fixed number of RK4 steps. The map is assembled from the four states
/// |0>, |1>, |+>, |+i>.
inline Ptm noisy_gate_ptm(const GateSpec &spec, long steps) {
    if (steps < 1) {
        throw std::invalid_argument("noisy_gate_ptm: steps must be >= 1");
    }
    auto [omega, tau] = pulse_params(spec);
    using C = std::complex<double>;
    auto evolve = [&](const Mat2 &rho0) { return detail::rk4_evolve(rho0, omega, spec.gamma, tau, steps); };
    Mat2 r0, r1, rp, rpi;
    r0 << 1, 0, 0, 0;
    r1 << 0, 0, 0, 1;
    rp << 0.5, 0.5, 0.5, 0.5;
    rpi << 0.5, C(0, -0.5), C(0, 0.5), 0.5;
    Mat2 e0 = evolve(r0), e1 = evolve(r1), ep = evolve(rp), epi = evolve(rpi);
    // Images of the Pauli operators by linearity.
    std::array<Mat2, 4> images{e0 + e1, 2 * ep - (e0 + e1), 2 * epi - (e0 + e1), e0 - e1};
    const auto &P = pauli::basis();
    Ptm R;
    for (int j = 0; j < 4; j++) {
        for (int i = 0; i < 4; i++) {
            R(i, j) = 0.5 * (P[i] * images[j]).trace().real();
        }
    }
    return R;
}

/// Noise map E = G^-1 o G~ for a fixed step count, without convergence control.
inline QubitChannel noise_channel_fixed(const GateSpec &spec, long steps) {
    QubitChannel ch;
    ch.ptm = x_rotation_ptm(-spec.theta) * noisy_gate_ptm(spec, steps);
    ch.chi_diag = extract_chi_diag(ch.ptm);
    ch.steps = steps;
    ch.rwa_margin = gate_rwa_margin(spec);
    ch.rwa_warning = ch.rwa_margin <= kRwaMarginalRatio;
    return ch;
}

inline constexpr double kChiConvergenceRel = 1e-9;
inline constexpr double kChiConvergenceAbs = 1e-14;

/// Integrates the driven master equation over one pulse and returns the noise
/// channel E = G^-1 o G~. The step count starts from the default rule and is
/// doubled until halving h changes every chi_diag entry by less than 1e-9
/// relative; `converged` is false if that never happens within the refinement cap.
inline QubitChannel evolve_noisy_gate(const GateSpec &spec, int max_refinements = 8) {
    make_gate_spec(spec.theta, spec.gamma, spec.n_g, spec.omega0);
    long steps = detail::default_steps(spec);
    const double tau = pulse_params(spec).tau;
    QubitChannel coarse = noise_channel_fixed(spec, steps);
    for (int r = 0; r < max_refinements; r++) {
        if (tau / static_cast<double>(2 * steps) < tau * 1e-12) {
            throw std::runtime_error("evolve_noisy_gate: step size underflow");
        }
        QubitChannel fine = noise_channel_fixed(spec, 2 * steps);
        bool ok = true;
        for (int i = 0; i < 4; i++) {
            double diff = std::abs(fine.chi_diag[i] - coarse.chi_diag[i]);
            ok = ok && diff <= kChiConvergenceRel * std::abs(fine.chi_diag[i]) + kChiConvergenceAbs;
        }
        if (ok) {
            fine.converged = true;
            return fine;
        }
        coarse = fine;
        steps *= 2;
    }
    coarse.converged = false;
    return coarse;
}

struct PauliErrors {
    double p_x = 0;
    double p_y = 0;
    double p_z = 0;
};

/// Leading-order Pauli error probabilities of the pi pulse:
/// p_x = pi^2/(16 n_g), p_y = p_z = pi^2/(32 n_g). p_x is the largest and is
/// used as the physical error rate eta.
inline PauliErrors asymptotic_pauli_errors(double n_g) {
    if (!(n_g > 0)) {
        throw std::invalid_argument("asymptotic_pauli_errors: n_g must be > 0");
    }
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    return {pi2 / (16 * n_g), pi2 / (32 * n_g), pi2 / (32 * n_g)};
}

}  // namespace ftopt

#endif
