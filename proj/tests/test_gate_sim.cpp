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


#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "ftopt/gate_sim.hpp"

using namespace ftopt;

namespace {

using C = std::complex<double>;
using Super = Eigen::Matrix4cd;
constexpr double kPi = std::numbers::pi;

/// Column-stacking vec: vec(A X B) = (B^T kron A) vec(X).
Super kron(const Mat2 &a, const Mat2 &b) {
    Super k;
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++)
            k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
}

/// Lindblad generator of H = (Omega/2) sigma_x with decay |1> -> |0> at rate gamma.
Super lindbladian(double omega, double gamma) {
    Mat2 I = Mat2::Identity();
    Mat2 H;
    H << 0, omega / 2, omega / 2, 0;
    Mat2 L;
    L << 0, 1, 0, 0;
    Mat2 LdL = L.adjoint() * L;
    Super S = C(0, -1) * (kron(I, H) - kron(H.transpose(), I));
    S += gamma * (kron(L.conjugate(), L) - 0.5 * kron(I, LdL) - 0.5 * kron(LdL.transpose(), I));
    return S;
}

/// PTM of the propagator exp(S tau), via the Pauli basis.
Ptm exact_pulse_ptm(const GateSpec &spec) {
    PulseParams p = pulse_params(spec);
    Super prop = (lindbladian(p.omega, spec.gamma) * p.tau).exp();
    const auto &P = pauli::basis();
    Ptm R;
    for (int j = 0; j < 4; j++) {
        Eigen::Vector4cd v = Eigen::Map<const Eigen::Vector4cd>(P[j].data());
        Eigen::Vector4cd w = prop * v;
        Mat2 out = Eigen::Map<const Mat2>(w.data());
        for (int i = 0; i < 4; i++) {
            R(i, j) = 0.5 * (P[i] * out).trace().real();
        }
    }
    return R;
}

}  // namespace

TEST(Pulse, Parameters) {
    PulseParams p = pulse_params(make_gate_spec(kPi, 1, 100));
    EXPECT_NEAR(p.omega, 127.32395, 1e-5);
    EXPECT_NEAR(p.tau, 0.024674, 1e-6);
    EXPECT_NEAR(p.omega * p.tau, kPi, 1e-12);
    EXPECT_NEAR(pulse_params(make_gate_spec(kPi, 10, 1e6)).tau, 2.4674e-7, 1e-11);
}

TEST(Pulse, Validation) {
    EXPECT_THROW(make_gate_spec(0, 1, 100), std::invalid_argument);
    EXPECT_THROW(make_gate_spec(kPi, 0, 100), std::invalid_argument);
    EXPECT_THROW(make_gate_spec(kPi, 1, -5), std::invalid_argument);
    EXPECT_THROW(make_gate_spec(kPi, 1, 10, -1), std::invalid_argument);
}

TEST(Pulse, RwaMargin) {
    EXPECT_TRUE(std::isinf(gate_rwa_margin(make_gate_spec(kPi, 1, 100))));
    GateSpec s = make_gate_spec(kPi, 10, 1e6, 1e9);
    EXPECT_DOUBLE_EQ(gate_rwa_margin(s), 100);
    EXPECT_TRUE(evolve_noisy_gate(make_gate_spec(kPi, 1, 1000, 5e4)).rwa_warning);
    EXPECT_FALSE(evolve_noisy_gate(make_gate_spec(kPi, 1, 1000, 1e9)).rwa_warning);
}

TEST(ChannelAlgebra, KnownChannels) {
    auto id = extract_chi_diag(Ptm::Identity());
    EXPECT_NEAR(id[0], 1, 1e-15);
    auto flip = extract_chi_diag(x_rotation_ptm(kPi));
    EXPECT_NEAR(flip[0], 0, 1e-15);
    EXPECT_NEAR(flip[1], 1, 1e-15);
    // Depolarising with probability p on each Pauli.
    double p = 0.01;
    Ptm dep = Ptm::Identity();
    for (int a = 1; a < 4; a++) dep(a, a) = 1 - 4 * p;
    auto chi = extract_chi_diag(dep);
    EXPECT_NEAR(chi[0], 1 - 3 * p, 1e-15);
    for (int a = 1; a < 4; a++) EXPECT_NEAR(chi[a], p, 1e-15);
    Ptm leaky = Ptm::Identity();
    leaky(0, 0) = 0.9;
    EXPECT_THROW(extract_chi_diag(leaky), std::invalid_argument);
}

TEST(ChannelAlgebra, ChoiOfUnitaryIsRankOne) {
    Ptm R = x_rotation_ptm(0.7);
    EXPECT_NEAR(min_choi_eigenvalue(R), 0, 1e-12);
    EXPECT_LT(trace_preservation_error(R), 1e-15);
    Mat2 X = pauli::basis()[3];
    Mat2 Y = apply_ptm(x_rotation_ptm(kPi), X);
    EXPECT_NEAR((Y + X).norm(), 0, 1e-14);
}

TEST(GateSim, AgreesWithMatrixExponential) {
    for (double theta : {kPi, kPi / 2, 0.3}) {
        for (double ng : {10.0, 100.0, 1000.0}) {
            GateSpec spec = make_gate_spec(theta, 2.0, ng);
            Ptm exact = exact_pulse_ptm(spec);
            Ptm rk4 = noisy_gate_ptm(spec, detail::default_steps(spec));
            EXPECT_LT((exact - rk4).cwiseAbs().maxCoeff(), 1e-11) << "theta=" << theta << " ng=" << ng;
            QubitChannel ch = evolve_noisy_gate(spec);
            auto chi = extract_chi_diag(x_rotation_ptm(-theta) * exact);
            for (int i = 0; i < 4; i++) {
                EXPECT_NEAR(ch.chi_diag[i], chi[i], 1e-11 + 1e-8 * std::abs(chi[i]));
            }
        }
    }
}

TEST(GateSim, FourthOrderConvergence) {
    GateSpec spec = make_gate_spec(kPi, 1.0, 100);
    Ptm exact = exact_pulse_ptm(spec);
    double e1 = (noisy_gate_ptm(spec, 20) - exact).cwiseAbs().maxCoeff();
    double e2 = (noisy_gate_ptm(spec, 40) - exact).cwiseAbs().maxCoeff();
    EXPECT_GT(e1 / e2, 14);
    EXPECT_LT(e1 / e2, 18);
}

TEST(GateSim, TwoHalfPulsesComposeToFullPulse) {
    // Same Rabi frequency: a pi/2 pulse carries half the photons of a pi pulse.
    for (double ng : {50.0, 500.0}) {
        GateSpec full = make_gate_spec(kPi, 1.0, ng);
        GateSpec half = make_gate_spec(kPi / 2, 1.0, ng / 2);
        Ptm h = noisy_gate_ptm(half, 4 * detail::default_steps(half));
        Ptm f = noisy_gate_ptm(full, 4 * detail::default_steps(full));
        EXPECT_LT((h * h - f).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(GateSim, PauliErrorsApproachLeadingOrder) {
    struct Case {
        double ng, tol;
    };
    for (Case c : {Case{1e2, 0.05}, Case{1e3, 0.02}, Case{1e4, 0.01}}) {
        QubitChannel ch = evolve_noisy_gate(make_gate_spec(kPi, 1.0, c.ng));
        PauliErrors lead = asymptotic_pauli_errors(c.ng);
        EXPECT_TRUE(ch.converged);
        EXPECT_NEAR(ch.chi_diag[1] / lead.p_x, 1, c.tol);
        EXPECT_NEAR(ch.chi_diag[1] / ch.chi_diag[2], 2, 0.05 * 2);
    }
}

TEST(GateSim, ReferenceRatios) {
    QubitChannel ch = evolve_noisy_gate(make_gate_spec(kPi, 1.0, 100));
    double lead = kPi * kPi / 1600;
    EXPECT_NEAR(ch.chi_diag[1] / lead, 0.98928, 2e-5);
    EXPECT_NEAR(ch.chi_diag[1] / ch.chi_diag[2], 1.99079, 2e-5);
}

TEST(GateSim, PhysicalChannelOnGrid) {
    for (double theta : {0.2, kPi / 2, kPi, 1.7 * kPi}) {
        for (double ng : {3.0, 30.0, 3e3, 1e5}) {
            for (double gamma : {0.1, 10.0}) {
                QubitChannel ch = evolve_noisy_gate(make_gate_spec(theta, gamma, ng));
                EXPECT_LT(trace_preservation_error(ch.ptm), 1e-9);
                EXPECT_GE(min_choi_eigenvalue(ch.ptm), -1e-8);
                double total = ch.chi_diag[0] + ch.chi_diag[1] + ch.chi_diag[2] + ch.chi_diag[3];
                EXPECT_NEAR(total, 1, 1e-9);
            }
        }
    }
}

TEST(GateSim, NoiseMapContractsBlochBall) {
    QubitChannel ch = evolve_noisy_gate(make_gate_spec(kPi, 1.0, 20));
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int t = 0; t < 200; t++) {
        Eigen::Vector3d r(g(rng), g(rng), g(rng));
        r.normalize();
        Eigen::Vector4d in(1, r(0), r(1), r(2));
        Eigen::Vector4d out = ch.ptm * in;
        EXPECT_NEAR(out(0), 1, 1e-12);
        EXPECT_LE(out.tail<3>().norm(), 1 + 1e-12);
    }
}
