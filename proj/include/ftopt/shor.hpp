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

#ifndef FTOPT_SHOR_HPP
#define FTOPT_SHOR_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ftopt/concat.hpp"
#include "ftopt/log_prob.hpp"
#include "ftopt/noise_model.hpp"
#include "ftopt/scheme.hpp"

namespace ftopt {

/// Reduced Planck constant in J s.
inline constexpr double kHbar = 1.054571817e-34;

/// Shor's algorithm on an R-bit key: L ~ R^2 logical gates, succeeding with
/// probability at least P_target.
struct ShorProblem {
    double R = 2;
    double L = 4;
    double P_target = 2.0 / 3.0;
};

inline ShorProblem make_shor_problem(double R, std::optional<double> L = std::nullopt, double P_target = 2.0 / 3.0) {
    if (!(R >= 2) || std::isinf(R)) {
        throw std::invalid_argument("shor: R must be >= 2");
    }
    double gates = L.value_or(R * R);
    if (!(gates >= 1) || std::isinf(gates)) {
        throw std::invalid_argument("shor: L must be >= 1");
    }
    if (!(P_target > 0.5 && P_target < 1)) {
        throw std::invalid_argument("shor: P_target must lie in (1/2, 1)");
    }
    return ShorProblem{R, gates, P_target};
}

/// Error budget per logical gate: 1/(3L) for P_target = 2/3, otherwise the
/// small-error expansion -ln(P_target)/L of (1 - p)^L > P_target.
inline double target_logical_error(const ShorProblem &problem) {
    if (std::abs(problem.P_target - 2.0 / 3.0) < 1e-12) {
        return 1.0 / (3.0 * problem.L);
    }
    return -std::log(problem.P_target) / problem.L;
}

/// Noise law for a per-logical-gate photon budget n_L: total budget n_L * L
/// shared over L A^k physical pi pulses.
inline NoiseModel shor_photon_model(const ShorProblem &problem, double n_L, const FTScheme &scheme) {
    if (!(n_L > 0) || std::isinf(n_L)) {
        throw std::invalid_argument("photon budget n_L must be finite and > 0");
    }
    return make_shor_photon(problem.L, n_L * problem.L, static_cast<double>(scheme.A));
}

inline OptResult optimize_photon_budget(
    const ShorProblem &problem, double n_L, const FTScheme &scheme, Level k_cap = kDefaultLevelCap) {
    return find_kmax(scheme, shor_photon_model(problem, n_L, scheme), k_cap);
}

struct BudgetResult {
    bool feasible = false;
    double n_L_min = 0;  ///< smallest sufficient photons per logical gate (within 1%)
    Level k = 0;         ///< optimal level at n_L_min
    LogProb log10_p_min;
    LogProb log10_target;
};

inline constexpr double kMaxLog10PhotonBudget = 30;

/// Smallest photons-per-logical-gate reaching a given logical error target,
/// by bisection on log10 n_L over [1, 1e30] to 1% relative precision.
inline BudgetResult min_photon_budget_for_target(
    double L, LogProb log10_target, const FTScheme &scheme, Level k_cap = kDefaultLevelCap) {
    ShorProblem problem{2, L, 2.0 / 3.0};
    std::vector<std::pair<double, double>> trail;  // (log10 n_L, log10 p_min)
    auto p_min_at = [&](double log10_nL) {
        OptResult r = optimize_photon_budget(problem, std::pow(10.0, log10_nL), scheme, k_cap);
        trail.emplace_back(log10_nL, r.log10_p_min.log10());
        return r;
    };

    BudgetResult out;
    out.log10_target = log10_target;
    OptResult at_hi = p_min_at(kMaxLog10PhotonBudget);
    if (at_hi.log10_p_min > log10_target) {
        out.feasible = false;
        out.n_L_min = std::pow(10.0, kMaxLog10PhotonBudget);
        out.k = at_hi.k_max;
        out.log10_p_min = at_hi.log10_p_min;
        return out;
    }
    double lo = 0, hi = kMaxLog10PhotonBudget;
    OptResult best = at_hi;
    OptResult at_lo = p_min_at(lo);
    if (at_lo.log10_p_min <= log10_target) {
        hi = lo;
        best = at_lo;
    } else {
        const double tol = std::log10(1.01);
        while (hi - lo > tol) {
            double mid = 0.5 * (lo + hi);
            OptResult r = p_min_at(mid);
            if (r.log10_p_min <= log10_target) {
                hi = mid;
                best = std::move(r);
            } else {
                lo = mid;
            }
        }
    }

    // Bisection is only valid if p_min is non-increasing in n_L along the probes.
    std::sort(trail.begin(), trail.end());
    for (size_t i = 1; i < trail.size(); i++) {
        if (trail[i].second > trail[i - 1].second) {
            throw std::runtime_error("min_photon_budget: p_min not monotone in n_L; bisection invalid");
        }
    }

    out.feasible = true;
    out.n_L_min = std::pow(10.0, hi);
    out.k = best.k_max;
    out.log10_p_min = best.log10_p_min;
    return out;
}

inline BudgetResult min_photon_budget(const ShorProblem &problem, const FTScheme &scheme, Level k_cap = kDefaultLevelCap) {
    return min_photon_budget_for_target(
        problem.L, LogProb::from_linear(target_logical_error(problem)), scheme, k_cap);
}

/// Photon, energy, power and timing figures for one sequential run.
struct EnergyBill {
    double n_L = 0;    ///< photons per logical gate
    double n_g = 0;    ///< photons per physical gate
    Level k = 0;
    double E_tot = 0;  ///< J
    double P_avg = 0;  ///< W
    double tau_g = 0;  ///< s, physical pi-pulse duration (clock interval)
    double tau_L = 0;  ///< s, logical gate duration
    double T_tot = 0;  ///< s
};

inline EnergyBill energy_bill(
    const ShorProblem &problem, double n_L, Level k, double gamma, double omega0, const FTScheme &scheme) {
    if (!(n_L > 0) || !(gamma > 0) || !(omega0 > 0) || k < 0) {
        throw std::invalid_argument("energy_bill: n_L, gamma, omega0 must be > 0 and k >= 0");
    }
    EnergyBill b;
    b.n_L = n_L;
    b.k = k;
    b.n_g = n_L / std::pow(static_cast<double>(scheme.A), k);
    b.tau_g = std::numbers::pi * std::numbers::pi / (4 * gamma * b.n_g);
    b.tau_L = std::pow(static_cast<double>(scheme.M), k) * b.tau_g;
    b.T_tot = problem.L * b.tau_L;
    b.E_tot = kHbar * omega0 * problem.L * n_L;
    b.P_avg = b.E_tot / b.T_tot;
    return b;
}

struct RwaMargin {
    double ratio = 0;  ///< (omega0/gamma) / n_g
    bool marginal = false;
};

inline RwaMargin rwa_margin(double n_L, Level k, double gamma, double omega0, const FTScheme &scheme) {
    if (!(n_L > 0) || !(gamma > 0) || !(omega0 > 0) || k < 0) {
        throw std::invalid_argument("rwa_margin: inputs must be positive");
    }
    double n_g = n_L / std::pow(static_cast<double>(scheme.A), k);
    double ratio = (omega0 / gamma) / n_g;
    return {ratio, ratio <= 100};
}

}  // namespace ftopt

#endif
