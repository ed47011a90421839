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

#ifndef FTOPT_CONCAT_HPP
#define FTOPT_CONCAT_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ftopt/log_prob.hpp"
#include "ftopt/noise_model.hpp"
#include "ftopt/scheme.hpp"

namespace ftopt {

inline constexpr Level kDefaultLevelCap = 64;

/// Logical error bound of a level-k gate, p(k) = (1/B) (B eta(k))^(2^k),
/// evaluated in log10 space. At k = 0 this is eta(0) itself.
inline LogProb logical_error_log10(double log10_B, LogProb eta_k, Level k) {
    if (k < 0) {
        throw std::invalid_argument("level must be >= 0");
    }
    if (k == 0) {
        return eta_k;
    }
    if (eta_k.is_zero()) {
        return LogProb::zero();
    }
    return LogProb(-log10_B + std::ldexp(1.0, k) * (log10_B + eta_k.log10()));
}

/// Same as above with a real-valued B (used by the crosstalk mapping, where B
/// becomes 2 e^(2+1/e) B^2).
inline LogProb logical_error_log10(double log10_B, const NoiseModel &model, Level k, double log10_D) {
    return logical_error_log10(log10_B, eta_at_level(model, k, log10_D), k);
}

inline LogProb logical_error_log10(const FTScheme &scheme, const NoiseModel &model, Level k) {
    return logical_error_log10(scheme.log10_B(), model, k, scheme.log10_D());
}

/// log10 p(k) of the exponential model at real-valued k (for the continuous
/// relaxation used by the analytic bounds).
inline double exp_model_log10_p(double B, double D, double eta0, double beta, double k) {
    double bracket = std::log10(B) + std::log10(eta0) + beta * k * std::log10(D);
    return -std::log10(B) + std::exp2(k) * bracket;
}

enum class OptStatus { optimum_found, unbounded_improvement, no_encoding_best };

inline std::string to_string(OptStatus s) {
    switch (s) {
        case OptStatus::optimum_found:
            return "optimum-found";
        case OptStatus::unbounded_improvement:
            return "unbounded-improvement";
        case OptStatus::no_encoding_best:
            return "no-encoding-best";
    }
    return "?";
}

inline OptStatus opt_status_from_string(std::string_view s) {
    if (s == "optimum-found") return OptStatus::optimum_found;
    if (s == "unbounded-improvement") return OptStatus::unbounded_improvement;
    if (s == "no-encoding-best") return OptStatus::no_encoding_best;
    throw std::invalid_argument("unknown status '" + std::string(s) + "'");
}

struct CurvePoint {
    Level k = 0;
    LogProb log10_p;
};

struct OptResult {
    Level k_max = 0;
    LogProb log10_p_min;
    OptStatus status = OptStatus::no_encoding_best;
    std::vector<CurvePoint> curve;  ///< k = 0..k_cap
};

/// Exhaustive scan of a logical-error curve over k = 0..k_cap.
///
/// k_max is the smallest global argmin, so curves with several local minima
/// are handled and ties go to the cheaper hardware. The curve is reported as
/// unbounded-improvement when the last point is strictly below every earlier one.
template <typename CurveFn>
OptResult scan_levels(CurveFn &&log10_p_at, Level k_cap) {
    if (k_cap < 1) {
        throw std::invalid_argument("k_cap must be >= 1");
    }
    OptResult r;
    r.curve.reserve(k_cap + 1);
    for (Level k = 0; k <= k_cap; k++) {
        r.curve.push_back({k, log10_p_at(k)});
    }
    r.k_max = 0;
    r.log10_p_min = r.curve[0].log10_p;
    for (const auto &pt : r.curve) {
        if (pt.log10_p < r.log10_p_min) {
            r.k_max = pt.k;
            r.log10_p_min = pt.log10_p;
        }
    }
    if (r.k_max == 0) {
        r.status = OptStatus::no_encoding_best;
    } else if (r.k_max == k_cap) {
        // k_max is the first argmin, so the last point is strictly below all others.
        r.status = OptStatus::unbounded_improvement;
    } else {
        r.status = OptStatus::optimum_found;
    }
    return r;
}

/// Optimal concatenation depth for a scheme and noise law. Tabulated models are
/// scanned only up to their last entry.
inline OptResult find_kmax(const FTScheme &scheme, const NoiseModel &model, Level k_cap = kDefaultLevelCap) {
    Level cap = std::min(k_cap, max_level(model));
    if (cap < 1) {
        throw std::invalid_argument("find_kmax: need at least levels 0 and 1 (k_cap >= 1, table length >= 2)");
    }
    return scan_levels([&](Level k) { return logical_error_log10(scheme, model, k); }, cap);
}

struct AffineThreshold {
    double c_star = 0;
    bool helps = false;  ///< false when B eta0 >= 1: no slope lets one level help
};

/// Largest affine slope for which one level of encoding still helps:
/// c* = 1/sqrt(B eta0) - 1, so p(1) < p(0) iff c < c*.
inline AffineThreshold affine_usefulness_threshold(double B, double eta0) {
    if (!(B >= 1) || !(eta0 > 0)) {
        throw std::invalid_argument("affine_usefulness_threshold: need B >= 1 and eta0 > 0");
    }
    double b_eta = B * eta0;
    if (b_eta >= 1) {
        return {0.0, false};
    }
    return {1.0 / std::sqrt(b_eta) - 1.0, true};
}

/// Upper bound 1 + f^-1(1/(B eta0)) on k_max for a tabulated law.
///
/// f^-1 interpolates log f linearly between integer levels (exact for
/// exponential tables). Returns 1 when 1/(B eta0) < 1 and +infinity when f
/// never reaches the target (flat tail: no turnaround).
inline double generic_kmax_bound(const FTScheme &scheme, const NoiseModel &model) {
    const auto *table = std::get_if<TabulatedNoise>(&model);
    if (table == nullptr) {
        throw std::invalid_argument("generic_kmax_bound: requires a tabulated noise model");
    }
    const auto &f = table->f_values;
    double target = 1.0 / (static_cast<double>(scheme.B) * table->eta0);
    if (target <= 1.0) {
        return 1.0;
    }
    double log_target = std::log(target);
    for (size_t k = 1; k < f.size(); k++) {
        if (f[k] >= target) {
            double lo = std::log(f[k - 1]);
            double hi = std::log(f[k]);
            return 1.0 + static_cast<double>(k - 1) + (log_target - lo) / (hi - lo);
        }
    }
    if (f.size() < 2 || f[f.size() - 1] == f[f.size() - 2]) {
        return std::numeric_limits<double>::infinity();
    }
    double slope = std::log(f.back()) - std::log(f[f.size() - 2]);
    return 1.0 + static_cast<double>(f.size() - 1) + (log_target - std::log(f.back())) / slope;
}

/// Critical physical error rate below which one level of concatenation helps
/// under eta(k) = eta0 D^(beta k): eta* = 1 / (B D^(2 beta)).
inline double one_level_condition(double B, double D, double beta) {
    if (!(B >= 1) || !(D >= 1) || !(beta >= 0)) {
        throw std::invalid_argument("one_level_condition: need B >= 1, D >= 1, beta >= 0");
    }
    return 1.0 / (B * std::pow(D, 2 * beta));
}

/// Closed-form bracketing of the optimum for the exponential law.
struct BoundsReport {
    double k_st = 0;     ///< stationary point of the continuous p(k)
    double k_tilde = 0;  ///< crossing point p(k~) = p(k~ - 1)
    LogProb log10_p_lower;
    LogProb log10_p_upper;
    bool useful = false;
};

inline BoundsReport exp_model_bounds(const FTScheme &scheme, double eta0, double beta) {
    if (!(beta > 0) || std::isinf(beta)) {
        throw std::invalid_argument("exp_model_bounds: beta must be > 0");
    }
    detail::require_probability(eta0);
    if (scheme.D < 2) {
        throw std::invalid_argument("exp_model_bounds: D must be >= 2");
    }
    const double B = static_cast<double>(scheme.B);
    const double ln_D = std::log(static_cast<double>(scheme.D));
    const double ln_b_eta = std::log(B * eta0);
    const double g1 = ln_D / 2;
    const double g2 = std::numbers::ln2 / ln_D;

    BoundsReport r;
    r.k_st = -1.0 / std::numbers::ln2 - ln_b_eta / (beta * ln_D);
    r.k_tilde = -(ln_b_eta + beta * ln_D) / (beta * ln_D);
    double ln_lower = -std::log(B) - (beta / g2) * std::exp(-1.0 - g2 * ln_b_eta / beta);
    double ln_upper = -std::log(B) - g1 * beta * std::exp(-(g2 / beta) * ln_b_eta);
    auto to_log10 = [](double ln_value) {
        return std::isinf(ln_value) ? LogProb::zero() : LogProb(ln_value / std::numbers::ln10);
    };
    r.log10_p_lower = to_log10(ln_lower);
    r.log10_p_upper = to_log10(ln_upper);
    r.useful = eta0 < one_level_condition(B, static_cast<double>(scheme.D), beta);
    return r;
}

}  // namespace ftopt

#endif
