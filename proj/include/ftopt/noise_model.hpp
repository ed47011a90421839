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

#ifndef FTOPT_NOISE_MODEL_HPP
#define FTOPT_NOISE_MODEL_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "ftopt/log_prob.hpp"
#include "ftopt/scheme.hpp"

namespace ftopt {

/// eta(k) = eta0 * (1 + c k)
struct AffineNoise {
    double eta0 = 0;
    double c = 0;
    bool operator==(const AffineNoise &) const = default;
};

/// eta(k) = eta0 * D^(beta k). D belongs to the scheme and is supplied at evaluation.
struct ExponentialNoise {
    double eta0 = 0;
    double beta = 0;
    bool operator==(const ExponentialNoise &) const = default;
};

/// eta(k) = eta0 * f(k) for a monotone table with f(0) = 1.
struct TabulatedNoise {
    double eta0 = 0;
    std::vector<double> f_values;
    bool operator==(const TabulatedNoise &) const = default;
};

/// Resonant pi-pulse gates sharing a total photon budget n_tot over L logical
/// gates, with A^k physical gates per logical gate:
/// eta(k) = (pi^2/16) L A^k / n_tot.
struct ShorPhotonNoise {
    double L = 1;
    double n_tot = 1;
    double A = 1;
    bool operator==(const ShorPhotonNoise &) const = default;
};

using NoiseModel = std::variant<AffineNoise, ExponentialNoise, TabulatedNoise, ShorPhotonNoise>;

/// pi^2/16, the pi-pulse error coefficient per photon.
inline constexpr double kPiPulseErrorCoefficient = std::numbers::pi * std::numbers::pi / 16.0;

namespace detail {

inline void require_probability(double eta0) {
    if (!(eta0 > 0 && eta0 < 1)) {
        throw std::invalid_argument("eta0 must lie in (0, 1), got " + std::to_string(eta0));
    }
}

}  // namespace detail

inline NoiseModel make_affine(double eta0, double c) {
    detail::require_probability(eta0);
    if (!(c >= 0) || std::isinf(c)) {
        throw std::invalid_argument("affine slope c must be finite and >= 0");
    }
    return AffineNoise{eta0, c};
}

inline NoiseModel make_exponential(double eta0, double beta) {
    detail::require_probability(eta0);
    if (!(beta >= 0) || std::isinf(beta)) {
        throw std::invalid_argument("exponent beta must be finite and >= 0");
    }
    return ExponentialNoise{eta0, beta};
}

inline NoiseModel make_tabulated(double eta0, std::vector<double> f_values) {
    detail::require_probability(eta0);
    if (f_values.empty() || f_values.front() != 1.0) {
        throw std::invalid_argument("tabulated f must start with f(0) = 1");
    }
    for (size_t k = 1; k < f_values.size(); k++) {
        if (!(f_values[k] >= f_values[k - 1]) || std::isinf(f_values[k])) {
            throw std::invalid_argument("tabulated f must be finite and non-decreasing in k");
        }
    }
    return TabulatedNoise{eta0, std::move(f_values)};
}

inline NoiseModel make_shor_photon(double L, double n_tot, double A) {
    if (!(L >= 1) || !(n_tot > 0) || !(A >= 1) || std::isinf(L) || std::isinf(n_tot) || std::isinf(A)) {
        throw std::invalid_argument("shor photon model requires L >= 1, n_tot > 0, A >= 1");
    }
    return ShorPhotonNoise{L, n_tot, A};
}

/// Re-checks the invariants of a model built by aggregate initialization.
inline void validate(const NoiseModel &model) {
    std::visit(
        [](const auto &m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AffineNoise>) {
                make_affine(m.eta0, m.c);
            } else if constexpr (std::is_same_v<T, ExponentialNoise>) {
                make_exponential(m.eta0, m.beta);
            } else if constexpr (std::is_same_v<T, TabulatedNoise>) {
                make_tabulated(m.eta0, m.f_values);
            } else {
                make_shor_photon(m.L, m.n_tot, m.A);
            }
        },
        model);
}

inline double eta0_of(const NoiseModel &model) {
    return std::visit(
        [](const auto &m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ShorPhotonNoise>) {
                return kPiPulseErrorCoefficient * m.L / m.n_tot;
            } else {
                return m.eta0;
            }
        },
        model);
}

inline std::string variant_name(const NoiseModel &model) {
    static const char *names[] = {"affine", "exponential", "tabulated", "shor_photon"};
    return names[model.index()];
}

/// Highest level a model can be evaluated at (tables are finite).
inline Level max_level(const NoiseModel &model) {
    if (const auto *t = std::get_if<TabulatedNoise>(&model)) {
        return static_cast<Level>(t->f_values.size()) - 1;
    }
    return std::numeric_limits<Level>::max();
}

/// log10 eta(k), with the per-level growth factor D given as log10 D.
inline LogProb eta_at_level(const NoiseModel &model, Level k, double log10_D) {
    if (k < 0) {
        throw std::invalid_argument("level must be >= 0");
    }
    return std::visit(
        [&](const auto &m) -> LogProb {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AffineNoise>) {
                return LogProb(std::log10(m.eta0 * (1.0 + m.c * k)));
            } else if constexpr (std::is_same_v<T, ExponentialNoise>) {
                return LogProb(std::log10(m.eta0) + m.beta * k * log10_D);
            } else if constexpr (std::is_same_v<T, TabulatedNoise>) {
                if (static_cast<size_t>(k) >= m.f_values.size()) {
                    throw std::out_of_range(
                        "level " + std::to_string(k) + " beyond tabulated range " +
                        std::to_string(m.f_values.size() - 1));
                }
                return LogProb(std::log10(m.eta0) + std::log10(m.f_values[k]));
            } else {
                return LogProb(
                    std::log10(kPiPulseErrorCoefficient) + std::log10(m.L) + k * std::log10(m.A) -
                    std::log10(m.n_tot));
            }
        },
        model);
}

inline LogProb eta_at_level(const FTScheme &scheme, const NoiseModel &model, Level k) {
    return eta_at_level(model, k, scheme.log10_D());
}

enum class FitVariant { affine, exponential };

struct FitSample {
    double k = 0;
    double eta = 0;
};

struct FitResult {
    NoiseModel model;
    double residual = 0;  ///< RMS of the log10 eta misfit
    int n_points = 0;
};

namespace detail {

/// Ordinary least squares y = a + b x using centered sums.
inline std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y) {
    double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); i++) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); i++) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) {
        throw std::invalid_argument("fit: degenerate design matrix (all k equal)");
    }
    double b = sxy / sxx;
    return {my - b * mx, b};
}

}  // namespace detail

/// Least-squares fit of a scale-dependent noise law to measured (k, eta) pairs.
/// Affine fits eta linearly in k; exponential fits log10 eta linearly in k and
/// reports the slope as beta = slope / log10 D.
inline FitResult fit_noise_model(std::span<const FitSample> samples, FitVariant variant, std::int64_t D) {
    if (samples.size() < 2) {
        throw std::invalid_argument("fit: need at least 2 samples");
    }
    std::set<double> distinct;
    std::vector<double> ks, etas, log_etas;
    for (const auto &s : samples) {
        if (!(s.eta > 0 && s.eta < 1)) {
            throw std::invalid_argument("fit: eta outside (0, 1): " + std::to_string(s.eta));
        }
        if (!(s.k >= 0) || std::isinf(s.k)) {
            throw std::invalid_argument("fit: level must be finite and >= 0");
        }
        distinct.insert(s.k);
        ks.push_back(s.k);
        etas.push_back(s.eta);
        log_etas.push_back(std::log10(s.eta));
    }
    if (distinct.size() < 2) {
        throw std::invalid_argument("fit: degenerate design matrix (all k equal)");
    }

    FitResult result;
    result.n_points = static_cast<int>(samples.size());
    if (variant == FitVariant::affine) {
        auto [a, b] = detail::fit_line(ks, etas);
        if (!(a > 0 && a < 1)) {
            throw std::domain_error("fit: fitted eta0 outside (0, 1)");
        }
        if (b < 0) {
            throw std::domain_error("fit: fitted slope is negative (noise decreasing with scale)");
        }
        result.model = make_affine(a, b / a);
    } else {
        if (D < 2) {
            throw std::invalid_argument("fit: exponential variant needs D >= 2");
        }
        auto [a, b] = detail::fit_line(ks, log_etas);
        if (b < 0) {
            throw std::domain_error("fit: fitted exponent is negative (noise decreasing with scale)");
        }
        result.model = make_exponential(std::pow(10.0, a), b / std::log10(static_cast<double>(D)));
    }

    double log10_D = std::log10(static_cast<double>(D));
    double ss = 0;
    for (size_t i = 0; i < ks.size(); i++) {
        double predicted = std::visit(
            [&](const auto &m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, AffineNoise>) {
                    return std::log10(m.eta0 * (1 + m.c * ks[i]));
                } else if constexpr (std::is_same_v<T, ExponentialNoise>) {
                    return std::log10(m.eta0) + m.beta * ks[i] * log10_D;
                } else {
                    return 0.0;
                }
            },
            result.model);
        ss += (predicted - log_etas[i]) * (predicted - log_etas[i]);
    }
    result.residual = std::sqrt(ss / static_cast<double>(ks.size()));
    return result;
}

}  // namespace ftopt

#endif
