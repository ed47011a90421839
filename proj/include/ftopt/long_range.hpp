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

#ifndef FTOPT_LONG_RANGE_HPP
#define FTOPT_LONG_RANGE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ftopt/concat.hpp"
#include "ftopt/log_prob.hpp"
#include "ftopt/scheme.hpp"

// Long-range crosstalk ||H_ij|| = delta |r_i - r_j|^-z on a chain or square
// lattice. All public quantities are dimensionless: geometric sums are in units
// of delta/a^z, and error strengths are the product t0*Delta. Note t0*Delta is
// a measure of noise strength per gate, not itself an error probability.

namespace ftopt {

enum class LatticeShape { chain, square };

inline std::string to_string(LatticeShape s) {
    return s == LatticeShape::chain ? "chain" : "square";
}

inline LatticeShape lattice_shape_from_string(std::string_view s) {
    if (s == "chain") return LatticeShape::chain;
    if (s == "square") return LatticeShape::square;
    throw std::invalid_argument("unknown lattice '" + std::string(s) + "' (expected chain|square)");
}

struct LatticeSpec {
    int d = 1;
    double z = 0;
    double delta = 1;  ///< interaction prefactor (any unit; only delta/a^z is used)
    double a = 1;      ///< lattice spacing
    std::int64_t N0 = 2;
    LatticeShape shape = LatticeShape::chain;

    /// delta / a^z, converting geometric sums into interaction strengths.
    double coupling_scale() const {
        return delta / std::pow(a, z);
    }
    /// Side length of a square lattice.
    std::int64_t side() const {
        return shape == LatticeShape::chain ? N0 : static_cast<std::int64_t>(std::llround(std::sqrt(double(N0))));
    }
};

inline LatticeSpec make_lattice(LatticeShape shape, double z, std::int64_t N0, double delta = 1, double a = 1) {
    LatticeSpec s;
    s.shape = shape;
    s.d = shape == LatticeShape::chain ? 1 : 2;
    s.z = z;
    s.N0 = N0;
    s.delta = delta;
    s.a = a;
    if (!(z >= 0) || std::isinf(z)) {
        throw std::invalid_argument("lattice: z must be finite and >= 0");
    }
    if (N0 < 2) {
        throw std::invalid_argument("lattice: N0 must be >= 2");
    }
    if (!(delta > 0) || !(a > 0)) {
        throw std::invalid_argument("lattice: delta and a must be > 0");
    }
    if (shape == LatticeShape::square && s.side() * s.side() != N0) {
        throw std::invalid_argument("lattice: square lattice needs N0 to be a perfect square");
    }
    return s;
}

inline constexpr std::int64_t kMaxChainSites = 1'000'000;
inline constexpr std::int64_t kMaxSquareSide = 10'000;

namespace detail {

/// Deterministic pairwise summation of term(i) for i in [begin, end).
template <typename Term>
double pairwise_sum(std::int64_t begin, std::int64_t end, const Term &term) {
    constexpr std::int64_t kBlock = 128;
    if (end - begin <= kBlock) {
        double s = 0;
        for (std::int64_t i = begin; i < end; i++) {
            s += term(i);
        }
        return s;
    }
    std::int64_t mid = begin + (end - begin) / 2;
    return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

inline void check_oracle_size(const LatticeSpec &spec) {
    if (spec.shape == LatticeShape::chain && spec.N0 > kMaxChainSites) {
        throw std::invalid_argument("lattice oracle: chain N0 above cap " + std::to_string(kMaxChainSites));
    }
    if (spec.shape == LatticeShape::square && spec.side() > kMaxSquareSide) {
        throw std::invalid_argument("lattice oracle: square side above cap " + std::to_string(kMaxSquareSide));
    }
}

}  // namespace detail

/// Sum over j != site of |r_site - r_j|^-z in units of delta/a^z. Sites are
/// indexed row-major on the square lattice.
inline double lattice_row_sum(const LatticeSpec &spec, std::int64_t site) {
    detail::check_oracle_size(spec);
    if (site < 0 || site >= spec.N0) {
        throw std::out_of_range("lattice_row_sum: site out of range");
    }
    const double z = spec.z;
    if (spec.shape == LatticeShape::chain) {
        return detail::pairwise_sum(0, spec.N0, [&](std::int64_t j) {
            std::int64_t m = j > site ? j - site : site - j;
            return m == 0 ? 0.0 : std::pow(static_cast<double>(m), -z);
        });
    }
    const std::int64_t n = spec.side();
    const std::int64_t si = site / n, sj = site % n;
    return detail::pairwise_sum(0, spec.N0, [&](std::int64_t idx) {
        double di = static_cast<double>(idx / n - si);
        double dj = static_cast<double>(idx % n - sj);
        double r2 = di * di + dj * dj;
        return r2 == 0 ? 0.0 : std::pow(r2, -z / 2);
    });
}

/// Brute-force max_i sum_j over every site, O(N0^2). Intended for small lattices.
inline double delta_lattice_all_sites(const LatticeSpec &spec) {
    double best = 0;
    for (std::int64_t i = 0; i < spec.N0; i++) {
        best = std::max(best, lattice_row_sum(spec, i));
    }
    return best;
}

/// Error strength Delta (in units of delta/a^z) by direct summation: the max
/// row sum, evaluated at the central site(s) where the max is attained.
inline double delta_lattice_oracle(const LatticeSpec &spec) {
    detail::check_oracle_size(spec);
    std::vector<std::int64_t> candidates;
    if (spec.shape == LatticeShape::chain) {
        candidates = {(spec.N0 - 1) / 2, spec.N0 / 2};
    } else {
        std::int64_t n = spec.side();
        for (std::int64_t ci : {(n - 1) / 2, n / 2}) {
            for (std::int64_t cj : {(n - 1) / 2, n / 2}) {
                candidates.push_back(ci * n + cj);
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    double best = 0;
    for (auto c : candidates) {
        best = std::max(best, lattice_row_sum(spec, c));
    }
    return best;
}

/// C_z = integral_0^{pi/4} cos(theta)^(z-2) dtheta.
inline double square_lattice_cz(double z) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0;
    double value = gauss_kronrod<double, 61>::integrate(
        [z](double t) { return std::pow(std::cos(t), z - 2); }, 0.0, std::numbers::pi / 4, 15, 1e-14, &err);
    if (err > 1e-10) {
        throw std::runtime_error("square_lattice_cz: quadrature did not reach 1e-10");
    }
    return value;
}

/// Large-N0 closed form for Delta_0 (units of delta/a^z), valid for z <= d.
/// For z = d the order-one constants kappa default to 1.
inline double delta0_asymptotic(const LatticeSpec &spec, double kappa = 1.0) {
    if (spec.z > spec.d) {
        throw std::domain_error("delta0_asymptotic: z > d is short-ranged and not covered");
    }
    if (!(kappa > 0)) {
        throw std::invalid_argument("delta0_asymptotic: kappa must be > 0");
    }
    const double z = spec.z;
    const double N0 = static_cast<double>(spec.N0);
    if (spec.shape == LatticeShape::chain) {
        if (z == 1) {
            return 2 * std::log(kappa * N0 / 2);
        }
        return std::pow(2.0, z) * std::pow(N0, 1 - z) / (1 - z);
    }
    if (z == 2) {
        return std::numbers::pi * std::log(kappa * N0 / 4);
    }
    return std::pow(2.0, z + 1) * std::pow(N0, 1 - z / 2) * square_lattice_cz(z) / (2 - z);
}

/// The closed forms assume N0 >> 1; below this they are unreliable.
inline bool below_asymptotic_regime(const LatticeSpec &spec) {
    return spec.N0 < 100;
}

/// For z = d, the kappa that makes the asymptotic form equal a given exact sum.
inline double fit_kappa(const LatticeSpec &spec, double oracle) {
    const double N0 = static_cast<double>(spec.N0);
    if (spec.z != spec.d) {
        throw std::invalid_argument("fit_kappa: only defined for z = d");
    }
    if (spec.shape == LatticeShape::chain) {
        return 2 / N0 * std::exp(oracle / 2);
    }
    return 4 / N0 * std::exp(oracle / std::numbers::pi);
}

/// Crosstalk scaling exponent beta = 1 - z/d.
inline double crosstalk_beta(const LatticeSpec &spec) {
    return 1 - spec.z / spec.d;
}

/// 2 e^(2 + 1/e), the factor multiplying B^2 when long-range noise is mapped
/// onto local noise.
inline double crosstalk_constant() {
    return 2 * std::exp(2 + 1 / std::numbers::e);
}

/// Local noise strength that the code corrects at least as well as long-range
/// noise of strength t0*Delta: e^(1 + 1/(2e)) sqrt(2 t0 Delta).
inline double effective_local_error(double t0_delta) {
    if (!(t0_delta >= 0) || std::isinf(t0_delta)) {
        throw std::invalid_argument("effective_local_error: t0*Delta must be finite and >= 0");
    }
    return std::exp(1 + 1 / (2 * std::numbers::e)) * std::sqrt(2 * t0_delta);
}

/// log10 of the logical-level crosstalk bound
///   t0 Delta_L(k) = (B' t0 Delta0)^(2^k) / B' * D^(beta 2^k k),  B' = 2 e^(2+1/e) B^2.
inline LogProb logical_crosstalk_log10(const FTScheme &scheme, double t0_delta0, double beta, Level k) {
    if (k < 0) {
        throw std::invalid_argument("level must be >= 0");
    }
    if (!(t0_delta0 > 0) || !(beta >= 0)) {
        throw std::invalid_argument("logical_crosstalk_log10: need t0*Delta0 > 0 and beta >= 0");
    }
    const double log10_Bp = std::log10(crosstalk_constant()) + 2 * scheme.log10_B();
    const double pow2k = std::ldexp(1.0, k);
    return LogProb(pow2k * (log10_Bp + std::log10(t0_delta0)) - log10_Bp + beta * pow2k * k * scheme.log10_D());
}

/// Largest t0*Delta0 for which one level of concatenation reduces crosstalk:
/// 1 / (2 e^(2+1/e) B^2 D^(2 beta)).
inline double crosstalk_usefulness_threshold(double B, double D, double beta) {
    if (!(B >= 1) || !(D >= 1) || !(beta >= 0)) {
        throw std::invalid_argument("crosstalk_usefulness_threshold: need B >= 1, D >= 1, beta >= 0");
    }
    return 1.0 / (crosstalk_constant() * B * B * std::pow(D, 2 * beta));
}

struct CrosstalkResult {
    double t0_delta = 0;
    Level k = 0;
    LogProb log10_t0_deltaL;
};

/// Optimal concatenation against long-range crosstalk of strength t0*Delta0 growing as D^(beta k).
inline OptResult optimize_crosstalk(const FTScheme &scheme, double t0_delta0, double beta, Level k_cap = kDefaultLevelCap) {
    return scan_levels([&](Level k) { return logical_crosstalk_log10(scheme, t0_delta0, beta, k); }, k_cap);
}

}  // namespace ftopt

#endif
