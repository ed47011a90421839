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

#ifndef FTOPT_IO_HPP
#define FTOPT_IO_HPP

// JSON and CSV representations of the library's value types. Non-finite
// numbers are written as the strings "inf" / "-inf" since JSON has no literal
// for them; an exact-zero LogProb therefore appears as "-inf".

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "ftopt/concat.hpp"
#include "ftopt/gate_sim.hpp"
#include "ftopt/log_prob.hpp"
#include "ftopt/long_range.hpp"
#include "ftopt/noise_model.hpp"
#include "ftopt/scheme.hpp"
#include "ftopt/shor.hpp"

namespace ftopt {

using json = nlohmann::json;

/// Shortest decimal text that round-trips to the same double.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf.data(), ptr);
}

inline json number_json(double x) {
    if (std::isfinite(x)) {
        return x;
    }
    return format_double(x);
}

inline double number_from_json(const json &j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        const auto &s = j.get_ref<const std::string &>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw std::invalid_argument("expected a number, got " + j.dump());
}

inline json log_prob_json(LogProb p) {
    return number_json(p.log10());
}

/// Linear value when representable (|log10| < 300), null otherwise.
inline json linear_json(LogProb p) {
    if (p.is_zero()) {
        return 0.0;
    }
    return p.has_linear() ? json(p.to_linear()) : json(nullptr);
}

inline void to_json(json &j, const FTScheme &s) {
    j = json{{"A", s.A}, {"A_prime", s.A_prime}, {"B", s.B}, {"D", s.D}, {"M", s.M}};
}

inline void from_json(const json &j, FTScheme &s) {
    s = make_scheme(
        j.at("A").get<std::int64_t>(), j.at("A_prime").get<std::int64_t>(), j.at("B").get<std::int64_t>(),
        j.at("D").get<std::int64_t>(), j.at("M").get<std::int64_t>());
}

inline json noise_model_json(const NoiseModel &model) {
    return std::visit(
        [](const auto &m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AffineNoise>) {
                return {{"variant", "affine"}, {"eta0", m.eta0}, {"c", m.c}};
            } else if constexpr (std::is_same_v<T, ExponentialNoise>) {
                return {{"variant", "exponential"}, {"eta0", m.eta0}, {"beta", m.beta}};
            } else if constexpr (std::is_same_v<T, TabulatedNoise>) {
                return {{"variant", "tabulated"}, {"eta0", m.eta0}, {"f_values", m.f_values}};
            } else {
                return {{"variant", "shor_photon"}, {"L", m.L}, {"n_tot", m.n_tot}, {"A", m.A}};
            }
        },
        model);
}

inline NoiseModel noise_model_from_json(const json &j) {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "affine") {
        return make_affine(j.at("eta0").get<double>(), j.at("c").get<double>());
    }
    if (variant == "exponential") {
        return make_exponential(j.at("eta0").get<double>(), j.at("beta").get<double>());
    }
    if (variant == "tabulated") {
        return make_tabulated(j.at("eta0").get<double>(), j.at("f_values").get<std::vector<double>>());
    }
    if (variant == "shor_photon") {
        return make_shor_photon(j.at("L").get<double>(), j.at("n_tot").get<double>(), j.at("A").get<double>());
    }
    throw std::invalid_argument("unknown noise model variant '" + variant + "'");
}

inline json opt_result_json(const OptResult &r) {
    json curve = json::array();
    for (const auto &pt : r.curve) {
        curve.push_back({{"k", pt.k}, {"log10_p", log_prob_json(pt.log10_p)}});
    }
    return {
        {"k_max", r.k_max},
        {"log10_p_min", log_prob_json(r.log10_p_min)},
        {"p_min", linear_json(r.log10_p_min.saturated())},
        {"status", to_string(r.status)},
        {"curve", curve},
    };
}

inline json bounds_json(const BoundsReport &b) {
    return {
        {"k_st", number_json(b.k_st)},
        {"k_tilde", number_json(b.k_tilde)},
        {"log10_p_lower", log_prob_json(b.log10_p_lower)},
        {"log10_p_upper", log_prob_json(b.log10_p_upper)},
        {"useful", b.useful},
    };
}

inline json fit_result_json(const FitResult &f) {
    return {{"model", noise_model_json(f.model)}, {"residual", f.residual}, {"n_points", f.n_points}};
}

inline json lattice_json(const LatticeSpec &s) {
    return {{"d", s.d}, {"z", s.z}, {"delta", s.delta}, {"a", s.a}, {"N0", s.N0}, {"aspect", to_string(s.shape)}};
}

inline LatticeSpec lattice_from_json(const json &j) {
    LatticeSpec s = make_lattice(
        lattice_shape_from_string(j.at("aspect").get<std::string>()), j.at("z").get<double>(),
        j.at("N0").get<std::int64_t>(), j.value("delta", 1.0), j.value("a", 1.0));
    if (j.contains("d") && j.at("d").get<int>() != s.d) {
        throw std::invalid_argument("lattice: d does not match aspect");
    }
    return s;
}

/// {"ptm": 4x4, "chi_diag": [chi00, px, py, pz], "converged": bool, "rwa_margin": real}
inline json channel_json(const QubitChannel &ch) {
    json ptm = json::array();
    for (int i = 0; i < 4; i++) {
        ptm.push_back({ch.ptm(i, 0), ch.ptm(i, 1), ch.ptm(i, 2), ch.ptm(i, 3)});
    }
    return {
        {"ptm", ptm},
        {"chi_diag", ch.chi_diag},
        {"converged", ch.converged},
        {"rwa_margin", number_json(ch.rwa_margin)},
    };
}

/// Energetic bill with SI-unit field names.
inline json energy_bill_json(const EnergyBill &b) {
    return {
        {"n_L", b.n_L}, {"n_g", b.n_g}, {"k", b.k}, {"E_tot_J", b.E_tot}, {"P_W", b.P_avg},
        {"tau_g_s", b.tau_g}, {"tau_L_s", b.tau_L}, {"T_tot_s", b.T_tot},
    };
}

inline constexpr const char *kCurveCsvHeader = "k,log10_p";
inline constexpr const char *kLatticeCompareCsvHeader = "N0,oracle,asymptotic,rel_err";
inline constexpr const char *kEnergyBillCsvHeader = "R,n_L,k,E_tot_J,P_W,T_tot_s,tau_g_s";

inline void write_curve_csv(std::ostream &out, const OptResult &r) {
    out << kCurveCsvHeader << "\n";
    for (const auto &pt : r.curve) {
        out << pt.k << "," << format_double(pt.log10_p.log10()) << "\n";
    }
}

inline void write_energy_bill_csv_row(std::ostream &out, double R, const EnergyBill &b) {
    out << format_double(R) << "," << format_double(b.n_L) << "," << b.k << "," << format_double(b.E_tot) << ","
        << format_double(b.P_avg) << "," << format_double(b.T_tot) << "," << format_double(b.tau_g) << "\n";
}

}  // namespace ftopt

#endif
