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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ftopt/ftopt.hpp"

namespace ftopt::cli {

namespace {

const std::vector<std::string> kCommands = {"optimize", "sweep", "gatesim", "longrange", "shor", "fit"};

bool is_command(const std::string &s) {
    return std::find(kCommands.begin(), kCommands.end(), s) != kCommands.end();
}

double strict_number(const std::string &s, const std::string &what) {
    char *end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw std::invalid_argument(what + ": cannot parse '" + s + "'");
    }
    return v;
}

/// Counts arrive as doubles so "1e6" is accepted; they must still be integers.
std::int64_t as_count(double v, const std::string &what, double lo) {
    if (!std::isfinite(v) || v != std::floor(v) || v < lo || v > 9e15) {
        throw std::invalid_argument(what + " must be an integer >= " + format_double(lo));
    }
    return static_cast<std::int64_t>(v);
}

std::string token_of(const json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<std::int64_t>());
    }
    if (v.is_number()) {
        return format_double(v.get<double>());
    }
    throw std::invalid_argument("config: unsupported value " + v.dump());
}

// ---------------------------------------------------------------------------
// Shared options.

struct Global {
    std::string scheme = "aliferis2006";
    double A = 0, Aprime = 0, B = 0, D = 0, M = 0;
    CLI::Option *A_opt = nullptr, *Aprime_opt = nullptr, *B_opt = nullptr, *D_opt = nullptr, *M_opt = nullptr;
    std::string format;
    std::string out;
    std::string config;

    FTScheme resolve() const {
        FTScheme s = scheme_preset(scheme);
        auto pick = [](CLI::Option *opt, double v, std::int64_t fallback, const char *name) {
            return opt->count() > 0 ? as_count(v, name, 1) : fallback;
        };
        return make_scheme(
            pick(A_opt, A, s.A, "--A"), pick(Aprime_opt, Aprime, s.A_prime, "--Aprime"), pick(B_opt, B, s.B, "--B"),
            pick(D_opt, D, s.D, "--D"), pick(M_opt, M, s.M, "--M"));
    }
};

void add_scheme_config(json &config, const Global &g, const FTScheme &s, const std::string &format) {
    config["format"] = format;
    config["scheme"] = g.scheme;
    config["A"] = s.A;
    config["Aprime"] = s.A_prime;
    config["B"] = s.B;
    config["D"] = s.D;
    config["M"] = s.M;
}

/// Noise-model flags shared by optimize and sweep.
struct ModelArgs {
    std::string model = "affine";
    double eta0 = 0, c = 0, beta = 0, L = 0, ntot = 0, nL = 0, kcap = kDefaultLevelCap;
    std::vector<double> f;
    CLI::Option *eta0_opt = nullptr, *L_opt = nullptr, *ntot_opt = nullptr, *nL_opt = nullptr, *f_opt = nullptr;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--model", model, "Noise law")
            ->check(CLI::IsMember({"affine", "exp", "table", "shor"}))
            ->capture_default_str();
        eta0_opt = cmd->add_option("--eta0", eta0, "Physical error probability at k = 0");
        cmd->add_option("--c", c, "Affine slope: eta(k) = eta0 (1 + c k)")->capture_default_str();
        cmd->add_option("--beta", beta, "Exponent: eta(k) = eta0 D^(beta k)")->capture_default_str();
        f_opt = cmd->add_option("--f", f, "Table f(0..K), comma separated; f(0) = 1")
                    ->delimiter(',')
                    ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
        L_opt = cmd->add_option("--L", L, "Logical gate count (shor model)");
        ntot_opt = cmd->add_option("--ntot", ntot, "Total photon budget (shor model)");
        nL_opt = cmd->add_option("--nL", nL, "Photons per logical gate; sets ntot = nL * L (shor model)");
        cmd->add_option("--kcap", kcap, "Largest level scanned")->capture_default_str();
    }

    Level level_cap() const {
        return static_cast<Level>(as_count(kcap, "--kcap", 1));
    }

    /// Point values, possibly overridden by sweep coordinates.
    struct Values {
        std::optional<double> eta0, c, beta, L, ntot, nL;
    };

    Values base() const {
        Values v;
        if (eta0_opt->count()) v.eta0 = eta0;
        v.c = c;
        v.beta = beta;
        if (L_opt->count()) v.L = L;
        if (ntot_opt->count()) v.ntot = ntot;
        if (nL_opt->count()) v.nL = nL;
        return v;
    }

    NoiseModel build(const Values &v) const {
        auto need = [](const std::optional<double> &x, const char *name) {
            if (!x) {
                throw std::invalid_argument(std::string("missing ") + name);
            }
            return *x;
        };
        if (model == "affine") {
            return make_affine(need(v.eta0, "--eta0"), need(v.c, "--c"));
        }
        if (model == "exp") {
            return make_exponential(need(v.eta0, "--eta0"), need(v.beta, "--beta"));
        }
        if (model == "table") {
            if (f.empty()) {
                throw std::invalid_argument("missing --f");
            }
            return make_tabulated(need(v.eta0, "--eta0"), f);
        }
        double gates = need(v.L, "--L");
        if (v.nL && v.ntot) {
            throw std::invalid_argument("give only one of --ntot and --nL");
        }
        double total = v.nL ? *v.nL * gates : need(v.ntot, "--ntot or --nL");
        return make_shor_photon(gates, total, 1);
    }

    /// make_shor_photon needs the scheme's A; the flags alone do not know it.
    NoiseModel build(const Values &v, const FTScheme &scheme) const {
        NoiseModel m = build(v);
        if (auto *s = std::get_if<ShorPhotonNoise>(&m)) {
            m = make_shor_photon(s->L, s->n_tot, static_cast<double>(scheme.A));
        }
        return m;
    }

    void record(json &config) const {
        config["model"] = model;
        config["kcap"] = level_cap();
        if (model == "affine") {
            if (eta0_opt->count()) config["eta0"] = eta0;
            config["c"] = c;
        } else if (model == "exp") {
            if (eta0_opt->count()) config["eta0"] = eta0;
            config["beta"] = beta;
        } else if (model == "table") {
            if (eta0_opt->count()) config["eta0"] = eta0;
            config["f"] = f;
        } else {
            if (L_opt->count()) config["L"] = L;
            if (ntot_opt->count()) config["ntot"] = ntot;
            if (nL_opt->count()) config["nL"] = nL;
        }
    }
};

struct Output {
    std::string text;
    int code = kExitOk;
};

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Commands.

Output cmd_optimize(const Global &g, const ModelArgs &m, const std::string &format) {
    FTScheme scheme = g.resolve();
    NoiseModel model = m.build(m.base(), scheme);
    OptResult r = find_kmax(scheme, model, m.level_cap());

    if (format == "csv") {
        std::ostringstream os;
        write_curve_csv(os, r);
        return {os.str()};
    }
    json config;
    add_scheme_config(config, g, scheme, format);
    m.record(config);
    json report = opt_result_json(r);
    report["command"] = "optimize";
    report["config"] = config;
    report["noise_model"] = noise_model_json(model);
    if (const auto *a = std::get_if<AffineNoise>(&model)) {
        AffineThreshold t = affine_usefulness_threshold(static_cast<double>(scheme.B), a->eta0);
        report["affine_threshold"] = {{"c_star", t.c_star}, {"helps", t.helps}};
    } else if (const auto *e = std::get_if<ExponentialNoise>(&model)) {
        report["eta_star"] = one_level_condition(static_cast<double>(scheme.B), static_cast<double>(scheme.D), e->beta);
        if (e->beta > 0 && scheme.D >= 2) {
            report["bounds"] = bounds_json(exp_model_bounds(scheme, e->eta0, e->beta));
        }
    } else if (std::holds_alternative<TabulatedNoise>(model)) {
        report["kmax_bound"] = number_json(generic_kmax_bound(scheme, model));
    } else {
        report["eta0"] = eta0_of(model);
    }
    return {dump(report)};
}

const std::vector<std::string> kAxisNames = {"eta0", "B_eta0", "c", "beta", "L", "ntot", "nL"};

Output cmd_sweep(
    const Global &g, const ModelArgs &m, const std::vector<std::string> &axis_text, unsigned threads,
    const std::string &format) {
    FTScheme scheme = g.resolve();
    std::vector<SweepAxis> axes;
    for (const auto &t : axis_text) {
        axes.push_back(parse_sweep_axis(t));
        const auto &name = axes.back().name;
        if (std::find(kAxisNames.begin(), kAxisNames.end(), name) == kAxisNames.end()) {
            throw std::invalid_argument("sweep: unknown axis '" + name + "'");
        }
    }
    if (axes.empty() || axes.size() > kMaxSweepAxes) {
        throw std::invalid_argument("sweep: need 1 or 2 --axis");
    }
    if (axes.size() == 2 && axes[0].name == axes[1].name) {
        throw std::invalid_argument("sweep: axes must differ");
    }

    const ModelArgs::Values base = m.base();
    auto make_model = [&](const std::vector<double> &coords) {
        ModelArgs::Values v = base;
        // L first so that an nL axis scales with the final L.
        for (int pass = 0; pass < 2; pass++) {
            for (size_t a = 0; a < axes.size(); a++) {
                const auto &name = axes[a].name;
                double x = coords[a];
                if ((name == "L") != (pass == 0)) continue;
                if (name == "eta0") v.eta0 = x;
                if (name == "B_eta0") v.eta0 = x / static_cast<double>(scheme.B);
                if (name == "c") v.c = x;
                if (name == "beta") v.beta = x;
                if (name == "L") v.L = x;
                if (name == "ntot") {
                    v.ntot = x;
                    v.nL.reset();
                }
                if (name == "nL") {
                    v.nL = x;
                    v.ntot.reset();
                }
            }
        }
        return m.build(v, scheme);
    };
    std::vector<SweepPoint> rows = run_sweep(axes, scheme, make_model, m.level_cap(), threads);

    if (format == "csv") {
        std::ostringstream os;
        for (const auto &a : axes) {
            os << a.name << ",";
        }
        os << "k_max,log10_p_min,status\n";
        for (const auto &row : rows) {
            for (double x : row.coords) {
                os << format_double(x) << ",";
            }
            os << row.result.k_max << "," << format_double(row.result.log10_p_min.log10()) << ","
               << to_string(row.result.status) << "\n";
        }
        return {os.str()};
    }
    json config;
    add_scheme_config(config, g, scheme, format);
    m.record(config);
    json axis_json = json::array();
    for (const auto &a : axes) {
        axis_json.push_back(format_sweep_axis(a, format_double));
    }
    config["axis"] = axis_json;
    json out_rows = json::array();
    for (const auto &row : rows) {
        json r;
        for (size_t a = 0; a < axes.size(); a++) {
            r[axes[a].name] = row.coords[a];
        }
        r["k_max"] = row.result.k_max;
        r["log10_p_min"] = log_prob_json(row.result.log10_p_min);
        r["status"] = to_string(row.result.status);
        out_rows.push_back(r);
    }
    return {dump({{"command", "sweep"}, {"config", config}, {"rows", out_rows}})};
}

struct GateArgs {
    std::string theta = "pi";
    double gamma = 0, ng = 0, omega0 = 0;
    int refinements = 8;
};

Output cmd_gatesim(const GateArgs &a, const std::string &format) {
    const double theta = parse_angle(a.theta);
    GateSpec spec = make_gate_spec(theta, a.gamma, a.ng, a.omega0);
    if (a.refinements < 1) {
        throw std::invalid_argument("--refinements must be >= 1");
    }
    PulseParams pulse = pulse_params(spec);
    QubitChannel ch = evolve_noisy_gate(spec, a.refinements);
    const int code = ch.converged ? kExitOk : kExitInfeasible;

    if (format == "csv") {
        std::ostringstream os;
        os << "theta,gamma,n_g,chi00,p_x,p_y,p_z,converged,steps\n";
        os << format_double(theta) << "," << format_double(a.gamma) << "," << format_double(a.ng) << ","
           << format_double(ch.chi_diag[0]) << "," << format_double(ch.chi_diag[1]) << ","
           << format_double(ch.chi_diag[2]) << "," << format_double(ch.chi_diag[3]) << ","
           << (ch.converged ? "true" : "false") << "," << ch.steps << "\n";
        return {os.str(), code};
    }
    json config = {{"theta", a.theta}, {"gamma", a.gamma}, {"ng", a.ng}, {"omega0", a.omega0},
                   {"refinements", a.refinements}, {"format", format}};
    json report = channel_json(ch);
    report["command"] = "gatesim";
    report["config"] = config;
    report["theta_rad"] = theta;
    report["omega"] = pulse.omega;
    report["tau"] = pulse.tau;
    report["steps"] = ch.steps;
    report["rwa_warning"] = ch.rwa_warning;
    report["p_x"] = ch.chi_diag[1];
    report["p_y"] = ch.chi_diag[2];
    report["p_z"] = ch.chi_diag[3];
    report["min_choi_eigenvalue"] = min_choi_eigenvalue(ch.ptm);
    report["trace_preservation_error"] = trace_preservation_error(ch.ptm);
    if (std::abs(theta - std::numbers::pi) < 1e-12) {
        PauliErrors p = asymptotic_pauli_errors(a.ng);
        report["asymptotic"] = {{"p_x", p.p_x}, {"p_y", p.p_y}, {"p_z", p.p_z}};
    }
    return {dump(report), code};
}

struct LongRangeArgs {
    std::string lattice = "chain";
    double z = 0, N0 = 0, delta = 1, a = 1, kappa = 1, t0 = 0, kcap = kDefaultLevelCap;
    bool compare = false;
    CLI::Option *t0_opt = nullptr;
};

Output cmd_longrange(const Global &g, const LongRangeArgs &a, const std::string &format) {
    FTScheme scheme = g.resolve();
    LatticeSpec spec = make_lattice(lattice_shape_from_string(a.lattice), a.z, as_count(a.N0, "--N0", 2), a.delta, a.a);
    const Level cap = static_cast<Level>(as_count(a.kcap, "--kcap", 1));
    const double oracle = delta_lattice_oracle(spec);
    const bool has_asym = spec.z <= spec.d;
    const double asym = has_asym ? delta0_asymptotic(spec, a.kappa) : std::nan("");
    const double rel_err = has_asym ? std::abs(asym - oracle) / oracle : std::nan("");

    if (format == "csv") {
        if (!has_asym) {
            throw std::domain_error("longrange: no asymptotic form for z > d");
        }
        std::ostringstream os;
        os << kLatticeCompareCsvHeader << "\n";
        os << spec.N0 << "," << format_double(oracle) << "," << format_double(asym) << "," << format_double(rel_err)
           << "\n";
        return {os.str()};
    }
    json config;
    add_scheme_config(config, g, scheme, format);
    config["lattice"] = a.lattice;
    config["z"] = a.z;
    config["N0"] = spec.N0;
    config["delta"] = a.delta;
    config["a"] = a.a;
    config["kappa"] = a.kappa;
    config["kcap"] = cap;
    if (a.compare) config["compare"] = true;
    if (a.t0_opt->count()) config["t0"] = a.t0;

    json report;
    report["command"] = "longrange";
    report["config"] = config;
    report["lattice_spec"] = lattice_json(spec);
    report["oracle"] = oracle;
    report["asymptotic"] = has_asym ? json(asym) : json(nullptr);
    report["rel_err"] = has_asym ? json(rel_err) : json(nullptr);
    report["below_asymptotic_regime"] = below_asymptotic_regime(spec);
    const double beta = crosstalk_beta(spec);
    report["beta"] = beta;
    if (beta >= 0) {
        report["crosstalk_threshold"] =
            crosstalk_usefulness_threshold(static_cast<double>(scheme.B), static_cast<double>(scheme.D), beta);
    }
    if (a.t0_opt->count()) {
        if (!(a.t0 > 0)) {
            throw std::invalid_argument("--t0 must be > 0");
        }
        const double t0_delta0 = a.t0 * spec.coupling_scale() * oracle;
        report["t0_delta0"] = t0_delta0;
        report["effective_local_error"] = effective_local_error(t0_delta0);
        if (beta < 0) {
            throw std::domain_error("longrange: crosstalk optimisation needs z <= d");
        }
        report["crosstalk"] = opt_result_json(optimize_crosstalk(scheme, t0_delta0, beta, cap));
    }
    return {dump(report)};
}

struct ShorArgs {
    std::vector<double> R;
    double L = 0, Ptarget = 2.0 / 3.0, gamma = 10, omega0 = 1e10, nL = 0, k = 0, kcap = kDefaultLevelCap;
    CLI::Option *L_opt = nullptr, *nL_opt = nullptr, *k_opt = nullptr;
};

Output cmd_shor(const Global &g, const ShorArgs &a, const std::string &format) {
    FTScheme scheme = g.resolve();
    const Level cap = static_cast<Level>(as_count(a.kcap, "--kcap", 1));
    if (a.R.empty()) {
        throw std::invalid_argument("shor: need --R");
    }
    if (a.L_opt->count() && a.R.size() > 1) {
        throw std::invalid_argument("shor: --L only with a single --R");
    }
    if (a.k_opt->count() && !a.nL_opt->count()) {
        throw std::invalid_argument("shor: --k requires --nL");
    }
    if (!(a.gamma > 0) || !(a.omega0 > 0)) {
        throw std::invalid_argument("shor: --gamma and --omega0 must be > 0");
    }

    int code = kExitOk;
    json rows = json::array();
    std::ostringstream csv;
    csv << kEnergyBillCsvHeader << "\n";
    for (double R : a.R) {
        ShorProblem problem = make_shor_problem(R, a.L_opt->count() ? std::optional<double>(a.L) : std::nullopt, a.Ptarget);
        const LogProb target = LogProb::from_linear(target_logical_error(problem));
        json row = {{"R", R}, {"L", problem.L}, {"log10_target", log_prob_json(target)}};
        double n_L = 0;
        Level k = 0;
        LogProb p_min;
        if (a.nL_opt->count()) {
            OptResult r = optimize_photon_budget(problem, a.nL, scheme, cap);
            n_L = a.nL;
            k = r.k_max;
            if (a.k_opt->count()) {
                k = static_cast<Level>(as_count(a.k, "--k", 0));
                if (k > cap) {
                    throw std::invalid_argument("shor: --k above --kcap");
                }
            }
            p_min = r.curve[k].log10_p;
            row["feasible"] = p_min <= target;
        } else {
            BudgetResult b = min_photon_budget(problem, scheme);
            n_L = b.n_L_min;
            k = b.k;
            p_min = b.log10_p_min;
            row["feasible"] = b.feasible;
            if (!b.feasible) {
                code = kExitInfeasible;
            }
        }
        row["log10_p"] = log_prob_json(p_min);
        EnergyBill bill = energy_bill(problem, n_L, k, a.gamma, a.omega0, scheme);
        RwaMargin margin = rwa_margin(n_L, k, a.gamma, a.omega0, scheme);
        row.update(energy_bill_json(bill));
        row["rwa_ratio"] = margin.ratio;
        row["rwa_marginal"] = margin.marginal;
        rows.push_back(row);
        write_energy_bill_csv_row(csv, R, bill);
    }
    if (format == "csv") {
        return {csv.str(), code};
    }
    json config;
    add_scheme_config(config, g, scheme, format);
    config["R"] = a.R;
    if (a.L_opt->count()) config["L"] = a.L;
    config["Ptarget"] = a.Ptarget;
    config["gamma"] = a.gamma;
    config["omega0"] = a.omega0;
    config["kcap"] = cap;
    if (a.nL_opt->count()) config["nL"] = a.nL;
    if (a.k_opt->count()) config["k"] = a.k;
    return {dump({{"command", "shor"}, {"config", config}, {"rows", rows}}), code};
}

struct FitArgs {
    std::string variant = "exponential";
    std::vector<double> k, eta;
    std::string data;
};

void read_fit_data(const std::string &path, std::vector<double> &k, std::vector<double> &eta) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("fit: cannot open '" + path + "'");
    }
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("fit: expected 'k,eta' rows in '" + path + "'");
        }
        std::string ks = line.substr(0, comma), es = line.substr(comma + 1);
        if (first && ks == "k") {
            first = false;
            continue;
        }
        first = false;
        k.push_back(strict_number(ks, "fit data k"));
        eta.push_back(strict_number(es, "fit data eta"));
    }
}

Output cmd_fit(const Global &g, FitArgs a, const std::string &format) {
    FTScheme scheme = g.resolve();
    if (!a.data.empty()) {
        if (!a.k.empty() || !a.eta.empty()) {
            throw std::invalid_argument("fit: give either --data or --k/--eta");
        }
        read_fit_data(a.data, a.k, a.eta);
    }
    if (a.k.size() != a.eta.size()) {
        throw std::invalid_argument("fit: --k and --eta must have equal length");
    }
    std::vector<FitSample> samples;
    for (size_t i = 0; i < a.k.size(); i++) {
        samples.push_back({a.k[i], a.eta[i]});
    }
    FitVariant variant = a.variant == "affine" ? FitVariant::affine : FitVariant::exponential;
    FitResult fit = fit_noise_model(samples, variant, scheme.D);

    if (format == "csv") {
        std::ostringstream os;
        os << "variant,eta0,slope,residual,n_points\n";
        double slope = std::visit(
            [](const auto &m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, AffineNoise>) return m.c;
                else if constexpr (std::is_same_v<T, ExponentialNoise>) return m.beta;
                else return std::nan("");
            },
            fit.model);
        os << a.variant << "," << format_double(eta0_of(fit.model)) << "," << format_double(slope) << ","
           << format_double(fit.residual) << "," << fit.n_points << "\n";
        return {os.str()};
    }
    json config;
    add_scheme_config(config, g, scheme, format);
    config["variant"] = a.variant;
    config["k"] = a.k;
    config["eta"] = a.eta;
    json report = fit_result_json(fit);
    report["command"] = "fit";
    report["config"] = config;
    return {dump(report)};
}

}  // namespace

double parse_angle(const std::string &text) {
    constexpr double pi = std::numbers::pi;
    if (text == "pi") {
        return pi;
    }
    if (text.rfind("pi/", 0) == 0) {
        double den = strict_number(text.substr(3), "angle");
        if (den == 0) {
            throw std::invalid_argument("angle: division by zero");
        }
        return pi / den;
    }
    if (text.size() > 3 && text.compare(text.size() - 3, 3, "*pi") == 0) {
        return strict_number(text.substr(0, text.size() - 3), "angle") * pi;
    }
    if (text.size() > 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
        return strict_number(text.substr(0, text.size() - 2), "angle") * pi;
    }
    return strict_number(text, "angle");
}

std::vector<std::string> expand_config(const std::vector<std::string> &args) {
    std::string path;
    for (size_t i = 0; i < args.size(); i++) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) {
        return args;
    }
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot open '" + path + "'");
    }
    json doc = json::parse(in);
    if (!doc.is_object()) {
        throw std::invalid_argument("config: top level must be an object");
    }
    json params = doc.contains("config") && doc["config"].is_object() ? doc["config"] : doc;
    std::string command = doc.value("command", params.value("command", std::string()));

    std::vector<std::string> out = args;
    auto cmd_it = std::find_if(out.begin(), out.end(), is_command);
    if (cmd_it == out.end()) {
        if (!is_command(command)) {
            throw std::invalid_argument("config: no subcommand given or recorded");
        }
        out.push_back(command);
        cmd_it = out.end() - 1;
    }
    auto given = [&](const std::string &flag) {
        return std::any_of(args.begin(), args.end(), [&](const std::string &a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    std::vector<std::string> injected;
    for (auto it = params.begin(); it != params.end(); ++it) {
        if (it.key() == "command") continue;
        const std::string flag = "--" + it.key();
        if (given(flag)) continue;
        const json &v = it.value();
        if (v.is_null()) continue;
        if (v.is_boolean()) {
            if (v.get<bool>()) injected.push_back(flag);
        } else if (v.is_array()) {
            for (const auto &e : v) {
                injected.push_back(flag);
                injected.push_back(token_of(e));
            }
        } else {
            injected.push_back(flag);
            injected.push_back(token_of(v));
        }
    }
    out.insert(cmd_it + 1, injected.begin(), injected.end());
    return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Optimal concatenation of quantum error-correcting codes under scale-dependent noise", "ftopt"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    Global g;
    app.add_option("--scheme", g.scheme, "Scheme preset")
        ->check(CLI::IsMember(scheme_preset_names()))
        ->capture_default_str();
    g.A_opt = app.add_option("--A", g.A, "Override: gates per exRec");
    g.Aprime_opt = app.add_option("--Aprime", g.Aprime, "Override: gates per Rec");
    g.B_opt = app.add_option("--B", g.B, "Override: malignant pairs (threshold 1/B)");
    g.D_opt = app.add_option("--D", g.D, "Override: growth per level");
    g.M_opt = app.add_option("--M", g.M, "Override: time steps per level");
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out, "Write the report to this path");
    app.add_option("--config", g.config, "JSON parameter file or previous report");

    ModelArgs opt_model;
    auto *optimize = app.add_subcommand("optimize", "Logical error curve and optimal level")->fallthrough();
    opt_model.add_to(optimize);

    ModelArgs sweep_model;
    std::vector<std::string> axes;
    unsigned threads = 0;
    auto *sweep = app.add_subcommand("sweep", "Optimal level over a 1 or 2 axis grid")->fallthrough();
    sweep_model.add_to(sweep);
    sweep->add_option("--axis", axes, "name:min:max:count[:log]; names eta0 B_eta0 c beta L ntot nL")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->required();
    sweep->add_option("--threads", threads, "Worker threads (0: hardware)");

    GateArgs gate;
    auto *gatesim = app.add_subcommand("gatesim", "Noisy driven-qubit gate channel")->fallthrough();
    gatesim->add_option("--theta", gate.theta, "Rotation angle")->capture_default_str();
    gatesim->add_option("--gamma", gate.gamma, "Spontaneous emission rate")->required();
    gatesim->add_option("--ng", gate.ng, "Mean photon number per gate")->required();
    gatesim->add_option("--omega0", gate.omega0, "Qubit angular frequency (0: skip RWA check)")->capture_default_str();
    gatesim->add_option("--refinements", gate.refinements, "Step doublings allowed")->capture_default_str();

    LongRangeArgs lr;
    auto *longrange = app.add_subcommand("longrange", "Power-law crosstalk on a lattice")->fallthrough();
    longrange->add_option("--lattice", lr.lattice, "chain or square")
        ->check(CLI::IsMember({"chain", "square"}))
        ->capture_default_str();
    longrange->add_option("--z", lr.z, "Decay exponent")->required();
    longrange->add_option("--N0", lr.N0, "Number of qubits")->required();
    longrange->add_option("--delta", lr.delta, "Interaction prefactor")->capture_default_str();
    longrange->add_option("--a", lr.a, "Lattice spacing")->capture_default_str();
    longrange->add_option("--kappa", lr.kappa, "Order-one constant for z = d")->capture_default_str();
    lr.t0_opt = longrange->add_option("--t0", lr.t0, "Gate time; enables the crosstalk optimum");
    longrange->add_option("--kcap", lr.kcap, "Largest level scanned")->capture_default_str();
    longrange->add_flag("--compare", lr.compare, "Oracle vs asymptotic row (CSV by default)");

    ShorArgs sh;
    auto *shor = app.add_subcommand("shor", "Photon budget and energy bill for Shor's algorithm")->fallthrough();
    shor->add_option("--R", sh.R, "Key length(s), comma separated")
        ->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->required();
    sh.L_opt = shor->add_option("--L", sh.L, "Logical gate count (default R^2)");
    shor->add_option("--Ptarget", sh.Ptarget, "Success probability")->capture_default_str();
    shor->add_option("--gamma", sh.gamma, "Spontaneous emission rate (1/s)")->capture_default_str();
    shor->add_option("--omega0", sh.omega0, "Qubit angular frequency (rad/s)")->capture_default_str();
    sh.nL_opt = shor->add_option("--nL", sh.nL, "Fixed photons per logical gate (skips the budget search)");
    sh.k_opt = shor->add_option("--k", sh.k, "Fixed level (with --nL)");
    shor->add_option("--kcap", sh.kcap, "Largest level scanned")->capture_default_str();

    FitArgs fit;
    auto *fitcmd = app.add_subcommand("fit", "Fit eta(k) samples to a noise law")->fallthrough();
    fitcmd->add_option("--variant", fit.variant, "affine or exponential")
        ->check(CLI::IsMember({"affine", "exponential"}))
        ->capture_default_str();
    fitcmd->add_option("--k", fit.k, "Levels, comma separated")
        ->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    fitcmd->add_option("--eta", fit.eta, "Measured eta(k), comma separated")
        ->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    fitcmd->add_option("--data", fit.data, "CSV file with k,eta rows");

    try {
        std::vector<std::string> argv = expand_config(args);
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);

        Output result;
        auto fmt = [&](const std::string &fallback) { return g.format.empty() ? fallback : g.format; };
        if (optimize->parsed()) {
            result = cmd_optimize(g, opt_model, fmt("json"));
        } else if (sweep->parsed()) {
            result = cmd_sweep(g, sweep_model, axes, threads, fmt("csv"));
        } else if (gatesim->parsed()) {
            result = cmd_gatesim(gate, fmt("json"));
        } else if (longrange->parsed()) {
            result = cmd_longrange(g, lr, fmt(lr.compare ? "csv" : "json"));
        } else if (shor->parsed()) {
            result = cmd_shor(g, sh, fmt("json"));
        } else {
            result = cmd_fit(g, fit, fmt("json"));
        }

        if (g.out.empty()) {
            out << result.text;
        } else {
            std::ofstream file(g.out, std::ios::binary | std::ios::trunc);
            file << result.text;
            if (!file) {
                err << "error: cannot write '" << g.out << "'\n";
                return kExitInfeasible;
            }
        }
        return result.code;
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception &e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range &e) {
        err << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
}

}  // namespace ftopt::cli
