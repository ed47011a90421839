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
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "ftopt/io.hpp"
#include "ftopt/sweep.hpp"

using namespace ftopt;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string temp_path(const std::string &name) {
    return testing::TempDir() + "ftopt_" + name;
}

}  // namespace

TEST(Format, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(1e-300), "1e-300");
    EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
    for (double x : {1.0 / 3, 6.02214076e23, -6001.525802768767}) {
        EXPECT_EQ(std::stod(format_double(x)), x);
    }
}

TEST(Json, NoiseModelRoundTrip) {
    for (const NoiseModel &m : {make_affine(5e-6, 1), make_exponential(1e-12, 0.5), make_tabulated(1e-6, {1, 2, 4}),
                                make_shor_photon(1e6, 1e12, 575)}) {
        json j = noise_model_json(m);
        EXPECT_EQ(noise_model_json(noise_model_from_json(j)), j);
    }
    EXPECT_THROW(noise_model_from_json({{"variant", "cubic"}}), std::invalid_argument);
}

TEST(Json, SchemeAndLatticeRoundTrip) {
    FTScheme s = make_scheme(1, 2, 3, 4, 5);
    EXPECT_EQ(json(s).get<FTScheme>(), s);
    LatticeSpec l = make_lattice(LatticeShape::square, 1.5, 49, 2, 3);
    LatticeSpec back = lattice_from_json(lattice_json(l));
    EXPECT_EQ(lattice_json(back), lattice_json(l));
}

TEST(Json, ZeroProbabilityIsNegativeInfinityString) {
    EXPECT_EQ(log_prob_json(LogProb::zero()), json("-inf"));
    EXPECT_EQ(linear_json(LogProb(-500)), json(nullptr));
    EXPECT_EQ(number_from_json(json("-inf")), -std::numeric_limits<double>::infinity());
}

TEST(Sweep, AxisParsing) {
    SweepAxis a = parse_sweep_axis("c:0:10:101");
    EXPECT_EQ(a.count, 101);
    EXPECT_DOUBLE_EQ(a.points()[10], 1.0);
    SweepAxis l = parse_sweep_axis("nL:1e3:1e9:7:log");
    EXPECT_DOUBLE_EQ(l.points()[3], 1e6);
    EXPECT_EQ(parse_sweep_axis("x:2:2:1").points(), std::vector<double>{2});
    EXPECT_THROW(parse_sweep_axis("c:0:10"), std::invalid_argument);
    EXPECT_THROW(parse_sweep_axis("c:5:1:3"), std::invalid_argument);
    EXPECT_THROW(parse_sweep_axis("c:0:1:0"), std::invalid_argument);
    EXPECT_THROW(parse_sweep_axis("c:0:1:2.5"), std::invalid_argument);
    EXPECT_THROW(parse_sweep_axis("c:0:1:3:log"), std::invalid_argument);
}

TEST(Sweep, RowMajorAndThreadIndependent) {
    FTScheme s = scheme_preset("aliferis2006");
    std::vector<SweepAxis> axes = {parse_sweep_axis("c:0:2:3"), parse_sweep_axis("eta0:1e-6:1e-5:4:log")};
    auto make = [](const std::vector<double> &x) { return make_affine(x[1], x[0]); };
    auto one = run_sweep(axes, s, make, 64, 1);
    auto many = run_sweep(axes, s, make, 64, 5);
    ASSERT_EQ(one.size(), 12u);
    EXPECT_DOUBLE_EQ(one[0].coords[0], 0);
    EXPECT_DOUBLE_EQ(one[3].coords[0], 0);
    EXPECT_DOUBLE_EQ(one[4].coords[0], 1);
    for (size_t i = 0; i < one.size(); i++) {
        EXPECT_EQ(one[i].coords, many[i].coords);
        EXPECT_EQ(one[i].result.k_max, many[i].result.k_max);
        EXPECT_EQ(one[i].result.log10_p_min, many[i].result.log10_p_min);
    }
}

TEST(Cli, OptimizeAffine) {
    CliRun r = run({"optimize", "--scheme", "aliferis2006", "--model", "affine", "--eta0", "5e-6", "--c", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["k_max"], 17);
    EXPECT_EQ(j["status"], "optimum-found");
    EXPECT_EQ(j["command"], "optimize");
    EXPECT_EQ(j["config"]["B"], 10000);
}

TEST(Cli, OptimizeUnbounded) {
    CliRun r = run({"optimize", "--model", "affine", "--eta0", "5e-6", "--c", "0"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["status"], "unbounded-improvement");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"optimize", "--model", "affine", "--eta0", "bogus"}).code, 2);
    EXPECT_EQ(run({"optimize", "--model", "affine", "--eta0", "2"}).code, 2);
    EXPECT_EQ(run({"optimize", "--model", "cubic", "--eta0", "1e-5"}).code, 2);
    EXPECT_EQ(run({"optimize", "--model", "affine"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"sweep", "--axis", "c:0:1"}).code, 2);
    EXPECT_EQ(run({"sweep", "--axis", "zeta:0:1:2", "--eta0", "1e-6"}).code, 2);
    EXPECT_EQ(run({"longrange", "--z", "0.5", "--N0", "10.5"}).code, 2);
    EXPECT_EQ(run({"longrange", "--z", "1.5", "--N0", "101", "--compare"}).code, 1);
    EXPECT_EQ(run({"shor", "--R", "1e3", "--L", "1e40", "--kcap", "1", "--A", "1e15", "--B", "100000000"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, GateSimReport) {
    CliRun r = run({"gatesim", "--theta", "pi", "--gamma", "1", "--ng", "1000"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_NEAR(j["p_x"].get<double>() / 6.2e-4, 1, 0.02);
    EXPECT_TRUE(j["converged"].get<bool>());
    EXPECT_EQ(j["chi_diag"].size(), 4u);
    EXPECT_EQ(j["ptm"].size(), 4u);
}

TEST(Cli, AngleParsing) {
    EXPECT_DOUBLE_EQ(cli::parse_angle("pi"), M_PI);
    EXPECT_DOUBLE_EQ(cli::parse_angle("pi/2"), M_PI / 2);
    EXPECT_DOUBLE_EQ(cli::parse_angle("3*pi"), 3 * M_PI);
    EXPECT_DOUBLE_EQ(cli::parse_angle("0.5pi"), M_PI / 2);
    EXPECT_DOUBLE_EQ(cli::parse_angle("1.25"), 1.25);
    EXPECT_THROW(cli::parse_angle("tau"), std::invalid_argument);
    EXPECT_THROW(cli::parse_angle("pi/0"), std::invalid_argument);
}

TEST(Cli, ShorRowJson) {
    CliRun r = run({"shor", "--R", "1e3", "--gamma", "10", "--omega0", "1e10"});
    ASSERT_EQ(r.code, 0) << r.err;
    json row = json::parse(r.out)["rows"][0];
    EXPECT_EQ(row["k"], 0);
    double E = row["E_tot_J"].get<double>();
    EXPECT_GT(E, 1e-13);
    EXPECT_LT(E, 1e-11);
    EXPECT_TRUE(row["feasible"].get<bool>());
}

TEST(Cli, LongRangeCompareCsv) {
    CliRun r = run({"longrange", "--lattice", "chain", "--z", "0.5", "--N0", "10001", "--compare"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_EQ(ls[0], "N0,oracle,asymptotic,rel_err");
    double rel = std::stod(ls[1].substr(ls[1].rfind(',') + 1));
    EXPECT_NEAR(rel, 0.011, 0.001);
}

TEST(Cli, CsvHeadersArePinned) {
    EXPECT_EQ(lines(run({"optimize", "--eta0", "1e-6", "--format", "csv", "--kcap", "3"}).out)[0], "k,log10_p");
    EXPECT_EQ(
        lines(run({"shor", "--R", "1e3", "--format", "csv"}).out)[0], "R,n_L,k,E_tot_J,P_W,T_tot_s,tau_g_s");
    EXPECT_EQ(lines(run({"sweep", "--axis", "c:0:1:2", "--eta0", "1e-6"}).out)[0], "c,k_max,log10_p_min,status");
    EXPECT_EQ(
        lines(run({"sweep", "--axis", "c:0:1:2", "--axis", "B_eta0:0.1:0.2:2"}).out)[0],
        "c,B_eta0,k_max,log10_p_min,status");
}

TEST(Cli, FullGridSweep) {
    CliRun r = run({"sweep", "--axis", "c:0:10:101", "--axis", "B_eta0:0.01:0.99:99", "--model", "affine"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto ls = lines(r.out);
    EXPECT_EQ(ls.size(), 1u + 9999u);
    EXPECT_EQ(ls[1].rfind("0,0.01,", 0), 0u);
    EXPECT_EQ(ls[2].rfind("0,0.02,", 0), 0u);
    EXPECT_EQ(ls.back().rfind("10,0.99,", 0), 0u);
}

TEST(Cli, SinglePointSweepMatchesOptimize) {
    CliRun s = run({"sweep", "--axis", "c:1:1:1", "--eta0", "5e-6", "--format", "json"});
    CliRun o = run({"optimize", "--eta0", "5e-6", "--c", "1"});
    json row = json::parse(s.out)["rows"][0];
    json opt = json::parse(o.out);
    EXPECT_EQ(row["k_max"], opt["k_max"]);
    EXPECT_EQ(row["log10_p_min"], opt["log10_p_min"]);
    EXPECT_EQ(row["status"], opt["status"]);
}

TEST(Cli, PhotonStaircaseIsMonotone) {
    CliRun r = run({"sweep", "--model", "shor", "--L", "1e6", "--axis", "nL:1e3:1e14:221:log"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 222u);
    int prev = -1, max_seen = 0;
    for (size_t i = 1; i < ls.size(); i++) {
        std::istringstream in(ls[i]);
        std::string nl, k;
        std::getline(in, nl, ',');
        std::getline(in, k, ',');
        int kk = std::stoi(k);
        EXPECT_GE(kk, prev);
        prev = kk;
        max_seen = std::max(max_seen, kk);
    }
    EXPECT_GE(max_seen, 2);
}

TEST(Cli, DeterministicOutputFiles) {
    std::vector<std::string> cmds[] = {
        {"sweep", "--axis", "c:0:10:11", "--axis", "B_eta0:0.1:0.9:9"},
        {"gatesim", "--gamma", "1", "--ng", "100"},
        {"shor", "--R", "1e3,1e5,1e7"},
    };
    int i = 0;
    for (auto args : cmds) {
        std::string a = temp_path("det_a" + std::to_string(i)), b = temp_path("det_b" + std::to_string(i));
        auto args_a = args, args_b = args;
        args_a.insert(args_a.end(), {"--out", a});
        args_b.insert(args_b.end(), {"--out", b});
        ASSERT_EQ(run(args_a).code, 0);
        ASSERT_EQ(run(args_b).code, 0);
        EXPECT_EQ(slurp(a), slurp(b));
        EXPECT_FALSE(slurp(a).empty());
        i++;
    }
}

TEST(Cli, ReportsReproduceThemselvesAsConfig) {
    std::vector<std::string> cmds[] = {
        {"optimize", "--model", "exp", "--eta0", "1e-12", "--beta", "1"},
        {"optimize", "--model", "table", "--eta0", "1e-9", "--f", "1,3,9,27"},
        {"optimize", "--model", "shor", "--L", "1e6", "--nL", "1e9", "--B", "1000"},
        {"sweep", "--format", "json", "--axis", "beta:0:2:5", "--model", "exp", "--eta0", "1e-10"},
        {"gatesim", "--gamma", "2", "--ng", "50", "--theta", "pi/2"},
        {"longrange", "--lattice", "square", "--z", "1", "--N0", "2500", "--t0", "1e-12"},
        {"shor", "--R", "1e3,1e5"},
        {"fit", "--k", "0,1,2", "--eta", "1e-6,5e-6,2e-5"},
    };
    int i = 0;
    for (auto args : cmds) {
        std::string a = temp_path("rt_a" + std::to_string(i)), b = temp_path("rt_b" + std::to_string(i));
        args.insert(args.end(), {"--out", a});
        ASSERT_EQ(run(args).code, 0) << args[0];
        CliRun again = run({"--config", a, "--out", b});
        ASSERT_EQ(again.code, 0) << again.err;
        EXPECT_EQ(slurp(a), slurp(b)) << args[0];
        i++;
    }
}

TEST(Cli, ExplicitFlagsOverrideConfig) {
    std::string cfg = temp_path("override.json");
    std::ofstream(cfg) << R"({"command": "optimize", "model": "affine", "eta0": 5e-6, "c": 1})";
    json base = json::parse(run({"--config", cfg}).out);
    EXPECT_EQ(base["k_max"], 17);
    json changed = json::parse(run({"optimize", "--config", cfg, "--c", "0"}).out);
    EXPECT_EQ(changed["status"], "unbounded-improvement");
    EXPECT_EQ(run({"--config", temp_path("missing.json")}).code, 2);
}

TEST(Cli, FitFromDataFile) {
    std::string data = temp_path("fit.csv");
    std::ofstream(data) << "k,eta\n0,1e-9\n1,2.91e-7\n2,8.4681e-5\n";
    CliRun r = run({"fit", "--data", data, "--variant", "exponential"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_NEAR(j["model"]["beta"].get<double>(), 1.0, 1e-3);
    EXPECT_EQ(j["config"]["k"].size(), 3u);
}
