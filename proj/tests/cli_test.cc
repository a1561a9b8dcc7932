// Copyright 2026 The qecw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Drives the installed binary end to end through popen; the binary path
// arrives in the QECW_BIN environment variable.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"
#include "qecw/codes.hpp"
#include "qecw/correct.hpp"

namespace {

using json = nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

RunResult run_cli(const std::string &args) {
  const char *bin = std::getenv("QECW_BIN");
  if (bin == nullptr) {
    ADD_FAILURE() << "QECW_BIN must point at the binary";
    return {};
  }
  std::string err_path = "/tmp/qecw_cli_test_stderr.txt";
  std::string cmd = std::string(bin) + " " + args + " 2>" + err_path;
  FILE *pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  RunResult res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.err = slurp(err_path);
  return res;
}

json parse_json(const RunResult &r) {
  json j = json::parse(r.out, nullptr, /*allow_exceptions=*/false);
  EXPECT_FALSE(j.is_discarded()) << "not JSON: " << r.out.substr(0, 200);
  return j;
}

TEST(CodeCmd, ShowListsParametersAndBothLogicalKets) {
  RunResult r = run_cli("code show steane");
  ASSERT_EQ(r.code, 0) << r.err;
  json j = parse_json(r);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["n"], 7);
  EXPECT_EQ(j["k"], 1);
  EXPECT_EQ(j["d"], 3);
  EXPECT_EQ(j["stabilizers"].size(), 6u);

  std::set<std::string> zero, one;
  for (const auto &k : j["basis_kets"]["zero"])
    zero.insert(k["ket"].get<std::string>());
  for (const auto &k : j["basis_kets"]["one"])
    one.insert(k["ket"].get<std::string>());
  std::set<std::string> want_zero = {"0000000", "1010101", "0110011",
                                     "1100110", "0001111", "1011010",
                                     "0111100", "1101001"};
  EXPECT_EQ(zero, want_zero);
  // The one-ket expansion is the bit complement of the zero expansion.
  std::set<std::string> complemented;
  for (std::string s : want_zero) {
    for (char &c : s) c = c == '0' ? '1' : '0';
    complemented.insert(s);
  }
  EXPECT_EQ(one, complemented);
  // Uniform positive amplitudes.
  for (const auto &k : j["basis_kets"]["zero"]) {
    EXPECT_NEAR(k["re"].get<double>(), 1.0 / std::sqrt(8.0), 1e-12);
    EXPECT_NEAR(k["im"].get<double>(), 0.0, 1e-12);
  }
}

TEST(CodeCmd, DistanceReportsPerErrorType) {
  RunResult r = run_cli("code distance repetition3");
  ASSERT_EQ(r.code, 0) << r.err;
  json j = parse_json(r);
  EXPECT_EQ(j["distance"]["any"], 1);
  EXPECT_EQ(j["distance"]["x_only"], 3);
  EXPECT_EQ(j["distance"]["z_only"], 1);

  RunResult s = run_cli("code distance steane");
  ASSERT_EQ(s.code, 0);
  json js = parse_json(s);
  EXPECT_EQ(js["distance"]["any"], 3);
  EXPECT_EQ(js["distance"]["x_only"], 3);
  EXPECT_EQ(js["distance"]["z_only"], 3);
}

TEST(CodeCmd, BadFileIsAValidationError) {
  spit("/tmp/qecw_bad_code.stab", "7 1\nZZ\n");  // wrong generator width
  RunResult r = run_cli("code show --code-file /tmp/qecw_bad_code.stab");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line"), std::string::npos) << r.err;

  RunResult missing = run_cli("code show");
  EXPECT_EQ(missing.code, 2);
}

TEST(CodeCmd, ExportRoundTrips) {
  RunResult r = run_cli("code export steane --out /tmp/qecw_export.stab");
  ASSERT_EQ(r.code, 0) << r.err;
  qecw::StabilizerCode loaded =
      qecw::load_stabilizer_file("/tmp/qecw_export.stab", /*trust_d=*/true);
  qecw::StabilizerCode want = qecw::steane_code();
  ASSERT_EQ(loaded.stabilizers.size(), want.stabilizers.size());
  for (size_t i = 0; i < want.stabilizers.size(); ++i)
    EXPECT_EQ(loaded.stabilizers[i].str(), want.stabilizers[i].str());
  EXPECT_EQ(loaded.logical_x[0].str(), want.logical_x[0].str());
  ASSERT_TRUE(loaded.d.has_value());
  EXPECT_EQ(*loaded.d, 3u);
}

TEST(SimulateCmd, ReproducibleRunsAndExactZeroNoise) {
  std::string args =
      "simulate --code steane --noise depolarizing --p 0.01 --trials 50 "
      "--seed 7";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);  // bit-exact reruns
  json j = parse_json(a);
  EXPECT_EQ(j["records"].size(), 50u);
  EXPECT_EQ(j["seed"], 7);

  RunResult zero = run_cli(
      "simulate --code steane --noise depolarizing --p 0 --trials 10 --seed 3");
  ASSERT_EQ(zero.code, 0);
  EXPECT_EQ(parse_json(zero)["mean_fidelity"], 1.0);
}

TEST(SimulateCmd, HadamardTrickTurnsPhaseNoiseIntoRareFlips) {
  RunResult r = run_cli(
      "simulate --code repetition3 --noise phase --epsilon 0.05 --trials 300 "
      "--seed 11 --hadamard-trick");
  ASSERT_EQ(r.code, 0) << r.err;
  double mean = parse_json(r)["mean_fidelity"].get<double>();
  // p = flip weight at eps 0.05 is about 0.032, so 1 - 3p^2 is about 0.997.
  EXPECT_GT(mean, 0.97);
  EXPECT_LT(mean, 1.0 + 1e-9);
}

TEST(MontecarloCmd, CsvGoldenShapeAndWorkerInvariance) {
  RunResult csv = run_cli(
      "montecarlo --code repetition3 --noise bitflip --p 0.1 "
      "--trials 200000 --seed 42 --workers 3 --format csv");
  ASSERT_EQ(csv.code, 0) << csv.err;
  std::istringstream lines(csv.out);
  std::string l1, l2, l3;
  std::getline(lines, l1);
  std::getline(lines, l2);
  std::getline(lines, l3);
  EXPECT_EQ(l1, "# schema_version=1");
  EXPECT_EQ(l2, "param,p_hat,ci_low,ci_high,failures,trials,seed");
  EXPECT_EQ(l3.rfind("0.1,", 0), 0u);

  RunResult js = run_cli(
      "montecarlo --code repetition3 --noise bitflip --p 0.1 "
      "--trials 200000 --seed 42 --workers 1");
  ASSERT_EQ(js.code, 0);
  double p_hat = parse_json(js)["estimate"]["p_hat"].get<double>();
  EXPECT_NEAR(p_hat, 0.028, 0.002);
  char expect[64];
  std::snprintf(expect, sizeof expect, "0.1,%.10g,", p_hat);
  EXPECT_EQ(l3.rfind(expect, 0), 0u)
      << "worker count changed the estimate: " << l3;
}

TEST(SweepCmd, GridIsReproducibleWithDistinctPointSeeds) {
  std::string args =
      "sweep --code repetition3 --noise bitflip --values 0.05,0.1 "
      "--trials 20000 --seed 5";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  json j = parse_json(a);
  ASSERT_EQ(j["points"].size(), 2u);
  EXPECT_EQ(j["points"][0]["param"], 0.05);
  EXPECT_EQ(j["points"][1]["param"], 0.1);
  EXPECT_NE(j["points"][0]["estimate"]["seed"],
            j["points"][1]["estimate"]["seed"]);
}

TEST(AnalyticCmd, FormulasEchoInputsAndValidate) {
  RunResult big = run_cli("analytic large_code_example --n 127 --p 0.001 --t 7");
  ASSERT_EQ(big.code, 0) << big.err;
  json j = parse_json(big);
  EXPECT_EQ(j["inputs"]["n"], 127);
  double v = j["value"].get<double>();
  EXPECT_GT(v, 1.0e-8);
  EXPECT_LT(v, 1.2e-8);

  RunResult zero = run_cli("analytic three_bit_failure --p 0");
  EXPECT_EQ(parse_json(zero)["value"], 0.0);
  RunResult smoke = run_cli("analytic three_bit_failure --p 0.1");
  EXPECT_NEAR(parse_json(smoke)["value"].get<double>(), 0.028, 1e-12);

  RunResult coh = run_cli(
      "analytic p_uncorrectable --n 7 --t 1 --epsilon 0.01 --mode coherent");
  RunResult inc = run_cli(
      "analytic p_uncorrectable --n 7 --t 1 --epsilon 0.01 --mode incoherent");
  ASSERT_EQ(coh.code, 0);
  ASSERT_EQ(inc.code, 0);
  double ratio = parse_json(coh)["value"].get<double>() /
                 parse_json(inc)["value"].get<double>();
  EXPECT_NEAR(ratio, 189.0, 1e-6 * 189.0);  // 3^2 * C(7,2)

  EXPECT_EQ(run_cli("analytic three_bit_failure").code, 2);
  EXPECT_EQ(run_cli("analytic no_such_formula --p 0.1").code, 2);
  EXPECT_EQ(run_cli("analytic three_bit_failure --p 0.1 --format csv").code, 2);
}

TEST(TrackCmd, NamedCodeAndCircuitFileAgree) {
  RunResult named = run_cli("track --code repetition3 --alphabet x");
  ASSERT_EQ(named.code, 0) << named.err;
  json jn = parse_json(named);
  EXPECT_EQ(jn["singles"]["clean"].get<int>() +
                jn["singles"]["detectable"].get<int>() +
                jn["singles"]["logical"].get<int>(),
            16);
  EXPECT_EQ(jn["singles"]["logical"], 0);
  EXPECT_GT(jn["pairs"]["logical"].get<int>(), 0);

  qecw::StabilizerCode rep = qecw::repetition_code();
  spit("/tmp/qecw_circuit.txt",
       qecw::build_extraction_circuit(rep, 3).str());
  RunResult from_file = run_cli(
      "track --code repetition3 --circuit-file /tmp/qecw_circuit.txt "
      "--alphabet x");
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  json jf = parse_json(from_file);
  EXPECT_EQ(jf["singles"], jn["singles"]);
  EXPECT_EQ(jf["pairs"], jn["pairs"]);

  RunResult csv =
      run_cli("track --code repetition3 --alphabet x --format csv");
  ASSERT_EQ(csv.code, 0);
  EXPECT_NE(csv.out.find("2,g1[X0] g2[X1],XXX\n"), std::string::npos);

  EXPECT_EQ(run_cli("track --code steane --pair-budget 100").code, 2);
}

TEST(ConfigFile, SuppliesDefaultsAndRejectsUnknownKeys) {
  spit("/tmp/qecw_cfg.json", "{\"trials\": 1000, \"p\": 0.2}");
  RunResult defaults = run_cli(
      "montecarlo --code repetition3 --noise bitflip --seed 1 "
      "--config /tmp/qecw_cfg.json");
  ASSERT_EQ(defaults.code, 0) << defaults.err;
  json j = parse_json(defaults);
  EXPECT_EQ(j["estimate"]["trials"], 1000);
  EXPECT_EQ(j["noise"]["p"], 0.2);

  RunResult overridden = run_cli(
      "montecarlo --code repetition3 --noise bitflip --seed 1 --p 0.1 "
      "--config /tmp/qecw_cfg.json");
  EXPECT_EQ(parse_json(overridden)["noise"]["p"], 0.1);

  spit("/tmp/qecw_cfg_bad.json", "{\"bogus\": 1}");
  RunResult bad = run_cli(
      "montecarlo --code repetition3 --noise bitflip --p 0.1 --trials 10 "
      "--seed 1 --config /tmp/qecw_cfg_bad.json");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("bogus"), std::string::npos);
}

TEST(NoiseSpec, InlineJsonWorksAndIsStrict) {
  RunResult iid = run_cli(
      "montecarlo --code steane --noise "
      "'{\"channel\":\"iid\",\"px\":0.02,\"py\":0.01,\"pz\":0.03}' "
      "--trials 20000 --seed 9");
  ASSERT_EQ(iid.code, 0) << iid.err;
  json j = parse_json(iid);
  EXPECT_EQ(j["noise"]["px"], 0.02);
  EXPECT_GT(j["estimate"]["p_hat"].get<double>(), 0.0);

  EXPECT_EQ(run_cli("montecarlo --code steane --noise "
                    "'{\"channel\":\"bitflip\"}' --trials 10 --seed 1")
                .code,
            2);
  EXPECT_EQ(run_cli("montecarlo --code steane --noise "
                    "'{\"channel\":\"bitflip\",\"p\":0.1,\"x\":1}' "
                    "--trials 10 --seed 1")
                .code,
            2);
  EXPECT_EQ(run_cli("montecarlo --code steane --noise iid --trials 10 "
                    "--seed 1")
                .code,
            2);
  EXPECT_EQ(run_cli("montecarlo --code steane --noise phase --p 0.1 "
                    "--trials 10 --seed 1")
                .code,
            2);
  EXPECT_EQ(run_cli("montecarlo --code steane --noise bitflip --p 1.5 "
                    "--trials 10 --seed 1")
                .code,
            2);
}

TEST(SeedPolicy, EntropySeedIsPrintedWhenOmitted) {
  RunResult a = run_cli(
      "montecarlo --code repetition3 --noise bitflip --p 0.1 --trials 100");
  RunResult b = run_cli(
      "montecarlo --code repetition3 --noise bitflip --p 0.1 --trials 100");
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0);
  EXPECT_NE(a.err.find("seed "), std::string::npos);
  EXPECT_NE(parse_json(a)["estimate"]["seed"],
            parse_json(b)["estimate"]["seed"]);
}

TEST(OutputSink, WritesFilesAndReportsRuntimeFailures) {
  RunResult ok = run_cli(
      "analytic phase_fidelity --epsilon 0.02 --out /tmp/qecw_out.json");
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_TRUE(ok.out.empty());
  json j = json::parse(slurp("/tmp/qecw_out.json"));
  EXPECT_EQ(j["command"], "analytic");

  RunResult bad = run_cli(
      "analytic phase_fidelity --epsilon 0.02 --out /nonexistent-dir/x.json");
  EXPECT_EQ(bad.code, 1);
}

}  // namespace
