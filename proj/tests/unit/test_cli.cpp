// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "../../tools/cli.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = logsob::cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("bound") {
    const Run be = run({"bound", "--potential", "family=gaussian rho=1 dim=2", "--method", "be"});
    CHECK(be.code == 0);
    const auto j = nlohmann::json::parse(be.out);
    CHECK(j["constant"].get<double>() == 2.0);
    CHECK(j["valid"].get<bool>());

    const Run fk = run({"bound", "--potential", "family=gaussian rho=1 dim=1", "--perturbation", "perturbation=identity"});
    CHECK(fk.code == 0);
    CHECK(nlohmann::json::parse(fk.out)["constant"].get<double>() == 2.0);

    // Invalid bound: constant is written as a string and the exit code is 1.
    const Run bad = run({"bound", "--potential", "family=subbotin alpha=4 dim=1", "--method", "be"});
    CHECK(bad.code == 1);
    const auto jb = nlohmann::json::parse(bad.out);
    CHECK(jb["constant"] == "inf");
    CHECK_FALSE(jb["valid"].get<bool>());
  }

  TEST_CASE("certify writes exactly the documented keys") {
    const Run r = run({"certify", "--family", "quadric", "--eps", "0.5", "--dim", "3"});
    CHECK(r.code == 0);
    const auto j = nlohmann::ordered_json::parse(r.out);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"family", "eps", "dim", "coefficients", "roots", "verdict", "kappa"});
    CHECK(j["verdict"].get<bool>());
    CHECK(j["kappa"].get<double>() == doctest::Approx(1.5));

    const Run dw = run({"certify", "--family", "double_well", "--eps", "0.5", "--dim", "3", "--beta", "0.25"});
    CHECK(dw.code == 0);
    CHECK(nlohmann::json::parse(dw.out).contains("beta"));

    const Run fail = run({"certify", "--family", "quadric", "--eps", "2", "--dim", "1"});
    CHECK(fail.code == 0);
    CHECK_FALSE(nlohmann::json::parse(fail.out)["verdict"].get<bool>());
  }

  TEST_CASE("sweep CSV") {
    const Run r = run({"sweep", "--family", "quadric", "--dims", "1:4"});
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "d,eps,kappa,bound,envelope,valid,certified");
    CHECK(line_count(r.out) == 5);
    const Run list = run({"sweep", "--family", "double_well", "--dims", "1,3", "--beta", "0.1"});
    CHECK(list.code == 0);
    CHECK(line_count(list.out) == 3);
  }

  TEST_CASE("simulate and emitted paths") {
    const auto path = temp_file("logsob_cli_paths.csv");
    const Run r = run({"simulate", "--potential", "family=subbotin alpha=4 dim=2", "--perturbation",
                       "perturbation=arctan eps=0.3", "--t", "0.1", "--dt", "0.01", "--paths", "5", "--emit-paths",
                       path.string()});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).contains("max_dual_form_gap"));
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "path_id,x1,x2,logR,J_norm");
    std::size_t rows = 0;
    for (std::string line; std::getline(f, line);) ++rows;
    CHECK(rows == 5);
    std::filesystem::remove(path);
  }

  TEST_CASE("sample CSV") {
    const Run r = run({"sample", "--potential", "family=double_well beta=0.25 dim=3", "-n", "7", "--seed", "1"});
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "x1,x2,x3");
    CHECK(line_count(r.out) == 8);
  }

  TEST_CASE("verify") {
    const Run r = run({"verify", "--check", "martingale", "--potential", "family=gaussian rho=1 dim=1",
                       "--perturbation", "perturbation=arctan eps=0.3", "--t", "0.2", "--dt", "0.01", "--paths",
                       "500"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["pass"].get<bool>());

    // Precondition failures exit 1.
    const Run pre = run({"verify", "--check", "monotone", "--potential", "family=gaussian rho=1 dim=2",
                         "--perturbation", "perturbation=arctan eps=0.3", "--f", "one_plus_tanh", "--paths", "10"});
    CHECK(pre.code == 1);
    CHECK(pre.err.find("d = 1") != std::string::npos);
  }

  TEST_CASE("manifest") {
    const auto path = temp_file("logsob_cli_manifest.json");
    const Run r = run({"--manifest", path.string(), "certify", "--family", "quadric", "--eps", "0.5", "--dim", "2"});
    CHECK(r.code == 0);
    std::ifstream f(path);
    const auto m = nlohmann::json::parse(f);
    CHECK(m["command"] == "certify");
    CHECK(m["exit_code"] == 0);
    CHECK(m.contains("versions"));
    std::filesystem::remove(path);

    const Run s = run({"certify", "--family", "quadric", "--eps", "0.5", "--dim", "2"});
    CHECK(s.err.find("\"exit_code\"") != std::string::npos);
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    const Run bogus = run({"bound", "--potential", "family=gaussian", "--bogus"});
    CHECK(bogus.code == 2);
    CHECK(bogus.err.find("--bogus") != std::string::npos);
    CHECK(run({"bound", "--potential", "family=nonsense"}).code == 2);
    CHECK(run({"certify", "--family", "quadric", "--eps", "abc", "--dim", "1"}).code == 2);
    CHECK(run({"sweep", "--family", "quadric", "--dims", "5:2"}).code != 0);
  }

  TEST_CASE("parameter errors exit 1") {
    CHECK(run({"bound", "--potential", "family=subbotin alpha=1.5 dim=1"}).code == 1);
    CHECK(run({"simulate", "--potential", "family=gaussian dim=1", "--dt", "-1"}).code == 1);
  }
}
