// Copyright the qdelsim developers
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

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qdelsim/report.hpp"
#include "qdelsim/scenario.hpp"

using namespace qdelsim;

TEST_CASE("angle literals") {
  CHECK(parse_angle("0") == 0.0);
  CHECK(parse_angle("1.25") == doctest::Approx(1.25));
  CHECK(parse_angle("-0.5") == doctest::Approx(-0.5));
  CHECK(parse_angle("pi") == doctest::Approx(std::numbers::pi));
  CHECK(parse_angle("pi/2") == doctest::Approx(std::numbers::pi / 2.0));
  CHECK(parse_angle("3pi/4") == doctest::Approx(3.0 * std::numbers::pi / 4.0));
  CHECK(parse_angle("2*pi/3") == doctest::Approx(2.0 * std::numbers::pi / 3.0));
  CHECK(parse_angle("-pi") == doctest::Approx(-std::numbers::pi));
  CHECK(parse_angle("0.5pi") == doctest::Approx(std::numbers::pi / 2.0));
  CHECK(parse_angle("2pi") == doctest::Approx(2.0 * std::numbers::pi));
  CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle("pie"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle("pi/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle("xyz"), std::invalid_argument);
}

TEST_CASE("minimal config resolves defaults") {
  const ScenarioConfig config = parse_scenario_text(
      "machine.kind = delete\n"
      "basis.grid = 0, pi/2\n");
  CHECK(config.kind == ScenarioMachineKind::kDelete);
  CHECK(config.sigma(0) == Complex(1.0, 0.0));
  CHECK(config.ancilla_rule.kind == AncillaRule::Kind::kCopy);
  CHECK(config.offdiag_rule.kind == OffdiagRule::Kind::kPassthrough);
  CHECK(config.tolerance == 1e-10);
  CHECK(config.seed == 0);
  REQUIRE(config.bases.size() == 2);
  CHECK(config.bases[1].theta ==
        doctest::Approx(std::numbers::pi / 2.0));
  CHECK(config.reference.theta == 0.0);
}

TEST_CASE("full config round trip of fields") {
  const ScenarioConfig config = parse_scenario_text(
      "# comment line\n"
      "machine.kind = delete\n"
      "machine.sigma = 0,0, 1,0\n"
      "machine.ancilla = 1,0, 0,0\n"
      "machine.ancilla_rule = fixed\n"
      "machine.ancilla_psi = 1,0, 0,0\n"
      "machine.ancilla_psibar = 0,0, 0,1\n"
      "machine.offdiag_rule = entangling\n"
      "basis.grid = 0, pi/4:0.3, 1.1:0.7\n"
      "basis.reference = pi/2\n"
      "tolerance = 1e-9\n"
      "seed = 42\n"
      "output = out.json\n");
  CHECK(config.sigma(1) == Complex(1.0, 0.0));
  CHECK(config.ancilla_rule.kind == AncillaRule::Kind::kFixed);
  CHECK(config.ancilla_rule.fixed_psi_bar(1) == Complex(0.0, 1.0));
  CHECK(config.offdiag_rule.kind == OffdiagRule::Kind::kEntangling);
  REQUIRE(config.bases.size() == 3);
  CHECK(config.bases[1].theta == doctest::Approx(std::numbers::pi / 4.0));
  CHECK(config.bases[1].phi == doctest::Approx(0.3));
  CHECK(config.bases[2].phi == doctest::Approx(0.7));
  CHECK(config.reference.theta == doctest::Approx(std::numbers::pi / 2.0));
  CHECK(config.tolerance == 1e-9);
  CHECK(config.seed == 42);
  CHECK(config.output_path == "out.json");
}

TEST_CASE("grid_points generates a uniform grid") {
  const ScenarioConfig config = parse_scenario_text(
      "machine.kind = erase\n"
      "basis.grid_points = 8\n");
  REQUIRE(config.bases.size() == 8);
  CHECK(config.bases[0].theta == 0.0);
  CHECK(config.bases[4].theta == doctest::Approx(std::numbers::pi));
  for (const auto& basis : config.bases) CHECK(basis.phi == 0.0);
}

TEST_CASE("a caller-supplied default grid fills in for missing grid keys") {
  const ScenarioConfig config =
      parse_scenario_text("machine.kind = erase\n", 64);
  CHECK(config.bases.size() == 64);
  // explicit grid keys still win over the default
  const ScenarioConfig explicit_grid =
      parse_scenario_text("machine.kind = erase\nbasis.grid = 0, pi\n", 64);
  CHECK(explicit_grid.bases.size() == 2);
  // without a default, a missing grid stays an error
  CHECK_THROWS_AS(parse_scenario_text("machine.kind = erase\n"), ConfigError);
}

TEST_CASE("config rejections carry line and field information") {
  auto expect_error = [](const std::string& text, const std::string& field) {
    try {
      parse_scenario_text(text);
      FAIL_CHECK("expected ConfigError for field " << field);
    } catch (const ConfigError& e) {
      CHECK(e.field() == field);
    }
  };

  expect_error("basis.grid = 0\n", "machine.kind");
  expect_error("machine.kind = warp\nbasis.grid = 0\n", "machine.kind");
  expect_error("machine.kind = delete\n", "basis.grid");
  expect_error("machine.kind = delete\nbasis.grid = 0\nbasis.grid_points = 4\n",
               "basis.grid_points");
  expect_error("machine.kind = delete\nbasis.grid = 0\nnot_a_key = 1\n",
               "not_a_key");
  expect_error("machine.kind = delete\nbasis.grid = 0\ntolerance = -1\n",
               "tolerance");
  expect_error("machine.kind = delete\nbasis.grid = 0\nmachine.num_kraus = 2\n",
               "machine.num_kraus");
  expect_error("machine.kind = cptp\nbasis.grid = 0\nmachine.sigma = 1,0,0,0\n",
               "machine.sigma");
  expect_error("machine.kind = erase\nbasis.grid = 0\nmachine.ancilla = 1,0,0,0\n",
               "machine.ancilla");
  expect_error(
      "machine.kind = delete\nbasis.grid = 0\nmachine.ancilla_rule = fixed\n",
      "machine.ancilla_psi");
  expect_error(
      "machine.kind = delete\nbasis.grid = 0\nmachine.offdiag_rule = inline\n",
      "machine.phi_prime");
  expect_error("machine.kind = delete\nbasis.grid = 0\nmachine.sigma = 1,0\n",
               "machine.sigma");
  expect_error("machine.kind = delete\nbasis.grid = zero\n", "basis.grid");

  try {
    parse_scenario_text("machine.kind = delete\nmachine.kind = erase\n");
    FAIL_CHECK("expected duplicate-key error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
  }

  CHECK_THROWS_AS(parse_scenario_text("just some words\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario_file("/does/not/exist.cfg"), ConfigError);
}

TEST_CASE("inline off-diagonal states are normalized at parse time") {
  const ScenarioConfig config = parse_scenario_text(
      "machine.kind = custom\n"
      "machine.offdiag_rule = inline\n"
      "machine.phi_prime = 1,0, 0,0, 0,0, 0,0, 0,0, 0,0, 0,0, 1,0\n"
      "machine.phi_double_prime = 0,0, 1,0, 0,0, 0,0, 0,0, 0,0, 0,0, 0,0\n"
      "basis.grid = 0\n");
  const BranchMachine machine = make_machine(config);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(machine.offdiag_rule.inline_phi_prime(0) -
                 Complex(inv_sqrt2, 0.0)) < kEqTol);
  CHECK(std::abs(machine.offdiag_rule.inline_phi_prime.norm() - 1.0) < kEqTol);
}

TEST_CASE("machine and channel construction dispatch on kind") {
  const ScenarioConfig delete_config = parse_scenario_text(
      "machine.kind = delete\nbasis.grid = 0\n");
  CHECK(make_machine(delete_config).kind == MachineKind::kDelete);
  CHECK_THROWS_AS(make_channel(delete_config), std::invalid_argument);

  const ScenarioConfig cptp_config = parse_scenario_text(
      "machine.kind = cptp\nmachine.num_kraus = 2\nseed = 5\nbasis.grid = 0\n");
  CHECK(make_channel(cptp_config).num_kraus() == 2);
  CHECK_THROWS_AS(make_machine(cptp_config), std::invalid_argument);
}

TEST_CASE("run report JSON parses back losslessly") {
  ScenarioConfig config = parse_scenario_text(
      "machine.kind = delete\n"
      "basis.grid = 0, pi/3, pi/2\n"
      "output = report.json\n");
  const RunReport report = execute_scenario(config, "run");
  const std::string rendered = render_run_report_json(report);

  const nlohmann::json parsed = nlohmann::json::parse(rendered);
  CHECK(parsed["tool"] == "qdelsim");
  CHECK(parsed["version"] == kVersion);
  CHECK(parsed["command"] == "run");
  CHECK(parsed["config"]["machine"]["kind"] == "delete");
  REQUIRE(parsed["pairs"].size() == 3);

  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    const auto& pair_json = parsed["pairs"][i];
    // exact equality: %.17g round-trips IEEE doubles
    CHECK(pair_json["trace_distance"].get<double>() ==
          report.pairs[i].distance);
    CHECK(pair_json["discrimination_probability"].get<double>() ==
          report.pairs[i].discrimination_probability);
    CHECK(pair_json["basis_b"]["theta"].get<double>() ==
          report.pairs[i].basis_b.theta);
    const auto& rho_json = pair_json["rho_a"];
    for (Eigen::Index r = 0; r < 4; ++r) {
      for (Eigen::Index c = 0; c < 4; ++c) {
        const Complex entry = report.pairs[i].rho_a.matrix()(r, c);
        CHECK(rho_json[r][c][0].get<double>() == entry.real());
        CHECK(rho_json[r][c][1].get<double>() == entry.imag());
      }
    }
  }
  CHECK(parsed["summary"]["max_distance"].get<double>() ==
        report.max_distance);
  CHECK(parsed["summary"]["overall_verdict"] == "signalling");
  CHECK(parsed["checks"]["eq2_identity_residual"].get<double>() ==
        report.eq2_identity_residual);

  // identical scenario, identical bytes
  CHECK(render_run_report_json(execute_scenario(config, "run")) == rendered);
}

TEST_CASE("sweep CSV has the exact column format") {
  ScenarioConfig config = parse_scenario_text(
      "machine.kind = delete\n"
      "basis.grid = 0, pi/2\n");
  const RunReport report = execute_scenario(config, "sweep");
  const std::string csv = render_sweep_csv(report);

  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "theta,phi,trace_distance,discrimination_probability,verdict");
  std::string row;
  std::getline(lines, row);
  CHECK(row == "0,0,0,0.5,no-signalling");
  std::getline(lines, row);
  CHECK(row.find("1.5707963267948966,0,0.24999999999999") == 0);
  CHECK(row.find("signalling") != std::string::npos);
  CHECK_FALSE(std::getline(lines, row));
}

TEST_CASE("cptp scenarios execute as controls") {
  ScenarioConfig config = parse_scenario_text(
      "machine.kind = cptp\n"
      "machine.num_kraus = 3\n"
      "seed = 11\n"
      "basis.grid = 0, pi/2, 1.0:0.5\n");
  const RunReport report = execute_scenario(config, "run");
  for (const auto& pair : report.pairs) {
    CHECK(pair.distance < 1e-12);
  }
  CHECK(report.overall_verdict == Verdict::kNoSignalling);
}
