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

#include "qdelsim/report.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "qdelsim/resources.hpp"

namespace qdelsim {

namespace {

/// Minimal JSON emitter with explicit ordering. Keys are written in call
/// order; numbers via format_double.
class JsonWriter {
 public:
  std::string str() const { return out_.str(); }

  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(const std::string& name) {
    separate();
    out_ << '"' << name << "\":";
    just_keyed_ = true;
  }

  void value(double v) { scalar(format_double(v)); }
  void value(int v) { scalar(std::to_string(v)); }
  void value(std::uint64_t v) { scalar(std::to_string(v)); }
  void value(const std::string& v) { scalar('"' + escape(v) + '"'); }
  void value(const char* v) { value(std::string(v)); }

  void value(const Complex& v) {
    begin_array();
    value(v.real());
    value(v.imag());
    end_array();
  }

  void value(const Eigen::VectorXcd& v) {
    begin_array();
    for (Eigen::Index i = 0; i < v.size(); ++i) value(v(i));
    end_array();
  }

  void value(const Eigen::MatrixXcd& m) {
    begin_array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      begin_array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) value(m(r, c));
      end_array();
    }
    end_array();
  }

  void value(const Eigen::Vector3d& v) {
    begin_array();
    for (int i = 0; i < 3; ++i) value(v(i));
    end_array();
  }

  void value(const Eigen::Matrix3d& m) {
    begin_array();
    for (int r = 0; r < 3; ++r) {
      begin_array();
      for (int c = 0; c < 3; ++c) value(m(r, c));
      end_array();
    }
    end_array();
  }

 private:
  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    return out;
  }

  void open(char c) {
    separate();
    out_ << c;
    needs_comma_ = false;
    just_keyed_ = false;
  }

  void close(char c) {
    out_ << c;
    needs_comma_ = true;
  }

  void scalar(const std::string& text) {
    separate();
    out_ << text;
    needs_comma_ = true;
    just_keyed_ = false;
  }

  void separate() {
    if (just_keyed_) {
      just_keyed_ = false;
      needs_comma_ = false;
      return;
    }
    if (needs_comma_) out_ << ',';
    needs_comma_ = false;
  }

  std::ostringstream out_;
  bool needs_comma_ = false;
  bool just_keyed_ = false;
};

void write_basis(JsonWriter& json, const QubitBasis& basis) {
  json.begin_object();
  json.key("theta");
  json.value(basis.theta);
  json.key("phi");
  json.value(basis.phi);
  json.end_object();
}

void write_pauli(JsonWriter& json, const PauliDecomposition& d) {
  json.begin_object();
  json.key("m");
  json.value(d.m);
  json.key("n");
  json.value(d.n);
  json.key("correlation");
  json.value(d.correlation);
  json.end_object();
}

void write_machine_config(JsonWriter& json, const ScenarioConfig& config) {
  json.begin_object();
  json.key("kind");
  json.value(to_string(config.kind));
  if (config.kind == ScenarioMachineKind::kCptp) {
    json.key("num_kraus");
    json.value(config.num_kraus);
    json.end_object();
    return;
  }
  json.key("sigma");
  json.value(Eigen::VectorXcd(config.sigma));
  if (config.kind != ScenarioMachineKind::kErase) {
    json.key("ancilla");
    json.value(Eigen::VectorXcd(config.ancilla));
    json.key("ancilla_rule");
    json.value(to_string(config.ancilla_rule.kind));
    if (config.ancilla_rule.kind == AncillaRule::Kind::kFixed) {
      json.key("ancilla_psi");
      json.value(Eigen::VectorXcd(config.ancilla_rule.fixed_psi));
      json.key("ancilla_psibar");
      json.value(Eigen::VectorXcd(config.ancilla_rule.fixed_psi_bar));
    }
    if (config.kind != ScenarioMachineKind::kClone) {
      json.key("offdiag_rule");
      json.value(to_string(config.offdiag_rule.kind));
      if (config.offdiag_rule.kind == OffdiagRule::Kind::kInline) {
        json.key("phi_prime");
        json.value(config.offdiag_rule.inline_phi_prime);
        json.key("phi_double_prime");
        json.value(config.offdiag_rule.inline_phi_double_prime);
      }
    }
  }
  json.end_object();
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

RunReport execute_scenario(const ScenarioConfig& config,
                           const std::string& command) {
  RunReport report;
  report.command = command;
  report.config = config;
  report.pairs.reserve(config.bases.size());

  if (config.kind == ScenarioMachineKind::kCptp) {
    const LinearChannel channel = make_channel(config);
    for (const QubitBasis& basis : config.bases) {
      report.pairs.push_back(
          cptp_control(channel, config.reference, basis, config.tolerance));
    }
  } else {
    const BranchMachine machine = make_machine(config);
    for (const QubitBasis& basis : config.bases) {
      report.pairs.push_back(
          machine_report(machine, config.reference, basis, config.tolerance));
    }
  }

  report.max_distance = -1.0;
  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    if (report.pairs[i].distance > report.max_distance) {
      report.max_distance = report.pairs[i].distance;
      report.argmax_index = i;
    }
  }
  report.overall_verdict = report.max_distance > config.tolerance
                               ? Verdict::kSignalling
                               : Verdict::kNoSignalling;

  const Eigen::VectorXcd product =
      tensor_product(singlet({1}, {2}), singlet({3}, {4})).amplitudes();
  report.eq2_identity_residual = phase_aligned_deviation(
      expand_two_singlets(config.reference).amplitudes(), product);
  report.hermiticity_residual = 0.0;
  report.trace_residual = 0.0;
  report.min_eigenvalue = 1.0;
  for (const SignallingReport& pair : report.pairs) {
    report.eq2_identity_residual = std::max(
        report.eq2_identity_residual,
        phase_aligned_deviation(expand_two_singlets(pair.basis_b).amplitudes(),
                                product));
    for (const DensityMatrix* rho : {&pair.rho_a, &pair.rho_b}) {
      report.hermiticity_residual =
          std::max(report.hermiticity_residual,
                   (rho->matrix() - rho->matrix().adjoint())
                       .cwiseAbs()
                       .maxCoeff());
      report.trace_residual =
          std::max(report.trace_residual,
                   std::abs(rho->matrix().trace() - Complex(1.0, 0.0)));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
          rho->matrix(), Eigen::EigenvaluesOnly);
      report.min_eigenvalue =
          std::min(report.min_eigenvalue, solver.eigenvalues().minCoeff());
    }
  }
  return report;
}

std::string render_run_report_json(const RunReport& report) {
  JsonWriter json;
  json.begin_object();
  json.key("tool");
  json.value("qdelsim");
  json.key("version");
  json.value(kVersion);
  json.key("command");
  json.value(report.command);
  json.key("seed");
  json.value(report.config.seed);
  json.key("tolerance");
  json.value(report.config.tolerance);
  json.key("bit_convention");
  json.begin_object();
  json.key("0");
  json.value("measurement in the computational basis {|0>,|1>}");
  json.key("1");
  json.value("measurement in the tilted basis {|psi>,|psi_bar>}");
  json.end_object();

  json.key("config");
  json.begin_object();
  json.key("machine");
  write_machine_config(json, report.config);
  json.key("reference");
  write_basis(json, report.config.reference);
  json.key("bases");
  json.begin_array();
  for (const QubitBasis& basis : report.config.bases) {
    write_basis(json, basis);
  }
  json.end_array();
  json.key("tolerance");
  json.value(report.config.tolerance);
  json.key("seed");
  json.value(report.config.seed);
  json.key("output");
  json.value(report.config.output_path);
  json.end_object();

  json.key("pairs");
  json.begin_array();
  for (const SignallingReport& pair : report.pairs) {
    json.begin_object();
    json.key("basis_a");
    write_basis(json, pair.basis_a);
    json.key("basis_b");
    write_basis(json, pair.basis_b);
    json.key("trace_distance");
    json.value(pair.distance);
    json.key("discrimination_probability");
    json.value(pair.discrimination_probability);
    json.key("verdict");
    json.value(to_string(pair.verdict));
    json.key("pauli_a");
    write_pauli(json, pair.pauli_a);
    json.key("pauli_b");
    write_pauli(json, pair.pauli_b);
    json.key("rho_a");
    json.value(pair.rho_a.matrix());
    json.key("rho_b");
    json.value(pair.rho_b.matrix());
    json.end_object();
  }
  json.end_array();

  json.key("summary");
  json.begin_object();
  json.key("max_distance");
  json.value(report.max_distance);
  json.key("argmax_index");
  json.value(report.argmax_index);
  json.key("argmax_theta");
  json.value(report.pairs[report.argmax_index].basis_b.theta);
  json.key("argmax_phi");
  json.value(report.pairs[report.argmax_index].basis_b.phi);
  json.key("overall_verdict");
  json.value(to_string(report.overall_verdict));
  json.end_object();

  json.key("checks");
  json.begin_object();
  json.key("eq2_identity_residual");
  json.value(report.eq2_identity_residual);
  json.key("hermiticity_residual");
  json.value(report.hermiticity_residual);
  json.key("trace_residual");
  json.value(report.trace_residual);
  json.key("min_eigenvalue");
  json.value(report.min_eigenvalue);
  json.end_object();

  json.end_object();
  std::string text = json.str();
  text.push_back('\n');
  return text;
}

std::string render_sweep_csv(const RunReport& report) {
  std::ostringstream out;
  out << "theta,phi,trace_distance,discrimination_probability,verdict\n";
  for (const SignallingReport& pair : report.pairs) {
    out << format_double(pair.basis_b.theta) << ','
        << format_double(pair.basis_b.phi) << ','
        << format_double(pair.distance) << ','
        << format_double(pair.discrimination_probability) << ','
        << to_string(pair.verdict) << '\n';
  }
  return out.str();
}

}  // namespace qdelsim
