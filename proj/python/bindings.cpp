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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <stdexcept>

#include "qdelsim/core.hpp"
#include "qdelsim/machines.hpp"
#include "qdelsim/oracle.hpp"
#include "qdelsim/protocol.hpp"
#include "qdelsim/resources.hpp"
#include "qdelsim/verification.hpp"

namespace py = pybind11;

namespace {

using namespace qdelsim;

Register positions_register(int num_qubits) {
  Register reg;
  for (int i = 0; i < num_qubits; ++i) reg.push_back(QubitLabel{i + 1});
  return reg;
}

int qubit_count_for(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim && n <= kMaxQubits) ++n;
  if ((Eigen::Index{1} << n) != dim || n > kMaxQubits) {
    throw std::invalid_argument("matrix dimension must be a power of two, 2.." +
                                std::to_string(Eigen::Index{1} << kMaxQubits));
  }
  return n;
}

DensityMatrix as_density(const Eigen::MatrixXcd& matrix) {
  return DensityMatrix(positions_register(qubit_count_for(matrix.rows())),
                       matrix);
}

Branch parse_branch(const std::string& name) {
  if (name == "psi_psi") return Branch::kPsiPsi;
  if (name == "bar_bar") return Branch::kBarBar;
  if (name == "psi_bar") return Branch::kPsiBar;
  if (name == "bar_psi") return Branch::kBarPsi;
  throw std::invalid_argument(
      "branch must be one of psi_psi|bar_bar|psi_bar|bar_psi, got '" + name +
      "'");
}

OffdiagRule parse_offdiag_rule(const std::string& name) {
  OffdiagRule rule;
  if (name == "passthrough") {
    rule.kind = OffdiagRule::Kind::kPassthrough;
  } else if (name == "entangling") {
    rule.kind = OffdiagRule::Kind::kEntangling;
  } else {
    throw std::invalid_argument(
        "offdiag_rule must be passthrough|entangling, got '" + name + "'");
  }
  return rule;
}

}  // namespace

PYBIND11_MODULE(qdelsim, m) {
  m.doc() =
      "Reduced-state signalling analysis of branch-defined qubit machines "
      "(delete/erase/clone) against linear-channel controls";

  py::class_<QubitBasis>(m, "QubitBasis")
      .def(py::init<double, double>(), py::arg("theta"), py::arg("phi") = 0.0)
      .def_readonly("theta", &QubitBasis::theta)
      .def_readonly("phi", &QubitBasis::phi)
      .def("__repr__", [](const QubitBasis& b) {
        return "QubitBasis(theta=" + std::to_string(b.theta) +
               ", phi=" + std::to_string(b.phi) + ")";
      });

  py::class_<BranchMachine>(m, "BranchMachine")
      .def_property_readonly(
          "kind", [](const BranchMachine& mach) { return to_string(mach.kind); })
      .def("__repr__", [](const BranchMachine& mach) {
        return "BranchMachine(kind=" + to_string(mach.kind) + ")";
      });

  py::class_<LinearChannel>(m, "LinearChannel")
      .def_property_readonly("num_kraus", &LinearChannel::num_kraus)
      .def_property_readonly("kraus", &LinearChannel::kraus);

  py::class_<SignallingReport>(m, "SignallingReport")
      .def_readonly("basis_a", &SignallingReport::basis_a)
      .def_readonly("basis_b", &SignallingReport::basis_b)
      .def_readonly("distance", &SignallingReport::distance)
      .def_readonly("discrimination_probability",
                    &SignallingReport::discrimination_probability)
      .def_property_readonly(
          "verdict",
          [](const SignallingReport& r) { return to_string(r.verdict); })
      .def_property_readonly(
          "rho_a", [](const SignallingReport& r) { return r.rho_a.matrix(); })
      .def_property_readonly(
          "rho_b", [](const SignallingReport& r) { return r.rho_b.matrix(); })
      .def("__repr__", [](const SignallingReport& r) {
        return "SignallingReport(distance=" + std::to_string(r.distance) +
               ", verdict=" + to_string(r.verdict) + ")";
      });

  m.def(
      "basis_states",
      [](double theta, double phi) {
        const QubitBasis basis{theta, phi};
        return py::make_tuple(Eigen::Vector2cd(basis_psi(basis)),
                              Eigen::Vector2cd(basis_psi_bar(basis)));
      },
      py::arg("theta"), py::arg("phi") = 0.0,
      "Amplitudes of the basis pair (|psi>, |psi_bar>)");

  m.def(
      "singlet", [] { return Eigen::VectorXcd(singlet({1}, {2}).amplitudes()); },
      "Amplitudes of (|01> - |10>)/sqrt(2)");

  m.def(
      "expand_two_singlets",
      [](double theta, double phi) {
        return Eigen::VectorXcd(
            expand_two_singlets(QubitBasis{theta, phi}).amplitudes());
      },
      py::arg("theta"), py::arg("phi") = 0.0,
      "Two singlets assembled from the four-branch tilted-basis expansion, "
      "on qubit order (1,2,3,4)");

  m.def(
      "partial_trace",
      [](const Eigen::MatrixXcd& rho, const std::vector<int>& discard) {
        const DensityMatrix dm = as_density(rho);
        std::vector<QubitLabel> labels;
        labels.reserve(discard.size());
        for (int p : discard) labels.push_back(QubitLabel{p + 1});
        return Eigen::MatrixXcd(partial_trace(dm, labels).matrix());
      },
      py::arg("rho"), py::arg("discard"),
      "Trace out the 0-based qubit positions in `discard` (position 0 is "
      "the most significant bit)");

  m.def(
      "trace_distance",
      [](const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
        return trace_distance(as_density(rho), as_density(sigma));
      },
      py::arg("rho"), py::arg("sigma"));

  m.def(
      "pauli_decompose",
      [](const Eigen::MatrixXcd& rho) {
        const PauliDecomposition d = pauli_decompose(as_density(rho));
        return py::make_tuple(d.m, d.n, d.correlation);
      },
      py::arg("rho"), "Bloch vectors (m, n) and correlation matrix C");

  m.def(
      "pauli_reconstruct",
      [](const Eigen::Vector3d& m_vec, const Eigen::Vector3d& n_vec,
         const Eigen::Matrix3d& correlation) {
        const PauliDecomposition d{m_vec, n_vec, correlation};
        return Eigen::MatrixXcd(
            pauli_reconstruct(d, make_register({1, 2})).matrix());
      },
      py::arg("m"), py::arg("n"), py::arg("correlation"));

  m.def(
      "deleting_machine",
      [](const std::string& offdiag_rule, const Eigen::Vector2cd& sigma,
         const Eigen::Vector2cd& ancilla) {
        return deleting_machine(sigma, ancilla,
                                parse_offdiag_rule(offdiag_rule));
      },
      py::arg("offdiag_rule") = "passthrough",
      py::arg("sigma") = Eigen::Vector2cd(1.0, 0.0),
      py::arg("ancilla") = Eigen::Vector2cd(1.0, 0.0));

  m.def(
      "erasure_machine",
      [](const Eigen::Vector2cd& sigma) { return erasure_machine(sigma); },
      py::arg("sigma") = Eigen::Vector2cd(1.0, 0.0));

  m.def("cloning_machine", [] { return cloning_machine(); });
  m.def("passthrough_machine", &passthrough_machine);

  m.def(
      "apply_branch",
      [](const BranchMachine& machine, double theta, const std::string& branch,
         double phi) {
        return Eigen::VectorXcd(
            apply_branch(machine, QubitBasis{theta, phi}, parse_branch(branch))
                .amplitudes());
      },
      py::arg("machine"), py::arg("theta"), py::arg("branch"),
      py::arg("phi") = 0.0,
      "Image of the named post-measurement branch on qubit order (2,4,5)");

  m.def(
      "bob_reduced_state",
      [](const BranchMachine& machine, double theta, double phi) {
        return Eigen::MatrixXcd(
            bob_reduced_state(machine, QubitBasis{theta, phi}).matrix());
      },
      py::arg("machine"), py::arg("theta"), py::arg("phi") = 0.0,
      "Bob's (2,4) state averaged over Alice's measurement branches");

  m.def(
      "signalling_report",
      [](const BranchMachine& machine, double theta_a, double theta_b,
         double phi_a, double phi_b, double tolerance) {
        return machine_report(machine, QubitBasis{theta_a, phi_a},
                              QubitBasis{theta_b, phi_b}, tolerance);
      },
      py::arg("machine"), py::arg("theta_a"), py::arg("theta_b"),
      py::arg("phi_a") = 0.0, py::arg("phi_b") = 0.0,
      py::arg("tolerance") = kVerdictTol,
      "Compare Bob's reduced states across two of Alice's basis choices "
      "(clone machines run the single-singlet protocol)");

  m.def(
      "cloning_protocol",
      [](const BranchMachine& machine, double theta_a, double theta_b,
         double phi_a, double phi_b, double tolerance) {
        return cloning_protocol(machine, QubitBasis{theta_a, phi_a},
                                QubitBasis{theta_b, phi_b}, tolerance);
      },
      py::arg("machine"), py::arg("theta_a"), py::arg("theta_b"),
      py::arg("phi_a") = 0.0, py::arg("phi_b") = 0.0,
      py::arg("tolerance") = kVerdictTol);

  m.def("random_cptp_channel", &random_cptp_channel, py::arg("num_kraus"),
        py::arg("seed"));
  m.def("identity_channel", &identity_channel);
  m.def("depolarizing_channel", &depolarizing_channel);

  m.def(
      "apply_channel",
      [](const LinearChannel& channel, const Eigen::MatrixXcd& rho) {
        return Eigen::MatrixXcd(apply_channel(channel, as_density(rho)).matrix());
      },
      py::arg("channel"), py::arg("rho"));

  m.def(
      "cptp_control",
      [](const LinearChannel& channel, double theta_a, double theta_b,
         double phi_a, double phi_b, double tolerance) {
        return cptp_control(channel, QubitBasis{theta_a, phi_a},
                            QubitBasis{theta_b, phi_b}, tolerance);
      },
      py::arg("channel"), py::arg("theta_a"), py::arg("theta_b"),
      py::arg("phi_a") = 0.0, py::arg("phi_b") = 0.0,
      py::arg("tolerance") = kVerdictTol);

  m.def(
      "sweep",
      [](const BranchMachine& machine, const std::vector<double>& thetas,
         double reference_theta, double tolerance) {
        std::vector<QubitBasis> grid;
        grid.reserve(thetas.size());
        for (double theta : thetas) grid.push_back(QubitBasis{theta, 0.0});
        const SweepResult result =
            sweep(machine, grid, QubitBasis{reference_theta, 0.0}, tolerance);
        return py::make_tuple(result.reports, result.argmax_index,
                              result.max_distance);
      },
      py::arg("machine"), py::arg("thetas"), py::arg("reference_theta") = 0.0,
      py::arg("tolerance") = kVerdictTol,
      "Returns (reports, argmax_index, max_distance)");

  m.def(
      "bob_reduced_state_brute",
      [](const BranchMachine& machine, double theta, double phi) {
        return oracle::bob_reduced_state_brute(machine, QubitBasis{theta, phi});
      },
      py::arg("machine"), py::arg("theta"), py::arg("phi") = 0.0,
      "Independent brute-force route: full 5-qubit output state, index-sum "
      "partial trace");

  m.def("verification_suite", [] {
    py::list out;
    for (const CheckResult& check : run_verification_suite()) {
      out.append(py::make_tuple(check.name, check.passed, check.residual,
                                check.threshold));
    }
    return out;
  });

#ifdef QDELSIM_VERSION
  m.attr("__version__") = QDELSIM_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
