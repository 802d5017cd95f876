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

#include "qdelsim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace qdelsim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

double parse_plain_double(const std::string& token, int line,
                          const std::string& field) {
  const std::string t = trim(token);
  double value{};
  const auto [ptr, ec] =
      std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(line, field, "'" + t + "' is not a number");
  }
  return value;
}

struct RawEntry {
  std::string value;
  int line;
  bool consumed = false;
};

class KeyValueDoc {
 public:
  explicit KeyValueDoc(const std::string& text) {
    int line_no = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) {
        line = line.substr(0, hash);
      }
      const std::string trimmed = trim(line);
      if (trimmed.empty()) continue;
      const auto eq = trimmed.find('=');
      if (eq == std::string::npos) {
        throw ConfigError(line_no, "",
                          "expected 'key = value', got '" + trimmed + "'");
      }
      const std::string key = trim(trimmed.substr(0, eq));
      const std::string value = trim(trimmed.substr(eq + 1));
      if (key.empty()) {
        throw ConfigError(line_no, "", "missing key before '='");
      }
      if (entries_.contains(key)) {
        throw ConfigError(line_no, key, "duplicate key");
      }
      entries_[key] = RawEntry{value, line_no};
    }
  }

  const RawEntry* find(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.consumed = true;
    return &it->second;
  }

  void reject_unconsumed() const {
    for (const auto& [key, entry] : entries_) {
      if (!entry.consumed) {
        throw ConfigError(entry.line, key, "unknown key");
      }
    }
  }

 private:
  std::map<std::string, RawEntry> entries_;
};

Eigen::VectorXcd parse_state(const std::string& value, Eigen::Index dim,
                             int line, const std::string& field) {
  const std::vector<std::string> parts = split(value, ',');
  if (static_cast<Eigen::Index>(parts.size()) != 2 * dim) {
    throw ConfigError(line, field,
                      "expected " + std::to_string(2 * dim) +
                          " comma-separated numbers (real,imag pairs), got " +
                          std::to_string(parts.size()));
  }
  Eigen::VectorXcd state(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    state(i) = Complex(
        parse_plain_double(parts[static_cast<std::size_t>(2 * i)], line, field),
        parse_plain_double(parts[static_cast<std::size_t>(2 * i + 1)], line,
                           field));
  }
  return state;
}

QubitBasis parse_basis_entry(const std::string& entry, int line,
                             const std::string& field) {
  const std::vector<std::string> parts = split(entry, ':');
  if (parts.size() > 2) {
    throw ConfigError(line, field,
                      "basis entry '" + entry + "' has too many ':'");
  }
  QubitBasis basis;
  try {
    basis.theta = parse_angle(parts[0]);
    basis.phi = parts.size() == 2 ? parse_angle(parts[1]) : 0.0;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(line, field, e.what());
  }
  return basis;
}

}  // namespace

ConfigError::ConfigError(int line, std::string field,
                         const std::string& message)
    : std::runtime_error("line " + std::to_string(line) +
                         (field.empty() ? "" : " (" + field + ")") + ": " +
                         message),
      line_(line),
      field_(std::move(field)) {}

std::string to_string(ScenarioMachineKind kind) {
  switch (kind) {
    case ScenarioMachineKind::kDelete:
      return "delete";
    case ScenarioMachineKind::kErase:
      return "erase";
    case ScenarioMachineKind::kClone:
      return "clone";
    case ScenarioMachineKind::kCustom:
      return "custom";
    case ScenarioMachineKind::kCptp:
      return "cptp";
  }
  return "?";
}

double parse_angle(const std::string& token) {
  std::string t = trim(token);
  if (t.empty()) throw std::invalid_argument("empty angle");
  std::string lower(t.size(), ' ');
  std::transform(t.begin(), t.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });

  const auto pi_pos = lower.find("pi");
  if (pi_pos == std::string::npos) {
    double value{};
    const auto [ptr, ec] =
        std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
      throw std::invalid_argument("'" + token + "' is not a valid angle");
    }
    return value;
  }

  std::string prefix = trim(lower.substr(0, pi_pos));
  std::string suffix = trim(lower.substr(pi_pos + 2));

  double coefficient = 1.0;
  if (!prefix.empty()) {
    if (prefix == "-") {
      coefficient = -1.0;
    } else {
      if (prefix.back() == '*') prefix = trim(prefix.substr(0, prefix.size() - 1));
      const auto [ptr, ec] = std::from_chars(
          prefix.data(), prefix.data() + prefix.size(), coefficient);
      if (ec != std::errc() || ptr != prefix.data() + prefix.size()) {
        throw std::invalid_argument("'" + token +
                                    "' has a bad coefficient before pi");
      }
    }
  }

  double divisor = 1.0;
  if (!suffix.empty()) {
    if (suffix.front() != '/') {
      throw std::invalid_argument("'" + token +
                                  "' has trailing characters after pi");
    }
    const std::string div = trim(suffix.substr(1));
    const auto [ptr, ec] =
        std::from_chars(div.data(), div.data() + div.size(), divisor);
    if (ec != std::errc() || ptr != div.data() + div.size() ||
        divisor == 0.0) {
      throw std::invalid_argument("'" + token + "' has a bad divisor");
    }
  }
  return coefficient * std::numbers::pi / divisor;
}

std::vector<QubitBasis> uniform_theta_grid(int points) {
  if (points < 1) {
    throw std::invalid_argument("grid needs at least one point");
  }
  std::vector<QubitBasis> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    grid.push_back(QubitBasis{2.0 * std::numbers::pi * k / points, 0.0});
  }
  return grid;
}

ScenarioConfig parse_scenario_text(const std::string& text,
                                   std::optional<int> default_grid_points) {
  KeyValueDoc doc(text);
  ScenarioConfig config;

  const RawEntry* kind = doc.find("machine.kind");
  if (kind == nullptr) {
    throw ConfigError(0, "machine.kind", "required key is missing");
  }
  if (kind->value == "delete") {
    config.kind = ScenarioMachineKind::kDelete;
  } else if (kind->value == "erase") {
    config.kind = ScenarioMachineKind::kErase;
  } else if (kind->value == "clone") {
    config.kind = ScenarioMachineKind::kClone;
  } else if (kind->value == "custom") {
    config.kind = ScenarioMachineKind::kCustom;
  } else if (kind->value == "cptp") {
    config.kind = ScenarioMachineKind::kCptp;
  } else {
    throw ConfigError(kind->line, "machine.kind",
                      "unknown machine kind '" + kind->value +
                          "' (expected delete|erase|clone|custom|cptp)");
  }
  const bool is_cptp = config.kind == ScenarioMachineKind::kCptp;
  const bool is_erase = config.kind == ScenarioMachineKind::kErase;

  if (const RawEntry* e = doc.find("machine.sigma")) {
    if (is_cptp) {
      throw ConfigError(e->line, "machine.sigma",
                        "not valid for machine.kind = cptp");
    }
    config.sigma = parse_state(e->value, 2, e->line, "machine.sigma");
  }
  if (const RawEntry* e = doc.find("machine.ancilla")) {
    if (is_cptp || is_erase) {
      throw ConfigError(e->line, "machine.ancilla",
                        "not valid for machine.kind = " +
                            to_string(config.kind) +
                            (is_erase ? " (the ancilla is forced to the blank state)"
                                      : ""));
    }
    config.ancilla = parse_state(e->value, 2, e->line, "machine.ancilla");
  }

  if (const RawEntry* e = doc.find("machine.ancilla_rule")) {
    if (is_cptp || is_erase) {
      throw ConfigError(e->line, "machine.ancilla_rule",
                        "not valid for machine.kind = " + to_string(config.kind));
    }
    if (e->value == "copy") {
      config.ancilla_rule.kind = AncillaRule::Kind::kCopy;
    } else if (e->value == "fixed") {
      config.ancilla_rule.kind = AncillaRule::Kind::kFixed;
    } else {
      throw ConfigError(e->line, "machine.ancilla_rule",
                        "expected copy|fixed, got '" + e->value + "'");
    }
  }
  const bool fixed_ancilla =
      config.ancilla_rule.kind == AncillaRule::Kind::kFixed;
  if (const RawEntry* e = doc.find("machine.ancilla_psi")) {
    if (!fixed_ancilla) {
      throw ConfigError(e->line, "machine.ancilla_psi",
                        "only valid with machine.ancilla_rule = fixed");
    }
    config.ancilla_rule.fixed_psi =
        parse_state(e->value, 2, e->line, "machine.ancilla_psi");
  } else if (fixed_ancilla) {
    throw ConfigError(0, "machine.ancilla_psi",
                      "required with machine.ancilla_rule = fixed");
  }
  if (const RawEntry* e = doc.find("machine.ancilla_psibar")) {
    if (!fixed_ancilla) {
      throw ConfigError(e->line, "machine.ancilla_psibar",
                        "only valid with machine.ancilla_rule = fixed");
    }
    config.ancilla_rule.fixed_psi_bar =
        parse_state(e->value, 2, e->line, "machine.ancilla_psibar");
  } else if (fixed_ancilla) {
    throw ConfigError(0, "machine.ancilla_psibar",
                      "required with machine.ancilla_rule = fixed");
  }

  if (const RawEntry* e = doc.find("machine.offdiag_rule")) {
    if (is_cptp || is_erase) {
      throw ConfigError(e->line, "machine.offdiag_rule",
                        "not valid for machine.kind = " + to_string(config.kind));
    }
    if (e->value == "passthrough") {
      config.offdiag_rule.kind = OffdiagRule::Kind::kPassthrough;
    } else if (e->value == "entangling") {
      config.offdiag_rule.kind = OffdiagRule::Kind::kEntangling;
    } else if (e->value == "inline") {
      config.offdiag_rule.kind = OffdiagRule::Kind::kInline;
    } else {
      throw ConfigError(e->line, "machine.offdiag_rule",
                        "expected passthrough|entangling|inline, got '" +
                            e->value + "'");
    }
  }
  const bool inline_offdiag =
      config.offdiag_rule.kind == OffdiagRule::Kind::kInline;
  if (const RawEntry* e = doc.find("machine.phi_prime")) {
    if (!inline_offdiag) {
      throw ConfigError(e->line, "machine.phi_prime",
                        "only valid with machine.offdiag_rule = inline");
    }
    config.offdiag_rule.inline_phi_prime =
        parse_state(e->value, 8, e->line, "machine.phi_prime");
  } else if (inline_offdiag) {
    throw ConfigError(0, "machine.phi_prime",
                      "required with machine.offdiag_rule = inline");
  }
  if (const RawEntry* e = doc.find("machine.phi_double_prime")) {
    if (!inline_offdiag) {
      throw ConfigError(e->line, "machine.phi_double_prime",
                        "only valid with machine.offdiag_rule = inline");
    }
    config.offdiag_rule.inline_phi_double_prime =
        parse_state(e->value, 8, e->line, "machine.phi_double_prime");
  } else if (inline_offdiag) {
    throw ConfigError(0, "machine.phi_double_prime",
                      "required with machine.offdiag_rule = inline");
  }

  if (const RawEntry* e = doc.find("machine.num_kraus")) {
    if (!is_cptp) {
      throw ConfigError(e->line, "machine.num_kraus",
                        "only valid for machine.kind = cptp");
    }
    const double v = parse_plain_double(e->value, e->line, "machine.num_kraus");
    if (v < 1.0 || v != std::floor(v)) {
      throw ConfigError(e->line, "machine.num_kraus",
                        "must be a positive integer");
    }
    config.num_kraus = static_cast<int>(v);
  }

  const RawEntry* grid = doc.find("basis.grid");
  const RawEntry* grid_points = doc.find("basis.grid_points");
  if (grid != nullptr && grid_points != nullptr) {
    throw ConfigError(grid_points->line, "basis.grid_points",
                      "conflicts with basis.grid; give one or the other");
  }
  if (grid != nullptr) {
    for (const std::string& entry : split(grid->value, ',')) {
      const std::string trimmed = trim(entry);
      if (trimmed.empty()) {
        throw ConfigError(grid->line, "basis.grid", "empty grid entry");
      }
      config.bases.push_back(
          parse_basis_entry(trimmed, grid->line, "basis.grid"));
    }
  } else if (grid_points != nullptr) {
    const double v =
        parse_plain_double(grid_points->value, grid_points->line,
                           "basis.grid_points");
    if (v < 1.0 || v != std::floor(v)) {
      throw ConfigError(grid_points->line, "basis.grid_points",
                        "must be a positive integer");
    }
    config.bases = uniform_theta_grid(static_cast<int>(v));
  } else if (default_grid_points.has_value()) {
    config.bases = uniform_theta_grid(*default_grid_points);
  }
  if (config.bases.empty()) {
    throw ConfigError(0, "basis.grid",
                      "no bases configured; set basis.grid or basis.grid_points");
  }

  if (const RawEntry* e = doc.find("basis.reference")) {
    config.reference = parse_basis_entry(e->value, e->line, "basis.reference");
  }

  if (const RawEntry* e = doc.find("tolerance")) {
    config.tolerance = parse_plain_double(e->value, e->line, "tolerance");
    if (config.tolerance <= 0.0) {
      throw ConfigError(e->line, "tolerance", "must be positive");
    }
  }
  if (const RawEntry* e = doc.find("seed")) {
    const double v = parse_plain_double(e->value, e->line, "seed");
    if (v < 0.0 || v != std::floor(v)) {
      throw ConfigError(e->line, "seed", "must be a non-negative integer");
    }
    config.seed = static_cast<std::uint64_t>(v);
  }
  if (const RawEntry* e = doc.find("output")) {
    if (e->value.empty()) {
      throw ConfigError(e->line, "output", "must not be empty");
    }
    config.output_path = e->value;
  }

  doc.reject_unconsumed();
  return config;
}

ScenarioConfig parse_scenario_file(const std::string& path,
                                   std::optional<int> default_grid_points) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(0, "", "cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str(), default_grid_points);
}

BranchMachine make_machine(const ScenarioConfig& config) {
  switch (config.kind) {
    case ScenarioMachineKind::kDelete:
      return deleting_machine(config.sigma, config.ancilla,
                              config.offdiag_rule, config.ancilla_rule);
    case ScenarioMachineKind::kErase:
      return erasure_machine(config.sigma);
    case ScenarioMachineKind::kClone:
      return cloning_machine(config.ancilla_rule, config.sigma,
                             config.ancilla);
    case ScenarioMachineKind::kCustom:
      return custom_machine(config.offdiag_rule, config.sigma, config.ancilla);
    case ScenarioMachineKind::kCptp:
      break;
  }
  throw std::invalid_argument("cptp scenarios configure a channel, not a machine");
}

LinearChannel make_channel(const ScenarioConfig& config) {
  if (config.kind != ScenarioMachineKind::kCptp) {
    throw std::invalid_argument("only cptp scenarios configure a channel");
  }
  return random_cptp_channel(config.num_kraus, config.seed);
}

}  // namespace qdelsim
