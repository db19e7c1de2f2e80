// Copyright 2026 The Twirl Authors
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

#include "twirl/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "twirl/cli/formats.hpp"
#include "twirl/stochastic.hpp"

namespace twirl::cli {
namespace {

using nlohmann::json;

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!keys.count(it.key())) throw ConfigError(join(path, it.key()), "unknown key");
  }
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

std::uint64_t get_unsigned(const json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && j.get<long long>() < 0 && !j.is_number_unsigned())) {
    throw ConfigError(path, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

double number_or(const json& j, const char* key, double fallback, const std::string& path) {
  return j.contains(key) ? get_number(j.at(key), join(path, key)) : fallback;
}

std::vector<Atom> parse_atoms(const json& j, const std::string& path, const char* weight_key) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of atoms");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    require_object(j[i], p);
    reject_unknown(j[i], p, {"s", weight_key});
    if (!j[i].contains("s") || !j[i].contains(weight_key))
      throw ConfigError(p, std::string("atom needs \"s\" and \"") + weight_key + "\"");
    atoms.push_back({get_number(j[i].at("s"), join(p, "s")), get_number(j[i].at(weight_key), join(p, weight_key))});
  }
  return atoms;
}

CompoundBase parse_base(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string type = j.contains("type") ? get_string(j.at("type"), join(path, "type")) : "";
  if (type == "dirac") {
    reject_unknown(j, path, {"type", "s0"});
    if (!j.contains("s0")) throw ConfigError(path, "dirac needs \"s0\"");
    return Dirac{get_number(j.at("s0"), join(path, "s0"))};
  }
  if (type == "mixture") {
    reject_unknown(j, path, {"type", "atoms"});
    if (!j.contains("atoms")) throw ConfigError(path, "mixture needs \"atoms\"");
    return FiniteMixture{parse_atoms(j.at("atoms"), join(path, "atoms"), "p")};
  }
  if (type == "gaussian") {
    reject_unknown(j, path, {"type", "variance"});
    return Gaussian{number_or(j, "variance", 1.0, path)};
  }
  throw ConfigError(join(path, "type"), "compound Poisson base must be one of dirac, mixture, gaussian");
}

DistributionChoice parse_distribution(const json& j, const std::string& path) {
  require_object(j, path);
  if (!j.contains("type")) throw ConfigError(path, "missing \"type\"");
  const std::string type = get_string(j.at("type"), join(path, "type"));
  DistributionChoice out;
  if (type == "gaussian") {
    reject_unknown(j, path, {"type", "variance_rate"});
    out.unit_law = Gaussian{number_or(j, "variance_rate", 1.0, path)};
  } else if (type == "truncated_gaussian") {
    reject_unknown(j, path, {"type", "cutoff"});
    out.unit_law = TruncatedGaussian{1.0, 1.0};
    if (j.contains("cutoff")) out.cutoff = get_number(j.at("cutoff"), join(path, "cutoff"));
  } else if (type == "dirac") {
    reject_unknown(j, path, {"type", "s0"});
    if (!j.contains("s0")) throw ConfigError(path, "dirac needs \"s0\"");
    out.unit_law = Dirac{get_number(j.at("s0"), join(path, "s0"))};
  } else if (type == "mixture") {
    reject_unknown(j, path, {"type", "atoms"});
    if (!j.contains("atoms")) throw ConfigError(path, "mixture needs \"atoms\"");
    out.unit_law = FiniteMixture{parse_atoms(j.at("atoms"), join(path, "atoms"), "p")};
  } else if (type == "compound_poisson") {
    reject_unknown(j, path, {"type", "rate", "base"});
    if (!j.contains("base")) throw ConfigError(path, "compound_poisson needs \"base\"");
    out.unit_law = CompoundPoisson{number_or(j, "rate", 1.0, path), parse_base(j.at("base"), join(path, "base"))};
  } else if (type == "levy") {
    reject_unknown(j, path, {"type", "sigma2", "gamma", "nu", "compensated"});
    LevyTriplet l;
    l.sigma2 = number_or(j, "sigma2", 0.0, path);
    l.gamma = number_or(j, "gamma", 0.0, path);
    if (j.contains("nu")) {
      for (const Atom& a : parse_atoms(j.at("nu"), join(path, "nu"), "w")) l.nu.push_back({a.s, a.probability});
    }
    if (j.contains("compensated")) {
      if (!j.at("compensated").is_boolean()) throw ConfigError(join(path, "compensated"), "expected a boolean");
      l.compensated = j.at("compensated").get<bool>();
    }
    out.unit_law = l;
  } else {
    throw ConfigError(join(path, "type"),
                      "unknown distribution '" + type +
                          "' (expected gaussian, truncated_gaussian, dirac, mixture, compound_poisson, levy)");
  }
  if (!std::holds_alternative<TruncatedGaussian>(out.unit_law)) {
    try {
      validate(out.unit_law);
    } catch (const SpecError& e) {
      throw ConfigError(path, e.what());
    }
  }
  return out;
}

void require_readable(const std::filesystem::path& p, const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(p, ec)) throw ConfigError(path, "file not found: " + p.string());
}

void require_writable_parent(const std::filesystem::path& p, const std::string& path) {
  const std::filesystem::path parent = p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
  std::error_code ec;
  if (!std::filesystem::is_directory(parent, ec)) {
    throw ConfigError(path, "output directory does not exist: " + parent.string());
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir,
                           const std::string& source) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ":byte " + std::to_string(e.byte), e.what());
  }
  require_object(root, "");
  reject_unknown(root, "", {"system", "hamiltonian", "initial_state", "evolution", "sampler", "outputs"});

  RunConfig cfg;
  cfg.base_dir = base_dir;

  if (!root.contains("system")) throw ConfigError("system", "missing section");
  {
    const json& s = root.at("system");
    require_object(s, "system");
    reject_unknown(s, "system", {"qubits", "dim"});
    if (s.contains("qubits") == s.contains("dim"))
      throw ConfigError("system", "exactly one of \"qubits\" or \"dim\" must be given");
    if (s.contains("qubits")) {
      const std::uint64_t q = get_unsigned(s.at("qubits"), "system.qubits");
      if (q < 1 || q > 14) throw ConfigError("system.qubits", "must lie in [1, 14]");
      cfg.system.qubits = static_cast<int>(q);
    } else {
      const std::uint64_t d = get_unsigned(s.at("dim"), "system.dim");
      if (d < 1 || d > 16384) throw ConfigError("system.dim", "must lie in [1, 16384]");
      cfg.system.dim = static_cast<Index>(d);
    }
  }

  if (root.contains("hamiltonian")) {
    const json& h = root.at("hamiltonian");
    require_object(h, "hamiltonian");
    reject_unknown(h, "hamiltonian", {"pauli", "pauli_file", "matrix_file"});
    if (h.size() != 1)
      throw ConfigError("hamiltonian", "exactly one of \"pauli\", \"pauli_file\", \"matrix_file\" must be given");
    HamiltonianSource src;
    if (h.contains("pauli")) {
      src.kind = HamiltonianSource::Kind::kInlinePauli;
      const json& p = h.at("pauli");
      if (p.is_string()) {
        src.pauli_text = p.get<std::string>();
      } else if (p.is_array()) {
        for (std::size_t i = 0; i < p.size(); ++i)
          src.pauli_text += get_string(p[i], "hamiltonian.pauli[" + std::to_string(i) + "]") + "\n";
      } else {
        throw ConfigError("hamiltonian.pauli", "expected a string or an array of strings");
      }
    } else if (h.contains("pauli_file")) {
      src.kind = HamiltonianSource::Kind::kPauliFile;
      src.path = resolve(base_dir, get_string(h.at("pauli_file"), "hamiltonian.pauli_file"));
    } else {
      src.kind = HamiltonianSource::Kind::kMatrixFile;
      src.path = resolve(base_dir, get_string(h.at("matrix_file"), "hamiltonian.matrix_file"));
    }
    cfg.hamiltonian = src;
  }

  if (root.contains("initial_state")) {
    const json& s = root.at("initial_state");
    StateSource src;
    auto preset = [&](const std::string& name, const std::string& path) {
      if (name == "plus_all") {
        src.kind = StateSource::Kind::kPlusAll;
      } else if (name == "maximally_mixed") {
        src.kind = StateSource::Kind::kMaximallyMixed;
      } else {
        throw ConfigError(path, "unknown preset '" + name + "' (expected plus_all or maximally_mixed)");
      }
    };
    if (s.is_string()) {
      preset(s.get<std::string>(), "initial_state");
    } else {
      require_object(s, "initial_state");
      reject_unknown(s, "initial_state", {"preset", "basis_index", "file"});
      if (s.size() != 1)
        throw ConfigError("initial_state", "exactly one of \"preset\", \"basis_index\", \"file\" must be given");
      if (s.contains("preset")) {
        preset(get_string(s.at("preset"), "initial_state.preset"), "initial_state.preset");
      } else if (s.contains("basis_index")) {
        src.kind = StateSource::Kind::kBasisIndex;
        src.basis_index = static_cast<Index>(get_unsigned(s.at("basis_index"), "initial_state.basis_index"));
      } else {
        src.kind = StateSource::Kind::kFile;
        src.path = resolve(base_dir, get_string(s.at("file"), "initial_state.file"));
      }
    }
    cfg.initial_state = src;
  }

  if (root.contains("evolution")) {
    const json& e = root.at("evolution");
    require_object(e, "evolution");
    reject_unknown(e, "evolution", {"t", "epsilon", "distribution"});
    EvolutionSpec ev;
    if (!e.contains("t")) throw ConfigError("evolution", "missing \"t\"");
    ev.t = get_number(e.at("t"), "evolution.t");
    if (e.contains("epsilon")) ev.epsilon = get_number(e.at("epsilon"), "evolution.epsilon");
    if (e.contains("distribution")) ev.distribution = parse_distribution(e.at("distribution"), "evolution.distribution");
    cfg.evolution = ev;
  }

  if (root.contains("sampler")) {
    const json& s = root.at("sampler");
    require_object(s, "sampler");
    reject_unknown(s, "sampler", {"shots", "seed"});
    SamplerSpec sp;
    if (!s.contains("shots")) throw ConfigError("sampler", "missing \"shots\"");
    sp.shots = get_unsigned(s.at("shots"), "sampler.shots");
    sp.seed = s.contains("seed") ? get_unsigned(s.at("seed"), "sampler.seed") : 0;
    cfg.sampler = sp;
  }

  if (root.contains("outputs")) {
    const json& o = root.at("outputs");
    require_object(o, "outputs");
    reject_unknown(o, "outputs", {"state", "metrics", "wall_clock"});
    OutputSpec out;
    if (o.contains("state")) out.state = resolve(base_dir, get_string(o.at("state"), "outputs.state"));
    if (o.contains("metrics")) out.metrics = resolve(base_dir, get_string(o.at("metrics"), "outputs.metrics"));
    if (o.contains("wall_clock")) {
      if (!o.at("wall_clock").is_boolean()) throw ConfigError("outputs.wall_clock", "expected a boolean");
      out.wall_clock = o.at("wall_clock").get<bool>();
    }
    cfg.outputs = out;
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::filesystem::path base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return parse_run_config(buf.str(), base, path.string());
}

void apply_overrides(RunConfig& config, const Overrides& o) {
  if (o.t || o.epsilon) {
    if (!config.evolution) config.evolution = EvolutionSpec{};
    if (o.t) config.evolution->t = *o.t;
    if (o.epsilon) config.evolution->epsilon = *o.epsilon;
  }
  if (o.exact) {
    config.sampler.reset();
  } else if (o.shots || o.seed) {
    if (!config.sampler) config.sampler = SamplerSpec{};
    if (o.shots) config.sampler->shots = *o.shots;
    if (o.seed) config.sampler->seed = *o.seed;
  }
  if (o.state_out || o.metrics_out || o.no_wall_clock) {
    if (!config.outputs) config.outputs = OutputSpec{};
    if (o.state_out) config.outputs->state = *o.state_out;
    if (o.metrics_out) config.outputs->metrics = *o.metrics_out;
    if (o.no_wall_clock) config.outputs->wall_clock = false;
  }
}

void validate_system(const RunConfig& config) {
  if (config.system.qubits.has_value() == config.system.dim.has_value())
    throw ConfigError("system", "exactly one of \"qubits\" or \"dim\" must be given");
  if (!config.hamiltonian) throw ConfigError("hamiltonian", "missing section");
  const HamiltonianSource& h = *config.hamiltonian;
  if (h.kind != HamiltonianSource::Kind::kMatrixFile && !config.system.qubits)
    throw ConfigError("hamiltonian", "a Pauli-sum Hamiltonian requires system.qubits");
  if (h.kind != HamiltonianSource::Kind::kInlinePauli) {
    require_readable(h.path, h.kind == HamiltonianSource::Kind::kPauliFile ? "hamiltonian.pauli_file"
                                                                           : "hamiltonian.matrix_file");
  }
  if (config.initial_state && config.initial_state->kind == StateSource::Kind::kFile)
    require_readable(config.initial_state->path, "initial_state.file");
}

void validate_for_simulate(const RunConfig& config) {
  validate_system(config);
  if (!config.initial_state) throw ConfigError("initial_state", "missing section");
  if (!config.evolution) throw ConfigError("evolution", "missing section");
  const EvolutionSpec& ev = *config.evolution;
  if (!(ev.t >= 0.0) || !std::isfinite(ev.t)) throw ConfigError("evolution.t", "must be finite and nonnegative");
  if (ev.epsilon && !(*ev.epsilon > 0.0 && *ev.epsilon < 1.0))
    throw ConfigError("evolution.epsilon", "must lie in (0, 1)");
  const bool gaussian = std::holds_alternative<Gaussian>(ev.distribution.unit_law);
  const bool truncated = std::holds_alternative<TruncatedGaussian>(ev.distribution.unit_law);
  if (config.sampler && gaussian && ev.t > 0.0 && !ev.epsilon)
    throw ConfigError("evolution.epsilon", "required for the sampled Gaussian twirl");
  if (truncated && ev.t > 0.0 && !ev.distribution.cutoff && !ev.epsilon)
    throw ConfigError("evolution.epsilon", "truncated_gaussian needs either \"cutoff\" or evolution.epsilon");
  if (truncated && ev.distribution.cutoff && !(*ev.distribution.cutoff > 0.0))
    throw ConfigError("evolution.distribution.cutoff", "must be positive");
  if (config.sampler && config.sampler->shots < 1) throw ConfigError("sampler.shots", "must be at least 1");
  if (!config.outputs) throw ConfigError("outputs", "missing section");
  if (config.outputs->state.empty()) throw ConfigError("outputs.state", "missing output path");
  if (config.outputs->metrics.empty()) throw ConfigError("outputs.metrics", "missing output path");
  require_writable_parent(config.outputs->state, "outputs.state");
  require_writable_parent(config.outputs->metrics, "outputs.metrics");
}

HermitianOperator load_hamiltonian(const RunConfig& config) {
  validate_system(config);
  const HamiltonianSource& h = *config.hamiltonian;
  ComplexMatrix m;
  switch (h.kind) {
    case HamiltonianSource::Kind::kInlinePauli:
      m = pauli_sum_matrix(h.pauli_text, config.system.qubits, "hamiltonian.pauli");
      break;
    case HamiltonianSource::Kind::kPauliFile: {
      std::ifstream in(h.path, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      m = pauli_sum_matrix(buf.str(), config.system.qubits, h.path.string());
      break;
    }
    case HamiltonianSource::Kind::kMatrixFile:
      m = read_matrix_file(h.path);
      break;
  }
  const Index d = config.system.dimension();
  if (m.rows() != d || m.cols() != d) {
    std::ostringstream os;
    os << "Hamiltonian is " << m.rows() << "x" << m.cols() << " but the system dimension is " << d;
    throw ConfigError("hamiltonian", os.str());
  }
  try {
    return HermitianOperator(std::move(m));
  } catch (const Error& e) {
    throw ConfigError("hamiltonian", e.what());
  }
}

DensityMatrix load_initial_state(const RunConfig& config, Index d) {
  if (!config.initial_state) throw ConfigError("initial_state", "missing section");
  const StateSource& s = *config.initial_state;
  switch (s.kind) {
    case StateSource::Kind::kPlusAll:
      return DensityMatrix::plus_all(d);
    case StateSource::Kind::kMaximallyMixed:
      return DensityMatrix::maximally_mixed(d);
    case StateSource::Kind::kBasisIndex:
      if (s.basis_index >= d) throw ConfigError("initial_state.basis_index", "index out of range for the system");
      return DensityMatrix::basis(d, s.basis_index);
    case StateSource::Kind::kFile: {
      ComplexMatrix m = read_matrix_file(s.path);
      if (m.rows() != d || m.cols() != d) {
        std::ostringstream os;
        os << "state is " << m.rows() << "x" << m.cols() << " but the system dimension is " << d;
        throw ConfigError("initial_state.file", os.str());
      }
      try {
        return DensityMatrix(std::move(m));
      } catch (const Error& e) {
        throw ConfigError("initial_state.file", e.what());
      }
    }
  }
  throw ConfigError("initial_state", "unsupported source");
}

DistributionSpec law_at_time(const EvolutionSpec& evolution) {
  const DistributionChoice& c = evolution.distribution;
  const double t = evolution.t;
  if (std::holds_alternative<TruncatedGaussian>(c.unit_law)) {
    const double s = c.cutoff ? *c.cutoff : cutoff(t, evolution.epsilon.value_or(0.0));
    return TruncatedGaussian{t, s};
  }
  if (std::holds_alternative<FiniteMixture>(c.unit_law)) return c.unit_law;
  return at_time(c.unit_law, t);
}

}  // namespace twirl::cli
