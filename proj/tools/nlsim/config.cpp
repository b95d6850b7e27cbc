#include "config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace nlsim::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void CheckKeys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void Read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + where);
  }
}

std::string ResolveExisting(const std::string& path, const fs::path& base, const char* what) {
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_relative()) p = base / p;
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) {
    throw ConfigError(std::string(what) + " not found: " + p.string());
  }
  return fs::absolute(p).lexically_normal().string();
}

bool Finite(double v) { return std::isfinite(v); }

}  // namespace

std::size_t ExperimentConfig::grid_size() const {
  std::size_t s = 1;
  for (int m : grid.points) s *= static_cast<std::size_t>(m);
  return s;
}

void ValidateConfig(const ExperimentConfig& c) {
  static const std::set<std::string> problems{"hartree", "gross-pitaevskii", "navier-stokes", "custom-f"};
  if (!problems.count(c.problem)) throw ConfigError("unknown problem '" + c.problem + "'");
  const auto dims = c.grid.points.size();
  if (dims < 1 || dims > 2) throw ConfigError("grid.points must list 1 or 2 axes");
  if (c.grid.x0.size() != dims) throw ConfigError("grid.x0 must have one entry per axis");
  for (int m : c.grid.points) {
    if (m < 2 || (m & (m - 1)) != 0) throw ConfigError("grid points per axis must be a power of two >= 2");
  }
  if (c.grid_size() > (std::size_t{1} << 16)) throw ConfigError("grid larger than 2^16 sites");
  if (!(c.grid.dx > 0.0) || !Finite(c.grid.dx)) throw ConfigError("grid.dx must be > 0");
  if (!Finite(c.kinetic_prefactor)) throw ConfigError("kinetic_prefactor must be finite");
  if (c.problem == "hartree" && c.kernel.empty() && c.kernel_file.empty()) {
    throw ConfigError("hartree problem needs 'kernel' or 'kernel_file'");
  }
  if (!c.kernel.empty() && !c.kernel_file.empty()) {
    throw ConfigError("give either 'kernel' or 'kernel_file', not both");
  }
  if (c.problem == "custom-f" && c.coupling_file.empty()) {
    throw ConfigError("custom-f problem needs 'coupling_file'");
  }
  if (c.problem == "navier-stokes" && !(c.rho0 > 0.0)) throw ConfigError("rho0 must be > 0");
  if (!Finite(c.g)) throw ConfigError("g must be finite");

  static const std::set<std::string> states{"gaussian", "uniform", "basis", "file", "random"};
  const auto& s = c.initial_state;
  if (!states.count(s.type)) throw ConfigError("unknown initial_state type '" + s.type + "'");
  if (s.type == "gaussian") {
    if (s.center.size() != dims || s.momentum.size() != dims) {
      throw ConfigError("gaussian center and momentum need one entry per axis");
    }
    if (!(s.width > 0.0)) throw ConfigError("gaussian width must be > 0");
  }
  if (s.type == "basis" && s.index >= c.grid_size()) throw ConfigError("basis index outside grid");
  if (s.type == "file" && s.path.empty()) throw ConfigError("file initial state needs 'path'");

  if (!(c.t >= 0.0) || !Finite(c.t)) throw ConfigError("t must be >= 0");
  if (!(c.eps > 0.0) || !Finite(c.eps)) throw ConfigError("eps must be > 0");
  if (c.mode != "compiled" && c.mode != "direct") throw ConfigError("mode must be compiled or direct");
  if (!(c.oracle_dt >= 0.0) || !Finite(c.oracle_dt)) throw ConfigError("oracle_dt must be >= 0");
  if (c.convergence_halvings < 0 || c.convergence_halvings > 8) {
    throw ConfigError("convergence_halvings must lie in [0, 8]");
  }
  if (c.basic_constant < 1) throw ConfigError("basic_constant must be >= 1");
  if (c.output_dir.empty()) throw ConfigError("output_dir must not be empty");

  const auto& b = c.bec;
  if (b.points < 2 || (b.points & (b.points - 1)) != 0) throw ConfigError("bec.points must be a power of two");
  if (!(b.length > 0.0) || !(b.omega > 0.0)) throw ConfigError("bec.length and bec.omega must be > 0");
  if (!(b.alpha_weight >= 0.0 && b.alpha_weight <= 1.0)) throw ConfigError("bec.alpha_weight must lie in [0, 1]");
  if (!(b.t >= 0.0) || !(b.dt > 0.0)) throw ConfigError("bec.t must be >= 0 and bec.dt > 0");
  for (const auto& g : b.sweep) {
    if (!Finite(g.g11) || !Finite(g.g22) || !Finite(g.g12)) throw ConfigError("bec couplings must be finite");
  }
}

ExperimentConfig ParseConfig(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  CheckKeys(j,
            {"problem", "grid", "kinetic_prefactor", "kernel", "kernel_file", "g", "rho0", "coupling_file",
             "initial_state", "t", "eps", "mode", "oracle_dt", "record_stride", "output_dir", "seed",
             "convergence_halvings", "basic_constant", "bec"},
            "config");
  ExperimentConfig c;
  Read(j, "problem", c.problem, "config");
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    CheckKeys(g, {"points", "dx", "x0"}, "grid");
    Read(g, "points", c.grid.points, "grid");
    Read(g, "dx", c.grid.dx, "grid");
    c.grid.x0.assign(c.grid.points.size(), 0.0);
    Read(g, "x0", c.grid.x0, "grid");
  }
  Read(j, "kinetic_prefactor", c.kinetic_prefactor, "config");
  if (j.contains("kernel")) {
    if (!j["kernel"].is_object()) throw ConfigError("'kernel' must be a JSON object");
    c.kernel = j["kernel"].dump();
  }
  Read(j, "kernel_file", c.kernel_file, "config");
  Read(j, "g", c.g, "config");
  Read(j, "rho0", c.rho0, "config");
  Read(j, "coupling_file", c.coupling_file, "config");
  if (j.contains("initial_state")) {
    const auto& s = j["initial_state"];
    CheckKeys(s, {"type", "center", "width", "momentum", "index", "path"}, "initial_state");
    auto& st = c.initial_state;
    Read(s, "type", st.type, "initial_state");
    st.center.assign(c.grid.points.size(), 0.0);
    st.momentum.assign(c.grid.points.size(), 0.0);
    Read(s, "center", st.center, "initial_state");
    Read(s, "width", st.width, "initial_state");
    Read(s, "momentum", st.momentum, "initial_state");
    Read(s, "index", st.index, "initial_state");
    Read(s, "path", st.path, "initial_state");
  } else {
    c.initial_state.center.assign(c.grid.points.size(), 0.0);
    c.initial_state.momentum.assign(c.grid.points.size(), 0.0);
  }
  Read(j, "t", c.t, "config");
  Read(j, "eps", c.eps, "config");
  Read(j, "mode", c.mode, "config");
  Read(j, "oracle_dt", c.oracle_dt, "config");
  Read(j, "record_stride", c.record_stride, "config");
  Read(j, "output_dir", c.output_dir, "config");
  Read(j, "seed", c.seed, "config");
  Read(j, "convergence_halvings", c.convergence_halvings, "config");
  Read(j, "basic_constant", c.basic_constant, "config");
  if (j.contains("bec")) {
    const auto& b = j["bec"];
    CheckKeys(b, {"points", "length", "omega", "alpha_weight", "t", "dt", "sweep"}, "bec");
    Read(b, "points", c.bec.points, "bec");
    Read(b, "length", c.bec.length, "bec");
    Read(b, "omega", c.bec.omega, "bec");
    Read(b, "alpha_weight", c.bec.alpha_weight, "bec");
    Read(b, "t", c.bec.t, "bec");
    Read(b, "dt", c.bec.dt, "bec");
    if (b.contains("sweep")) {
      if (!b["sweep"].is_array()) throw ConfigError("bec.sweep must be an array");
      c.bec.sweep.clear();
      for (const auto& row : b["sweep"]) {
        CheckKeys(row, {"g11", "g22", "g12"}, "bec.sweep entry");
        BecCoupling g;
        Read(row, "g11", g.g11, "bec.sweep entry");
        Read(row, "g22", g.g22, "bec.sweep entry");
        Read(row, "g12", g.g12, "bec.sweep entry");
        c.bec.sweep.push_back(g);
      }
    }
  }

  ValidateConfig(c);
  const fs::path base(base_dir);
  c.kernel_file = ResolveExisting(c.kernel_file, base, "kernel file");
  c.coupling_file = ResolveExisting(c.coupling_file, base, "coupling file");
  if (c.initial_state.type == "file") {
    c.initial_state.path = ResolveExisting(c.initial_state.path, base, "initial state file");
  }
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const fs::path parent = fs::path(path).parent_path();
  return ParseConfig(buf.str(), parent.empty() ? "." : parent.string());
}

std::string SerializeConfig(const ExperimentConfig& c) {
  json j;
  j["problem"] = c.problem;
  j["grid"] = {{"points", c.grid.points}, {"dx", c.grid.dx}, {"x0", c.grid.x0}};
  j["kinetic_prefactor"] = c.kinetic_prefactor;
  if (!c.kernel.empty()) j["kernel"] = json::parse(c.kernel);
  if (!c.kernel_file.empty()) j["kernel_file"] = c.kernel_file;
  j["g"] = c.g;
  j["rho0"] = c.rho0;
  if (!c.coupling_file.empty()) j["coupling_file"] = c.coupling_file;
  const auto& s = c.initial_state;
  j["initial_state"] = {{"type", s.type},         {"center", s.center}, {"width", s.width},
                        {"momentum", s.momentum}, {"index", s.index}};
  if (!s.path.empty()) j["initial_state"]["path"] = s.path;
  j["t"] = c.t;
  j["eps"] = c.eps;
  j["mode"] = c.mode;
  j["oracle_dt"] = c.oracle_dt;
  j["record_stride"] = c.record_stride;
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  j["convergence_halvings"] = c.convergence_halvings;
  j["basic_constant"] = c.basic_constant;
  json sweep = json::array();
  for (const auto& g : c.bec.sweep) sweep.push_back({{"g11", g.g11}, {"g22", g.g22}, {"g12", g.g12}});
  j["bec"] = {{"points", c.bec.points}, {"length", c.bec.length}, {"omega", c.bec.omega},
              {"alpha_weight", c.bec.alpha_weight}, {"t", c.bec.t}, {"dt", c.bec.dt},
              {"sweep", sweep}};
  return j.dump(2) + "\n";
}

}  // namespace nlsim::cli
