#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "json.hpp"
#include "nlsim/nlsim.h"

namespace fs = std::filesystem;
using nlohmann::json;
using nlsim::cli::ConfigError;
using nlsim::cli::ExperimentConfig;

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct CliFailure {
  int code;
  std::string message;
};

int ExitCodeFor(nlsim_status status) {
  switch (status) {
    case NLSIM_ERR_INVALID_ARGUMENT:
    case NLSIM_ERR_OUT_OF_RANGE:
    case NLSIM_ERR_IO:
      return kExitUsage;
    default:
      return kExitNumerical;
  }
}

void Check(nlsim_status status, const char* what) {
  if (status != NLSIM_OK) {
    throw CliFailure{ExitCodeFor(status), std::string(what) + ": " + nlsim_last_error()};
  }
}

struct Deleter {
  void operator()(nlsim_register* p) const { nlsim_register_destroy(p); }
  void operator()(nlsim_coupling* p) const { nlsim_coupling_destroy(p); }
  void operator()(nlsim_kernel* p) const { nlsim_kernel_destroy(p); }
  void operator()(nlsim_sequence* p) const { nlsim_sequence_destroy(p); }
  void operator()(nlsim_trajectory* p) const { nlsim_trajectory_destroy(p); }
};
template <class T>
using Handle = std::unique_ptr<T, Deleter>;

template <class T, class F>
Handle<T> Make(F&& create, const char* what) {
  T* raw = nullptr;
  Check(create(&raw), what);
  return Handle<T>(raw);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliFailure{kExitUsage, "cannot read " + path};
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw CliFailure{kExitUsage, "cannot write " + path.string()};
}

fs::path PrepareOutput(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CliFailure{kExitUsage, "cannot create output directory " + dir + ": " + ec.message()};
  return fs::path(dir);
}

nlsim_grid MakeGrid(const ExperimentConfig& c) {
  nlsim_grid g{};
  g.dims = static_cast<int>(c.grid.points.size());
  g.dx = c.grid.dx;
  for (int i = 0; i < g.dims; ++i) {
    g.points[i] = c.grid.points[i];
    g.x0[i] = c.grid.x0[i];
  }
  return g;
}

std::string KernelText(const ExperimentConfig& c) {
  return c.kernel_file.empty() ? c.kernel : ReadFile(c.kernel_file);
}

Handle<nlsim_coupling> MakeCoupling(const ExperimentConfig& c) {
  const nlsim_grid grid = MakeGrid(c);
  if (c.problem == "hartree") {
    const auto kernel = Make<nlsim_kernel>(
        [&](nlsim_kernel** out) { return nlsim_kernel_from_json(KernelText(c).c_str(), out); }, "kernel");
    return Make<nlsim_coupling>(
        [&](nlsim_coupling** out) {
          return nlsim_coupling_hartree(kernel.get(), &grid, NLSIM_CONVENTION_UNIT_NORM, out);
        },
        "hartree coupling");
  }
  if (c.problem == "gross-pitaevskii") {
    return Make<nlsim_coupling>(
        [&](nlsim_coupling** out) { return nlsim_coupling_gross_pitaevskii(c.g, &grid, out); }, "coupling");
  }
  if (c.problem == "navier-stokes") {
    return Make<nlsim_coupling>(
        [&](nlsim_coupling** out) { return nlsim_coupling_navier_stokes(c.rho0, &grid, out); }, "coupling");
  }
  return Make<nlsim_coupling>(
      [&](nlsim_coupling** out) {
        return nlsim_coupling_read_triplets(c.coupling_file.c_str(), c.grid_size(), out);
      },
      "coupling file");
}

std::vector<nlsim_complex> InitialAmplitudes(const ExperimentConfig& c) {
  const std::size_t m = c.grid_size();
  const nlsim_grid grid = MakeGrid(c);
  const auto& s = c.initial_state;
  std::vector<nlsim_complex> a(m, nlsim_complex{0.0, 0.0});
  if (s.type == "uniform") {
    for (auto& z : a) z = {1.0, 0.0};
  } else if (s.type == "basis") {
    a[s.index] = {1.0, 0.0};
  } else if (s.type == "file") {
    Check(nlsim_field_read_csv(s.path.c_str(), &grid, a.data(), a.size()), "initial state file");
  } else if (s.type == "random") {
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> normal;
    for (auto& z : a) {
      z.re = normal(rng);
      z.im = normal(rng);
    }
  } else {
    const int dims = grid.dims;
    for (std::size_t k = 0; k < m; ++k) {
      double r2 = 0.0, phase = 0.0;
      std::size_t rest = k;
      for (int axis = dims - 1; axis >= 0; --axis) {
        const std::size_t idx = rest % static_cast<std::size_t>(grid.points[axis]);
        rest /= static_cast<std::size_t>(grid.points[axis]);
        const double x = grid.x0[axis] + static_cast<double>(idx) * grid.dx - s.center[axis];
        r2 += x * x;
        phase += s.momentum[axis] * x;
      }
      const double amp = std::exp(-r2 / (2.0 * s.width * s.width));
      a[k] = {amp * std::cos(phase), amp * std::sin(phase)};
    }
  }
  return a;
}

Handle<nlsim_register> InitialRegister(const ExperimentConfig& c) {
  const auto a = InitialAmplitudes(c);
  return Make<nlsim_register>(
      [&](nlsim_register** out) { return nlsim_register_create(a.data(), a.size(), out); }, "initial state");
}

nlsim_mode ModeOf(const std::string& mode) {
  return mode == "direct" ? NLSIM_MODE_DIRECT : NLSIM_MODE_COMPILED;
}

json CountsJson(const nlsim_gate_counts& c) {
  return {{"mcx", c.mcx}, {"nonlinear", c.nonlinear}, {"ancilla_phase", c.ancilla_phase}, {"basic", c.basic}};
}

json TallyJson(const nlsim_resource_tally& t) {
  return {{"num_qubits", t.num_qubits}, {"basic_constant", t.basic_constant},
          {"steps", t.steps},           {"singles", t.singles},
          {"pairs", t.pairs},           {"per_step", CountsJson(t.per_step)},
          {"total", CountsJson(t.total)}};
}

json EnergyJson(const nlsim_energy& e) {
  return {{"kinetic", e.kinetic}, {"interaction", e.interaction}, {"total", e.total}};
}

nlsim_energy Energy(const nlsim_register* r, const nlsim_kinetic& spec, const nlsim_coupling* f) {
  nlsim_energy e{};
  Check(nlsim_observables(r, &spec, f, nullptr, nullptr, 0, &e), "observables");
  return e;
}

std::vector<nlsim_complex> Amplitudes(const nlsim_register* r) {
  std::vector<nlsim_complex> a(nlsim_register_principal_dim(r));
  Check(nlsim_register_principal_amplitudes(r, a.data(), a.size()), "amplitudes");
  return a;
}

double Fidelity(const nlsim_register* a, const nlsim_register* b) {
  double f = 0.0;
  Check(nlsim_register_fidelity(a, b, &f), "fidelity");
  return f;
}

std::string SequenceText(const nlsim_coupling* f, double eps) {
  const auto seq = Make<nlsim_sequence>(
      [&](nlsim_sequence** out) { return nlsim_compile_w(f, eps, 1, out); }, "compile");
  std::size_t needed = 0;
  Check(nlsim_sequence_to_text(seq.get(), nullptr, 0, &needed), "sequence text");
  std::string text(needed, '\0');
  Check(nlsim_sequence_to_text(seq.get(), text.data(), text.size(), &needed), "sequence text");
  text.resize(needed - 1);
  return text;
}

std::string Num(double v) {
  // Shortest round-trip representation, locale independent.
  return json(v).dump();
}

struct Overrides {
  std::string config;
  std::string out;
  std::optional<double> eps;
  std::optional<std::uint64_t> steps;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
};

ExperimentConfig Resolve(const Overrides& o) {
  ExperimentConfig c = o.config.empty() ? ExperimentConfig{} : nlsim::cli::LoadConfig(o.config);
  if (o.config.empty()) c.kernel = R"({"amplitude":1.0,"form":"gaussian","sigma":1.0})";
  if (o.eps) c.eps = *o.eps;
  if (o.mode) c.mode = *o.mode;
  if (o.seed) c.seed = *o.seed;
  if (o.steps) c.t = static_cast<double>(*o.steps) * c.eps;
  if (!o.out.empty()) c.output_dir = o.out;
  nlsim::cli::ValidateConfig(c);
  return c;
}

int Simulate(const ExperimentConfig& c) {
  const fs::path out = PrepareOutput(c.output_dir);
  const nlsim_grid grid = MakeGrid(c);
  const nlsim_kinetic spec{c.kinetic_prefactor, grid};
  const auto f = MakeCoupling(c);
  const auto r0 = InitialRegister(c);
  const auto traj = Make<nlsim_trajectory>(
      [&](nlsim_trajectory** t) {
        return nlsim_evolve(r0.get(), f.get(), &spec, c.t, c.eps, ModeOf(c.mode), c.record_stride, t);
      },
      "evolve");
  const auto final_state =
      Make<nlsim_register>([&](nlsim_register** r) { return nlsim_trajectory_final_state(traj.get(), r); }, "final");

  nlsim_resource_tally tally{};
  nlsim_gate_counts measured{};
  double drift = 0.0;
  Check(nlsim_trajectory_tally(traj.get(), &tally), "tally");
  Check(nlsim_trajectory_measured(traj.get(), &measured), "measured");
  Check(nlsim_trajectory_norm_drift(traj.get(), &drift), "norm drift");
  if (c.basic_constant != 1) {
    Check(nlsim_estimate_resources(tally.num_qubits, tally.singles, tally.pairs, tally.steps, c.basic_constant,
                                   &tally),
          "tally");
    const std::uint64_t n = static_cast<std::uint64_t>(tally.num_qubits);
    measured.basic = measured.mcx * c.basic_constant * n * n + measured.nonlinear + measured.ancilla_phase;
  }
  Check(nlsim_trajectory_write_csv(traj.get(), (out / "trajectory.csv").string().c_str(), 0), "trajectory");
  WriteFile(out / "w_sequence.txt", SequenceText(f.get(), c.eps));

  json summary;
  summary["command"] = "simulate";
  summary["problem"] = c.problem;
  summary["amplitude_convention"] = "sum |a_k|^2 = 1, rho_k = |a_k|^2 / dx^dims";
  summary["num_qubits"] = nlsim_register_num_qubits(r0.get());
  summary["t"] = c.t;
  summary["eps"] = c.eps;
  summary["steps"] = tally.steps;
  summary["mode"] = c.mode;
  summary["tally"] = TallyJson(tally);
  if (c.mode == "compiled") summary["measured"] = CountsJson(measured);
  summary["initial_energy"] = EnergyJson(Energy(r0.get(), spec, f.get()));
  summary["final_energy"] = EnergyJson(Energy(final_state.get(), spec, f.get()));
  summary["max_norm_drift"] = drift;
  summary["fidelity_with_initial"] = Fidelity(r0.get(), final_state.get());

  if (c.problem == "navier-stokes") {
    const std::size_t m = c.grid_size();
    std::vector<double> rho(m), u(m * grid.dims);
    Check(nlsim_madelung(final_state.get(), &grid, rho.data(), u.data(), m), "madelung");
    std::ostringstream csv;
    csv << "k,rho" << (grid.dims == 2 ? ",u_x,u_y\n" : ",u\n");
    for (std::size_t k = 0; k < m; ++k) {
      csv << k << ',' << Num(rho[k]);
      for (int axis = 0; axis < grid.dims; ++axis) {
        const double v = u[axis * m + k];
        csv << ',' << (std::isnan(v) ? std::string("nan") : Num(v));
      }
      csv << '\n';
    }
    WriteFile(out / "madelung.csv", csv.str());
  }
  WriteFile(out / "summary.json", summary.dump(2) + "\n");
  std::cout << "steps " << tally.steps << ", final energy " << Num(summary["final_energy"]["total"])
            << ", max norm drift " << Num(drift) << "\n"
            << "wrote " << (out / "summary.json").string() << "\n";
  return 0;
}

Handle<nlsim_register> OracleFinal(const ExperimentConfig& c, const nlsim_coupling* f,
                                   const std::vector<nlsim_complex>& phi0, double dt) {
  const nlsim_grid grid = MakeGrid(c);
  std::vector<nlsim_complex> out(phi0.size());
  if (c.problem == "hartree") {
    // Convolution route, independent of the coupling matrix.
    const auto kernel = Make<nlsim_kernel>(
        [&](nlsim_kernel** k) { return nlsim_kernel_from_json(KernelText(c).c_str(), k); }, "kernel");
    Check(nlsim_split_step_kernel(phi0.data(), &grid, kernel.get(), c.kinetic_prefactor, c.t, dt, out.data()),
          "split-step oracle");
  } else {
    Check(nlsim_split_step_coupling(phi0.data(), &grid, f, c.kinetic_prefactor, c.t, dt, out.data()),
          "split-step oracle");
  }
  return Make<nlsim_register>(
      [&](nlsim_register** r) { return nlsim_register_create(out.data(), out.size(), r); }, "oracle state");
}

Handle<nlsim_register> QuantumFinal(const ExperimentConfig& c, const nlsim_register* r0,
                                    const nlsim_coupling* f, double eps, nlsim_mode mode) {
  const nlsim_kinetic spec{c.kinetic_prefactor, MakeGrid(c)};
  const auto traj = Make<nlsim_trajectory>(
      [&](nlsim_trajectory** t) { return nlsim_evolve(r0, f, &spec, c.t, eps, mode, 0, t); }, "evolve");
  return Make<nlsim_register>([&](nlsim_register** r) { return nlsim_trajectory_final_state(traj.get(), r); },
                              "final");
}

int Compare(const ExperimentConfig& c) {
  const fs::path out = PrepareOutput(c.output_dir);
  const nlsim_grid grid = MakeGrid(c);
  const auto f = MakeCoupling(c);
  const auto r0 = InitialRegister(c);
  std::vector<nlsim_complex> phi0(c.grid_size());
  Check(nlsim_field_from_register(r0.get(), &grid, phi0.data(), phi0.size()), "field");

  const auto quantum = QuantumFinal(c, r0.get(), f.get(), c.eps, ModeOf(c.mode));
  const auto other = QuantumFinal(c, r0.get(), f.get(), c.eps,
                                  c.mode == "direct" ? NLSIM_MODE_COMPILED : NLSIM_MODE_DIRECT);
  const auto oracle = OracleFinal(c, f.get(), phi0, c.effective_oracle_dt());

  const auto qa = Amplitudes(quantum.get());
  const auto oa = Amplitudes(oracle.get());
  double max_density_error = 0.0;
  for (std::size_t k = 0; k < qa.size(); ++k) {
    const double dq = qa[k].re * qa[k].re + qa[k].im * qa[k].im;
    const double dor = oa[k].re * oa[k].re + oa[k].im * oa[k].im;
    max_density_error = std::max(max_density_error, std::abs(dq - dor) / (grid.dims == 2 ? grid.dx * grid.dx : grid.dx));
  }

  json report;
  report["command"] = "compare";
  report["problem"] = c.problem;
  report["t"] = c.t;
  report["eps"] = c.eps;
  report["oracle_dt"] = c.effective_oracle_dt();
  report["mode"] = c.mode;
  report["fidelity"] = Fidelity(quantum.get(), oracle.get());
  report["infidelity"] = 1.0 - report["fidelity"].get<double>();
  report["max_density_error"] = max_density_error;
  report["mode_agreement_fidelity"] = Fidelity(quantum.get(), other.get());

  if (c.convergence_halvings > 0) {
    std::ostringstream csv;
    csv << "eps,oracle_dt,infidelity,ratio\n";
    json table = json::array();
    double previous = 0.0;
    for (int h = 0; h <= c.convergence_halvings; ++h) {
      const double eps = c.eps / std::pow(2.0, h);
      const double dt = c.oracle_dt > 0.0 ? c.oracle_dt : eps / 20.0;
      const auto q = QuantumFinal(c, r0.get(), f.get(), eps, ModeOf(c.mode));
      const auto o = OracleFinal(c, f.get(), phi0, dt);
      const double inf = 1.0 - Fidelity(q.get(), o.get());
      json row = {{"eps", eps}, {"oracle_dt", dt}, {"infidelity", inf}};
      csv << Num(eps) << ',' << Num(dt) << ',' << Num(inf) << ',';
      if (h > 0) {
        row["ratio"] = previous / inf;
        csv << Num(previous / inf);
      }
      csv << '\n';
      table.push_back(row);
      previous = inf;
    }
    report["convergence"] = table;
    WriteFile(out / "convergence.csv", csv.str());
  }
  WriteFile(out / "compare.json", report.dump(2) + "\n");
  std::cout << "fidelity " << Num(report["fidelity"]) << ", max density error " << Num(max_density_error)
            << ", compiled/direct fidelity " << Num(report["mode_agreement_fidelity"]) << "\n";
  return 0;
}

struct ResourceOptions {
  int n = 0;
  int n_min = 1;
  int n_max = 6;
  std::uint64_t steps = 1;
  std::string sparsity = "dense";
  bool instrumented = false;
  std::uint64_t basic_constant = 1;
  std::string out;
  std::string config;
};

void SparsityFor(const ResourceOptions& o, int n, const nlsim_coupling* f, double eps, std::uint64_t& singles,
                 std::uint64_t& pairs) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (o.sparsity == "dense") {
    singles = dim;
    pairs = dim * (dim - 1) / 2;
  } else if (o.sparsity == "config") {
    Check(nlsim_coupling_sparsity(f, eps, &singles, &pairs), "sparsity");
  } else if (o.sparsity == "stencil") {
    // Periodic nearest-neighbour ring (1D Navier-Stokes pattern).
    singles = dim;
    pairs = dim == 2 ? 1 : dim;
  } else {
    const auto colon = o.sparsity.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
      singles = std::stoull(o.sparsity.substr(0, colon));
      pairs = std::stoull(o.sparsity.substr(colon + 1));
    } catch (const std::exception&) {
      throw CliFailure{kExitUsage, "--sparsity must be dense, stencil, config or S:P"};
    }
  }
}

int Resources(const ResourceOptions& o) {
  int lo = o.n_min, hi = o.n_max;
  if (o.n > 0) lo = hi = o.n;
  Handle<nlsim_coupling> f;
  double eps = 0.0;
  if (o.sparsity == "config") {
    if (o.config.empty()) throw CliFailure{kExitUsage, "--sparsity config needs --config"};
    const auto c = nlsim::cli::LoadConfig(o.config);
    f = MakeCoupling(c);
    eps = c.eps;
    int n = 0;
    while ((std::size_t{1} << n) < c.grid_size()) ++n;
    lo = hi = n;
  }
  if (lo < 1 || hi > 30 || lo > hi) throw CliFailure{kExitUsage, "qubit range must satisfy 1 <= n_min <= n_max <= 30"};
  if (o.instrumented && hi > 12) throw CliFailure{kExitUsage, "--instrumented supports n <= 12"};

  std::ostringstream csv;
  csv << "n,dim,steps,singles,pairs,basic_constant,mcx_per_step,nonlinear_per_step,ancilla_phase_per_step,"
         "basic_per_step,mcx_total,nonlinear_total,ancilla_phase_total,basic_total";
  if (o.instrumented) csv << ",instrumented_match";
  csv << '\n';
  bool all_match = true;
  for (int n = lo; n <= hi; ++n) {
    std::uint64_t singles = 0, pairs = 0;
    SparsityFor(o, n, f.get(), eps, singles, pairs);
    nlsim_resource_tally t{};
    Check(nlsim_estimate_resources(n, singles, pairs, o.steps, o.basic_constant, &t), "estimate");
    csv << n << ',' << (std::uint64_t{1} << n) << ',' << o.steps << ',' << singles << ',' << pairs << ','
        << o.basic_constant << ',' << t.per_step.mcx << ',' << t.per_step.nonlinear << ','
        << t.per_step.ancilla_phase << ',' << t.per_step.basic << ',' << t.total.mcx << ',' << t.total.nonlinear
        << ',' << t.total.ancilla_phase << ',' << t.total.basic;
    if (o.instrumented) {
      const std::size_t dim = std::size_t{1} << n;
      Handle<nlsim_coupling> probe;
      if (o.sparsity == "config") {
        probe = Make<nlsim_coupling>(
            [&](nlsim_coupling** p) {
              std::vector<double> dense(dim * dim);
              for (std::size_t k = 0; k < dim; ++k) {
                for (std::size_t j = 0; j < dim; ++j) Check(nlsim_coupling_entry(f.get(), k, j, &dense[k * dim + j]), "entry");
              }
              return nlsim_coupling_from_dense(dense.data(), dim, p);
            },
            "coupling");
      } else if (o.sparsity == "dense") {
        std::vector<double> dense(dim * dim, 1.0);
        for (std::size_t k = 0; k < dim; ++k) dense[k * dim + k] = 3.0;
        probe = Make<nlsim_coupling>([&](nlsim_coupling** p) { return nlsim_coupling_from_dense(dense.data(), dim, p); },
                                     "coupling");
      }
      bool match = false;
      if (probe) {
        const double probe_eps = o.sparsity == "config" ? eps : 0.1;
        const auto seq = Make<nlsim_sequence>(
            [&](nlsim_sequence** s) { return nlsim_compile_w(probe.get(), probe_eps, 1, s); }, "compile");
        std::vector<nlsim_complex> amps(dim, nlsim_complex{1.0, 0.0});
        const auto r = Make<nlsim_register>(
            [&](nlsim_register** p) { return nlsim_register_create(amps.data(), dim, p); }, "register");
        nlsim_gate_counts measured{};
        for (std::uint64_t s = 0; s < o.steps; ++s) {
          nlsim_gate_counts one{};
          Check(nlsim_sequence_apply(seq.get(), r.get(), &one), "apply");
          measured.mcx += one.mcx;
          measured.nonlinear += one.nonlinear;
          measured.ancilla_phase += one.ancilla_phase;
        }
        match = measured.mcx == t.total.mcx && measured.nonlinear == t.total.nonlinear &&
                measured.ancilla_phase == t.total.ancilla_phase;
      }
      all_match = all_match && match;
      csv << ',' << (probe ? (match ? "yes" : "no") : "n/a");
    }
    csv << '\n';
  }
  std::cout << csv.str();
  std::cerr << "per step: mcx = 2S + 4P, nonlinear = ancilla_phase = S + P, basic = mcx*c*n^2 + 2(S + P); "
               "dense: S = 2^n, P = 2^n(2^n - 1)/2\n";
  if (!o.out.empty()) WriteFile(PrepareOutput(o.out) / "resources.csv", csv.str());
  return all_match ? 0 : kExitNumerical;
}

int Bec(const ExperimentConfig& c) {
  const fs::path out = PrepareOutput(c.output_dir);
  std::ostringstream csv;
  csv << "g11,g22,g12,t,measured_phase_1,measured_phase_2,predicted_phase_1,predicted_phase_2,"
         "measured_relative,predicted_relative,deviation\n";
  for (const auto& g : c.bec.sweep) {
    nlsim_bec_params p{};
    p.points = c.bec.points;
    p.length = c.bec.length;
    p.omega = c.bec.omega;
    p.alpha_weight = c.bec.alpha_weight;
    p.g11 = g.g11;
    p.g22 = g.g22;
    p.g12 = g.g12;
    p.t = c.bec.t;
    p.dt = c.bec.dt;
    nlsim_bec_report r{};
    Check(nlsim_bec_phase_check(&p, &r), "bec phase check");
    csv << Num(g.g11) << ',' << Num(g.g22) << ',' << Num(g.g12) << ',' << Num(c.bec.t) << ','
        << Num(r.measured_phase[0]) << ',' << Num(r.measured_phase[1]) << ',' << Num(r.predicted_phase[0]) << ','
        << Num(r.predicted_phase[1]) << ',' << Num(r.measured_relative) << ',' << Num(r.predicted_relative) << ','
        << Num(r.deviation) << '\n';
  }
  WriteFile(out / "bec.csv", csv.str());
  std::cout << csv.str();
  return 0;
}

void AddCommonFlags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--eps", o.eps, "Trotter step")->check(CLI::PositiveNumber);
  cmd->add_option("--steps", o.steps, "Number of Trotter steps (sets t = steps * eps)");
  cmd->add_option("--mode", o.mode, "W implementation")->check(CLI::IsMember({"compiled", "direct"}));
  cmd->add_option("--seed", o.seed, "Seed for random initial states");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear Schroedinger evolution on a simulated qubit register with a nonlinear ancilla"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nlsim_version()));

  Overrides sim, cmp, bec;
  auto* simulate = app.add_subcommand("simulate", "Trotterized evolution; writes trajectory, summary and W sequence");
  AddCommonFlags(simulate, sim);
  auto* compare = app.add_subcommand("compare", "Evolution against the split-step oracle");
  AddCommonFlags(compare, cmp);
  auto* bec_cmd = app.add_subcommand("bec", "Two-mode condensate phase-map sweep");
  AddCommonFlags(bec_cmd, bec);

  ResourceOptions res;
  auto* resources = app.add_subcommand("resources", "Gate-count table");
  resources->add_option("--n", res.n, "Single qubit count (overrides the range)");
  resources->add_option("--n-min", res.n_min, "Smallest qubit count");
  resources->add_option("--n-max", res.n_max, "Largest qubit count");
  resources->add_option("--steps", res.steps, "Trotter steps N_t");
  resources->add_option("--sparsity", res.sparsity, "dense | stencil | config | S:P");
  resources->add_flag("--instrumented", res.instrumented, "Also count gates by executing compiled sequences");
  resources->add_option("--basic-constant", res.basic_constant, "Basic gates per MCX per n^2")
      ->check(CLI::PositiveNumber);
  resources->add_option("--out", res.out, "Output directory for resources.csv");
  resources->add_option("--config", res.config, "Config supplying the coupling for --sparsity config")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*simulate) return Simulate(Resolve(sim));
    if (*compare) return Compare(Resolve(cmp));
    if (*bec_cmd) return Bec(Resolve(bec));
    if (*resources) return Resources(res);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CliFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
