#include "nlsim/nlsim.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nlsim/coupling.hpp"
#include "nlsim/evolution.hpp"
#include "nlsim/nlcompiler.hpp"
#include "nlsim/oracle.hpp"
#include "nlsim/problems.hpp"
#include "nlsim/statevec.hpp"

struct nlsim_register {
  nlsim::Register value;
};
struct nlsim_kernel {
  nlsim::KernelSpec value;
};
struct nlsim_coupling {
  nlsim::CouplingMatrix value;
};
struct nlsim_sequence {
  nlsim::GateSequence value;
};
struct nlsim_trajectory {
  nlsim::Trajectory value;
};

namespace {

thread_local std::string g_last_error;

nlsim_status ToStatus(nlsim::ErrorCode code) {
  switch (code) {
    case nlsim::ErrorCode::kInvalidArgument:
      return NLSIM_ERR_INVALID_ARGUMENT;
    case nlsim::ErrorCode::kOutOfRange:
      return NLSIM_ERR_OUT_OF_RANGE;
    case nlsim::ErrorCode::kNumerical:
      return NLSIM_ERR_NUMERICAL;
    case nlsim::ErrorCode::kIo:
      return NLSIM_ERR_IO;
    case nlsim::ErrorCode::kResourceLimit:
      return NLSIM_ERR_RESOURCE_LIMIT;
  }
  return NLSIM_ERR_INTERNAL;
}

template <class F>
nlsim_status Guard(F&& body) {
  try {
    body();
    return NLSIM_OK;
  } catch (const nlsim::Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return NLSIM_ERR_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NLSIM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return NLSIM_ERR_INTERNAL;
  }
}

void Require(bool ok, const char* what) {
  if (!ok) nlsim::Fail(nlsim::ErrorCode::kInvalidArgument, what);
}

template <class T>
const T& Deref(const T* p, const char* name) {
  if (p == nullptr) nlsim::Fail(nlsim::ErrorCode::kInvalidArgument, std::string(name) + " is null");
  return *p;
}

template <class T>
T& Deref(T* p, const char* name) {
  if (p == nullptr) nlsim::Fail(nlsim::ErrorCode::kInvalidArgument, std::string(name) + " is null");
  return *p;
}

nlsim::GridSpec ToGrid(const nlsim_grid* g) {
  const auto& grid = Deref(g, "grid");
  Require(grid.dims == 1 || grid.dims == 2, "grid dims must be 1 or 2");
  nlsim::GridSpec out;
  out.dx = grid.dx;
  for (int i = 0; i < grid.dims; ++i) {
    out.points.push_back(grid.points[i]);
    out.x0.push_back(grid.x0[i]);
  }
  out.Validate();
  return out;
}

nlsim::KineticSpec ToKinetic(const nlsim_kinetic* k) {
  const auto& spec = Deref(k, "kinetic spec");
  return {spec.prefactor, ToGrid(&spec.grid)};
}

nlsim::StepMode ToMode(nlsim_mode mode) {
  Require(mode == NLSIM_MODE_COMPILED || mode == NLSIM_MODE_DIRECT, "unknown step mode");
  return mode == NLSIM_MODE_COMPILED ? nlsim::StepMode::kCompiled : nlsim::StepMode::kDirect;
}

std::vector<nlsim::Complex> ToComplex(const nlsim_complex* data, std::size_t len) {
  Require(data != nullptr || len == 0, "amplitude buffer is null");
  std::vector<nlsim::Complex> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = {data[i].re, data[i].im};
  return out;
}

void CopyOut(std::span<const nlsim::Complex> in, nlsim_complex* out, std::size_t capacity) {
  Require(out != nullptr, "output buffer is null");
  Require(capacity >= in.size(), "output buffer too small");
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = {in[i].real(), in[i].imag()};
}

nlsim_gate_counts ToCounts(const nlsim::GateCounts& c) {
  return {c.mcx, c.nonlinear, c.ancilla_phase, c.basic};
}

nlsim_resource_tally ToTally(const nlsim::ResourceTally& t) {
  return {t.num_qubits, t.basic_constant, t.steps, t.singles,
          t.pairs,      ToCounts(t.per_step), ToCounts(t.total())};
}

nlsim::FieldState ToField(const nlsim_complex* phi, const nlsim_grid* grid) {
  nlsim::GridSpec g = ToGrid(grid);
  return {ToComplex(phi, g.size()), g};
}

std::ofstream OpenOut(const char* path) {
  Require(path != nullptr, "path is null");
  std::ofstream out(path);
  if (!out) nlsim::Fail(nlsim::ErrorCode::kIo, std::string("cannot write ") + path);
  return out;
}

std::ifstream OpenIn(const char* path) {
  Require(path != nullptr, "path is null");
  std::ifstream in(path);
  if (!in) nlsim::Fail(nlsim::ErrorCode::kIo, std::string("cannot read ") + path);
  return in;
}

template <class T, class... Args>
void Emit(T** out, Args&&... args) {
  Require(out != nullptr, "output handle pointer is null");
  *out = new T{std::forward<Args>(args)...};
}

}  // namespace

extern "C" {

const char* nlsim_version(void) { return "0.1.0"; }

const char* nlsim_status_string(nlsim_status status) {
  switch (status) {
    case NLSIM_OK:
      return "ok";
    case NLSIM_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case NLSIM_ERR_OUT_OF_RANGE:
      return "out of range";
    case NLSIM_ERR_NUMERICAL:
      return "numerical failure";
    case NLSIM_ERR_IO:
      return "i/o error";
    case NLSIM_ERR_RESOURCE_LIMIT:
      return "resource limit exceeded";
    case NLSIM_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* nlsim_last_error(void) { return g_last_error.c_str(); }

// ---- register -------------------------------------------------------------

nlsim_status nlsim_register_create(const nlsim_complex* amplitudes, size_t len,
                                   nlsim_register** out) {
  return Guard([&] {
    Emit(out, nlsim::Register::FromAmplitudes(ToComplex(amplitudes, len)));
  });
}

nlsim_status nlsim_register_clone(const nlsim_register* r, nlsim_register** out) {
  return Guard([&] { Emit(out, Deref(r, "register").value); });
}

void nlsim_register_destroy(nlsim_register* r) { delete r; }

int nlsim_register_num_qubits(const nlsim_register* r) {
  return r == nullptr ? 0 : r->value.num_qubits();
}

size_t nlsim_register_principal_dim(const nlsim_register* r) {
  return r == nullptr ? 0 : r->value.principal_dim();
}

nlsim_status nlsim_register_amplitudes(const nlsim_register* r, nlsim_complex* out,
                                       size_t capacity) {
  return Guard([&] { CopyOut(Deref(r, "register").value.amplitudes(), out, capacity); });
}

nlsim_status nlsim_register_principal_amplitudes(const nlsim_register* r, nlsim_complex* out,
                                                 size_t capacity) {
  return Guard(
      [&] { CopyOut(Deref(r, "register").value.PrincipalAmplitudes(), out, capacity); });
}

nlsim_status nlsim_register_branch_weights(const nlsim_register* r, double* p0, double* p1) {
  return Guard([&] {
    const auto w = Deref(r, "register").value.branch_weights();
    Deref(p0, "p0") = w.p0;
    Deref(p1, "p1") = w.p1;
  });
}

nlsim_status nlsim_register_apply_mcx(nlsim_register* r, size_t k) {
  return Guard([&] { Deref(r, "register").value.ApplyMcx(k); });
}

nlsim_status nlsim_register_apply_nonlinear(nlsim_register* r, double gamma) {
  return Guard([&] { Deref(r, "register").value.ApplyNonlinear(gamma); });
}

nlsim_status nlsim_register_apply_ancilla_phase(nlsim_register* r, double lambda) {
  return Guard([&] { Deref(r, "register").value.ApplyAncillaPhase(lambda); });
}

nlsim_status nlsim_register_apply_principal_diagonal(nlsim_register* r, const double* phases,
                                                     size_t len) {
  return Guard([&] {
    Require(phases != nullptr, "phases is null");
    Deref(r, "register").value.ApplyPrincipalDiagonal(std::span<const double>(phases, len));
  });
}

nlsim_status nlsim_register_apply_dft(nlsim_register* r, int inverse, const nlsim_grid* grid) {
  return Guard([&] {
    auto& reg = Deref(r, "register").value;
    if (grid == nullptr) {
      reg.ApplyDft(inverse != 0);
    } else {
      const auto g = ToGrid(grid);
      Require(g.size() == reg.principal_dim(), "grid does not match register");
      reg.ApplyDft(inverse != 0, g.points);
    }
  });
}

nlsim_status nlsim_register_fidelity(const nlsim_register* a, const nlsim_register* b,
                                     double* out) {
  return Guard([&] {
    Deref(out, "out") = nlsim::Fidelity(Deref(a, "register a").value, Deref(b, "register b").value);
  });
}

nlsim_status nlsim_register_tensor_square(const nlsim_register* r, nlsim_register** out) {
  return Guard([&] { Emit(out, nlsim::TensorSquare(Deref(r, "register").value)); });
}

// ---- kernels and couplings -------------------------------------------------

nlsim_status nlsim_kernel_from_json(const char* json, nlsim_kernel** out) {
  return Guard([&] {
    Require(json != nullptr, "json is null");
    Emit(out, nlsim::KernelSpec::FromJson(json));
  });
}

void nlsim_kernel_destroy(nlsim_kernel* k) { delete k; }

nlsim_status nlsim_coupling_from_dense(const double* values, size_t dim, nlsim_coupling** out) {
  return Guard([&] {
    Require(values != nullptr, "values is null");
    Emit(out, nlsim::CouplingMatrix::FromDense(dim, std::span<const double>(values, dim * dim)));
  });
}

nlsim_status nlsim_coupling_hartree(const nlsim_kernel* kernel, const nlsim_grid* grid,
                                    nlsim_convention convention, nlsim_coupling** out) {
  return Guard([&] {
    Require(convention == NLSIM_CONVENTION_UNIT_NORM ||
                convention == NLSIM_CONVENTION_FIELD_SAMPLES,
            "unknown amplitude convention");
    const auto conv = convention == NLSIM_CONVENTION_UNIT_NORM
                          ? nlsim::AmplitudeConvention::kUnitNorm
                          : nlsim::AmplitudeConvention::kFieldSamples;
    Emit(out, nlsim::HartreeCoupling(Deref(kernel, "kernel").value, ToGrid(grid), conv));
  });
}

nlsim_status nlsim_coupling_gross_pitaevskii(double g, const nlsim_grid* grid,
                                             nlsim_coupling** out) {
  return Guard([&] { Emit(out, nlsim::GrossPitaevskiiCoupling(g, ToGrid(grid))); });
}

nlsim_status nlsim_coupling_navier_stokes(double rho0, const nlsim_grid* grid,
                                          nlsim_coupling** out) {
  return Guard([&] { Emit(out, nlsim::NavierStokesCoupling(rho0, ToGrid(grid))); });
}

nlsim_status nlsim_coupling_read_triplets(const char* path, size_t dim, nlsim_coupling** out) {
  return Guard([&] {
    auto in = OpenIn(path);
    Emit(out, nlsim::CouplingMatrix::ReadTripletsCsv(in, dim));
  });
}

nlsim_status nlsim_coupling_write_triplets(const nlsim_coupling* f, const char* path) {
  return Guard([&] {
    const auto& m = Deref(f, "coupling").value;
    auto out = OpenOut(path);
    m.WriteTripletsCsv(out);
    if (!out) nlsim::Fail(nlsim::ErrorCode::kIo, "write failed");
  });
}

void nlsim_coupling_destroy(nlsim_coupling* f) { delete f; }

size_t nlsim_coupling_dim(const nlsim_coupling* f) { return f == nullptr ? 0 : f->value.dim(); }

nlsim_status nlsim_coupling_entry(const nlsim_coupling* f, size_t k, size_t j, double* out) {
  return Guard([&] {
    const auto& m = Deref(f, "coupling").value;
    if (k >= m.dim() || j >= m.dim()) nlsim::Fail(nlsim::ErrorCode::kOutOfRange, "index outside matrix");
    Deref(out, "out") = m(k, j);
  });
}

nlsim_status nlsim_coupling_row_sum(const nlsim_coupling* f, size_t k, double* out) {
  return Guard([&] {
    const auto& m = Deref(f, "coupling").value;
    if (k >= m.dim()) nlsim::Fail(nlsim::ErrorCode::kOutOfRange, "row outside matrix");
    Deref(out, "out") = m.RowSum(k);
  });
}

nlsim_status nlsim_coupling_equal(const nlsim_coupling* a, const nlsim_coupling* b, int* out) {
  return Guard([&] {
    Deref(out, "out") = Deref(a, "coupling a").value == Deref(b, "coupling b").value ? 1 : 0;
  });
}

// ---- compiler --------------------------------------------------------------

nlsim_status nlsim_gammas(const nlsim_coupling* f, double eps, double* singles,
                          size_t singles_len, double* pairs, size_t pairs_len) {
  return Guard([&] {
    const auto s = nlsim::GammasFromCoupling(Deref(f, "coupling").value, eps);
    const std::size_t dim = s.dim();
    Require(singles != nullptr && singles_len >= dim, "singles buffer too small");
    Require(pairs != nullptr || dim * (dim - 1) / 2 == 0, "pairs buffer is null");
    Require(pairs_len >= dim * (dim - 1) / 2, "pairs buffer too small");
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dim; ++k) {
      singles[k] = s.single(k);
      for (std::size_t l = k + 1; l < dim; ++l) pairs[idx++] = s.pair(k, l);
    }
  });
}

nlsim_status nlsim_compile_w(const nlsim_coupling* f, double eps, int prune,
                             nlsim_sequence** out) {
  return Guard([&] {
    nlsim::CompileOptions options;
    options.prune_zero_angles = prune != 0;
    Emit(out, nlsim::CompileW(Deref(f, "coupling").value, eps, options));
  });
}

nlsim_status nlsim_sequence_from_text(const char* text, nlsim_sequence** out) {
  return Guard([&] {
    Require(text != nullptr, "text is null");
    Emit(out, nlsim::GateSequence::FromText(text));
  });
}

nlsim_status nlsim_sequence_to_text(const nlsim_sequence* s, char* buffer, size_t capacity,
                                    size_t* needed) {
  return Guard([&] {
    const std::string text = Deref(s, "sequence").value.ToText();
    if (needed != nullptr) *needed = text.size() + 1;
    if (buffer == nullptr && capacity == 0) return;
    Require(buffer != nullptr && capacity >= text.size() + 1, "text buffer too small");
    std::memcpy(buffer, text.c_str(), text.size() + 1);
  });
}

size_t nlsim_sequence_size(const nlsim_sequence* s) { return s == nullptr ? 0 : s->value.size(); }

void nlsim_sequence_destroy(nlsim_sequence* s) { delete s; }

nlsim_status nlsim_sequence_apply(const nlsim_sequence* s, nlsim_register* r,
                                  nlsim_gate_counts* measured) {
  return Guard([&] {
    nlsim::ExecutionCounter counter;
    auto& reg = Deref(r, "register").value;
    Deref(s, "sequence").value.Apply(reg, &counter);
    if (measured != nullptr) *measured = ToCounts(counter.ToGateCounts(reg.num_qubits()));
  });
}

nlsim_status nlsim_apply_w_direct(nlsim_register* r, const nlsim_coupling* f, double eps) {
  return Guard([&] {
    nlsim::ApplyWDirect(Deref(r, "register").value, Deref(f, "coupling").value, eps);
  });
}

nlsim_status nlsim_estimate_resources(int n, uint64_t singles, uint64_t pairs, uint64_t steps,
                                      uint64_t basic_constant, nlsim_resource_tally* out) {
  return Guard([&] {
    Deref(out, "out") = ToTally(nlsim::EstimateResources(n, singles, pairs, steps, basic_constant));
  });
}

nlsim_status nlsim_estimate_dense_resources(int n, uint64_t steps, uint64_t basic_constant,
                                            nlsim_resource_tally* out) {
  return Guard([&] {
    Deref(out, "out") = ToTally(nlsim::EstimateDenseResources(n, steps, basic_constant));
  });
}

nlsim_status nlsim_coupling_sparsity(const nlsim_coupling* f, double eps, uint64_t* singles,
                                     uint64_t* pairs) {
  return Guard([&] {
    const auto s = nlsim::GammasFromCoupling(Deref(f, "coupling").value, eps);
    Deref(singles, "singles") = s.nonzero_singles();
    Deref(pairs, "pairs") = s.nonzero_pairs();
  });
}

// ---- evolution ---------------------------------------------------------------

nlsim_status nlsim_kinetic_phases(const nlsim_kinetic* spec, double eps, double* out,
                                  size_t len) {
  return Guard([&] {
    const auto phases = nlsim::KineticPhases(ToKinetic(spec), eps);
    Require(out != nullptr && len >= phases.size(), "phase buffer too small");
    std::copy(phases.begin(), phases.end(), out);
  });
}

nlsim_status nlsim_trotter_step(nlsim_register* r, const nlsim_coupling* f,
                                const nlsim_kinetic* spec, double eps, nlsim_mode mode) {
  return Guard([&] {
    nlsim::TrotterStep(Deref(r, "register").value, Deref(f, "coupling").value, ToKinetic(spec),
                       eps, ToMode(mode));
  });
}

nlsim_status nlsim_evolve(const nlsim_register* r0, const nlsim_coupling* f,
                          const nlsim_kinetic* spec, double t, double eps, nlsim_mode mode,
                          uint64_t record_stride, nlsim_trajectory** out) {
  return Guard([&] {
    const auto plan = nlsim::TrotterPlan::ForDuration(t, eps, ToMode(mode), record_stride);
    Emit(out, nlsim::Evolve(Deref(r0, "register").value, Deref(f, "coupling").value,
                            ToKinetic(spec), plan));
  });
}

void nlsim_trajectory_destroy(nlsim_trajectory* traj) { delete traj; }

size_t nlsim_trajectory_num_snapshots(const nlsim_trajectory* traj) {
  return traj == nullptr ? 0 : traj->value.snapshots.size();
}

nlsim_status nlsim_trajectory_snapshot(const nlsim_trajectory* traj, size_t index,
                                       uint64_t* step, double* time, nlsim_complex* amplitudes,
                                       size_t capacity) {
  return Guard([&] {
    const auto& t = Deref(traj, "trajectory").value;
    if (index >= t.snapshots.size()) nlsim::Fail(nlsim::ErrorCode::kOutOfRange, "snapshot index");
    const auto& snap = t.snapshots[index];
    if (step != nullptr) *step = snap.step;
    if (time != nullptr) *time = snap.time;
    if (amplitudes != nullptr) CopyOut(snap.amplitudes, amplitudes, capacity);
  });
}

nlsim_status nlsim_trajectory_final_state(const nlsim_trajectory* traj, nlsim_register** out) {
  return Guard([&] {
    const auto& t = Deref(traj, "trajectory").value;
    Require(t.final_state.has_value(), "trajectory has no final state");
    Emit(out, *t.final_state);
  });
}

nlsim_status nlsim_trajectory_tally(const nlsim_trajectory* traj, nlsim_resource_tally* out) {
  return Guard([&] { Deref(out, "out") = ToTally(Deref(traj, "trajectory").value.tally); });
}

nlsim_status nlsim_trajectory_measured(const nlsim_trajectory* traj, nlsim_gate_counts* out) {
  return Guard([&] {
    const auto& t = Deref(traj, "trajectory").value;
    Deref(out, "out") =
        ToCounts(t.measured.ToGateCounts(t.tally.num_qubits, t.tally.basic_constant));
  });
}

nlsim_status nlsim_trajectory_norm_drift(const nlsim_trajectory* traj, double* out) {
  return Guard([&] { Deref(out, "out") = Deref(traj, "trajectory").value.max_norm_drift; });
}

nlsim_status nlsim_trajectory_write_csv(const nlsim_trajectory* traj, const char* path,
                                        int density_only) {
  return Guard([&] {
    const auto& t = Deref(traj, "trajectory").value;
    auto out = OpenOut(path);
    nlsim::WriteTrajectoryCsv(out, t,
                              density_only != 0 ? nlsim::TrajectoryCsv::kDensity
                                                : nlsim::TrajectoryCsv::kAmplitudes);
    if (!out) nlsim::Fail(nlsim::ErrorCode::kIo, "write failed");
  });
}

nlsim_status nlsim_observables(const nlsim_register* r, const nlsim_kinetic* spec,
                               const nlsim_coupling* f, double* density,
                               double* momentum_density, size_t len, nlsim_energy* energy) {
  return Guard([&] {
    const auto obs = nlsim::ComputeObservables(Deref(r, "register").value, ToKinetic(spec),
                                               Deref(f, "coupling").value);
    if (density != nullptr) {
      Require(len >= obs.density.size(), "density buffer too small");
      std::copy(obs.density.begin(), obs.density.end(), density);
    }
    if (momentum_density != nullptr) {
      Require(len >= obs.momentum_density.size(), "momentum buffer too small");
      std::copy(obs.momentum_density.begin(), obs.momentum_density.end(), momentum_density);
    }
    if (energy != nullptr) *energy = {obs.kinetic_energy, obs.interaction_energy, obs.energy};
  });
}

nlsim_status nlsim_madelung(const nlsim_register* r, const nlsim_grid* grid, double* rho,
                            double* velocity, size_t len) {
  return Guard([&] {
    const auto g = ToGrid(grid);
    const auto fields = nlsim::ComputeMadelungFields(Deref(r, "register").value, g);
    Require(len >= fields.rho.size(), "buffer too small");
    if (rho != nullptr) std::copy(fields.rho.begin(), fields.rho.end(), rho);
    if (velocity != nullptr) {
      for (std::size_t axis = 0; axis < fields.velocity.size(); ++axis) {
        std::copy(fields.velocity[axis].begin(), fields.velocity[axis].end(),
                  velocity + axis * fields.rho.size());
      }
    }
  });
}

// ---- classical reference solvers ----------------------------------------------

nlsim_status nlsim_field_from_register(const nlsim_register* r, const nlsim_grid* grid,
                                       nlsim_complex* out, size_t len) {
  return Guard([&] {
    const auto field = nlsim::FieldState::FromRegister(Deref(r, "register").value, ToGrid(grid));
    CopyOut(field.values, out, len);
  });
}

nlsim_status nlsim_field_write_csv(const nlsim_complex* phi, const nlsim_grid* grid,
                                   const char* path) {
  return Guard([&] {
    const auto field = ToField(phi, grid);
    auto out = OpenOut(path);
    field.WriteCsv(out);
    if (!out) nlsim::Fail(nlsim::ErrorCode::kIo, "write failed");
  });
}

nlsim_status nlsim_field_read_csv(const char* path, const nlsim_grid* grid, nlsim_complex* out,
                                  size_t len) {
  return Guard([&] {
    auto in = OpenIn(path);
    const auto field = nlsim::FieldState::ReadCsv(in, ToGrid(grid));
    CopyOut(field.values, out, len);
  });
}

nlsim_status nlsim_split_step_kernel(const nlsim_complex* phi0, const nlsim_grid* grid,
                                     const nlsim_kernel* kernel, double kinetic_prefactor,
                                     double t, double dt, nlsim_complex* out) {
  return Guard([&] {
    const auto field = ToField(phi0, grid);
    const auto rule = nlsim::KernelConvolutionPotential(Deref(kernel, "kernel").value, field.grid);
    const auto result = nlsim::SplitStepSolve(field, rule, kinetic_prefactor, t, dt);
    CopyOut(result.values, out, result.values.size());
  });
}

nlsim_status nlsim_split_step_coupling(const nlsim_complex* phi0, const nlsim_grid* grid,
                                       const nlsim_coupling* f, double kinetic_prefactor,
                                       double t, double dt, nlsim_complex* out) {
  return Guard([&] {
    const auto field = ToField(phi0, grid);
    const auto rule = nlsim::CouplingPotential(Deref(f, "coupling").value, field.grid);
    const auto result = nlsim::SplitStepSolve(field, rule, kinetic_prefactor, t, dt);
    CopyOut(result.values, out, result.values.size());
  });
}

nlsim_status nlsim_split_step_convergence(const nlsim_complex* phi0, const nlsim_grid* grid,
                                          const nlsim_kernel* kernel, double kinetic_prefactor,
                                          double t, double dt, double* ratio) {
  return Guard([&] {
    const auto field = ToField(phi0, grid);
    const auto rule = nlsim::KernelConvolutionPotential(Deref(kernel, "kernel").value, field.grid);
    Deref(ratio, "ratio") =
        nlsim::SplitStepSelfConvergence(field, rule, kinetic_prefactor, t, dt).ratio;
  });
}

nlsim_status nlsim_ground_state(const double* trap, const nlsim_grid* grid, double g,
                                double kinetic_prefactor, nlsim_complex* phi_out,
                                nlsim_ground_state_result* result) {
  return Guard([&] {
    const auto gs = ToGrid(grid);
    std::span<const double> v;
    if (trap != nullptr) v = std::span<const double>(trap, gs.size());
    const auto ground = nlsim::ImaginaryTimeGroundState(v, g, gs, kinetic_prefactor);
    if (phi_out != nullptr) CopyOut(ground.state.values, phi_out, gs.size());
    if (result != nullptr) {
      *result = {ground.chemical_potential, ground.energy, ground.residual, ground.iterations};
    }
  });
}

nlsim_status nlsim_bec_phase_check(const nlsim_bec_params* params, nlsim_bec_report* report) {
  return Guard([&] {
    const auto& p = Deref(params, "params");
    nlsim::BecSetup setup;
    setup.points = p.points;
    setup.length = p.length;
    setup.omega = p.omega;
    setup.alpha_weight = p.alpha_weight;
    setup.g11 = p.g11;
    setup.g22 = p.g22;
    setup.g12 = p.g12;
    const auto state = nlsim::PrepareHarmonicTwoModeState(setup);
    const auto r = nlsim::BecPhaseCheck(state, p.t, p.dt);
    auto& out = Deref(report, "report");
    for (int i = 0; i < 2; ++i) {
      out.measured_phase[i] = r.measured_phase[i];
      out.predicted_phase[i] = r.predicted_phase[i];
    }
    out.measured_relative = r.measured_relative;
    out.predicted_relative = r.predicted_relative;
    out.deviation = r.deviation;
  });
}

}  // extern "C"
