#include "nlsim/evolution.hpp"

#include <cmath>
#include <ostream>

#include "nlsim/fft.hpp"
#include "nlsim/textio.hpp"

namespace nlsim {

std::vector<double> KineticPhases(const KineticSpec& spec, double eps) {
  spec.grid.Validate();
  if (!std::isfinite(spec.prefactor)) {
    Fail(ErrorCode::kInvalidArgument, "kinetic prefactor must be finite");
  }
  const GridSpec& grid = spec.grid;
  std::vector<std::vector<double>> p;
  for (int axis = 0; axis < grid.dims(); ++axis) p.push_back(grid.Wavenumbers(axis));
  std::vector<double> phases(grid.size());
  for (std::size_t m = 0; m < phases.size(); ++m) {
    double p2 = 0.0;
    for (int axis = 0; axis < grid.dims(); ++axis) {
      const double q = p[axis][grid.axis_index(m, axis)];
      p2 += q * q;
    }
    phases[m] = -eps * spec.prefactor * p2;
  }
  return phases;
}

TrotterPlan TrotterPlan::ForDuration(double t, double eps, StepMode mode,
                                     std::uint64_t record_stride) {
  if (!(eps > 0.0) || !std::isfinite(eps)) Fail(ErrorCode::kInvalidArgument, "eps must be > 0");
  if (!(t >= 0.0) || !std::isfinite(t)) Fail(ErrorCode::kInvalidArgument, "t must be >= 0");
  const double ratio = t / eps;
  double steps = std::floor(ratio);
  if (std::ceil(ratio) - ratio < 1e-9 * std::max(1.0, ratio)) steps = std::ceil(ratio);
  TrotterPlan plan;
  plan.eps = eps;
  plan.steps = static_cast<std::uint64_t>(steps);
  plan.mode = mode;
  plan.record_stride = record_stride;
  return plan;
}

TrotterStepper::TrotterStepper(const CouplingMatrix& f, const KineticSpec& spec, double eps,
                               StepMode mode)
    : f_(f),
      spec_(spec),
      eps_(eps),
      mode_(mode),
      schedule_(GammasFromCoupling(f, eps)),
      w_sequence_(CompileSchedule(schedule_)),
      kinetic_phases_(KineticPhases(spec, eps)) {
  if (f.dim() != spec.grid.size()) {
    Fail(ErrorCode::kInvalidArgument, "coupling dimension does not match grid");
  }
}

void TrotterStepper::Step(Register& r, ExecutionCounter* counter) const {
  if (r.principal_dim() != f_.dim()) {
    Fail(ErrorCode::kInvalidArgument, "register size does not match coupling");
  }
  if (!r.AncillaClean()) Fail(ErrorCode::kInvalidArgument, "ancilla not clean");
  if (mode_ == StepMode::kCompiled) {
    w_sequence_.Apply(r, counter);
  } else {
    ApplyWDirect(r, f_, eps_);
  }
  r.ApplyDft(false, spec_.grid.points);
  r.ApplyPrincipalDiagonal(kinetic_phases_);
  r.ApplyDft(true, spec_.grid.points);
  if (counter != nullptr) {
    counter->dft += 2;
    ++counter->diagonal;
  }
}

ResourceTally TrotterStepper::Tally(std::uint64_t steps, std::uint64_t basic_constant) const {
  return EstimateResources(Log2Exact(f_.dim()), schedule_.nonzero_singles(),
                           schedule_.nonzero_pairs(), steps, basic_constant);
}

void TrotterStep(Register& r, const CouplingMatrix& f, const KineticSpec& spec, double eps,
                 StepMode mode) {
  TrotterStepper(f, spec, eps, mode).Step(r);
}

Trajectory Evolve(const Register& r0, const CouplingMatrix& f, const KineticSpec& spec,
                  const TrotterPlan& plan) {
  const TrotterStepper stepper(f, spec, plan.eps, plan.mode);
  Trajectory traj;
  traj.tally = stepper.Tally(plan.steps);
  Register r = r0;
  auto record = [&](std::uint64_t step) {
    traj.snapshots.push_back({step, static_cast<double>(step) * plan.eps, r.PrincipalAmplitudes()});
  };
  record(0);
  for (std::uint64_t step = 1; step <= plan.steps; ++step) {
    stepper.Step(r, &traj.measured);
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(std::sqrt(r.NormSquared()) - 1.0));
    if (step == plan.steps || (plan.record_stride != 0 && step % plan.record_stride == 0)) {
      record(step);
    }
  }
  traj.final_state = std::move(r);
  return traj;
}

Observables ComputeObservables(const Register& r, const KineticSpec& spec,
                               const CouplingMatrix& f) {
  if (!r.AncillaClean()) Fail(ErrorCode::kInvalidArgument, "ancilla not clean");
  if (r.principal_dim() != spec.grid.size() || f.dim() != spec.grid.size()) {
    Fail(ErrorCode::kInvalidArgument, "register, grid and coupling sizes differ");
  }
  Observables obs;
  auto a = r.PrincipalAmplitudes();
  obs.density.resize(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) obs.density[k] = std::norm(a[k]);

  UnitaryDft(a, spec.grid.points, 1, false);
  obs.momentum_density.resize(a.size());
  // KineticPhases(spec, -1) = +prefactor p^2.
  const auto energies = KineticPhases(spec, -1.0);
  for (std::size_t m = 0; m < a.size(); ++m) {
    obs.momentum_density[m] = std::norm(a[m]);
    obs.kinetic_energy += energies[m] * obs.momentum_density[m];
  }
  const auto potential = f.Potential(obs.density);
  for (std::size_t k = 0; k < a.size(); ++k) {
    obs.interaction_energy += 0.5 * potential[k] * obs.density[k];
  }
  obs.energy = obs.kinetic_energy + obs.interaction_energy;
  return obs;
}

void WriteTrajectoryCsv(std::ostream& out, const Trajectory& traj, TrajectoryCsv format) {
  out << (format == TrajectoryCsv::kAmplitudes ? "step,time,k,re,im\n" : "step,time,k,density\n");
  for (const auto& snap : traj.snapshots) {
    const std::string prefix = std::to_string(snap.step) + ',' + FormatDouble(snap.time) + ',';
    for (std::size_t k = 0; k < snap.amplitudes.size(); ++k) {
      out << prefix << k << ',';
      if (format == TrajectoryCsv::kAmplitudes) {
        out << FormatDouble(snap.amplitudes[k].real()) << ','
            << FormatDouble(snap.amplitudes[k].imag()) << '\n';
      } else {
        out << FormatDouble(std::norm(snap.amplitudes[k])) << '\n';
      }
    }
  }
}

}  // namespace nlsim
