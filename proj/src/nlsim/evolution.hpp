#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "nlsim/coupling.hpp"
#include "nlsim/grid.hpp"
#include "nlsim/nlcompiler.hpp"
#include "nlsim/statevec.hpp"

namespace nlsim {

/// Kinetic operator T = prefactor * p^2 on a periodic grid.
struct KineticSpec {
  double prefactor = 1.0;
  GridSpec grid;
};

/// -eps * prefactor * |p_m|^2 for every momentum-space index m (row-major).
std::vector<double> KineticPhases(const KineticSpec& spec, double eps);

enum class StepMode { kCompiled, kDirect };

struct TrotterPlan {
  double eps = 0.0;
  std::uint64_t steps = 0;
  StepMode mode = StepMode::kCompiled;
  /// Snapshot every `record_stride` steps (0 keeps only first and last).
  std::uint64_t record_stride = 0;

  /// steps = floor(t / eps), with t/eps values within 1e-9 (relative) below
  /// an integer rounded up to it.
  static TrotterPlan ForDuration(double t, double eps, StepMode mode,
                                 std::uint64_t record_stride = 0);
};

/// One first-order step: W_eps (compiled or direct), then
/// U_eps = DFT^-1 diag(kinetic phases) DFT.
class TrotterStepper {
 public:
  TrotterStepper(const CouplingMatrix& f, const KineticSpec& spec, double eps, StepMode mode);

  void Step(Register& r, ExecutionCounter* counter = nullptr) const;

  const GateSequence& w_sequence() const { return w_sequence_; }
  const GammaSchedule& schedule() const { return schedule_; }
  /// Closed-form tally of one step's nonlinear part.
  ResourceTally Tally(std::uint64_t steps, std::uint64_t basic_constant = 1) const;

 private:
  CouplingMatrix f_;
  KineticSpec spec_;
  double eps_;
  StepMode mode_;
  GammaSchedule schedule_;
  GateSequence w_sequence_;
  std::vector<double> kinetic_phases_;
};

void TrotterStep(Register& r, const CouplingMatrix& f, const KineticSpec& spec, double eps,
                 StepMode mode);

struct Snapshot {
  std::uint64_t step = 0;
  double time = 0.0;
  std::vector<Complex> amplitudes;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  ResourceTally tally;
  /// Counts measured while executing compiled sequences (zero in direct mode).
  ExecutionCounter measured;
  std::optional<Register> final_state;
  double max_norm_drift = 0.0;
};

Trajectory Evolve(const Register& r0, const CouplingMatrix& f, const KineticSpec& spec,
                  const TrotterPlan& plan);

struct Observables {
  std::vector<double> density;
  std::vector<double> momentum_density;
  double kinetic_energy = 0.0;
  double interaction_energy = 0.0;
  double energy = 0.0;
};

/// density |a_k|^2, momentum density |DFT(a)_m|^2 and
/// E = sum_m c_T p_m^2 |a~_m|^2 + 1/2 sum_kj f_kj |a_k|^2 |a_j|^2.
Observables ComputeObservables(const Register& r, const KineticSpec& spec,
                               const CouplingMatrix& f);

enum class TrajectoryCsv { kAmplitudes, kDensity };

/// Columns (step,time,k,re,im) or (step,time,k,density).
void WriteTrajectoryCsv(std::ostream& out, const Trajectory& traj, TrajectoryCsv format);

}  // namespace nlsim
