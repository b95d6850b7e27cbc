#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nlsim/coupling.hpp"
#include "nlsim/statevec.hpp"

namespace nlsim {

/// Nonlinear-gate angles: one per basis index plus one per unordered pair.
class GammaSchedule {
 public:
  explicit GammaSchedule(std::size_t dim)
      : dim_(dim), single_(dim, 0.0), pair_(dim * (dim - 1) / 2, 0.0) {}

  std::size_t dim() const { return dim_; }
  double single(std::size_t k) const { return single_[k]; }
  double& single(std::size_t k) { return single_[k]; }
  /// Angle of the pair sequence for k < l.
  double pair(std::size_t k, std::size_t l) const { return pair_[PairIndex(k, l)]; }
  double& pair(std::size_t k, std::size_t l) { return pair_[PairIndex(k, l)]; }

  std::size_t nonzero_singles() const;
  std::size_t nonzero_pairs() const;

 private:
  std::size_t PairIndex(std::size_t k, std::size_t l) const {
    // Row-major strictly-upper triangle.
    return k * dim_ - k * (k + 1) / 2 + (l - k - 1);
  }

  std::size_t dim_;
  std::vector<double> single_;
  std::vector<double> pair_;
};

/// Angles whose single and pair sequences multiply each a_k by
/// exp(-i eps sum_j f_kj |a_j|^2), up to one global phase:
///   gamma_kl = -eps f_kl / 2,   gamma_k = -eps f_kk / 2 - sum_{l != k} gamma_kl.
GammaSchedule GammasFromCoupling(const CouplingMatrix& f, double eps);

namespace gate {
struct Mcx {
  std::size_t target;
};
struct Nonlinear {
  double gamma;
};
struct AncillaPhase {
  double lambda;
};
struct PrincipalDiagonal {
  std::vector<double> phases;
};
struct Dft {
  bool inverse;
  std::vector<int> shape;
};
}  // namespace gate

using GateOp = std::variant<gate::Mcx, gate::Nonlinear, gate::AncillaPhase,
                            gate::PrincipalDiagonal, gate::Dft>;

/// Gate counts of one step (or one run). `basic` expands every MCX into
/// c * n^2 basic gates and counts the other ancilla gates as one each.
struct GateCounts {
  std::uint64_t mcx = 0;
  std::uint64_t nonlinear = 0;
  std::uint64_t ancilla_phase = 0;
  std::uint64_t basic = 0;

  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

GateCounts operator*(const GateCounts& c, std::uint64_t times);
GateCounts& operator+=(GateCounts& a, const GateCounts& b);

/// Execution counters filled while a sequence runs.
struct ExecutionCounter {
  std::uint64_t mcx = 0;
  std::uint64_t nonlinear = 0;
  std::uint64_t ancilla_phase = 0;
  std::uint64_t diagonal = 0;
  std::uint64_t dft = 0;

  /// Basic-gate view of the counted ancilla gates for n principal qubits.
  GateCounts ToGateCounts(int n, std::uint64_t basic_constant = 1) const;
};

class GateSequence {
 public:
  GateSequence() = default;
  explicit GateSequence(std::vector<GateOp> ops) : ops_(std::move(ops)) {}

  std::span<const GateOp> ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }
  void push_back(GateOp op) { ops_.push_back(std::move(op)); }

  void Apply(Register& r, ExecutionCounter* counter = nullptr) const;

  /// One op per line: `MCX k`, `NL gamma`, `APH lambda`, `DIAG p0 p1 ...`,
  /// `DFT fwd|inv m0 [m1]`. Angles in radians, shortest round-trip decimals.
  std::string ToText() const;
  static GateSequence FromText(std::string_view text);

  friend bool operator==(const GateSequence& a, const GateSequence& b);

 private:
  std::vector<GateOp> ops_;
};

struct CompileOptions {
  bool prune_zero_angles = true;
};

/// Single-index sequences [MCX k, NL g_k, APH g_k, MCX k] for ascending k,
/// then pair sequences [MCX k, MCX l, NL g_kl, APH g_kl, MCX l, MCX k] in
/// lexicographic (k, l) order. Realizes W_eps on a register with a clean
/// ancilla up to a global phase.
GateSequence CompileW(const CouplingMatrix& f, double eps, const CompileOptions& options = {});
GateSequence CompileSchedule(const GammaSchedule& schedule, const CompileOptions& options = {});

/// Reference W_eps: multiplies amp[2k] by exp(-i eps sum_j f_kj |a_j|^2).
/// Throws "ancilla not clean" when the ancilla-1 branch has weight.
void ApplyWDirect(Register& r, const CouplingMatrix& f, double eps);

struct ResourceTally {
  int num_qubits = 0;
  std::uint64_t basic_constant = 1;
  std::uint64_t steps = 0;
  std::uint64_t singles = 0;
  std::uint64_t pairs = 0;
  GateCounts per_step;

  GateCounts total() const { return per_step * steps; }
};

/// Closed-form counts: per step mcx = 2S + 4P, nonlinear = ancilla_phase =
/// S + P, basic = mcx c n^2 + nonlinear + ancilla_phase.
ResourceTally EstimateResources(int n, std::uint64_t singles, std::uint64_t pairs,
                                std::uint64_t steps, std::uint64_t basic_constant = 1);
/// Dense coupling: S = 2^n, P = 2^n (2^n - 1) / 2.
ResourceTally EstimateDenseResources(int n, std::uint64_t steps,
                                     std::uint64_t basic_constant = 1);

/// Upper bound on principal qubits produced by TensorSquare.
inline constexpr int kMaxTensorSquareQubits = 20;

/// |psi> (x) |psi> on 2n principal qubits, principal index j * 2^n + k holds
/// a_j a_k. The ancilla must be clean.
Register TensorSquare(const Register& r, int max_qubits = kMaxTensorSquareQubits);

}  // namespace nlsim
