#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nlsim/common.hpp"

namespace nlsim {

/// Probabilities of the ancilla being |0> and |1>.
struct BranchWeights {
  double p0 = 0.0;
  double p1 = 0.0;
};

/// State vector of n principal qubits plus one ancilla.
///
/// The ancilla is the least-significant bit of the flat index: amplitude
/// `amps[2k + b]` belongs to principal basis state |k> with ancilla bit b.
/// Every gate is either a permutation or phase-only, so the norm set at
/// construction is preserved up to rounding.
class Register {
 public:
  /// Prepares sum_k a_k |k>|0>_a, normalizing `principal`. Throws on a
  /// non-power-of-two length or a zero vector.
  static Register FromAmplitudes(std::span<const Complex> principal);

  /// Wraps an explicit (n+1)-qubit amplitude vector; it must already be
  /// normalized within kExactTol.
  static Register FromFlat(std::vector<Complex> amps);

  int num_qubits() const { return num_qubits_; }
  std::size_t principal_dim() const { return amps_.size() / 2; }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex amplitude(std::size_t k, int ancilla_bit) const {
    return amps_[2 * k + static_cast<std::size_t>(ancilla_bit)];
  }

  /// Ancilla-|0> amplitudes a_k (what the algorithm reads as the state).
  std::vector<Complex> PrincipalAmplitudes() const;

  double NormSquared() const;
  BranchWeights branch_weights() const;
  bool AncillaClean(double tol = kExactTol) const;

  /// Flips the ancilla exactly on the |k> branch.
  void ApplyMcx(std::size_t k);
  /// Multiplies the ancilla-0 branch by exp(i gamma p0) and the ancilla-1
  /// branch by exp(i gamma p1), with (p0, p1) read from the current state.
  void ApplyNonlinear(double gamma);
  /// Phase exp(i lambda) on the ancilla-1 branch.
  void ApplyAncillaPhase(double lambda);
  /// Phase exp(i phases[k]) on |k>, for both ancilla values.
  void ApplyPrincipalDiagonal(std::span<const double> phases);
  /// Unitary DFT over the principal index. `shape` splits the principal index
  /// row-major into axes (an empty shape means one axis of length 2^n).
  void ApplyDft(bool inverse, std::span<const int> shape = {});

 private:
  Register(int num_qubits, std::vector<Complex> amps)
      : num_qubits_(num_qubits), amps_(std::move(amps)) {}

  int num_qubits_;
  std::vector<Complex> amps_;
};

/// |<a|b>|, in [0, 1]; 1 iff the states agree up to a global phase.
double Fidelity(const Register& a, const Register& b);

/// Largest amplitude difference after removing the global phase of <a|b>.
double MaxPhaseAlignedDeviation(const Register& a, const Register& b);

}  // namespace nlsim
