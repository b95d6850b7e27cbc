#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "nlsim/coupling.hpp"
#include "nlsim/grid.hpp"
#include "nlsim/problems.hpp"
#include "nlsim/statevec.hpp"

namespace nlsim {

/// Samples phi(x_k) in physical normalization sum |phi_k|^2 dx^dims = 1.
struct FieldState {
  std::vector<Complex> values;
  GridSpec grid;

  /// phi_k = a_k / sqrt(dx^dims) from the ancilla-0 branch.
  static FieldState FromRegister(const Register& r, const GridSpec& grid);
  Register ToRegister() const;

  double NormSquared() const;
  void Normalize();

  /// Columns x,re,im (1D) or x,y,re,im (2D), row-major site order.
  void WriteCsv(std::ostream& out) const;
  static FieldState ReadCsv(std::istream& in, const GridSpec& grid);
};

/// Fills V (size M) from the current density |phi_k|^2.
using PotentialRule = std::function<void(std::span<const double> density, std::span<double> v)>;

/// V = Phi * |phi|^2 as a circular convolution evaluated with the DFT
/// (kernel sampled at minimal-image separations).
PotentialRule KernelConvolutionPotential(const KernelSpec& kernel, const GridSpec& grid);
/// V_k = sum_j f_kj |phi_j|^2 dx^dims, i.e. the coupling acting on unit-norm
/// amplitudes.
PotentialRule CouplingPotential(const CouplingMatrix& f, const GridSpec& grid);
/// V_k = external_k + g |phi_k|^2 (external may be empty).
PotentialRule LocalPotential(std::vector<double> external, double g);

/// Strang splitting: half kinetic, full potential, half kinetic, with the
/// kinetic operator c_T p^2 applied exactly in Fourier space. The step count
/// is ceil(t / dt) so the final time is exactly t. Throws kNumerical when the
/// norm drifts by more than 1e-6.
FieldState SplitStepSolve(const FieldState& phi0, const PotentialRule& potential,
                          double kinetic_prefactor, double t, double dt);

struct ConvergenceReport {
  double coarse_difference = 0.0;  // |phi(dt) - phi(dt/2)|
  double fine_difference = 0.0;    // |phi(dt/2) - phi(dt/4)|
  double ratio = 0.0;              // -> 4 for a second-order method
};

/// Richardson-style self-convergence of SplitStepSolve at dt, dt/2, dt/4.
ConvergenceReport SplitStepSelfConvergence(const FieldState& phi0, const PotentialRule& potential,
                                           double kinetic_prefactor, double t, double dt);

/// Two spin components of a condensate at mean-field level. Each profile is
/// normalized; |alpha|^2 and |beta|^2 weight the interaction terms.
struct TwoModeState {
  FieldState phi1;
  FieldState phi2;
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
  double g11 = 0.0;
  double g22 = 0.0;
  double g12 = 0.0;
  std::vector<double> trap;
};

/// Evolves both profiles under
///   i d_t phi_i = (-1/2 d_x^2 + V + sum_j g_ij w_j |phi_j|^2) phi_i,
/// w_1 = |alpha|^2, w_2 = |beta|^2, by Strang splitting. `observer` (if set)
/// sees the state after every step together with the elapsed time.
TwoModeState Gpe2Solve(const TwoModeState& s, double t, double dt,
                       const std::function<void(const TwoModeState&, double)>& observer = {});

/// Mean-field energy of the two-mode state.
double TwoModeEnergy(const TwoModeState& s);

struct GroundStateOptions {
  double dtau = 0.01;
  int max_iterations = 400000;
  double tolerance = 1e-8;
  int check_every = 20;
};

struct GroundState {
  FieldState state;
  double chemical_potential = 0.0;
  double energy = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Ground state of H = c_T p^2 + V + g |phi|^2 by normalized imaginary-time
/// stepping, implicit in the kinetic term and explicit in the potential, with
/// the chemical-potential shift making exact eigenstates fixed points. Stops
/// when |H phi - mu phi| / |phi| < tolerance, throws kNumerical otherwise.
GroundState ImaginaryTimeGroundState(std::span<const double> trap, double g, const GridSpec& grid,
                                     double kinetic_prefactor,
                                     const GroundStateOptions& options = {});

struct BecPhaseReport {
  double measured_phase[2] = {0.0, 0.0};
  double predicted_phase[2] = {0.0, 0.0};
  double measured_relative = 0.0;
  double predicted_relative = 0.0;
  /// |measured - predicted| / |predicted| for the relative phase (absolute
  /// difference when the prediction is zero).
  double deviation = 0.0;
  /// g_ij * integral |phi_i|^2 |phi_j|^2 dx of the initial profiles.
  double g_eff[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
};

/// Harmonic-trap condensate: both profiles are the g = 0 ground state of
/// V = omega^2 x^2 / 2 on `points` sites spanning [-length/2, length/2).
struct BecSetup {
  int points = 128;
  double length = 20.0;
  double omega = 1.0;
  double alpha_weight = 0.36;  // |alpha|^2
  double g11 = 0.0;
  double g22 = 0.0;
  double g12 = 0.0;
};

TwoModeState PrepareHarmonicTwoModeState(const BecSetup& setup);

/// Evolves the two-mode state for time t and compares each mode's
/// accumulated phase arg<phi_i(0)|phi_i(t)> (unwrapped per step) with the
/// frozen-profile map phase_i = -t (mu0_i + sum_j g_eff_ij w_j), where mu0_i
/// is the single-particle energy of the initial profile.
BecPhaseReport BecPhaseCheck(const TwoModeState& s, double t, double dt);

}  // namespace nlsim
