#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlsim/coupling.hpp"
#include "nlsim/grid.hpp"
#include "nlsim/statevec.hpp"

namespace nlsim {

/// Even interaction kernel Phi evaluated at minimal-image separations.
struct KernelSpec {
  enum class Form { kConstant, kGaussian, kContact, kTabulated };

  Form form = Form::kConstant;
  double value = 0.0;       // constant: Phi == value
  double amplitude = 0.0;   // gaussian: amplitude * exp(-r^2 / (2 sigma^2))
  double sigma = 1.0;
  double g = 0.0;           // contact: discrete delta of strength g
  /// tabulated (1D only): Phi(d dx) for d = -D..D, odd length, must be even.
  std::vector<double> samples;

  static KernelSpec Constant(double c) {
    KernelSpec k;
    k.value = c;
    return k;
  }
  static KernelSpec Gaussian(double amplitude, double sigma) {
    KernelSpec k;
    k.form = Form::kGaussian;
    k.amplitude = amplitude;
    k.sigma = sigma;
    return k;
  }
  static KernelSpec Contact(double g) {
    KernelSpec k;
    k.form = Form::kContact;
    k.g = g;
    return k;
  }
  static KernelSpec Tabulated(std::vector<double> samples) {
    KernelSpec k;
    k.form = Form::kTabulated;
    k.samples = std::move(samples);
    return k;
  }

  /// Throws "kernel not even" for asymmetric tabulated samples.
  void Validate() const;

  /// Phi at the separation given in cells per axis (already minimal-image).
  /// The contact form is g / dx^dims at zero separation and 0 elsewhere.
  double Evaluate(std::span<const int> cells, const GridSpec& grid) const;

  /// JSON object: {"form":"constant","value":c}, {"form":"gaussian",
  /// "amplitude":A,"sigma":s}, {"form":"contact","g":g},
  /// {"form":"tabulated","samples":[...]}.
  static KernelSpec FromJson(const std::string& text);
  std::string ToJson() const;
};

/// How register amplitudes relate to the sampled field phi(x_k).
enum class AmplitudeConvention {
  /// a_k = phi(x_k) sqrt(dx^dims), sum |a_k|^2 = 1. Default everywhere.
  kUnitNorm,
  /// a_k = phi(x_k) literally, so the potential sum needs the dx^dims weight.
  kFieldSamples,
};

/// f_jk = Phi(r_min(j, k)) under kUnitNorm, Phi(r_min) dx^dims under
/// kFieldSamples; both give sum_j f_kj |a_j|^2 = (Phi * |phi|^2)(x_k).
CouplingMatrix HartreeCoupling(const KernelSpec& kernel, const GridSpec& grid,
                               AmplitudeConvention convention = AmplitudeConvention::kUnitNorm);

/// Diagonal f_kk = g / dx^dims (contact interaction, unit-norm amplitudes).
CouplingMatrix GrossPitaevskiiCoupling(double g, const GridSpec& grid);

/// Linearized quantum-pressure stencil around density rho0:
/// V_k = 1/(4 rho0 dx^2) sum_i (rho_{k+e_i} + rho_{k-e_i} - 2 rho_k),
/// rho_k = |a_k|^2 / dx^dims, periodic. Every row sums to zero.
CouplingMatrix NavierStokesCoupling(double rho0, const GridSpec& grid);

struct MadelungFields {
  std::vector<double> rho;
  /// velocity[axis][k]; NaN where rho is below the threshold.
  std::vector<std::vector<double>> velocity;
  std::vector<bool> defined;
  double threshold = 0.0;
};

/// rho_k = |a_k|^2 / dx^dims and u = grad(varphi) for phi = sqrt(rho)
/// exp(-i varphi), taken from the centered-difference probability current
/// u = -Im(conj(phi) grad phi) / rho. Sites with rho < 1e-8 / dx^dims are
/// flagged undefined.
MadelungFields ComputeMadelungFields(const Register& r, const GridSpec& grid);

}  // namespace nlsim
