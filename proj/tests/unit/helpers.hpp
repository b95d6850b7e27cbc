#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "nlsim/coupling.hpp"
#include "nlsim/statevec.hpp"

namespace testing {

using nlsim::Complex;

inline std::vector<Complex> RandomAmplitudes(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> normal;
  std::vector<Complex> a(dim);
  double norm = 0.0;
  for (auto& z : a) {
    z = {normal(rng), normal(rng)};
    norm += std::norm(z);
  }
  for (auto& z : a) z /= std::sqrt(norm);
  return a;
}

inline nlsim::CouplingMatrix RandomCoupling(std::mt19937_64& rng, std::size_t dim,
                                            double scale = 1.0) {
  std::uniform_real_distribution<double> uni(-scale, scale);
  nlsim::CouplingMatrix f(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = k; j < dim; ++j) f.Set(k, j, uni(rng));
  }
  return f;
}

/// a_k exp(-i eps sum_j f_kj |a_j|^2), written out independently of the library.
inline std::vector<Complex> ExpectedW(const std::vector<Complex>& a, const nlsim::CouplingMatrix& f,
                                      double eps) {
  std::vector<Complex> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    double v = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) v += f(k, j) * std::norm(a[j]);
    out[k] = a[k] * std::polar(1.0, -eps * v);
  }
  return out;
}

/// |<a|b>| for plain vectors.
inline double Overlap(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return std::abs(s);
}

/// max_k |a_k - e^{i theta} b_k| with theta aligning the global phase.
inline double AlignedDistance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(b[i]) * a[i];
  const Complex phase = std::abs(s) > 0 ? s / std::abs(s) : Complex(1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - phase * b[i]));
  return worst;
}

/// O(M^2) unitary DFT with kernel exp(-2 pi i j m / M) / sqrt(M).
inline std::vector<Complex> NaiveDft(const std::vector<Complex>& x, bool inverse) {
  const std::size_t m = x.size();
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<Complex> y(m);
  for (std::size_t q = 0; q < m; ++q) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double angle = sign * 2.0 * M_PI * static_cast<double>((q * j) % m) / static_cast<double>(m);
      s += x[j] * std::polar(1.0, angle);
    }
    y[q] = s / std::sqrt(static_cast<double>(m));
  }
  return y;
}

}  // namespace testing
