#include "nlsim/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlsim/fft.hpp"

namespace nlsim {

Register Register::FromAmplitudes(std::span<const Complex> principal) {
  if (!IsPowerOfTwo(principal.size()) || principal.size() < 2) {
    Fail(ErrorCode::kInvalidArgument,
         "amplitude count must be a power of two >= 2, got " +
             std::to_string(principal.size()));
  }
  double norm2 = 0.0;
  for (const auto& a : principal) norm2 += std::norm(a);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    Fail(ErrorCode::kInvalidArgument, "unnormalizable amplitude vector");
  }
  const double scale = 1.0 / std::sqrt(norm2);
  std::vector<Complex> amps(2 * principal.size());
  for (std::size_t k = 0; k < principal.size(); ++k) amps[2 * k] = principal[k] * scale;
  return Register(Log2Exact(principal.size()), std::move(amps));
}

Register Register::FromFlat(std::vector<Complex> amps) {
  if (!IsPowerOfTwo(amps.size()) || amps.size() < 4) {
    Fail(ErrorCode::kInvalidArgument, "flat register length must be 2^(n+1), n >= 1");
  }
  double norm2 = 0.0;
  for (const auto& a : amps) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > kExactTol) {
    Fail(ErrorCode::kInvalidArgument, "flat register is not normalized");
  }
  const int n = Log2Exact(amps.size()) - 1;
  return Register(n, std::move(amps));
}

std::vector<Complex> Register::PrincipalAmplitudes() const {
  std::vector<Complex> out(principal_dim());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = amps_[2 * k];
  return out;
}

double Register::NormSquared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

BranchWeights Register::branch_weights() const {
  // Sequential sums in index order keep the nonlinear phases bit-reproducible.
  BranchWeights w;
  for (std::size_t k = 0; k < principal_dim(); ++k) {
    w.p0 += std::norm(amps_[2 * k]);
    w.p1 += std::norm(amps_[2 * k + 1]);
  }
  return w;
}

bool Register::AncillaClean(double tol) const { return branch_weights().p1 <= tol; }

void Register::ApplyMcx(std::size_t k) {
  if (k >= principal_dim()) {
    Fail(ErrorCode::kOutOfRange, "MCX target " + std::to_string(k) +
                                     " outside principal range");
  }
  std::swap(amps_[2 * k], amps_[2 * k + 1]);
}

void Register::ApplyNonlinear(double gamma) {
  const BranchWeights w = branch_weights();
  const Complex phase0 = std::polar(1.0, gamma * w.p0);
  const Complex phase1 = std::polar(1.0, gamma * w.p1);
  for (std::size_t k = 0; k < principal_dim(); ++k) {
    amps_[2 * k] *= phase0;
    amps_[2 * k + 1] *= phase1;
  }
}

void Register::ApplyAncillaPhase(double lambda) {
  const Complex phase = std::polar(1.0, lambda);
  for (std::size_t k = 0; k < principal_dim(); ++k) amps_[2 * k + 1] *= phase;
}

void Register::ApplyPrincipalDiagonal(std::span<const double> phases) {
  if (phases.size() != principal_dim()) {
    Fail(ErrorCode::kInvalidArgument, "diagonal phase count does not match register");
  }
  for (std::size_t k = 0; k < phases.size(); ++k) {
    const Complex phase = std::polar(1.0, phases[k]);
    amps_[2 * k] *= phase;
    amps_[2 * k + 1] *= phase;
  }
}

void Register::ApplyDft(bool inverse, std::span<const int> shape) {
  const int full[1] = {static_cast<int>(principal_dim())};
  if (shape.empty()) shape = full;
  UnitaryDft(amps_, shape, 2, inverse);
}

namespace {

Complex Overlap(const Register& a, const Register& b) {
  if (a.num_qubits() != b.num_qubits()) {
    Fail(ErrorCode::kInvalidArgument, "registers have different sizes");
  }
  Complex s = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

}  // namespace

double Fidelity(const Register& a, const Register& b) {
  return std::min(1.0, std::abs(Overlap(a, b)));
}

double MaxPhaseAlignedDeviation(const Register& a, const Register& b) {
  const Complex ov = Overlap(a, b);
  const Complex align = std::abs(ov) > 0.0 ? std::conj(ov) / std::abs(ov) : 1.0;
  double worst = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::abs(x[i] - y[i] * align));
  }
  return worst;
}

}  // namespace nlsim
