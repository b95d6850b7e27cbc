#include "nlsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "nlsim/fft.hpp"
#include "nlsim/textio.hpp"

namespace nlsim {
namespace {

// c_T |p|^2 for every Fourier index of the grid.
std::vector<double> KineticEnergies(const GridSpec& grid, double prefactor) {
  std::vector<std::vector<double>> p;
  for (int axis = 0; axis < grid.dims(); ++axis) p.push_back(grid.Wavenumbers(axis));
  std::vector<double> e(grid.size());
  for (std::size_t m = 0; m < e.size(); ++m) {
    double p2 = 0.0;
    for (int axis = 0; axis < grid.dims(); ++axis) {
      const double q = p[axis][grid.axis_index(m, axis)];
      p2 += q * q;
    }
    e[m] = prefactor * p2;
  }
  return e;
}

class KineticPropagator {
 public:
  KineticPropagator(const GridSpec& grid, double prefactor, double h)
      : shape_(grid.points), factors_(grid.size()) {
    const auto e = KineticEnergies(grid, prefactor);
    for (std::size_t m = 0; m < e.size(); ++m) factors_[m] = std::polar(1.0, -h * e[m]);
  }

  void Apply(std::vector<Complex>& psi) const {
    UnitaryDft(psi, shape_, 1, false);
    for (std::size_t m = 0; m < psi.size(); ++m) psi[m] *= factors_[m];
    UnitaryDft(psi, shape_, 1, true);
  }

 private:
  std::vector<int> shape_;
  std::vector<Complex> factors_;
};

double WeightedNorm2(const std::vector<Complex>& v, double vol) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s * vol;
}

double Distance(const FieldState& a, const FieldState& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) s += std::norm(a.values[k] - b.values[k]);
  return std::sqrt(s * a.grid.cell_volume());
}

std::size_t StepCount(double t, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) Fail(ErrorCode::kInvalidArgument, "dt must be > 0");
  if (!(t >= 0.0) || !std::isfinite(t)) Fail(ErrorCode::kInvalidArgument, "t must be >= 0");
  return static_cast<std::size_t>(std::ceil(t / dt - 1e-9));
}

void CheckNorm(const std::vector<Complex>& v, double vol, double reference) {
  const double drift = std::abs(WeightedNorm2(v, vol) - reference);
  if (!(drift <= 1e-6)) {
    Fail(ErrorCode::kNumerical, "split-step norm drift " + FormatDouble(drift) +
                                    " exceeds 1e-6; use a smaller dt");
  }
}

}  // namespace

FieldState FieldState::FromRegister(const Register& r, const GridSpec& grid) {
  grid.Validate();
  if (r.principal_dim() != grid.size()) {
    Fail(ErrorCode::kInvalidArgument, "register size does not match grid");
  }
  FieldState s{r.PrincipalAmplitudes(), grid};
  const double scale = 1.0 / std::sqrt(grid.cell_volume());
  for (auto& z : s.values) z *= scale;
  return s;
}

Register FieldState::ToRegister() const { return Register::FromAmplitudes(values); }

double FieldState::NormSquared() const { return WeightedNorm2(values, grid.cell_volume()); }

void FieldState::Normalize() {
  const double n2 = NormSquared();
  if (!(n2 > 0.0)) Fail(ErrorCode::kInvalidArgument, "cannot normalize zero field");
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& z : values) z *= scale;
}

void FieldState::WriteCsv(std::ostream& out) const {
  out << (grid.dims() == 1 ? "x,re,im\n" : "x,y,re,im\n");
  for (std::size_t k = 0; k < values.size(); ++k) {
    for (int axis = 0; axis < grid.dims(); ++axis) out << FormatDouble(grid.coordinate(k, axis)) << ',';
    out << FormatDouble(values[k].real()) << ',' << FormatDouble(values[k].imag()) << '\n';
  }
}

FieldState FieldState::ReadCsv(std::istream& in, const GridSpec& grid) {
  grid.Validate();
  FieldState s{{}, grid};
  std::string line;
  const std::size_t columns = static_cast<std::size_t>(grid.dims()) + 2;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    const auto fields = SplitFields(line, ',');
    if (fields.size() != columns) {
      Fail(ErrorCode::kInvalidArgument, "field csv line needs " + std::to_string(columns) + " columns");
    }
    s.values.emplace_back(ParseDouble(fields[columns - 2]), ParseDouble(fields[columns - 1]));
  }
  if (s.values.size() != grid.size()) {
    Fail(ErrorCode::kInvalidArgument, "field csv has " + std::to_string(s.values.size()) +
                                          " samples, grid needs " + std::to_string(grid.size()));
  }
  return s;
}

PotentialRule KernelConvolutionPotential(const KernelSpec& kernel, const GridSpec& grid) {
  grid.Validate();
  kernel.Validate();
  const std::size_t m = grid.size();
  std::vector<Complex> spectrum(m);
  std::vector<int> cells(static_cast<std::size_t>(grid.dims()));
  for (std::size_t d = 0; d < m; ++d) {
    for (int axis = 0; axis < grid.dims(); ++axis) {
      cells[axis] = GridSpec::MinimalImage(grid.axis_index(d, axis), grid.points[axis]);
    }
    spectrum[d] = kernel.Evaluate(cells, grid);
  }
  UnitaryDft(spectrum, grid.points, 1, false);
  // Unitary transforms: conv = sqrt(M) * IDFT(DFT(kernel) * DFT(density)).
  const double scale = std::sqrt(static_cast<double>(m)) * grid.cell_volume();
  for (auto& z : spectrum) z *= scale;
  return [spectrum, shape = grid.points](std::span<const double> density, std::span<double> v) {
    std::vector<Complex> work(density.begin(), density.end());
    UnitaryDft(work, shape, 1, false);
    for (std::size_t i = 0; i < work.size(); ++i) work[i] *= spectrum[i];
    UnitaryDft(work, shape, 1, true);
    for (std::size_t i = 0; i < work.size(); ++i) v[i] = work[i].real();
  };
}

PotentialRule CouplingPotential(const CouplingMatrix& f, const GridSpec& grid) {
  if (f.dim() != grid.size()) Fail(ErrorCode::kInvalidArgument, "coupling does not match grid");
  const double vol = grid.cell_volume();
  return [f, vol](std::span<const double> density, std::span<double> v) {
    std::vector<double> weights(density.begin(), density.end());
    for (double& w : weights) w *= vol;
    const auto pot = f.Potential(weights);
    std::copy(pot.begin(), pot.end(), v.begin());
  };
}

PotentialRule LocalPotential(std::vector<double> external, double g) {
  return [external = std::move(external), g](std::span<const double> density, std::span<double> v) {
    for (std::size_t k = 0; k < density.size(); ++k) {
      v[k] = (external.empty() ? 0.0 : external[k]) + g * density[k];
    }
  };
}

FieldState SplitStepSolve(const FieldState& phi0, const PotentialRule& potential,
                          double kinetic_prefactor, double t, double dt) {
  phi0.grid.Validate();
  const std::size_t steps = StepCount(t, dt);
  FieldState phi = phi0;
  if (steps == 0) return phi;
  const double h = t / static_cast<double>(steps);
  const double vol = phi.grid.cell_volume();
  const double reference = phi.NormSquared();
  const KineticPropagator half(phi.grid, kinetic_prefactor, h / 2.0);
  const KineticPropagator full(phi.grid, kinetic_prefactor, h);
  std::vector<double> density(phi.values.size());
  std::vector<double> v(phi.values.size());

  half.Apply(phi.values);
  for (std::size_t step = 0; step < steps; ++step) {
    for (std::size_t k = 0; k < density.size(); ++k) density[k] = std::norm(phi.values[k]);
    potential(density, v);
    for (std::size_t k = 0; k < v.size(); ++k) phi.values[k] *= std::polar(1.0, -h * v[k]);
    // Adjacent half steps merge into one full kinetic step.
    (step + 1 == steps ? half : full).Apply(phi.values);
    CheckNorm(phi.values, vol, reference);
  }
  return phi;
}

ConvergenceReport SplitStepSelfConvergence(const FieldState& phi0, const PotentialRule& potential,
                                           double kinetic_prefactor, double t, double dt) {
  const FieldState a = SplitStepSolve(phi0, potential, kinetic_prefactor, t, dt);
  const FieldState b = SplitStepSolve(phi0, potential, kinetic_prefactor, t, dt / 2.0);
  const FieldState c = SplitStepSolve(phi0, potential, kinetic_prefactor, t, dt / 4.0);
  ConvergenceReport r;
  r.coarse_difference = Distance(a, b);
  r.fine_difference = Distance(b, c);
  r.ratio = r.coarse_difference / r.fine_difference;
  return r;
}

namespace {

double Weight(Complex c) { return std::norm(c); }

void TwoModePotentials(const TwoModeState& s, std::vector<double>& v1, std::vector<double>& v2) {
  const double w1 = Weight(s.alpha);
  const double w2 = Weight(s.beta);
  for (std::size_t k = 0; k < v1.size(); ++k) {
    const double d1 = std::norm(s.phi1.values[k]);
    const double d2 = std::norm(s.phi2.values[k]);
    const double trap = s.trap.empty() ? 0.0 : s.trap[k];
    v1[k] = trap + s.g11 * w1 * d1 + s.g12 * w2 * d2;
    v2[k] = trap + s.g12 * w1 * d1 + s.g22 * w2 * d2;
  }
}

void ValidateTwoMode(const TwoModeState& s) {
  s.phi1.grid.Validate();
  const std::size_t m = s.phi1.grid.size();
  if (s.phi1.values.size() != m || s.phi2.values.size() != m ||
      s.phi2.grid.points != s.phi1.grid.points || s.phi2.grid.dx != s.phi1.grid.dx) {
    Fail(ErrorCode::kInvalidArgument, "two-mode profiles must share one grid");
  }
  if (!s.trap.empty() && s.trap.size() != m) {
    Fail(ErrorCode::kInvalidArgument, "trap size does not match grid");
  }
  if (std::abs(Weight(s.alpha) + Weight(s.beta) - 1.0) > 1e-10) {
    Fail(ErrorCode::kInvalidArgument, "mode weights must satisfy |alpha|^2 + |beta|^2 = 1");
  }
}

// <phi|T + V|phi> for the profile alone (T = p^2 / 2).
double SingleParticleEnergy(const FieldState& phi, std::span<const double> trap) {
  const double vol = phi.grid.cell_volume();
  std::vector<Complex> work = phi.values;
  UnitaryDft(work, phi.grid.points, 1, false);
  const auto e = KineticEnergies(phi.grid, 0.5);
  double kinetic = 0.0;
  for (std::size_t m = 0; m < work.size(); ++m) kinetic += e[m] * std::norm(work[m]);
  double pot = 0.0;
  for (std::size_t k = 0; k < phi.values.size(); ++k) {
    pot += (trap.empty() ? 0.0 : trap[k]) * std::norm(phi.values[k]);
  }
  return (kinetic + pot) * vol;
}

double Overlap4(const FieldState& a, const FieldState& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    s += std::norm(a.values[k]) * std::norm(b.values[k]);
  }
  return s * a.grid.cell_volume();
}

Complex InnerProduct(const FieldState& a, const FieldState& b) {
  Complex s = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) s += std::conj(a.values[k]) * b.values[k];
  return s * a.grid.cell_volume();
}

}  // namespace

TwoModeState Gpe2Solve(const TwoModeState& s0, double t, double dt,
                       const std::function<void(const TwoModeState&, double)>& observer) {
  ValidateTwoMode(s0);
  const std::size_t steps = StepCount(t, dt);
  TwoModeState s = s0;
  if (steps == 0) return s;
  const double h = t / static_cast<double>(steps);
  const GridSpec& grid = s.phi1.grid;
  const double vol = grid.cell_volume();
  const double ref1 = s.phi1.NormSquared();
  const double ref2 = s.phi2.NormSquared();
  const KineticPropagator half(grid, 0.5, h / 2.0);
  std::vector<double> v1(grid.size());
  std::vector<double> v2(grid.size());
  for (std::size_t step = 0; step < steps; ++step) {
    half.Apply(s.phi1.values);
    half.Apply(s.phi2.values);
    TwoModePotentials(s, v1, v2);
    for (std::size_t k = 0; k < v1.size(); ++k) {
      s.phi1.values[k] *= std::polar(1.0, -h * v1[k]);
      s.phi2.values[k] *= std::polar(1.0, -h * v2[k]);
    }
    half.Apply(s.phi1.values);
    half.Apply(s.phi2.values);
    CheckNorm(s.phi1.values, vol, ref1);
    CheckNorm(s.phi2.values, vol, ref2);
    if (observer) observer(s, h * static_cast<double>(step + 1));
  }
  return s;
}

double TwoModeEnergy(const TwoModeState& s) {
  ValidateTwoMode(s);
  const double w1 = Weight(s.alpha);
  const double w2 = Weight(s.beta);
  double e = w1 * SingleParticleEnergy(s.phi1, s.trap) + w2 * SingleParticleEnergy(s.phi2, s.trap);
  e += 0.5 * (s.g11 * w1 * w1 * Overlap4(s.phi1, s.phi1) +
              s.g22 * w2 * w2 * Overlap4(s.phi2, s.phi2) +
              2.0 * s.g12 * w1 * w2 * Overlap4(s.phi1, s.phi2));
  return e;
}

GroundState ImaginaryTimeGroundState(std::span<const double> trap, double g, const GridSpec& grid,
                                     double kinetic_prefactor, const GroundStateOptions& options) {
  grid.Validate();
  const std::size_t m = grid.size();
  if (!trap.empty() && trap.size() != m) {
    Fail(ErrorCode::kInvalidArgument, "trap size does not match grid");
  }
  for (double v : trap) {
    if (!std::isfinite(v)) Fail(ErrorCode::kInvalidArgument, "trap must be finite");
  }
  const double vol = grid.cell_volume();
  double vmin = 0.0;
  double vmax = 0.0;
  std::size_t argmin = 0;
  if (!trap.empty()) {
    argmin = static_cast<std::size_t>(std::min_element(trap.begin(), trap.end()) - trap.begin());
    vmin = trap[argmin];
    vmax = *std::max_element(trap.begin(), trap.end());
  }
  auto trap_at = [&](std::size_t k) { return trap.empty() ? 0.0 : trap[k]; };

  // Gaussian around the trap minimum on a small uniform floor.
  GroundState out{{std::vector<Complex>(m), grid}};
  auto& phi = out.state.values;
  for (std::size_t k = 0; k < m; ++k) {
    double r2 = 0.0;
    for (int axis = 0; axis < grid.dims(); ++axis) {
      const int d = GridSpec::MinimalImage(grid.axis_index(k, axis) - grid.axis_index(argmin, axis),
                                           grid.points[axis]);
      const double len = grid.points[axis] * grid.dx / 8.0;
      r2 += (d * grid.dx) * (d * grid.dx) / (len * len);
    }
    phi[k] = std::exp(-0.5 * r2) + 0.05;
  }
  out.state.Normalize();

  const auto kinetic = KineticEnergies(grid, kinetic_prefactor);
  std::vector<Complex> work(m);
  std::vector<double> potential(m);

  auto apply_h = [&](const std::vector<Complex>& in, std::vector<Complex>& hphi) {
    hphi = in;
    UnitaryDft(hphi, grid.points, 1, false);
    for (std::size_t q = 0; q < m; ++q) hphi[q] *= kinetic[q];
    UnitaryDft(hphi, grid.points, 1, true);
    for (std::size_t k = 0; k < m; ++k) hphi[k] += potential[k] * in[k];
  };
  auto refresh_potential = [&]() {
    for (std::size_t k = 0; k < m; ++k) potential[k] = trap_at(k) + g * std::norm(phi[k]);
  };
  auto chemical_potential = [&](const std::vector<Complex>& hphi) {
    double mu = 0.0;
    for (std::size_t k = 0; k < m; ++k) mu += std::real(std::conj(phi[k]) * hphi[k]);
    return mu * vol;
  };

  double max_density = 0.0;
  for (const auto& z : phi) max_density = std::max(max_density, std::norm(z));
  const double spread = (vmax - vmin) + std::abs(g) * 4.0 * max_density;
  const double dtau = spread > 0.0 ? std::min(options.dtau, 0.9 / spread) : options.dtau;

  std::vector<Complex> hphi(m);
  for (int it = 1; it <= options.max_iterations; ++it) {
    refresh_potential();
    apply_h(phi, hphi);
    const double mu = chemical_potential(hphi);
    if ((it - 1) % options.check_every == 0) {
      double res = 0.0;
      for (std::size_t k = 0; k < m; ++k) res += std::norm(hphi[k] - mu * phi[k]);
      out.residual = std::sqrt(res * vol);
      out.chemical_potential = mu;
      out.iterations = it - 1;
      if (out.residual < options.tolerance) break;
    }
    if (it == options.max_iterations) {
      Fail(ErrorCode::kNumerical, "imaginary-time iteration did not converge, residual " +
                                      FormatDouble(out.residual));
    }
    // (1 + dtau T) phi' = phi - dtau (V + g|phi|^2 - mu) phi
    for (std::size_t k = 0; k < m; ++k) work[k] = phi[k] - dtau * (potential[k] - mu) * phi[k];
    UnitaryDft(work, grid.points, 1, false);
    for (std::size_t q = 0; q < m; ++q) work[q] /= 1.0 + dtau * kinetic[q];
    UnitaryDft(work, grid.points, 1, true);
    phi = work;
    out.state.Normalize();
  }

  refresh_potential();
  apply_h(phi, hphi);
  out.chemical_potential = chemical_potential(hphi);
  double interaction = 0.0;
  for (std::size_t k = 0; k < m; ++k) interaction += std::norm(phi[k]) * std::norm(phi[k]);
  out.energy = out.chemical_potential - 0.5 * g * interaction * vol;
  return out;
}

TwoModeState PrepareHarmonicTwoModeState(const BecSetup& setup) {
  if (!(setup.length > 0.0) || !(setup.omega > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "trap length and frequency must be positive");
  }
  if (!(setup.alpha_weight >= 0.0 && setup.alpha_weight <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "|alpha|^2 must lie in [0, 1]");
  }
  const GridSpec grid = GridSpec::Line(setup.points, setup.length / setup.points, -setup.length / 2.0);
  std::vector<double> trap(grid.size());
  for (std::size_t k = 0; k < trap.size(); ++k) {
    const double x = grid.coordinate(k, 0);
    trap[k] = 0.5 * setup.omega * setup.omega * x * x;
  }
  const GroundState ground = ImaginaryTimeGroundState(trap, 0.0, grid, 0.5);
  TwoModeState s;
  s.phi1 = ground.state;
  s.phi2 = ground.state;
  s.alpha = std::sqrt(setup.alpha_weight);
  s.beta = std::sqrt(1.0 - setup.alpha_weight);
  s.g11 = setup.g11;
  s.g22 = setup.g22;
  s.g12 = setup.g12;
  s.trap = std::move(trap);
  return s;
}

BecPhaseReport BecPhaseCheck(const TwoModeState& s, double t, double dt) {
  ValidateTwoMode(s);
  BecPhaseReport r;
  const double w[2] = {Weight(s.alpha), Weight(s.beta)};
  const double g[2][2] = {{s.g11, s.g12}, {s.g12, s.g22}};
  const FieldState* profile[2] = {&s.phi1, &s.phi2};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r.g_eff[i][j] = g[i][j] * Overlap4(*profile[i], *profile[j]);
  }
  for (int i = 0; i < 2; ++i) {
    const double mu0 = SingleParticleEnergy(*profile[i], s.trap);
    r.predicted_phase[i] = -t * (mu0 + r.g_eff[i][0] * w[0] + r.g_eff[i][1] * w[1]);
  }

  double unwrapped[2] = {0.0, 0.0};
  double last[2] = {0.0, 0.0};
  auto observe = [&](const TwoModeState& now, double) {
    const FieldState* current[2] = {&now.phi1, &now.phi2};
    for (int i = 0; i < 2; ++i) {
      const double a = std::arg(InnerProduct(*profile[i], *current[i]));
      double delta = a - last[i];
      delta -= 2.0 * kPi * std::round(delta / (2.0 * kPi));
      unwrapped[i] += delta;
      last[i] = a;
    }
  };
  Gpe2Solve(s, t, dt, observe);
  for (int i = 0; i < 2; ++i) r.measured_phase[i] = unwrapped[i];

  r.measured_relative = r.measured_phase[0] - r.measured_phase[1];
  r.predicted_relative = r.predicted_phase[0] - r.predicted_phase[1];
  const double diff = std::abs(r.measured_relative - r.predicted_relative);
  r.deviation = r.predicted_relative != 0.0 ? diff / std::abs(r.predicted_relative) : diff;
  return r;
}

}  // namespace nlsim
