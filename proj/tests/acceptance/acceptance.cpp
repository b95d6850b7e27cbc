// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nlsim/evolution.hpp"
#include "nlsim/nlcompiler.hpp"
#include "nlsim/oracle.hpp"
#include "nlsim/problems.hpp"
#include "nlsim/statevec.hpp"

using nlsim::Complex;
using nlsim::CouplingMatrix;
using nlsim::GridSpec;
using nlsim::KernelSpec;
using nlsim::KineticSpec;
using nlsim::Register;
using nlsim::StepMode;
using nlsim::TrotterPlan;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double g_max_norm_drift = 0.0;

nlsim::Trajectory Run(const Register& r0, const CouplingMatrix& f, const KineticSpec& spec, double t,
                      double eps, StepMode mode = StepMode::kCompiled) {
  auto traj = nlsim::Evolve(r0, f, spec, TrotterPlan::ForDuration(t, eps, mode));
  g_max_norm_drift = std::max(g_max_norm_drift, traj.max_norm_drift);
  return traj;
}

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

const char* YesNo(bool v) { return v ? "yes" : "no"; }

std::vector<Complex> RandomAmplitudes(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> normal;
  std::vector<Complex> a(dim);
  for (auto& z : a) z = {normal(rng), normal(rng)};
  return a;
}

CouplingMatrix RandomCoupling(std::mt19937_64& rng, std::size_t dim, double scale) {
  std::uniform_real_distribution<double> uni(-scale, scale);
  CouplingMatrix f(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = k; j < dim; ++j) f.Set(k, j, uni(rng));
  }
  return f;
}

std::vector<Complex> GaussianPacket(const GridSpec& g, double center, double width, double momentum) {
  std::vector<Complex> a(g.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double x = g.coordinate(k, 0) - center;
    a[k] = std::exp(-x * x / (2.0 * width * width)) * std::polar(1.0, momentum * x);
  }
  return a;
}

// 1. Compiled W against the direct diagonal map on random instances.
Outcome CompilerOracleEquivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> eps_dist(1e-3, 0.3);
  std::uniform_int_distribution<int> n_dist(1, 5);
  double worst = 1.0;
  for (int c = 0; c < 100; ++c) {
    const std::size_t dim = std::size_t{1} << n_dist(rng);
    const auto a = RandomAmplitudes(rng, dim);
    const auto f = RandomCoupling(rng, dim, 5.0);
    const double eps = eps_dist(rng);
    auto compiled = Register::FromAmplitudes(a);
    nlsim::CompileW(f, eps).Apply(compiled);
    auto direct = Register::FromAmplitudes(a);
    nlsim::ApplyWDirect(direct, f, eps);
    worst = std::min(worst, nlsim::Fidelity(compiled, direct));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst >= 1.0 - 1e-12 && secs < 60.0,
          Fmt("min fidelity 1-%.2e over 100 cases (need <= 1e-12), %.2fs (need < 60s)", 1.0 - worst, secs)};
}

// 2. Trotter convergence against the split-step oracle.
Outcome TrotterOrder() {
  const GridSpec g = GridSpec::Line(64, 0.25, -8.0);
  const KernelSpec kernel = KernelSpec::Gaussian(5.0, 1.0);
  const auto f = nlsim::HartreeCoupling(kernel, g);
  const KineticSpec spec{0.5, g};
  const auto r0 = Register::FromAmplitudes(GaussianPacket(g, 0.0, 1.0, 1.0));
  const auto phi0 = nlsim::FieldState::FromRegister(r0, g);
  const auto rule = nlsim::KernelConvolutionPotential(kernel, g);
  const double t = 1.0;

  std::vector<double> infidelity, distance;
  for (int h = 0; h < 4; ++h) {
    const double eps = 0.1 / std::pow(2.0, h);
    const auto traj = Run(r0, f, spec, t, eps);
    const auto oracle = nlsim::SplitStepSolve(phi0, rule, 0.5, t, eps / 20.0).ToRegister();
    infidelity.push_back(1.0 - nlsim::Fidelity(*traj.final_state, oracle));
    distance.push_back(std::sqrt(std::max(0.0, 1.0 - std::pow(nlsim::Fidelity(*traj.final_state, oracle), 2))));
  }
  bool pass = true;
  std::string ratios, dist_ratios;
  for (std::size_t i = 1; i < infidelity.size(); ++i) {
    const double r = infidelity[i - 1] / infidelity[i];
    pass = pass && r >= 1.6 && r <= 2.6;
    ratios += Fmt(" %.3f", r);
    dist_ratios += Fmt(" %.3f", distance[i - 1] / distance[i]);
  }
  return {pass, "infidelity ratios" + ratios + " (need [1.6, 2.6]); state-distance ratios" +
                    dist_ratios};
}

// 4. Gate counts: instrumented versus closed form, dense growth.
Outcome GateCounts() {
  bool pass = true;
  std::mt19937_64 rng(4);
  std::string ratios;
  double previous = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    CouplingMatrix f(dim);
    std::uniform_real_distribution<double> uni(0.5, 1.5);
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t j = k; j < dim; ++j) f.Set(k, j, uni(rng));
    }
    const GridSpec g = GridSpec::Line(static_cast<int>(dim), 0.5);
    const auto traj = Run(Register::FromAmplitudes(RandomAmplitudes(rng, dim)), f, {0.5, g}, 0.3, 0.1);
    const auto dense = nlsim::EstimateDenseResources(n, traj.tally.steps);
    pass = pass && traj.tally.steps == 3;
    pass = pass && traj.measured.ToGateCounts(n) == traj.tally.total();
    pass = pass && traj.tally.total() == dense.total();
    const std::uint64_t big_n = dim - 1;
    pass = pass && dense.per_step.nonlinear == (big_n + 1) * (big_n + 2) / 2;
    pass = pass && dense.per_step.mcx == 2 * (big_n + 1) + 2 * (big_n + 1) * big_n;
    const double now = static_cast<double>(dense.per_step.nonlinear);
    if (n > 1) {
      const double ratio = now / previous;
      ratios += Fmt(" %.3f", ratio);
      pass = pass && ratio < 4.0 && ratio > 3.0;
    }
    previous = now;
  }
  const double last = previous / static_cast<double>(nlsim::EstimateDenseResources(5, 1).per_step.nonlinear);
  pass = pass && std::abs(last - 4.0) < 0.1;
  return {pass, "instrumented == closed form for n=1..6; nonlinear growth ratios" + ratios};
}

// 5. Contact limit of the Hartree coupling.
Outcome ContactLimit() {
  const GridSpec g = GridSpec::Line(64, 0.25);
  const double coupling = 1.3;
  const auto hartree = nlsim::HartreeCoupling(KernelSpec::Contact(coupling), g);
  const auto gp = nlsim::GrossPitaevskiiCoupling(coupling, g);
  const bool identical_f = hartree == gp;

  const KineticSpec spec{0.5, g};
  const auto r0 = Register::FromAmplitudes(GaussianPacket(g, 1.0, 1.5, 0.5));
  const auto a = Run(r0, hartree, spec, 1.0, 0.01);
  const auto b = Run(r0, gp, spec, 1.0, 0.01);
  const auto fa = a.final_state->amplitudes();
  const auto fb = b.final_state->amplitudes();
  const bool identical_run = std::equal(fa.begin(), fa.end(), fb.begin());

  const auto uniform = Register::FromAmplitudes(std::vector<Complex>(64, 1.0));
  const auto frozen = Run(uniform, hartree, spec, 10.0, 0.01);
  double worst = 0.0;
  for (const auto& z : frozen.final_state->PrincipalAmplitudes()) {
    worst = std::max(worst, std::abs(std::norm(z) - 1.0 / 64.0));
  }
  const bool steps_ok = frozen.tally.steps == 1000;
  return {identical_f && identical_run && steps_ok && worst < 1e-10,
          std::string("identical f: ") + YesNo(identical_f) + ", bitwise identical runs: " +
              YesNo(identical_run) +
              Fmt(", uniform density drift %.2e over 1000 steps (need < 1e-10)", worst)};
}

// 6. Navier-Stokes stencil.
Outcome NavierStokes() {
  bool rows_zero = true;
  double worst_infidelity = 0.0;
  for (const auto& g : {GridSpec::Line(64, 0.25), GridSpec::Plane(8, 8, 0.5)}) {
    const auto f = nlsim::NavierStokesCoupling(0.8, g);
    for (std::size_t k = 0; k < f.dim(); ++k) rows_zero = rows_zero && f.RowSum(k) == 0.0;
    const KineticSpec spec{0.5, g};
    const auto r0 = Register::FromAmplitudes(std::vector<Complex>(g.size(), 1.0));
    const auto with = Run(r0, f, spec, 10.0, 0.01);
    const auto without = Run(r0, CouplingMatrix(g.size()), spec, 10.0, 0.01);
    worst_infidelity = std::max(worst_infidelity, 1.0 - nlsim::Fidelity(*with.final_state, *without.final_state));
  }

  const GridSpec g = GridSpec::Line(64, 0.25, -8.0);
  const double kappa = 2.0 * nlsim::kPi * 2.0 / (64 * 0.25);
  std::vector<Complex> wave(64);
  for (std::size_t k = 0; k < 64; ++k) wave[k] = std::polar(1.0, -kappa * g.coordinate(k, 0));
  const auto fields = nlsim::ComputeMadelungFields(Register::FromAmplitudes(wave), g);
  double worst_rel = 0.0;
  for (std::size_t k = 0; k < 64; ++k) {
    worst_rel = fields.defined[k] ? std::max(worst_rel, std::abs(fields.velocity[0][k] - kappa) / kappa) : 1.0;
  }
  return {rows_zero && worst_infidelity <= 1e-10 && worst_rel < 0.02,
          std::string("row sums exactly zero: ") + YesNo(rows_zero) +
              Fmt(", with/without infidelity %.2e (need <= 1e-10), velocity rel. error %.2e (need < 0.02)",
                  worst_infidelity, worst_rel)};
}

// 7. Two-mode phase map sweep.
Outcome BecPhaseMap() {
  std::vector<double> deviation;
  std::string table;
  for (double s : {0.4, 0.2, 0.1}) {
    nlsim::BecSetup setup;
    setup.g11 = s;
    setup.g22 = s;
    setup.g12 = 0.5 * s;
    const auto state = nlsim::PrepareHarmonicTwoModeState(setup);
    const auto rep = nlsim::BecPhaseCheck(state, 1.0, 1e-3);
    deviation.push_back(rep.deviation);
    table += Fmt(" g=%.2f:%.3e", s, rep.deviation);
  }
  const bool monotone = deviation[0] > deviation[1] && deviation[1] > deviation[2];
  return {monotone && deviation.back() < 0.01,
          "relative-phase deviation" + table + " (need < 1e-2 at smallest, strictly decreasing)"};
}

// 8. Oracle self-checks.
Outcome OracleSelfChecks() {
  const GridSpec g = GridSpec::Line(64, 0.25, -8.0);
  const auto phi0 = nlsim::FieldState::FromRegister(Register::FromAmplitudes(GaussianPacket(g, 0.0, 1.0, 1.0)), g);
  const auto rule = nlsim::KernelConvolutionPotential(KernelSpec::Gaussian(5.0, 1.0), g);
  const auto conv = nlsim::SplitStepSelfConvergence(phi0, rule, 0.5, 1.0, 0.05);

  const GridSpec trap_grid = GridSpec::Line(128, 20.0 / 128, -10.0);
  std::vector<double> trap(128);
  for (std::size_t k = 0; k < 128; ++k) trap[k] = 0.5 * std::pow(trap_grid.coordinate(k, 0), 2);
  const auto gs = nlsim::ImaginaryTimeGroundState(trap, 0.0, trap_grid, 0.5);
  const double rel = std::abs(gs.energy - 0.5) / 0.5;
  return {conv.ratio >= 3.4 && conv.ratio <= 4.6 && rel < 5e-3,
          Fmt("split-step ratio %.3f (need [3.4, 4.6]), ground-state energy %.12f rel. error %.2e (need < 5e-3)",
              conv.ratio, gs.energy, rel)};
}

// 9. One W application on the tensor-square register.
Outcome MultiCopy() {
  std::mt19937_64 rng(9);
  auto a = RandomAmplitudes(rng, 4);
  double norm = 0.0;
  for (const auto& z : a) norm += std::norm(z);
  for (auto& z : a) z /= std::sqrt(norm);
  const auto doubled = nlsim::TensorSquare(Register::FromAmplitudes(a));
  const auto big_f = RandomCoupling(rng, 16, 2.0);
  const double eps = 0.17;
  auto r = doubled;
  nlsim::CompileW(big_f, eps).Apply(r);

  // Written in the original amplitudes: phase of (j,k) is
  // -eps sum_{j'k'} F_{(jk),(j'k')} |a_j'|^2 |a_k'|^2.
  std::vector<Complex> expected(16);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t k = 0; k < 4; ++k) {
      double phase = 0.0;
      for (std::size_t jp = 0; jp < 4; ++jp) {
        for (std::size_t kp = 0; kp < 4; ++kp) {
          phase += big_f(j * 4 + k, jp * 4 + kp) * std::norm(a[jp]) * std::norm(a[kp]);
        }
      }
      expected[j * 4 + k] = a[j] * a[k] * std::polar(1.0, -eps * phase);
    }
  }
  const auto got = r.PrincipalAmplitudes();
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < 16; ++i) overlap += std::conj(expected[i]) * got[i];
  const Complex align = overlap / std::abs(overlap);
  double worst = 0.0;
  for (std::size_t i = 0; i < 16; ++i) worst = std::max(worst, std::abs(got[i] - align * expected[i]));
  return {worst <= 1e-12 && r.AncillaClean(),
          Fmt("max amplitude deviation from quartic-phase prediction %.2e (need <= 1e-12)", worst)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "compiler-oracle equivalence", CompilerOracleEquivalence},
      {2, "first-order Trotter convergence", TrotterOrder},
      {4, "gate-count claims", GateCounts},
      {5, "Hartree contact limit", ContactLimit},
      {6, "Navier-Stokes stencil", NavierStokes},
      {7, "two-mode phase map", BecPhaseMap},
      {8, "oracle self-checks", OracleSelfChecks},
      {9, "multi-copy quartic phases", MultiCopy},
  };
  int failures = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  };
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    report(c.id, c.name, o);
  }
  report(3, "norm conservation",
         {g_max_norm_drift < 1e-10,
          Fmt("max | ||psi|| - 1 | over all runs above %.2e (need < 1e-10)", g_max_norm_drift)});
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
