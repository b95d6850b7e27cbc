#include "nlsim/nlcompiler.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "nlsim/textio.hpp"

namespace nlsim {

std::size_t GammaSchedule::nonzero_singles() const {
  std::size_t n = 0;
  for (double g : single_) n += g != 0.0;
  return n;
}

std::size_t GammaSchedule::nonzero_pairs() const {
  std::size_t n = 0;
  for (double g : pair_) n += g != 0.0;
  return n;
}

GammaSchedule GammasFromCoupling(const CouplingMatrix& f, double eps) {
  if (!std::isfinite(eps)) Fail(ErrorCode::kInvalidArgument, "time step must be finite");
  const std::size_t dim = f.dim();
  GammaSchedule s(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t l = k + 1; l < dim; ++l) s.pair(k, l) = -eps * f(k, l) / 2.0;
  }
  for (std::size_t k = 0; k < dim; ++k) {
    double g = -eps * f(k, k) / 2.0;
    for (std::size_t l = 0; l < dim; ++l) {
      if (l == k) continue;
      g -= k < l ? s.pair(k, l) : s.pair(l, k);
    }
    s.single(k) = g;
  }
  return s;
}

GateCounts operator*(const GateCounts& c, std::uint64_t times) {
  return {c.mcx * times, c.nonlinear * times, c.ancilla_phase * times, c.basic * times};
}

GateCounts& operator+=(GateCounts& a, const GateCounts& b) {
  a.mcx += b.mcx;
  a.nonlinear += b.nonlinear;
  a.ancilla_phase += b.ancilla_phase;
  a.basic += b.basic;
  return a;
}

GateCounts ExecutionCounter::ToGateCounts(int n, std::uint64_t basic_constant) const {
  const auto n2 = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  return {mcx, nonlinear, ancilla_phase,
          mcx * basic_constant * n2 + nonlinear + ancilla_phase};
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void GateSequence::Apply(Register& r, ExecutionCounter* counter) const {
  ExecutionCounter local;
  for (const auto& op : ops_) {
    std::visit(Overloaded{
                   [&](const gate::Mcx& g) {
                     r.ApplyMcx(g.target);
                     ++local.mcx;
                   },
                   [&](const gate::Nonlinear& g) {
                     r.ApplyNonlinear(g.gamma);
                     ++local.nonlinear;
                   },
                   [&](const gate::AncillaPhase& g) {
                     r.ApplyAncillaPhase(g.lambda);
                     ++local.ancilla_phase;
                   },
                   [&](const gate::PrincipalDiagonal& g) {
                     r.ApplyPrincipalDiagonal(g.phases);
                     ++local.diagonal;
                   },
                   [&](const gate::Dft& g) {
                     r.ApplyDft(g.inverse, g.shape);
                     ++local.dft;
                   },
               },
               op);
  }
  if (counter != nullptr) {
    counter->mcx += local.mcx;
    counter->nonlinear += local.nonlinear;
    counter->ancilla_phase += local.ancilla_phase;
    counter->diagonal += local.diagonal;
    counter->dft += local.dft;
  }
}

std::string GateSequence::ToText() const {
  std::ostringstream out;
  for (const auto& op : ops_) {
    std::visit(Overloaded{
                   [&](const gate::Mcx& g) { out << "MCX " << g.target; },
                   [&](const gate::Nonlinear& g) { out << "NL " << FormatDouble(g.gamma); },
                   [&](const gate::AncillaPhase& g) { out << "APH " << FormatDouble(g.lambda); },
                   [&](const gate::PrincipalDiagonal& g) {
                     out << "DIAG";
                     for (double p : g.phases) out << ' ' << FormatDouble(p);
                   },
                   [&](const gate::Dft& g) {
                     out << "DFT " << (g.inverse ? "inv" : "fwd");
                     for (int m : g.shape) out << ' ' << m;
                   },
               },
               op);
    out << '\n';
  }
  return out.str();
}

GateSequence GateSequence::FromText(std::string_view text) {
  GateSequence seq;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    auto fields = SplitFields(line, ' ');
    std::erase_if(fields, [](std::string_view f) { return f.empty(); });
    if (fields.empty() || fields[0].front() == '#') continue;
    const std::string_view name = fields[0];
    auto bad = [&](const char* why) {
      Fail(ErrorCode::kInvalidArgument,
           "gate line " + std::to_string(line_no) + ": " + why);
    };
    if (name == "MCX" || name == "NL" || name == "APH") {
      if (fields.size() != 2) bad("expected one argument");
      if (name == "MCX") {
        const long long k = ParseInteger(fields[1]);
        if (k < 0) bad("negative MCX target");
        seq.push_back(gate::Mcx{static_cast<std::size_t>(k)});
      } else if (name == "NL") {
        seq.push_back(gate::Nonlinear{ParseDouble(fields[1])});
      } else {
        seq.push_back(gate::AncillaPhase{ParseDouble(fields[1])});
      }
    } else if (name == "DIAG") {
      gate::PrincipalDiagonal g;
      for (std::size_t i = 1; i < fields.size(); ++i) g.phases.push_back(ParseDouble(fields[i]));
      seq.push_back(std::move(g));
    } else if (name == "DFT") {
      if (fields.size() < 3 || (fields[1] != "fwd" && fields[1] != "inv")) {
        bad("expected DFT fwd|inv <shape>");
      }
      gate::Dft g{fields[1] == "inv", {}};
      for (std::size_t i = 2; i < fields.size(); ++i) {
        g.shape.push_back(static_cast<int>(ParseInteger(fields[i])));
      }
      seq.push_back(std::move(g));
    } else {
      bad("unknown gate");
    }
  }
  return seq;
}

bool operator==(const GateSequence& a, const GateSequence& b) {
  if (a.ops_.size() != b.ops_.size()) return false;
  for (std::size_t i = 0; i < a.ops_.size(); ++i) {
    const auto& x = a.ops_[i];
    const auto& y = b.ops_[i];
    if (x.index() != y.index()) return false;
    const bool same = std::visit(
        Overloaded{
            [&](const gate::Mcx& g) { return g.target == std::get<gate::Mcx>(y).target; },
            [&](const gate::Nonlinear& g) { return g.gamma == std::get<gate::Nonlinear>(y).gamma; },
            [&](const gate::AncillaPhase& g) {
              return g.lambda == std::get<gate::AncillaPhase>(y).lambda;
            },
            [&](const gate::PrincipalDiagonal& g) {
              return g.phases == std::get<gate::PrincipalDiagonal>(y).phases;
            },
            [&](const gate::Dft& g) {
              const auto& h = std::get<gate::Dft>(y);
              return g.inverse == h.inverse && g.shape == h.shape;
            },
        },
        x);
    if (!same) return false;
  }
  return true;
}

GateSequence CompileSchedule(const GammaSchedule& s, const CompileOptions& options) {
  GateSequence seq;
  const bool prune = options.prune_zero_angles;
  for (std::size_t k = 0; k < s.dim(); ++k) {
    const double g = s.single(k);
    if (prune && g == 0.0) continue;
    seq.push_back(gate::Mcx{k});
    seq.push_back(gate::Nonlinear{g});
    // Cancels the state-independent e^{-i g} left on |k> relative to the rest.
    seq.push_back(gate::AncillaPhase{g});
    seq.push_back(gate::Mcx{k});
  }
  for (std::size_t k = 0; k < s.dim(); ++k) {
    for (std::size_t l = k + 1; l < s.dim(); ++l) {
      const double g = s.pair(k, l);
      if (prune && g == 0.0) continue;
      seq.push_back(gate::Mcx{k});
      seq.push_back(gate::Mcx{l});
      seq.push_back(gate::Nonlinear{g});
      seq.push_back(gate::AncillaPhase{g});
      seq.push_back(gate::Mcx{l});
      seq.push_back(gate::Mcx{k});
    }
  }
  return seq;
}

GateSequence CompileW(const CouplingMatrix& f, double eps, const CompileOptions& options) {
  return CompileSchedule(GammasFromCoupling(f, eps), options);
}

void ApplyWDirect(Register& r, const CouplingMatrix& f, double eps) {
  if (f.dim() != r.principal_dim()) {
    Fail(ErrorCode::kInvalidArgument, "coupling dimension does not match register");
  }
  if (!r.AncillaClean()) Fail(ErrorCode::kInvalidArgument, "ancilla not clean");
  const auto amps = r.PrincipalAmplitudes();
  std::vector<double> weights(amps.size());
  for (std::size_t j = 0; j < amps.size(); ++j) weights[j] = std::norm(amps[j]);
  const auto potential = f.Potential(weights);
  std::vector<double> phases(amps.size());
  for (std::size_t k = 0; k < amps.size(); ++k) phases[k] = -eps * potential[k];
  r.ApplyPrincipalDiagonal(phases);
}

ResourceTally EstimateResources(int n, std::uint64_t singles, std::uint64_t pairs,
                                std::uint64_t steps, std::uint64_t basic_constant) {
  if (n < 1) Fail(ErrorCode::kInvalidArgument, "qubit count must be >= 1");
  ResourceTally t;
  t.num_qubits = n;
  t.basic_constant = basic_constant;
  t.steps = steps;
  t.singles = singles;
  t.pairs = pairs;
  const auto n2 = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  t.per_step.mcx = 2 * singles + 4 * pairs;
  t.per_step.nonlinear = singles + pairs;
  t.per_step.ancilla_phase = singles + pairs;
  t.per_step.basic = t.per_step.mcx * basic_constant * n2 + t.per_step.nonlinear +
                     t.per_step.ancilla_phase;
  return t;
}

ResourceTally EstimateDenseResources(int n, std::uint64_t steps, std::uint64_t basic_constant) {
  if (n < 1 || n > 31) Fail(ErrorCode::kOutOfRange, "qubit count outside [1, 31]");
  const std::uint64_t dim = std::uint64_t{1} << n;
  return EstimateResources(n, dim, dim * (dim - 1) / 2, steps, basic_constant);
}

Register TensorSquare(const Register& r, int max_qubits) {
  if (!r.AncillaClean()) Fail(ErrorCode::kInvalidArgument, "ancilla not clean");
  if (2 * r.num_qubits() > max_qubits) {
    Fail(ErrorCode::kResourceLimit, "tensor square needs " + std::to_string(2 * r.num_qubits()) +
                                        " qubits, bound is " + std::to_string(max_qubits));
  }
  const auto a = r.PrincipalAmplitudes();
  std::vector<Complex> doubled(a.size() * a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t k = 0; k < a.size(); ++k) doubled[j * a.size() + k] = a[j] * a[k];
  }
  return Register::FromAmplitudes(doubled);
}

}  // namespace nlsim
