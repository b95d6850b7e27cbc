#include <cmath>
#include <random>
#include <variant>

#include "doctest.h"
#include "helpers.hpp"
#include "nlsim/nlcompiler.hpp"

using nlsim::Complex;
using nlsim::CouplingMatrix;
using nlsim::Register;

namespace {

CouplingMatrix Dense2(double a, double b, double c) {
  const double v[] = {a, b, b, c};
  return CouplingMatrix::FromDense(2, v);
}

std::vector<Complex> RunCompiled(const std::vector<Complex>& a, const CouplingMatrix& f, double eps,
                                 bool prune = true) {
  auto r = Register::FromAmplitudes(a);
  nlsim::CompileOptions opts;
  opts.prune_zero_angles = prune;
  nlsim::CompileW(f, eps, opts).Apply(r);
  CHECK(r.AncillaClean());
  return r.PrincipalAmplitudes();
}

}  // namespace

TEST_SUITE("nlcompiler") {
  TEST_CASE("gammas: zero coupling gives zero angles") {
    const auto s = nlsim::GammasFromCoupling(CouplingMatrix(4), 0.3);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(s.single(k) == 0.0);
      for (std::size_t l = k + 1; l < 4; ++l) CHECK(s.pair(k, l) == 0.0);
    }
    CHECK(s.nonzero_singles() == 0);
    CHECK(s.nonzero_pairs() == 0);
  }

  TEST_CASE("gammas: frozen two-site calibrations") {
    // Values confirmed by the brute-force phase check below before freezing.
    const auto off = nlsim::GammasFromCoupling(Dense2(0.0, 1.0, 0.0), 0.2);
    CHECK(off.pair(0, 1) == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(off.single(0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(off.single(1) == doctest::Approx(0.1).epsilon(1e-15));

    const auto diag = nlsim::GammasFromCoupling(Dense2(1.0, 0.0, 1.0), 0.1);
    CHECK(diag.pair(0, 1) == 0.0);
    CHECK(diag.single(0) == doctest::Approx(-0.05).epsilon(1e-15));
    CHECK(diag.single(1) == doctest::Approx(-0.05).epsilon(1e-15));
  }

  TEST_CASE("gammas: brute-force phase check against the target map") {
    std::mt19937_64 rng(101);
    for (const auto& f : {Dense2(0.0, 1.0, 0.0), Dense2(1.0, 0.0, 1.0), Dense2(0.3, -0.7, 1.9)}) {
      for (int trial = 0; trial < 5; ++trial) {
        const auto a = testing::RandomAmplitudes(rng, 2);
        const double eps = 0.2;
        const auto got = RunCompiled(a, f, eps);
        const auto want = testing::ExpectedW(a, f, eps);
        CHECK(testing::AlignedDistance(got, want) < 1e-13);
      }
    }
  }

  TEST_CASE("gammas: asymmetric coupling rejected at construction") {
    const double v[] = {0.0, 1.0, 2.0, 0.0};
    CHECK_THROWS_WITH_AS(CouplingMatrix::FromDense(2, v), doctest::Contains("asymmetric"),
                         nlsim::Error);
  }

  TEST_CASE("compile_w layout") {
    SUBCASE("zero coupling compiles to nothing") {
      CHECK(nlsim::CompileW(CouplingMatrix(8), 0.1).empty());
    }
    SUBCASE("dense dim 2: two singles then one pair") {
      const auto seq = nlsim::CompileW(Dense2(0.4, 1.0, 0.9), 0.1);
      REQUIRE(seq.size() == 2 * 4 + 6);
      const auto ops = seq.ops();
      CHECK(std::get<nlsim::gate::Mcx>(ops[0]).target == 0);
      CHECK(std::holds_alternative<nlsim::gate::Nonlinear>(ops[1]));
      CHECK(std::holds_alternative<nlsim::gate::AncillaPhase>(ops[2]));
      CHECK(std::get<nlsim::gate::Mcx>(ops[3]).target == 0);
      CHECK(std::get<nlsim::gate::Mcx>(ops[4]).target == 1);
      CHECK(std::get<nlsim::gate::Mcx>(ops[8]).target == 0);
      CHECK(std::get<nlsim::gate::Mcx>(ops[9]).target == 1);
      CHECK(std::get<nlsim::gate::Mcx>(ops[12]).target == 1);
      CHECK(std::get<nlsim::gate::Mcx>(ops[13]).target == 0);
      const double g = std::get<nlsim::gate::Nonlinear>(ops[10]).gamma;
      CHECK(std::get<nlsim::gate::AncillaPhase>(ops[11]).lambda == g);
      CHECK(g == doctest::Approx(-0.05));

      nlsim::ExecutionCounter counter;
      auto r = Register::FromAmplitudes(std::vector<Complex>{0.6, 0.8});
      seq.Apply(r, &counter);
      CHECK(counter.nonlinear == 3);
      CHECK(counter.mcx == 8);
    }
    SUBCASE("pairs follow lexicographic order") {
      CouplingMatrix f(4);
      f.Set(2, 3, 1.0);
      f.Set(0, 3, 1.0);
      f.Set(1, 2, 1.0);
      const auto seq = nlsim::CompileW(f, 0.1);
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      const auto ops = seq.ops();
      // Singles: every site is touched by some pair, so all four have angles.
      std::size_t i = 4 * 4;
      while (i < ops.size()) {
        pairs.emplace_back(std::get<nlsim::gate::Mcx>(ops[i]).target,
                           std::get<nlsim::gate::Mcx>(ops[i + 1]).target);
        i += 6;
      }
      const std::vector<std::pair<std::size_t, std::size_t>> expected{{0, 3}, {1, 2}, {2, 3}};
      CHECK(pairs == expected);
    }
    SUBCASE("periodic tridiagonal stencil keeps M singles and M pairs") {
      const std::size_t m = 8;
      CouplingMatrix f(m);
      for (std::size_t k = 0; k < m; ++k) {
        f.Set(k, k, -2.0);
        f.Set(k, (k + 1) % m, 1.0);
      }
      const auto s = nlsim::GammasFromCoupling(f, 0.1);
      CHECK(s.nonzero_singles() == m);
      CHECK(s.nonzero_pairs() == m);
      CHECK(nlsim::CompileW(f, 0.1).size() == 4 * m + 6 * m);
    }
  }

  TEST_CASE("apply_w_direct") {
    std::mt19937_64 rng(7);
    const auto a = testing::RandomAmplitudes(rng, 8);
    auto r = Register::FromAmplitudes(a);
    nlsim::ApplyWDirect(r, CouplingMatrix(8), 0.3);
    CHECK(r.PrincipalAmplitudes() == Register::FromAmplitudes(a).PrincipalAmplitudes());

    const std::vector<Complex> uniform(8, 1.0);
    auto u = Register::FromAmplitudes(uniform);
    CouplingMatrix gp(8);
    const double g = 2.0, dx = 0.5, eps = 0.1;
    for (std::size_t k = 0; k < 8; ++k) gp.Set(k, k, g / dx);
    nlsim::ApplyWDirect(u, gp, eps);
    const Complex expected = std::polar(1.0 / std::sqrt(8.0), -eps * g / (8 * dx));
    for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(u.amplitude(k, 0) - expected) < 1e-15);

    auto dirty = Register::FromAmplitudes(a);
    dirty.ApplyMcx(3);
    CHECK_THROWS_WITH_AS(nlsim::ApplyWDirect(dirty, gp, eps), doctest::Contains("ancilla not clean"),
                         nlsim::Error);
  }

  TEST_CASE("compiled matches direct on a random n = 3 case") {
    std::mt19937_64 rng(2024);
    const auto a = testing::RandomAmplitudes(rng, 8);
    const auto f = testing::RandomCoupling(rng, 8);
    auto compiled = Register::FromAmplitudes(a);
    nlsim::CompileW(f, 0.05).Apply(compiled);
    auto direct = Register::FromAmplitudes(a);
    nlsim::ApplyWDirect(direct, f, 0.05);
    CHECK(nlsim::Fidelity(compiled, direct) >= 1.0 - 1e-12);
    CHECK(testing::AlignedDistance(compiled.PrincipalAmplitudes(), testing::ExpectedW(a, f, 0.05)) <
          1e-13);
  }

  TEST_CASE("resource estimates") {
    const auto one = nlsim::EstimateDenseResources(1, 1);
    CHECK(one.per_step.nonlinear == 3);
    CHECK(one.per_step.mcx == 8);
    CHECK(one.per_step.ancilla_phase == 3);
    CHECK(one.per_step.basic == 8 * 1 * 1 + 3 + 3);

    const auto none = nlsim::EstimateDenseResources(4, 0);
    CHECK(none.total() == nlsim::GateCounts{});

    const auto sparse = nlsim::EstimateResources(3, 8, 8, 10, 2);
    CHECK(sparse.per_step.mcx == 2 * 8 + 4 * 8);
    CHECK(sparse.per_step.nonlinear == 16);
    CHECK(sparse.per_step.basic == 48 * 2 * 9 + 32);
    CHECK(sparse.total().mcx == 480);

    double previous = 0.0;
    for (int n = 1; n <= 12; ++n) {
      const auto t = nlsim::EstimateDenseResources(n, 1);
      const std::uint64_t dim = std::uint64_t{1} << n;
      CHECK(t.per_step.nonlinear == dim * (dim + 1) / 2);
      CHECK(t.per_step.mcx == 2 * dim + 2 * dim * (dim - 1));
      const double now = static_cast<double>(t.per_step.nonlinear);
      if (n > 1) {
        const double ratio = now / previous;
        CHECK(ratio > 3.0);
        CHECK(ratio < 4.0);
      }
      previous = now;
    }
    CHECK(previous / static_cast<double>(nlsim::EstimateDenseResources(11, 1).per_step.nonlinear) ==
          doctest::Approx(4.0).epsilon(1e-3));
  }

  TEST_CASE("sequence text round trip") {
    std::mt19937_64 rng(5);
    auto seq = nlsim::CompileW(testing::RandomCoupling(rng, 4), 0.137);
    seq.push_back(nlsim::gate::PrincipalDiagonal{{0.1, -0.25, 1e-300, 3.0}});
    seq.push_back(nlsim::gate::Dft{false, {4}});
    seq.push_back(nlsim::gate::Dft{true, {2, 2}});
    const auto text = seq.ToText();
    const auto back = nlsim::GateSequence::FromText(text);
    CHECK(back == seq);
    CHECK(back.ToText() == text);

    CHECK_THROWS_AS(nlsim::GateSequence::FromText("MCX x\n"), nlsim::Error);
    CHECK_THROWS_AS(nlsim::GateSequence::FromText("HADAMARD 0\n"), nlsim::Error);
  }

  TEST_CASE("tensor square") {
    auto basis = Register::FromAmplitudes(std::vector<Complex>{1.0, 0.0});
    const auto sq = nlsim::TensorSquare(basis);
    CHECK(sq.num_qubits() == 2);
    CHECK(sq.amplitude(0, 0) == Complex(1.0));
    for (std::size_t k = 1; k < 4; ++k) CHECK(sq.amplitude(k, 0) == Complex(0.0));

    const auto u = nlsim::TensorSquare(Register::FromAmplitudes(std::vector<Complex>{1.0, 1.0}));
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(u.amplitude(k, 0) - 0.5) < 1e-15);

    const auto w = nlsim::TensorSquare(Register::FromAmplitudes(std::vector<Complex>{0.6, 0.8}));
    const double expected[] = {0.1296, 0.2304, 0.2304, 0.4096};
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(std::norm(w.amplitude(k, 0)) - expected[k]) < 1e-15);

    std::mt19937_64 rng(1);
    const auto big = Register::FromAmplitudes(testing::RandomAmplitudes(rng, 64));
    CHECK_THROWS_AS(nlsim::TensorSquare(big, 10), nlsim::Error);
    try {
      nlsim::TensorSquare(big, 10);
    } catch (const nlsim::Error& e) {
      CHECK(e.code() == nlsim::ErrorCode::kResourceLimit);
    }
  }
}
