#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "nlsim/problems.hpp"

using nlsim::AmplitudeConvention;
using nlsim::Complex;
using nlsim::CouplingMatrix;
using nlsim::GridSpec;
using nlsim::KernelSpec;
using nlsim::Register;

namespace {

/// (Phi * rho)(x_k) on the periodic grid, computed as a circular convolution
/// through the naive DFT.
std::vector<double> ConvolveViaDft(const KernelSpec& kernel, const GridSpec& grid,
                                   const std::vector<double>& rho_weights) {
  const std::size_t m = grid.size();
  std::vector<Complex> kern(m), dens(m);
  for (std::size_t d = 0; d < m; ++d) {
    const int cells[] = {GridSpec::MinimalImage(static_cast<int>(d), static_cast<int>(m))};
    kern[d] = kernel.Evaluate(cells, grid);
    dens[d] = rho_weights[d];
  }
  const auto kh = testing::NaiveDft(kern, false);
  const auto dh = testing::NaiveDft(dens, false);
  std::vector<Complex> prod(m);
  for (std::size_t q = 0; q < m; ++q) prod[q] = kh[q] * dh[q] * std::sqrt(static_cast<double>(m));
  const auto conv = testing::NaiveDft(prod, true);
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) out[k] = conv[k].real();
  return out;
}

}  // namespace

TEST_SUITE("problems") {
  TEST_CASE("grid index map") {
    const auto g = GridSpec::Plane(4, 8, 0.5, -1.0, 2.0);
    CHECK(g.size() == 32);
    CHECK(g.cell_volume() == 0.25);
    for (std::size_t k = 0; k < g.size(); ++k) {
      CHECK(static_cast<std::size_t>(g.axis_index(k, 0)) * 8 + g.axis_index(k, 1) == k);
    }
    CHECK(g.coordinate(9, 0) == -0.5);
    CHECK(g.coordinate(9, 1) == 2.5);
    CHECK(g.neighbor(7, 1, 1) == 0);
    CHECK(g.neighbor(0, 0, -1) == 24);
    CHECK(GridSpec::MinimalImage(3, 4) == -1);
    CHECK(std::abs(GridSpec::MinimalImage(2, 4)) == 2);
    CHECK_THROWS_AS(GridSpec::Line(6, 1.0), nlsim::Error);
    CHECK_THROWS_AS(GridSpec::Line(8, 0.0), nlsim::Error);
  }

  TEST_CASE("hartree: constant kernel") {
    const auto g = GridSpec::Line(8, 0.25);
    const auto literal = nlsim::HartreeCoupling(KernelSpec::Constant(3.0), g,
                                                AmplitudeConvention::kFieldSamples);
    const auto unit = nlsim::HartreeCoupling(KernelSpec::Constant(3.0), g);
    for (std::size_t j = 0; j < 8; ++j) {
      for (std::size_t k = 0; k < 8; ++k) {
        CHECK(literal(j, k) == 3.0 * 0.25);
        CHECK(unit(j, k) == 3.0);
      }
    }
  }

  TEST_CASE("hartree: contact kernel equals the Gross-Pitaevskii coupling") {
    for (const auto& g : {GridSpec::Line(16, 0.3), GridSpec::Plane(8, 8, 0.5)}) {
      const auto h = nlsim::HartreeCoupling(KernelSpec::Contact(1.7), g);
      const auto gp = nlsim::GrossPitaevskiiCoupling(1.7, g);
      CHECK(h == gp);
      CHECK(gp(3, 3) == 1.7 / g.cell_volume());
      CHECK(gp(3, 4) == 0.0);
    }
    // Field-sample amplitudes carry the cell volume in the sum, giving f_kk = g.
    const auto g = GridSpec::Line(8, 0.5);
    const auto literal =
        nlsim::HartreeCoupling(KernelSpec::Contact(2.0), g, AmplitudeConvention::kFieldSamples);
    CHECK(literal(5, 5) == 2.0);
    CHECK(nlsim::GrossPitaevskiiCoupling(0.0, g).IsZero());
  }

  TEST_CASE("hartree: minimal image and convolution consistency") {
    const auto g4 = GridSpec::Line(4, 1.0);
    const auto f4 = nlsim::HartreeCoupling(KernelSpec::Tabulated({0.5, 2.0, 7.0, 2.0, 0.5}), g4);
    CHECK(f4(0, 3) == 2.0);
    CHECK(f4(0, 2) == 0.5);

    std::mt19937_64 rng(42);
    for (int n = 1; n <= 6; ++n) {
      const int m = 1 << n;
      const auto grid = GridSpec::Line(m, 8.0 / m, -4.0);
      const auto kernel = KernelSpec::Gaussian(1.3, 0.9);
      const auto f = nlsim::HartreeCoupling(kernel, grid);
      const auto a = testing::RandomAmplitudes(rng, static_cast<std::size_t>(m));
      std::vector<double> w(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) w[k] = std::norm(a[k]);
      const auto direct = f.Potential(w);
      const auto conv = ConvolveViaDft(kernel, grid, w);
      for (std::size_t k = 0; k < w.size(); ++k) CHECK(std::abs(direct[k] - conv[k]) < 1e-12);
    }
  }

  TEST_CASE("hartree: produced matrices are exactly symmetric") {
    const auto g = GridSpec::Plane(4, 8, 0.7);
    const auto f = nlsim::HartreeCoupling(KernelSpec::Gaussian(2.0, 1.1), g);
    for (std::size_t j = 0; j < f.dim(); ++j) {
      for (std::size_t k = 0; k < f.dim(); ++k) CHECK(f(j, k) == f(k, j));
    }
  }

  TEST_CASE("kernel json and validation") {
    CHECK_THROWS_WITH_AS(KernelSpec::Tabulated({1.0, 2.0, 3.0}).Validate(),
                         doctest::Contains("kernel not even"), nlsim::Error);
    CHECK_THROWS_WITH_AS(nlsim::HartreeCoupling(KernelSpec::Tabulated({1.0, 2.0, 3.0}),
                                                GridSpec::Line(4, 1.0)),
                         doctest::Contains("kernel not even"), nlsim::Error);
    CHECK_THROWS_AS(KernelSpec::FromJson(R"({"form":"tabulated","samples":[1,0,2]})"),
                    nlsim::Error);
    CHECK_THROWS_AS(KernelSpec::FromJson(R"({"form":"yukawa"})"), nlsim::Error);
    CHECK_THROWS_AS(KernelSpec::FromJson("not json"), nlsim::Error);

    for (const auto& k : {KernelSpec::Constant(0.1), KernelSpec::Gaussian(2.5, 0.3),
                          KernelSpec::Contact(-1.0), KernelSpec::Tabulated({0.2, 1.0, 0.2})}) {
      const auto back = KernelSpec::FromJson(k.ToJson());
      CHECK(back.ToJson() == k.ToJson());
    }
    const auto gauss = KernelSpec::FromJson(R"({"form":"gaussian","amplitude":2,"sigma":0.5})");
    const int zero[] = {0};
    CHECK(gauss.Evaluate(zero, GridSpec::Line(4, 1.0)) == 2.0);
  }

  TEST_CASE("navier-stokes stencil") {
    for (const auto& g : {GridSpec::Line(16, 0.2), GridSpec::Plane(8, 8, 0.3)}) {
      const double rho0 = 0.7;
      const auto f = nlsim::NavierStokesCoupling(rho0, g);
      const double c = 1.0 / (4.0 * rho0 * g.dx * g.dx * g.cell_volume());
      for (std::size_t k = 0; k < f.dim(); ++k) {
        CHECK(f.RowSum(k) == 0.0);
        CHECK(f(k, k) == doctest::Approx(-2.0 * g.dims() * c).epsilon(1e-15));
        for (int axis = 0; axis < g.dims(); ++axis) {
          CHECK(f(k, g.neighbor(k, axis, 1)) == doctest::Approx(c).epsilon(1e-15));
          CHECK(f(k, g.neighbor(k, axis, -1)) == doctest::Approx(c).epsilon(1e-15));
        }
        std::size_t nonzero = 0;
        for (std::size_t j = 0; j < f.dim(); ++j) nonzero += f(k, j) != 0.0;
        CHECK(nonzero == 1 + 2 * static_cast<std::size_t>(g.dims()));
      }
      const std::vector<double> uniform(f.dim(), 1.0 / static_cast<double>(f.dim()));
      for (double v : f.Potential(uniform)) CHECK(std::abs(v) < 1e-12 * std::abs(c));
    }
    CHECK_THROWS_AS(nlsim::NavierStokesCoupling(0.0, GridSpec::Line(8, 1.0)), nlsim::Error);
    CHECK_THROWS_AS(nlsim::NavierStokesCoupling(-1.0, GridSpec::Line(8, 1.0)), nlsim::Error);
  }

  TEST_CASE("madelung fields") {
    const auto g = GridSpec::Line(64, 0.1, -3.2);
    SUBCASE("real positive state has zero velocity") {
      std::vector<Complex> a(64);
      for (std::size_t k = 0; k < 64; ++k) a[k] = std::exp(-std::pow(g.coordinate(k, 0), 2));
      const auto m = nlsim::ComputeMadelungFields(Register::FromAmplitudes(a), g);
      double total = 0.0;
      for (std::size_t k = 0; k < 64; ++k) {
        total += m.rho[k] * g.dx;
        CHECK(m.rho[k] >= 0.0);
        if (m.defined[k]) CHECK(std::abs(m.velocity[0][k]) < 1e-14);
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("plane wave exp(-i kappa x) moves at kappa") {
      const double kappa = 2.0 * nlsim::kPi * 3.0 / (64 * 0.1);
      std::vector<Complex> a(64);
      for (std::size_t k = 0; k < 64; ++k) a[k] = std::polar(1.0, -kappa * g.coordinate(k, 0));
      const auto m = nlsim::ComputeMadelungFields(Register::FromAmplitudes(a), g);
      for (std::size_t k = 0; k < 64; ++k) {
        REQUIRE(m.defined[k]);
        CHECK(m.velocity[0][k] == doctest::Approx(kappa).epsilon(0.02));
        CHECK(m.rho[k] == doctest::Approx(1.0 / 6.4).epsilon(1e-12));
      }
    }
    SUBCASE("nodes are flagged") {
      std::vector<Complex> a(64, 0.0);
      a[10] = 1.0;
      a[11] = Complex(0.0, 1.0);
      const auto m = nlsim::ComputeMadelungFields(Register::FromAmplitudes(a), g);
      CHECK(m.defined[10]);
      CHECK_FALSE(m.defined[40]);
      CHECK(std::isnan(m.velocity[0][40]));
    }
  }

  TEST_CASE("coupling matrix plumbing") {
    const CouplingMatrix::Entry entries[] = {{0, 1, 2.5}, {1, 0, 2.5}, {3, 3, -1.0}};
    const auto f = CouplingMatrix::FromEntries(4, entries);
    CHECK(f(1, 0) == 2.5);
    CHECK(f(3, 3) == -1.0);
    const CouplingMatrix::Entry clash[] = {{0, 1, 2.5}, {1, 0, 2.0}};
    CHECK_THROWS_AS(CouplingMatrix::FromEntries(4, clash), nlsim::Error);
    CHECK_THROWS_AS(CouplingMatrix(3), nlsim::Error);

    std::stringstream csv;
    f.WriteTripletsCsv(csv);
    const auto back = CouplingMatrix::ReadTripletsCsv(csv, 4);
    CHECK(back == f);

    std::mt19937_64 rng(3);
    const auto r = testing::RandomCoupling(rng, 16, 1e3);
    std::stringstream csv2;
    r.WriteTripletsCsv(csv2);
    CHECK(CouplingMatrix::ReadTripletsCsv(csv2, 16) == r);

    std::stringstream bad("row,col,value\n0,9,1.0\n");
    CHECK_THROWS_AS(CouplingMatrix::ReadTripletsCsv(bad, 4), nlsim::Error);
    std::stringstream garbage("row,col,value\n0,1,abc\n");
    CHECK_THROWS_AS(CouplingMatrix::ReadTripletsCsv(garbage, 4), nlsim::Error);
  }
}
