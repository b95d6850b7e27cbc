#include "nlsim/problems.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "json.hpp"

namespace nlsim {

void KernelSpec::Validate() const {
  switch (form) {
    case Form::kConstant:
      if (!std::isfinite(value)) Fail(ErrorCode::kInvalidArgument, "kernel value not finite");
      break;
    case Form::kGaussian:
      if (!std::isfinite(amplitude) || !(sigma > 0.0) || !std::isfinite(sigma)) {
        Fail(ErrorCode::kInvalidArgument, "gaussian kernel needs finite amplitude and sigma > 0");
      }
      break;
    case Form::kContact:
      if (!std::isfinite(g)) Fail(ErrorCode::kInvalidArgument, "contact strength not finite");
      break;
    case Form::kTabulated: {
      if (samples.size() % 2 != 1) {
        Fail(ErrorCode::kInvalidArgument, "tabulated kernel needs samples for d = -D..D");
      }
      const std::size_t mid = samples.size() / 2;
      for (std::size_t d = 0; d <= mid; ++d) {
        const double a = samples[mid + d];
        const double b = samples[mid - d];
        if (!std::isfinite(a) || !std::isfinite(b)) {
          Fail(ErrorCode::kInvalidArgument, "kernel sample not finite");
        }
        if (std::abs(a - b) > kExactTol * std::max(1.0, std::abs(a))) {
          Fail(ErrorCode::kInvalidArgument, "kernel not even");
        }
      }
      break;
    }
  }
}

double KernelSpec::Evaluate(std::span<const int> cells, const GridSpec& grid) const {
  double r2 = 0.0;
  bool origin = true;
  for (int c : cells) {
    r2 += static_cast<double>(c) * c * grid.dx * grid.dx;
    origin = origin && c == 0;
  }
  switch (form) {
    case Form::kConstant:
      return value;
    case Form::kGaussian:
      return amplitude * std::exp(-r2 / (2.0 * sigma * sigma));
    case Form::kContact:
      return origin ? g / grid.cell_volume() : 0.0;
    case Form::kTabulated: {
      if (cells.size() != 1) Fail(ErrorCode::kInvalidArgument, "tabulated kernels are 1D only");
      const std::size_t mid = samples.size() / 2;
      const auto d = static_cast<std::size_t>(std::abs(cells[0]));
      return d <= mid ? samples[mid + d] : 0.0;
    }
  }
  return 0.0;
}

KernelSpec KernelSpec::FromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kInvalidArgument, std::string("kernel json: ") + e.what());
  }
  KernelSpec k;
  try {
    const std::string form = j.at("form").get<std::string>();
    if (form == "constant") {
      k = Constant(j.at("value").get<double>());
    } else if (form == "gaussian") {
      k = Gaussian(j.at("amplitude").get<double>(), j.at("sigma").get<double>());
    } else if (form == "contact") {
      k = Contact(j.at("g").get<double>());
    } else if (form == "tabulated") {
      k = Tabulated(j.at("samples").get<std::vector<double>>());
    } else {
      Fail(ErrorCode::kInvalidArgument, "unknown kernel form '" + form + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kInvalidArgument, std::string("kernel json: ") + e.what());
  }
  k.Validate();
  return k;
}

std::string KernelSpec::ToJson() const {
  nlohmann::json j;
  switch (form) {
    case Form::kConstant:
      j = {{"form", "constant"}, {"value", value}};
      break;
    case Form::kGaussian:
      j = {{"form", "gaussian"}, {"amplitude", amplitude}, {"sigma", sigma}};
      break;
    case Form::kContact:
      j = {{"form", "contact"}, {"g", g}};
      break;
    case Form::kTabulated:
      j = {{"form", "tabulated"}, {"samples", samples}};
      break;
  }
  return j.dump();
}

CouplingMatrix HartreeCoupling(const KernelSpec& kernel, const GridSpec& grid,
                               AmplitudeConvention convention) {
  grid.Validate();
  kernel.Validate();
  const double weight =
      convention == AmplitudeConvention::kFieldSamples ? grid.cell_volume() : 1.0;
  const std::size_t dim = grid.size();
  CouplingMatrix f(dim);
  std::vector<int> cells(static_cast<std::size_t>(grid.dims()));
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = j; k < dim; ++k) {
      for (int axis = 0; axis < grid.dims(); ++axis) {
        cells[axis] = GridSpec::MinimalImage(grid.axis_index(k, axis) - grid.axis_index(j, axis),
                                             grid.points[axis]);
      }
      f.Set(j, k, kernel.Evaluate(cells, grid) * weight);
    }
  }
  return f;
}

CouplingMatrix GrossPitaevskiiCoupling(double g, const GridSpec& grid) {
  grid.Validate();
  CouplingMatrix f(grid.size());
  const double diag = g / grid.cell_volume();
  for (std::size_t k = 0; k < grid.size(); ++k) f.Set(k, k, diag);
  return f;
}

CouplingMatrix NavierStokesCoupling(double rho0, const GridSpec& grid) {
  grid.Validate();
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) {
    Fail(ErrorCode::kInvalidArgument, "reference density must be positive");
  }
  // rho_k = |a_k|^2 / dx^dims folds the cell volume into the weight.
  const double c = 1.0 / (4.0 * rho0 * grid.dx * grid.dx * grid.cell_volume());
  CouplingMatrix f(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (int axis = 0; axis < grid.dims(); ++axis) {
      // Each neighbor contributes once per direction; with two points per
      // axis both directions land on the same site and accumulate.
      const std::size_t up = grid.neighbor(k, axis, +1);
      const std::size_t down = grid.neighbor(k, axis, -1);
      if (up > k) f.Add(k, up, c);
      if (down > k) f.Add(k, down, c);
    }
    f.Add(k, k, -2.0 * grid.dims() * c);
  }
  return f;
}

MadelungFields ComputeMadelungFields(const Register& r, const GridSpec& grid) {
  grid.Validate();
  if (r.principal_dim() != grid.size()) {
    Fail(ErrorCode::kInvalidArgument, "register size does not match grid");
  }
  if (!r.AncillaClean()) Fail(ErrorCode::kInvalidArgument, "ancilla not clean");
  const double vol = grid.cell_volume();
  const double amp_scale = 1.0 / std::sqrt(vol);
  const auto a = r.PrincipalAmplitudes();
  const std::size_t m = a.size();

  MadelungFields out;
  out.threshold = 1e-8 / vol;
  out.rho.resize(m);
  out.defined.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    out.rho[k] = std::norm(a[k]) / vol;
    out.defined[k] = out.rho[k] >= out.threshold;
  }
  out.velocity.assign(static_cast<std::size_t>(grid.dims()),
                      std::vector<double>(m, std::numeric_limits<double>::quiet_NaN()));
  for (int axis = 0; axis < grid.dims(); ++axis) {
    for (std::size_t k = 0; k < m; ++k) {
      if (!out.defined[k]) continue;
      const Complex phi = a[k] * amp_scale;
      const Complex grad = (a[grid.neighbor(k, axis, +1)] - a[grid.neighbor(k, axis, -1)]) *
                           (amp_scale / (2.0 * grid.dx));
      const double current = std::imag(std::conj(phi) * grad);
      out.velocity[axis][k] = -current / out.rho[k];
    }
  }
  return out;
}

}  // namespace nlsim
