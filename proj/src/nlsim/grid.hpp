#pragma once

#include <cstddef>
#include <vector>

#include "nlsim/common.hpp"

namespace nlsim {

/// Periodic 1D or 2D grid. Site k is the row-major index over `points`
/// (last axis fastest) and sits at x0[i] + idx_i * dx along axis i.
struct GridSpec {
  std::vector<int> points;
  double dx = 1.0;
  std::vector<double> x0;

  static GridSpec Line(int m, double dx, double x0 = 0.0) {
    GridSpec g{{m}, dx, {x0}};
    g.Validate();
    return g;
  }
  static GridSpec Plane(int mx, int my, double dx, double x0 = 0.0, double y0 = 0.0) {
    GridSpec g{{mx, my}, dx, {x0, y0}};
    g.Validate();
    return g;
  }

  int dims() const { return static_cast<int>(points.size()); }
  std::size_t size() const {
    std::size_t s = 1;
    for (int m : points) s *= static_cast<std::size_t>(m);
    return s;
  }
  /// dx^dims, the volume of one cell.
  double cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < dims(); ++i) v *= dx;
    return v;
  }
  std::size_t stride(int axis) const {
    std::size_t s = 1;
    for (int i = axis + 1; i < dims(); ++i) s *= static_cast<std::size_t>(points[i]);
    return s;
  }
  int axis_index(std::size_t k, int axis) const {
    return static_cast<int>((k / stride(axis)) % static_cast<std::size_t>(points[axis]));
  }
  double coordinate(std::size_t k, int axis) const {
    return x0[axis] + axis_index(k, axis) * dx;
  }
  /// Index of the site displaced by `shift` cells along `axis`, periodic.
  std::size_t neighbor(std::size_t k, int axis, int shift) const {
    const int m = points[axis];
    const int idx = axis_index(k, axis);
    const int moved = ((idx + shift) % m + m) % m;
    return k + (static_cast<std::ptrdiff_t>(moved) - idx) * static_cast<std::ptrdiff_t>(stride(axis));
  }
  /// Shortest wrapped separation (in cells) between two indices on one axis.
  static int MinimalImage(int separation, int m) {
    int d = ((separation % m) + m) % m;
    return d > m / 2 ? d - m : d;
  }
  /// Angular wavenumbers of DFT mode index m along `axis`: 2 pi m / (M dx)
  /// for m < M/2 and 2 pi (m - M) / (M dx) otherwise (Nyquist goes to -M/2).
  std::vector<double> Wavenumbers(int axis) const {
    const int m = points[axis];
    std::vector<double> p(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      const int signed_j = j < m / 2 ? j : j - m;
      p[static_cast<std::size_t>(j)] = 2.0 * kPi * signed_j / (m * dx);
    }
    return p;
  }

  void Validate() const {
    if (dims() < 1 || dims() > 2) Fail(ErrorCode::kInvalidArgument, "grid must be 1D or 2D");
    if (static_cast<int>(x0.size()) != dims()) {
      Fail(ErrorCode::kInvalidArgument, "grid origin must have one entry per axis");
    }
    for (int m : points) {
      if (m < 2 || !IsPowerOfTwo(static_cast<std::uint64_t>(m))) {
        Fail(ErrorCode::kInvalidArgument, "grid points per axis must be a power of two >= 2");
      }
    }
    if (!(dx > 0.0)) Fail(ErrorCode::kInvalidArgument, "grid spacing must be positive");
  }
};

}  // namespace nlsim
