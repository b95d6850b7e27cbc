#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nlsim/common.hpp"

namespace nlsim {

/// Symmetric real matrix f_kj defining the potential sum_j f_kj |a_j|^2 at
/// site k. Symmetry is exact: every write sets both (k, j) and (j, k).
class CouplingMatrix {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };

  /// Zero matrix; `dim` must be a power of two.
  explicit CouplingMatrix(std::size_t dim);

  /// Row-major dense values; throws "asymmetric coupling" unless
  /// values[k*dim+j] == values[j*dim+k] bitwise.
  static CouplingMatrix FromDense(std::size_t dim, std::span<const double> values);

  /// Builds from (row, col, value) entries; a pair given in both orders must
  /// agree exactly, a pair given once is mirrored.
  static CouplingMatrix FromEntries(std::size_t dim, std::span<const Entry> entries);

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t k, std::size_t j) const { return values_[k * dim_ + j]; }

  void Set(std::size_t k, std::size_t j, double value);
  void Add(std::size_t k, std::size_t j, double value);

  /// Row sum evaluated exactly for stencil-like rows (extended precision
  /// accumulation of the stored doubles).
  double RowSum(std::size_t k) const;

  /// Potential sum_j f_kj w_j at every site.
  std::vector<double> Potential(std::span<const double> weights) const;

  /// Nonzero entries with row <= col, row-major order.
  std::vector<Entry> UpperEntries() const;

  bool IsZero() const;
  std::span<const double> dense() const { return values_; }

  /// Sparse triplet CSV ("row,col,value", every nonzero entry, both halves).
  void WriteTripletsCsv(std::ostream& out) const;
  static CouplingMatrix ReadTripletsCsv(std::istream& in, std::size_t dim);

  friend bool operator==(const CouplingMatrix&, const CouplingMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<double> values_;
};

}  // namespace nlsim
