#include "nlsim/coupling.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "nlsim/textio.hpp"

namespace nlsim {

CouplingMatrix::CouplingMatrix(std::size_t dim) : dim_(dim), values_(dim * dim, 0.0) {
  if (!IsPowerOfTwo(dim)) {
    Fail(ErrorCode::kInvalidArgument, "coupling dimension must be a power of two");
  }
}

CouplingMatrix CouplingMatrix::FromDense(std::size_t dim, std::span<const double> values) {
  if (values.size() != dim * dim) {
    Fail(ErrorCode::kInvalidArgument, "dense coupling needs dim*dim values");
  }
  CouplingMatrix f(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double v = values[k * dim + j];
      if (v != values[j * dim + k]) {
        Fail(ErrorCode::kInvalidArgument, "asymmetric coupling at (" + std::to_string(k) +
                                              ", " + std::to_string(j) + ")");
      }
      if (!std::isfinite(v)) Fail(ErrorCode::kInvalidArgument, "non-finite coupling entry");
      f.values_[k * dim + j] = v;
    }
  }
  return f;
}

CouplingMatrix CouplingMatrix::FromEntries(std::size_t dim, std::span<const Entry> entries) {
  CouplingMatrix f(dim);
  std::vector<char> seen(dim * dim, 0);
  for (const auto& e : entries) {
    if (e.row >= dim || e.col >= dim) {
      Fail(ErrorCode::kOutOfRange, "coupling entry index outside matrix");
    }
    if (!std::isfinite(e.value)) Fail(ErrorCode::kInvalidArgument, "non-finite coupling entry");
    const std::size_t a = e.row * dim + e.col;
    const std::size_t b = e.col * dim + e.row;
    if (seen[a] || seen[b]) {
      if (f.values_[a] != e.value) {
        Fail(ErrorCode::kInvalidArgument, "asymmetric coupling at (" + std::to_string(e.row) +
                                              ", " + std::to_string(e.col) + ")");
      }
    }
    f.Set(e.row, e.col, e.value);
    seen[a] = seen[b] = 1;
  }
  return f;
}

void CouplingMatrix::Set(std::size_t k, std::size_t j, double value) {
  values_[k * dim_ + j] = value;
  values_[j * dim_ + k] = value;
}

void CouplingMatrix::Add(std::size_t k, std::size_t j, double value) {
  values_[k * dim_ + j] += value;
  if (k != j) values_[j * dim_ + k] = values_[k * dim_ + j];
}

double CouplingMatrix::RowSum(std::size_t k) const {
  long double s = 0.0L;
  for (std::size_t j = 0; j < dim_; ++j) s += values_[k * dim_ + j];
  return static_cast<double>(s);
}

std::vector<double> CouplingMatrix::Potential(std::span<const double> weights) const {
  if (weights.size() != dim_) Fail(ErrorCode::kInvalidArgument, "weight count mismatch");
  std::vector<double> v(dim_, 0.0);
  for (std::size_t k = 0; k < dim_; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) s += values_[k * dim_ + j] * weights[j];
    v[k] = s;
  }
  return v;
}

std::vector<CouplingMatrix::Entry> CouplingMatrix::UpperEntries() const {
  std::vector<Entry> out;
  for (std::size_t k = 0; k < dim_; ++k) {
    for (std::size_t j = k; j < dim_; ++j) {
      if (values_[k * dim_ + j] != 0.0) out.push_back({k, j, values_[k * dim_ + j]});
    }
  }
  return out;
}

bool CouplingMatrix::IsZero() const {
  for (double v : values_) {
    if (v != 0.0) return false;
  }
  return true;
}

void CouplingMatrix::WriteTripletsCsv(std::ostream& out) const {
  out << "row,col,value\n";
  for (std::size_t k = 0; k < dim_; ++k) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const double v = values_[k * dim_ + j];
      if (v != 0.0) out << k << ',' << j << ',' << FormatDouble(v) << '\n';
    }
  }
}

CouplingMatrix CouplingMatrix::ReadTripletsCsv(std::istream& in, std::size_t dim) {
  std::vector<Entry> entries;
  std::string line;
  bool header_checked = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = SplitFields(line, ',');
    if (!header_checked) {
      header_checked = true;
      if (!fields.empty() && fields[0] == "row") continue;
    }
    if (fields.size() != 3) Fail(ErrorCode::kInvalidArgument, "triplet line needs 3 fields: " + line);
    const long long r = ParseInteger(fields[0]);
    const long long c = ParseInteger(fields[1]);
    if (r < 0 || c < 0) Fail(ErrorCode::kOutOfRange, "negative triplet index");
    entries.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c),
                       ParseDouble(fields[2])});
  }
  return FromEntries(dim, entries);
}

}  // namespace nlsim
