#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nlsim {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Tolerance used for exactness checks (normalization, symmetry of tabulated
/// kernels, clean ancilla).
inline constexpr double kExactTol = 1e-12;

enum class ErrorCode {
  kInvalidArgument,
  kOutOfRange,
  kNumerical,
  kIo,
  kResourceLimit,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline bool IsPowerOfTwo(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline int Log2Exact(std::uint64_t v) {
  int bits = 0;
  while ((std::uint64_t{1} << bits) < v) ++bits;
  return bits;
}

}  // namespace nlsim
