#include "nlsim/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace nlsim {
namespace {

using PlanKey = std::tuple<std::vector<int>, int, bool>;

// FFTW planning is not thread safe; execution of an existing plan on new
// arrays is. Plans are created unaligned so any std::vector storage works.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan Get(std::span<const int> shape, int batch, bool inverse,
                fftw_complex* scratch) {
    std::lock_guard<std::mutex> lock(mutex_);
    PlanKey key{std::vector<int>(shape.begin(), shape.end()), batch, inverse};
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    fftw_plan plan = fftw_plan_many_dft(
        static_cast<int>(shape.size()), shape.data(), batch, scratch, nullptr,
        batch, 1, scratch, nullptr, batch, 1,
        inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) Fail(ErrorCode::kNumerical, "fftw planning failed");
    plans_.emplace(std::move(key), plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& Cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void UnitaryDft(std::span<Complex> data, std::span<const int> shape, int batch,
                bool inverse) {
  std::size_t points = 1;
  for (int m : shape) {
    if (m <= 0) Fail(ErrorCode::kInvalidArgument, "dft shape must be positive");
    points *= static_cast<std::size_t>(m);
  }
  if (batch <= 0 || points * static_cast<std::size_t>(batch) != data.size()) {
    Fail(ErrorCode::kInvalidArgument, "dft shape does not match data length");
  }
  auto* raw = reinterpret_cast<fftw_complex*>(data.data());
  // FFTW_ESTIMATE never touches the array while planning.
  fftw_plan plan = Cache().Get(shape, batch, inverse, raw);
  fftw_execute_dft(plan, raw, raw);
  const double scale = 1.0 / std::sqrt(static_cast<double>(points));
  for (auto& z : data) z *= scale;
}

}  // namespace nlsim
