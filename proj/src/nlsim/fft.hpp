#pragma once

#include <span>

#include "nlsim/common.hpp"

namespace nlsim {

/// Unitary multi-dimensional DFT, applied in place.
///
/// `data` holds `batch` interleaved transforms: element `i` of transform `b`
/// lives at `data[i * batch + b]`, with `i` the row-major index over `shape`.
/// The forward direction uses the kernel exp(-2 pi i j m / M); both directions
/// are scaled by 1/sqrt(prod(shape)) so that a forward/inverse pair is the
/// identity and every transform preserves the 2-norm.
void UnitaryDft(std::span<Complex> data, std::span<const int> shape, int batch,
                bool inverse);

}  // namespace nlsim
