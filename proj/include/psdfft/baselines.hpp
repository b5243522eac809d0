#pragma once

#include <cstddef>
#include <vector>

#include "psdfft/matrix.hpp"

namespace psdfft {

enum class WindowKind { tukey, hamming, rect };

struct WindowSpec {
  WindowKind kind = WindowKind::rect;
  double alpha = 0.5;  // tukey taper fraction, ignored otherwise
};

/// 2n x 2m reflection [I, flipH; flipV, flipHV]; edge-continuous, so its
/// border image is identically zero.
RealMatrix mirror_image(const RealMatrix& image);

/// Hamming: 0.54 - 0.46 cos(2 pi k / (L-1)).
/// Tukey: cosine ramps over the first and last alpha/2 of the window, flat
/// in between; alpha = 0 is rect, alpha = 1 is Hann.
std::vector<double> window_1d(const WindowSpec& spec, std::size_t length);

/// Multiplies by the separable window w_rows(i) * w_cols(j).
RealMatrix apodize(const RealMatrix& image, const WindowSpec& spec);

}  // namespace psdfft
