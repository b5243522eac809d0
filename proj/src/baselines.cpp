#include "psdfft/baselines.hpp"

#include <numbers>
#include <string>

namespace psdfft {

RealMatrix mirror_image(const RealMatrix& image) {
  const std::size_t n = image.rows();
  const std::size_t m = image.cols();
  RealMatrix out(2 * n, 2 * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double v = image(i, j);
      out(i, j) = v;
      out(i, 2 * m - 1 - j) = v;
      out(2 * n - 1 - i, j) = v;
      out(2 * n - 1 - i, 2 * m - 1 - j) = v;
    }
  }
  return out;
}

std::vector<double> window_1d(const WindowSpec& spec, std::size_t length) {
  if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0)) {
    throw ParameterError("window alpha must lie in [0, 1], got " + std::to_string(spec.alpha));
  }
  if (length < 2) throw SizeError("window length must be >= 2");

  std::vector<double> w(length, 1.0);
  const double last = static_cast<double>(length - 1);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  switch (spec.kind) {
    case WindowKind::rect:
      break;
    case WindowKind::hamming:
      for (std::size_t k = 0; k < length; ++k) {
        const double x = static_cast<double>(k) / last;
        w[k] = 0.54 - 0.46 * std::cos(two_pi * x);
      }
      break;
    case WindowKind::tukey: {
      const double a = spec.alpha;
      if (a == 0.0) break;
      for (std::size_t k = 0; k < length; ++k) {
        const double x = static_cast<double>(k) / last;
        if (x < a / 2.0) {
          w[k] = 0.5 * (1.0 - std::cos(two_pi * x / a));
        } else if (x > 1.0 - a / 2.0) {
          w[k] = 0.5 * (1.0 - std::cos(two_pi * (1.0 - x) / a));
        }
      }
      break;
    }
  }
  return w;
}

RealMatrix apodize(const RealMatrix& image, const WindowSpec& spec) {
  if (image.rows() < 2 || image.cols() < 2) {
    throw SizeError("apodization needs at least 2x2");
  }
  const auto wr = window_1d(spec, image.rows());
  const auto wc = window_1d(spec, image.cols());
  RealMatrix out = image;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= wr[i] * wc[j];
  }
  return out;
}

}  // namespace psdfft
