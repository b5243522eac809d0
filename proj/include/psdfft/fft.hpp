#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "psdfft/matrix.hpp"

namespace psdfft {

enum class Direction { forward, inverse };

/// Work counters accumulated by the transform paths.
///
/// `dft_points` counts output points produced by DFT/FFT work.
/// `ext_mem_points` counts points read from the (simulated) external frame
/// store as transform input: every full-matrix pass reads n*m points, the
/// boundary shortcut reads only the n+m-1 distinct boundary values.
struct OpCounter {
  std::uint64_t dft_points = 0;
  std::uint64_t ext_mem_points = 0;

  OpCounter& operator+=(const OpCounter& other) noexcept {
    dft_points += other.dft_points;
    ext_mem_points += other.ext_mem_points;
    return *this;
  }
  friend OpCounter operator+(OpCounter a, const OpCounter& b) noexcept {
    return a += b;
  }
  friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

/// Roots of unity w^k = exp(-i 2 pi k / n), k = 0..n-1.
class TwiddleTable {
 public:
  explicit TwiddleTable(std::size_t n);

  std::size_t size() const noexcept { return factors_.size(); }

  /// w^k for any integer k, reduced modulo n.
  Complex operator()(std::int64_t k) const noexcept {
    const auto n = static_cast<std::int64_t>(factors_.size());
    const std::int64_t r = k % n;
    return factors_[static_cast<std::size_t>(r < 0 ? r + n : r)];
  }

  std::span<const Complex> factors() const noexcept { return factors_; }

 private:
  std::vector<Complex> factors_;
};

/// Precomputed radix-2 plan for one power-of-two length. Immutable after
/// construction, so one plan can be shared across threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const noexcept { return twiddles_.size(); }

  /// In-place transform of exactly size() values. Forward is unnormalized,
  /// inverse carries 1/n.
  void transform(std::span<Complex> data, Direction dir) const;

  const TwiddleTable& twiddles() const noexcept { return twiddles_; }

 private:
  TwiddleTable twiddles_;
  std::vector<std::uint32_t> bit_reverse_;
};

/// log2(n) butterfly stages, each with n/2 butterflies.
std::size_t fft_stage_count(std::size_t n);
std::size_t fft_butterflies_per_stage(std::size_t n);

std::vector<Complex> fft_1d(std::span<const Complex> v, Direction dir);

/// Direct O(n^2) evaluation; accepts any length >= 1.
std::vector<Complex> naive_dft_1d(std::span<const Complex> v, Direction dir);

enum class PassOrder { rows_first, columns_first };

struct Fft2dOptions {
  PassOrder order = PassOrder::rows_first;
  /// Worker threads per pass; 0 or 1 runs sequentially.
  unsigned threads = 1;
};

/// Row-column 2D DFT. Adds 2*n*m to both counter fields.
ComplexMatrix fft_2d(const ComplexMatrix& input, OpCounter& counter,
                     const Fft2dOptions& options = {});
ComplexMatrix fft_2d(const ComplexMatrix& input);

/// Inverse 2D DFT with 1/(n*m) normalization.
ComplexMatrix ifft_2d(const ComplexMatrix& spectrum, const Fft2dOptions& options = {});

/// Direct O(n^2 m^2) double sum over the grid; any dimensions.
ComplexMatrix naive_dft_2d(const ComplexMatrix& input);

/// Worker count from PSDFFT_THREADS (unset or 0 -> sequential).
unsigned threads_from_env();

}  // namespace psdfft
