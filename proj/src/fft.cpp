#include "psdfft/fft.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

namespace psdfft {
namespace {

void require_fft_length(std::size_t n) {
  if (n < 2 || !is_power_of_two(n)) {
    throw SizeError("FFT length must be a power of two >= 2, got " + std::to_string(n));
  }
}

void require_fft_dims(std::size_t rows, std::size_t cols) {
  if (rows < 2 || cols < 2 || !is_power_of_two(rows) || !is_power_of_two(cols)) {
    throw SizeError("2D FFT dimensions must be powers of two >= 2, got " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

// Runs body(begin, end) over [0, count) split into contiguous chunks.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1u), count);
  if (workers <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
}

void row_pass(ComplexMatrix& m, const FftPlan& plan, Direction dir, unsigned threads) {
  parallel_for(m.rows(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) plan.transform(m.row(i), dir);
  });
}

void column_pass(ComplexMatrix& m, const FftPlan& plan, Direction dir, unsigned threads) {
  // Columns are gathered in blocks so each source row is read contiguously.
  constexpr std::size_t kBlock = 16;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t blocks = (cols + kBlock - 1) / kBlock;
  parallel_for(blocks, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<Complex> buffer(kBlock * rows);
    for (std::size_t b = begin; b < end; ++b) {
      const std::size_t j0 = b * kBlock;
      const std::size_t width = std::min(kBlock, cols - j0);
      for (std::size_t i = 0; i < rows; ++i) {
        const auto row = m.row(i);
        for (std::size_t c = 0; c < width; ++c) buffer[c * rows + i] = row[j0 + c];
      }
      for (std::size_t c = 0; c < width; ++c) {
        plan.transform(std::span<Complex>(buffer).subspan(c * rows, rows), dir);
      }
      for (std::size_t i = 0; i < rows; ++i) {
        const auto row = m.row(i);
        for (std::size_t c = 0; c < width; ++c) row[j0 + c] = buffer[c * rows + i];
      }
    }
  });
}

ComplexMatrix transform_2d(const ComplexMatrix& input, Direction dir,
                           const Fft2dOptions& options) {
  require_fft_dims(input.rows(), input.cols());
  ComplexMatrix out = input;
  const FftPlan row_plan(input.cols());
  const FftPlan col_plan(input.rows());
  if (options.order == PassOrder::rows_first) {
    row_pass(out, row_plan, dir, options.threads);
    column_pass(out, col_plan, dir, options.threads);
  } else {
    column_pass(out, col_plan, dir, options.threads);
    row_pass(out, row_plan, dir, options.threads);
  }
  return out;
}

}  // namespace

TwiddleTable::TwiddleTable(std::size_t n) {
  if (n == 0) throw SizeError("twiddle table length must be >= 1");
  factors_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle =
        -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    factors_[k] = {std::cos(angle), std::sin(angle)};
  }
  // Snap the quarter-period points so w^{n/4}, w^{n/2} are exact.
  if (n % 2 == 0) factors_[n / 2] = {-1.0, 0.0};
  if (n % 4 == 0) {
    factors_[n / 4] = {0.0, -1.0};
    factors_[3 * n / 4] = {0.0, 1.0};
  }
}

FftPlan::FftPlan(std::size_t n) : twiddles_((require_fft_length(n), n)) {
  const int bits = std::countr_zero(n);
  bit_reverse_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::uint32_t r = 0;
    for (int b = 0; b < bits; ++b) r |= ((k >> b) & 1u) << (bits - 1 - b);
    bit_reverse_[k] = r;
  }
}

void FftPlan::transform(std::span<Complex> data, Direction dir) const {
  const std::size_t n = size();
  if (data.size() != n) {
    throw SizeError("plan of length " + std::to_string(n) + " applied to " +
                    std::to_string(data.size()) + " values");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (k < bit_reverse_[k]) std::swap(data[k], data[bit_reverse_[k]]);
  }
  const auto w = twiddles_.factors();
  const bool inverse = dir == Direction::inverse;
  const double sign = inverse ? -1.0 : 1.0;
  // Written out on re/im parts: std::complex multiplication goes through a
  // NaN-recovering library call unless -ffast-math is on.
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      Complex* lo = data.data() + start;
      Complex* hi = lo + half;
      for (std::size_t k = 0; k < half; ++k) {
        const double wr = w[k * stride].real();
        const double wi = sign * w[k * stride].imag();
        const double xr = hi[k].real();
        const double xi = hi[k].imag();
        const double br = xr * wr - xi * wi;
        const double bi = xr * wi + xi * wr;
        const double ar = lo[k].real();
        const double ai = lo[k].imag();
        lo[k] = {ar + br, ai + bi};
        hi[k] = {ar - br, ai - bi};
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : data) v *= scale;
  }
}

std::size_t fft_stage_count(std::size_t n) {
  require_fft_length(n);
  return static_cast<std::size_t>(std::countr_zero(n));
}

std::size_t fft_butterflies_per_stage(std::size_t n) {
  require_fft_length(n);
  return n / 2;
}

std::vector<Complex> fft_1d(std::span<const Complex> v, Direction dir) {
  require_fft_length(v.size());
  std::vector<Complex> out(v.begin(), v.end());
  FftPlan(v.size()).transform(out, dir);
  return out;
}

std::vector<Complex> naive_dft_1d(std::span<const Complex> v, Direction dir) {
  const std::size_t n = v.size();
  if (n == 0) throw SizeError("DFT of an empty vector");
  const TwiddleTable w(n);
  const bool inverse = dir == Direction::inverse;
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const Complex tw = w(static_cast<std::int64_t>((j * k) % n));
      sum += v[j] * (inverse ? std::conj(tw) : tw);
    }
    out[k] = inverse ? sum / static_cast<double>(n) : sum;
  }
  return out;
}

ComplexMatrix fft_2d(const ComplexMatrix& input, OpCounter& counter,
                     const Fft2dOptions& options) {
  ComplexMatrix out = transform_2d(input, Direction::forward, options);
  // Each of the two passes reads and produces n*m points; accumulated in a
  // local before merging so concurrent callers only touch their own counter.
  OpCounter local;
  const std::uint64_t points = static_cast<std::uint64_t>(input.size());
  local.dft_points = 2 * points;
  local.ext_mem_points = 2 * points;
  counter += local;
  return out;
}

ComplexMatrix fft_2d(const ComplexMatrix& input) {
  OpCounter discard;
  return fft_2d(input, discard);
}

ComplexMatrix ifft_2d(const ComplexMatrix& spectrum, const Fft2dOptions& options) {
  return transform_2d(spectrum, Direction::inverse, options);
}

ComplexMatrix naive_dft_2d(const ComplexMatrix& input) {
  const std::size_t n = input.rows();
  const std::size_t m = input.cols();
  const TwiddleTable wn(n);
  const TwiddleTable wm(m);
  ComplexMatrix out(n, m);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < m; ++t) {
      Complex sum{0.0, 0.0};
      std::size_t si = 0;  // (s * i) mod n
      for (std::size_t i = 0; i < n; ++i) {
        Complex inner{0.0, 0.0};
        std::size_t tj = 0;  // (t * j) mod m
        for (std::size_t j = 0; j < m; ++j) {
          inner += input(i, j) * wm.factors()[tj];
          tj += t;
          if (tj >= m) tj -= m;
        }
        sum += wn.factors()[si] * inner;
        si += s;
        if (si >= n) si -= n;
      }
      out(s, t) = sum;
    }
  }
  return out;
}

unsigned threads_from_env() {
  const char* raw = std::getenv("PSDFFT_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 0) {
    throw ParameterError(std::string("PSDFFT_THREADS must be a non-negative integer, got '") +
                         raw + "'");
  }
  return static_cast<unsigned>(value);
}

}  // namespace psdfft
