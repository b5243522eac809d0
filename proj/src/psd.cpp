#include "psdfft/psd.hpp"

#include <numbers>
#include <string>

namespace psdfft {
namespace {

void require_min_dims(const RealMatrix& image) {
  if (image.rows() < 2 || image.cols() < 2) {
    throw SizeError("boundary decomposition needs at least 2x2, got " +
                    std::to_string(image.rows()) + "x" + std::to_string(image.cols()));
  }
}

// Column j of the column-transformed border image, row i.
Complex column_stage_value(const BoundaryData& bd, std::span<const Complex> col0,
                           std::span<const Complex> nu, std::size_t i, std::size_t j) {
  const std::size_t m = bd.cols();
  if (j == 0) return col0[i];
  if (j == m - 1) return -col0[i] + bd.corner_sum * nu[i];
  return bd.first_row[j] * nu[i];
}

}  // namespace

RealMatrix border_image(const RealMatrix& image) {
  require_min_dims(image);
  const std::size_t n = image.rows();
  const std::size_t m = image.cols();
  RealMatrix b(n, m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    b(0, j) += image(n - 1, j) - image(0, j);
    b(n - 1, j) += image(0, j) - image(n - 1, j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    b(i, 0) += image(i, m - 1) - image(i, 0);
    b(i, m - 1) += image(i, 0) - image(i, m - 1);
  }
  return b;
}

BoundaryData boundary_data(const RealMatrix& image) {
  require_min_dims(image);
  const std::size_t n = image.rows();
  const std::size_t m = image.cols();
  BoundaryData bd;
  bd.first_row.resize(m);
  bd.first_col.resize(n);
  for (std::size_t j = 0; j < m; ++j) bd.first_row[j] = image(n - 1, j) - image(0, j);
  bd.first_row[0] += image(0, m - 1) - image(0, 0);
  bd.first_row[m - 1] += image(0, 0) - image(0, m - 1);

  for (std::size_t i = 0; i < n; ++i) bd.first_col[i] = image(i, m - 1) - image(i, 0);
  bd.first_col[0] += image(n - 1, 0) - image(0, 0);
  bd.first_col[n - 1] += image(0, 0) - image(n - 1, 0);

  bd.corner_sum = bd.first_row[0] + bd.first_row[m - 1];
  return bd;
}

bool has_border_structure(const RealMatrix& border, double tolerance) {
  const std::size_t n = border.rows();
  const std::size_t m = border.cols();
  if (n < 2 || m < 2) return false;
  auto close = [tolerance](double a, double b) { return std::abs(a - b) <= tolerance; };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    for (std::size_t j = 1; j + 1 < m; ++j) {
      if (!close(border(i, j), 0.0)) return false;
    }
    if (!close(border(i, m - 1), -border(i, 0))) return false;
  }
  for (std::size_t j = 1; j + 1 < m; ++j) {
    if (!close(border(n - 1, j), -border(0, j))) return false;
  }
  const double corner = -(border(0, 0) + border(0, m - 1) + border(n - 1, 0));
  return close(border(n - 1, m - 1), corner);
}

std::vector<Complex> nu_vector(std::size_t n) {
  if (n < 2) throw SizeError("nu vector needs n >= 2, got " + std::to_string(n));
  const TwiddleTable w(n);
  std::vector<Complex> nu(n);
  nu[0] = {0.0, 0.0};
  for (std::size_t k = 1; k < n; ++k) {
    nu[k] = Complex{1.0, 0.0} - w(static_cast<std::int64_t>(n - k));
  }
  return nu;
}

ComplexMatrix opsd_boundary_spectrum(const BoundaryData& bd, OpCounter& counter) {
  const std::size_t n = bd.rows();
  const std::size_t m = bd.cols();
  if (n < 2 || m < 2 || !is_power_of_two(n) || !is_power_of_two(m)) {
    throw SizeError("boundary spectrum needs power-of-two dimensions >= 2, got " +
                    std::to_string(n) + "x" + std::to_string(m));
  }
  if (bd.first_row[0] != bd.first_col[0]) {
    throw ParameterError("boundary row and column disagree on the shared corner");
  }

  std::vector<Complex> col0(bd.first_col.begin(), bd.first_col.end());
  FftPlan(n).transform(col0, Direction::forward);
  const std::vector<Complex> nu = nu_vector(n);

  const FftPlan row_plan(m);
  ComplexMatrix out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = out.row(i);
    for (std::size_t j = 0; j < m; ++j) row[j] = column_stage_value(bd, col0, nu, i, j);
    row_plan.transform(row, Direction::forward);
  }

  const auto nm = static_cast<std::uint64_t>(n * m);
  OpCounter local;
  local.dft_points = n + nm;
  local.ext_mem_points = (n + m - 1) + nm;
  counter += local;
  return out;
}

ComplexMatrix opsd_boundary_spectrum(const BoundaryData& boundary) {
  OpCounter discard;
  return opsd_boundary_spectrum(boundary, discard);
}

double smooth_denominator(std::size_t s, std::size_t t, std::size_t n, std::size_t m) {
  // Ratio first so s = n/2 lands exactly on cos(pi) = -1.
  const double fs = static_cast<double>(s) / static_cast<double>(n);
  const double ft = static_cast<double>(t) / static_cast<double>(m);
  return 2.0 * std::cos(2.0 * std::numbers::pi * fs) +
         2.0 * std::cos(2.0 * std::numbers::pi * ft) - 4.0;
}

ComplexMatrix smooth_spectrum(const ComplexMatrix& bhat) {
  const std::size_t n = bhat.rows();
  const std::size_t m = bhat.cols();
  // Same terms as smooth_denominator, tabulated per axis.
  auto axis_terms = [](std::size_t len) {
    std::vector<double> out(len);
    for (std::size_t k = 0; k < len; ++k) {
      out[k] = 2.0 * std::cos(2.0 * std::numbers::pi *
                              (static_cast<double>(k) / static_cast<double>(len)));
    }
    return out;
  };
  const std::vector<double> row_terms = axis_terms(n);
  const std::vector<double> col_terms = axis_terms(m);
  ComplexMatrix out(n, m);
  for (std::size_t s = 0; s < n; ++s) {
    const auto src = bhat.row(s);
    const auto dst = out.row(s);
    for (std::size_t t = 0; t < m; ++t) {
      if (s == 0 && t == 0) continue;
      dst[t] = src[t] / (row_terms[s] + col_terms[t] - 4.0);
    }
  }
  return out;
}

ComplexMatrix periodic_spectrum(const ComplexMatrix& image_spectrum,
                                const ComplexMatrix& smooth) {
  if (!image_spectrum.same_shape(smooth)) {
    throw SizeError("periodic spectrum: operand shapes differ");
  }
  ComplexMatrix out = image_spectrum;
  auto dst = out.values();
  const auto src = smooth.values();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= src[k];
  return out;
}

Decomposition decompose(const RealMatrix& image, PsdMethod method, OpCounter& counter,
                        const Fft2dOptions& options) {
  require_min_dims(image);
  OpCounter local;
  ComplexMatrix ihat = fft_2d(to_complex(image), local, options);
  ComplexMatrix bhat = method == PsdMethod::opsd
                           ? opsd_boundary_spectrum(boundary_data(image), local)
                           : fft_2d(to_complex(border_image(image)), local, options);
  ComplexMatrix shat = smooth_spectrum(bhat);
  ComplexMatrix phat = periodic_spectrum(ihat, shat);

  const ComplexMatrix p = ifft_2d(phat, options);
  const ComplexMatrix s = ifft_2d(shat, options);
  const double limit = 1e-9 * max_abs(image);
  const double residue = std::max(max_abs(imag_part(p)), max_abs(imag_part(s)));
  if (residue > limit) {
    throw NumericalError("imaginary residue " + std::to_string(residue) +
                         " exceeds tolerance " + std::to_string(limit));
  }
  counter += local;
  return Decomposition{std::move(ihat), std::move(phat), std::move(shat), real_part(p),
                       real_part(s)};
}

Decomposition decompose(const RealMatrix& image, PsdMethod method) {
  OpCounter discard;
  return decompose(image, method, discard);
}

double cross_axis_energy(const ComplexMatrix& spectrum) {
  double energy = 0.0;
  for (std::size_t s = 1; s < spectrum.rows(); ++s) energy += std::norm(spectrum(s, 0));
  for (std::size_t t = 1; t < spectrum.cols(); ++t) energy += std::norm(spectrum(0, t));
  return energy;
}

}  // namespace psdfft
