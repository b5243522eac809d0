#pragma once

#include <cstddef>
#include <vector>

#include "psdfft/fft.hpp"
#include "psdfft/matrix.hpp"

namespace psdfft {

/// First row and first column of the border image. Everything the
/// optimized boundary transform needs; n + m - 1 distinct values since
/// first_row[0] and first_col[0] are the same corner.
struct BoundaryData {
  std::vector<double> first_row;  // B(0, j), j = 0..m-1
  std::vector<double> first_col;  // B(i, 0), i = 0..n-1
  double corner_sum = 0.0;        // B(0, 0) + B(0, m-1)

  std::size_t rows() const noexcept { return first_col.size(); }
  std::size_t cols() const noexcept { return first_row.size(); }

  friend bool operator==(const BoundaryData&, const BoundaryData&) = default;
};

/// B = R + C: the jumps across opposing edges. Nonzero only on the outer
/// ring; interior of the last row/column negates the first row/column.
RealMatrix border_image(const RealMatrix& image);

/// Same values as the first row/column of border_image(image), computed
/// directly from the four image edges.
BoundaryData boundary_data(const RealMatrix& image);

/// True when `border` has the ring structure of a border image: zero
/// interior, negated opposite edges, and
/// B(n-1,m-1) = -(B(0,0) + B(0,m-1) + B(n-1,0)).
bool has_border_structure(const RealMatrix& border, double tolerance = 0.0);

/// Column transform shape shared by every interior column of B:
/// (0, 1 - w^{n-1}, 1 - w^{n-2}, ..., 1 - w), w = exp(-i 2 pi / n).
std::vector<Complex> nu_vector(std::size_t n);

/// Full 2D DFT of the border image from BoundaryData alone.
///
/// Only the first column is transformed; interior column j is
/// first_row[j] * nu and the last column is -col0 + corner_sum * nu. Those
/// columns are synthesized row by row while the row pass reads them, so
/// the n x m intermediate is never stored.
///
/// Counts n + n*m DFT points and (n + m - 1) + n*m input reads.
ComplexMatrix opsd_boundary_spectrum(const BoundaryData& boundary, OpCounter& counter);
ComplexMatrix opsd_boundary_spectrum(const BoundaryData& boundary);

/// 2 cos(2 pi s/n) + 2 cos(2 pi t/m) - 4; zero only at (0, 0) on the grid.
double smooth_denominator(std::size_t s, std::size_t t, std::size_t n, std::size_t m);

/// S(s,t) = B(s,t) / smooth_denominator(s,t), S(0,0) = 0.
ComplexMatrix smooth_spectrum(const ComplexMatrix& border_spectrum);

/// Elementwise image_spectrum - smooth.
ComplexMatrix periodic_spectrum(const ComplexMatrix& image_spectrum,
                                const ComplexMatrix& smooth);

enum class PsdMethod { opsd, naive_psd };

struct Decomposition {
  ComplexMatrix image_spectrum;
  ComplexMatrix periodic_spectrum;
  ComplexMatrix smooth_spectrum;
  RealMatrix periodic;
  RealMatrix smooth;
};

/// I = P + S with both spectra and the spatial components.
///
/// naive_psd transforms the full border image; opsd uses
/// opsd_boundary_spectrum. Spatial outputs are the real parts of the
/// inverse transforms; NumericalError if the discarded imaginary residue
/// exceeds 1e-9 * max|I|.
Decomposition decompose(const RealMatrix& image, PsdMethod method, OpCounter& counter,
                        const Fft2dOptions& options = {});
Decomposition decompose(const RealMatrix& image, PsdMethod method = PsdMethod::opsd);

/// Energy on the spectral axes, DC excluded:
/// sum_{s!=0} |X(s,0)|^2 + sum_{t!=0} |X(0,t)|^2. This is where the
/// cross-shaped edge artifact concentrates.
double cross_axis_energy(const ComplexMatrix& spectrum);

}  // namespace psdfft
