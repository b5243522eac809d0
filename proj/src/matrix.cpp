#include "psdfft/matrix.hpp"

namespace psdfft {
namespace {

template <typename A, typename B>
void require_same_shape(const A& a, const B& b) {
  if (!a.same_shape(b)) {
    throw SizeError("shape mismatch: " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                    "x" + std::to_string(b.cols()));
  }
}

template <typename M>
double max_abs_impl(const M& m) {
  double best = 0.0;
  for (const auto& v : m.values()) best = std::max(best, std::abs(v));
  return best;
}

template <typename M>
double max_abs_diff_impl(const M& a, const M& b) {
  require_same_shape(a, b);
  double best = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) {
    best = std::max(best, std::abs(av[k] - bv[k]));
  }
  return best;
}

}  // namespace

ComplexMatrix to_complex(const RealMatrix& m) {
  std::vector<Complex> out(m.values().begin(), m.values().end());
  return ComplexMatrix(m.rows(), m.cols(), std::move(out));
}

RealMatrix real_part(const ComplexMatrix& m) {
  std::vector<double> out;
  out.reserve(m.size());
  for (const auto& v : m.values()) out.push_back(v.real());
  return RealMatrix(m.rows(), m.cols(), std::move(out));
}

RealMatrix imag_part(const ComplexMatrix& m) {
  std::vector<double> out;
  out.reserve(m.size());
  for (const auto& v : m.values()) out.push_back(v.imag());
  return RealMatrix(m.rows(), m.cols(), std::move(out));
}

double max_abs(const RealMatrix& m) { return max_abs_impl(m); }
double max_abs(const ComplexMatrix& m) { return max_abs_impl(m); }

double frobenius_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (const auto& v : m.values()) sum += std::norm(v);
  return std::sqrt(sum);
}

double mean(const RealMatrix& m) {
  double sum = 0.0;
  for (double v : m.values()) sum += v;
  return sum / static_cast<double>(m.size());
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
  return max_abs_diff_impl(a, b);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs_diff_impl(a, b);
}

double relative_max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& reference) {
  const double diff = max_abs_diff(a, reference);
  const double norm = frobenius_norm(reference);
  return norm > 0.0 ? diff / norm : diff;
}

}  // namespace psdfft
