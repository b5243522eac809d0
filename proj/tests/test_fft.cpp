#include "psdfft/fft.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <thread>

#include "test_support.hpp"

namespace psdfft {
namespace {

using testing::random_complex;
using testing::random_vector;

constexpr Complex I{0.0, 1.0};

void expect_vec_near(std::span<const Complex> got, std::span<const Complex> want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t k = 0; k < got.size(); ++k) {
    EXPECT_NEAR(got[k].real(), want[k].real(), tol) << "index " << k;
    EXPECT_NEAR(got[k].imag(), want[k].imag(), tol) << "index " << k;
  }
}

TEST(Fft1d, ImpulseGivesAllOnes) {
  const std::vector<Complex> v = {1, 0, 0, 0};
  const std::vector<Complex> want = {1, 1, 1, 1};
  expect_vec_near(fft_1d(v, Direction::forward), want, 0.0);
}

TEST(Fft1d, ConstantGivesDcOnly) {
  const Complex c{2.5, -1.0};
  const std::vector<Complex> v(4, c);
  const std::vector<Complex> want = {4.0 * c, 0, 0, 0};
  expect_vec_near(fft_1d(v, Direction::forward), want, 1e-15);
}

TEST(Fft1d, MatchesNaiveOnLength8) {
  std::mt19937_64 rng(11);
  const auto v = random_vector(8, rng);
  const auto fast = fft_1d(v, Direction::forward);
  const auto slow = naive_dft_1d(v, Direction::forward);
  EXPECT_LT(testing::max_abs_diff(fast, slow), 1e-12);
}

TEST(Fft1d, RejectsBadLengths) {
  const std::vector<Complex> three(3), one(1), empty;
  EXPECT_THROW(fft_1d(three, Direction::forward), SizeError);
  EXPECT_THROW(fft_1d(one, Direction::forward), SizeError);
  EXPECT_THROW(fft_1d(empty, Direction::forward), SizeError);
  EXPECT_THROW(FftPlan(12), SizeError);
}

TEST(Fft1d, InverseUndoesForward) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 2; n <= 1024; n *= 2) {
    const auto v = random_vector(n, rng);
    const auto back = fft_1d(fft_1d(v, Direction::forward), Direction::inverse);
    EXPECT_LT(testing::max_abs_diff(back, v), 1e-12) << "n=" << n;
  }
}

TEST(NaiveDft1d, SmallExamples) {
  expect_vec_near(naive_dft_1d(std::vector<Complex>{1, 0}, Direction::forward),
                  std::vector<Complex>{1, 1}, 0.0);
  expect_vec_near(naive_dft_1d(std::vector<Complex>{1, 1}, Direction::forward),
                  std::vector<Complex>{2, 0}, 0.0);
  expect_vec_near(naive_dft_1d(std::vector<Complex>{0, 1, 0, 0}, Direction::forward),
                  std::vector<Complex>{1, -I, -1, I}, 0.0);
}

TEST(NaiveDft1d, HandlesNonPowerOfTwo) {
  // Length 3: X_k = sum_j v_j exp(-2 pi i jk/3), evaluated directly.
  const std::vector<Complex> v = {1, 2, 3};
  std::vector<Complex> want(3);
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      want[k] += v[j] * std::exp(Complex{0, -2.0 * std::numbers::pi * j * k / 3.0});
    }
  }
  expect_vec_near(naive_dft_1d(v, Direction::forward), want, 1e-13);
  EXPECT_THROW(naive_dft_1d(std::vector<Complex>{}, Direction::forward), SizeError);
}

TEST(FftProperties, AgreesWithNaiveUpTo256) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 2; n <= 256; n *= 2) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto v = random_vector(n, rng);
      for (auto dir : {Direction::forward, Direction::inverse}) {
        const double err =
            testing::max_abs_diff(fft_1d(v, dir), naive_dft_1d(v, dir)) / testing::norm2(v);
        EXPECT_LT(err, 1e-9) << "n=" << n;
      }
    }
  }
}

TEST(FftProperties, Parseval) {
  std::mt19937_64 rng(6);
  for (std::size_t n = 2; n <= 512; n *= 2) {
    const auto v = random_vector(n, rng);
    const auto x = fft_1d(v, Direction::forward);
    const double time = std::pow(testing::norm2(v), 2);
    const double freq = std::pow(testing::norm2(x), 2) / static_cast<double>(n);
    EXPECT_NEAR(freq / time, 1.0, 1e-9) << "n=" << n;
  }
}

TEST(FftProperties, Linearity) {
  std::mt19937_64 rng(7);
  const Complex alpha{0.3, -1.2}, beta{-2.0, 0.5};
  for (std::size_t n = 2; n <= 256; n *= 2) {
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);
    std::vector<Complex> mix(n);
    for (std::size_t k = 0; k < n; ++k) mix[k] = alpha * a[k] + beta * b[k];
    const auto fa = fft_1d(a, Direction::forward);
    const auto fb = fft_1d(b, Direction::forward);
    const auto fmix = fft_1d(mix, Direction::forward);
    std::vector<Complex> want(n);
    for (std::size_t k = 0; k < n; ++k) want[k] = alpha * fa[k] + beta * fb[k];
    EXPECT_LT(testing::max_abs_diff(fmix, want), 1e-10) << "n=" << n;
  }
}

TEST(TwiddleTable, UnitModulusAndPeriodic) {
  for (std::size_t n : {1u, 2u, 3u, 8u, 100u, 512u}) {
    const TwiddleTable w(n);
    EXPECT_EQ(w(0), Complex(1.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(std::abs(w.factors()[k]), 1.0, 1e-12);
      const auto ks = static_cast<std::int64_t>(k);
      const auto ns = static_cast<std::int64_t>(n);
      EXPECT_EQ(w(ks), w(ks + ns));
      EXPECT_EQ(w(ks), w(ks + 5 * ns));
      EXPECT_EQ(w(ks), w(ks - ns));
    }
  }
}

TEST(TwiddleTable, MatchesExponential) {
  const std::size_t n = 16;
  const TwiddleTable w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex want = std::exp(Complex{0, -2.0 * std::numbers::pi * double(k) / double(n)});
    EXPECT_NEAR(std::abs(w.factors()[k] - want), 0.0, 1e-15);
  }
}

TEST(FftPlan, StageAndButterflyCounts) {
  EXPECT_EQ(fft_stage_count(2), 1u);
  EXPECT_EQ(fft_stage_count(512), 9u);
  EXPECT_EQ(fft_stage_count(1024), 10u);
  EXPECT_EQ(fft_butterflies_per_stage(512), 256u);
  EXPECT_THROW(fft_stage_count(6), SizeError);
}

TEST(Fft2d, HandExamples) {
  OpCounter c;
  const auto ones = fft_2d(ComplexMatrix(2, 2, Complex{1.0}), c);
  EXPECT_EQ(ones, ComplexMatrix::from_rows({{4, 0}, {0, 0}}));
  const auto x = fft_2d(ComplexMatrix::from_rows({{1, 2}, {3, 4}}), c);
  EXPECT_EQ(x, ComplexMatrix::from_rows({{10, -2}, {-4, 0}}));
  EXPECT_EQ(c.dft_points, 16u);
}

TEST(Fft2d, CountsTwoPassesOfPoints) {
  std::mt19937_64 rng(1);
  OpCounter c;
  (void)fft_2d(random_complex(8, 32, rng), c);
  EXPECT_EQ(c.dft_points, 2u * 8 * 32);
  EXPECT_EQ(c.ext_mem_points, 2u * 8 * 32);
}

TEST(Fft2d, MatchesNaive8x8) {
  std::mt19937_64 rng(2);
  const auto in = random_complex(8, 8, rng);
  EXPECT_LT(max_abs_diff(fft_2d(in), naive_dft_2d(in)), 1e-10);
}

TEST(Fft2d, RejectsNonPowerOfTwo) {
  EXPECT_THROW(fft_2d(ComplexMatrix(6, 8)), SizeError);
  EXPECT_THROW(fft_2d(ComplexMatrix(8, 1)), SizeError);
  EXPECT_THROW(ifft_2d(ComplexMatrix(3, 4)), SizeError);
}

TEST(Fft2d, PassOrderIndependent) {
  std::mt19937_64 rng(4);
  for (auto [n, m] : testing::pow2_shapes(2, 64)) {
    const auto in = random_complex(n, m, rng);
    OpCounter c;
    const auto rows_first = fft_2d(in, c, {PassOrder::rows_first, 1});
    const auto cols_first = fft_2d(in, c, {PassOrder::columns_first, 1});
    EXPECT_LT(max_abs_diff(rows_first, cols_first), 1e-10) << n << "x" << m;
  }
}

TEST(Fft2d, ThreadedMatchesSequential) {
  std::mt19937_64 rng(8);
  const auto in = random_complex(64, 32, rng);
  OpCounter seq, par;
  const auto a = fft_2d(in, seq, {PassOrder::rows_first, 1});
  const auto b = fft_2d(in, par, {PassOrder::rows_first, 4});
  EXPECT_EQ(a, b);
  EXPECT_EQ(seq, par);
}

TEST(Fft2d, SafeAcrossThreadsOnDistinctMatrices) {
  std::mt19937_64 rng(9);
  std::vector<ComplexMatrix> inputs;
  for (int k = 0; k < 8; ++k) inputs.push_back(random_complex(32, 32, rng));
  std::vector<ComplexMatrix> expected;
  for (const auto& in : inputs) expected.push_back(fft_2d(in));

  std::vector<OpCounter> counters(inputs.size());
  std::vector<std::optional<ComplexMatrix>> results(inputs.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      pool.emplace_back([&, k] { results[k] = fft_2d(inputs[k], counters[k]); });
    }
  }
  OpCounter total;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    EXPECT_EQ(*results[k], expected[k]);
    total += counters[k];
  }
  EXPECT_EQ(total.dft_points, 8u * 2 * 32 * 32);
}

TEST(NaiveDft2d, ScalarIdentity) {
  EXPECT_EQ(naive_dft_2d(ComplexMatrix(1, 1, Complex{3.5, -1})),
            ComplexMatrix(1, 1, Complex{3.5, -1}));
}

TEST(NaiveDft2d, HandExample) {
  const auto x = naive_dft_2d(ComplexMatrix::from_rows({{1, 2}, {3, 4}}));
  EXPECT_LT(max_abs_diff(x, ComplexMatrix::from_rows({{10, -2}, {-4, 0}})), 1e-15);
}

TEST(NaiveDft2d, RealInputIsHermitian) {
  std::mt19937_64 rng(10);
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{5, 3}, {4, 6}, {8, 8}}) {
    const auto x = naive_dft_2d(to_complex(testing::random_real(n, m, rng)));
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < m; ++t) {
        const Complex mirror = std::conj(x((n - s) % n, (m - t) % m));
        EXPECT_NEAR(std::abs(x(s, t) - mirror), 0.0, 1e-12);
      }
    }
  }
}

TEST(Ifft2d, Examples) {
  EXPECT_EQ(ifft_2d(ComplexMatrix::from_rows({{4, 0}, {0, 0}})), ComplexMatrix(2, 2, Complex{1}));
  EXPECT_LT(max_abs_diff(ifft_2d(ComplexMatrix::from_rows({{10, -2}, {-4, 0}})),
                         ComplexMatrix::from_rows({{1, 2}, {3, 4}})),
            1e-15);
}

TEST(Ifft2d, RoundTrip16x16) {
  std::mt19937_64 rng(12);
  const auto in = random_complex(16, 16, rng);
  EXPECT_LT(max_abs_diff(ifft_2d(fft_2d(in)), in), 1e-10);
}

TEST(Env, ThreadsFromEnvironment) {
  ::unsetenv("PSDFFT_THREADS");
  EXPECT_EQ(threads_from_env(), 0u);
  ::setenv("PSDFFT_THREADS", "3", 1);
  EXPECT_EQ(threads_from_env(), 3u);
  ::setenv("PSDFFT_THREADS", "-2", 1);
  EXPECT_THROW(threads_from_env(), ParameterError);
  ::unsetenv("PSDFFT_THREADS");
}

}  // namespace
}  // namespace psdfft
