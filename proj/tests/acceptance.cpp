// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "psdfft/baselines.hpp"
#include "psdfft/cost_model.hpp"
#include "psdfft/fft.hpp"
#include "psdfft/pipeline.hpp"
#include "psdfft/psd.hpp"

using namespace psdfft;

namespace {

using Clock = std::chrono::steady_clock;
using Shape = std::pair<std::size_t, std::size_t>;

struct Outcome {
  bool pass = true;
  std::string detail;
};

RealMatrix random_image(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, 255.0);
  RealMatrix out(n, m);
  for (double& v : out.values()) v = dist(rng);
  return out;
}

// 200 images per size; each size is paired with itself and its power-of-two
// neighbours in the set so the suite mixes square and non-square frames.
std::vector<RealMatrix> build_suite() {
  const std::vector<std::size_t> sizes{4, 8, 16, 32, 64};
  std::mt19937_64 rng(20240611);
  std::vector<RealMatrix> suite;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    std::vector<Shape> shapes{{sizes[k], sizes[k]}};
    if (k > 0) shapes.push_back({sizes[k], sizes[k - 1]});
    if (k + 1 < sizes.size()) shapes.push_back({sizes[k], sizes[k + 1]});
    for (std::size_t i = 0; i < 200; ++i) {
      const auto [n, m] = shapes[i % shapes.size()];
      suite.push_back(random_image(n, m, rng));
    }
  }
  return suite;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome oracle_equivalence(const std::vector<RealMatrix>& suite) {
  const auto start = Clock::now();
  double worst = 0.0;
  for (const auto& img : suite) {
    const ComplexMatrix x = to_complex(img);
    worst = std::max(worst, relative_max_abs_diff(fft_2d(x), naive_dft_2d(x)));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  return {worst < 1e-9 && secs < 30.0, std::to_string(suite.size()) + " images, " +
                                           fmt("worst rel err %.3g, %.2f s", worst, secs)};
}

bool close(const ComplexMatrix& got, const std::vector<std::vector<double>>& want) {
  for (std::size_t i = 0; i < want.size(); ++i) {
    for (std::size_t j = 0; j < want[i].size(); ++j) {
      if (std::abs(got(i, j) - Complex{want[i][j], 0.0}) > 5e-13) return false;
    }
  }
  return true;
}

bool close(const RealMatrix& got, const std::vector<std::vector<double>>& want) {
  return close(to_complex(got), want);
}

Outcome opsd_correctness(const std::vector<RealMatrix>& suite) {
  double worst = 0.0;
  for (const auto& img : suite) {
    const ComplexMatrix fast = opsd_boundary_spectrum(boundary_data(img));
    const ComplexMatrix slow = naive_dft_2d(to_complex(border_image(img)));
    worst = std::max(worst, relative_max_abs_diff(fast, slow));
  }
  const RealMatrix hand = RealMatrix::from_rows({{1, 2}, {3, 4}});
  const ComplexMatrix b_hat = opsd_boundary_spectrum(boundary_data(hand));
  const Decomposition d = decompose(hand);
  const bool hand_ok = close(b_hat, {{0, 4}, {8, 0}}) &&
                       close(d.smooth_spectrum, {{0, -1}, {-2, 0}}) &&
                       close(d.periodic_spectrum, {{10, -1}, {-2, 0}}) &&
                       close(d.periodic, {{1.75, 2.25}, {2.75, 3.25}}) &&
                       close(d.smooth, {{-0.75, -0.25}, {0.25, 0.75}});
  return {worst < 1e-9 && hand_ok,
          fmt("worst rel err %.3g, 2x2 example ", worst) + (hand_ok ? "matches" : "differs")};
}

Outcome reconstruction(const std::vector<RealMatrix>& suite) {
  double worst_sum = 0.0;
  double worst_mean = 0.0;
  for (const auto& img : suite) {
    const Decomposition d = decompose(img);
    RealMatrix sum = d.periodic;
    for (std::size_t k = 0; k < sum.size(); ++k) sum.values()[k] += d.smooth.values()[k];
    worst_sum = std::max(worst_sum, max_abs_diff(sum, img) / max_abs(img));
    worst_mean = std::max(worst_mean, std::abs(mean(d.smooth)) / max_abs(img));
  }
  return {worst_sum < 1e-9 && worst_mean < 1e-9,
          fmt("max rel |p+s-I| %.3g, max rel |mean(s)| %.3g", worst_sum, worst_mean)};
}

Outcome cost_reproduction() {
  const auto t = cost_table(512, 512);
  bool ok = t[0].dram_points == 2'097'152 && t[1].dram_points == 1'048'576 &&
            t[2].dram_points == 787'455 && t[2].dft_points == 786'944;
  std::mt19937_64 rng(4);
  std::size_t reconciled = 0;
  for (std::size_t n = 4; n <= 512; n *= 2) {
    const auto result = run_pipeline(pack_frame(random_image(n, n, rng)));
    const auto rec =
        reconcile(cost_of(Algorithm::opsd, n, n), {Algorithm::opsd, n, n, result.trace.counter});
    if (rec.exact()) ++reconciled;
    else ok = false;
  }
  return {ok, "table at 512: " + std::to_string(t[0].dram_points) + " / " +
                  std::to_string(t[1].dram_points) + " / " + std::to_string(t[2].dram_points) +
                  ", opsd dft " + std::to_string(t[2].dft_points) + "; " +
                  std::to_string(reconciled) + "/8 pipeline runs reconcile exactly"};
}

Outcome frame_protocol() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> dim(2, 300);
  bool ok = true;
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = dim(rng), m = dim(rng);
    const FramePacket pkt = pack_frame(RealMatrix(n, m, 1.0));
    ok = ok && pkt.payload_size() == n * m + n + m && pkt.payload().size() == n * m + n + m;
  }
  return {ok, "20 random size pairs"};
}

Outcome artifact_removal() {
  // Ratio frozen from an independent double-precision evaluation.
  constexpr double kPinnedRatio = 2.441406249998464e-4;
  RealMatrix ramp(64, 64);
  for (std::size_t i = 0; i < 64; ++i) {
    for (std::size_t j = 0; j < 64; ++j) ramp(i, j) = static_cast<double>(i + j);
  }
  const ComplexMatrix image_hat = naive_dft_2d(to_complex(ramp));
  const ComplexMatrix smooth_hat = smooth_spectrum(naive_dft_2d(to_complex(border_image(ramp))));
  const double e_oracle_image = cross_axis_energy(image_hat);
  const double e_oracle_periodic = cross_axis_energy(periodic_spectrum(image_hat, smooth_hat));
  const Decomposition d = decompose(ramp);
  const double e_image = cross_axis_energy(d.image_spectrum);
  const double e_periodic = cross_axis_energy(d.periodic_spectrum);
  const double ratio = e_periodic / e_image;
  const double oracle_ratio = e_oracle_periodic / e_oracle_image;
  const bool ok = e_periodic < e_image && std::abs(ratio - kPinnedRatio) < 1e-8 * kPinnedRatio &&
                  std::abs(oracle_ratio - kPinnedRatio) < 1e-8 * kPinnedRatio;
  return {ok, fmt("periodic/image cross-axis energy %.15g (oracle %.15g)", ratio, oracle_ratio)};
}

Outcome mirroring_baseline() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> dim(1, 40);
  bool zero = true;
  for (int k = 0; k < 50; ++k) {
    const RealMatrix mir = mirror_image(random_image(dim(rng), dim(rng), rng));
    const RealMatrix border = border_image(mir);
    for (double v : border.values()) zero = zero && v == 0.0;
  }
  OpCounter c;
  (void)fft_2d(to_complex(mirror_image(random_image(256, 256, rng))), c);
  const bool cost_ok = c.dft_points == cost_of(Algorithm::mirroring, 256, 256).dft_points &&
                       c.dft_points == 8u * 256 * 256;
  return {zero && cost_ok, std::string("border ") + (zero ? "exactly zero" : "nonzero") +
                               " for 50 images; mirrored 256x256 transform " +
                               std::to_string(c.dft_points) + " points"};
}

Outcome desk_benchmark() {
  constexpr std::size_t kFrames = 100, kRuns = 3, kSize = 512;
  std::mt19937_64 rng(8);
  std::vector<RealMatrix> frames;
  for (int k = 0; k < 4; ++k) frames.push_back(random_image(kSize, kSize, rng));
  (void)decompose(frames[0]);

  std::vector<double> ms;
  for (std::size_t r = 0; r < kRuns; ++r) {
    const auto start = Clock::now();
    for (std::size_t f = 0; f < kFrames; ++f) {
      const Decomposition d = decompose(frames[f % frames.size()]);
      if (d.periodic_spectrum.rows() != kSize) return {false, "bad output"};
    }
    ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - start).count() / kFrames);
  }
  double mean_ms = 0.0;
  for (double v : ms) mean_ms += v;
  mean_ms /= kRuns;
  double var = 0.0;
  for (double v : ms) var += (v - mean_ms) * (v - mean_ms);
  const double cv = std::sqrt(var / (kRuns - 1)) / mean_ms;

  OpCounter opsd, psd;
  (void)decompose(frames[0], PsdMethod::opsd, opsd);
  (void)decompose(frames[0], PsdMethod::naive_psd, psd);
  return {cv < 0.10 && opsd.dft_points < psd.dft_points,
          fmt("%.3f ms/frame, cv %.2f%%", mean_ms, 100 * cv) + ", dft points opsd " +
              std::to_string(opsd.dft_points) + " < psd " + std::to_string(psd.dft_points)};
}

}  // namespace

int main() {
  const std::vector<RealMatrix> suite = build_suite();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence", [&] { return oracle_equivalence(suite); }},
      {"boundary spectrum", [&] { return opsd_correctness(suite); }},
      {"reconstruction and DC", [&] { return reconstruction(suite); }},
      {"cost table and reconciliation", cost_reproduction},
      {"frame payload length", frame_protocol},
      {"ramp artifact removal", artifact_removal},
      {"mirroring baseline", mirroring_baseline},
      {"desk benchmark", desk_benchmark},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
