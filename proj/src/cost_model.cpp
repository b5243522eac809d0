#include "psdfft/cost_model.hpp"

#include "psdfft/errors.hpp"

namespace psdfft {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::mirroring:
      return "mirroring";
    case Algorithm::psd:
      return "psd";
    case Algorithm::opsd:
      return "opsd";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "mirroring") return Algorithm::mirroring;
  if (name == "psd") return Algorithm::psd;
  if (name == "opsd") return Algorithm::opsd;
  return std::nullopt;
}

CostReport cost_of(Algorithm algorithm, std::uint64_t n, std::uint64_t m) {
  if (n == 0 || m == 0) throw SizeError("cost model needs n, m >= 1");
  const std::uint64_t nm = n * m;
  CostReport r{algorithm, n, m, 0, 0};
  switch (algorithm) {
    case Algorithm::mirroring:
      r.dram_points = 8 * nm;
      r.dft_points = 8 * nm;
      break;
    case Algorithm::psd:
      r.dram_points = 4 * nm;
      r.dft_points = 4 * nm;
      break;
    case Algorithm::opsd:
      r.dram_points = 3 * nm + n + m - 1;
      r.dft_points = 3 * nm + m;
      break;
  }
  return r;
}

std::array<CostReport, 3> cost_table(std::uint64_t n, std::uint64_t m) {
  return {cost_of(Algorithm::mirroring, n, m), cost_of(Algorithm::psd, n, m),
          cost_of(Algorithm::opsd, n, m)};
}

Reconciliation reconcile(const CostReport& report, const CountedRun& run) {
  if (report.algorithm != run.algorithm) {
    throw ParameterError("reconcile: report is for " + std::string(to_string(report.algorithm)) +
                         ", run used " + std::string(to_string(run.algorithm)));
  }
  if (report.n != run.n || report.m != run.m) {
    throw ParameterError("reconcile: report size " + std::to_string(report.n) + "x" +
                         std::to_string(report.m) + " != run size " + std::to_string(run.n) +
                         "x" + std::to_string(run.m));
  }
  auto delta = [](std::uint64_t counted, std::uint64_t expected) {
    return static_cast<std::int64_t>(counted) - static_cast<std::int64_t>(expected);
  };
  return {delta(run.counter.dft_points, report.dft_points),
          delta(run.counter.ext_mem_points, report.dram_points)};
}

std::string to_key_value(const CostReport& r) {
  std::string out;
  out += "algorithm=" + std::string(to_string(r.algorithm)) + "\n";
  out += "n=" + std::to_string(r.n) + "\n";
  out += "m=" + std::to_string(r.m) + "\n";
  out += "dram_points=" + std::to_string(r.dram_points) + "\n";
  out += "dft_points=" + std::to_string(r.dft_points) + "\n";
  return out;
}

}  // namespace psdfft
