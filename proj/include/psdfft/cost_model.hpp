#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "psdfft/fft.hpp"

namespace psdfft {

enum class Algorithm { mirroring, psd, opsd };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// External-memory and DFT point counts for one algorithm at n x m.
struct CostReport {
  Algorithm algorithm = Algorithm::opsd;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t dram_points = 0;
  std::uint64_t dft_points = 0;

  friend bool operator==(const CostReport&, const CostReport&) = default;
};

/// Closed forms:
///   mirroring  8nm          8nm
///   psd        4nm          4nm
///   opsd       3nm+n+m-1    3nm+m
CostReport cost_of(Algorithm algorithm, std::uint64_t n, std::uint64_t m);

/// Rows in order mirroring, psd, opsd.
std::array<CostReport, 3> cost_table(std::uint64_t n, std::uint64_t m);

/// Counters from a finished run plus the metadata needed to pick the
/// matching formula.
struct CountedRun {
  Algorithm algorithm = Algorithm::opsd;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  OpCounter counter;
};

struct Reconciliation {
  std::int64_t dft_delta = 0;   // counted - formula
  std::int64_t dram_delta = 0;  // counted - formula

  bool exact() const noexcept { return dft_delta == 0 && dram_delta == 0; }
};

/// Integer comparison of a run against its report. ParameterError if the
/// run's algorithm or size differs from the report's.
Reconciliation reconcile(const CostReport& report, const CountedRun& run);

/// key=value lines, one per field.
std::string to_key_value(const CostReport& report);

}  // namespace psdfft
