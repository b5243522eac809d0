#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psdfft/cost_model.hpp"
#include "psdfft/matrix.hpp"
#include "psdfft/pipeline.hpp"

namespace psdfft {

using Bytes = std::vector<std::uint8_t>;

/// P2 (ASCII) or P5 (binary) graymap. Samples are returned as-is in
/// 0..maxval; 16-bit P5 samples are big-endian.
RealMatrix read_pgm(std::span<const std::uint8_t> bytes);

/// P5 output. Values are clamped to [0, maxval] and rounded half away from
/// zero. maxval must be 255 or 65535.
Bytes write_pgm(const RealMatrix& image, int maxval = 255);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file(const std::filesystem::path& path, std::string_view text);

/// "OPSD" magic, u32 n, u32 m (little-endian), then the payload as
/// little-endian IEEE-754 doubles: image, boundary row, boundary column.
Bytes encode_frame_packet(const FramePacket& packet);
FramePacket decode_frame_packet(std::span<const std::uint8_t> bytes);

enum class SpectrumMode { magnitude, log_magnitude, phase, real, imag };

std::string_view to_string(SpectrumMode mode);
SpectrumMode parse_spectrum_mode(std::string_view name);

/// Real-valued view of a spectrum. log_magnitude is log(1 + |X|). With
/// `shift`, quadrants are swapped so (0, 0) lands at (n/2, m/2).
RealMatrix export_spectrum(const ComplexMatrix& spectrum, SpectrumMode mode, bool shift);

/// Moves (0, 0) to (n/2, m/2); an involution for even dimensions.
RealMatrix fft_shift(const RealMatrix& m);

/// Affine map v -> offset + gain * v used to bring a matrix into
/// [0, maxval] before writing a PGM.
struct Rescale {
  double offset = 0.0;
  double gain = 1.0;
};
Rescale fit_range(const RealMatrix& m, double maxval);
RealMatrix apply(const Rescale& r, const RealMatrix& m);

/// One row per line, comma-separated, shortest round-trip formatting.
/// Complex entries take two adjacent columns: re,im.
void write_matrix_csv(const RealMatrix& m, std::ostream& out);
void write_matrix_csv(const ComplexMatrix& m, std::ostream& out);
RealMatrix read_matrix_csv(std::istream& in);

/// Aggregate view of a pipeline trace.
struct TraceSummary {
  std::uint64_t events = 0;
  std::uint64_t dft_points = 0;
  std::uint64_t ext_mem_points = 0;
  std::array<MemoryRegion, 4> regions{};

  friend bool operator==(const TraceSummary& a, const TraceSummary& b) {
    if (a.events != b.events || a.dft_points != b.dft_points ||
        a.ext_mem_points != b.ext_mem_points) {
      return false;
    }
    for (std::size_t k = 0; k < a.regions.size(); ++k) {
      const auto &x = a.regions[k], &y = b.regions[k];
      if (x.name != y.name || x.capacity != y.capacity || x.read_count != y.read_count ||
          x.write_count != y.write_count) {
        return false;
      }
    }
    return true;
  }
};

TraceSummary summarize(const PipelineTrace& trace);

/// JSON documents with keys named after the struct fields.
std::string write_report(const CostReport& report);
std::string write_report(const TraceSummary& summary);
CostReport parse_cost_report(std::string_view document);
TraceSummary parse_trace_summary(std::string_view document);

}  // namespace psdfft
