#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psdfft/fft.hpp"
#include "psdfft/matrix.hpp"
#include "psdfft/psd.hpp"

namespace psdfft {

/// Host -> accelerator payload: the image followed by the boundary row and
/// boundary column, nm + n + m values in total.
struct FramePacket {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::vector<double> image;         // n*m, row-major
  std::vector<double> boundary_row;  // m
  std::vector<double> boundary_col;  // n

  std::size_t payload_size() const noexcept {
    return image.size() + boundary_row.size() + boundary_col.size();
  }
  /// Flattened payload in wire order.
  std::vector<double> payload() const;

  friend bool operator==(const FramePacket&, const FramePacket&) = default;
};

/// Boundary vectors are computed host-side.
FramePacket pack_frame(const RealMatrix& image);

struct UnpackedFrame {
  RealMatrix image;
  BoundaryData boundary;
};
UnpackedFrame unpack_frame(const FramePacket& packet);

enum class Region : std::uint8_t { dram, bram, local_read, local_write };
enum class AccessOp : std::uint8_t { read, write };

std::string_view to_string(Region region);
std::string_view to_string(AccessOp op);
std::optional<Region> parse_region(std::string_view name);
std::optional<AccessOp> parse_access_op(std::string_view name);

struct MemoryRegion {
  Region name = Region::dram;
  std::size_t capacity = 0;  // points
  std::uint64_t read_count = 0;
  std::uint64_t write_count = 0;
};

struct TraceEvent {
  std::string pass;
  Region region = Region::dram;
  AccessOp op = AccessOp::read;
  std::uint64_t points = 0;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

// Pass labels emitted by run_pipeline.
namespace pass {
inline constexpr std::string_view ingest = "ingest";
inline constexpr std::string_view boundary_load = "boundary_load";
inline constexpr std::string_view nu_setup = "nu_setup";
inline constexpr std::string_view boundary_col_fft = "boundary_col_fft";
inline constexpr std::string_view image_row_fft = "image_row_fft";
inline constexpr std::string_view image_col_fft = "image_col_fft";
inline constexpr std::string_view boundary_row_fft = "boundary_row_fft";
inline constexpr std::string_view periodic_combine = "periodic_combine";
}  // namespace pass

struct PipelineTrace {
  std::vector<TraceEvent> events;
  std::array<MemoryRegion, 4> regions{MemoryRegion{Region::dram}, MemoryRegion{Region::bram},
                                      MemoryRegion{Region::local_read},
                                      MemoryRegion{Region::local_write}};
  OpCounter counter;

  const MemoryRegion& region(Region r) const { return regions[static_cast<std::size_t>(r)]; }
  /// DRAM points read as transform input; what the cost model calls DRAM
  /// access points.
  std::uint64_t external_read_points() const { return region(Region::dram).read_count; }
};

struct PipelineConfig {
  /// Defaults to 2n + 2m.
  std::optional<std::size_t> bram_capacity;
  /// Size of each local read/write staging buffer. Defaults to max(n, m),
  /// one full row or column.
  std::optional<std::size_t> staging_capacity;
};

struct PipelineResult {
  ComplexMatrix periodic_spectrum;
  ComplexMatrix smooth_spectrum;
  PipelineTrace trace;
};

/// Functional (untimed) model of the accelerator dataflow for one frame.
///
/// The packet lands in DRAM; the CU copies the n + m - 1 distinct boundary
/// values into BRAM and builds nu there. The image goes through a row and a
/// column pass against DRAM. The boundary column transform and the
/// synthesized boundary row pass run out of BRAM and the staging buffers
/// only, so they have no ordering dependency on the image passes. The
/// final pass reads the image spectrum back and writes P = I - S.
///
/// SizeError for non-power-of-two dims; CapacityError when BRAM or staging
/// would overflow.
PipelineResult run_pipeline(const FramePacket& packet, const PipelineConfig& config = {});

/// True for passes that belong to the boundary-image transform proper.
bool is_boundary_pass(std::string_view label);

/// Line-delimited records "pass_label,region,op,points" with a header line.
void write_trace_csv(const PipelineTrace& trace, std::ostream& out);
std::vector<TraceEvent> read_trace_csv(std::istream& in);

}  // namespace psdfft
