#include "psdfft/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

namespace psdfft {
namespace {

constexpr std::array<std::string_view, 4> kRegionNames = {"dram", "bram", "local_read",
                                                          "local_write"};

// Owns the trace while one frame is processed and enforces the on-chip
// capacities.
class Machine {
 public:
  Machine(std::size_t dram_capacity, std::size_t bram_capacity, std::size_t staging_capacity) {
    trace_.regions = {MemoryRegion{Region::dram, dram_capacity},
                      MemoryRegion{Region::bram, bram_capacity},
                      MemoryRegion{Region::local_read, staging_capacity},
                      MemoryRegion{Region::local_write, staging_capacity}};
  }

  void access(std::string_view label, Region region, AccessOp op, std::uint64_t points) {
    if (points == 0) return;
    if ((region == Region::local_read || region == Region::local_write) &&
        points > slot(region).capacity) {
      throw CapacityError("staging buffer " + std::string(to_string(region)) + " holds " +
                          std::to_string(slot(region).capacity) + " points, pass " +
                          std::string(label) + " needs " + std::to_string(points));
    }
    auto& r = slot(region);
    if (op == AccessOp::read) {
      r.read_count += points;
      if (region == Region::dram) trace_.counter.ext_mem_points += points;
    } else {
      r.write_count += points;
    }
    trace_.events.push_back(TraceEvent{std::string(label), region, op, points});
  }

  // Stages one line through local_read, transforms it, and leaves it in
  // local_write.
  void stage_line(std::string_view label, std::size_t length) {
    access(label, Region::local_read, AccessOp::write, length);
    access(label, Region::local_read, AccessOp::read, length);
    trace_.counter.dft_points += length;
    access(label, Region::local_write, AccessOp::write, length);
  }

  void reserve_bram(std::string_view what, std::size_t points) {
    bram_used_ += points;
    if (bram_used_ > slot(Region::bram).capacity) {
      throw CapacityError("BRAM capacity " + std::to_string(slot(Region::bram).capacity) +
                          " exceeded while placing " + std::string(what) + " (" +
                          std::to_string(bram_used_) + " points)");
    }
  }

  PipelineTrace release() { return std::move(trace_); }

 private:
  MemoryRegion& slot(Region r) { return trace_.regions[static_cast<std::size_t>(r)]; }

  PipelineTrace trace_;
  std::size_t bram_used_ = 0;
};

}  // namespace

std::vector<double> FramePacket::payload() const {
  std::vector<double> out;
  out.reserve(payload_size());
  out.insert(out.end(), image.begin(), image.end());
  out.insert(out.end(), boundary_row.begin(), boundary_row.end());
  out.insert(out.end(), boundary_col.begin(), boundary_col.end());
  return out;
}

FramePacket pack_frame(const RealMatrix& image) {
  BoundaryData bd = boundary_data(image);
  FramePacket pkt;
  pkt.n = static_cast<std::uint32_t>(image.rows());
  pkt.m = static_cast<std::uint32_t>(image.cols());
  pkt.image = image.storage();
  pkt.boundary_row = std::move(bd.first_row);
  pkt.boundary_col = std::move(bd.first_col);
  return pkt;
}

UnpackedFrame unpack_frame(const FramePacket& pkt) {
  const std::size_t n = pkt.n;
  const std::size_t m = pkt.m;
  if (n < 2 || m < 2) throw SizeError("frame dimensions must be >= 2");
  if (pkt.image.size() != n * m || pkt.boundary_row.size() != m ||
      pkt.boundary_col.size() != n) {
    throw SizeError("frame payload sizes do not match " + std::to_string(n) + "x" +
                    std::to_string(m));
  }
  if (pkt.boundary_row[0] != pkt.boundary_col[0]) {
    throw ParameterError("boundary row and column disagree on the shared corner");
  }
  BoundaryData bd{pkt.boundary_row, pkt.boundary_col,
                  pkt.boundary_row.front() + pkt.boundary_row.back()};
  return {RealMatrix(n, m, pkt.image), std::move(bd)};
}

std::string_view to_string(Region region) {
  return kRegionNames[static_cast<std::size_t>(region)];
}

std::string_view to_string(AccessOp op) { return op == AccessOp::read ? "read" : "write"; }

std::optional<Region> parse_region(std::string_view name) {
  for (std::size_t k = 0; k < kRegionNames.size(); ++k) {
    if (kRegionNames[k] == name) return static_cast<Region>(k);
  }
  return std::nullopt;
}

std::optional<AccessOp> parse_access_op(std::string_view name) {
  if (name == "read") return AccessOp::read;
  if (name == "write") return AccessOp::write;
  return std::nullopt;
}

bool is_boundary_pass(std::string_view label) {
  return label == pass::nu_setup || label == pass::boundary_col_fft ||
         label == pass::boundary_row_fft;
}

PipelineResult run_pipeline(const FramePacket& packet, const PipelineConfig& config) {
  const UnpackedFrame frame = unpack_frame(packet);
  const std::size_t n = packet.n;
  const std::size_t m = packet.m;
  if (!is_power_of_two(n) || !is_power_of_two(m)) {
    throw SizeError("pipeline needs power-of-two frame dimensions, got " + std::to_string(n) +
                    "x" + std::to_string(m));
  }
  const BoundaryData& bd = frame.boundary;

  Machine hw(packet.payload_size() + n * m, config.bram_capacity.value_or(2 * n + 2 * m),
             config.staging_capacity.value_or(std::max(n, m)));

  // Host DMA: the whole packet lands in the DRAM frame buffer.
  hw.access(pass::ingest, Region::dram, AccessOp::write, packet.payload_size());

  // CU pulls the boundary vectors into BRAM. first_row[0] duplicates
  // first_col[0] and is copied on-chip instead of re-read.
  hw.reserve_bram("boundary_col", n);
  hw.reserve_bram("boundary_row", m);
  hw.access(pass::boundary_load, Region::dram, AccessOp::read, n + m - 1);
  hw.access(pass::boundary_load, Region::bram, AccessOp::write, n + m - 1);
  hw.access(pass::boundary_load, Region::bram, AccessOp::read, 1);
  hw.access(pass::boundary_load, Region::bram, AccessOp::write, 1);

  hw.reserve_bram("nu", n);
  const std::vector<Complex> nu = nu_vector(n);
  hw.access(pass::nu_setup, Region::bram, AccessOp::write, n);

  // Single boundary column transform; the result overwrites first_col.
  std::vector<Complex> col0(bd.first_col.begin(), bd.first_col.end());
  const FftPlan col_plan(n);
  const FftPlan row_plan(m);
  hw.access(pass::boundary_col_fft, Region::bram, AccessOp::read, n);
  hw.stage_line(pass::boundary_col_fft, n);
  col_plan.transform(col0, Direction::forward);
  hw.access(pass::boundary_col_fft, Region::local_write, AccessOp::read, n);
  hw.access(pass::boundary_col_fft, Region::bram, AccessOp::write, n);

  // Image row pass, in place in the frame buffer.
  ComplexMatrix spectrum = to_complex(frame.image);
  for (std::size_t i = 0; i < n; ++i) {
    hw.access(pass::image_row_fft, Region::dram, AccessOp::read, m);
    hw.stage_line(pass::image_row_fft, m);
    row_plan.transform(spectrum.row(i), Direction::forward);
    hw.access(pass::image_row_fft, Region::local_write, AccessOp::read, m);
    hw.access(pass::image_row_fft, Region::dram, AccessOp::write, m);
  }

  // Image column pass.
  std::vector<Complex> column(n);
  for (std::size_t j = 0; j < m; ++j) {
    hw.access(pass::image_col_fft, Region::dram, AccessOp::read, n);
    hw.stage_line(pass::image_col_fft, n);
    for (std::size_t i = 0; i < n; ++i) column[i] = spectrum(i, j);
    col_plan.transform(column, Direction::forward);
    for (std::size_t i = 0; i < n; ++i) spectrum(i, j) = column[i];
    hw.access(pass::image_col_fft, Region::local_write, AccessOp::read, n);
    hw.access(pass::image_col_fft, Region::dram, AccessOp::write, n);
  }

  // Boundary row pass: each row of the column-transformed border image is
  // synthesized from BRAM (col0[i], nu[i], first_row) as it is staged,
  // then divided by the smooth denominators. The periodic row follows.
  ComplexMatrix smooth(n, m);
  ComplexMatrix periodic(n, m);
  std::vector<Complex> line(m);
  for (std::size_t i = 0; i < n; ++i) {
    hw.access(pass::boundary_row_fft, Region::bram, AccessOp::read, m + 2);
    line[0] = col0[i];
    for (std::size_t j = 1; j + 1 < m; ++j) line[j] = bd.first_row[j] * nu[i];
    line[m - 1] = -col0[i] + bd.corner_sum * nu[i];
    hw.stage_line(pass::boundary_row_fft, m);
    row_plan.transform(line, Direction::forward);
    for (std::size_t t = 0; t < m; ++t) {
      smooth(i, t) = (i == 0 && t == 0) ? Complex{} : line[t] / smooth_denominator(i, t, n, m);
    }

    hw.access(pass::periodic_combine, Region::dram, AccessOp::read, m);
    hw.access(pass::periodic_combine, Region::local_read, AccessOp::write, m);
    hw.access(pass::periodic_combine, Region::local_read, AccessOp::read, m);
    hw.access(pass::periodic_combine, Region::local_write, AccessOp::read, m);
    for (std::size_t t = 0; t < m; ++t) periodic(i, t) = spectrum(i, t) - smooth(i, t);
    hw.access(pass::periodic_combine, Region::dram, AccessOp::write, m);
  }

  return {std::move(periodic), std::move(smooth), hw.release()};
}

void write_trace_csv(const PipelineTrace& trace, std::ostream& out) {
  out << "pass_label,region,op,points\n";
  for (const auto& e : trace.events) {
    out << e.pass << ',' << to_string(e.region) << ',' << to_string(e.op) << ',' << e.points
        << '\n';
  }
}

std::vector<TraceEvent> read_trace_csv(std::istream& in) {
  std::vector<TraceEvent> events;
  std::string line;
  std::size_t line_no = 0;
  std::size_t offset = 0;  // byte offset of the current line
  for (; std::getline(in, line); offset += line.size() + 1) {
    ++line_no;
    if (line.empty() || (line_no == 1 && line.starts_with("pass_label"))) continue;
    std::array<std::string_view, 4> fields;
    std::string_view rest = line;
    for (std::size_t k = 0; k < 4; ++k) {
      const auto comma = rest.find(',');
      if ((comma == std::string_view::npos) != (k == 3)) {
        throw FormatError("trace line " + std::to_string(line_no) + " needs 4 fields", offset);
      }
      fields[k] = rest.substr(0, comma);
      if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
    const auto region = parse_region(fields[1]);
    const auto op = parse_access_op(fields[2]);
    std::uint64_t points = 0;
    const auto [ptr, ec] =
        std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), points);
    if (!region || !op || ec != std::errc{} || ptr != fields[3].data() + fields[3].size()) {
      throw FormatError("bad trace record on line " + std::to_string(line_no), offset);
    }
    events.push_back(TraceEvent{std::string(fields[0]), *region, *op, points});
  }
  return events;
}

}  // namespace psdfft
