#include "psdfft/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <numbers>
#include <ostream>

#include <json.hpp>

namespace psdfft {
namespace {

using nlohmann::json;

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Tokenizer for the PNM header and the P2 body.
class PnmCursor {
 public:
  PnmCursor(std::span<const std::uint8_t> bytes, std::size_t start)
      : bytes_(bytes), pos_(start) {}

  std::size_t offset() const noexcept { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long number(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    unsigned long value = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 0xFFFFFFFFul) throw FormatError(std::string(what) + " out of range", start);
      ++pos_;
    }
    if (pos_ == start) {
      if (pos_ >= bytes_.size()) {
        throw FormatError(std::string("unexpected end of data reading ") + what, pos_);
      }
      throw FormatError(std::string("expected ") + what, pos_);
    }
    return value;
  }

  void single_whitespace() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
      throw FormatError("expected whitespace after maxval", pos_);
    }
    ++pos_;
  }

  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void put_u32(Bytes& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void put_f64(Bytes& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
}

std::uint64_t get_le(std::span<const std::uint8_t> bytes, std::size_t at, int width) {
  std::uint64_t v = 0;
  for (int b = 0; b < width; ++b) v |= static_cast<std::uint64_t>(bytes[at + b]) << (8 * b);
  return v;
}

void put_number(std::ostream& out, double v) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.write(buf.data(), ptr - buf.data());
}

json region_json(const MemoryRegion& r) {
  return {{"name", to_string(r.name)},
          {"capacity", r.capacity},
          {"read_count", r.read_count},
          {"write_count", r.write_count}};
}

}  // namespace

RealMatrix read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw FormatError("unsupported magic; expected P2 or P5", 0);
  }
  const bool binary = bytes[1] == '5';
  PnmCursor cur(bytes, 2);

  const auto width = cur.number("width");
  const auto height = cur.number("height");
  const auto maxval = cur.number("maxval");
  if (width == 0 || height == 0) throw FormatError("zero image dimension", cur.offset());
  if (maxval == 0 || maxval > 65535) {
    throw FormatError("maxval must be in 1..65535, got " + std::to_string(maxval),
                      cur.offset());
  }

  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<double> data(count);
  if (binary) {
    cur.single_whitespace();
    const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
    const auto body = cur.rest();
    const std::size_t expected = count * sample_bytes;
    if (body.size() < expected) {
      throw FormatError("truncated P5 payload: expected " + std::to_string(expected) +
                            " bytes, got " + std::to_string(body.size()),
                        cur.offset() + body.size());
    }
    for (std::size_t k = 0; k < count; ++k) {
      const unsigned v = sample_bytes == 1
                             ? body[k]
                             : (static_cast<unsigned>(body[2 * k]) << 8) | body[2 * k + 1];
      if (v > maxval) {
        throw FormatError("sample exceeds maxval", cur.offset() + k * sample_bytes);
      }
      data[k] = v;
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t at = cur.offset();
      const auto v = cur.number("sample");
      if (v > maxval) throw FormatError("sample exceeds maxval", at);
      data[k] = static_cast<double>(v);
    }
  }
  return RealMatrix(height, width, std::move(data));
}

Bytes write_pgm(const RealMatrix& image, int maxval) {
  if (maxval != 255 && maxval != 65535) {
    throw ParameterError("PGM maxval must be 255 or 65535, got " + std::to_string(maxval));
  }
  const std::string header = "P5\n" + std::to_string(image.cols()) + " " +
                             std::to_string(image.rows()) + "\n" + std::to_string(maxval) +
                             "\n";
  Bytes out(header.begin(), header.end());
  out.reserve(out.size() + image.size() * (maxval > 255 ? 2 : 1));
  for (double v : image.values()) {
    const double clamped = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, double(maxval));
    const auto q = static_cast<unsigned>(std::round(clamped));
    if (maxval > 255) out.push_back(static_cast<std::uint8_t>(q >> 8));
    out.push_back(static_cast<std::uint8_t>(q & 0xFF));
  }
  return out;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Bytes encode_frame_packet(const FramePacket& packet) {
  Bytes out = {'O', 'P', 'S', 'D'};
  out.reserve(12 + 8 * packet.payload_size());
  put_u32(out, packet.n);
  put_u32(out, packet.m);
  for (double v : packet.payload()) put_f64(out, v);
  return out;
}

FramePacket decode_frame_packet(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) throw FormatError("frame packet shorter than its header", bytes.size());
  if (bytes[0] != 'O' || bytes[1] != 'P' || bytes[2] != 'S' || bytes[3] != 'D') {
    throw FormatError("bad frame packet magic", 0);
  }
  FramePacket pkt;
  pkt.n = static_cast<std::uint32_t>(get_le(bytes, 4, 4));
  pkt.m = static_cast<std::uint32_t>(get_le(bytes, 8, 4));
  const std::size_t n = pkt.n;
  const std::size_t m = pkt.m;
  const std::size_t points = n * m + n + m;
  const std::size_t expected = 12 + 8 * points;
  if (bytes.size() != expected) {
    throw FormatError("frame packet for " + std::to_string(n) + "x" + std::to_string(m) +
                          " needs " + std::to_string(expected) + " bytes, got " +
                          std::to_string(bytes.size()),
                      std::min(bytes.size(), expected));
  }
  auto take = [&](std::size_t first, std::size_t count) {
    std::vector<double> v(count);
    for (std::size_t k = 0; k < count; ++k) {
      v[k] = std::bit_cast<double>(get_le(bytes, 12 + 8 * (first + k), 8));
    }
    return v;
  };
  pkt.image = take(0, n * m);
  pkt.boundary_row = take(n * m, m);
  pkt.boundary_col = take(n * m + m, n);
  return pkt;
}

std::string_view to_string(SpectrumMode mode) {
  switch (mode) {
    case SpectrumMode::magnitude:
      return "magnitude";
    case SpectrumMode::log_magnitude:
      return "log_magnitude";
    case SpectrumMode::phase:
      return "phase";
    case SpectrumMode::real:
      return "real";
    case SpectrumMode::imag:
      return "imag";
  }
  return "unknown";
}

SpectrumMode parse_spectrum_mode(std::string_view name) {
  for (auto mode : {SpectrumMode::magnitude, SpectrumMode::log_magnitude, SpectrumMode::phase,
                    SpectrumMode::real, SpectrumMode::imag}) {
    if (to_string(mode) == name) return mode;
  }
  throw ParameterError("unknown spectrum mode '" + std::string(name) + "'");
}

RealMatrix fft_shift(const RealMatrix& in) {
  const std::size_t n = in.rows();
  const std::size_t m = in.cols();
  RealMatrix out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) out((i + n / 2) % n, (j + m / 2) % m) = in(i, j);
  }
  return out;
}

RealMatrix export_spectrum(const ComplexMatrix& spectrum, SpectrumMode mode, bool shift) {
  std::vector<double> values;
  values.reserve(spectrum.size());
  for (const Complex& v : spectrum.values()) {
    switch (mode) {
      case SpectrumMode::magnitude:
        values.push_back(std::abs(v));
        break;
      case SpectrumMode::log_magnitude:
        values.push_back(std::log1p(std::abs(v)));
        break;
      case SpectrumMode::phase:
        values.push_back(std::arg(v));
        break;
      case SpectrumMode::real:
        values.push_back(v.real());
        break;
      case SpectrumMode::imag:
        values.push_back(v.imag());
        break;
    }
  }
  RealMatrix out(spectrum.rows(), spectrum.cols(), std::move(values));
  return shift ? fft_shift(out) : out;
}

Rescale fit_range(const RealMatrix& m, double maxval) {
  const auto [lo, hi] = std::minmax_element(m.values().begin(), m.values().end());
  if (*hi - *lo <= 0.0) return {-*lo, 1.0};
  const double gain = maxval / (*hi - *lo);
  return {-*lo * gain, gain};
}

RealMatrix apply(const Rescale& r, const RealMatrix& m) {
  RealMatrix out = m;
  for (double& v : out.values()) v = r.offset + r.gain * v;
  return out;
}

void write_matrix_csv(const RealMatrix& m, std::ostream& out) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      put_number(out, m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_csv(const ComplexMatrix& m, std::ostream& out) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      put_number(out, m(i, j).real());
      out << ',';
      put_number(out, m(i, j).imag());
    }
    out << '\n';
  }
}

RealMatrix read_matrix_csv(std::istream& in) {
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t offset = 0;
  std::string line;
  for (; std::getline(in, line); offset += line.size() + 1) {
    if (line.empty()) continue;
    std::size_t count = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (true) {
      double v = 0.0;
      const auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{}) {
        throw FormatError("bad CSV number", offset + static_cast<std::size_t>(p - line.data()));
      }
      values.push_back(v);
      ++count;
      p = next;
      if (p == end) break;
      if (*p != ',') {
        throw FormatError("expected ','", offset + static_cast<std::size_t>(p - line.data()));
      }
      ++p;
    }
    if (rows == 0) cols = count;
    if (count != cols) throw FormatError("ragged CSV row", offset);
    ++rows;
  }
  if (rows == 0) throw FormatError("empty CSV matrix", offset);
  return RealMatrix(rows, cols, std::move(values));
}

TraceSummary summarize(const PipelineTrace& trace) {
  return {trace.events.size(), trace.counter.dft_points, trace.counter.ext_mem_points,
          trace.regions};
}

std::string write_report(const CostReport& r) {
  const json doc = {{"algorithm", to_string(r.algorithm)},
                    {"n", r.n},
                    {"m", r.m},
                    {"dram_points", r.dram_points},
                    {"dft_points", r.dft_points}};
  return doc.dump(2) + "\n";
}

std::string write_report(const TraceSummary& s) {
  json regions = json::array();
  for (const auto& r : s.regions) regions.push_back(region_json(r));
  const json doc = {{"events", s.events},
                    {"dft_points", s.dft_points},
                    {"ext_mem_points", s.ext_mem_points},
                    {"regions", regions}};
  return doc.dump(2) + "\n";
}

CostReport parse_cost_report(std::string_view document) {
  try {
    const json doc = json::parse(document);
    const auto algorithm = parse_algorithm(doc.at("algorithm").get<std::string>());
    if (!algorithm) throw FormatError("unknown algorithm in cost report", 0);
    return {*algorithm, doc.at("n").get<std::uint64_t>(), doc.at("m").get<std::uint64_t>(),
            doc.at("dram_points").get<std::uint64_t>(), doc.at("dft_points").get<std::uint64_t>()};
  } catch (const json::parse_error& e) {
    throw FormatError(e.what(), e.byte);
  } catch (const json::exception& e) {
    throw FormatError(e.what(), 0);
  }
}

TraceSummary parse_trace_summary(std::string_view document) {
  try {
    const json doc = json::parse(document);
    TraceSummary s;
    s.events = doc.at("events").get<std::uint64_t>();
    s.dft_points = doc.at("dft_points").get<std::uint64_t>();
    s.ext_mem_points = doc.at("ext_mem_points").get<std::uint64_t>();
    const auto& regions = doc.at("regions");
    if (regions.size() != s.regions.size()) throw FormatError("expected 4 regions", 0);
    for (std::size_t k = 0; k < s.regions.size(); ++k) {
      const auto& r = regions[k];
      const auto name = parse_region(r.at("name").get<std::string>());
      if (!name) throw FormatError("unknown region name", 0);
      s.regions[k] = {*name, r.at("capacity").get<std::size_t>(),
                      r.at("read_count").get<std::uint64_t>(),
                      r.at("write_count").get<std::uint64_t>()};
    }
    return s;
  } catch (const json::parse_error& e) {
    throw FormatError(e.what(), e.byte);
  } catch (const json::exception& e) {
    throw FormatError(e.what(), 0);
  }
}

}  // namespace psdfft
