// psdfft: periodic-plus-smooth 2D DFT front end.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "psdfft/baselines.hpp"
#include "psdfft/cost_model.hpp"
#include "psdfft/fft.hpp"
#include "psdfft/io.hpp"
#include "psdfft/pipeline.hpp"
#include "psdfft/psd.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace psdfft;

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kFormat = 3,
  kSize = 4,
  kParameter = 5,
  kCapacity = 6,
  kNumerical = 7,
};

// Frames per second the real-time target is quoted at; informational only.
constexpr double kRealTimeFps = 23.0;

struct Options {
  std::string input;
  std::string out = ".";
  std::string method = "opsd";
  std::string window = "tukey";
  double alpha = 0.5;
  std::string mode = "log_magnitude";
  bool shift = true;
  std::size_t n = 512;
  std::size_t m = 512;
  std::uint64_t seed = 0;
  std::size_t frames = 100;
  std::size_t runs = 3;
  int maxval = 255;
};

RealMatrix random_image(std::size_t n, std::size_t m, std::uint64_t seed) {
  // Raw engine bits so the image is identical across standard libraries.
  std::mt19937_64 rng(seed);
  std::vector<double> data(n * m);
  for (double& v : data) v = 255.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return RealMatrix(n, m, std::move(data));
}

RealMatrix load_image(const std::string& path) { return read_pgm(read_file(path)); }

WindowSpec window_spec(const Options& o) {
  WindowSpec spec;
  if (o.window == "tukey") {
    spec.kind = WindowKind::tukey;
  } else if (o.window == "hamming") {
    spec.kind = WindowKind::hamming;
  } else if (o.window == "rect") {
    spec.kind = WindowKind::rect;
  } else {
    throw ParameterError("unknown window '" + o.window + "'");
  }
  spec.alpha = o.alpha;
  return spec;
}

PsdMethod psd_method(const std::string& name) {
  if (name == "opsd") return PsdMethod::opsd;
  if (name == "psd") return PsdMethod::naive_psd;
  throw ParameterError("method '" + name + "' is not a decomposition; use opsd or psd");
}

std::string format_fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string with_commas(std::uint64_t v) {
  std::string digits = std::to_string(v);
  for (int k = static_cast<int>(digits.size()) - 3; k > 0; k -= 3) digits.insert(k, ",");
  return digits;
}

// Rescales into [0, maxval], writes a PGM, and returns the mapping used.
json write_scaled_pgm(const fs::path& path, const RealMatrix& m, int maxval) {
  const Rescale r = fit_range(m, maxval);
  write_file(path, write_pgm(apply(r, m), maxval));
  return {{"file", path.filename().string()}, {"offset", r.offset}, {"gain", r.gain}};
}

void write_csv(const fs::path& path, const ComplexMatrix& m) {
  std::ostringstream s;
  write_matrix_csv(m, s);
  write_file(path, s.str());
}

double total_energy(const ComplexMatrix& x) {
  double e = 0.0;
  for (const auto& v : x.values()) e += std::norm(v);
  return e;
}

int cmd_decompose(const Options& o) {
  const RealMatrix image = load_image(o.input);
  const fs::path out = o.out;
  fs::create_directories(out);

  OpCounter counter;
  const Decomposition d = decompose(image, psd_method(o.method), counter);
  const auto view = [](const ComplexMatrix& x) {
    return export_spectrum(x, SpectrumMode::log_magnitude, true);
  };

  json report;
  report["method"] = o.method;
  report["n"] = image.rows();
  report["m"] = image.cols();
  report["dft_points"] = counter.dft_points;
  report["ext_mem_points"] = counter.ext_mem_points;
  report["cross_axis_energy"] = {{"image", cross_axis_energy(d.image_spectrum)},
                                 {"periodic", cross_axis_energy(d.periodic_spectrum)}};
  const double artifact_energy = total_energy(d.smooth_spectrum);
  report["artifact_energy"] = artifact_energy;
  report["rescale"] = json::array({
      write_scaled_pgm(out / "image_spectrum.pgm", view(d.image_spectrum), o.maxval),
      write_scaled_pgm(out / "smooth_spectrum.pgm", view(d.smooth_spectrum), o.maxval),
      write_scaled_pgm(out / "periodic_spectrum.pgm", view(d.periodic_spectrum), o.maxval),
      write_scaled_pgm(out / "periodic.pgm", d.periodic, o.maxval),
      write_scaled_pgm(out / "smooth.pgm", d.smooth, o.maxval),
  });
  write_csv(out / "periodic_spectrum.csv", d.periodic_spectrum);
  write_csv(out / "smooth_spectrum.csv", d.smooth_spectrum);
  write_file(out / "report.json", report.dump(2) + "\n");

  std::cout << "decomposed " << image.rows() << "x" << image.cols() << " with " << o.method
            << "\n"
            << "artifact energy " << artifact_energy << "\n"
            << "smooth component max |s| " << max_abs(d.smooth) << "\n"
            << "cross-axis energy: image " << cross_axis_energy(d.image_spectrum)
            << ", periodic " << cross_axis_energy(d.periodic_spectrum) << "\n";
  return kOk;
}

ComplexMatrix spectrum_for(const RealMatrix& image, const std::string& method,
                           const WindowSpec& window) {
  if (method == "raw") return fft_2d(to_complex(image));
  if (method == "opsd" || method == "psd") {
    return decompose(image, psd_method(method)).periodic_spectrum;
  }
  if (method == "mirror") return fft_2d(to_complex(mirror_image(image)));
  if (method == "window") return fft_2d(to_complex(apodize(image, window)));
  throw ParameterError("unknown method '" + method + "'");
}

int cmd_spectrum(const Options& o) {
  const RealMatrix image = load_image(o.input);
  const fs::path out = o.out;
  fs::create_directories(out);
  const ComplexMatrix x = spectrum_for(image, o.method, window_spec(o));
  const RealMatrix view = export_spectrum(x, parse_spectrum_mode(o.mode), o.shift);
  const json scale = write_scaled_pgm(out / "spectrum.pgm", view, o.maxval);
  std::ostringstream csv;
  write_matrix_csv(view, csv);
  write_file(out / "spectrum.csv", csv.str());
  std::cout << "spectrum (" << o.method << ", " << o.mode << ") " << x.rows() << "x"
            << x.cols() << " -> " << (out / "spectrum.pgm").string() << " (offset "
            << scale["offset"].get<double>() << ", gain " << scale["gain"].get<double>()
            << ")\n";
  return kOk;
}

int cmd_compare(const Options& o) {
  const RealMatrix image = load_image(o.input);
  const fs::path out = o.out;
  fs::create_directories(out);
  const WindowSpec window = window_spec(o);

  std::ostringstream csv;
  csv << "method,rows,cols,cross_axis_energy,total_energy,cross_axis_fraction\n";
  std::cout << std::left << std::setw(8) << "method" << std::setw(12) << "size"
            << std::setw(24) << "cross_axis_energy" << "fraction\n";
  for (const std::string method : {"raw", "opsd", "psd", "mirror", "window"}) {
    const ComplexMatrix x = spectrum_for(image, method, window);
    const double cross = cross_axis_energy(x);
    const double total = total_energy(x);
    const double fraction = total > 0.0 ? cross / total : 0.0;
    const std::string size = std::to_string(x.rows()) + "x" + std::to_string(x.cols());
    csv << method << ',' << x.rows() << ',' << x.cols() << ',' << std::setprecision(17) << cross
        << ',' << total << ',' << fraction << '\n';
    std::cout << std::setw(8) << method << std::setw(12) << size << std::setw(24)
              << std::setprecision(10) << cross << fraction << "\n";
  }
  write_file(out / "compare.csv", csv.str());
  return kOk;
}

int cmd_cost(const Options& o) {
  json rows = json::array();
  std::cout << "algorithm   dram_points   dft_points   (n=" << o.n << ", m=" << o.m << ")\n";
  for (const CostReport& r : cost_table(o.n, o.m)) {
    std::cout << std::left << std::setw(12) << to_string(r.algorithm) << std::setw(14)
              << with_commas(r.dram_points) << with_commas(r.dft_points) << "\n";
    rows.push_back(json::parse(write_report(r)));
  }
  if (o.out != ".") {
    fs::create_directories(o.out);
    write_file(fs::path(o.out) / "cost.json", rows.dump(2) + "\n");
  }
  return kOk;
}

int cmd_pipeline_sim(const Options& o) {
  const RealMatrix image = o.input.empty() ? random_image(o.n, o.m, o.seed) : load_image(o.input);
  const fs::path out = o.out;
  fs::create_directories(out);

  const FramePacket packet = pack_frame(image);
  write_file(out / "frame.opsd", encode_frame_packet(packet));
  const PipelineResult result = run_pipeline(packet);

  std::ostringstream trace_csv;
  write_trace_csv(result.trace, trace_csv);
  write_file(out / "trace.csv", trace_csv.str());
  write_file(out / "trace_summary.json", write_report(summarize(result.trace)));

  const CostReport formula = cost_of(Algorithm::opsd, image.rows(), image.cols());
  const Reconciliation rec = reconcile(
      formula, CountedRun{Algorithm::opsd, image.rows(), image.cols(), result.trace.counter});
  const json doc = {{"n", image.rows()},
                    {"m", image.cols()},
                    {"payload_points", packet.payload_size()},
                    {"counted_ext_mem_points", result.trace.counter.ext_mem_points},
                    {"formula_dram_points", formula.dram_points},
                    {"dram_delta", rec.dram_delta},
                    {"counted_dft_points", result.trace.counter.dft_points},
                    {"formula_dft_points", formula.dft_points},
                    {"dft_delta", rec.dft_delta},
                    {"exact", rec.exact()}};
  write_file(out / "reconciliation.json", doc.dump(2) + "\n");

  std::cout << "frame " << image.rows() << "x" << image.cols() << ", payload "
            << packet.payload_size() << " points, " << result.trace.events.size()
            << " trace events\n";
  std::cout << "ext-mem points " << result.trace.counter.ext_mem_points << " (formula "
            << formula.dram_points << "), dft points " << result.trace.counter.dft_points
            << " (formula " << formula.dft_points << ")\n";
  if (rec.exact()) {
    std::cout << "reconciliation: exact match\n";
  } else {
    std::cout << "reconciliation: mismatch (dram delta " << rec.dram_delta << ", dft delta "
              << rec.dft_delta << ")\n";
  }
  return kOk;
}

int cmd_bench(const Options& o) {
  if (o.frames == 0 || o.runs == 0) throw ParameterError("--frames and --runs must be >= 1");
  const PsdMethod method = psd_method(o.method);
  Fft2dOptions fft_options;
  fft_options.threads = threads_from_env();

  std::vector<RealMatrix> frames;
  for (std::size_t k = 0; k < 4; ++k) frames.push_back(random_image(o.n, o.m, o.seed + k));

  OpCounter per_frame;
  (void)decompose(frames[0], method, per_frame, fft_options);  // warm-up

  std::vector<double> ms_per_frame;
  for (std::size_t run = 0; run < o.runs; ++run) {
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t f = 0; f < o.frames; ++f) {
      OpCounter c;
      const Decomposition d = decompose(frames[f % frames.size()], method, c, fft_options);
      if (d.periodic_spectrum.rows() == 0) std::abort();
    }
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - start;
    ms_per_frame.push_back(elapsed.count() / static_cast<double>(o.frames));
  }

  double mean_ms = 0.0;
  for (double v : ms_per_frame) mean_ms += v;
  mean_ms /= static_cast<double>(ms_per_frame.size());
  double var = 0.0;
  for (double v : ms_per_frame) var += (v - mean_ms) * (v - mean_ms);
  const double stddev =
      ms_per_frame.size() > 1 ? std::sqrt(var / static_cast<double>(ms_per_frame.size() - 1))
                              : 0.0;
  const double cv = mean_ms > 0.0 ? stddev / mean_ms : 0.0;
  const double fps = 1000.0 / mean_ms;

  OpCounter opsd_count;
  OpCounter psd_count;
  (void)decompose(frames[0], PsdMethod::opsd, opsd_count);
  (void)decompose(frames[0], PsdMethod::naive_psd, psd_count);

  std::cout << "bench " << o.method << " " << o.n << "x" << o.m << ", " << o.frames
            << " frames x " << o.runs << " runs, threads " << fft_options.threads << "\n";
  for (std::size_t r = 0; r < ms_per_frame.size(); ++r) {
    std::cout << "  run " << r + 1 << ": " << format_fixed(ms_per_frame[r], 3) << " ms/frame\n";
  }
  std::cout << "ms/frame " << format_fixed(mean_ms, 3) << " (cv " << format_fixed(100 * cv, 2)
            << "%), " << format_fixed(fps, 1) << " frames/s; real-time threshold "
            << kRealTimeFps << " fps " << (fps >= kRealTimeFps ? "met" : "not met")
            << " (informational)\n";
  std::cout << "dft points per frame: opsd " << opsd_count.dft_points << ", psd "
            << psd_count.dft_points << "\n";

  if (o.out != ".") {
    fs::create_directories(o.out);
    const json doc = {{"method", o.method},
                      {"n", o.n},
                      {"m", o.m},
                      {"frames", o.frames},
                      {"runs_ms_per_frame", ms_per_frame},
                      {"ms_per_frame", mean_ms},
                      {"cv", cv},
                      {"frames_per_second", fps},
                      {"real_time_fps", kRealTimeFps},
                      {"opsd_dft_points", opsd_count.dft_points},
                      {"psd_dft_points", psd_count.dft_points}};
    write_file(fs::path(o.out) / "bench.json", doc.dump(2) + "\n");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic-plus-smooth 2D DFT with edge artifact removal"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> decomposition_methods = {"opsd", "psd"};
  const std::vector<std::string> spectrum_methods = {"raw", "opsd", "psd", "mirror", "window"};
  const std::vector<std::string> windows = {"tukey", "hamming", "rect"};

  auto add_window = [&](CLI::App* cmd) {
    cmd->add_option("--window", o.window, "Apodization window")
        ->check(CLI::IsMember(windows))
        ->capture_default_str();
    cmd->add_option("--alpha", o.alpha, "Tukey taper fraction")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  };
  auto add_maxval = [&](CLI::App* cmd) {
    cmd->add_option("--maxval", o.maxval, "PGM output maxval")
        ->check(CLI::IsMember({255, 65535}))
        ->capture_default_str();
  };

  auto* decompose_cmd = app.add_subcommand("decompose", "Periodic/smooth split of a PGM image");
  decompose_cmd->add_option("input", o.input, "Input PGM")->required()->check(CLI::ExistingFile);
  decompose_cmd->add_option("--method", o.method)
      ->check(CLI::IsMember(decomposition_methods))
      ->capture_default_str();
  decompose_cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
  add_maxval(decompose_cmd);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Export one spectrum view as PGM/CSV");
  spectrum_cmd->add_option("input", o.input, "Input PGM")->required()->check(CLI::ExistingFile);
  spectrum_cmd->add_option("--method", o.method)
      ->check(CLI::IsMember(spectrum_methods))
      ->capture_default_str();
  spectrum_cmd->add_option("--mode", o.mode)
      ->check(CLI::IsMember({"magnitude", "log_magnitude", "phase", "real", "imag"}))
      ->capture_default_str();
  spectrum_cmd->add_flag("--shift,!--no-shift", o.shift, "Center DC");
  spectrum_cmd->add_option("--out", o.out)->capture_default_str();
  add_window(spectrum_cmd);
  add_maxval(spectrum_cmd);

  auto* compare_cmd =
      app.add_subcommand("compare", "Cross-axis energy of raw, opsd, psd, mirror, window");
  compare_cmd->add_option("input", o.input, "Input PGM")->required()->check(CLI::ExistingFile);
  compare_cmd->add_option("--out", o.out)->capture_default_str();
  add_window(compare_cmd);

  auto* cost_cmd = app.add_subcommand("cost", "DRAM and DFT point counts per algorithm");
  cost_cmd->add_option("--n", o.n, "Rows")->check(CLI::PositiveNumber)->capture_default_str();
  cost_cmd->add_option("--m", o.m, "Columns")->check(CLI::PositiveNumber)->capture_default_str();
  cost_cmd->add_option("--out", o.out);

  auto* pipeline_cmd =
      app.add_subcommand("pipeline-sim", "Simulate the accelerator dataflow for one frame");
  pipeline_cmd->add_option("--n", o.n)->check(CLI::PositiveNumber)->capture_default_str();
  pipeline_cmd->add_option("--m", o.m)->check(CLI::PositiveNumber)->capture_default_str();
  pipeline_cmd->add_option("--seed", o.seed)->capture_default_str();
  pipeline_cmd->add_option("--input", o.input, "Use a PGM instead of a random frame")
      ->check(CLI::ExistingFile);
  pipeline_cmd->add_option("--out", o.out)->capture_default_str();

  auto* bench_cmd = app.add_subcommand("bench", "Time K frames of decomposition");
  bench_cmd->add_option("--n", o.n)->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--m", o.m)->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--frames", o.frames)->capture_default_str();
  bench_cmd->add_option("--runs", o.runs)->capture_default_str();
  bench_cmd->add_option("--seed", o.seed)->capture_default_str();
  bench_cmd->add_option("--method", o.method)
      ->check(CLI::IsMember(decomposition_methods))
      ->capture_default_str();
  bench_cmd->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*decompose_cmd) return cmd_decompose(o);
    if (*spectrum_cmd) return cmd_spectrum(o);
    if (*compare_cmd) return cmd_compare(o);
    if (*cost_cmd) return cmd_cost(o);
    if (*pipeline_cmd) return cmd_pipeline_sim(o);
    if (*bench_cmd) return cmd_bench(o);
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kFormat;
  } catch (const SizeError& e) {
    std::cerr << "size error: " << e.what() << "\n";
    return kSize;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kParameter;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kCapacity;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
