#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "psdfft/baselines.hpp"
#include "psdfft/cost_model.hpp"
#include "psdfft/io.hpp"
#include "psdfft/pipeline.hpp"
#include "psdfft/psd.hpp"

namespace py = pybind11;
using namespace psdfft;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

template <typename T, typename Array>
Matrix<T> to_matrix(const Array& a) {
  if (a.ndim() != 2) throw SizeError("expected a 2-D array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return Matrix<T>(rows, cols, std::vector<T>(a.data(), a.data() + rows * cols));
}

template <typename T>
py::array_t<T> to_array(const Matrix<T>& m) {
  py::array_t<T> out({m.rows(), m.cols()});
  std::memcpy(out.mutable_data(), m.values().data(), m.size() * sizeof(T));
  return out;
}

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
  py::array_t<T> out(v.size());
  std::memcpy(out.mutable_data(), v.data(), v.size() * sizeof(T));
  return out;
}

RealMatrix real_in(const RealArray& a) { return to_matrix<double>(a); }
ComplexMatrix complex_in(const ComplexArray& a) { return to_matrix<Complex>(a); }

PsdMethod method_from(const std::string& name) {
  if (name == "opsd") return PsdMethod::opsd;
  if (name == "psd") return PsdMethod::naive_psd;
  throw ParameterError("method must be 'opsd' or 'psd', got '" + name + "'");
}

WindowKind window_from(const std::string& name) {
  if (name == "tukey") return WindowKind::tukey;
  if (name == "hamming") return WindowKind::hamming;
  if (name == "rect") return WindowKind::rect;
  throw ParameterError("unknown window '" + name + "'");
}

py::dict counter_dict(const OpCounter& c) {
  py::dict d;
  d["dft_points"] = c.dft_points;
  d["ext_mem_points"] = c.ext_mem_points;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Periodic plus smooth image decomposition";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SizeError>(m, "SizeError", base.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  m.def("fft2", [](const ComplexArray& x) { return to_array(fft_2d(complex_in(x))); },
        py::arg("x"));
  m.def("ifft2", [](const ComplexArray& x) { return to_array(ifft_2d(complex_in(x))); },
        py::arg("x"));
  m.def("naive_dft2", [](const ComplexArray& x) { return to_array(naive_dft_2d(complex_in(x))); },
        py::arg("x"));

  m.def("border_image", [](const RealArray& a) { return to_array(border_image(real_in(a))); },
        py::arg("image"));
  m.def(
      "boundary_data",
      [](const RealArray& a) {
        const BoundaryData bd = boundary_data(real_in(a));
        return py::make_tuple(to_array(bd.first_row), to_array(bd.first_col), bd.corner_sum);
      },
      py::arg("image"), "Returns (first_row, first_col, corner_sum).");
  m.def("nu_vector", [](std::size_t n) { return to_array(nu_vector(n)); }, py::arg("n"));
  m.def(
      "opsd_boundary_spectrum",
      [](const RealArray& a) {
        return to_array(opsd_boundary_spectrum(boundary_data(real_in(a))));
      },
      py::arg("image"), "Spectrum of the border image computed from the boundary only.");

  m.def(
      "decompose",
      [](const RealArray& a, const std::string& method) {
        OpCounter c;
        const Decomposition d = decompose(real_in(a), method_from(method), c);
        py::dict out;
        out["image_spectrum"] = to_array(d.image_spectrum);
        out["periodic_spectrum"] = to_array(d.periodic_spectrum);
        out["smooth_spectrum"] = to_array(d.smooth_spectrum);
        out["periodic"] = to_array(d.periodic);
        out["smooth"] = to_array(d.smooth);
        out["counter"] = counter_dict(c);
        return out;
      },
      py::arg("image"), py::arg("method") = "opsd");

  m.def("mirror_image", [](const RealArray& a) { return to_array(mirror_image(real_in(a))); },
        py::arg("image"));
  m.def(
      "apodize",
      [](const RealArray& a, const std::string& window, double alpha) {
        return to_array(apodize(real_in(a), {window_from(window), alpha}));
      },
      py::arg("image"), py::arg("window") = "tukey", py::arg("alpha") = 0.5);

  m.def(
      "cost_table",
      [](std::uint64_t n, std::uint64_t mm) {
        py::list rows;
        for (const auto& r : cost_table(n, mm)) {
          py::dict d;
          d["algorithm"] = std::string(to_string(r.algorithm));
          d["dram_points"] = r.dram_points;
          d["dft_points"] = r.dft_points;
          rows.append(d);
        }
        return rows;
      },
      py::arg("n"), py::arg("m"));

  m.def(
      "pack_frame",
      [](const RealArray& a) { return to_array(pack_frame(real_in(a)).payload()); },
      py::arg("image"), "Flat payload: image, boundary row, boundary column.");

  m.def(
      "run_pipeline",
      [](const RealArray& a) {
        const PipelineResult r = run_pipeline(pack_frame(real_in(a)));
        py::list events;
        for (const auto& e : r.trace.events) {
          events.append(py::make_tuple(e.pass, std::string(to_string(e.region)),
                                       std::string(to_string(e.op)), e.points));
        }
        py::dict out;
        out["periodic_spectrum"] = to_array(r.periodic_spectrum);
        out["smooth_spectrum"] = to_array(r.smooth_spectrum);
        out["events"] = events;
        out["counter"] = counter_dict(r.trace.counter);
        return out;
      },
      py::arg("image"));

  m.def(
      "read_pgm",
      [](const py::bytes& data) {
        const std::string s = data;
        const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
        return to_array(read_pgm(std::span<const std::uint8_t>(p, s.size())));
      },
      py::arg("data"));
  m.def(
      "write_pgm",
      [](const RealArray& a, int maxval) {
        const Bytes b = write_pgm(real_in(a), maxval);
        return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
      },
      py::arg("image"), py::arg("maxval") = 255);
}
