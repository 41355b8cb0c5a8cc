#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lqss/errors.hpp"
#include "lqss/io.hpp"
#include "lqss/tf_verify.hpp"

namespace py = pybind11;
using namespace lqss;

namespace {

Model parse_model(const std::string& text) { return io::model_from_json(io::json::parse(text), kStructureTol); }

py::dict svd_dict(const BogoliubovSvd& f) {
  py::list classes;
  for (const auto& c : f.spectrum.classes) classes.append(py::make_tuple(to_string(c.kind), c.value));
  py::dict d;
  d["v"] = f.v.full();
  d["w"] = f.w.full();
  d["n_hat"] = f.n_hat.full();
  d["residual"] = f.residual;
  d["classes"] = classes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_lqss, m) {
  m.doc() = "Transfer function realization of linear quantum stochastic systems";

  static py::exception<Error> error(m, "LqssError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("j_matrix", &j_matrix, py::arg("k"));
  m.def("flat_adjoint", &flat_adjoint, py::arg("x"));
  m.def("bogoliubov_residual", &bogoliubov_residual, py::arg("r"));
  m.def(
      "random_bogoliubov", [](Index k, std::uint64_t seed, double scale) { return random_bogoliubov(k, seed, scale).full(); },
      py::arg("k"), py::arg("seed"), py::arg("scale") = 0.5);

  m.def(
      "bogoliubov_svd",
      [](const CMatrix& n) { return svd_dict(bogoliubov_svd(DoubledUpMatrix::from_full(n))); }, py::arg("n"),
      "Factor a doubled-up coupling as V N_hat W_flat.");
  m.def(
      "passive_svd",
      [](const CMatrix& n) {
        const PassiveSvd s = passive_svd(n);
        return py::make_tuple(s.v, s.n_hat, s.w);
      },
      py::arg("n"));
  m.def("cayley", &cayley, py::arg("r"));
  m.def("inverse_cayley", &inverse_cayley, py::arg("x"));

  m.def(
      "bloch_messiah",
      [](const CMatrix& r) {
        const BlochMessiah bm = bloch_messiah(BogoliubovMatrix::from_full(r, 1e-8));
        return py::make_tuple(bm.u1, bm.x, bm.u2, bm.residual);
      },
      py::arg("r"));
  m.def(
      "reck_decompose",
      [](const CMatrix& u) {
        const DeviceSchedule s = reck_decompose(u);
        return py::make_tuple(s.matrix(), s.count_beam_splitters());
      },
      py::arg("u"));

  m.def(
      "model_tf", [](const std::string& model, cd s) { return parse_model(model).tf(s); }, py::arg("model"),
      py::arg("s"));
  m.def(
      "synthesize",
      [](const std::string& model, std::uint64_t seed) { return io::to_json(synthesize(parse_model(model), seed)).dump(); },
      py::arg("model"), py::arg("seed") = 42, "Model JSON text in, netlist JSON text out.");
  m.def(
      "netlist_tf",
      [](const std::string& netlist, cd s) { return netlist_tf(io::netlist_from_json(io::json::parse(netlist)), s); },
      py::arg("netlist"), py::arg("s"));
  m.def(
      "verify",
      [](const std::string& model, const std::string& netlist, int freqs, std::uint64_t seed, double tol) {
        const VerifyReport rep =
            verify(parse_model(model), io::netlist_from_json(io::json::parse(netlist)), {freqs, seed, tol});
        return io::to_json(rep).dump();
      },
      py::arg("model"), py::arg("netlist"), py::arg("freqs") = 20, py::arg("seed") = 42, py::arg("tol") = 1e-8);
}
