#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qclab/core/cap.hpp"
#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"
#include "qclab/harness/emit.hpp"
#include "qclab/harness/output.hpp"
#include "qclab/harness/suite.hpp"

namespace py = pybind11;
using namespace qclab;

namespace {

DensityMatrix density(const CMatrix& m) { return DensityMatrix(m); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "qclab native core";

  auto base = py::register_exception<Error>(m, "QclabError");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<InvalidState>(m, "InvalidState", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());

  m.def("experiment_names", &experiment_names);
  m.def("default_params", [](const std::string& e) { return dump_json(default_params(e), 0); });

  // Configs and reports cross the boundary as JSON text.
  m.def(
      "run_experiment_json",
      [](const std::string& config, bool write) {
        const auto cfg = parse_config(Json::parse(config));
        ExperimentReport r;
        {
          py::gil_scoped_release release;
          r = run_experiment(cfg);
        }
        if (write) write_outputs(r);
        return dump_json(r.to_json(), 0);
      },
      py::arg("config"), py::arg("write") = false);
  m.def(
      "run_criterion_json",
      [](int id, std::uint64_t seed) {
        py::gil_scoped_release release;
        return dump_json(run_criterion(id, seed).to_json(), 0);
      },
      py::arg("id"), py::arg("seed") = 42);
  m.def("replay_fingerprint", [](const std::string& report) { return replay_fingerprint(Json::parse(report)); });

  m.def("qubit_cap", &qubit_cap);
  m.def("set_qubit_cap", &set_qubit_cap, py::arg("cap"));

  m.def(
      "haar_state",
      [](int num_qubits, std::uint64_t seed) {
        Rng rng(seed);
        return CVector(haar_sample(num_qubits, rng).amplitudes());
      },
      py::arg("num_qubits"), py::arg("seed"));
  m.def(
      "random_density_matrix",
      [](int num_qubits, std::uint64_t seed) {
        Rng rng(seed);
        return CMatrix(random_density_matrix(num_qubits, rng).matrix());
      },
      py::arg("num_qubits"), py::arg("seed"));
  m.def("fidelity", [](const CMatrix& a, const CMatrix& b) { return fidelity(density(a), density(b)); });
  m.def("trace_distance",
        [](const CMatrix& a, const CMatrix& b) { return trace_distance(density(a), density(b)); });
  m.def(
      "partial_trace",
      [](const CMatrix& rho, const std::vector<int>& keep) {
        return CMatrix(partial_trace(density(rho), keep).matrix());
      },
      py::arg("rho"), py::arg("keep"));
}
