#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mpfock/cli.hpp"
#include "mpfock/measures.hpp"
#include "mpfock/phase_space.hpp"
#include "mpfock/separability.hpp"
#include "mpfock/states.hpp"

namespace py = pybind11;
using namespace mpfock;

namespace {

// route report payloads through the canonical serializer so python sees the
// same numbers as the CLI
py::object json_to_py(const Json& j) {
  py::module_ json = py::module_::import("json");
  return json.attr("loads")(dump_json(j));
}

py::dict wigner_dict(const WignerGrid& w) {
  py::dict d;
  d["x"] = RealVector(w.x_axis);
  d["p"] = RealVector(w.p_axis);
  d["values"] = RealMatrix(w.values);
  d["cell_area"] = w.cell_area;
  d["normalization_residual"] = w.normalization_residual;
  d["min_value"] = w.min_value;
  d["convention"] = w.convention;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "k-photon pair states on a truncated Fock space";
  m.attr("__version__") = MPFOCK_VERSION;

  py::register_exception<SpecError>(m, "SpecError");
  py::register_exception<TruncationError>(m, "TruncationError");
  py::register_exception<SectorError>(m, "SectorError");
  py::register_exception<StandardizeError>(m, "StandardizeError");
  py::register_exception<GridError>(m, "GridError");

  py::class_<TruncationConfig>(m, "TruncationConfig")
      .def(py::init<int, double, double>(), py::arg("n_max"),
           py::arg("tol_psd") = 1e-10, py::arg("tol_trace") = 1e-8)
      .def_readonly("n_max", &TruncationConfig::n_max)
      .def_readonly("tol_psd", &TruncationConfig::tol_psd)
      .def_readonly("tol_trace", &TruncationConfig::tol_trace)
      .def("dim", &TruncationConfig::dim)
      .def("__repr__", [](const TruncationConfig& c) {
        std::ostringstream s;
        s << "TruncationConfig(n_max=" << c.n_max << ")";
        return s.str();
      });

  py::class_<SqueezingParam>(m, "SqueezingParam")
      .def_static("from_gamma", &SqueezingParam::from_gamma, py::arg("gamma"))
      .def_static("from_r", &SqueezingParam::from_r, py::arg("r"))
      .def_readonly("gamma", &SqueezingParam::gamma)
      .def_readonly("r", &SqueezingParam::r);

  py::class_<SingleModeState>(m, "SingleModeState")
      .def_property_readonly("rho",
                             [](const SingleModeState& s) { return s.rho; })
      .def_property_readonly("config",
                             [](const SingleModeState& s) { return s.config; })
      .def("dim", &SingleModeState::dim);

  py::class_<TwoModeState>(m, "TwoModeState")
      .def_static(
          "from_ket",
          [](const Vector& psi, const TruncationConfig& c) {
            return TwoModeState::from_ket(psi, c);
          },
          py::arg("ket"), py::arg("config"))
      .def_static(
          "from_density",
          [](const Matrix& rho, const TruncationConfig& c) {
            return TwoModeState::from_density(rho, c);
          },
          py::arg("rho"), py::arg("config"))
      .def_property_readonly("config", &TwoModeState::config)
      .def("mode_dim", &TwoModeState::mode_dim)
      .def("dim", &TwoModeState::dim)
      .def("pure_form", &TwoModeState::pure_form)
      .def("ket", [](const TwoModeState& s) { return s.ket(); })
      .def("density", &TwoModeState::density);

  // state families
  m.def(
      "tmsv",
      [](const SqueezingParam& p, std::optional<int> n_max, double budget) {
        return n_max ? tmsv(p, TruncationConfig(*n_max), budget)
                     : tmsv(p, budget);
      },
      py::arg("param"), py::arg("n_max") = std::nullopt,
      py::arg("tail_budget") = kTailBudget);
  m.def(
      "mp_tmsv",
      [](const SqueezingParam& p, int k, std::optional<int> n_max,
         double budget) {
        return n_max ? mp_tmsv(p, k, TruncationConfig(*n_max), budget)
                     : mp_tmsv(p, k, budget);
      },
      py::arg("param"), py::arg("k"), py::arg("n_max") = std::nullopt,
      py::arg("tail_budget") = kTailBudget);
  m.def(
      "thermal",
      [](double nbar, std::optional<int> n_max, double budget) {
        return n_max ? thermal(nbar, TruncationConfig(*n_max), budget)
                     : thermal(nbar, budget);
      },
      py::arg("nbar"), py::arg("n_max") = std::nullopt,
      py::arg("tail_budget") = kTailBudget);
  m.def(
      "mp_thermal",
      [](double nu, int k, int j, std::optional<int> n_max, double budget) {
        return n_max ? mp_thermal(nu, k, j, TruncationConfig(*n_max), budget)
                     : mp_thermal(nu, k, j, budget);
      },
      py::arg("nu"), py::arg("k"), py::arg("j") = 0,
      py::arg("n_max") = std::nullopt, py::arg("tail_budget") = kTailBudget);
  m.def("product", &product, py::arg("mode1"), py::arg("mode2"));
  m.def("gamma_for_energy", &gamma_for_energy, py::arg("energy"), py::arg("k"));
  m.def("geometric_tail_levels", &geometric_tail_levels, py::arg("q"),
        py::arg("budget") = kTailBudget);

  // operators as matrices
  m.def(
      "annihilation",
      [](const TruncationConfig& c) { return make_annihilation(c).matrix; },
      py::arg("config"));
  m.def(
      "multi_ladder",
      [](int k, const TruncationConfig& c) { return make_A(k, c).op.matrix; },
      py::arg("k"), py::arg("config"));
  m.def(
      "multi_number",
      [](int k, const TruncationConfig& c) {
        return make_multi_number(k, c).matrix;
      },
      py::arg("k"), py::arg("config"));
  m.def(
      "quadratures",
      [](int k, const TruncationConfig& c) {
        auto [x, p] = quadrature_pair(k, c);
        return py::make_tuple(x, p);
      },
      py::arg("k"), py::arg("config"));
  m.def(
      "sector_isometry",
      [](int k, const TruncationConfig& c) {
        SectorIsometry iso = build_U_tilde(k, c);
        py::dict d;
        d["k"] = iso.k;
        d["n_blocks"] = iso.n_blocks;
        d["u"] = RealMatrix(iso.u);
        return d;
      },
      py::arg("k"), py::arg("config"));

  // state surgery
  m.def("partial_trace", &partial_trace, py::arg("state"), py::arg("keep_mode"));
  m.def("partial_transpose", &partial_transpose, py::arg("state"),
        py::arg("mode") = 2);
  m.def(
      "expectation",
      [](const TwoModeState& s, const Matrix& op) {
        return expectation(s, op);
      },
      py::arg("state"), py::arg("op"));
  m.def(
      "expectation_single",
      [](const SingleModeState& s, const Matrix& op) {
        return expectation(s, op);
      },
      py::arg("state"), py::arg("op"));

  // sectors
  m.def(
      "detect_sector",
      [](const SingleModeState& s, int k, double tol) {
        SectorReport r = detect_sector(s, k, tol);
        py::dict d;
        d["k"] = r.k;
        d["sector"] = r.sector;
        d["confined"] = r.confined;
        d["leakage"] = r.leakage;
        return d;
      },
      py::arg("state"), py::arg("k"), py::arg("tol") = 1e-10);
  m.def(
      "detect_sector_two_mode",
      [](const TwoModeState& s, int k, double tol) {
        TwoModeSectorReport r = detect_sector(s, k, tol);
        py::dict d;
        d["k"] = r.k;
        d["confined"] = r.confined;
        d["leakage"] = r.leakage;
        if (r.sector)
          d["sector"] = *r.sector;
        else
          d["sector"] = py::none();
        return d;
      },
      py::arg("state"), py::arg("k"), py::arg("tol") = 1e-10);
  m.def(
      "infer_k",
      [](const TwoModeState& s) { return infer_k(s); }, py::arg("state"));
  m.def(
      "compress_to_sector",
      [](const TwoModeState& s, int k, int j, double tol) {
        CompressedTwoMode c = compress_to_sector(s, k, j, tol);
        return py::make_tuple(c.state, c.retained_mass);
      },
      py::arg("state"), py::arg("k"), py::arg("j"), py::arg("tol") = 1e-10);
  m.def(
      "compress_single_to_sector",
      [](const SingleModeState& s, int k, int j, double tol) {
        CompressedSingle c = compress_to_sector(s, k, j, tol);
        return py::make_tuple(c.state, c.retained_mass);
      },
      py::arg("state"), py::arg("k"), py::arg("j"), py::arg("tol") = 1e-10);

  // phase space
  m.def(
      "covariance",
      [](const TwoModeState& s, int k) {
        CovarianceMatrix cm = covariance(s, k);
        py::dict d;
        d["sigma"] = Eigen::MatrixXd(cm.sigma);
        d["means"] = Eigen::VectorXd(cm.means);
        d["k"] = cm.k;
        return d;
      },
      py::arg("state"), py::arg("k") = 1);
  m.def(
      "covariance_single",
      [](const SingleModeState& s, int k) {
        SingleModeCovariance cm = covariance_single(s, k);
        py::dict d;
        d["sigma"] = Eigen::MatrixXd(cm.sigma);
        d["means"] = Eigen::VectorXd(cm.means);
        d["k"] = cm.k;
        return d;
      },
      py::arg("state"), py::arg("k") = 1);
  m.def(
      "wigner",
      [](const SingleModeState& s, double half_width, int points) {
        return wigner_dict(wigner_single_mode(s, {half_width, points}));
      },
      py::arg("state"), py::arg("half_width") = 0.0, py::arg("points") = 201);
  m.def(
      "wigner_multiphoton",
      [](const SingleModeState& s, int k, int j, double half_width,
         int points) {
        return wigner_dict(wigner_multiphoton(s, k, j, {half_width, points}));
      },
      py::arg("state"), py::arg("k"), py::arg("j") = 0,
      py::arg("half_width") = 0.0, py::arg("points") = 201);
  m.def(
      "gaussianity_check",
      [](const SingleModeState& s, int k, int j, double threshold) {
        GaussianityReport g = gaussianity_check(s, k, j, {}, threshold);
        py::dict d;
        d["certified"] = g.certified;
        d["confined"] = g.confined;
        d["leakage"] = g.leakage;
        d["residual"] = g.residual;
        return d;
      },
      py::arg("state"), py::arg("k"), py::arg("j") = 0,
      py::arg("threshold") = 1e-6);

  // separability
  m.def(
      "standardize",
      [](const Eigen::Matrix4d& sigma, const Eigen::Vector4d& means, int k) {
        CovarianceMatrix cm;
        cm.sigma = sigma;
        cm.means = means;
        cm.k = k;
        StandardizeResult res = standardize(cm);
        py::dict d;
        d["sigma"] = Eigen::MatrixXd(res.transformed.sigma);
        d["means"] = Eigen::VectorXd(res.transformed.means);
        d["form"] = py::make_tuple(res.form.b1, res.form.b2, res.form.d1,
                                   res.form.d2, res.form.c1, res.form.c2);
        d["converged"] = res.converged;
        d["residual_ratio"] = res.residual_ratio;
        d["residual_balance"] = res.residual_balance;
        return d;
      },
      py::arg("sigma"), py::arg("means") = Eigen::Vector4d::Zero().eval(),
      py::arg("k") = 1);
  m.def(
      "criterion",
      [](double b1, double b2, double d1, double d2, double c1, double c2,
         bool certificate) {
        StandardFormCM f{b1, b2, d1, d2, c1, c2, 1};
        SeparabilityVerdict v = criterion(f, certificate);
        py::dict d;
        d["decision"] = std::string(to_string(v.decision));
        d["branch"] = v.branch;
        d["lhs"] = v.lhs;
        d["rhs"] = v.rhs;
        d["margin"] = v.margin;
        d["q0"] = v.q0;
        d["boundary"] = v.boundary;
        return d;
      },
      py::arg("b1"), py::arg("b2"), py::arg("d1"), py::arg("d2"),
      py::arg("c1"), py::arg("c2"), py::arg("certificate") = false);
  m.def(
      "ppt_check",
      [](const TwoModeState& s, int mode) {
        PptResult r = ppt_check(s, mode);
        return py::make_tuple(r.min_eigenvalue, r.entangled);
      },
      py::arg("state"), py::arg("mode") = 2);
  m.def("log_negativity", &log_negativity, py::arg("state"),
        py::arg("mode") = 2);
  m.def("partial_transpose_spectrum", &partial_transpose_spectrum,
        py::arg("state"), py::arg("mode") = 2);

  // measures
  m.def(
      "von_neumann_entropy",
      [](const TwoModeState& s) { return von_neumann_entropy(s); },
      py::arg("state"));
  m.def(
      "von_neumann_entropy_single",
      [](const SingleModeState& s) { return von_neumann_entropy(s); },
      py::arg("state"));
  m.def(
      "purity", [](const TwoModeState& s) { return purity(s); },
      py::arg("state"));
  m.def(
      "purity_single", [](const SingleModeState& s) { return purity(s); },
      py::arg("state"));
  m.def(
      "mean_energy",
      [](const TwoModeState& s, int k) {
        EnergyReport e = mean_energy(s, k);
        py::dict d;
        d["total"] = e.total;
        d["per_mode"] = py::make_tuple(e.per_mode[0], e.per_mode[1]);
        d["k"] = e.k;
        return d;
      },
      py::arg("state"), py::arg("k") = 1);
  m.def(
      "mean_energy_single",
      [](const SingleModeState& s, int k) { return mean_energy(s, k); },
      py::arg("state"), py::arg("k") = 1);
  m.def("entanglement_entropy", &entanglement_entropy, py::arg("state"),
        py::arg("purity_tol") = 1e-8);
  m.def("p_min", &p_min, py::arg("energy"), py::arg("k"));

  // report-level entry points (same payloads as the CLI)
  m.def(
      "state_report",
      [](const TwoModeState& s, int k) {
        cli::BuiltState b{s, k, Json::object()};
        return json_to_py(cli::state_payload(b));
      },
      py::arg("state"), py::arg("k") = 1);
  m.def(
      "state_report",
      [](const SingleModeState& s, int k) {
        cli::BuiltState b{s, k, Json::object()};
        return json_to_py(cli::state_payload(b));
      },
      py::arg("state"), py::arg("k") = 1);
  m.def(
      "separability_report",
      [](const TwoModeState& s, int k) {
        return json_to_py(cli::separability_payload(s, k));
      },
      py::arg("state"), py::arg("k") = 1);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
