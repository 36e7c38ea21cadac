#include "mpfock/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include <CLI11.hpp>

namespace mpfock::cli {

namespace {

Json real_matrix_json(const Eigen::Ref<const RealMatrix>& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json real_vector_json(const Eigen::Ref<const RealVector>& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

double require_number(const Json& j, const std::string& key) {
  if (!j.at(key).is_number())
    throw SpecError("field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

int require_int(const Json& j, const std::string& key) {
  if (!j.at(key).is_number_integer())
    throw SpecError("field '" + key + "' must be an integer");
  return j.at(key).get<int>();
}

}  // namespace

StateOptions parse_state_spec(const Json& spec) {
  if (!spec.is_object()) throw SpecError("state spec must be a JSON object");
  static const std::set<std::string> allowed = {
      "family", "gamma",  "r", "energy", "nbar",  "nu",
      "k",      "j",      "n_max",  "path", "mode1", "mode2",
      "tail_budget"};
  for (auto it = spec.begin(); it != spec.end(); ++it)
    if (!allowed.count(it.key()))
      throw SpecError("unknown field in state spec: '" + it.key() + "'");

  StateOptions o;
  if (spec.contains("family")) {
    if (!spec["family"].is_string())
      throw SpecError("field 'family' must be a string");
    o.family = spec["family"].get<std::string>();
  }
  if (spec.contains("gamma")) o.gamma = require_number(spec, "gamma");
  if (spec.contains("r")) o.r = require_number(spec, "r");
  if (spec.contains("energy")) o.energy = require_number(spec, "energy");
  if (spec.contains("nbar")) o.nbar = require_number(spec, "nbar");
  if (spec.contains("nu")) o.nu = require_number(spec, "nu");
  if (spec.contains("k")) o.k = require_int(spec, "k");
  if (spec.contains("j")) o.j = require_int(spec, "j");
  if (spec.contains("n_max")) o.n_max = require_int(spec, "n_max");
  if (spec.contains("tail_budget"))
    o.tail_budget = require_number(spec, "tail_budget");
  if (spec.contains("path")) {
    if (!spec["path"].is_string())
      throw SpecError("field 'path' must be a string");
    o.path = spec["path"].get<std::string>();
  }
  if (spec.contains("mode1"))
    o.mode1 = std::make_shared<StateOptions>(parse_state_spec(spec["mode1"]));
  if (spec.contains("mode2"))
    o.mode2 = std::make_shared<StateOptions>(parse_state_spec(spec["mode2"]));
  return o;
}

Json echo_options(const StateOptions& o) {
  Json e;
  e["family"] = o.family;
  if (o.gamma) e["gamma"] = *o.gamma;
  if (o.r) e["r"] = *o.r;
  if (o.energy) e["energy"] = *o.energy;
  if (o.nbar) e["nbar"] = *o.nbar;
  if (o.nu) e["nu"] = *o.nu;
  if (o.k) e["k"] = *o.k;
  if (o.j) e["j"] = *o.j;
  if (o.n_max) e["n_max"] = *o.n_max;
  if (o.path) e["path"] = *o.path;
  if (o.mode1) e["mode1"] = echo_options(*o.mode1);
  if (o.mode2) e["mode2"] = echo_options(*o.mode2);
  e["tail_budget"] = o.tail_budget;
  return e;
}

const TruncationConfig& BuiltState::config() const {
  if (two_mode()) return two().config();
  return single().config;
}

namespace {

SqueezingParam squeezing_from(const StateOptions& o, int k) {
  int given = int(o.gamma.has_value()) + int(o.r.has_value()) +
              int(o.energy.has_value());
  if (given != 1)
    throw SpecError(
        "exactly one of gamma, r, energy must be given for squeezed families");
  if (o.gamma) return SqueezingParam::from_gamma(*o.gamma);
  if (o.r) return SqueezingParam::from_r(*o.r);
  return gamma_for_energy(*o.energy, k);
}

void forbid(const StateOptions& o, bool cond, const char* msg) {
  (void)o;
  if (cond) throw SpecError(msg);
}

Complex json_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SpecError("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

BuiltState load_file_state(const StateOptions& o) {
  if (!o.path) throw SpecError("family 'file' needs a path");
  std::ifstream f(*o.path);
  if (!f) throw SpecError("cannot open state file: " + *o.path);
  Json j = Json::parse(f, nullptr, false);
  if (j.is_discarded())
    throw SpecError("state file is not valid JSON: " + *o.path);
  if (!j.is_object() || !j.contains("modes") || !j.contains("n_max"))
    throw SpecError("state file needs 'modes' and 'n_max'");
  int modes = require_int(j, "modes");
  int n_max = require_int(j, "n_max");
  if (modes != 1 && modes != 2) throw SpecError("'modes' must be 1 or 2");
  TruncationConfig config(n_max);
  const int d = config.dim();

  BuiltState b{SingleModeState{}, 1, echo_options(o)};
  if (j.contains("ket")) {
    const Json& kj = j["ket"];
    const int expect = modes == 2 ? d * d : d;
    if (!kj.is_array() || int(kj.size()) != expect)
      throw SpecError("'ket' must hold " + std::to_string(expect) +
                      " [re, im] pairs");
    Vector psi(expect);
    for (int i = 0; i < expect; ++i) psi(i) = json_complex(kj[i]);
    if (std::abs(psi.squaredNorm() - 1.0) > config.tol_trace)
      throw SpecError("ket in state file is not normalized");
    if (modes == 2) {
      b.state = TwoModeState::from_ket(std::move(psi), config);
    } else {
      Matrix rho = psi * psi.adjoint();
      b.state = SingleModeState{std::move(rho), config};
    }
    return b;
  }
  if (j.contains("rho")) {
    const Json& rj = j["rho"];
    const int expect = modes == 2 ? d * d : d;
    if (!rj.is_array() || int(rj.size()) != expect)
      throw SpecError("'rho' must be a " + std::to_string(expect) + "-row matrix");
    Matrix rho(expect, expect);
    for (int i = 0; i < expect; ++i) {
      if (!rj[i].is_array() || int(rj[i].size()) != expect)
        throw SpecError("'rho' rows must each hold " + std::to_string(expect) +
                        " [re, im] pairs");
      for (int c = 0; c < expect; ++c) rho(i, c) = json_complex(rj[i][c]);
    }
    DensityCheck chk = check_density(rho, config);
    if (!chk.pass)
      throw SpecError("state file does not hold a density matrix (hermiticity " +
                      format_double(chk.hermiticity_residual) + ", trace dev " +
                      format_double(chk.trace_deviation) + ", min eig " +
                      format_double(chk.min_eigenvalue) + ")");
    if (modes == 2)
      b.state = TwoModeState::from_density(std::move(rho), config);
    else
      b.state = SingleModeState{std::move(rho), config};
    return b;
  }
  throw SpecError("state file needs either 'ket' or 'rho'");
}

SingleModeState build_single(const StateOptions& o) {
  BuiltState b = build_state(o);
  if (b.two_mode())
    throw SpecError("product factors must be single-mode states");
  return b.single();
}

}  // namespace

BuiltState build_state(const StateOptions& o) {
  if (o.family.empty()) throw SpecError("state family is required");
  const double budget = o.tail_budget;

  if (o.family == "tmsv" || o.family == "mp_tmsv") {
    int k = 1;
    if (o.family == "mp_tmsv") {
      if (!o.k) throw SpecError("mp_tmsv needs a ladder order k");
      k = *o.k;
    } else {
      forbid(o, o.k.has_value() && *o.k != 1,
             "tmsv is the k=1 family; use mp_tmsv for k > 1");
    }
    forbid(o, o.j.has_value() && *o.j != 0,
           "pair states live in the j=0 sector");
    forbid(o, o.nbar.has_value() || o.nu.has_value(),
           "nbar/nu do not apply to squeezed families");
    SqueezingParam p = squeezing_from(o, k);
    TwoModeState s = o.n_max
                         ? mp_tmsv(p, k, TruncationConfig(*o.n_max), budget)
                         : mp_tmsv(p, k, budget);
    return {std::move(s), k, echo_options(o)};
  }

  if (o.family == "thermal" || o.family == "mp_thermal") {
    forbid(o, o.gamma.has_value() || o.r.has_value() || o.energy.has_value(),
           "gamma/r/energy do not apply to thermal families");
    int k = 1, j = 0;
    double occ;
    if (o.family == "thermal") {
      forbid(o, o.nu.has_value(), "thermal uses nbar, not nu");
      forbid(o, (o.k.has_value() && *o.k != 1) || (o.j.has_value() && *o.j != 0),
             "thermal is the k=1, j=0 family; use mp_thermal");
      if (!o.nbar) throw SpecError("thermal needs nbar");
      occ = *o.nbar;
    } else {
      forbid(o, o.nbar.has_value(), "mp_thermal uses nu, not nbar");
      if (!o.nu) throw SpecError("mp_thermal needs nu");
      if (!o.k) throw SpecError("mp_thermal needs a ladder order k");
      occ = *o.nu;
      k = *o.k;
      j = o.j.value_or(0);
    }
    SingleModeState s =
        o.n_max ? mp_thermal(occ, k, j, TruncationConfig(*o.n_max), budget)
                : mp_thermal(occ, k, j, budget);
    return {std::move(s), k, echo_options(o)};
  }

  if (o.family == "product") {
    if (!o.mode1 || !o.mode2)
      throw SpecError("product needs mode1 and mode2 specs");
    SingleModeState a = build_single(*o.mode1);
    SingleModeState b = build_single(*o.mode2);
    int k = o.mode1->k.value_or(1);
    return {product(a, b), k, echo_options(o)};
  }

  if (o.family == "file") return load_file_state(o);

  throw SpecError("unknown state family: '" + o.family + "'");
}

int resolve_k(const BuiltState& b, int requested) {
  if (requested > 0) return requested;
  if (b.build_k > 1) return b.build_k;
  if (b.two_mode()) return infer_k(b.two());
  return infer_k(b.single());
}

namespace {

Json density_check_json(const DensityCheck& c) {
  Json j;
  j["hermiticity_residual"] = c.hermiticity_residual;
  j["trace_deviation"] = c.trace_deviation;
  j["min_eigenvalue"] = c.min_eigenvalue;
  j["pass"] = c.pass;
  return j;
}

Json energy_json(const EnergyReport& e) {
  Json j;
  j["k"] = e.k;
  j["total"] = e.total;
  j["per_mode"] = Json::array({e.per_mode[0], e.per_mode[1]});
  return j;
}

Json sector_report_json(const SectorReport& r) {
  Json j;
  j["sector"] = r.sector;
  j["confined"] = r.confined;
  j["leakage"] = r.leakage;
  return j;
}

}  // namespace

Json state_payload(const BuiltState& b) {
  Json p;
  p["modes"] = b.two_mode() ? 2 : 1;
  p["n_max"] = b.config().n_max;
  if (b.two_mode()) {
    const TwoModeState& s = b.two();
    p["dim"] = s.dim();
    p["pure_form"] = s.pure_form();
    p["trace"] = s.pure_form() ? s.ket().squaredNorm()
                               : s.density().trace().real();
    p["purity"] = purity(s);
    p["energy"] = energy_json(mean_energy(s, 1));
    if (b.build_k > 1) {
      p["energy_k"] = energy_json(mean_energy(s, b.build_k));
      Json sec;
      TwoModeSectorReport r = detect_sector(s, b.build_k);
      sec["mode1"] = sector_report_json(r.mode1);
      sec["mode2"] = sector_report_json(r.mode2);
      sec["confined"] = r.confined;
      p["sector"] = sec;
    }
    p["density_check"] = density_check_json(check_density(s));
  } else {
    const SingleModeState& s = b.single();
    p["dim"] = s.dim();
    p["pure_form"] = false;
    p["trace"] = s.rho.trace().real();
    p["purity"] = purity(s);
    Json e;
    e["k"] = 1;
    e["total"] = mean_energy(s, 1);
    p["energy"] = e;
    if (b.build_k > 1) {
      Json ek;
      ek["k"] = b.build_k;
      ek["total"] = mean_energy(s, b.build_k);
      p["energy_k"] = ek;
      p["sector"] = sector_report_json(detect_sector(s, b.build_k));
    }
    p["density_check"] = density_check_json(check_density(s));
  }
  return p;
}

Json cov_payload(const TwoModeState& s, int k) {
  CovarianceMatrix cm = covariance(s, k);
  Json p;
  p["k"] = k;
  p["means"] = real_vector_json(cm.means);
  p["sigma"] = real_matrix_json(cm.sigma);
  StandardFormValidation v = validate_standard_form(cm);
  Json vj;
  vj["ok"] = v.ok;
  Json fj;
  fj["b1"] = v.form.b1;
  fj["b2"] = v.form.b2;
  fj["d1"] = v.form.d1;
  fj["d2"] = v.form.d2;
  fj["c1"] = v.form.c1;
  fj["c2"] = v.form.c2;
  vj["form"] = fj;
  vj["pattern_residual"] = v.pattern_residual;
  vj["ratio_residual"] = v.ratio_residual;
  vj["balance_residual"] = v.balance_residual;
  vj["violations"] = v.violations;
  p["standard_form_validation"] = vj;
  return p;
}

namespace {

Json form_json(const StandardFormCM& f) {
  Json j;
  j["b1"] = f.b1;
  j["b2"] = f.b2;
  j["d1"] = f.d1;
  j["d2"] = f.d2;
  j["c1"] = f.c1;
  j["c2"] = f.c2;
  j["k"] = f.k;
  return j;
}

}  // namespace

Json separability_payload(const TwoModeState& s, int k, double boundary_tol) {
  Json p;
  p["k"] = k;
  CovarianceMatrix cm = covariance(s, k);
  p["means"] = real_vector_json(cm.means);
  p["sigma"] = real_matrix_json(cm.sigma);

  StandardizeResult st = standardize(cm);
  p["standard_form"] = form_json(st.form);
  Json tr;
  tr["theta1"] = st.transform.theta1;
  tr["theta2"] = st.transform.theta2;
  tr["mu1"] = st.transform.mu1;
  tr["mu2"] = st.transform.mu2;
  tr["phi1"] = st.transform.phi1;
  tr["phi2"] = st.transform.phi2;
  tr["lambda1"] = st.transform.lambda1;
  tr["lambda2"] = st.transform.lambda2;
  tr["residual_ratio"] = st.residual_ratio;
  tr["residual_balance"] = st.residual_balance;
  p["transform"] = tr;

  // Gaussianity certificate in the sector picture
  Json cert;
  bool certified = false;
  TwoModeSectorReport sec = detect_sector(s, k);
  cert["confined"] = sec.confined;
  if (sec.sector)
    cert["sector"] = *sec.sector;
  else
    cert["sector"] = nullptr;
  if (sec.confined && sec.sector) {
    GaussianityReport g1 = gaussianity_check(partial_trace(s, 1), k, *sec.sector);
    GaussianityReport g2 = gaussianity_check(partial_trace(s, 2), k, *sec.sector);
    certified = g1.certified && g2.certified;
    cert["mode1_residual"] = g1.residual;
    cert["mode2_residual"] = g2.residual;
  }
  cert["certified"] = certified;
  p["certificate"] = cert;

  SeparabilityVerdict v = criterion(st.form, certified, boundary_tol);
  Json cj;
  cj["decision"] = to_string(v.decision);
  cj["branch"] = v.branch;
  cj["lhs"] = v.lhs;
  cj["rhs"] = v.rhs;
  cj["margin"] = v.margin;
  cj["q0"] = v.q0;
  cj["general_lhs"] = v.general_lhs;
  cj["general_rhs"] = v.general_rhs;
  cj["boundary"] = v.boundary;
  cj["diagnostics"] = v.diagnostics;
  p["criterion"] = cj;

  PptResult ppt = ppt_check(s);
  Json oj;
  oj["min_eigenvalue"] = ppt.min_eigenvalue;
  oj["entangled"] = ppt.entangled;
  oj["log_negativity"] = log_negativity(s);
  p["oracle"] = oj;

  p["decision"] = to_string(v.decision);
  p["oracle_consistent"] =
      v.decision != Decision::Entangled || ppt.entangled;
  return p;
}

Json sector_payload(const BuiltState& b, int k, bool inferred) {
  Json p;
  p["k"] = k;
  p["k_inferred"] = inferred;
  if (b.two_mode()) {
    TwoModeSectorReport r = detect_sector(b.two(), k);
    p["mode1"] = sector_report_json(r.mode1);
    p["mode2"] = sector_report_json(r.mode2);
    Json c;
    c["confined"] = r.confined;
    if (r.sector)
      c["sector"] = *r.sector;
    else
      c["sector"] = nullptr;
    c["leakage"] = r.leakage;
    p["combined"] = c;
    if (r.confined && r.sector)
      p["sector_dim"] = sector_dim(b.config().n_max, k, *r.sector);
  } else {
    SectorReport r = detect_sector(b.single(), k);
    p["mode1"] = sector_report_json(r);
    if (r.confined) p["sector_dim"] = sector_dim(b.config().n_max, k, r.sector);
  }
  return p;
}

Json measures_payload(const BuiltState& b, int k, std::optional<int> compare_k,
                      std::optional<double> pmin_energy) {
  Json p;
  p["k"] = k;
  if (b.two_mode()) {
    const TwoModeState& s = b.two();
    double pur = purity(s);
    p["purity"] = pur;
    p["entropy"] = von_neumann_entropy(s);
    p["energy"] = energy_json(mean_energy(s, 1));
    if (k > 1) p["energy_k"] = energy_json(mean_energy(s, k));
    SingleModeState r1 = partial_trace(s, 1);
    SingleModeState r2 = partial_trace(s, 2);
    p["reduced_entropy"] =
        Json::array({von_neumann_entropy(r1), von_neumann_entropy(r2)});
    if (std::abs(pur - 1.0) <= 1e-8)
      p["entanglement_entropy"] = entanglement_entropy(s);
    p["log_negativity"] = log_negativity(s);
    if (compare_k) {
      Json c;
      c["k"] = *compare_k;
      TwoModeSectorReport sec = detect_sector(s, *compare_k);
      c["confined"] = sec.confined;
      if (sec.confined && sec.sector) {
        CompressedTwoMode comp = compress_to_sector(s, *compare_k, *sec.sector);
        double s_orig = von_neumann_entropy(r1);
        double s_comp = von_neumann_entropy(partial_trace(comp.state, 1));
        c["reduced_entropy_original"] = s_orig;
        c["reduced_entropy_compressed"] = s_comp;
        c["difference"] = s_orig - s_comp;
        c["energy_k_total"] = mean_energy(s, *compare_k).total;
      }
      p["compare_k"] = c;
    }
  } else {
    const SingleModeState& s = b.single();
    p["purity"] = purity(s);
    p["entropy"] = von_neumann_entropy(s);
    Json e;
    e["k"] = 1;
    e["total"] = mean_energy(s, 1);
    p["energy"] = e;
    if (k > 1) {
      Json ek;
      ek["k"] = k;
      ek["total"] = mean_energy(s, k);
      p["energy_k"] = ek;
    }
  }
  if (pmin_energy) {
    Json pm;
    pm["energy"] = *pmin_energy;
    pm["k"] = k;
    pm["bound"] = p_min(*pmin_energy, k);
    p["p_min"] = pm;
  }
  return p;
}

Json wigner_header(const WignerGrid& w, int k, int j, int mode) {
  Json h;
  h["k"] = k;
  h["j"] = j;
  h["mode"] = mode;
  h["points"] = int(w.x_axis.size());
  h["x_min"] = w.x_axis(0);
  h["x_max"] = w.x_axis(w.x_axis.size() - 1);
  h["p_min"] = w.p_axis(0);
  h["p_max"] = w.p_axis(w.p_axis.size() - 1);
  h["cell_area"] = w.cell_area;
  h["normalization_residual"] = w.normalization_residual;
  h["min_value"] = w.min_value;
  h["convention"] = w.convention;
  return h;
}

std::string wigner_csv(const WignerGrid& w) {
  std::string out = "x,p,W\n";
  char buf[128];
  for (Eigen::Index i = 0; i < w.x_axis.size(); ++i) {
    for (Eigen::Index j = 0; j < w.p_axis.size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", w.x_axis(i),
                    w.p_axis(j), w.values(i, j));
      out += buf;
    }
  }
  return out;
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write output file: " + path);
  f << text;
}

int run_command(const Invocation& inv, std::ostream& out) {
  BuiltState b = build_state(inv.state);
  Json trunc = truncation_echo(b.config(), inv.state.tail_budget);

  if (inv.command == "wigner") {
    int k = resolve_k(b, inv.k);
    SingleModeState target =
        b.two_mode() ? partial_trace(b.two(), inv.mode) : b.single();
    int j = inv.j.value_or(k > 1 ? detect_sector(target, k).sector : 0);
    GridSpec grid;
    grid.half_width = inv.grid_range;
    grid.points = inv.grid_points;
    WignerGrid w = wigner_multiphoton(target, k, j, grid);
    Json env =
        envelope(b.echo, trunc, wigner_header(w, k, j, b.two_mode() ? inv.mode : 1));
    std::string csv = wigner_csv(w);
    if (inv.out.empty()) {
      write_json(out, env);
      out << csv;
    } else {
      write_text(inv.out, csv);
      write_text(inv.out + ".json", dump_json(env));
    }
    return kExitOk;
  }

  Json payload;
  if (inv.command == "state") {
    payload = state_payload(b);
  } else if (inv.command == "cov") {
    if (!b.two_mode())
      throw SpecError("covariance needs a two-mode state");
    payload = cov_payload(b.two(), resolve_k(b, inv.k));
  } else if (inv.command == "separability") {
    if (!b.two_mode())
      throw SpecError("separability needs a two-mode state");
    payload = separability_payload(b.two(), resolve_k(b, inv.k));
  } else if (inv.command == "measures") {
    payload = measures_payload(b, resolve_k(b, inv.k), inv.compare_k,
                               inv.pmin_energy);
  } else if (inv.command == "sector") {
    payload = sector_payload(b, resolve_k(b, inv.k), inv.k <= 0);
  } else {
    throw SpecError("unknown command: " + inv.command);
  }

  Json env = envelope(b.echo, trunc, std::move(payload));
  if (inv.out.empty()) {
    write_json(out, env);
  } else {
    write_text(inv.out, dump_json(env));
  }
  return kExitOk;
}

}  // namespace

int dispatch(const Invocation& inv, std::ostream& out, std::ostream& err) {
  try {
    return run_command(inv, out);
  } catch (const SpecError& e) {
    err << "error (invalid spec): " << e.what() << '\n';
    return kExitInvalidSpec;
  } catch (const TruncationError& e) {
    err << "error (truncation budget): " << e.what() << '\n';
    return kExitTruncation;
  } catch (const SectorError& e) {
    err << "error (sector): " << e.what() << '\n';
    return kExitSector;
  } catch (const StandardizeError& e) {
    err << "error (standardize): " << e.what() << '\n';
    return kExitStandardize;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"k-photon pair states on a truncated Fock space"};
  app.name("mpfock");
  app.require_subcommand(1);

  Invocation inv;
  std::optional<double> gamma, r, energy, nbar, nu, tail_budget;
  std::optional<int> state_k, state_j, n_max;
  std::string family, config_path, file_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--family", family,
                    "tmsv | mp_tmsv | thermal | mp_thermal | product | file");
    sub->add_option("--gamma", gamma, "squeezing gamma in [0, 1)");
    sub->add_option("--r", r, "squeezing r >= 0");
    sub->add_option("--energy", energy, "mean total photon number");
    sub->add_option("--nbar", nbar, "thermal mean occupation");
    sub->add_option("--nu", nu, "sector-thermal mean occupation");
    sub->add_option("--k", state_k, "ladder order");
    sub->add_option("--j", state_j, "sector offset");
    sub->add_option("--nmax", n_max, "explicit truncation level");
    sub->add_option("--tail-budget", tail_budget, "truncation tail budget");
    sub->add_option("--config", config_path, "JSON state spec (flags override)");
    sub->add_option("--file", file_path, "state file (implies family=file)");
    sub->add_option("--out", inv.out, "output path (default: stdout)");
  };

  CLI::App* c_state = app.add_subcommand("state", "build a state and summarize it");
  CLI::App* c_cov = app.add_subcommand("cov", "k-quadrature covariance matrix");
  CLI::App* c_wigner = app.add_subcommand("wigner", "Wigner function on a grid");
  CLI::App* c_sep =
      app.add_subcommand("separability", "standard form, criterion, oracle");
  CLI::App* c_meas =
      app.add_subcommand("measures", "purity, entropies, energies, negativity");
  CLI::App* c_sector = app.add_subcommand("sector", "sector detection report");
  for (CLI::App* sub : {c_state, c_cov, c_wigner, c_sep, c_meas, c_sector})
    add_common(sub);

  c_wigner->add_option("--mode", inv.mode, "reduced mode for two-mode states")
      ->check(CLI::Range(1, 2));
  c_wigner->add_option("--grid-range", inv.grid_range,
                       "half-width of the grid (0 = auto)");
  c_wigner->add_option("--grid-points", inv.grid_points, "points per axis");
  std::optional<int> compare_k;
  std::optional<double> pmin_energy;
  c_meas->add_option("--compare-k", compare_k,
                     "compare entropies against this sector order");
  c_meas->add_option("--pmin-energy", pmin_energy,
                     "report the purity floor at this mean energy");

  std::vector<const char*> argv;
  argv.push_back("mpfock");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidSpec;
  }

  Json spec = Json::object();
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) {
      err << "error (invalid spec): cannot open config: " << config_path << '\n';
      return kExitInvalidSpec;
    }
    spec = Json::parse(f, nullptr, false);
    if (spec.is_discarded() || !spec.is_object()) {
      err << "error (invalid spec): config is not a JSON object\n";
      return kExitInvalidSpec;
    }
  }
  if (!file_path.empty()) {
    spec["family"] = "file";
    spec["path"] = file_path;
  }
  if (!family.empty()) spec["family"] = family;
  if (gamma) spec["gamma"] = *gamma;
  if (r) spec["r"] = *r;
  if (energy) spec["energy"] = *energy;
  if (nbar) spec["nbar"] = *nbar;
  if (nu) spec["nu"] = *nu;
  if (n_max) spec["n_max"] = *n_max;
  if (tail_budget) spec["tail_budget"] = *tail_budget;
  // --k and --j name the analysis ladder; they only enter the state spec for
  // the multi-photon families, where construction needs them
  std::string fam = spec.value("family", "");
  if (state_k) {
    inv.k = *state_k;
    if (fam == "mp_tmsv" || fam == "mp_thermal") spec["k"] = *state_k;
  }
  if (state_j) {
    inv.j = *state_j;
    if (fam == "mp_thermal") spec["j"] = *state_j;
  }
  inv.compare_k = compare_k;
  inv.pmin_energy = pmin_energy;

  inv.command = app.get_subcommands().front()->get_name();
  try {
    inv.state = parse_state_spec(spec);
  } catch (const SpecError& e) {
    err << "error (invalid spec): " << e.what() << '\n';
    return kExitInvalidSpec;
  }
  return dispatch(inv, out, err);
}

}  // namespace mpfock::cli
