#include "paritysim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "paritysim/decay.hpp"
#include "paritysim/jc.hpp"
#include "paritysim/jpm.hpp"
#include "paritysim/lindblad.hpp"
#include "paritysim/mismatch.hpp"
#include "paritysim/protocol.hpp"

namespace parity::scenario {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// ---------------------------------------------------------------- schema --

struct Field {
  enum Kind { Num, Int, Bool, NumArray, IntArray } kind = Num;
  std::string key;
  json default_value;
  double min_val = 0.0;
  double max_val = 0.0;  // inclusive bounds for Num/Int and array elements
};

struct ScenarioDef {
  std::string name;
  std::string description;
  std::string figure;
  std::vector<Field> fields;
  ScenarioResult (*run)(const json& params);
};

void check_field(const Field& f, const json& value, const std::string& path,
                 std::vector<Issue>& issues) {
  auto range_ok = [&](double v) { return v >= f.min_val && v <= f.max_val; };
  switch (f.kind) {
    case Field::Num:
      if (!value.is_number())
        issues.push_back({path, "expected a number"});
      else if (!range_ok(value.get<double>()))
        issues.push_back({path, "out of range [" + std::to_string(f.min_val) + ", " +
                                    std::to_string(f.max_val) + "]"});
      break;
    case Field::Int:
      if (!value.is_number_integer())
        issues.push_back({path, "expected an integer"});
      else if (!range_ok(value.get<double>()))
        issues.push_back({path, "out of range [" + std::to_string(f.min_val) + ", " +
                                    std::to_string(f.max_val) + "]"});
      break;
    case Field::Bool:
      if (!value.is_boolean()) issues.push_back({path, "expected a boolean"});
      break;
    case Field::NumArray:
    case Field::IntArray:
      if (!value.is_array()) {
        issues.push_back({path, "expected an array"});
        break;
      }
      for (std::size_t i = 0; i < value.size(); ++i) {
        const bool type_ok = (f.kind == Field::NumArray) ? value[i].is_number()
                                                         : value[i].is_number_integer();
        if (!type_ok)
          issues.push_back({path + "[" + std::to_string(i) + "]", "wrong element type"});
        else if (!range_ok(value[i].get<double>()))
          issues.push_back({path + "[" + std::to_string(i) + "]", "element out of range"});
      }
      break;
  }
}

json effective_params(const ScenarioDef& def, const json& config) {
  json params = config.contains("params") ? config.at("params") : json::object();
  json out = json::object();
  for (const Field& f : def.fields)
    out[f.key] = params.contains(f.key) ? params.at(f.key) : f.default_value;
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(n);
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(n);
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) out.push_back(std::exp(llo + (lhi - llo) * i / (n - 1)));
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const std::vector<std::string> kUnitConventionLines = {
    "convention: config frequencies are f in Hz, converted as omega = 2*pi*f",
    "convention: gamma_* and kappa rate fields are plain rates in 1/s (no 2*pi)",
    "convention: basis labels read qubit 1 leftmost; bit 1 = excited = +chi pull; "
    "leftmost tensor factor is the slowest index",
};

void common_metadata(ScenarioResult& result, const ScenarioDef& def, const json& params) {
  result.metadata.push_back(std::string("paritysim ") + kCodeVersion +
                            " scenario=" + def.name +
                            " schema_version=" + std::to_string(kSchemaVersion));
  for (const auto& line : kUnitConventionLines) result.metadata.push_back(line);
  result.metadata.push_back("params: " + params.dump());
}

drive::QubitRegister make_register(int n_qubits, double chi_hz,
                                   const std::vector<double>& eps_over_chi) {
  drive::QubitRegister reg;
  reg.n_qubits = n_qubits;
  reg.chi = kTwoPi * chi_hz;
  reg.omega_c = 0.0;
  if (!eps_over_chi.empty()) {
    if (static_cast<int>(eps_over_chi.size()) != n_qubits)
      throw ConfigError("epsilons_over_chi needs one entry per qubit");
    reg.epsilons.resize(n_qubits, 0.0);
    for (int k = 0; k < n_qubits; ++k) reg.epsilons[k] = eps_over_chi[k] * reg.chi;
  }
  try {
    drive::validate(reg);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
  return reg;
}

jpm::JpmParams make_jpm(const json& p) {
  jpm::JpmParams params;
  params.omega_j = 0.0;
  params.g_j = kTwoPi * p.at("g_j_hz").get<double>();
  params.gamma_j = p.at("gamma_j_per_s").get<double>();
  params.gamma_r = p.at("gamma_r_per_s").get<double>();
  params.gamma_d = p.at("gamma_d_per_s").get<double>();
  return params;
}

// ----------------------------------------------------------------- fig 2 --

ScenarioResult run_fig2(const json& p) {
  const int n_qubits = p.at("n_qubits").get<int>();
  std::vector<double> eps = p.at("epsilons_over_chi").get<std::vector<double>>();
  const auto reg = make_register(n_qubits, p.at("chi_hz").get<double>(), eps);
  const double t_d = drive::optimal_drive_time(reg);
  const double a0 =
      drive::amplitude_for_odd_occupation(p.at("alpha_o_sq").get<double>(), t_d);
  const auto pulse = drive::parity_drive_pulse(reg, a0, t_d);
  const auto grid = linspace(0.0, p.at("t_max_s").get<double>(), p.at("n_time").get<int>());

  const auto curves = drive::occupation_curves(reg, pulse, grid);

  ScenarioResult result;
  result.columns.push_back("t_s");
  for (std::size_t b = 0; b < curves.band_shifts.size(); ++b) {
    const char* parity = curves.band_parities[b] == drive::Parity::Even ? "even" : "odd";
    result.columns.push_back("n_" + std::string(parity) + "_" +
                             fmt(curves.band_shifts[b] / reg.chi) + "chi");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row{grid[i]};
    for (const auto& occ : curves.occupations) row.push_back(occ[i]);
    result.rows.push_back(std::move(row));
  }
  result.metadata.push_back("drive: tones on the mismatch-free odd bands, t_d_opt = " +
                            fmt(t_d) + " s, a0 = " + fmt(a0) + " rad/s");
  return result;
}

// ----------------------------------------------------------------- fig 3 --

ScenarioResult run_fig3(const json& p) {
  const double chi = kTwoPi * p.at("chi_hz").get<double>();
  const auto params = make_jpm(p);
  const double alpha = std::sqrt(p.at("alpha_o_sq").get<double>());
  const int dim = p.at("cavity_dim").get<int>();
  const double tol = p.at("ode_tol").get<double>();
  const auto grid = linspace(0.0, p.at("t_max_s").get<double>(), p.at("n_time").get<int>());

  const auto bright_plus = jpm::detection_probability(alpha, 2.0 * chi, params, grid, dim, tol);
  const auto bright_minus = jpm::detection_probability(alpha, -2.0 * chi, params, grid, dim, tol);
  const auto dark = jpm::detection_probability(cplx(0.0), 0.0, params, grid, dim, tol);
  const auto contrast = jpm::contrast_curve(bright_plus.curve, dark.curve);

  ScenarioResult result;
  result.columns = {"t_m_s", "bright_plus_2chi", "bright_minus_2chi", "dark", "contrast"};
  for (std::size_t i = 0; i < grid.size(); ++i)
    result.rows.push_back({grid[i], bright_plus.curve.p_click[i],
                           bright_minus.curve.p_click[i], dark.curve.p_click[i],
                           contrast.p_click[i]});
  result.metadata.push_back(
      "assumption: odd-band occupation |alpha_O|^2 = " + fmt(alpha * alpha) +
      ", odd-band detunings +-2chi, dark input = vacuum at the resonant center band");
  return result;
}

// ----------------------------------------------------------------- fig 4 --

ScenarioResult run_fig4(const json& p) {
  const double chi = kTwoPi * p.at("chi_hz").get<double>();
  const double t_d = M_PI / chi;
  const double a0 = drive::amplitude_for_odd_occupation(p.at("alpha_o_sq").get<double>(), t_d);
  jpm::JpmParams params;
  params.gamma_j = p.at("gamma_j_per_s").get<double>();
  params.gamma_r = p.at("gamma_r_per_s").get<double>();

  const auto eps_grid = p.at("log_spacing").get<bool>()
                            ? logspace(p.at("eps_over_chi_min").get<double>(),
                                       p.at("eps_over_chi_max").get<double>(),
                                       p.at("n_eps").get<int>())
                            : linspace(p.at("eps_over_chi_min").get<double>(),
                                       p.at("eps_over_chi_max").get<double>(),
                                       p.at("n_eps").get<int>());

  ScenarioResult result;
  result.columns = {"eps_over_chi", "even_detection_ideal", "even_detection_corrected",
                    "odd_coherence", "even_coherence"};
  for (double e : eps_grid) {
    const auto amps = mismatch::two_qubit_amplitudes(a0, chi, e * chi);
    const auto det = jpm::analytic_detection_probability(amps.a00, params);
    const double d_odd = std::abs(fock::coherent_overlap(amps.a01, amps.a10));
    const double d_even = std::abs(fock::coherent_overlap(amps.a00, amps.a11));
    result.rows.push_back({e, det.ideal, det.relaxation_corrected, d_odd, d_even});
  }
  result.metadata.push_back(
      "assumption: two-qubit register, odd pair {01,10} and even pair {00,11}; "
      "a0 fixed by |alpha_O|^2 = " + fmt(p.at("alpha_o_sq").get<double>()) + " at eps = 0");
  return result;
}

// ------------------------------------------------------- steady coherence --

ScenarioResult run_steady_coherence(const json& p) {
  const auto eps_values = p.at("eps_over_chi_values").get<std::vector<double>>();
  const double n_c = p.at("n_c").get<double>();
  const double nbar = p.at("nbar").get<double>();
  const double kappa = p.at("kappa_per_s").get<double>();
  const double tol = p.at("ode_tol").get<double>();
  const int dim = p.at("cavity_dim").get<int>();

  ScenarioResult result;
  result.columns = {"eps_over_chi", "f_analytic", "f_numeric", "abs_error"};
  for (double e : eps_values) {
    const auto check = decay::lindblad_steady_coherence(n_c, e, nbar, kappa, tol, dim);
    result.rows.push_back({e, check.f_analytic, check.f_numeric,
                           std::abs(check.f_analytic - check.f_numeric)});
  }
  result.metadata.push_back("model: odd pair {01,10} with cavity loss, N_C = " + fmt(n_c) +
                            ", nbar = " + fmt(nbar) + ", Lindblad rate kappa = " +
                            fmt(kappa) + " 1/s (field rate kappa/2)");
  return result;
}

// --------------------------------------------------------- decay envelope --

ScenarioResult run_decay_envelope(const json& p) {
  const auto occupations = linspace(p.at("occupation_min").get<double>(),
                                    p.at("occupation_max").get<double>(),
                                    p.at("n_occupations").get<int>());
  const auto ks = p.at("photons_removed").get<std::vector<int>>();
  const auto points = decay::post_reset_decay_envelope(occupations, ks);

  ScenarioResult result;
  result.columns = {"occupation"};
  for (int k : ks) result.columns.push_back("one_minus_f_k" + std::to_string(k));
  std::size_t idx = 0;
  for (double occ : occupations) {
    std::vector<double> row{occ};
    for (std::size_t j = 0; j < ks.size(); ++j) row.push_back(points[idx + j].one_minus_f);
    idx += ks.size();
    result.rows.push_back(std::move(row));
  }
  result.metadata.push_back(
      "reset policy: alpha_M = <a> of the cavity state being reset, applied per branch; "
      "worst-case pair alpha_0 = -alpha_1 real");
  return result;
}

// ---------------------------------------------------------------- jc runs --

std::vector<std::string> jc_band_labels(int n_qubits) {
  if (n_qubits == 2) return {"00", "01", "11"};
  return {"0000", "0001", "0011", "0111", "1111"};
}

ScenarioResult run_jc_occupation(const json& p) {
  const int n_qubits = p.at("n_qubits").get<int>();
  const auto reg = make_register(n_qubits, p.at("chi_hz").get<double>(), {});
  const auto model = jc::build_jc_model(reg, kTwoPi * p.at("detuning_hz").get<double>(),
                                        p.at("cavity_dim").get<int>());
  const double t_d = drive::optimal_drive_time(reg);
  const double a0 = drive::amplitude_for_odd_occupation(p.at("alpha_o_sq").get<double>(), t_d);
  const auto pulse = drive::parity_drive_pulse(reg, a0, t_d);
  const auto grid = linspace(0.0, p.at("t_max_over_t_d").get<double>() * t_d,
                             p.at("n_time").get<int>());
  const double tol = p.at("ode_tol").get<double>();

  ScenarioResult result;
  result.columns = {"t_s"};
  std::vector<jc::JcDriveResult> runs;
  std::string bands_note = "bands:";
  for (const auto& label : jc_band_labels(n_qubits)) {
    runs.push_back(jc::jc_drive_evolution(model, pulse, label, grid, tol));
    result.columns.push_back("n_" + label);
    bands_note += " " + label + " shift/chi=" + fmt(runs.back().band_shift / reg.chi) +
                  (runs.back().parity == drive::Parity::Even ? " (even)" : " (odd)");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row{grid[i]};
    for (const auto& run : runs) row.push_back(run.occupation[i]);
    result.rows.push_back(std::move(row));
  }
  result.metadata.push_back("jc split: detuning = omega_c - omega_q = 2*pi*" +
                            fmt(p.at("detuning_hz").get<double>()) +
                            " Hz, g_k = sqrt(chi_k * detuning) (g_1/2pi = " +
                            fmt(model.couplings[0] / kTwoPi) + " Hz)");
  result.metadata.push_back(bands_note);
  return result;
}

ScenarioResult run_jc_contrast(const json& p) {
  const int n_qubits = p.at("n_qubits").get<int>();
  const auto reg = make_register(n_qubits, p.at("chi_hz").get<double>(), {});
  const auto model = jc::build_jc_model(reg, kTwoPi * p.at("detuning_hz").get<double>(),
                                        p.at("cavity_dim").get<int>());
  const double t_d = drive::optimal_drive_time(reg);
  const double a0 = drive::amplitude_for_odd_occupation(p.at("alpha_o_sq").get<double>(), t_d);
  const auto pulse = drive::parity_drive_pulse(reg, a0, t_d);
  const auto params = make_jpm(p);
  const auto grid = linspace(0.0, p.at("t_max_s").get<double>(), p.at("n_time").get<int>());

  const auto run = jc::jc_contrast(model, pulse, params, grid,
                                   p.at("bright_cavity_dim").get<int>(),
                                   p.at("ode_tol").get<double>(),
                                   p.at("drive_tol").get<double>());

  ScenarioResult result;
  result.columns = {"t_m_s", "bright", "dark_even", "contrast"};
  for (std::size_t i = 0; i < grid.size(); ++i)
    result.rows.push_back({grid[i], run.bright[i], run.dark[i], run.contrast[i]});
  result.metadata.push_back("jc split: detuning = 2*pi*" +
                            fmt(p.at("detuning_hz").get<double>()) +
                            " Hz, g_k = sqrt(chi_k * detuning)");
  result.metadata.push_back("worst-case even band " + run.even_label +
                            " (shift/chi = " + fmt(run.even_band_shift / reg.chi) +
                            "), residual occupation " + fmt(run.even_occupation) +
                            "; odd-band occupation " + fmt(run.odd_occupation));
  result.metadata.push_back("max contrast " + fmt(run.max_contrast) + " at t_m = " +
                            fmt(run.t_at_max) + " s");
  return result;
}

// ---------------------------------------------------------------- catalog --

std::vector<ScenarioDef> build_defs() {
  std::vector<ScenarioDef> defs;

  defs.push_back({"fig2-drive-occupation",
                  "Cavity photon number vs drive-pulse length for every parity band "
                  "(closed form)",
                  "main text Fig. 2",
                  {
                      {Field::Int, "n_qubits", 4, 1, 4},
                      {Field::Num, "chi_hz", 5e6, 1.0, 1e12},
                      {Field::Num, "alpha_o_sq", 9.0, 0.0, 100.0},
                      {Field::Num, "t_max_s", 2e-7, 1e-12, 1.0},
                      {Field::Int, "n_time", 401, 2, 100001},
                      {Field::NumArray, "epsilons_over_chi", json::array(), -0.999, 0.999},
                  },
                  &run_fig2});

  defs.push_back({"fig3-contrast",
                  "Bright/dark click probability and measurement contrast for the "
                  "three-level counter coupled to the cavity",
                  "main text Fig. 3",
                  {
                      {Field::Num, "chi_hz", 5e6, 1.0, 1e12},
                      {Field::Num, "g_j_hz", 5e7, 0.0, 1e12},
                      {Field::Num, "gamma_j_per_s", 2e8, 0.0, 1e15},
                      {Field::Num, "gamma_r_per_s", 2e8, 0.0, 1e15},
                      {Field::Num, "gamma_d_per_s", 1e6, 0.0, 1e15},
                      {Field::Num, "alpha_o_sq", 9.0, 0.0, 64.0},
                      {Field::Int, "cavity_dim", 30, 4, 1600},
                      {Field::Num, "t_max_s", 4e-8, 1e-12, 1.0},
                      {Field::Int, "n_time", 81, 2, 100001},
                      {Field::Num, "ode_tol", 1e-9, 1e-13, 1e-4},
                  },
                  &run_fig3});

  defs.push_back({"fig4-mismatch",
                  "Dispersive-shift mismatch: even-state detection probability and "
                  "same-parity coherence factors (closed forms)",
                  "main text Fig. 4",
                  {
                      {Field::Num, "chi_hz", 5e6, 1.0, 1e12},
                      {Field::Num, "alpha_o_sq", 9.0, 0.0, 64.0},
                      {Field::Num, "eps_over_chi_min", 0.01, 1e-6, 0.999},
                      {Field::Num, "eps_over_chi_max", 0.2, 1e-6, 0.999},
                      {Field::Int, "n_eps", 40, 2, 10000},
                      {Field::Bool, "log_spacing", true},
                      {Field::Num, "gamma_j_per_s", 2e8, 0.0, 1e15},
                      {Field::Num, "gamma_r_per_s", 2e8, 0.0, 1e15},
                  },
                  &run_fig4});

  defs.push_back({"steady-coherence",
                  "Steady-state coherence of an odd-parity superposition under cavity "
                  "loss: closed form vs master equation",
                  "main text (steady-state coherence law)",
                  {
                      {Field::Num, "n_c", 9.0, 1e-3, 64.0},
                      {Field::NumArray, "eps_over_chi_values", json::array({0.05, 0.1}),
                       1e-6, 0.999},
                      {Field::Num, "nbar", 0.0, 0.0, 10.0},
                      {Field::Num, "kappa_per_s", 1e6, 1e-3, 1e12},
                      {Field::Num, "ode_tol", 1e-9, 1e-13, 1e-4},
                      {Field::Int, "cavity_dim", 0, 0, 1600},
                  },
                  &run_steady_coherence});

  defs.push_back({"decay-envelope",
                  "Worst-case post-reset coherence loss 1-|F01| vs cavity occupation "
                  "and photons removed by the detector",
                  "supplement (post-reset decay figure)",
                  {
                      {Field::Num, "occupation_min", 0.5, 1e-3, 64.0},
                      {Field::Num, "occupation_max", 9.0, 1e-3, 64.0},
                      {Field::Int, "n_occupations", 18, 1, 1000},
                      {Field::IntArray, "photons_removed", json::array({1, 2, 3}), 1, 10},
                  },
                  &run_decay_envelope});

  defs.push_back({"jc-occupation",
                  "Driven cavity occupation per parity band under the full "
                  "Jaynes-Cummings coupling",
                  "supplement (JC drive figure)",
                  {
                      {Field::Int, "n_qubits", 4, 2, 4},
                      {Field::Num, "chi_hz", 5e6, 1.0, 1e12},
                      {Field::Num, "detuning_hz", 1e9, 1e6, 1e12},
                      {Field::Num, "alpha_o_sq", 9.0, 0.0, 64.0},
                      {Field::Int, "cavity_dim", 40, 8, 200},
                      {Field::Num, "t_max_over_t_d", 1.0, 1e-3, 4.0},
                      {Field::Int, "n_time", 26, 2, 10001},
                      {Field::Num, "ode_tol", 1e-12, 1e-14, 1e-6},
                  },
                  &run_jc_occupation});

  defs.push_back({"jc-contrast",
                  "Measurement contrast with the worst-case even-band residual "
                  "occupation under Jaynes-Cummings coupling",
                  "supplement (JC contrast figure)",
                  {
                      {Field::Int, "n_qubits", 4, 2, 4},
                      {Field::Num, "chi_hz", 5e6, 1.0, 1e12},
                      {Field::Num, "detuning_hz", 1e9, 1e6, 1e12},
                      {Field::Num, "alpha_o_sq", 9.0, 0.0, 64.0},
                      {Field::Int, "cavity_dim", 40, 8, 200},
                      {Field::Int, "bright_cavity_dim", 30, 4, 64},
                      {Field::Num, "g_j_hz", 5e7, 0.0, 1e12},
                      {Field::Num, "gamma_j_per_s", 2e8, 0.0, 1e15},
                      {Field::Num, "gamma_r_per_s", 2e8, 0.0, 1e15},
                      {Field::Num, "gamma_d_per_s", 1e6, 0.0, 1e15},
                      {Field::Num, "t_max_s", 4e-8, 1e-12, 1.0},
                      {Field::Int, "n_time", 21, 2, 10001},
                      {Field::Num, "ode_tol", 1e-9, 1e-13, 1e-4},
                      {Field::Num, "drive_tol", 1e-12, 1e-14, 1e-6},
                  },
                  &run_jc_contrast});

  return defs;
}

const std::vector<ScenarioDef>& defs() {
  static const std::vector<ScenarioDef> d = build_defs();
  return d;
}

const ScenarioDef* find_def(const std::string& name) {
  for (const auto& d : defs())
    if (d.name == name) return &d;
  return nullptr;
}

}  // namespace

const std::vector<ScenarioInfo>& catalog() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> out;
    for (const auto& d : defs()) {
      ScenarioInfo info;
      info.name = d.name;
      info.description = d.description;
      info.figure = d.figure;
      info.default_config = {{"schema_version", kSchemaVersion},
                             {"scenario", d.name},
                             {"convention", "f"},
                             {"params", effective_params(d, json::object())}};
      out.push_back(std::move(info));
    }
    return out;
  }();
  return infos;
}

nlohmann::json catalog_json() {
  json out = json::array();
  for (const auto& info : catalog())
    out.push_back({{"name", info.name},
                   {"description", info.description},
                   {"figure", info.figure},
                   {"default_config", info.default_config}});
  return out;
}

std::vector<Issue> validate_config(const json& config) {
  std::vector<Issue> issues;
  if (!config.is_object()) {
    issues.push_back({"", "config must be a JSON object"});
    return issues;
  }
  if (!config.contains("schema_version") ||
      !config.at("schema_version").is_number_integer() ||
      config.at("schema_version").get<int>() != kSchemaVersion)
    issues.push_back({"schema_version", "must be the integer 1"});
  if (!config.contains("convention") || !config.at("convention").is_string() ||
      config.at("convention").get<std::string>() != "f")
    issues.push_back({"convention", "must be the string \"f\" (frequencies in Hz)"});

  const ScenarioDef* def = nullptr;
  if (!config.contains("scenario") || !config.at("scenario").is_string()) {
    issues.push_back({"scenario", "missing scenario name"});
  } else {
    def = find_def(config.at("scenario").get<std::string>());
    if (!def) {
      std::string names;
      for (const auto& d : defs()) names += (names.empty() ? "" : ", ") + d.name;
      issues.push_back({"scenario", "unknown scenario; valid names: " + names});
    }
  }

  for (const auto& [key, value] : config.items()) {
    if (key != "schema_version" && key != "scenario" && key != "convention" &&
        key != "params")
      issues.push_back({key, "unknown top-level key"});
    (void)value;
  }

  if (def && config.contains("params")) {
    const json& params = config.at("params");
    if (!params.is_object()) {
      issues.push_back({"params", "must be an object"});
      return issues;
    }
    for (const auto& [key, value] : params.items()) {
      const Field* field = nullptr;
      for (const Field& f : def->fields)
        if (f.key == key) field = &f;
      if (!field) {
        issues.push_back({"params." + key, "unknown parameter"});
        continue;
      }
      check_field(*field, value, "params." + key, issues);
    }
  }
  return issues;
}

ScenarioResult run_scenario(const json& config) {
  const auto issues = validate_config(config);
  if (!issues.empty()) {
    std::string msg = "invalid config:";
    for (const auto& issue : issues)
      msg += "\n  " + (issue.path.empty() ? std::string("<root>") : issue.path) + ": " +
             issue.message;
    throw ConfigError(msg);
  }
  const ScenarioDef* def = find_def(config.at("scenario").get<std::string>());
  const json params = effective_params(*def, config);

  ScenarioResult result = def->run(params);
  result.name = def->name;

  ScenarioResult with_header;
  with_header.name = def->name;
  common_metadata(with_header, *def, params);
  for (auto& line : result.metadata) with_header.metadata.push_back(std::move(line));
  with_header.columns = std::move(result.columns);
  with_header.rows = std::move(result.rows);
  return with_header;
}

std::string to_csv(const ScenarioResult& result) {
  std::ostringstream out;
  for (const auto& line : result.metadata) out << "# " << line << "\n";
  for (std::size_t c = 0; c < result.columns.size(); ++c)
    out << result.columns[c] << (c + 1 < result.columns.size() ? "," : "");
  out << "\n";
  char buf[48];
  for (const auto& row : result.rows) {
    if (row.size() != result.columns.size())
      throw std::runtime_error("to_csv: ragged row");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row[c]))
        throw std::runtime_error("to_csv: non-finite value in column " + result.columns[c]);
      std::snprintf(buf, sizeof(buf), "%.17g", row[c]);
      out << buf << (c + 1 < row.size() ? "," : "");
    }
    out << "\n";
  }
  return out.str();
}

void write_csv(const ScenarioResult& result, const std::string& path) {
  const std::string csv = to_csv(result);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("write_csv: cannot open " + path);
  file << csv;
  if (!file) throw std::runtime_error("write_csv: write failed for " + path);
}

}  // namespace parity::scenario
