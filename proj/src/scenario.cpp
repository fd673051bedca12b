#include "cvt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <cstdint>
#include <fmt/format.h>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cvt/metrics.hpp"
#include "cvt/noise.hpp"
#include "cvt/phase_space.hpp"
#include "cvt/toml.hpp"
#include "json.hpp"

namespace cvt::scenario {

Engine engine_from_string(const std::string& name) {
  if (name == "analytic") return Engine::analytic;
  if (name == "grid") return Engine::grid;
  if (name == "both") return Engine::both;
  throw ConfigError(fmt::format(
      "engine must be one of analytic|grid|both, got \"{}\"", name));
}

std::string to_string(Engine engine) {
  switch (engine) {
    case Engine::analytic: return "analytic";
    case Engine::grid: return "grid";
    case Engine::both: return "both";
  }
  return "analytic";
}

namespace {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return fmt::format("{:016x}", h);
}

std::filesystem::path resolve_existing(const std::filesystem::path& base_dir,
                                       const std::string& rel,
                                       const std::string& field) {
  std::filesystem::path p(rel);
  if (p.is_relative()) p = base_dir / p;
  if (!std::filesystem::exists(p))
    throw ConfigError(
        fmt::format("{}: referenced file {} does not exist", field, p.string()));
  return p;
}

GridSpec grid_from_doc(const toml::Document& doc) {
  GridSpec g = default_grid_spec();
  const double x_min = doc.get_double("grid.x_min").value_or(g.x_min);
  const double x_max = doc.get_double("grid.x_max").value_or(g.x_max);
  const double p_min = doc.get_double("grid.p_min").value_or(g.p_min);
  const double p_max = doc.get_double("grid.p_max").value_or(g.p_max);
  auto count = [&](const char* key, std::size_t fallback) {
    if (const auto v = doc.get_int(key)) {
      if (*v < 64) throw ConfigError(fmt::format("{} must be >= 64", key));
      return static_cast<std::size_t>(*v);
    }
    return fallback;
  };
  try {
    return GridSpec(x_min, x_max, p_min, p_max, count("grid.n_x", g.n_x),
                    count("grid.n_p", g.n_p));
  } catch (const InvalidParameter& e) {
    throw ConfigError(fmt::format("grid: {}", e.what()));
  }
}

multimode::ModeFunction mode_from_doc(const toml::Document& doc,
                                      const std::filesystem::path& base_dir) {
  if (const auto csv = doc.get_string("teleporter.mode_function.csv"))
    return multimode::read_mode_csv(
        resolve_existing(base_dir, *csv, "teleporter.mode_function.csv"));
  const auto gamma = doc.get_double("teleporter.mode_function.gamma");
  if (!gamma)
    throw ConfigError(
        "teleporter.mode_function needs either csv or gamma (Lorentzian)");
  const double half_span =
      doc.get_double("teleporter.mode_function.half_span").value_or(20.0 * *gamma);
  const auto points = static_cast<std::size_t>(
      doc.get_int("teleporter.mode_function.points").value_or(4001));
  return multimode::lorentzian_mode(*gamma, multimode::uniform_grid(half_span, points));
}

BroadbandTeleporter broadband_from_doc(const toml::Document& doc,
                                       const std::filesystem::path& base_dir) {
  BroadbandTeleporter bb{mode_from_doc(doc, base_dir),
                         multimode::SqueezingSpectrum{}, std::nullopt,
                         std::nullopt};

  if (const auto csv = doc.get_string("teleporter.squeezing_spectrum.csv")) {
    auto raw = multimode::read_squeezing_csv(
        resolve_existing(base_dir, *csv, "teleporter.squeezing_spectrum.csv"));
    bb.spectrum = multimode::resample(raw, bb.mode.omega);
  } else {
    const auto x_pump = doc.get_double("teleporter.squeezing_spectrum.x_pump");
    const auto kappa = doc.get_double("teleporter.squeezing_spectrum.kappa_cav");
    if (!x_pump || !kappa)
      throw ConfigError(
          "teleporter.squeezing_spectrum needs either csv or x_pump + kappa_cav");
    try {
      bb.spectrum = multimode::opo_squeezing_spectrum(*x_pump, *kappa, bb.mode.omega);
    } catch (const Error& e) {
      throw ConfigError(fmt::format("teleporter.squeezing_spectrum: {}", e.what()));
    }
  }

  if (const auto csv = doc.get_string("teleporter.noise_spectrum.csv")) {
    auto [omega, vals] = multimode::read_real_csv(
        resolve_existing(base_dir, *csv, "teleporter.noise_spectrum.csv"));
    // explicit linear resample onto the mode grid; outside samples read as 0
    std::vector<double> on_grid(bb.mode.omega.size(), 0.0);
    for (std::size_t i = 0; i < bb.mode.omega.size(); ++i) {
      const double w = bb.mode.omega[i];
      if (w < omega.front() || w > omega.back()) continue;
      std::size_t k = 0;
      while (k + 2 < omega.size() && omega[k + 1] < w) ++k;
      const double t = (w - omega[k]) / (omega[k + 1] - omega[k]);
      on_grid[i] = vals[k] + t * (vals[k + 1] - vals[k]);
    }
    bb.noise_spectrum = std::move(on_grid);
  }

  if (const auto csv = doc.get_string("teleporter.transfer.csv")) {
    auto raw = multimode::read_transfer_csv(
        resolve_existing(base_dir, *csv, "teleporter.transfer.csv"));
    bb.transfer = multimode::resample(raw, bb.mode.omega);
  } else if (const auto dt = doc.get_double("teleporter.transfer.delay_dt")) {
    bb.transfer = multimode::TransferFunction::pure_delay(bb.mode.omega, *dt);
  } else if (const auto wc = doc.get_double("teleporter.transfer.low_pass_omega_c")) {
    bb.transfer = multimode::TransferFunction::low_pass(bb.mode.omega, *wc);
  }
  return bb;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_toml(const std::string& text,
                                         const std::filesystem::path& base_dir) {
  const toml::Document doc = toml::parse(text);

  ScenarioConfig cfg;
  try {
    cfg.input_state = InputStateParams(
        doc.at("input_state.s").as_double(), doc.at("input_state.eta").as_double(),
        doc.get_double("input_state.epsilon").value_or(0.0));
  } catch (const InvalidParameter& e) {
    throw ConfigError(fmt::format("input_state: {}", e.what()));
  }

  const bool has_scalar_r = doc.contains("teleporter.r");
  const bool has_broadband = doc.contains("teleporter.mode_function.csv") ||
                             doc.contains("teleporter.mode_function.gamma");
  if (has_scalar_r == has_broadband)
    throw ConfigError(
        "teleporter: exactly one flavor required (scalar r, or mode_function "
        "+ squeezing_spectrum)");

  if (has_scalar_r) {
    ScalarTeleporter st;
    const toml::Value& rv = doc.at("teleporter.r");
    if (rv.is_string()) {
      if (rv.as_string() != "infinite")
        throw ConfigError(fmt::format(
            "teleporter.r: the only string form is \"infinite\", got \"{}\"",
            rv.as_string()));
      st.r = std::numeric_limits<double>::infinity();
    } else {
      st.r = rv.as_double();
    }
    if (!(st.r >= 0.0))
      throw ConfigError(fmt::format("teleporter.r must be >= 0, got {}", st.r));
    st.noise = doc.get_double("teleporter.noise").value_or(0.0);
    if (!(st.noise >= 0.0) || !std::isfinite(st.noise))
      throw ConfigError(fmt::format("teleporter.noise must be finite and >= 0, got {}",
                                    st.noise));
    cfg.teleporter = st;
  } else {
    cfg.teleporter = broadband_from_doc(doc, base_dir);
  }

  if (const auto e = doc.get_string("engine.engine"))
    cfg.engine = engine_from_string(*e);
  cfg.grid = grid_from_doc(doc);

  if (doc.contains("outputs.artifacts")) {
    for (const auto& v : doc.at("outputs.artifacts").as_array())
      cfg.artifacts.push_back(v.as_string());
    for (const auto& a : cfg.artifacts)
      if (a != "report" && a != "wigner_csv" && a != "wigner_bin")
        throw ConfigError(fmt::format("outputs.artifacts: unknown artifact \"{}\"", a));
  }
  if (const auto p = doc.get_string("outputs.wigner_path"))
    cfg.wigner_path = base_dir / *p;

  cfg.config_hash = fnv1a_hex(text);
  return cfg;
}

ScenarioConfig ScenarioConfig::from_toml_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(fmt::format("cannot open config file {}", path.string()));
  std::ostringstream ss;
  ss << is.rdbuf();
  return from_toml(ss.str(), path.parent_path());
}

ScenarioConfig backtest_config(Engine engine) {
  ScenarioConfig cfg;
  cfg.input_state = InputStateParams(0.28, 0.80, 0.013);
  cfg.teleporter = ScalarTeleporter{0.795, 0.0};
  cfg.engine = engine;
  cfg.config_hash = fnv1a_hex("backtest: s=0.28 eta=0.80 epsilon=0.013 r_eff=0.795");
  return cfg;
}

ChannelReduction reduce_teleporter(const ScenarioConfig& config) {
  ChannelReduction red;
  if (const auto* st = std::get_if<ScalarTeleporter>(&config.teleporter)) {
    red.r_eff = st->r;
    if (st->noise > 0.0) {
      red.n_eff = st->noise;
      red.r_prime = noise::noisy_r(st->r, noise::NoiseLevel(st->noise));
    } else {
      red.r_prime = st->r;
    }
    return red;
  }
  const auto& bb = std::get<BroadbandTeleporter>(config.teleporter);
  red.r_eff = multimode::effective_epr(bb.mode, bb.spectrum);
  red.r_prime = red.r_eff;
  if (bb.noise_spectrum) {
    red.n_eff = multimode::effective_noise(bb.mode, *bb.noise_spectrum);
    red.r_prime = noise::noisy_r_eff(red.r_eff, *red.n_eff);
  }
  if (bb.transfer) {
    red.gain = multimode::gain_moments(bb.mode, *bb.transfer, bb.spectrum, red.r_eff);
    red.modal_transmission =
        multimode::output_mode_function(bb.mode, *bb.transfer).modal_transmission;
  }
  return red;
}

namespace {

/// mix -> loss -> teleport on the grid; returns (input origin, output origin).
std::pair<double, double> grid_pipeline(const InputStateParams& params, double r,
                                        const GridSpec& spec) {
  WignerGrid state = phase::wigner_reference(params.s, spec);
  if (params.epsilon > 0.0)
    state = phase::mix(state, phase::wigner_squeezed_vacuum(params.s, spec),
                       params.epsilon);
  const WignerGrid in = phase::apply_loss(state, params.eta);
  const WignerGrid out = phase::teleport(in, r);
  return {phase::origin_value(in), phase::origin_value(out)};
}

void maybe_dump_wigner(const ScenarioConfig& config) {
  const bool want_csv =
      std::find(config.artifacts.begin(), config.artifacts.end(), "wigner_csv") !=
      config.artifacts.end();
  const bool want_bin =
      std::find(config.artifacts.begin(), config.artifacts.end(), "wigner_bin") !=
      config.artifacts.end();
  if (!want_csv && !want_bin) return;
  if (!config.wigner_path)
    throw ConfigError("outputs.wigner_path required for wigner artifacts");
  const ChannelReduction red = reduce_teleporter(config);
  const WignerGrid out =
      phase::model_output_state(config.input_state, red.r_prime, config.grid);
  if (want_csv) write_csv(out, *config.wigner_path);
  if (want_bin) write_binary(out, *config.wigner_path);
}

}  // namespace

ScenarioReport run_scenario(const ScenarioConfig& config) {
  const ChannelReduction red = reduce_teleporter(config);

  ScenarioReport rep;
  rep.r_eff = red.r_eff;
  rep.n_eff = red.n_eff;
  rep.r_prime = red.r_prime;
  rep.gain = red.gain;
  rep.modal_transmission = red.modal_transmission;
  rep.config_hash = config.config_hash;

  try {
    rep.threshold_r = analytic::threshold_r(config.input_state.eta,
                                            config.input_state.s,
                                            config.input_state.epsilon);
  } catch (const NoThresholdError&) {
    rep.threshold_r = std::nullopt;
  }

  const double in_analytic = analytic::input_negativity(config.input_state);
  const double out_analytic = analytic::output_negativity(config.input_state, red.r_prime);

  if (config.engine == Engine::analytic) {
    rep.input_negativity = in_analytic;
    rep.output_negativity = out_analytic;
  } else {
    const auto [in_grid, out_grid] =
        grid_pipeline(config.input_state, red.r_prime, config.grid);
    if (config.engine == Engine::grid) {
      rep.input_negativity = in_grid;
      rep.output_negativity = out_grid;
    } else {
      rep.input_negativity = in_analytic;
      rep.output_negativity = out_analytic;
      rep.engine_discrepancy = std::fabs(out_analytic - out_grid);
    }
  }

  rep.fidelity_paper =
      metrics::vacuum_fidelity(red.r_prime, metrics::FidelityConvention::paper);
  rep.fidelity_amplitude =
      metrics::vacuum_fidelity(red.r_prime, metrics::FidelityConvention::amplitude);

  maybe_dump_wigner(config);
  return rep;
}

std::string ScenarioReport::to_json() const {
  nlohmann::ordered_json j;
  j["input_negativity"] = input_negativity;
  j["output_negativity"] = output_negativity;
  if (threshold_r)
    j["threshold_r"] = *threshold_r;
  else
    j["threshold_r"] = nullptr;
  j["r_eff"] = std::isfinite(r_eff) ? nlohmann::ordered_json(r_eff)
                                    : nlohmann::ordered_json("infinite");
  if (n_eff) j["n_eff"] = *n_eff;
  j["r_prime"] = std::isfinite(r_prime) ? nlohmann::ordered_json(r_prime)
                                        : nlohmann::ordered_json("infinite");
  j["fidelities"] = {{"paper", fidelity_paper}, {"amplitude", fidelity_amplitude}};
  if (engine_discrepancy) j["engine_discrepancy"] = *engine_discrepancy;
  if (gain) {
    j["gain_moments"] = {{"g_plus", {gain->g_plus.real(), gain->g_plus.imag()}},
                         {"g_minus", {gain->g_minus.real(), gain->g_minus.imag()}}};
  }
  if (modal_transmission) j["modal_transmission"] = *modal_transmission;
  j["provenance"] = {{"config_hash", config_hash}, {"version", version}};
  return j.dump(2);
}

namespace {

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt_double(*v) : std::string();
}

}  // namespace

std::string ScenarioReport::to_csv() const {
  std::string head =
      "input_negativity,output_negativity,threshold_r,r_eff,n_eff,r_prime,"
      "fidelity_paper,fidelity_amplitude,engine_discrepancy,config_hash,version\n";
  std::string row = fmt_double(input_negativity) + "," + fmt_double(output_negativity) +
                    "," + fmt_opt(threshold_r) + "," + fmt_double(r_eff) + "," +
                    fmt_opt(n_eff) + "," + fmt_double(r_prime) + "," +
                    fmt_double(fidelity_paper) + "," + fmt_double(fidelity_amplitude) +
                    "," + fmt_opt(engine_discrepancy) + "," + config_hash + "," +
                    version + "\n";
  return head + row;
}

void Dataset::write_csv(std::ostream& os) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    os << columns[c] << (c + 1 < columns.size() ? ',' : '\n');
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c]) os << fmt_double(*row[c]);
      os << (c + 1 < row.size() ? ',' : '\n');
    }
  }
}

AxisSpec parse_axis(const std::string& name_eq_range) {
  const auto eq = name_eq_range.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError(fmt::format(
        "axis must look like name=a:b:n or name=v1,v2,..., got \"{}\"",
        name_eq_range));
  AxisSpec axis;
  axis.name = name_eq_range.substr(0, eq);
  const std::string rhs = name_eq_range.substr(eq + 1);
  if (rhs.find(':') != std::string::npos) {
    double a, b;
    long n;
    if (std::sscanf(rhs.c_str(), "%lg:%lg:%ld", &a, &b, &n) != 3 || n < 1)
      throw ConfigError(fmt::format("bad axis range \"{}\"", rhs));
    axis.values.resize(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
      axis.values[static_cast<std::size_t>(i)] =
          n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  } else {
    std::stringstream ss(rhs);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      double v;
      if (std::sscanf(tok.c_str(), "%lg", &v) != 1)
        throw ConfigError(fmt::format("bad axis value \"{}\"", tok));
      axis.values.push_back(v);
    }
    if (axis.values.empty())
      throw ConfigError(fmt::format("axis \"{}\" holds no values", axis.name));
  }
  return axis;
}

}  // namespace cvt::scenario
