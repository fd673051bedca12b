#pragma once

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cvt/analytic.hpp"
#include "cvt/grid.hpp"
#include "cvt/multimode.hpp"

// Scenario runner and figure-data generator: TOML scenario ingestion, the
// end-to-end back-test pipeline, parameter sweeps, and machine-readable
// (CSV/JSON) outputs. Identical configs produce byte-identical outputs.

namespace cvt::scenario {

inline constexpr const char* kVersion = "0.1.0";

enum class Engine { analytic, grid, both };

Engine engine_from_string(const std::string& name);
std::string to_string(Engine engine);

/// Scalar teleporter: an EPR parameter (+infinity = ideal channel) plus an
/// optional isotropic classical-noise amplitude.
struct ScalarTeleporter {
  double r = 0.0;
  double noise = 0.0;
};

/// Broadband teleporter: a wave-packet mode function and a squeezing
/// spectrum, optionally a classical-noise spectrum and a classical-channel
/// transfer function. Spectra come from CSV files or the built-in parametric
/// forms; everything is resampled onto the mode-function grid explicitly at
/// load time.
struct BroadbandTeleporter {
  multimode::ModeFunction mode;
  multimode::SqueezingSpectrum spectrum;
  std::optional<std::vector<double>> noise_spectrum;  // on mode.omega
  std::optional<multimode::TransferFunction> transfer;
};

struct ScenarioConfig {
  InputStateParams input_state{0.0, 1.0, 0.0};
  std::variant<ScalarTeleporter, BroadbandTeleporter> teleporter;
  Engine engine = Engine::analytic;
  GridSpec grid = default_grid_spec();
  std::vector<std::string> artifacts;  // "report" plus optional wigner dumps
  std::optional<std::filesystem::path> wigner_path;
  std::string config_hash = "0000000000000000";

  /// Parses and validates a TOML scenario; referenced CSV paths are resolved
  /// relative to the file and must exist. Throws ConfigError with the
  /// offending field in the message.
  static ScenarioConfig from_toml_file(const std::filesystem::path& path);
  static ScenarioConfig from_toml(const std::string& text,
                                  const std::filesystem::path& base_dir);
};

/// The pinned experimental back-test configuration
/// (s = 0.28, eta = 0.80, epsilon = 0.013, r = 0.795).
ScenarioConfig backtest_config(Engine engine = Engine::analytic);

/// Broadband channel reduced to scalars.
struct ChannelReduction {
  double r_eff = 0.0;
  std::optional<double> n_eff;
  double r_prime = 0.0;
  std::optional<multimode::GainMoments> gain;  // when a transfer is given
  std::optional<double> modal_transmission;
};

ChannelReduction reduce_teleporter(const ScenarioConfig& config);

struct ScenarioReport {
  double input_negativity = 0.0;
  double output_negativity = 0.0;
  std::optional<double> threshold_r;  // absent when no threshold exists
  double r_eff = 0.0;
  std::optional<double> n_eff;
  double r_prime = 0.0;
  double fidelity_paper = 0.0;
  double fidelity_amplitude = 0.0;
  std::optional<double> engine_discrepancy;  // only when engine = both
  std::optional<multimode::GainMoments> gain;
  std::optional<double> modal_transmission;
  std::string config_hash;
  std::string version = kVersion;

  std::string to_json() const;
  std::string to_csv() const;  // single data row with header
};

/// Executes the full prediction pipeline: input-state model, channel
/// reduction to (r_eff, n_eff, r'), negativity prediction by the requested
/// engine(s).
ScenarioReport run_scenario(const ScenarioConfig& config);

// -- figure datasets ----------------------------------------------------------

struct AxisSpec {
  std::string name;
  std::vector<double> values;
};

/// "a:b:n" linspace or "v1,v2,..." list.
AxisSpec parse_axis(const std::string& name_eq_range);

struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;

  void write_csv(std::ostream& os) const;
};

/// Curve/surface data underlying the named figure, generated from the
/// closed-form layer only. Known names: input-negativity, output-negativity,
/// threshold, mixed-input, mixed-threshold, noise-ratio.
Dataset figure(const std::string& name, const std::vector<AxisSpec>& overrides = {});

std::vector<std::string> figure_names();

/// Thin SVG polyline rendering of a dataset: first column is the abscissa,
/// `y_column` the ordinate, remaining numeric columns group the curves.
void render_svg(const Dataset& data, const std::string& y_column, std::ostream& os);

// -- sweeps ---------------------------------------------------------------------

enum class OutputFormat { csv, json };

/// Cartesian-product evaluation of the scenario over up to three axes
/// (s, eta, epsilon, r, noise), streamed in deterministic row-major order.
/// Budget: 1e6 points with the analytic engine, 1e3 with grid/both
/// (BudgetExceededError). Rows may be evaluated in parallel; output order is
/// the axis-product order regardless of completion order.
void sweep(const ScenarioConfig& config, const std::vector<AxisSpec>& axes,
           std::ostream& os, OutputFormat format = OutputFormat::csv);

}  // namespace cvt::scenario
