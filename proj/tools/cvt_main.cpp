// Command-line front end: scenario runs, figure data, parameter sweeps, and
// the pinned experimental back-test.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cvt/errors.hpp"
#include "cvt/scenario.hpp"

namespace {

namespace sc = cvt::scenario;

struct CommonOpts {
  std::string engine;
  long grid_size = 0;
  std::string out_path;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_format = true) {
  cmd->add_option("--engine", opts.engine, "analytic|grid|both");
  cmd->add_option("--grid-size", opts.grid_size,
                  "per-axis sample count for the grid engine (power of two >= 64)");
  cmd->add_option("--out", opts.out_path, "write output to this file instead of stdout");
  if (with_format) cmd->add_option("--format", opts.format, "csv|json");
}

void apply_common(sc::ScenarioConfig& cfg, const CommonOpts& opts) {
  if (!opts.engine.empty()) cfg.engine = sc::engine_from_string(opts.engine);
  if (opts.grid_size > 0) {
    const auto n = static_cast<std::size_t>(opts.grid_size);
    cfg.grid = cvt::GridSpec(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.p_min,
                             cfg.grid.p_max, n, n);
  }
}

sc::OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return sc::OutputFormat::csv;
  if (name == "json") return sc::OutputFormat::json;
  throw cvt::ConfigError("format must be csv or json, got \"" + name + "\"");
}

/// Writes to the chosen sink and reports the path when one was given.
void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw cvt::ConfigError("cannot open output file " + out_path);
  os << text;
  std::cerr << "wrote " << out_path << "\n";
}

std::string report_text(const sc::ScenarioReport& rep, const std::string& format) {
  return parse_format(format) == sc::OutputFormat::json ? rep.to_json() + "\n"
                                                        : rep.to_csv();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous-variable teleportation calculator"};
  app.require_subcommand(1);

  // scenario run <file>
  auto* scenario_cmd = app.add_subcommand("scenario", "run a scenario file");
  auto* run_cmd = scenario_cmd->add_subcommand("run", "run one scenario");
  std::string scenario_path;
  run_cmd->add_option("file", scenario_path, "TOML scenario file")->required();
  CommonOpts run_opts;
  add_common(run_cmd, run_opts);

  // figure <name>
  auto* figure_cmd = app.add_subcommand("figure", "emit figure data as CSV");
  std::string figure_name;
  figure_cmd->add_option("name", figure_name, "figure name")->required();
  std::vector<std::string> ranges;
  figure_cmd->add_option("--range", ranges, "axis override, name=a:b:n or name=v1,v2,...");
  bool svg = false;
  figure_cmd->add_flag("--svg", svg, "render an SVG next to the CSV data");
  std::string svg_column;
  figure_cmd->add_option("--svg-column", svg_column,
                         "dataset column plotted in the SVG (default: last)");
  CommonOpts figure_opts;
  add_common(figure_cmd, figure_opts, /*with_format=*/false);

  // sweep <file> --axis ...
  auto* sweep_cmd = app.add_subcommand("sweep", "Cartesian parameter sweep");
  std::string sweep_path;
  sweep_cmd->add_option("file", sweep_path, "TOML scenario template")->required();
  std::vector<std::string> axis_args;
  sweep_cmd->add_option("--axis", axis_args, "sweep axis, name=a:b:n or name=v1,v2,...")
      ->required();
  CommonOpts sweep_opts;
  sweep_opts.format = "csv";
  add_common(sweep_cmd, sweep_opts);

  // backtest
  auto* backtest_cmd = app.add_subcommand("backtest", "run the pinned back-test");
  CommonOpts backtest_opts;
  add_common(backtest_cmd, backtest_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed()) {
      sc::ScenarioConfig cfg = sc::ScenarioConfig::from_toml_file(scenario_path);
      apply_common(cfg, run_opts);
      emit(report_text(sc::run_scenario(cfg), run_opts.format), run_opts.out_path);
    } else if (figure_cmd->parsed()) {
      std::vector<sc::AxisSpec> overrides;
      for (const auto& r : ranges) overrides.push_back(sc::parse_axis(r));
      const sc::Dataset data = sc::figure(figure_name, overrides);
      std::ostringstream csv;
      data.write_csv(csv);
      emit(csv.str(), figure_opts.out_path);
      if (svg) {
        std::ostringstream s;
        sc::render_svg(data, svg_column.empty() ? data.columns.back() : svg_column, s);
        const std::string svg_path = figure_opts.out_path.empty()
                                         ? figure_name + ".svg"
                                         : figure_opts.out_path + ".svg";
        std::ofstream os(svg_path, std::ios::binary);
        if (!os) throw cvt::ConfigError("cannot open output file " + svg_path);
        os << s.str();
        std::cerr << "wrote " << svg_path << "\n";
      }
    } else if (sweep_cmd->parsed()) {
      sc::ScenarioConfig cfg = sc::ScenarioConfig::from_toml_file(sweep_path);
      apply_common(cfg, sweep_opts);
      std::vector<sc::AxisSpec> axes;
      for (const auto& a : axis_args) axes.push_back(sc::parse_axis(a));
      std::ostringstream os;
      sc::sweep(cfg, axes, os, parse_format(sweep_opts.format));
      emit(os.str(), sweep_opts.out_path);
    } else if (backtest_cmd->parsed()) {
      sc::ScenarioConfig cfg = sc::backtest_config();
      apply_common(cfg, backtest_opts);
      const sc::ScenarioReport rep = sc::run_scenario(cfg);
      emit(report_text(rep, backtest_opts.format), backtest_opts.out_path);
      std::cerr << "output negativity: " << rep.output_negativity << "\n";
    }
  } catch (const cvt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cvt::InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cvt::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
