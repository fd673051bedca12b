#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "cvt/noise.hpp"
#include "cvt/scenario.hpp"
#include "json.hpp"

// Figure datasets (closed-form layer only) and the Cartesian sweep driver.

namespace cvt::scenario {

namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n == 1 ? a
                  : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

using Axes = std::map<std::string, std::vector<double>>;

Axes apply_overrides(Axes defaults, const std::vector<AxisSpec>& overrides,
                     const char* figure_name) {
  for (const auto& o : overrides) {
    if (!defaults.count(o.name))
      throw ConfigError(fmt::format("figure {} has no axis \"{}\"", figure_name, o.name));
    if (o.values.empty())
      throw ConfigError(fmt::format("axis \"{}\" holds no values", o.name));
    defaults[o.name] = o.values;
  }
  return defaults;
}

std::optional<double> try_threshold(double eta, double s, double epsilon) {
  try {
    return analytic::threshold_r(eta, s, epsilon);
  } catch (const NoThresholdError&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<std::string> figure_names() {
  return {"input-negativity", "output-negativity", "threshold",
          "mixed-input",      "mixed-threshold",   "noise-ratio"};
}

Dataset figure(const std::string& name, const std::vector<AxisSpec>& overrides) {
  Dataset d;

  if (name == "input-negativity") {
    const Axes ax = apply_overrides({{"eta", linspace(0.3, 1.0, 141)},
                                     {"s", {0.0, 0.28, 0.6}},
                                     {"epsilon", {0.0}}},
                                    overrides, name.c_str());
    d.columns = {"eta", "s", "epsilon", "w_in0"};
    for (double s : ax.at("s"))
      for (double eps : ax.at("epsilon"))
        for (double eta : ax.at("eta"))
          d.rows.push_back({eta, s, eps,
                            analytic::input_negativity(InputStateParams(s, eta, eps))});
    return d;
  }

  if (name == "output-negativity") {
    const Axes ax = apply_overrides({{"r", linspace(0.0, 2.5, 251)},
                                     {"eta", {0.7, 0.8, 1.0}},
                                     {"s", {0.0, 0.28, 0.6}},
                                     {"epsilon", {0.0}}},
                                    overrides, name.c_str());
    d.columns = {"r", "eta", "s", "epsilon", "w_out0"};
    for (double eta : ax.at("eta"))
      for (double s : ax.at("s"))
        for (double eps : ax.at("epsilon"))
          for (double r : ax.at("r"))
            d.rows.push_back(
                {r, eta, s, eps,
                 analytic::output_negativity(InputStateParams(s, eta, eps), r)});
    return d;
  }

  if (name == "threshold") {
    const Axes ax = apply_overrides({{"eta", linspace(0.505, 1.0, 100)}}, overrides,
                                    name.c_str());
    d.columns = {"eta", "r_threshold"};
    for (double eta : ax.at("eta"))
      d.rows.push_back({eta, try_threshold(eta, 0.0, 0.0)});
    return d;
  }

  if (name == "mixed-input") {
    const Axes ax = apply_overrides({{"eta", linspace(0.3, 1.0, 141)},
                                     {"s", {0.28, 0.6}},
                                     {"epsilon", {0.0, 0.013, 0.1}}},
                                    overrides, name.c_str());
    d.columns = {"eta", "s", "epsilon", "w_in0", "epsilon_star"};
    for (double s : ax.at("s"))
      for (double eps : ax.at("epsilon"))
        for (double eta : ax.at("eta"))
          d.rows.push_back({eta, s, eps,
                            analytic::input_negativity(InputStateParams(s, eta, eps)),
                            analytic::input_threshold_epsilon(eta, s)});
    return d;
  }

  if (name == "mixed-threshold") {
    const Axes ax = apply_overrides({{"eta", linspace(0.505, 1.0, 100)},
                                     {"s", {0.28, 0.6}},
                                     {"epsilon", {0.0, 0.013, 0.05}}},
                                    overrides, name.c_str());
    d.columns = {"eta", "s", "epsilon", "r_threshold"};
    for (double s : ax.at("s"))
      for (double eps : ax.at("epsilon"))
        for (double eta : ax.at("eta"))
          d.rows.push_back({eta, s, eps, try_threshold(eta, s, eps)});
    return d;
  }

  if (name == "noise-ratio") {
    const Axes ax = apply_overrides(
        {{"n", linspace(0.0, 1.0, 101)}, {"r", {0.35, 0.795, 2.0}}}, overrides,
        name.c_str());
    d.columns = {"n", "r", "r_prime", "ratio"};
    for (double r : ax.at("r"))
      for (double n : ax.at("n")) {
        const double rp = noise::noisy_r(r, noise::NoiseLevel(n));
        d.rows.push_back({n, r, rp, rp / r});
      }
    return d;
  }

  throw UnknownFigureError(fmt::format(
      "unknown figure \"{}\"; known: input-negativity, output-negativity, "
      "threshold, mixed-input, mixed-threshold, noise-ratio",
      name));
}

// -- SVG ------------------------------------------------------------------------

namespace {

constexpr const char* kPalette[] = {"#1b6ca8", "#c1403d", "#2e8540", "#8036a8",
                                    "#b8860b", "#13827b", "#708090", "#aa336a"};

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void render_svg(const Dataset& data, const std::string& y_column, std::ostream& os) {
  const auto yit = std::find(data.columns.begin(), data.columns.end(), y_column);
  if (yit == data.columns.end())
    throw ConfigError(fmt::format("dataset has no column \"{}\"", y_column));
  const std::size_t yc = static_cast<std::size_t>(yit - data.columns.begin());

  // Curves are grouped by the parameter columns: the ones that take few
  // distinct values across the dataset. Derived columns vary along a curve
  // and must not split it.
  std::vector<std::size_t> group_cols;
  for (std::size_t c = 1; c < data.columns.size(); ++c) {
    if (c == yc) continue;
    std::set<double> distinct;
    for (const auto& row : data.rows)
      if (row[c]) distinct.insert(*row[c]);
    if (2 * distinct.size() < data.rows.size() || data.rows.size() == 1)
      group_cols.push_back(c);
  }

  std::map<std::string, std::vector<std::pair<double, double>>> curves;
  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const auto& row : data.rows) {
    if (!row[0] || !row[yc]) continue;
    std::string key;
    for (std::size_t c : group_cols)
      key += data.columns[c] + "=" + (row[c] ? fmt_g(*row[c]) : "-") + " ";
    curves[key].emplace_back(*row[0], *row[yc]);
    x_lo = std::min(x_lo, *row[0]);
    x_hi = std::max(x_hi, *row[0]);
    y_lo = std::min(y_lo, *row[yc]);
    y_hi = std::max(y_hi, *row[yc]);
  }
  if (curves.empty()) throw ConfigError("dataset holds no plottable rows");
  if (y_lo == y_hi) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }

  const double W = 840, H = 560, ml = 70, mr = 20, mt = 20, mb = 50;
  auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - y_lo) / (y_hi - y_lo) * (H - mt - mb); };

  os << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      W, H);
  os << fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" "
      "stroke=\"#444\"/>\n",
      ml, mt, W - ml - mr, H - mt - mb);
  for (int i = 0; i <= 5; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / 5.0;
    const double fy = y_lo + (y_hi - y_lo) * i / 5.0;
    os << fmt::format(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", px(fx),
        H - mb + 18, fmt_g(fx));
    os << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n",
                      ml - 6, py(fy) + 4, fmt_g(fy));
  }
  if (y_lo < 0.0 && y_hi > 0.0)
    os << fmt::format(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999\" "
        "stroke-dasharray=\"4 3\"/>\n",
        ml, py(0.0), W - mr, py(0.0));
  os << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                    (ml + W - mr) / 2, H - 12, data.columns[0]);

  std::size_t ci = 0;
  double ly = mt + 16;
  for (auto& [key, pts] : curves) {
    std::sort(pts.begin(), pts.end());
    const char* color = kPalette[ci % (sizeof kPalette / sizeof *kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) os << fmt_g(px(x)) << ',' << fmt_g(py(y)) << ' ';
    os << "\"/>\n";
    os << fmt::format(
        "<text x=\"{}\" y=\"{}\" fill=\"{}\">{} {}</text>\n", ml + 10, ly, color,
        y_column, key);
    ly += 15;
    ++ci;
  }
  os << "</svg>\n";
}

// -- sweep ------------------------------------------------------------------------

namespace {

struct AxisTarget {
  enum Kind { s, eta, epsilon, r, noise_amp } kind;
};

AxisTarget::Kind axis_kind(const std::string& name) {
  if (name == "s" || name == "input_state.s") return AxisTarget::s;
  if (name == "eta" || name == "input_state.eta") return AxisTarget::eta;
  if (name == "epsilon" || name == "input_state.epsilon") return AxisTarget::epsilon;
  if (name == "r" || name == "teleporter.r") return AxisTarget::r;
  if (name == "noise" || name == "teleporter.noise") return AxisTarget::noise_amp;
  throw ConfigError(fmt::format(
      "unknown sweep axis \"{}\"; known: s, eta, epsilon, r, noise", name));
}

std::string report_row_csv(const std::vector<double>& coords,
                           const ScenarioReport& rep, bool with_discrepancy) {
  std::string row;
  char buf[40];
  for (double c : coords) {
    std::snprintf(buf, sizeof buf, "%.17g", c);
    row += buf;
    row += ',';
  }
  auto put = [&](double v, char sep) {
    if (std::isinf(v))
      row += v > 0 ? "inf" : "-inf";
    else {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      row += buf;
    }
    row += sep;
  };
  put(rep.input_negativity, ',');
  put(rep.output_negativity, ',');
  if (rep.threshold_r) {
    std::snprintf(buf, sizeof buf, "%.17g", *rep.threshold_r);
    row += buf;
  }
  row += ',';
  put(rep.r_eff, ',');
  put(rep.r_prime, ',');
  put(rep.fidelity_paper, ',');
  put(rep.fidelity_amplitude, with_discrepancy ? ',' : '\n');
  if (with_discrepancy) {
    put(rep.engine_discrepancy.value_or(0.0), '\n');
  }
  return row;
}

nlohmann::ordered_json report_row_json(const std::vector<std::string>& axis_names,
                                       const std::vector<double>& coords,
                                       const ScenarioReport& rep,
                                       bool with_discrepancy) {
  nlohmann::ordered_json j;
  for (std::size_t a = 0; a < axis_names.size(); ++a) j[axis_names[a]] = coords[a];
  j["input_negativity"] = rep.input_negativity;
  j["output_negativity"] = rep.output_negativity;
  if (rep.threshold_r)
    j["threshold_r"] = *rep.threshold_r;
  else
    j["threshold_r"] = nullptr;
  j["r_eff"] = rep.r_eff;
  j["r_prime"] = rep.r_prime;
  j["fidelity_paper"] = rep.fidelity_paper;
  j["fidelity_amplitude"] = rep.fidelity_amplitude;
  if (with_discrepancy) j["engine_discrepancy"] = rep.engine_discrepancy.value_or(0.0);
  return j;
}

}  // namespace

void sweep(const ScenarioConfig& config, const std::vector<AxisSpec>& axes,
           std::ostream& os, OutputFormat format) {
  if (axes.empty() || axes.size() > 3)
    throw ConfigError(fmt::format("sweep takes 1 to 3 axes, got {}", axes.size()));

  std::size_t total = 1;
  std::vector<AxisTarget::Kind> kinds;
  for (const auto& axis : axes) {
    kinds.push_back(axis_kind(axis.name));
    if (axis.values.empty())
      throw ConfigError(fmt::format("axis \"{}\" holds no values", axis.name));
    total *= axis.values.size();
  }
  const bool uses_grid = config.engine != Engine::analytic;
  const std::size_t budget = uses_grid ? 1000 : 1000000;
  if (total > budget)
    throw BudgetExceededError(
        fmt::format("sweep of {} points exceeds the {} budget of {}", total,
                    to_string(config.engine), budget));

  const bool scalar_channel =
      std::holds_alternative<ScalarTeleporter>(config.teleporter);
  for (const auto k : kinds)
    if ((k == AxisTarget::r || k == AxisTarget::noise_amp) && !scalar_channel)
      throw ConfigError(
          "sweeping r or noise requires a scalar teleporter configuration");

  const bool with_disc = config.engine == Engine::both;
  struct Row {
    std::vector<double> coords;
    ScenarioConfig cfg;
  };

  std::vector<std::string> axis_names;
  for (const auto& a : axes) axis_names.push_back(a.name);

  // pre-expand the Cartesian product (bounded by the budget above)
  std::vector<std::vector<double>> coord_list(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<double> coords(axes.size());
    std::size_t rem = flat;
    for (std::size_t a = axes.size(); a-- > 0;) {
      coords[a] = axes[a].values[rem % axes[a].values.size()];
      rem /= axes[a].values.size();
    }
    coord_list[flat] = std::move(coords);
  }

  std::vector<std::string> out_rows(total);
  std::vector<nlohmann::ordered_json> out_json(format == OutputFormat::json ? total : 0);
  std::exception_ptr first_error = nullptr;
  std::atomic<bool> failed{false};

#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t flat = 0; flat < static_cast<std::ptrdiff_t>(total); ++flat) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      ScenarioConfig cfg = config;
      const auto& coords = coord_list[static_cast<std::size_t>(flat)];
      double s = cfg.input_state.s, eta = cfg.input_state.eta,
             eps = cfg.input_state.epsilon;
      for (std::size_t a = 0; a < axes.size(); ++a) {
        switch (kinds[a]) {
          case AxisTarget::s: s = coords[a]; break;
          case AxisTarget::eta: eta = coords[a]; break;
          case AxisTarget::epsilon: eps = coords[a]; break;
          case AxisTarget::r:
            std::get<ScalarTeleporter>(cfg.teleporter).r = coords[a];
            break;
          case AxisTarget::noise_amp:
            std::get<ScalarTeleporter>(cfg.teleporter).noise = coords[a];
            break;
        }
      }
      cfg.input_state = InputStateParams(s, eta, eps);
      const ScenarioReport rep = run_scenario(cfg);
      if (format == OutputFormat::csv)
        out_rows[static_cast<std::size_t>(flat)] =
            report_row_csv(coords, rep, with_disc);
      else
        out_json[static_cast<std::size_t>(flat)] =
            report_row_json(axis_names, coords, rep, with_disc);
    } catch (...) {
#pragma omp critical
      {
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  if (format == OutputFormat::csv) {
    for (const auto& name : axis_names) os << name << ',';
    os << "input_negativity,output_negativity,threshold_r,r_eff,r_prime,"
          "fidelity_paper,fidelity_amplitude";
    if (with_disc) os << ",engine_discrepancy";
    os << '\n';
    for (const auto& row : out_rows) os << row;
  } else {
    os << "[\n";
    for (std::size_t i = 0; i < out_json.size(); ++i)
      os << out_json[i].dump(2) << (i + 1 < out_json.size() ? ",\n" : "\n");
    os << "]\n";
  }
}

}  // namespace cvt::scenario
