#include "cvt/grid.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cvt/kernels.hpp"

namespace cvt {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_count(std::size_t n, const char* name) {
  if (n < 64 || !is_pow2(n))
    throw InvalidParameter(
        fmt::format("{} must be a power of two >= 64, got {}", name, n));
}

}  // namespace

GridSpec::GridSpec(double x_min_, double x_max_, double p_min_, double p_max_,
                   std::size_t n_x_, std::size_t n_p_)
    : x_min(x_min_), x_max(x_max_), p_min(p_min_), p_max(p_max_), n_x(n_x_), n_p(n_p_) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(p_min) ||
      !std::isfinite(p_max))
    throw InvalidParameter("grid extents must be finite");
  if (!(x_min < x_max) || !(p_min < p_max))
    throw InvalidParameter(fmt::format(
        "grid extents must be ordered: x [{}, {}), p [{}, {})", x_min, x_max, p_min, p_max));
  check_count(n_x, "n_x");
  check_count(n_p, "n_p");
}

GridSpec default_grid_spec(std::size_t n) { return GridSpec(-6.0, 6.0, -6.0, 6.0, n, n); }

GridSpec default_grid_spec() {
  std::size_t n = 512;
  if (const char* env = std::getenv("CVT_DEFAULT_GRID")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 64 || !is_pow2(static_cast<std::size_t>(v)))
      throw InvalidParameter(fmt::format(
          "CVT_DEFAULT_GRID must be a power of two >= 64, got \"{}\"", env));
    n = static_cast<std::size_t>(v);
  }
  return default_grid_spec(n);
}

WignerGrid::WignerGrid(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.size())
    throw InvalidParameter(fmt::format("value count {} does not match grid {}x{}",
                                       values_.size(), spec_.n_x, spec_.n_p));
}

double WignerGrid::integral() const {
  return kernels::sum(values_) * spec_.dx() * spec_.dp();
}

double WignerGrid::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

CharacteristicGrid::CharacteristicGrid(GridSpec spec,
                                       std::vector<std::complex<double>> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.size())
    throw InvalidParameter(fmt::format("value count {} does not match grid {}x{}",
                                       values_.size(), spec_.n_x, spec_.n_p));
}

// -- CSV ------------------------------------------------------------------

void write_csv(const WignerGrid& w, std::ostream& os) {
  os << "x,p,w\n";
  const GridSpec& g = w.spec();
  char buf[96];
  for (std::size_t i = 0; i < g.n_x; ++i) {
    for (std::size_t j = 0; j < g.n_p; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.x(i), g.p(j),
                    w.at(i, j));
      os << buf;
    }
  }
}

WignerGrid read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,p,w", 0) != 0)
    throw InvalidParameter("Wigner CSV must start with header \"x,p,w\"");
  std::vector<double> xs, ps, vals;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double x, p, v;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &x, &p, &v) != 3)
      throw InvalidParameter(fmt::format("bad Wigner CSV row: \"{}\"", line));
    xs.push_back(x);
    ps.push_back(p);
    vals.push_back(v);
  }
  if (vals.empty()) throw InvalidParameter("Wigner CSV holds no samples");
  // row-major: p cycles fastest; count the first period to get n_p
  std::size_t n_p = 1;
  while (n_p < ps.size() && ps[n_p] != ps[0]) ++n_p;
  if (ps.size() % n_p != 0)
    throw InvalidParameter("Wigner CSV rows do not form a rectangular grid");
  const std::size_t n_x = ps.size() / n_p;
  const double dx = n_x > 1 ? (xs[(n_x - 1) * n_p] - xs[0]) / static_cast<double>(n_x - 1)
                            : 1.0;
  const double dp = n_p > 1 ? (ps[n_p - 1] - ps[0]) / static_cast<double>(n_p - 1) : 1.0;
  GridSpec spec(xs[0], xs[0] + dx * static_cast<double>(n_x), ps[0],
                ps[0] + dp * static_cast<double>(n_p), n_x, n_p);
  return WignerGrid(spec, std::move(vals));
}

// -- binary (little-endian) -------------------------------------------------

namespace {

std::uint64_t byteswap64(std::uint64_t v) {
  v = (v >> 32) | (v << 32);
  v = ((v & 0xffff0000ffff0000ull) >> 16) | ((v & 0x0000ffff0000ffffull) << 16);
  return ((v & 0xff00ff00ff00ff00ull) >> 8) | ((v & 0x00ff00ff00ff00ffull) << 8);
}

void put_f64(std::ostream& os, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  if constexpr (std::endian::native == std::endian::big) bits = byteswap64(bits);
  char raw[8];
  std::memcpy(raw, &bits, 8);
  os.write(raw, 8);
}

double get_f64(std::istream& is) {
  char raw[8];
  is.read(raw, 8);
  if (!is) throw InvalidParameter("truncated Wigner binary stream");
  std::uint64_t bits;
  std::memcpy(&bits, raw, 8);
  if constexpr (std::endian::native == std::endian::big) bits = byteswap64(bits);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_binary(const WignerGrid& w, std::ostream& os) {
  const GridSpec& g = w.spec();
  put_f64(os, g.x_min);
  put_f64(os, g.x_max);
  put_f64(os, static_cast<double>(g.n_x));
  put_f64(os, g.p_min);
  put_f64(os, g.p_max);
  put_f64(os, static_cast<double>(g.n_p));
  for (double v : w.values()) put_f64(os, v);
}

WignerGrid read_binary(std::istream& is) {
  const double x_min = get_f64(is);
  const double x_max = get_f64(is);
  const double n_x = get_f64(is);
  const double p_min = get_f64(is);
  const double p_max = get_f64(is);
  const double n_p = get_f64(is);
  if (!(n_x > 0 && n_p > 0) || n_x != std::floor(n_x) || n_p != std::floor(n_p))
    throw InvalidParameter("Wigner binary header carries non-integral counts");
  GridSpec spec(x_min, x_max, p_min, p_max, static_cast<std::size_t>(n_x),
                static_cast<std::size_t>(n_p));
  std::vector<double> vals(spec.size());
  for (double& v : vals) v = get_f64(is);
  return WignerGrid(spec, std::move(vals));
}

namespace {

template <class Fn>
void with_ofstream(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidParameter(fmt::format("cannot open {} for writing", path.string()));
  fn(os);
}

template <class Fn>
auto with_ifstream(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidParameter(fmt::format("cannot open {} for reading", path.string()));
  return fn(is);
}

}  // namespace

void write_csv(const WignerGrid& w, const std::filesystem::path& path) {
  with_ofstream(path, [&](std::ostream& os) { write_csv(w, os); });
}

WignerGrid read_csv(const std::filesystem::path& path) {
  return with_ifstream(path, [](std::istream& is) { return read_csv(is); });
}

void write_binary(const WignerGrid& w, const std::filesystem::path& path) {
  with_ofstream(path, [&](std::ostream& os) { write_binary(w, os); });
}

WignerGrid read_binary(const std::filesystem::path& path) {
  return with_ifstream(path, [](std::istream& is) { return read_binary(is); });
}

}  // namespace cvt
