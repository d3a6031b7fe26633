#include "carma/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "carma/error.hpp"
#include "json.hpp"

namespace carma {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string omega_tag(double omega) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, omega);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      std::visit(Overloaded{[](std::monostate) {},
                            [&](double v) { os << format_double(v); },
                            [&](std::uint64_t v) { os << v; }},
                 row[c]);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json rec = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c)
      rec[table.columns[c]] = std::visit(
          Overloaded{[](std::monostate) { return nlohmann::json(nullptr); },
                     [](double v) {
                       return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
                     },
                     [](std::uint64_t v) { return nlohmann::json(v); }},
          row[c]);
    out.push_back(std::move(rec));
  }
  os << out.dump(1) << '\n';
}

Table grid_table(const ObservationGrid& grid) {
  Table t{{"t"}, {}};
  for (double x : grid.times) t.rows.push_back({x});
  return t;
}

Table path_table(const SamplePath& path, std::span<const double> states, std::size_t p) {
  const bool with_states = !states.empty();
  if (with_states && states.size() != path.y.size() * p)
    throw std::invalid_argument("path_table: state block has the wrong size");
  Table t{{"t", "y"}, {}};
  if (with_states)
    for (std::size_t i = 1; i <= p; ++i) t.columns.push_back("x" + std::to_string(i));
  for (std::size_t k = 0; k < path.y.size(); ++k) {
    std::vector<Cell> row{path.grid.times[k], path.y[k]};
    if (with_states)
      for (std::size_t i = 0; i < p; ++i) row.emplace_back(states[k * p + i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table ft_table(std::span<const FtSample> samples) {
  Table t{{"omega", "re", "im", "T", "N", "h_max", "seed"}, {}};
  for (const auto& s : samples)
    t.rows.push_back({s.omega, s.value.real(), s.value.imag(), s.horizon,
                      static_cast<std::uint64_t>(s.n_points), s.h_max, s.seed});
  return t;
}

std::vector<double> omega_range(double omega_min, double omega_max, double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw ConfigError("spectral: step must be > 0");
  if (!std::isfinite(omega_min) || !std::isfinite(omega_max) || omega_max < omega_min)
    throw ConfigError("spectral: need finite omega_min <= omega_max");
  // The slack keeps (10 - (-10)) / 0.1 from rounding down to 199.
  const auto count =
      static_cast<std::size_t>(std::floor((omega_max - omega_min) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = omega_min + static_cast<double>(k) * step;
  return out;
}

Table spectral_table(const CarmaSpec& spec, double omega_min, double omega_max, double step) {
  Table t{{"omega", "f", "re_h", "im_h"}, {}};
  for (double w : omega_range(omega_min, omega_max, step)) {
    const Complex h = transfer(spec, w);
    t.rows.push_back({w, spectral_density(spec, w), h.real(), h.imag()});
  }
  return t;
}

Table qq_table(const std::vector<std::pair<double, double>>& qq) {
  Table t{{"theoretical", "empirical"}, {}};
  for (const auto& [x, y] : qq) t.rows.push_back({x, y});
  return t;
}

Table convergence_table(const std::vector<ConvergenceRow>& rows,
                        std::span<const double> frequencies) {
  Table t{{"h_max", "N"}, {}};
  for (double w : frequencies) t.columns.push_back("rms_err_" + omega_tag(w));
  for (double w : frequencies) t.columns.push_back("ratio_" + omega_tag(w));
  for (const auto& r : rows) {
    std::vector<Cell> row{r.h_max, static_cast<std::uint64_t>(r.n_points)};
    for (double v : r.rms) row.emplace_back(v);
    for (const auto& v : r.ratio) row.push_back(v ? Cell{*v} : Cell{});
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
      throw IoError("cannot create directory '" + path.parent_path().string() +
                    "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  body(out);
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace carma
