#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stablerank/persistence.hpp"
#include "stablerank/point_cloud.hpp"
#include "stablerank/spatial.hpp"
#include "stablerank/step_function.hpp"

namespace stablerank::io {

using json = nlohmann::ordered_json;

inline std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

/// Write-then-rename, so partially written outputs never appear under the
/// final name.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  if (line.find(',') != std::string::npos) {
    while (std::getline(ss, field, ',')) fields.push_back(field);
  } else {
    while (ss >> field) fields.push_back(field);
  }
  return fields;
}

inline double parse_double(const std::string& token, const std::filesystem::path& path, std::size_t line_no) {
  try {
    if (token == "inf") return std::numeric_limits<double>::infinity();
    std::size_t consumed = 0;
    const double value = std::stod(token, &consumed);
    while (consumed < token.size() && std::isspace(static_cast<unsigned char>(token[consumed]))) ++consumed;
    if (consumed != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": not a number: '" + token + "'");
  }
}

}  // namespace detail

/// One point per row, comma- or whitespace-separated floating-point columns.
inline std::vector<std::vector<double>> read_point_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(detail::parse_double(f, path, line_no));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Lower-triangular text format: line i holds the i entries d(i,0) .. d(i,i-1),
/// so the first line is empty.
inline DissimilarityMatrix read_lower_triangular(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::vector<double> lower;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    const auto fields = detail::split_fields(line);
    if (fields.size() != row) {
      throw std::runtime_error(path.string() + ":" + std::to_string(row + 1) + ": expected " +
                               std::to_string(row) + " entries, got " + std::to_string(fields.size()));
    }
    for (const auto& f : fields) lower.push_back(detail::parse_double(f, path, row + 1));
    ++row;
  }
  return DissimilarityMatrix::from_condensed(row, std::move(lower));
}

inline json barcode_to_json(const Barcode& bc) {
  json j;
  j["max_scale"] = bc.max_scale;
  for (int degree = 0; degree <= 1; ++degree) {
    json bars = json::array();
    for (const Bar& bar : bc.bars_in(degree)) {
      bars.push_back({bar.birth, bar.essential() ? json(nullptr) : json(bar.death)});
    }
    j[degree == 0 ? "h0" : "h1"] = std::move(bars);
  }
  return j;
}

inline Barcode barcode_from_json(const json& j) {
  Barcode bc;
  bc.max_scale = j.at("max_scale").get<double>();
  for (int degree = 0; degree <= 1; ++degree) {
    const char* key = degree == 0 ? "h0" : "h1";
    if (!j.contains(key)) continue;
    for (const auto& pair : j.at(key)) {
      const double birth = pair.at(0).get<double>();
      const double death = pair.at(1).is_null() ? kInfiniteDeath : pair.at(1).get<double>();
      bc.bars[static_cast<std::size_t>(degree)].push_back({birth, death, degree});
    }
  }
  return bc;
}

inline void write_barcode_json(const std::filesystem::path& path, const Barcode& bc) {
  atomic_write(path, barcode_to_json(bc).dump(2) + "\n");
}

inline Barcode read_barcode_json(const std::filesystem::path& path) {
  return barcode_from_json(json::parse(read_file(path)));
}

/// Stem-plot format: one "birth length" row per bar; essential bars are
/// capped at max_scale.
inline std::string stem_text(const Barcode& bc, int degree) {
  std::string out;
  for (const Bar& bar : bc.bars_in(degree)) {
    const double death = bar.essential() ? bc.max_scale : bar.death;
    out += format_double(bar.birth) + " " + format_double(death - bar.birth) + "\n";
  }
  return out;
}

/// (eps, value) rows at the breakpoints, then a sentinel row "inf,<value>"
/// pinning the eventual value.
inline std::string step_function_csv(const StepFunction& f) {
  std::string out;
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    out += format_double(f.breakpoints()[i]) + "," + format_double(f.values()[i]) + "\n";
  }
  out += "inf," + format_double(f.final_value()) + "\n";
  return out;
}

inline StepFunction read_step_function_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::vector<double> xs, ys;
  std::string line;
  std::size_t line_no = 0;
  bool saw_sentinel = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 2) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected two columns");
    }
    const double x = detail::parse_double(fields[0], path, line_no);
    const double y = detail::parse_double(fields[1], path, line_no);
    if (std::isinf(x)) {
      saw_sentinel = true;
      break;
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  if (!saw_sentinel || xs.empty()) {
    throw std::runtime_error(path.string() + ": missing breakpoint rows or sentinel row");
  }
  return StepFunction(std::move(xs), std::move(ys));
}

/// CSV matrix: one grid row per line. Geometry comes from the caller.
inline GridField read_grid_csv(const std::filesystem::path& path, double cell_size, bool periodic) {
  const auto rows = read_point_rows(path);
  if (rows.empty()) throw std::runtime_error(path.string() + ": empty grid");
  const std::size_t nx = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * nx);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nx) {
      throw std::runtime_error(path.string() + ":" + std::to_string(i + 1) + ": ragged row");
    }
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return GridField::create(std::move(values), nx, rows.size(), cell_size, periodic);
}

/// Row-major float64 binary with a JSON sidecar <path>.json holding
/// nx, ny, cell_size and periodic.
inline GridField read_grid_binary(const std::filesystem::path& path) {
  const json sidecar = json::parse(read_file(path.string() + ".json"));
  const std::size_t nx = sidecar.at("nx").get<std::size_t>();
  const std::size_t ny = sidecar.at("ny").get<std::size_t>();
  const double cell_size = sidecar.at("cell_size").get<double>();
  const bool periodic = sidecar.at("periodic").get<bool>();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::vector<double> values(nx * ny);
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(values.size() * sizeof(double))) {
    throw std::runtime_error(path.string() + ": truncated binary grid");
  }
  return GridField::create(std::move(values), nx, ny, cell_size, periodic);
}

inline void write_grid_binary(const std::filesystem::path& path, const GridField& f) {
  std::string raw(reinterpret_cast<const char*>(f.values.data()), f.values.size() * sizeof(double));
  atomic_write(path, raw);
  json sidecar;
  sidecar["nx"] = f.nx;
  sidecar["ny"] = f.ny;
  sidecar["cell_size"] = f.cell_size;
  sidecar["periodic"] = f.periodic;
  atomic_write(path.string() + ".json", sidecar.dump(2) + "\n");
}

struct ManifestEntry {
  std::string id;
  std::string label;
  std::string csv_path;
};

inline std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  const json j = json::parse(read_file(path));
  std::vector<ManifestEntry> entries;
  for (const auto& item : j) {
    entries.push_back({item.at("id").get<std::string>(), item.at("label").get<std::string>(),
                       item.at("csv_path").get<std::string>()});
  }
  return entries;
}

}  // namespace stablerank::io
