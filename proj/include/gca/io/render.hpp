#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gca/core/engine.hpp"

namespace gca::io {

inline constexpr const char* kZero = "  ";
inline constexpr const char* kOne = " #";

inline std::string pad4(std::int64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%4lld", static_cast<long long>(v));
  return buf;
}

inline bool is_binary(const Configuration& cfg) {
  return std::all_of(cfg.states.begin(), cfg.states.end(), [](const CellState& q) {
    return q.data.kind() == DataKind::integer && (q.data.as_int() == 0 || q.data.as_int() == 1);
  });
}

inline std::string cell_glyph(const CellState& q) {
  if (q.data.kind() != DataKind::integer) return " ?";
  switch (q.data.as_int()) {
    case 0: return kZero;
    case 1: return kOne;
    default: return " ?";
  }
}

/// One line per generation: two characters per cell followed by the
/// pointers of the middle cell, " t=   4 at[mid]: p1=  16 p2= -16". In the
/// general model the effective addresses that produced the row follow
/// (row 0 shows those of generation 0).
inline std::vector<std::string> render_line_rows(const std::vector<Configuration>& snaps, const RuleSet& rs) {
  std::vector<std::string> rows;
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const auto& cfg = snaps[k];
    const Index mid = cfg.size() / 2;
    std::string row;
    for (const auto& q : cfg.states) row += cell_glyph(q);
    row += " t=" + pad4(static_cast<std::int64_t>(cfg.time)) + " at[mid]: ";
    const auto& ps = cfg.states[mid].pointers;
    for (std::size_t j = 0; j < ps.size(); ++j) row += (j ? " p" : "p") + std::to_string(j + 1) + "=" + pad4(ps[j].x);
    if (rs.variant == Variant::general) {
      const auto eff = effective_addresses(snaps[k == 0 ? 0 : k - 1], mid, rs);
      for (std::size_t j = 0; j < eff.size(); ++j) row += " p" + std::to_string(j + 1) + "eff=" + pad4(eff[j].x);
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::string format_value(const DataValue& d) {
  char buf[64];
  switch (d.kind()) {
    case DataKind::integer: return std::to_string(d.as_int());
    case DataKind::real: std::snprintf(buf, sizeof buf, "%g", d.as_real()); return buf;
    case DataKind::complex:
      std::snprintf(buf, sizeof buf, "(%g,%g)", d.as_complex().real(), d.as_complex().imag());
      return buf;
  }
  return "?";
}

/// Pointer columns, two blanks, data columns: " 2 2 2 2   1 0 0 1".
/// Columns are two characters wide while every value fits, wider otherwise.
inline std::vector<std::string> render_table_rows(const std::vector<Configuration>& snaps) {
  std::size_t width = 2;
  bool narrow = true;
  for (const auto& cfg : snaps)
    for (const auto& q : cfg.states) {
      auto fits = [&](const std::string& s) {
        width = std::max(width, s.size() + 1);
        if (s.size() > 2 || (s.size() == 2 && s[0] != '-')) narrow = false;
      };
      fits(format_value(q.data));
      for (const auto& a : q.pointers) fits(std::to_string(a.x));
    }
  if (narrow) width = 2;
  auto cell = [&](const std::string& s) { return std::string(width > s.size() ? width - s.size() : 0, ' ') + s; };

  std::vector<std::string> rows;
  for (const auto& cfg : snaps) {
    std::string row;
    const std::size_t m = cfg.states.empty() ? 0 : cfg.states.front().pointers.size();
    for (std::size_t k = 0; k < m; ++k) {
      for (const auto& q : cfg.states) row += cell(std::to_string(q.pointers[k].x));
      row += "  ";
    }
    for (const auto& q : cfg.states) row += cell(format_value(q.data));
    rows.push_back(row);
  }
  return rows;
}

/// Binary grid, one text row per lattice row.
inline std::vector<std::string> render_grid(const Configuration& cfg) {
  std::vector<std::string> rows;
  const auto& topo = cfg.topology;
  for (std::size_t y = 0; y < topo.height(); ++y) {
    std::string row;
    for (std::size_t x = 0; x < topo.width(); ++x) row += cell_glyph(cfg.states[y * topo.width() + x]);
    rows.push_back(row);
  }
  return rows;
}

/// Inverse of render_grid for 0/1 data.
inline std::vector<std::int64_t> parse_grid(const std::vector<std::string>& rows) {
  std::vector<std::int64_t> out;
  for (const auto& r : rows) {
    if (r.size() % 2) throw std::invalid_argument("grid row of odd length");
    for (std::size_t c = 0; c < r.size(); c += 2) {
      const std::string g = r.substr(c, 2);
      if (g == kZero) out.push_back(0);
      else if (g == kOne) out.push_back(1);
      else throw std::invalid_argument("grid row has non-binary cell '" + g + "'");
    }
  }
  return out;
}

inline double gray_value(const DataValue& d) {
  switch (d.kind()) {
    case DataKind::integer: return static_cast<double>(d.as_int());
    case DataKind::real: return d.as_real();
    case DataKind::complex: return std::abs(d.as_complex());
  }
  return 0;
}

/// Binary P5 image, one pixel per cell: 0 white, 1 black. Other data is
/// mapped linearly from [min, max] onto [255, 0]. `tile2` repeats the
/// lattice twice in each direction.
inline void write_pgm(std::ostream& os, const Configuration& cfg, bool tile2 = false) {
  const std::size_t w = cfg.topology.width(), h = cfg.topology.height();
  double lo = 0, hi = 1;
  if (!is_binary(cfg) && !cfg.states.empty()) {
    lo = hi = gray_value(cfg.states.front().data);
    for (const auto& q : cfg.states) {
      lo = std::min(lo, gray_value(q.data));
      hi = std::max(hi, gray_value(q.data));
    }
  }
  auto pixel = [&](const CellState& q) -> unsigned char {
    if (hi == lo) return 255;
    const double f = (gray_value(q.data) - lo) / (hi - lo);
    return static_cast<unsigned char>(std::lround(255.0 * (1.0 - f)));
  };
  const std::size_t reps = tile2 ? 2 : 1;
  os << "P5\n" << w * reps << " " << h * reps << "\n255\n";
  for (std::size_t ty = 0; ty < reps; ++ty)
    for (std::size_t y = 0; y < h; ++y)
      for (std::size_t tx = 0; tx < reps; ++tx)
        for (std::size_t x = 0; x < w; ++x) os.put(static_cast<char>(pixel(cfg.states[y * w + x])));
}

}  // namespace gca::io
