#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "gca/core/engine.hpp"

namespace gca {

inline constexpr const char* kTraceHeader = "gca-trace v1";

inline std::string format_address(const Address& a, bool torus) {
  std::string s = a.is_relative() ? "" : "@";
  s += std::to_string(a.x);
  if (torus) s += ";" + std::to_string(a.y);
  return s;
}

inline Address parse_address(const std::string& text) {
  std::string s = text;
  AddressKind kind = AddressKind::relative;
  if (!s.empty() && s.front() == '@') {
    kind = AddressKind::absolute;
    s.erase(0, 1);
  }
  const auto semi = s.find(';');
  try {
    const std::int64_t x = std::stoll(s.substr(0, semi));
    const std::int64_t y = semi == std::string::npos ? 0 : std::stoll(s.substr(semi + 1));
    return {kind, x, y};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad address '" + text + "'");
  }
}

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Long-format state trace: one row per (t, cell, field). The data and
/// pointer fields can be left out separately.
inline void write_trace_csv(std::ostream& os, const Trace& trace, bool data = true, bool pointers = true) {
  os << kTraceHeader << "\nt,i,field,value\n";
  for (const auto& cfg : trace.snapshots) {
    const bool torus = cfg.topology.is_torus();
    for (Index i = 0; i < cfg.size(); ++i) {
      const auto& q = cfg.states[i];
      const std::string prefix = std::to_string(cfg.time) + "," + std::to_string(i) + ",";
      if (data) switch (q.data.kind()) {
        case DataKind::integer:
          os << prefix << "d," << q.data.as_int() << "\n";
          break;
        case DataKind::real:
          os << prefix << "d," << format_real(q.data.as_real()) << "\n";
          break;
        case DataKind::complex:
          os << prefix << "d.re," << format_real(q.data.as_complex().real()) << "\n";
          os << prefix << "d.im," << format_real(q.data.as_complex().imag()) << "\n";
          break;
      }
      for (std::size_t k = 0; pointers && k < q.pointers.size(); ++k)
        os << prefix << "p" << k + 1 << "," << format_address(q.pointers[k], torus) << "\n";
    }
  }
}

inline void write_edges_csv(std::ostream& os, const Trace& trace) {
  os << kTraceHeader << "\nt,reader,target\n";
  for (const auto& step : trace.steps)
    for (const auto& e : step.edges) os << step.time << "," << e.reader << "," << e.target << "\n";
}

struct Snapshot {
  Configuration cfg;
  Variant variant = Variant::basic;
  std::size_t arms = 1;
};

inline void write_snapshot(std::ostream& os, const Snapshot& snap) {
  using nlohmann::json;
  const auto& cfg = snap.cfg;
  const bool torus = cfg.topology.is_torus();
  json states = json::array();
  for (const auto& q : cfg.states) {
    json s;
    switch (q.data.kind()) {
      case DataKind::integer: s["d"] = q.data.as_int(); break;
      case DataKind::real: s["d"] = q.data.as_real(); break;
      case DataKind::complex: s["d"] = {q.data.as_complex().real(), q.data.as_complex().imag()}; break;
    }
    json p = json::array();
    for (const auto& a : q.pointers) p.push_back(format_address(a, torus));
    s["p"] = p;
    states.push_back(s);
  }
  json doc = {{"n", cfg.size()},
              {"m", snap.arms},
              {"variant", to_string(snap.variant)},
              {"topology", {{"shape", torus ? "torus" : "ring"}, {"w", cfg.topology.width()}, {"h", cfg.topology.height()}}},
              {"time", cfg.time},
              {"states", states}};
  os << kTraceHeader << "\n" << doc.dump() << "\n";
}

inline Snapshot read_snapshot(std::istream& is) {
  using nlohmann::json;
  std::string header;
  std::getline(is, header);
  if (header != kTraceHeader) throw std::invalid_argument("snapshot: missing '" + std::string(kTraceHeader) + "' header");
  json doc;
  try {
    is >> doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("snapshot: ") + e.what());
  }
  Snapshot snap;
  try {
    const auto& topo = doc.at("topology");
    snap.cfg.topology = topo.at("shape") == "torus" ? Topology::torus(topo.at("w"), topo.at("h"))
                                                    : Topology::ring(topo.at("w").get<std::size_t>());
    snap.cfg.time = doc.at("time");
    snap.arms = doc.at("m");
    const std::string v = doc.at("variant");
    snap.variant = v == "general" ? Variant::general : v == "plain" ? Variant::plain : Variant::basic;
    for (const auto& s : doc.at("states")) {
      CellState q;
      const auto& d = s.at("d");
      if (d.is_array())
        q.data = std::complex<double>(d.at(0).get<double>(), d.at(1).get<double>());
      else if (d.is_number_integer())
        q.data = d.get<std::int64_t>();
      else
        q.data = d.get<double>();
      for (const auto& a : s.at("p")) q.pointers.push_back(parse_address(a.get<std::string>()));
      snap.cfg.states.push_back(std::move(q));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("snapshot: ") + e.what());
  }
  if (snap.cfg.states.size() != snap.cfg.topology.size()) throw std::invalid_argument("snapshot: state count mismatch");
  return snap;
}

}  // namespace gca
