#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gca/algorithms/spec.hpp"

namespace gca::firing {

enum FiringState : std::int64_t { S = 0, G = 1, A = 2, F = 3 };

// Ring cells keep whether they are their ring's general in this bit, so a
// general can return to G after firing.
inline constexpr std::int64_t kGeneralRole = 4;

inline std::int64_t visible(std::int64_t d) { return d & 3; }

struct Ring {
  std::vector<Index> cells;  // in ring order
  Index general = 0;
};

struct RingLayout {
  std::vector<Ring> rings;
};

/// One ring per line, comma separated cell indices, the general marked with
/// '*': "2,4,6*". Blank lines and '#' comments are skipped.
inline RingLayout parse_ring_layout(std::string_view text) {
  RingLayout layout;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Ring ring;
    int generals = 0;
    std::istringstream items(line);
    std::string item;
    while (std::getline(items, item, ',')) {
      const auto b = item.find_first_not_of(" \t\r"), e = item.find_last_not_of(" \t\r");
      if (b == std::string::npos) throw std::invalid_argument("ring layout: empty entry in '" + line + "'");
      item = item.substr(b, e - b + 1);
      const bool star = item.back() == '*';
      if (star) item.pop_back();
      std::size_t used = 0;
      long long v = -1;
      try {
        v = std::stoll(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size() || v < 0) throw std::invalid_argument("ring layout: bad cell index '" + item + "'");
      ring.cells.push_back(static_cast<Index>(v));
      if (star) {
        ring.general = static_cast<Index>(v);
        ++generals;
      }
    }
    if (generals != 1) throw std::invalid_argument("ring layout: each ring needs exactly one '*' general: '" + line + "'");
    layout.rings.push_back(std::move(ring));
  }
  return layout;
}

inline std::string format_ring_layout(const RingLayout& layout) {
  std::string out;
  for (const auto& r : layout.rings) {
    for (std::size_t k = 0; k < r.cells.size(); ++k) {
      if (k) out += ",";
      out += std::to_string(r.cells[k]);
      if (r.cells[k] == r.general) out += "*";
    }
    out += "\n";
  }
  return out;
}

inline void validate_layout(const RingLayout& layout, std::size_t n) {
  std::set<Index> used;
  for (const auto& r : layout.rings) {
    if (r.cells.size() < 2) throw std::invalid_argument("ring layout: ring length must be at least 2");
    if (std::find(r.cells.begin(), r.cells.end(), r.general) == r.cells.end())
      throw std::invalid_argument("ring layout: general " + std::to_string(r.general) + " is not in its ring");
    for (const Index c : r.cells) {
      if (c >= n) throw std::invalid_argument("ring layout: cell " + std::to_string(c) + " outside n=" + std::to_string(n));
      if (!used.insert(c).second)
        throw std::invalid_argument("ring layout: rings overlap at cell " + std::to_string(c));
    }
  }
}

inline Stop all_data_equal(std::int64_t value) {
  return Stop::when([value](const Configuration& c) {
    return std::all_of(c.states.begin(), c.states.end(), [value](const CellState& q) { return q.data.as_int() == value; });
  });
}

/// Firing by a wave running once around the ring (one arm, initially
/// p = -1). Everybody fires at t = n + 1 and then falls back to S, p = -1.
inline AlgorithmSpec firing_wave(std::size_t n, Index general_at) {
  require_at_least(n, 2, "firing-wave");
  if (general_at >= n) throw std::invalid_argument("firing-wave: general position outside the array");
  AlgorithmSpec spec;
  spec.name = "firing-wave";
  spec.topology = Topology::ring(n);
  spec.initializer = [n, general_at] {
    Configuration cfg = ring_config(std::vector<std::int64_t>(n, S), one_pointer(-1));
    cfg.states[general_at].data = G;
    return cfg;
  };
  spec.rules.params = {{"n", static_cast<std::int64_t>(n)}};
  spec.rules.pointer_rule = [](const RuleContext& c) {
    const std::int64_t d = c.self.data.as_int(), p = c.self.ptr();
    const std::int64_t ds = c.neighbor().data.as_int(), ps = c.neighbor().ptr();
    if ((d == S || d == G) && (ds == G || ps != -1)) return one_pointer(normalize_relative(p + 1, c.n()));  // (1a)
    if (d == F) return one_pointer(-1);                                                                   // (1b)
    return c.self.pointers;
  };
  spec.rules.data_rule = [](const RuleContext& c) {
    const std::int64_t d = c.self.data.as_int(), p = c.self.ptr();
    const std::int64_t ds = c.neighbor().data.as_int(), ps = c.neighbor().ptr();
    if (ds == G && (p != -1 || ps == 0)) return DataValue(F);  // (2a)
    if (d == F) return DataValue(S);                           // (2b)
    return c.self.data;
  };
  spec.halt = all_data_equal(F);
  spec.halt_description = "predicate: all cells F (t = n + 1)";
  spec.expected_steps = n + 1;
  spec.oracle = "fire-time";
  return spec;
}

/// Initial two-pointer state for the ring layout: p1 points to the ring
/// predecessor, p2 to the successor; cells outside every ring get (0, 0).
inline Configuration ring_initial(std::size_t n, const RingLayout& layout) {
  validate_layout(layout, n);
  Configuration cfg = ring_config(std::vector<std::int64_t>(n, S), {Address::rel(0), Address::rel(0)});
  const auto nn = static_cast<std::int64_t>(n);
  for (const auto& r : layout.rings) {
    const std::size_t len = r.cells.size();
    for (std::size_t k = 0; k < len; ++k) {
      const auto i = static_cast<std::int64_t>(r.cells[k]);
      const auto pred = static_cast<std::int64_t>(r.cells[(k + len - 1) % len]);
      const auto succ = static_cast<std::int64_t>(r.cells[(k + 1) % len]);
      cfg.states[r.cells[k]].pointers = {Address::rel(-wrap(i - pred, nn)), Address::rel(wrap(succ - i, nn))};
    }
    cfg.states[r.general].data = G | kGeneralRole;
  }
  return cfg;
}

/// Firing on disjoint rings embedded in the cell array. Pointer addresses
/// compare modulo n since the stored values are not normalized.
inline AlgorithmSpec firing_rings(std::size_t n, const RingLayout& layout) {
  validate_layout(layout, n);
  if (layout.rings.empty()) throw std::invalid_argument("firing-rings: layout has no rings");
  require_at_least(n, 3, "firing-rings");
  AlgorithmSpec spec;
  spec.name = "firing-rings";
  spec.arms = 2;
  spec.topology = Topology::ring(n);
  spec.initializer = [n, layout] { return ring_initial(n, layout); };
  spec.rules.arms = 2;
  spec.rules.stored_pointers = 2;
  spec.rules.params = {{"n", static_cast<std::int64_t>(n)}};
  const auto active = [](const CellState& q) { return !(q.ptr(0) == 0 && q.ptr(1) == 0); };
  spec.rules.pointer_rule = [active](const RuleContext& c) {
    if (!active(c.self)) return c.self.pointers;  // (3a)
    const std::int64_t n = c.n(), p1 = c.self.ptr(0);
    const CellState& nb = c.neighbor(0);
    std::int64_t next = p1;
    if (visible(nb.data.as_int()) == G && !same_mod(p1, 0, n) && !same_mod(nb.ptr(0), 0, n))
      next = 0;  // (3b)
    else if (same_mod(p1, 0, n) || same_mod(nb.ptr(0), 0, n))
      next = normalize_relative(p1 + nb.ptr(1), n);  // (3c)
    return std::vector<Address>{Address::rel(next), c.self.pointers[1]};
  };
  spec.rules.data_rule = [active](const RuleContext& c) {
    if (!active(c.self)) return c.self.data;  // (4a)
    const std::int64_t n = c.n(), p1 = c.self.ptr(0), d = c.self.data.as_int();
    const CellState& nb = c.neighbor(0);
    const std::int64_t role = d & kGeneralRole;
    if (visible(nb.data.as_int()) == G && (!same_mod(p1, -nb.ptr(1), n) || same_mod(nb.ptr(0), 0, n)))
      return DataValue(F | role);  // (4b)
    if (visible(d) == F) return DataValue(role ? (G | role) : S);
    return c.self.data;
  };
  std::size_t longest = 0;
  for (const auto& r : layout.rings) longest = std::max(longest, r.cells.size());
  spec.halt = Stop::after(longest + 1);
  spec.halt_description = "steps: longest ring + 1";
  spec.expected_steps = longest + 1;
  spec.oracle = "fire-time";
  return spec;
}

inline AlgorithmSpec firing_rings(std::size_t n, std::string_view layout_text) {
  return firing_rings(n, parse_ring_layout(layout_text));
}

/// Times t in [0, horizon] at which every active cell of `ring` is in F.
inline std::vector<std::uint64_t> ring_fire_times(const std::vector<Configuration>& snapshots, const Ring& ring) {
  std::vector<std::uint64_t> out;
  for (const auto& cfg : snapshots)
    if (std::all_of(ring.cells.begin(), ring.cells.end(),
                    [&](Index i) { return visible(cfg.states[i].data.as_int()) == F; }))
      out.push_back(cfg.time);
  return out;
}

/// Pointer jumping, solution 1 (n a power of two). The pointer doubles
/// each step until it wraps to 0; G spreads along the jumps; when p = 0 and
/// d = G the cell fires (d = 2) at t = 1 + log2 n.
inline AlgorithmSpec firing_jump_v1(std::size_t n, Index general_at) {
  require_at_least(n, 2, "firing-jump-v1");
  require_power_of_two(n, "firing-jump-v1");
  if (general_at >= n) throw std::invalid_argument("firing-jump-v1: general position outside the array");
  AlgorithmSpec spec;
  spec.name = "firing-jump-v1";
  spec.topology = Topology::ring(n);
  spec.initializer = [n, general_at] {
    Configuration cfg = ring_config(std::vector<std::int64_t>(n, S), one_pointer(1));
    cfg.states[general_at].data = G;
    return cfg;
  };
  spec.rules.params = {{"n", static_cast<std::int64_t>(n)}};
  spec.rules.pointer_rule = [](const RuleContext& c) {
    return one_pointer(centered_upper(c.self.ptr() + c.neighbor().ptr(), c.n()));  // (5)
  };
  spec.rules.data_rule = [](const RuleContext& c) {
    const std::int64_t p = c.self.ptr(), d = c.self.data.as_int(), ds = c.neighbor().data.as_int();
    if (p != 0 && d < ds) return DataValue(ds);  // (6a)
    if (p == 0 && d == 1) return DataValue(2);   // (6b)
    return c.self.data;                          // (6c)
  };
  spec.halt = all_data_equal(2);
  spec.halt_description = "predicate: all cells fired (t = 1 + log2 n)";
  spec.expected_steps = 1 + log2_exact(n);
  spec.oracle = "fire-time";
  return spec;
}

/// Busy-wait pointer cycle of solution 2: 1, 2, 4, ..., then 0.
inline std::int64_t jump_v2_next_pointer(std::int64_t p, std::int64_t n) {
  if (p == 0) return 1;                 // (7a)
  if (p < 0) return 0;                  // (7b)
  return centered_upper(2 * p, n);      // (7c)
}

/// Pointer jumping, solution 2: any n, the general may arrive at any time.
/// All pointers start at `initial_pointer` and cycle until the general is
/// introduced at cell `general_at` when t = introduce_at_t.
inline AlgorithmSpec firing_jump_v2(std::size_t n, Index general_at, std::uint64_t introduce_at_t,
                                    std::int64_t initial_pointer = 0) {
  require_at_least(n, 2, "firing-jump-v2");
  if (general_at >= n) throw std::invalid_argument("firing-jump-v2: general position outside the array");
  AlgorithmSpec spec;
  spec.name = "firing-jump-v2";
  spec.topology = Topology::ring(n);
  spec.initializer = [n, initial_pointer] {
    return ring_config(std::vector<std::int64_t>(n, S), one_pointer(initial_pointer));
  };
  spec.events.push_back({introduce_at_t, [general_at](Configuration& cfg) { cfg.states[general_at].data = G; }});
  spec.rules.params = {{"n", static_cast<std::int64_t>(n)}};
  spec.rules.pointer_rule = [](const RuleContext& c) { return one_pointer(jump_v2_next_pointer(c.self.ptr(), c.n())); };
  spec.rules.data_rule = [](const RuleContext& c) {
    const std::int64_t p = c.self.ptr(), d = c.self.data.as_int(), ds = c.neighbor().data.as_int();
    if (p != 0 && d < ds) return DataValue(ds);  // (8a)
    if (p == 0 && d == 1) return DataValue(2);   // (8b)
    if (p == 0 && d == 2) return DataValue(3);   // (8c)
    return c.self.data;                          // (8d)
  };
  spec.halt = all_data_equal(F);
  spec.halt_description = "predicate: all cells F";
  spec.oracle = "fire-time";
  return spec;
}

}  // namespace gca::firing
