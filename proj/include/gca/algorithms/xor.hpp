#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gca/algorithms/spec.hpp"

namespace gca {

/// Pointer rules of the 2D XOR family.
///   const1        p' = 1                           (rule 1)
///   plus_delta    p' = (p + delta) mod n, 0 -> 1   (rules 2-6, delta 1..5)
///   times2/3      p' = 2p or 3p mod n              (rules 7, 8; reseed: 0 -> 1)
///   time_alt      B, C, D, E: p is a function of t
///   checkerboard  F, G, H: orthogonal or diagonal neighbors by cell parity
///   plain_data_dep  p = A if q = 0 else B (plain model)
struct XorPointerRule {
  enum class Kind { const1, plus_delta, times2, times3, time_alt, checkerboard, plain_data_dep };
  Kind kind = Kind::const1;
  int delta = 0;
  bool reseed = false;
  char variant = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;

  static XorPointerRule numbered(int rule, bool reseed = false) {
    if (rule == 1) return {};
    if (rule >= 2 && rule <= 6) return {Kind::plus_delta, rule - 1};
    if (rule == 7) return {Kind::times2, 0, reseed};
    if (rule == 8) return {Kind::times3, 0, reseed};
    throw std::invalid_argument("xor2d: pointer rule must be 1..8, got " + std::to_string(rule));
  }
  static XorPointerRule time_alt(char v) { return {Kind::time_alt, 0, false, v}; }
  static XorPointerRule checkerboard(char v) { return {Kind::checkerboard, 0, false, v}; }
  static XorPointerRule plain(std::int64_t a, std::int64_t b) { return {Kind::plain_data_dep, 0, false, 0, a, b}; }
};

/// Next common address base for rules 1-8.
inline std::int64_t xor_next_pointer(const XorPointerRule& r, std::int64_t p, std::int64_t n) {
  switch (r.kind) {
    case XorPointerRule::Kind::const1:
      return 1;
    case XorPointerRule::Kind::plus_delta: {
      const std::int64_t q = wrap(p + r.delta, n);
      return q == 0 ? 1 : q;
    }
    case XorPointerRule::Kind::times2:
    case XorPointerRule::Kind::times3: {
      const std::int64_t q = wrap((r.kind == XorPointerRule::Kind::times2 ? 2 : 3) * p, n);
      return q == 0 && r.reseed ? 1 : q;
    }
    default:
      throw std::invalid_argument("xor2d: not a base-pointer rule");
  }
}

/// (px, py) of the time-dependent rules B-E at generation t.
inline std::pair<std::int64_t, std::int64_t> timedep_pointer(char rule, std::uint64_t t) {
  const auto odd = static_cast<std::int64_t>(t % 2);
  switch (rule) {
    case 'B': return {1 + odd, 1 + odd};
    case 'C': return {1 + 2 * odd, 1 + 2 * odd};
    case 'D': return {1 + 3 * odd, 1 + 3 * odd};
    case 'E': return {1 + 2 * odd, 1 + 2 * ((t + 1) % 2)};
    default: throw std::invalid_argument(std::string("time-dependent xor: unknown rule '") + rule + "'");
  }
}

/// North, East, South, West offsets for base (px, py).
inline std::vector<Address> orthogonal_offsets(std::int64_t px, std::int64_t py) {
  return {Address::rel(0, -py), Address::rel(px, 0), Address::rel(0, py), Address::rel(-px, 0)};
}

// Black cells read NE, SE, SW, NW through the same four arms.
inline std::vector<Address> diagonal_offsets(std::int64_t px, std::int64_t py) {
  return {Address::rel(px, -py), Address::rel(px, py), Address::rel(-px, py), Address::rel(-px, -py)};
}

inline std::vector<Address> spacedep_offsets(char rule, std::int64_t x, std::int64_t y) {
  if (rule < 'F' || rule > 'H')
    throw std::invalid_argument(std::string("space-dependent xor: unknown rule '") + rule + "'");
  const std::int64_t p = rule - 'F' + 1;
  return wrap(x + y, 2) == 0 ? orthogonal_offsets(p, p) : diagonal_offsets(p, p);
}

/// n x n grid with the center cell and its four orthogonal neighbors set.
inline std::vector<std::int64_t> cross_grid(std::size_t n) {
  std::vector<std::int64_t> g(n * n, 0);
  const auto c = static_cast<std::int64_t>(n / 2);
  const Topology t = Topology::torus(n, n);
  for (const auto& [dx, dy] : {std::pair{0, 0}, {0, -1}, {1, 0}, {0, 1}, {-1, 0}}) g[t.index(c + dx, c + dy)] = 1;
  return g;
}

namespace detail {

inline DataValue xor_of_neighbors(const RuleContext& c) {
  std::int64_t s = 0;
  for (const auto& q : c.neighbors) s += q.data.as_int();
  return DataValue(wrap(s, 2));
}

inline Configuration grid_config(std::size_t n, const std::vector<std::int64_t>& data, std::vector<Address> pointers) {
  Configuration cfg{Topology::torus(n, n), {}, 0};
  cfg.states.reserve(data.size());
  for (const auto d : data) cfg.states.push_back({DataValue(d), pointers});
  return cfg;
}

inline std::vector<std::int64_t> grid_data(std::size_t n, std::vector<std::int64_t> init, const std::string& what) {
  if (init.empty()) return cross_grid(n);
  if (init.size() != n * n)
    throw std::invalid_argument(what + ": initial grid has " + std::to_string(init.size()) + " cells, expected " +
                                std::to_string(n * n));
  return init;
}

inline AlgorithmSpec xor_grid_spec(std::string name, std::size_t n) {
  AlgorithmSpec spec;
  spec.name = std::move(name);
  spec.variant = Variant::general;
  spec.arms = 4;
  spec.topology = Topology::torus(n, n);
  spec.rules.variant = Variant::general;
  spec.rules.arms = 4;
  spec.rules.stored_pointers = 1;
  spec.rules.params = {{"n", static_cast<std::int64_t>(n)}};
  spec.rules.data_rule = xor_of_neighbors;
  spec.halt = Stop::after(2 * n);
  spec.halt_description = "steps: 2n";
  spec.expected_steps = 2 * n;
  spec.oracle = "xor-linear";
  return spec;
}

}  // namespace detail

inline std::string xor2d_name(const XorPointerRule& r) {
  switch (r.kind) {
    case XorPointerRule::Kind::const1: return "xor2d-r1";
    case XorPointerRule::Kind::plus_delta: return "xor2d-r" + std::to_string(r.delta + 1);
    case XorPointerRule::Kind::times2: return r.reseed ? "xor2d-r7s" : "xor2d-r7";
    case XorPointerRule::Kind::times3: return r.reseed ? "xor2d-r8s" : "xor2d-r8";
    case XorPointerRule::Kind::time_alt:
    case XorPointerRule::Kind::checkerboard: return std::string("xor2d-") + r.variant;
    case XorPointerRule::Kind::plain_data_dep: return "xor-plain";
  }
  return "xor2d";
}

/// 2D XOR with a common address base p and NESW neighbors at distance p.
/// An empty `init` means the cross in the center.
inline AlgorithmSpec alg_xor2d(std::size_t n, XorPointerRule rule, std::vector<std::int64_t> init = {}) {
  require_at_least(n, 3, "xor2d");
  if (rule.kind != XorPointerRule::Kind::const1 && rule.kind != XorPointerRule::Kind::plus_delta &&
      rule.kind != XorPointerRule::Kind::times2 && rule.kind != XorPointerRule::Kind::times3)
    throw std::invalid_argument("xor2d: rule must be one of the numbered rules 1-8");
  const auto data = detail::grid_data(n, std::move(init), "xor2d");
  auto spec = detail::xor_grid_spec(xor2d_name(rule), n);
  spec.initializer = [n, data] { return detail::grid_config(n, data, one_pointer(1)); };
  spec.rules.modifier = [](const AddressContext& c) {
    const std::int64_t p = c.self.ptr();
    return orthogonal_offsets(p, p);
  };
  spec.rules.pointer_rule = [rule](const RuleContext& c) {
    return one_pointer(xor_next_pointer(rule, c.self.ptr(), static_cast<std::int64_t>(c.topology.width())));
  };
  return spec;
}

/// Time-dependent rules B-E. The stored base holds (px, py) for the
/// current generation.
inline AlgorithmSpec alg_xor_timedep(std::size_t n, char rule, std::vector<std::int64_t> init = {}) {
  require_at_least(n, 3, "xor2d");
  timedep_pointer(rule, 0);
  const auto data = detail::grid_data(n, std::move(init), "xor2d");
  auto spec = detail::xor_grid_spec(std::string("xor2d-") + rule, n);
  spec.initializer = [n, data, rule] {
    const auto [px, py] = timedep_pointer(rule, 0);
    return detail::grid_config(n, data, {Address::rel(px, py)});
  };
  spec.rules.modifier = [](const AddressContext& c) {
    const auto& p = c.self.pointers[0];
    return orthogonal_offsets(p.x, p.y);
  };
  spec.rules.pointer_rule = [rule](const RuleContext& c) {
    const auto [px, py] = timedep_pointer(rule, c.time + 1);
    return std::vector<Address>{Address::rel(px, py)};
  };
  return spec;
}

/// Space-dependent rules F-H: white cells ((x+y) even) read orthogonal
/// neighbors, black cells diagonal ones; p = 1, 2, 3.
inline AlgorithmSpec alg_xor_spacedep(std::size_t n, char rule, std::vector<std::int64_t> init = {}) {
  require_at_least(n, 3, "xor2d");
  spacedep_offsets(rule, 0, 0);
  const auto data = detail::grid_data(n, std::move(init), "xor2d");
  auto spec = detail::xor_grid_spec(std::string("xor2d-") + rule, n);
  const std::int64_t p = rule - 'F' + 1;
  spec.initializer = [n, data, p] { return detail::grid_config(n, data, one_pointer(p)); };
  spec.rules.modifier = [rule](const AddressContext& c) {
    const auto [x, y] = c.topology.coords(c.index);
    return spacedep_offsets(rule, x, y);
  };
  return spec;
}

/// Plain model: the pointer distance comes from the cell's own state,
/// p = A for q = 0 and p = B for q = 1.
inline AlgorithmSpec alg_xor_plain(std::size_t n, std::int64_t a, std::int64_t b, std::vector<std::int64_t> init = {}) {
  require_at_least(n, 3, "xor-plain");
  const auto half = static_cast<std::int64_t>(n / 2);
  if (a < 1 || b < 1 || a > half || b > half)
    throw std::invalid_argument("xor-plain: A and B must lie in [1, n/2]");
  const auto data = detail::grid_data(n, std::move(init), "xor-plain");
  auto spec = detail::xor_grid_spec("xor-plain", n);
  spec.variant = Variant::plain;
  spec.rules.variant = Variant::plain;
  spec.rules.stored_pointers = 0;
  spec.rules.params = {{"n", static_cast<std::int64_t>(n)}, {"A", a}, {"B", b}};
  spec.initializer = [n, data] { return detail::grid_config(n, data, {}); };
  spec.rules.pointer_function = [a, b](Index, const CellState& q) {
    const std::int64_t p = q.data.as_int() == 0 ? a : b;
    return orthogonal_offsets(p, p);
  };
  spec.data_independent_pointers = false;
  spec.oracle = "none";
  return spec;
}

/// 1D XOR of two dynamic neighbors whose distances double every step
/// (N odd, one '1' in the middle).
///   basic:   stored p1 (from +1) and p2 (from -1) are the addresses
///   general: stored bases p1 = p2 (from 1); the addresses are p1 and -p2
/// The doubling uses the truncating remainder, and a result of 0 restarts
/// the pointer at its initial value.
inline AlgorithmSpec alg_xor1d(std::size_t n, Variant variant) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("xor1d: N=" + std::to_string(n) + " must be odd and >= 3");
  if (variant == Variant::plain) throw std::invalid_argument("xor1d: only basic and general variants exist");
  AlgorithmSpec spec;
  spec.name = variant == Variant::basic ? "xor1d-basic" : "xor1d-general";
  spec.variant = variant;
  spec.arms = 2;
  spec.topology = Topology::ring(n);
  const bool basic = variant == Variant::basic;
  const std::int64_t init2 = basic ? -1 : 1;
  spec.initializer = [n, init2] {
    std::vector<std::int64_t> data(n, 0);
    data[n / 2] = 1;
    return ring_config(data, {Address::rel(1), Address::rel(init2)});
  };
  spec.rules.variant = variant;
  spec.rules.arms = 2;
  spec.rules.stored_pointers = 2;
  spec.rules.params = {{"n", static_cast<std::int64_t>(n)}};
  spec.rules.data_rule = detail::xor_of_neighbors;
  if (!basic)
    spec.rules.modifier = [](const AddressContext& c) {
      return std::vector<Address>{Address::rel(c.self.ptr(0)), Address::rel(-c.self.ptr(1))};
    };
  spec.rules.pointer_rule = [init2](const RuleContext& c) {
    const auto twice = [&](std::int64_t p, std::int64_t init) {
      const std::int64_t q = (2 * p) % c.n();
      return q == 0 ? init : q;
    };
    return std::vector<Address>{Address::rel(twice(c.self.ptr(0), 1)), Address::rel(twice(c.self.ptr(1), init2))};
  };
  spec.halt = Stop::after(5);
  spec.halt_description = "steps: 5";
  spec.expected_steps = 5;
  spec.oracle = "golden";
  return spec;
}

}  // namespace gca
