#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gca/algorithms/spec.hpp"

namespace gca {

// 1,3,5,...,n-1 followed by n,n-2,...,2: ascending then descending.
inline std::vector<std::int64_t> default_bitonic_input(std::size_t n) {
  std::vector<std::int64_t> v;
  for (std::size_t i = 0; i < n / 2; ++i) v.push_back(static_cast<std::int64_t>(2 * i + 1));
  for (std::size_t i = n / 2; i < n; ++i) v.push_back(static_cast<std::int64_t>(2 * (n - i)));
  return v;
}

namespace detail {

inline DataValue compare_exchange(const RuleContext& c, bool lower) {
  const std::int64_t d = c.self.data.as_int(), other = c.neighbor().data.as_int();
  return DataValue(lower ? std::min(d, other) : std::max(d, other));
}

}  // namespace detail

/// Bitonic merge in the general model. The stored base p runs
/// n/2, n/4, ..., 1, 0; the partner is i+p when bit p of i is clear and i-p
/// otherwise. The lower cell of each pair keeps the minimum.
inline AlgorithmSpec alg_bitonic_merge(std::size_t n, std::vector<std::int64_t> data = {}) {
  require_at_least(n, 2, "bitonic");
  require_power_of_two(n, "bitonic");
  if (data.empty()) data = default_bitonic_input(n);
  require_size(data, n, "bitonic");

  AlgorithmSpec spec;
  spec.name = "bitonic";
  spec.variant = Variant::general;
  spec.topology = Topology::ring(n);
  const auto half = static_cast<std::int64_t>(n / 2);
  spec.initializer = [data, half] { return ring_config(data, one_pointer(half)); };
  spec.rules.variant = Variant::general;
  spec.rules.params = {{"n", static_cast<std::int64_t>(n)}};
  spec.rules.modifier = [](const AddressContext& c) {
    const std::int64_t p = c.self.ptr();
    return one_pointer((static_cast<std::int64_t>(c.index) & p) == 0 ? p : -p);
  };
  spec.rules.data_rule = [](const RuleContext& c) {
    const std::int64_t p = c.self.ptr();
    if (p == 0) return c.self.data;
    return detail::compare_exchange(c, (static_cast<std::int64_t>(c.index) & p) == 0);
  };
  spec.rules.pointer_rule = [](const RuleContext& c) { return one_pointer(c.self.ptr() / 2); };
  spec.halt = Stop::after(log2_exact(n));
  spec.halt_description = "steps: log2 n";
  spec.expected_steps = log2_exact(n);
  spec.oracle = "sort";
  return spec;
}

/// The same merge in the basic model: each cell stores the effective
/// address for the next generation (+n/2 in the left half, -n/2 in the
/// right half initially) and derives the following one from |p|/2.
inline AlgorithmSpec alg_bitonic_merge_basic(std::size_t n, std::vector<std::int64_t> data = {}) {
  require_at_least(n, 2, "bitonic-basic");
  require_power_of_two(n, "bitonic-basic");
  if (data.empty()) data = default_bitonic_input(n);
  require_size(data, n, "bitonic-basic");

  AlgorithmSpec spec;
  spec.name = "bitonic-basic";
  spec.topology = Topology::ring(n);
  spec.initializer = [data, n] {
    Configuration cfg = ring_config(data, one_pointer(0));
    const auto half = static_cast<std::int64_t>(n / 2);
    for (Index i = 0; i < n; ++i) cfg.states[i].pointers = one_pointer(i < n / 2 ? half : -half);
    return cfg;
  };
  spec.rules.params = {{"n", static_cast<std::int64_t>(n)}};
  spec.rules.data_rule = [](const RuleContext& c) {
    const std::int64_t p = c.self.ptr();
    if (p == 0) return c.self.data;
    return detail::compare_exchange(c, p > 0);
  };
  spec.rules.pointer_rule = [](const RuleContext& c) {
    const std::int64_t q = std::abs(c.self.ptr()) / 2;
    return one_pointer((static_cast<std::int64_t>(c.index) & q) == 0 ? q : -q);
  };
  spec.halt = Stop::after(log2_exact(n));
  spec.halt_description = "steps: log2 n";
  spec.expected_steps = log2_exact(n);
  spec.oracle = "sort";
  return spec;
}

}  // namespace gca
