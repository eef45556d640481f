#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gca/algorithms/spec.hpp"

namespace gca {

enum class ReduceOp { sum, max, min, bit_and, bit_or, avg };

inline const char* to_string(ReduceOp op) {
  switch (op) {
    case ReduceOp::sum: return "sum";
    case ReduceOp::max: return "max";
    case ReduceOp::min: return "min";
    case ReduceOp::bit_and: return "and";
    case ReduceOp::bit_or: return "or";
    case ReduceOp::avg: return "avg";
  }
  return "?";
}

// avg is carried as a sum; the division happens when comparing results.
inline std::int64_t combine(ReduceOp op, std::int64_t a, std::int64_t b) {
  switch (op) {
    case ReduceOp::sum:
    case ReduceOp::avg: return a + b;
    case ReduceOp::max: return std::max(a, b);
    case ReduceOp::min: return std::min(a, b);
    case ReduceOp::bit_and: return a & b;
    case ReduceOp::bit_or: return a | b;
  }
  return a;
}

enum class MaxPointer { constant, increment, doubling, half, random };

/// Global maximum by d' = max(d, d*). With the constant pointer +1 the
/// maximum travels one cell per step and everybody has it after n-1 steps.
inline AlgorithmSpec alg_max(std::size_t n, std::vector<std::int64_t> data = {},
                             MaxPointer pointer = MaxPointer::constant, std::uint64_t seed = 0) {
  require_at_least(n, 2, "max");
  if (data.empty()) {
    data.resize(n);
    std::iota(data.begin(), data.end(), 0);
  }
  require_size(data, n, "max");
  const auto nn = static_cast<std::int64_t>(n);

  AlgorithmSpec spec;
  spec.name = "max";
  spec.topology = Topology::ring(n);
  spec.initializer = [data] { return ring_config(data, one_pointer(1)); };
  spec.rules.params = {{"n", nn}};
  spec.rules.data_rule = [](const RuleContext& c) {
    return DataValue(std::max(c.self.data.as_int(), c.neighbor().data.as_int()));
  };
  switch (pointer) {
    case MaxPointer::constant:
      break;
    case MaxPointer::half:
      spec.rules.pointer_rule = [](const RuleContext& c) { return one_pointer(c.n() / 2); };
      break;
    case MaxPointer::increment:
      spec.rules.pointer_rule = [](const RuleContext& c) { return one_pointer(wrap(c.self.ptr() + 1, c.n())); };
      break;
    case MaxPointer::doubling:
      spec.rules.pointer_rule = [](const RuleContext& c) { return one_pointer(wrap(2 * c.self.ptr(), c.n())); };
      break;
    case MaxPointer::random:
      spec.rules.pointer_rule = [seed](const RuleContext& c) {
        return one_pointer(keyed_uniform(seed, c.index, c.time, 1, c.n() - 1));
      };
      break;
  }
  const std::int64_t top = *std::max_element(data.begin(), data.end());
  if (pointer == MaxPointer::constant) {
    spec.halt = Stop::after(n - 1);
    spec.halt_description = "steps: n-1";
    spec.expected_steps = n - 1;
  } else if (pointer == MaxPointer::half) {
    // Reads +1 once, then n/2 forever: the value settles over a window of
    // four cells, which is the global maximum only for n <= 4.
    spec.halt = Stop::fixed_point();
    spec.halt_description = "fixed point";
  } else {
    spec.halt = Stop::when([top](const Configuration& c) {
      return std::all_of(c.states.begin(), c.states.end(), [top](const CellState& q) { return q.data.as_int() == top; });
    });
    spec.halt_description = "predicate: all cells hold the maximum";
  }
  spec.oracle = "reduce-max";
  return spec;
}

/// Tree reduction by pointer jumping: p = 1, 2, 4, ..., n/2, 0. Once p is
/// 0 the cell stops combining.
inline AlgorithmSpec alg_reduce(std::size_t n, ReduceOp op, std::vector<std::int64_t> data = {}) {
  const std::string name = std::string("reduce-") + to_string(op);
  if (n < 2) throw std::invalid_argument(name + ": n=" + std::to_string(n) + " violates 1 <= m < n");
  require_power_of_two(n, name);
  if (data.empty()) data.assign(n, 1);
  require_size(data, n, name);

  AlgorithmSpec spec;
  spec.name = name;
  spec.topology = Topology::ring(n);
  spec.initializer = [data] { return ring_config(data, one_pointer(1)); };
  spec.rules.params = {{"n", static_cast<std::int64_t>(n)}};
  spec.rules.data_rule = [op](const RuleContext& c) {
    if (c.self.ptr() == 0) return c.self.data;
    return DataValue(combine(op, c.self.data.as_int(), c.neighbor().data.as_int()));
  };
  spec.rules.pointer_rule = [](const RuleContext& c) { return one_pointer(wrap(2 * c.self.ptr(), c.n())); };
  spec.halt = Stop::after(log2_exact(n));
  spec.halt_description = "steps: log2 n";
  spec.expected_steps = log2_exact(n);
  spec.oracle = name;
  return spec;
}

/// Horn's prefix sum: p = -1, -2, -4, ..., -n/2, 0; cell i adds its
/// neighbor's value while i >= -p.
inline AlgorithmSpec alg_prefix_sum_horn(std::size_t n, std::vector<std::int64_t> data = {}) {
  if (n < 2) throw std::invalid_argument("horn: n=" + std::to_string(n) + " violates 1 <= m < n");
  require_power_of_two(n, "horn");
  if (data.empty()) data.assign(n, 1);
  require_size(data, n, "horn");

  AlgorithmSpec spec;
  spec.name = "horn";
  spec.topology = Topology::ring(n);
  spec.initializer = [data] { return ring_config(data, one_pointer(-1)); };
  spec.rules.params = {{"n", static_cast<std::int64_t>(n)}};
  spec.rules.data_rule = [](const RuleContext& c) {
    const std::int64_t p = c.self.ptr();
    if (p != 0 && static_cast<std::int64_t>(c.index) >= -p)
      return DataValue(c.self.data.as_int() + c.neighbor().data.as_int());
    return c.self.data;
  };
  spec.rules.pointer_rule = [](const RuleContext& c) {
    return one_pointer(normalize_relative(2 * c.self.ptr(), c.n()));
  };
  spec.halt = Stop::after(log2_exact(n));
  spec.halt_description = "steps: log2 n";
  spec.expected_steps = log2_exact(n);
  spec.oracle = "scan";
  return spec;
}

}  // namespace gca
