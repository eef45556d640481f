#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gca/core/engine.hpp"

namespace gca {

/// A cataloged algorithm: automaton, initial configuration and the rule that
/// says when it is done.
struct AlgorithmSpec {
  std::string name;
  Variant variant = Variant::basic;
  std::size_t arms = 1;
  Topology topology;
  std::function<Configuration()> initializer;
  RuleSet rules;
  Stop halt;
  std::string halt_description;
  std::optional<std::uint64_t> expected_steps;  // when the halt is a closed form
  std::string oracle;                           // name of the checking oracle
  std::vector<ScheduledEvent> events;
  bool data_independent_pointers = true;

  Configuration initial() const { return initializer(); }

  RunResult execute(RunOptions opts = {}) const {
    opts.events.insert(opts.events.end(), events.begin(), events.end());
    return run(initial(), rules, halt, opts);
  }
  RunResult execute_steps(std::uint64_t steps, RunOptions opts = {}) const {
    opts.events.insert(opts.events.end(), events.begin(), events.end());
    return run(initial(), rules, Stop::after(steps), opts);
  }
};

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && std::has_single_bit(n); }

inline unsigned log2_exact(std::size_t n) { return static_cast<unsigned>(std::countr_zero(n)); }

// Smallest k with 2^k >= n.
inline unsigned log2_ceil(std::size_t n) { return n <= 1 ? 0u : static_cast<unsigned>(std::bit_width(n - 1)); }

inline void require_power_of_two(std::size_t n, const std::string& what) {
  if (!is_power_of_two(n))
    throw std::invalid_argument(what + ": n=" + std::to_string(n) + " must be a power of two");
}

inline void require_at_least(std::size_t n, std::size_t lo, const std::string& what) {
  if (n < lo) throw std::invalid_argument(what + ": n=" + std::to_string(n) + " must be at least " + std::to_string(lo));
}

inline std::vector<Address> one_pointer(std::int64_t p) { return {Address::rel(p)}; }

/// Ring configuration with the given integer data and one uniform pointer.
inline Configuration ring_config(const std::vector<std::int64_t>& data, std::vector<Address> pointers) {
  Configuration cfg{Topology::ring(data.size()), {}, 0};
  cfg.states.reserve(data.size());
  for (const auto d : data) cfg.states.push_back({DataValue(d), pointers});
  return cfg;
}

inline void require_size(const std::vector<std::int64_t>& data, std::size_t n, const std::string& what) {
  if (data.size() != n)
    throw std::invalid_argument(what + ": got " + std::to_string(data.size()) + " data values for n=" + std::to_string(n));
}

}  // namespace gca
