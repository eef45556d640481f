#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gca/core/address.hpp"
#include "gca/core/state.hpp"

namespace gca {

enum class Variant : std::uint8_t { basic, general, plain };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::basic: return "basic";
    case Variant::general: return "general";
    case Variant::plain: return "plain";
  }
  return "?";
}

/// Named integer constants visible to every rule (n, delta, A, B, ...).
using Params = std::map<std::string, std::int64_t, std::less<>>;

inline std::int64_t param(const Params& params, std::string_view name, std::int64_t fallback = 0) {
  const auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

/// Inputs to an address modifier: everything of the cell except its
/// dynamic neighbors, which are not known yet.
struct AddressContext {
  Index index;
  const CellState& self;
  std::uint64_t time;
  std::span<const CellState> locals;  // W(i,t), in stencil order
  const Topology& topology;
  const Params& params;

  std::int64_t n() const { return static_cast<std::int64_t>(topology.size()); }
};

struct RuleContext {
  Index index;
  const CellState& self;
  std::span<const CellState> neighbors;  // Q*_i, one per arm
  std::span<const Address> effective;    // addresses used to read `neighbors`
  std::uint64_t time;
  std::span<const CellState> locals;
  const Topology& topology;
  const Params& params;

  std::int64_t n() const { return static_cast<std::int64_t>(topology.size()); }
  const CellState& neighbor(std::size_t k = 0) const { return neighbors[k]; }
};

using DataRule = std::function<DataValue(const RuleContext&)>;
using PointerRule = std::function<std::vector<Address>(const RuleContext&)>;
using AddressModifier = std::function<std::vector<Address>(const AddressContext&)>;
using PointerFunction = std::function<std::vector<Address>(Index, const CellState&)>;

/// One automaton: rules plus the shape of its cell states.
///   basic:   effective addresses are the stored pointers
///   general: `modifier` maps stored pointers (and d, i, t, W) to addresses
///   plain:   `pointer_function` maps (i, q) to addresses; no stored pointers
struct RuleSet {
  Variant variant = Variant::basic;
  std::size_t arms = 1;
  std::size_t stored_pointers = 1;
  std::vector<Address> stencil;
  DataRule data_rule;
  PointerRule pointer_rule;  // empty: pointers kept
  AddressModifier modifier;
  PointerFunction pointer_function;
  Params params;
};

/// Pure pseudo-random draw in [lo, hi] keyed by (seed, i, t). Rules that
/// need randomness use this so Phase-1 evaluation stays order independent.
inline std::int64_t keyed_uniform(std::uint64_t seed, Index i, std::uint64_t t, std::int64_t lo,
                                  std::int64_t hi) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(t)};
  std::mt19937_64 gen(seq);
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen);
}

}  // namespace gca
