#pragma once

// Algorithms addressable by name, as used by the command line.

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gca/algorithms/bitonic.hpp"
#include "gca/algorithms/fft.hpp"
#include "gca/algorithms/reduction.hpp"
#include "gca/algorithms/xor.hpp"
#include "gca/firing/firing.hpp"

namespace gca {

class UnknownAlgorithm : public std::invalid_argument {
 public:
  explicit UnknownAlgorithm(const std::string& name) : std::invalid_argument("unknown algorithm '" + name + "'") {}
};

struct CatalogParams {
  std::size_t n = 0;  // 0: the algorithm's default size
  std::optional<Variant> variant;
  std::vector<std::int64_t> data;
  std::optional<std::uint64_t> seed;
  Index general_at = 0;
  std::uint64_t introduce_at = 1;
  std::int64_t initial_pointer = 0;
  std::int64_t a = 9;
  std::int64_t b = 1;
  std::string rings;  // ring layout text; empty: the two-ring example
};

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {
      "max", "max-inc", "max-double", "max-half", "max-random",
      "reduce-sum", "reduce-max", "reduce-min", "reduce-and", "reduce-or", "reduce-avg",
      "horn", "bitonic", "bitonic-basic",
      "xor2d-r1", "xor2d-r2", "xor2d-r3", "xor2d-r4", "xor2d-r5", "xor2d-r6", "xor2d-r7", "xor2d-r8",
      "xor2d-r7s", "xor2d-r8s", "xor2d-B", "xor2d-C", "xor2d-D", "xor2d-E", "xor2d-F", "xor2d-G", "xor2d-H",
      "xor-plain", "xor1d-basic", "xor1d-general", "fft",
      "firing-wave", "firing-rings", "firing-jump-v1", "firing-jump-v2"};
  return names;
}

inline const char* kDefaultRings = "2,4,6*\n1,3,5,7*\n";

inline std::size_t default_size(const std::string& name) {
  if (name.rfind("xor2d-", 0) == 0) return 32;
  if (name == "xor-plain") return 65;
  if (name.rfind("xor1d-", 0) == 0) return 31;
  if (name == "firing-rings" || name == "firing-jump-v2") return 9;
  return 8;
}

namespace detail {

inline void require_variant(const CatalogParams& p, std::initializer_list<Variant> allowed, const std::string& name) {
  if (!p.variant) return;
  for (const auto v : allowed)
    if (v == *p.variant) return;
  throw std::invalid_argument(name + ": model variant '" + to_string(*p.variant) + "' is not available");
}

inline std::vector<std::complex<double>> fft_input(std::size_t n, const CatalogParams& p) {
  std::vector<std::complex<double>> x(n);
  if (p.seed) {
    std::mt19937_64 gen(*p.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : x) v = {u(gen), u(gen)};
  } else if (!p.data.empty()) {
    require_size(p.data, n, "fft");
    for (std::size_t i = 0; i < n; ++i) x[i] = {static_cast<double>(p.data[i]), 0.0};
  } else {
    for (std::size_t i = 0; i < n; ++i) x[i] = {static_cast<double>(i), 0.0};
  }
  return x;
}

}  // namespace detail

inline AlgorithmSpec make_algorithm(const std::string& name, const CatalogParams& p = {}) {
  const std::size_t n = p.n ? p.n : default_size(name);
  const auto& d = p.data;
  using detail::require_variant;

  if (name == "max" || name == "max-inc" || name == "max-double" || name == "max-half" || name == "max-random") {
    require_variant(p, {Variant::basic}, name);
    MaxPointer mp = MaxPointer::constant;
    if (name == "max-inc") mp = MaxPointer::increment;
    if (name == "max-double") mp = MaxPointer::doubling;
    if (name == "max-half") mp = MaxPointer::half;
    if (name == "max-random") {
      if (!p.seed) throw std::invalid_argument("max-random: a seed is required");
      mp = MaxPointer::random;
    }
    auto spec = alg_max(n, d, mp, p.seed.value_or(0));
    spec.name = name;
    return spec;
  }
  if (name.rfind("reduce-", 0) == 0) {
    require_variant(p, {Variant::basic}, name);
    const std::string op = name.substr(7);
    ReduceOp r;
    if (op == "sum") r = ReduceOp::sum;
    else if (op == "max") r = ReduceOp::max;
    else if (op == "min") r = ReduceOp::min;
    else if (op == "and") r = ReduceOp::bit_and;
    else if (op == "or") r = ReduceOp::bit_or;
    else if (op == "avg") r = ReduceOp::avg;
    else throw UnknownAlgorithm(name);
    return alg_reduce(n, r, d);
  }
  if (name == "horn") {
    require_variant(p, {Variant::basic}, name);
    return alg_prefix_sum_horn(n, d);
  }
  if (name == "bitonic" || name == "bitonic-basic") {
    require_variant(p, {Variant::basic, Variant::general}, name);
    const bool basic = p.variant ? *p.variant == Variant::basic : name == "bitonic-basic";
    return basic ? alg_bitonic_merge_basic(n, d) : alg_bitonic_merge(n, d);
  }
  if (name.rfind("xor2d-", 0) == 0) {
    require_variant(p, {Variant::general}, name);
    const std::string r = name.substr(6);
    if (r.size() == 1 && r[0] >= 'B' && r[0] <= 'E') return alg_xor_timedep(n, r[0], d);
    if (r.size() == 1 && r[0] >= 'F' && r[0] <= 'H') return alg_xor_spacedep(n, r[0], d);
    if ((r.size() == 2 || (r.size() == 3 && r[2] == 's')) && r[0] == 'r' && r[1] >= '1' && r[1] <= '8') {
      const bool reseed = r.size() == 3;
      if (reseed && r[1] != '7' && r[1] != '8') throw UnknownAlgorithm(name);
      return alg_xor2d(n, XorPointerRule::numbered(r[1] - '0', reseed), d);
    }
    throw UnknownAlgorithm(name);
  }
  if (name == "xor-plain") {
    require_variant(p, {Variant::plain}, name);
    return alg_xor_plain(n, p.a, p.b, d);
  }
  if (name == "xor1d-basic" || name == "xor1d-general") {
    require_variant(p, {Variant::basic, Variant::general}, name);
    const Variant v = p.variant.value_or(name == "xor1d-basic" ? Variant::basic : Variant::general);
    return alg_xor1d(n, v);
  }
  if (name == "fft") {
    require_variant(p, {Variant::general}, name);
    require_power_of_two(n, "fft");
    return alg_fft(log2_exact(n), detail::fft_input(n, p));
  }
  if (name == "firing-wave") {
    require_variant(p, {Variant::basic}, name);
    return firing::firing_wave(n, p.general_at);
  }
  if (name == "firing-rings") {
    require_variant(p, {Variant::basic}, name);
    return firing::firing_rings(n, p.rings.empty() ? std::string(kDefaultRings) : p.rings);
  }
  if (name == "firing-jump-v1") {
    require_variant(p, {Variant::basic}, name);
    return firing::firing_jump_v1(n, p.general_at);
  }
  if (name == "firing-jump-v2") {
    require_variant(p, {Variant::basic}, name);
    return firing::firing_jump_v2(n, p.general_at, p.introduce_at, p.initial_pointer);
  }
  throw UnknownAlgorithm(name);
}

}  // namespace gca
