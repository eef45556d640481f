#pragma once

// Oracle and golden checks runnable by name from the command line.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gca/catalog.hpp"
#include "gca/io/render.hpp"
#include "gca/oracles/oracles.hpp"

namespace gca::cli {

struct VerifyResult {
  bool ok = true;
  std::string detail;  // first difference on failure
};

using VerifyFn = std::function<VerifyResult()>;

namespace detail {

inline std::vector<std::int64_t> random_ints(std::size_t n, std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> u(lo, hi);
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

inline std::string show(const std::vector<std::int64_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

inline VerifyResult first_cell_diff(const std::vector<std::int64_t>& got, const std::vector<std::int64_t>& want,
                                    const std::string& what) {
  for (std::size_t i = 0; i < want.size(); ++i)
    if (got.at(i) != want[i])
      return {false, what + ": cell " + std::to_string(i) + " expected " + std::to_string(want[i]) + ", got " +
                         std::to_string(got[i])};
  return {};
}

inline VerifyResult check_max(const std::string& name) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto data = random_ints(16, rng, -500, 500);
    CatalogParams p;
    p.n = 16;
    p.data = data;
    if (name == "max-random") p.seed = 5 + static_cast<std::uint64_t>(trial);
    const auto spec = make_algorithm(name, p);
    const auto r = spec.execute();
    auto top = oracle::oracle_reduce(data, ReduceOp::max);
    if (name == "max-half") {
      // Cell i sees cells i, i+1, i+n/2, i+1+n/2 only.
      std::vector<std::int64_t> want(16);
      for (std::size_t i = 0; i < 16; ++i)
        want[i] = std::max({data[i], data[(i + 1) % 16], data[(i + 8) % 16], data[(i + 9) % 16]});
      auto res = first_cell_diff(int_data(r.final), want, name + " on " + show(data));
      if (!res.ok) return res;
      continue;
    }
    auto res = first_cell_diff(int_data(r.final), std::vector<std::int64_t>(16, top), name + " on " + show(data));
    if (!res.ok) return res;
  }
  return {};
}

inline VerifyResult check_reduce(const std::string& name) {
  const std::string opname = name.substr(7);
  const ReduceOp op = opname == "sum"   ? ReduceOp::sum
                      : opname == "max" ? ReduceOp::max
                      : opname == "min" ? ReduceOp::min
                      : opname == "and" ? ReduceOp::bit_and
                      : opname == "or"  ? ReduceOp::bit_or
                                        : ReduceOp::avg;
  std::mt19937_64 rng(12);
  for (std::size_t n : {2u, 4u, 16u, 64u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto data = random_ints(n, rng, 0, 1 << 16);
      const auto r = make_algorithm(name, {.n = n, .data = data}).execute();
      if (r.steps != log2_exact(n)) return {false, name + ": halted after " + std::to_string(r.steps) + " steps"};
      const auto want = oracle::oracle_reduce(data, op);
      auto res = first_cell_diff(int_data(r.final), std::vector<std::int64_t>(n, want), name + " on " + show(data));
      if (!res.ok) return res;
    }
  }
  return {};
}

inline VerifyResult check_horn() {
  std::mt19937_64 rng(13);
  for (std::size_t n : {2u, 8u, 32u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto data = random_ints(n, rng, -100, 100);
      const auto r = make_algorithm("horn", {.n = n, .data = data}).execute();
      auto res = first_cell_diff(int_data(r.final), oracle::oracle_scan(data), "horn on " + show(data));
      if (!res.ok) return res;
    }
  }
  return {};
}

inline VerifyResult check_bitonic(const std::string& name) {
  std::mt19937_64 rng(14);
  for (std::size_t n : {4u, 16u, 64u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto data = oracle::random_bitonic(n, rng);
      const auto r = make_algorithm(name, {.n = n, .data = data}).execute();
      auto res = first_cell_diff(int_data(r.final), oracle::oracle_sort(data), name + " on " + show(data));
      if (!res.ok) return res;
    }
  }
  return {};
}

inline VerifyResult check_xor_linear(const std::string& name) {
  std::mt19937_64 rng(15);
  const std::size_t n = 16;
  const auto spec = make_algorithm(name, {.n = n});
  for (int trial = 0; trial < 3; ++trial) {
    const auto a = random_ints(n * n, rng, 0, 1), b = random_ints(n * n, rng, 0, 1);
    if (!oracle::oracle_xor_linear_check(spec, a, b, 2 * n)) return {false, name + ": superposition fails"};
  }
  // The engine must agree with the superposition reference on the cross.
  const auto cross = cross_grid(n);
  const auto zero = std::vector<std::int64_t>(n * n, 0);
  if (!oracle::oracle_xor_linear_check(make_algorithm(name, {.n = n, .data = cross}), cross, zero, 2 * n))
    return {false, name + ": cross evolution differs"};
  return {};
}

// Independent plain-model loop: p = A on white cells, B on black ones.
inline VerifyResult check_xor_plain() {
  const std::size_t n = 17;
  const std::int64_t A = 5, B = 2;
  const auto spec = make_algorithm("xor-plain", {.n = n, .a = A, .b = B});
  const auto r = spec.execute_steps(20, {.record_states = true});
  auto g = cross_grid(n);
  const auto nn = static_cast<std::int64_t>(n);
  for (std::uint64_t t = 0; t <= 20; ++t) {
    auto res = first_cell_diff(int_data(r.trace.snapshots[t]), g, "xor-plain t=" + std::to_string(t));
    if (!res.ok) return res;
    std::vector<std::int64_t> next(n * n);
    for (std::int64_t y = 0; y < nn; ++y)
      for (std::int64_t x = 0; x < nn; ++x) {
        const std::int64_t p = g[static_cast<std::size_t>(y * nn + x)] ? B : A;
        auto at = [&](std::int64_t xx, std::int64_t yy) {
          return g[static_cast<std::size_t>(((yy % nn + nn) % nn) * nn + (xx % nn + nn) % nn)];
        };
        next[static_cast<std::size_t>(y * nn + x)] = at(x, y - p) ^ at(x + p, y) ^ at(x, y + p) ^ at(x - p, y);
      }
    g = next;
  }
  return {};
}

inline VerifyResult check_golden_rows(const std::vector<std::string>& rows, const std::string& file) {
  const auto diff = oracle::compare_golden(rows, oracle::load_golden(file));
  if (!diff.match) return {false, file + ": " + diff.describe()};
  return {};
}

inline VerifyResult check_xor1d(const std::string& name) {
  const auto spec = make_algorithm(name, {.n = 31});
  const auto r = spec.execute({.record_states = true});
  return check_golden_rows(io::render_line_rows(r.trace.snapshots, spec.rules), name + ".OUT_c.txt");
}

inline VerifyResult check_fft() {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(-1, 1);
  for (unsigned k = 1; k <= 5; ++k) {
    const std::size_t n = std::size_t{1} << k;
    std::vector<std::complex<double>> x(n);
    for (auto& v : x) v = {u(rng), u(rng)};
    const auto perm = oracle::bit_reversal(k);
    std::vector<std::complex<double>> xr(n);
    for (std::size_t i = 0; i < n; ++i) xr[i] = x[perm[i]];
    const auto r = alg_fft(k, xr).execute();
    const auto rec = oracle::oracle_fft_recurrence(xr, k);
    const auto dft = oracle::oracle_dft(x);
    for (std::size_t i = 0; i < n; ++i) {
      if (!(r.final.states[i].data == DataValue(rec[i])))
        return {false, "fft k=" + std::to_string(k) + ": recurrence differs at " + std::to_string(i)};
      const auto got = r.final.states[i].data.as_complex();
      if (std::abs(got.real() - dft[i].real()) > 1e-9 || std::abs(got.imag() - dft[i].imag()) > 1e-9)
        return {false, "fft k=" + std::to_string(k) + ": DFT differs at " + std::to_string(i)};
    }
  }
  return {};
}

inline VerifyResult check_firing_wave() {
  for (std::size_t n = 2; n <= 16; ++n)
    for (Index g = 0; g < n; ++g) {
      const auto r = firing::firing_wave(n, g).execute();
      if (r.steps != n + 1)
        return {false, "firing-wave n=" + std::to_string(n) + " g=" + std::to_string(g) + ": fired at t=" +
                           std::to_string(r.steps)};
    }
  return {};
}

inline VerifyResult check_firing_rings() {
  const auto layout = firing::parse_ring_layout(kDefaultRings);
  const auto r = firing::firing_rings(9, layout).execute_steps(17, {.record_states = true});
  const std::vector<std::vector<std::uint64_t>> want = {{4, 7, 10, 13, 16}, {5, 9, 13, 17}};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto got = firing::ring_fire_times(r.trace.snapshots, layout.rings[k]);
    if (got != want[k]) {
      std::vector<std::int64_t> g(got.begin(), got.end());
      return {false, "firing-rings: ring " + std::to_string(k) + " fired at " + show(g)};
    }
  }
  return {};
}

inline VerifyResult check_jump_v1() {
  const auto r = firing::firing_jump_v1(8, 0).execute({.record_states = true});
  auto res = check_golden_rows(io::render_table_rows(r.trace.snapshots), "firing-jump-v1.n8.txt");
  if (!res.ok) return res;
  for (std::size_t n = 2; n <= 64; n *= 2) {
    const auto rr = firing::firing_jump_v1(n, 0).execute();
    if (rr.steps != 1 + log2_exact(n))
      return {false, "firing-jump-v1 n=" + std::to_string(n) + ": fired at t=" + std::to_string(rr.steps)};
  }
  return {};
}

inline VerifyResult check_jump_v2() {
  for (const auto& [file, p0] : {std::pair{"firing-jump-v2.n9.a.txt", 0}, {"firing-jump-v2.n9.b.txt", -1}}) {
    const auto r = firing::firing_jump_v2(9, 4, 1, p0).execute({.record_states = true});
    auto res = check_golden_rows(io::render_table_rows(r.trace.snapshots), file);
    if (!res.ok) return res;
  }
  return {};
}

}  // namespace detail

/// One check per cataloged algorithm.
inline const std::map<std::string, VerifyFn>& verify_registry() {
  static const std::map<std::string, VerifyFn> reg = [] {
    std::map<std::string, VerifyFn> m;
    for (const auto& name : algorithm_names()) {
      if (name.rfind("max", 0) == 0) m[name] = [name] { return detail::check_max(name); };
      else if (name.rfind("reduce-", 0) == 0) m[name] = [name] { return detail::check_reduce(name); };
      else if (name == "horn") m[name] = detail::check_horn;
      else if (name.rfind("bitonic", 0) == 0) m[name] = [name] { return detail::check_bitonic(name); };
      else if (name.rfind("xor2d-", 0) == 0) m[name] = [name] { return detail::check_xor_linear(name); };
      else if (name == "xor-plain") m[name] = detail::check_xor_plain;
      else if (name.rfind("xor1d-", 0) == 0) m[name] = [name] { return detail::check_xor1d(name); };
      else if (name == "fft") m[name] = detail::check_fft;
      else if (name == "firing-wave") m[name] = detail::check_firing_wave;
      else if (name == "firing-rings") m[name] = detail::check_firing_rings;
      else if (name == "firing-jump-v1") m[name] = detail::check_jump_v1;
      else if (name == "firing-jump-v2") m[name] = detail::check_jump_v2;
    }
    return m;
  }();
  return reg;
}

}  // namespace gca::cli
