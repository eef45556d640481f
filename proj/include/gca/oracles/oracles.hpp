#pragma once

// Reference implementations that share no stepping code with the engine.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gca/algorithms/reduction.hpp"
#include "gca/algorithms/spec.hpp"

#ifndef GCA_GOLDEN_DIR
#define GCA_GOLDEN_DIR "golden/v1"
#endif

namespace gca::oracle {

inline std::int64_t oracle_reduce(const std::vector<std::int64_t>& data, ReduceOp op) {
  if (data.empty()) throw std::invalid_argument("oracle_reduce: empty input");
  std::int64_t acc = data.front();
  for (std::size_t i = 1; i < data.size(); ++i) {
    const std::int64_t x = data[i];
    switch (op) {
      case ReduceOp::sum:
      case ReduceOp::avg: acc += x; break;
      case ReduceOp::max: acc = x > acc ? x : acc; break;
      case ReduceOp::min: acc = x < acc ? x : acc; break;
      case ReduceOp::bit_and: acc &= x; break;
      case ReduceOp::bit_or: acc |= x; break;
    }
  }
  return acc;
}

inline std::vector<std::int64_t> oracle_scan(const std::vector<std::int64_t>& data) {
  std::vector<std::int64_t> out(data.size());
  std::int64_t s = 0;
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = s += data[i];
  return out;
}

inline std::vector<std::int64_t> oracle_sort(std::vector<std::int64_t> data) {
  std::sort(data.begin(), data.end());
  return data;
}

/// At most two direction changes around the cyclic sequence (equal
/// neighbors do not count as a direction).
inline bool oracle_is_bitonic(const std::vector<std::int64_t>& data) {
  std::vector<int> dirs;
  const std::size_t n = data.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = data[i], b = data[(i + 1) % n];
    if (a != b) dirs.push_back(b > a ? 1 : -1);
  }
  std::size_t changes = 0;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    if (dirs[i] != dirs[(i + 1) % dirs.size()]) ++changes;
  return changes <= 2;
}

/// Bitonic by construction: ascending run then descending run of random
/// values, cyclically shifted by a random amount.
template <class Rng>
std::vector<std::int64_t> random_bitonic(std::size_t n, Rng& rng, std::int64_t lo = -1000, std::int64_t hi = 1000) {
  std::uniform_int_distribution<std::int64_t> val(lo, hi);
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = val(rng);
  const std::size_t split = std::uniform_int_distribution<std::size_t>(0, n)(rng);
  std::sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(split));
  std::sort(v.begin() + static_cast<std::ptrdiff_t>(split), v.end(), std::greater<>());
  if (n) std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)), v.end());
  return v;
}

/// Replays the cell program of the FFT with two buffers: for step = 1, 2,
/// ..., n/2 every position combines with position xor step.
inline std::vector<std::complex<double>> oracle_fft_recurrence(const std::vector<std::complex<double>>& input,
                                                               unsigned k) {
  const std::size_t n = std::size_t{1} << k;
  if (input.size() != n) throw std::invalid_argument("oracle_fft_recurrence: input size is not 2^k");
  std::vector<std::complex<double>> cur = input, nxt(n);
  for (std::int64_t step = 1; step < static_cast<std::int64_t>(n); step *= 2) {
    for (std::int64_t pos = 0; pos < static_cast<std::int64_t>(n); ++pos) {
      const std::int64_t other = (pos ^ step) - pos;
      const auto me = cur[static_cast<std::size_t>(pos)];
      const auto it = cur[static_cast<std::size_t>(pos + other)];
      const double a = -std::numbers::pi / static_cast<double>(step) * static_cast<double>(pos & (step - 1));
      const double wr = std::cos(a), wi = std::sin(a);
      double r, i;
      if (other > 0) {
        r = me.real() + wr * it.real() - wi * it.imag();
        i = me.imag() + wr * it.imag() + wi * it.real();
      } else {
        r = it.real() - (wr * me.real() - wi * me.imag());
        i = it.imag() - (wr * me.imag() + wi * me.real());
      }
      nxt[static_cast<std::size_t>(pos)] = {r, i};
    }
    std::swap(cur, nxt);
  }
  return cur;
}

/// X_j = sum_m x_m exp(-2 pi i j m / n).
inline std::vector<std::complex<double>> oracle_dft(const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> s = 0;
    for (std::size_t m = 0; m < n; ++m)
      s += x[m] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((j * m) % n) / static_cast<double>(n));
    out[j] = s;
  }
  return out;
}

inline std::vector<std::size_t> bit_reversal(unsigned k) {
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (unsigned b = 0; b < k; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (k - 1 - b);
    perm[i] = r;
  }
  return perm;
}

/// Superposition test: evolving a XOR b must equal evolving a and b
/// separately and XOR-ing, for every t <= T. Uses its own generation loop;
/// only the spec's addressing and pointer rules are borrowed.
inline bool oracle_xor_linear_check(const AlgorithmSpec& spec, const std::vector<std::int64_t>& init1,
                                    const std::vector<std::int64_t>& init2, std::uint64_t T) {
  if (!spec.data_independent_pointers)
    throw std::invalid_argument("oracle_xor_linear_check: '" + spec.name + "' has data-dependent pointers");
  const Configuration base = spec.initial();
  const std::size_t n = base.size();
  if (init1.size() != n || init2.size() != n) throw std::invalid_argument("oracle_xor_linear_check: size mismatch");

  auto seed = [&](const std::vector<std::int64_t>& d) {
    Configuration c = base;
    for (std::size_t i = 0; i < n; ++i) c.states[i].data = d[i];
    return c;
  };
  std::vector<std::int64_t> both(n);
  for (std::size_t i = 0; i < n; ++i) both[i] = init1[i] ^ init2[i];
  Configuration a = seed(init1), b = seed(init2), ab = seed(both);

  auto advance = [&](const Configuration& cur) {
    Configuration nxt = cur;
    nxt.time = cur.time + 1;
    for (std::size_t i = 0; i < n; ++i) {
      const auto eff = effective_addresses(cur, i, spec.rules);
      std::vector<CellState> nbs;
      std::int64_t x = 0;
      for (const auto& e : eff) {
        nbs.push_back(cur.states[cur.topology.resolve(i, e)]);
        x ^= nbs.back().data.as_int() & 1;
      }
      nxt.states[i].data = x;
      if (spec.rules.pointer_rule) {
        const RuleContext ctx{i, cur.states[i], nbs, eff, cur.time, {}, cur.topology, spec.rules.params};
        nxt.states[i].pointers = spec.rules.pointer_rule(ctx);
      }
    }
    return nxt;
  };
  for (std::uint64_t t = 0;; ++t) {
    for (std::size_t i = 0; i < n; ++i)
      if ((a.states[i].data.as_int() ^ b.states[i].data.as_int()) != ab.states[i].data.as_int()) return false;
    if (t == T) return true;
    a = advance(a);
    b = advance(b);
    ab = advance(ab);
  }
}

struct GoldenTrace {
  std::string algorithm;
  std::string params;
  std::string source;  // the 'source' header line
  std::vector<std::string> rows;
};

/// Golden file: '#' header lines "key: value" followed by the rows verbatim.
inline GoldenTrace parse_golden(const std::string& text) {
  GoldenTrace g;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header && line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ");
      if (colon == std::string::npos) continue;
      const std::string key = line.substr(2, colon - 2), value = line.substr(colon + 2);
      if (key == "algorithm") g.algorithm = value;
      else if (key == "params") g.params = value;
      else if (key == "source") g.source = value;
      continue;
    }
    header = false;
    g.rows.push_back(line);
  }
  if (g.source.empty()) throw std::invalid_argument("golden trace without a source tag");
  return g;
}

inline std::string golden_path(const std::string& file) { return std::string(GCA_GOLDEN_DIR) + "/" + file; }

inline GoldenTrace load_golden(const std::string& file) {
  std::ifstream in(golden_path(file));
  if (!in) throw std::runtime_error("cannot open golden file " + golden_path(file));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_golden(ss.str());
}

struct GoldenDiff {
  bool match = true;
  std::size_t row = 0;
  std::size_t column = 0;
  std::string expected;
  std::string actual;

  std::string describe() const {
    if (match) return "identical";
    return "row " + std::to_string(row) + ", column " + std::to_string(column) + ": expected '" + expected +
           "', got '" + actual + "'";
  }
};

inline GoldenDiff compare_golden(const std::vector<std::string>& rows, const GoldenTrace& golden) {
  GoldenDiff d;
  const std::size_t common = std::min(rows.size(), golden.rows.size());
  for (std::size_t r = 0; r < common; ++r) {
    const auto& a = rows[r];
    const auto& e = golden.rows[r];
    if (a == e) continue;
    std::size_t c = 0;
    while (c < a.size() && c < e.size() && a[c] == e[c]) ++c;
    return {false, r, c, e, a};
  }
  if (rows.size() != golden.rows.size())
    return {false, common, 0, common < golden.rows.size() ? golden.rows[common] : "<end>",
            common < rows.size() ? rows[common] : "<end>"};
  return d;
}

}  // namespace gca::oracle
