#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "gca/algorithms/spec.hpp"

namespace gca {

/// One butterfly of the cell program: `self` at `position` combines with the
/// partner at relative offset `other`, using twiddle angle
/// a = -pi / step * (position and (step - 1)).
inline std::complex<double> fft_butterfly(std::complex<double> self, std::complex<double> partner,
                                          std::int64_t position, std::int64_t step, std::int64_t other) {
  const double a = -std::numbers::pi / static_cast<double>(step) * static_cast<double>(position & (step - 1));
  const double wr = std::cos(a);
  const double wi = std::sin(a);
  const double r = self.real(), i = self.imag();
  const double pr = partner.real(), pi = partner.imag();
  if (other > 0) return {r + wr * pr - wi * pi, i + wr * pi + wi * pr};
  return {pr - (wr * r - wi * i), pi - (wr * i + wi * r)};
}

/// Radix-2 FFT network in the general model. The stored base is `step`
/// (1, 2, 4, ...); the partner is (i xor step) - i. The network consumes its
/// input in bit-reversed order: run on bitreverse(x) it yields DFT(x).
inline AlgorithmSpec alg_fft(unsigned k, std::vector<std::complex<double>> input = {}) {
  if (k < 1) throw std::invalid_argument("fft: k must be at least 1 (n=2^k >= 2)");
  const std::size_t n = std::size_t{1} << k;
  if (input.empty()) input.assign(n, {0.0, 0.0});
  if (input.size() != n)
    throw std::invalid_argument("fft: got " + std::to_string(input.size()) + " inputs for n=" + std::to_string(n));

  AlgorithmSpec spec;
  spec.name = "fft";
  spec.variant = Variant::general;
  spec.topology = Topology::ring(n);
  spec.initializer = [input] {
    Configuration cfg{Topology::ring(input.size()), {}, 0};
    for (const auto& x : input) cfg.states.push_back({DataValue(x), one_pointer(1)});
    return cfg;
  };
  spec.rules.variant = Variant::general;
  spec.rules.params = {{"n", static_cast<std::int64_t>(n)}};
  spec.rules.modifier = [](const AddressContext& c) {
    const auto pos = static_cast<std::int64_t>(c.index);
    return one_pointer((pos ^ c.self.ptr()) - pos);
  };
  spec.rules.data_rule = [](const RuleContext& c) {
    return DataValue(fft_butterfly(c.self.data.as_complex(), c.neighbor().data.as_complex(),
                                   static_cast<std::int64_t>(c.index), c.self.ptr(), c.effective[0].x));
  };
  spec.rules.pointer_rule = [](const RuleContext& c) { return one_pointer(2 * c.self.ptr()); };
  spec.halt = Stop::after(k);
  spec.halt_description = "steps: k";
  spec.expected_steps = k;
  spec.oracle = "fft-recurrence";
  return spec;
}

}  // namespace gca
