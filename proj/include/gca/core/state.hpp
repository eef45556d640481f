#pragma once

#include <bit>
#include <complex>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <variant>
#include <vector>

#include "gca/core/address.hpp"

namespace gca {

enum class DataKind : std::uint8_t { integer, real, complex };

/// Data part d of a cell state. Symbolic states (firing S/G/A/F) are stored
/// as integers.
class DataValue {
 public:
  DataValue() = default;
  template <std::integral T>
  DataValue(T v) : v_(static_cast<std::int64_t>(v)) {}  // NOLINT(implicit)
  template <std::floating_point T>
  DataValue(T v) : v_(static_cast<double>(v)) {}  // NOLINT(implicit)
  DataValue(std::complex<double> v) : v_(v) {}  // NOLINT(implicit)
  template <class E>
    requires std::is_enum_v<E>
  DataValue(E v) : v_(static_cast<std::int64_t>(v)) {}  // NOLINT(implicit)

  DataKind kind() const { return static_cast<DataKind>(v_.index()); }
  std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
  double as_real() const { return std::get<double>(v_); }
  std::complex<double> as_complex() const { return std::get<std::complex<double>>(v_); }

  // Floating values compare by bit pattern so that fixed-point detection has
  // no hidden tolerance and NaN payloads compare equal to themselves.
  friend bool operator==(const DataValue& a, const DataValue& b) {
    if (a.v_.index() != b.v_.index()) return false;
    switch (a.kind()) {
      case DataKind::integer:
        return a.as_int() == b.as_int();
      case DataKind::real:
        return std::bit_cast<std::uint64_t>(a.as_real()) == std::bit_cast<std::uint64_t>(b.as_real());
      case DataKind::complex: {
        const auto x = a.as_complex(), y = b.as_complex();
        return std::bit_cast<std::uint64_t>(x.real()) == std::bit_cast<std::uint64_t>(y.real()) &&
               std::bit_cast<std::uint64_t>(x.imag()) == std::bit_cast<std::uint64_t>(y.imag());
      }
    }
    return false;
  }

 private:
  std::variant<std::int64_t, double, std::complex<double>> v_{std::int64_t{0}};
};

/// q = (d, P). Plain-model states carry no pointers.
struct CellState {
  DataValue data;
  std::vector<Address> pointers;

  std::int64_t ptr(std::size_t k = 0) const { return pointers.at(k).x; }

  friend bool operator==(const CellState&, const CellState&) = default;
};

struct Configuration {
  Topology topology;
  std::vector<CellState> states;
  std::uint64_t time = 0;

  std::size_t size() const { return states.size(); }
  CellState& operator[](Index i) { return states[i]; }
  const CellState& operator[](Index i) const { return states[i]; }

  static Configuration uniform(const Topology& topology, const CellState& q) {
    return {topology, std::vector<CellState>(topology.size(), q), 0};
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Data field of every cell as integers (throws for non-integer data).
inline std::vector<std::int64_t> int_data(const Configuration& cfg) {
  std::vector<std::int64_t> out;
  out.reserve(cfg.size());
  for (const auto& q : cfg.states) out.push_back(q.data.as_int());
  return out;
}

/// First pointer x-component of every cell.
inline std::vector<std::int64_t> first_pointers(const Configuration& cfg) {
  std::vector<std::int64_t> out;
  out.reserve(cfg.size());
  for (const auto& q : cfg.states) out.push_back(q.pointers.empty() ? 0 : q.ptr(0));
  return out;
}

}  // namespace gca
