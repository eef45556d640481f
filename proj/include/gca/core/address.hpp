#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace gca {

using Index = std::size_t;

// Mathematical modulo: result in [0, n) for any sign of a.
constexpr std::int64_t wrap(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// Maps a into the relative address space R = {-n/2, ..., (n-1)/2}
// ("/" is integer division), keeping a mod n.
constexpr std::int64_t normalize_relative(std::int64_t a, std::int64_t n) {
  const std::int64_t r = wrap(a, n);
  return r > (n - 1) / 2 ? r - n : r;
}

// Centered residue in (-n/2, n/2]: like normalize_relative but an even n keeps
// +n/2 positive. Used by the pointer-jumping rules.
constexpr std::int64_t centered_upper(std::int64_t a, std::int64_t n) {
  const std::int64_t r = wrap(a, n);
  return r > n / 2 ? r - n : r;
}

// True when a and b denote the same offset on a ring of n cells.
constexpr bool same_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return wrap(a - b, n) == 0;
}

enum class AddressKind : std::uint8_t { relative, absolute };

/// A pointer value. On a ring only `x` is used; on a torus `(x, y)`.
struct Address {
  AddressKind kind = AddressKind::relative;
  std::int64_t x = 0;
  std::int64_t y = 0;

  static constexpr Address rel(std::int64_t x, std::int64_t y = 0) {
    return {AddressKind::relative, x, y};
  }
  static constexpr Address abs(std::int64_t x, std::int64_t y = 0) {
    return {AddressKind::absolute, x, y};
  }
  constexpr bool is_relative() const { return kind == AddressKind::relative; }

  friend constexpr bool operator==(const Address&, const Address&) = default;
};

/// 1D ring of n cells or 2D torus of w x h cells, linearized row-major.
class Topology {
 public:
  Topology() = default;

  static Topology ring(std::size_t n) {
    if (n == 0) throw std::invalid_argument("topology: ring needs at least one cell");
    return Topology(n, 1, false);
  }
  static Topology torus(std::size_t w, std::size_t h) {
    if (w == 0 || h == 0) throw std::invalid_argument("topology: torus extents must be positive");
    return Topology(w, h, true);
  }

  bool is_torus() const { return torus_; }
  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return width_ * height_; }

  Index index(std::int64_t x, std::int64_t y = 0) const {
    const auto w = static_cast<std::int64_t>(width_);
    const auto h = static_cast<std::int64_t>(height_);
    return static_cast<Index>(wrap(y, h) * w + wrap(x, w));
  }
  std::pair<std::int64_t, std::int64_t> coords(Index i) const {
    return {static_cast<std::int64_t>(i % width_), static_cast<std::int64_t>(i / width_)};
  }

  /// Absolute index reached from cell i through addr; wrapping is total.
  Index resolve(Index i, const Address& addr) const {
    if (!addr.is_relative()) return index(addr.x, torus_ ? addr.y : 0);
    const auto [x, y] = coords(i);
    return index(x + addr.x, torus_ ? y + addr.y : 0);
  }

  /// Relative addresses mapped per axis into R; absolute ones wrapped into I.
  Address normalize(const Address& addr) const {
    const auto w = static_cast<std::int64_t>(width_);
    const auto h = static_cast<std::int64_t>(height_);
    if (addr.is_relative())
      return Address::rel(normalize_relative(addr.x, w), torus_ ? normalize_relative(addr.y, h) : 0);
    return Address::abs(wrap(addr.x, w), torus_ ? wrap(addr.y, h) : 0);
  }

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  Topology(std::size_t w, std::size_t h, bool torus) : width_(w), height_(h), torus_(torus) {}

  std::size_t width_ = 1;
  std::size_t height_ = 1;
  bool torus_ = false;
};

inline Index resolve(const Topology& topology, Index i, const Address& addr) {
  return topology.resolve(i, addr);
}

}  // namespace gca
