#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "gca/firing/firing.hpp"
#include "gca/io/render.hpp"
#include "gca/oracles/oracles.hpp"

using namespace gca;
using namespace gca::firing;

namespace {

RunOptions states() {
  RunOptions o;
  o.record_states = true;
  return o;
}

std::size_t count_visible(const Configuration& c, const std::vector<Index>& cells, std::int64_t v) {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [&](Index i) { return visible(c.states[i].data.as_int()) == v; }));
}

std::vector<Index> all_cells(std::size_t n) {
  std::vector<Index> v(n);
  std::iota(v.begin(), v.end(), Index{0});
  return v;
}

RingLayout random_layout(std::mt19937_64& rng, std::size_t& n_out) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  const std::size_t rings = pick(1, 5);
  std::vector<std::size_t> lengths(rings);
  std::size_t used = 0;
  for (auto& l : lengths) used += l = pick(2, 12);
  const std::size_t n = std::min<std::size_t>(64, used + pick(0, 10));
  if (used > n) return random_layout(rng, n_out);
  std::vector<Index> cells(n);
  std::iota(cells.begin(), cells.end(), Index{0});
  std::shuffle(cells.begin(), cells.end(), rng);
  RingLayout layout;
  std::size_t at = 0;
  for (auto l : lengths) {
    Ring r;
    r.cells.assign(cells.begin() + static_cast<std::ptrdiff_t>(at), cells.begin() + static_cast<std::ptrdiff_t>(at + l));
    r.general = r.cells[pick(0, l - 1)];
    at += l;
    layout.rings.push_back(r);
  }
  n_out = n;
  return layout;
}

}  // namespace

TEST(FiringWave, Examples) {
  EXPECT_EQ(firing_wave(4, 0).execute().final.time, 5u);
  EXPECT_EQ(firing_wave(4, 2).execute().final.time, 5u);
  EXPECT_EQ(firing_wave(2, 1).execute().final.time, 3u);
}

TEST(FiringWave, PositionInvarianceAndSimultaneity) {
  for (std::size_t n = 2; n <= 24; ++n)
    for (Index g = 0; g < n; ++g) {
      const auto r = firing_wave(n, g).execute_steps(n + 3, states());
      const auto cells = all_cells(n);
      for (const auto& c : r.trace.snapshots) {
        const auto f = count_visible(c, cells, F);
        EXPECT_TRUE(f == 0 || f == n) << "n=" << n << " g=" << g << " t=" << c.time;
        EXPECT_EQ(f == n, c.time == n + 1) << "n=" << n << " g=" << g << " t=" << c.time;
      }
    }
}

TEST(FiringWave, ResetsAfterFiring) {
  const auto r = firing_wave(5, 3).execute_steps(7);
  for (const auto& q : r.final.states) {
    EXPECT_EQ(q.data.as_int(), S);
    EXPECT_EQ(q.ptr(), -1);
  }
}

TEST(RingLayoutText, ParseFormatValidate) {
  const auto layout = parse_ring_layout("# two rings\n2,4,6*\n1*,3,5,7\n");
  ASSERT_EQ(layout.rings.size(), 2u);
  EXPECT_EQ(layout.rings[0].cells, (std::vector<Index>{2, 4, 6}));
  EXPECT_EQ(layout.rings[0].general, 6u);
  EXPECT_EQ(layout.rings[1].general, 1u);
  EXPECT_EQ(parse_ring_layout(format_ring_layout(layout)).rings[1].cells, layout.rings[1].cells);
  EXPECT_THROW(validate_layout(parse_ring_layout("1,2*\n2,3*\n"), 9), std::invalid_argument);
  EXPECT_THROW(validate_layout(parse_ring_layout("1*\n"), 9), std::invalid_argument);
  EXPECT_THROW(validate_layout(parse_ring_layout("1*,12\n"), 9), std::invalid_argument);
  EXPECT_THROW(parse_ring_layout("1,2\n"), std::invalid_argument);
}

TEST(FiringRings, TwoRingExample) {
  const auto layout = parse_ring_layout("2,4,6*\n1*,3,5,7\n");
  const auto spec = firing_rings(9, layout);
  const auto init = spec.initial();
  std::vector<std::int64_t> p1, p2;
  for (Index i : layout.rings[0].cells) {
    p1.push_back(init.states[i].ptr(0));
    p2.push_back(init.states[i].ptr(1));
  }
  EXPECT_EQ(p1, (std::vector<std::int64_t>{-5, -2, -2}));
  EXPECT_EQ(p2, (std::vector<std::int64_t>{2, 2, 5}));

  const auto r = spec.execute_steps(17, states());
  EXPECT_EQ(ring_fire_times(r.trace.snapshots, layout.rings[0]), (std::vector<std::uint64_t>{4, 7, 10, 13, 16}));
  EXPECT_EQ(ring_fire_times(r.trace.snapshots, layout.rings[1]), (std::vector<std::uint64_t>{5, 9, 13, 17}));
}

TEST(FiringRings, RingOfTwo) {
  const auto layout = parse_ring_layout("3,5*\n");
  const auto r = firing_rings(8, layout).execute_steps(3, states());
  EXPECT_EQ(ring_fire_times(r.trace.snapshots, layout.rings[0]), (std::vector<std::uint64_t>{3}));
}

TEST(FiringRings, InactiveCellsConstantAndRingsIndependent) {
  const auto both = parse_ring_layout("2,4,6*\n1*,3,5,7\n");
  const auto only_a = parse_ring_layout("2,4,6*\n");
  const auto r = firing_rings(9, both).execute_steps(20, states());
  const auto ra = firing_rings(9, only_a).execute_steps(20, states());
  for (std::size_t t = 0; t < r.trace.snapshots.size(); ++t) {
    EXPECT_EQ(r.trace.snapshots[t].states[0], r.trace.snapshots[0].states[0]);
    EXPECT_EQ(r.trace.snapshots[t].states[8], r.trace.snapshots[0].states[8]);
    for (Index i : only_a.rings[0].cells) EXPECT_EQ(r.trace.snapshots[t].states[i], ra.trace.snapshots[t].states[i]);
  }
}

TEST(FiringRings, RandomLayoutsFireAtLengthPlusOne) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 0;
    const auto layout = random_layout(rng, n);
    std::size_t longest = 0;
    for (const auto& ring : layout.rings) longest = std::max(longest, ring.cells.size());
    const auto r = firing_rings(n, layout).execute_steps(longest + 1, states());
    for (const auto& ring : layout.rings) {
      const auto times = ring_fire_times(r.trace.snapshots, ring);
      ASSERT_FALSE(times.empty());
      EXPECT_EQ(times.front(), ring.cells.size() + 1) << format_ring_layout(layout);
      for (const auto& c : r.trace.snapshots) {
        const auto f = count_visible(c, ring.cells, F);
        EXPECT_TRUE(f == 0 || f == ring.cells.size());
      }
    }
  }
}

TEST(JumpV1, GoldenTable) {
  const auto r = firing_jump_v1(8, 0).execute(states());
  EXPECT_EQ(r.final.time, 4u);
  const auto diff = oracle::compare_golden(io::render_table_rows(r.trace.snapshots), oracle::load_golden("firing-jump-v1.n8.txt"));
  EXPECT_TRUE(diff.match) << diff.describe();
}

TEST(JumpV1, FireTimeAndPositionInvariance) {
  EXPECT_EQ(firing_jump_v1(2, 1).execute().final.time, 2u);
  EXPECT_EQ(firing_jump_v1(8, 5).execute().final.time, 4u);
  for (std::size_t n = 2; n <= 64; n *= 2)
    for (Index g = 0; g < n; g += 3) EXPECT_EQ(firing_jump_v1(n, g).execute().final.time, 1 + log2_exact(n));
  EXPECT_THROW(firing_jump_v1(6, 0), std::invalid_argument);
}

TEST(JumpV2, GoldenTraces) {
  const auto a = firing_jump_v2(9, 4, 1, 0).execute(states());
  EXPECT_EQ(a.final.time - 1, 10u);
  auto diff = oracle::compare_golden(io::render_table_rows(a.trace.snapshots), oracle::load_golden("firing-jump-v2.n9.a.txt"));
  EXPECT_TRUE(diff.match) << diff.describe();
  const auto b = firing_jump_v2(9, 4, 1, -1).execute(states());
  EXPECT_EQ(b.final.time - 1, 6u);
  diff = oracle::compare_golden(io::render_table_rows(b.trace.snapshots), oracle::load_golden("firing-jump-v2.n9.b.txt"));
  EXPECT_TRUE(diff.match) << diff.describe();
}

TEST(JumpV2, PowerOfTwoCycleNeverUsesNegativePointer) {
  std::int64_t p = 0;
  std::vector<std::int64_t> seen;
  for (int k = 0; k < 8; ++k) seen.push_back(p = jump_v2_next_pointer(p, 8));
  EXPECT_EQ(seen, (std::vector<std::int64_t>{1, 2, 4, 0, 1, 2, 4, 0}));
}

TEST(JumpV2, FireWindowOverAllPhases) {
  for (std::size_t n = 2; n <= 40; ++n) {
    const unsigned L = log2_ceil(n);
    for (std::uint64_t phase = 0; phase <= L; ++phase) {
      const auto r = firing_jump_v2(n, n / 3, phase).execute();
      const auto dt = r.final.time - phase;
      EXPECT_GE(dt, 2 + L) << "n=" << n << " phase=" << phase;
      EXPECT_LE(dt, 2 + 2 * L) << "n=" << n << " phase=" << phase;
    }
  }
}

TEST(JumpV2, GeneralFreeOrbit) {
  for (std::size_t n : {2u, 5u, 8u, 9u, 33u}) {
    const auto spec = firing_jump_v2(n, 0, 1000000);
    const auto r = spec.execute_steps(3 * (log2_ceil(n) + 1), states());
    const std::size_t period = log2_ceil(n) + 1;
    for (std::size_t t = 0; t + period < r.trace.snapshots.size(); ++t) {
      EXPECT_EQ(r.trace.snapshots[t].states, r.trace.snapshots[t + period].states);
      for (std::size_t s = 1; s < period; ++s)
        EXPECT_NE(r.trace.snapshots[t].states, r.trace.snapshots[t + s].states);
    }
  }
}
