#include <gtest/gtest.h>

#include <map>
#include <random>

#include "gca/catalog.hpp"
#include "gca/oracles/oracles.hpp"

using namespace gca;

namespace {

RunOptions traced() {
  RunOptions o;
  o.record_states = true;
  o.record_edges = true;
  return o;
}

std::vector<std::int64_t> all(std::size_t n, std::int64_t v) { return std::vector<std::int64_t>(n, v); }

}  // namespace

TEST(Max, Examples) {
  auto r = alg_max(4, {3, 1, 2, 0}).execute();
  EXPECT_EQ(int_data(r.final), all(4, 3));
  EXPECT_EQ(r.steps, 3u);
  r = alg_max(2, {5, 5}).execute();
  EXPECT_EQ(int_data(r.final), all(2, 5));
  EXPECT_EQ(r.steps, 1u);
  r = alg_max(8).execute();
  EXPECT_EQ(int_data(r.final), all(8, 7));
  EXPECT_EQ(r.steps, 7u);
}

TEST(Max, ConstantPointerNeedsAllNMinusOneSteps) {
  // 0..7 with the maximum at the far end: cell 0 only sees it at t=7.
  const auto r = alg_max(8).execute_steps(6);
  EXPECT_EQ(r.final.states[0].data.as_int(), 6);
}

TEST(Max, PointerVariantsReachTheMaximum) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> u(-50, 50);
  for (auto mp : {MaxPointer::increment, MaxPointer::doubling, MaxPointer::random}) {
    std::vector<std::int64_t> d(16);
    for (auto& x : d) x = u(rng);
    const auto r = alg_max(16, d, mp, 9).execute();
    EXPECT_EQ(int_data(r.final), all(16, oracle::oracle_reduce(d, ReduceOp::max)));
  }
}

TEST(Max, HalfPointerSettlesOnFourCellWindow) {
  const std::vector<std::int64_t> d = {0, 1, 2, 3, 4, 5, 6, 7};
  const auto r = alg_max(8, d, MaxPointer::half).execute();
  EXPECT_EQ(r.reason, HaltReason::fixed_point);
  for (std::size_t i = 0; i < 8; ++i)
    EXPECT_EQ(r.final.states[i].data.as_int(), std::max({d[i], d[(i + 1) % 8], d[(i + 4) % 8], d[(i + 5) % 8]}));
}

TEST(Max, RandomPointerIsOrderIndependent) {
  const auto spec = alg_max(12, {}, MaxPointer::random, 77);
  SyncOptions o;
  o.order = {11, 3, 5, 0, 1, 2, 10, 9, 8, 7, 6, 4};
  o.threads = 4;
  const auto cfg = spec.initial();
  EXPECT_EQ(step_sync(cfg, spec.rules, o), step_sync(cfg, spec.rules));
}

TEST(Reduce, Examples) {
  auto r = alg_reduce(8, ReduceOp::sum).execute();
  EXPECT_EQ(int_data(r.final), all(8, 8));
  EXPECT_EQ(r.steps, 3u);
  r = alg_reduce(4, ReduceOp::max, {1, 2, 3, 4}).execute();
  EXPECT_EQ(int_data(r.final), all(4, 4));
  EXPECT_EQ(r.steps, 2u);
  EXPECT_THROW(alg_reduce(1, ReduceOp::sum), std::invalid_argument);
  try {
    alg_reduce(6, ReduceOp::sum);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("power of two"), std::string::npos);
  }
}

TEST(Reduce, PointerSequence) {
  const auto r = alg_reduce(16, ReduceOp::sum).execute(traced());
  const std::vector<std::int64_t> seq = {1, 2, 4, 8, 0};
  ASSERT_EQ(r.trace.snapshots.size(), seq.size());
  for (std::size_t t = 0; t < seq.size(); ++t) EXPECT_EQ(first_pointers(r.trace.snapshots[t]), all(16, seq[t]));
}

TEST(Reduce, AllOperatorsMatchOracle) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::int64_t> u(0, 1 << 20);
  for (auto op : {ReduceOp::sum, ReduceOp::max, ReduceOp::min, ReduceOp::bit_and, ReduceOp::bit_or, ReduceOp::avg}) {
    std::vector<std::int64_t> d(32);
    for (auto& x : d) x = u(rng);
    const auto r = alg_reduce(32, op, d).execute();
    EXPECT_EQ(int_data(r.final), all(32, oracle::oracle_reduce(d, op))) << to_string(op);
  }
}

TEST(Horn, Examples) {
  auto r = alg_prefix_sum_horn(8).execute();
  EXPECT_EQ(int_data(r.final), (std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(r.steps, 3u);
  r = alg_prefix_sum_horn(2, {7, 5}).execute();
  EXPECT_EQ(int_data(r.final), (std::vector<std::int64_t>{7, 12}));
  r = alg_prefix_sum_horn(8, {1, 0, 1, 0, 1, 0, 1, 0}).execute();
  EXPECT_EQ(int_data(r.final), (std::vector<std::int64_t>{1, 1, 2, 2, 3, 3, 4, 4}));
  EXPECT_THROW(alg_prefix_sum_horn(7), std::invalid_argument);
}

TEST(Horn, PointerSequenceAndFanIn) {
  const auto r = alg_prefix_sum_horn(16).execute(traced());
  const std::vector<std::int64_t> seq = {-1, -2, -4, -8, 0};
  for (std::size_t t = 0; t < seq.size(); ++t) EXPECT_EQ(first_pointers(r.trace.snapshots[t]), all(16, seq[t]));
  for (const auto& step : r.trace.steps) {
    std::map<Index, int> indeg;
    for (const auto& e : step.edges) ++indeg[e.target];
    for (const auto& [target, k] : indeg) EXPECT_LE(k, 2) << "t=" << step.time << " target " << target;
  }
}

TEST(Bitonic, Examples) {
  auto r = alg_bitonic_merge(8, {1, 3, 5, 7, 8, 6, 4, 2}).execute();
  EXPECT_EQ(int_data(r.final), (std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(r.steps, 3u);
  r = alg_bitonic_merge(2, {2, 1}).execute();
  EXPECT_EQ(int_data(r.final), (std::vector<std::int64_t>{1, 2}));
  const std::vector<std::int64_t> sorted = {1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_EQ(int_data(alg_bitonic_merge(8, sorted).execute().final), sorted);
}

TEST(Bitonic, PartnersArePairs) {
  const auto r = alg_bitonic_merge(16, {}).execute(traced());
  for (const auto& step : r.trace.steps) {
    std::vector<Index> partner(16, 99);
    for (const auto& e : step.edges) partner[e.reader] = e.target;
    for (Index i = 0; i < 16; ++i) {
      ASSERT_NE(partner[i], i);
      EXPECT_EQ(partner[partner[i]], i);
    }
  }
}

TEST(Bitonic, BasicVariantHasSameDataTrajectory) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {2u, 4u, 8u, 32u}) {
    const auto d = oracle::random_bitonic(n, rng);
    const auto g = alg_bitonic_merge(n, d).execute(traced());
    const auto b = alg_bitonic_merge_basic(n, d).execute(traced());
    ASSERT_EQ(g.trace.snapshots.size(), b.trace.snapshots.size());
    for (std::size_t t = 0; t < g.trace.snapshots.size(); ++t)
      EXPECT_EQ(int_data(g.trace.snapshots[t]), int_data(b.trace.snapshots[t]));
    EXPECT_EQ(int_data(g.final), oracle::oracle_sort(d));
  }
}

TEST(Xor2d, CrossBlanksForNumberedRules) {
  for (int rule = 1; rule <= 8; ++rule) {
    const auto spec = alg_xor2d(32, XorPointerRule::numbered(rule));
    const auto r = run(spec.initial(), spec.rules, Stop::when([](const Configuration& c) {
                         return std::all_of(c.states.begin(), c.states.end(),
                                            [](const CellState& q) { return q.data.as_int() == 0; });
                       }),
                       {});
    EXPECT_LE(r.final.time, 16u) << "rule " << rule;
  }
}

TEST(Xor2d, ZeroStaysZero) {
  const std::vector<std::int64_t> zero(9 * 9, 0);
  for (const auto& spec : {alg_xor2d(9, XorPointerRule::numbered(7), zero), alg_xor_timedep(9, 'E', zero),
                           alg_xor_spacedep(9, 'G', zero), alg_xor_plain(9, 3, 1, zero)})
    EXPECT_EQ(int_data(spec.execute_steps(10).final), zero) << spec.name;
}

TEST(Xor2d, PatternEquivalence) {
  auto at = [](int rule, std::uint64_t t) { return int_data(alg_xor2d(32, XorPointerRule::numbered(rule)).execute_steps(t).final); };
  EXPECT_EQ(at(1, 3), at(2, 2));
}

TEST(Xor2d, ReseedClauses) {
  const auto r2 = XorPointerRule::numbered(2);
  EXPECT_EQ(xor_next_pointer(r2, 30, 32), 31);
  EXPECT_EQ(xor_next_pointer(r2, 31, 32), 1);
  const auto r7 = XorPointerRule::numbered(7), r7s = XorPointerRule::numbered(7, true);
  EXPECT_EQ(xor_next_pointer(r7, 16, 32), 0);
  EXPECT_EQ(xor_next_pointer(r7s, 16, 32), 1);
  EXPECT_EQ(xor_next_pointer(XorPointerRule::numbered(8), 11, 32), 1);
}

TEST(XorTimeDep, PointerFormulas) {
  EXPECT_EQ(timedep_pointer('B', 0), (std::pair<std::int64_t, std::int64_t>{1, 1}));
  EXPECT_EQ(timedep_pointer('B', 1), (std::pair<std::int64_t, std::int64_t>{2, 2}));
  EXPECT_EQ(timedep_pointer('E', 0), (std::pair<std::int64_t, std::int64_t>{1, 3}));
  EXPECT_EQ(timedep_pointer('E', 1), (std::pair<std::int64_t, std::int64_t>{3, 1}));
}

TEST(XorSpaceDep, Offsets) {
  EXPECT_EQ(spacedep_offsets('F', 2, 2), (std::vector<Address>{Address::rel(0, -1), Address::rel(1, 0),
                                                               Address::rel(0, 1), Address::rel(-1, 0)}));
  EXPECT_EQ(spacedep_offsets('F', 2, 1), (std::vector<Address>{Address::rel(1, -1), Address::rel(1, 1),
                                                               Address::rel(-1, 1), Address::rel(-1, -1)}));
}

TEST(XorLinearity, DataIndependentFamilies) {
  std::mt19937_64 rng(4);
  std::bernoulli_distribution bit(0.3);
  const std::size_t n = 12;
  for (const auto& name : algorithm_names()) {
    if (name.rfind("xor2d-", 0) != 0) continue;
    const auto spec = make_algorithm(name, {.n = n});
    std::vector<std::int64_t> a(n * n), b(n * n);
    for (auto& x : a) x = bit(rng);
    for (auto& x : b) x = bit(rng);
    EXPECT_TRUE(oracle::oracle_xor_linear_check(spec, a, b, 24)) << name;
  }
  EXPECT_THROW(oracle::oracle_xor_linear_check(alg_xor_plain(n, 3, 1), all(n * n, 0), all(n * n, 0), 1),
               std::invalid_argument);
}

TEST(XorPlain, PointerFromOwnStateOnly) {
  const auto spec = alg_xor_plain(20, 9, 1);
  Configuration cfg = spec.initial();
  for (auto& q : cfg.states) q.data = 0;
  cfg.states[9 * 20 + 0].data = 1;
  const auto eff0 = effective_addresses(cfg, 0, spec.rules);
  EXPECT_EQ(eff0[1], Address::rel(9, 0));  // east
  EXPECT_EQ(effective_addresses(cfg, 9 * 20, spec.rules)[1], Address::rel(1, 0));
  EXPECT_THROW(alg_xor_plain(20, 0, 1), std::invalid_argument);
  EXPECT_THROW(alg_xor_plain(20, 9, 11), std::invalid_argument);
}

TEST(XorPlain, SixtyFourSettlesWhiteAfterThirtyFour) {
  const auto r = alg_xor_plain(64, 9, 3).execute_steps(60, traced());
  const auto& snaps = r.trace.snapshots;
  const auto black = [](const Configuration& c) {
    return std::count_if(c.states.begin(), c.states.end(), [](const CellState& q) { return q.data.as_int() != 0; });
  };
  EXPECT_EQ(black(snaps[34]), 1024);
  for (std::size_t t = 35; t <= 60; ++t) EXPECT_EQ(black(snaps[t]), 0) << "t=" << t;
}

TEST(Xor1d, FirstRowAndAnnotations) {
  const auto spec = alg_xor1d(31, Variant::basic);
  const auto r = spec.execute(traced());
  ASSERT_EQ(r.trace.snapshots.size(), 6u);
  const auto d0 = int_data(r.trace.snapshots[0]);
  for (std::size_t i = 0; i < 31; ++i) EXPECT_EQ(d0[i], i == 15 ? 1 : 0);
  EXPECT_EQ(r.trace.snapshots[4].states[15].ptr(0), 16);
  EXPECT_EQ(r.trace.snapshots[4].states[15].ptr(1), -16);
  EXPECT_THROW(alg_xor1d(30, Variant::basic), std::invalid_argument);
}

TEST(Xor1d, VariantsShareDataEvolution) {
  for (std::size_t n : {3u, 7u, 31u, 33u}) {
    const auto b = alg_xor1d(n, Variant::basic).execute_steps(12, traced());
    const auto g = alg_xor1d(n, Variant::general).execute_steps(12, traced());
    for (std::size_t t = 0; t < b.trace.snapshots.size(); ++t)
      EXPECT_EQ(int_data(b.trace.snapshots[t]), int_data(g.trace.snapshots[t])) << "n=" << n << " t=" << t;
  }
}

TEST(Fft, TwoPointButterfly) {
  const auto r = alg_fft(1, {{1, 0}, {1, 0}}).execute();
  EXPECT_EQ(r.final.states[0].data, DataValue(std::complex<double>(2, 0)));
  EXPECT_EQ(r.final.states[1].data, DataValue(std::complex<double>(0, 0)));
}

TEST(Fft, ZerosStayZero) {
  const auto r = alg_fft(3, std::vector<std::complex<double>>(8)).execute();
  for (const auto& q : r.final.states) EXPECT_EQ(std::abs(q.data.as_complex()), 0.0);
}

TEST(Fft, MatchesRecurrenceAndDftAfterBitReversal) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<std::complex<double>> x(8);
  for (auto& v : x) v = {u(rng), u(rng)};
  const auto perm = oracle::bit_reversal(3);
  std::vector<std::complex<double>> xr(8);
  for (std::size_t i = 0; i < 8; ++i) xr[i] = x[perm[i]];
  const auto r = alg_fft(3, xr).execute();
  EXPECT_EQ(r.steps, 3u);
  const auto rec = oracle::oracle_fft_recurrence(xr, 3);
  const auto dft = oracle::oracle_dft(x);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(r.final.states[i].data, DataValue(rec[i]));
    EXPECT_NEAR(r.final.states[i].data.as_complex().real(), dft[i].real(), 1e-9);
    EXPECT_NEAR(r.final.states[i].data.as_complex().imag(), dft[i].imag(), 1e-9);
  }
}

TEST(Catalog, EveryNameBuildsAndRuns) {
  for (const auto& name : algorithm_names()) {
    CatalogParams p;
    if (name == "max-random") p.seed = 1;
    const auto spec = make_algorithm(name, p);
    EXPECT_NO_THROW(spec.execute_steps(3)) << name;
  }
}

TEST(Catalog, Errors) {
  EXPECT_THROW(make_algorithm("nosuch"), UnknownAlgorithm);
  EXPECT_THROW(make_algorithm("xor2d-r9"), UnknownAlgorithm);
  EXPECT_THROW(make_algorithm("max-random"), std::invalid_argument);
  try {
    make_algorithm("horn", {.n = 7});
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("power of two"), std::string::npos);
  }
  CatalogParams p;
  p.variant = Variant::plain;
  EXPECT_THROW(make_algorithm("reduce-sum", p), std::invalid_argument);
  p.variant = Variant::general;
  EXPECT_EQ(make_algorithm("xor1d-basic", p).rules.variant, Variant::general);
}
