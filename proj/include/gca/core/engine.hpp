#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gca/core/address.hpp"
#include "gca/core/rules.hpp"
#include "gca/core/state.hpp"

namespace gca {

/// A rule threw while evaluating one cell; the step was not committed.
class RuleError : public std::runtime_error {
 public:
  RuleError(Index index, const std::string& what)
      : std::runtime_error("rule failed at cell " + std::to_string(index) + ": " + what), index_(index) {}
  Index index() const { return index_; }

 private:
  Index index_;
};

class StepLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AccessEdge {
  Index reader = 0;
  Index target = 0;
  friend bool operator==(const AccessEdge&, const AccessEdge&) = default;
};

/// What one generation step touched: the edges it realized and the
/// effective addresses each cell used. Filled in index order.
struct StepRecord {
  std::uint64_t time = 0;  // generation that was read
  std::vector<AccessEdge> edges;
  std::vector<std::vector<Address>> effective;
};

struct Trace {
  std::vector<Configuration> snapshots;
  std::vector<StepRecord> steps;
};

/// Checks the Configuration invariants against the automaton's shape.
inline void validate(const Configuration& cfg, const RuleSet& rs) {
  const std::size_t n = cfg.topology.size();
  if (cfg.states.size() != n)
    throw std::invalid_argument("configuration has " + std::to_string(cfg.states.size()) +
                                " states for " + std::to_string(n) + " cells");
  if (rs.arms < 1 || rs.arms >= n)
    throw std::invalid_argument("arm count m=" + std::to_string(rs.arms) + " violates 1 <= m < n (n=" +
                                std::to_string(n) + ")");
  const std::size_t stored = rs.variant == Variant::plain ? 0 : rs.stored_pointers;
  if (rs.variant == Variant::basic && stored != rs.arms)
    throw std::invalid_argument("basic model needs one stored pointer per arm");
  if (rs.variant == Variant::general && !rs.modifier)
    throw std::invalid_argument("general model needs an address modifier");
  if (rs.variant == Variant::plain && !rs.pointer_function)
    throw std::invalid_argument("plain model needs a pointer function");
  if (!rs.data_rule) throw std::invalid_argument("rule set has no data rule");
  if (n == 0) return;
  const DataKind kind = cfg.states.front().data.kind();
  for (Index i = 0; i < n; ++i) {
    if (cfg.states[i].data.kind() != kind)
      throw std::invalid_argument("cell " + std::to_string(i) + " has a different data kind");
    if (cfg.states[i].pointers.size() != stored)
      throw std::invalid_argument("cell " + std::to_string(i) + " has " +
                                  std::to_string(cfg.states[i].pointers.size()) + " pointers, expected " +
                                  std::to_string(stored));
  }
}

namespace detail {

template <class LocalRead>
std::vector<CellState> read_locals(const RuleSet& rs, const Topology& topo, Index i, LocalRead&& read_local) {
  std::vector<CellState> locals;
  locals.reserve(rs.stencil.size());
  for (const auto& a : rs.stencil) locals.push_back(read_local(topo.resolve(i, a)));
  return locals;
}

inline std::vector<Address> effective_for(const RuleSet& rs, const Topology& topo, std::uint64_t t, Index i,
                                          const CellState& self, std::span<const CellState> locals) {
  std::vector<Address> eff;
  switch (rs.variant) {
    case Variant::basic:
      eff = self.pointers;
      break;
    case Variant::general:
      eff = rs.modifier(AddressContext{i, self, t, locals, topo, rs.params});
      break;
    case Variant::plain:
      eff = rs.pointer_function(i, self);
      break;
  }
  if (eff.size() != rs.arms)
    throw std::logic_error("address computation produced " + std::to_string(eff.size()) + " addresses for " +
                           std::to_string(rs.arms) + " arms");
  return eff;
}

}  // namespace detail

/// Evaluates one cell for generation t+1. `read_neighbor(j)` supplies the
/// state of cell j seen through a dynamic arm; `read_local(j)` the state of a
/// stencil neighbor. Both take absolute indices.
template <class NeighborRead, class LocalRead>
CellState evaluate_cell_with(const RuleSet& rs, const Topology& topo, std::uint64_t t, Index i,
                             const CellState& self, NeighborRead&& read_neighbor, LocalRead&& read_local,
                             std::vector<AccessEdge>* edges = nullptr, std::vector<Address>* eff_out = nullptr) {
  const auto locals = detail::read_locals(rs, topo, i, read_local);
  auto eff = detail::effective_for(rs, topo, t, i, self, locals);
  std::vector<CellState> neighbors;
  neighbors.reserve(eff.size());
  for (const auto& a : eff) {
    const Index target = topo.resolve(i, a);
    neighbors.push_back(read_neighbor(target));
    if (edges) edges->push_back({i, target});
  }
  const RuleContext ctx{i, self, neighbors, eff, t, locals, topo, rs.params};
  CellState next;
  next.data = rs.data_rule(ctx);
  if (rs.variant != Variant::plain) next.pointers = rs.pointer_rule ? rs.pointer_rule(ctx) : self.pointers;
  if (next.pointers.size() != (rs.variant == Variant::plain ? 0 : rs.stored_pointers))
    throw std::logic_error("pointer rule produced a wrong pointer count");
  if (eff_out) *eff_out = std::move(eff);
  return next;
}

inline CellState evaluate_cell(const Configuration& cfg, Index i, const RuleSet& rs,
                               std::vector<AccessEdge>* edges = nullptr, std::vector<Address>* eff_out = nullptr) {
  const auto read = [&](Index j) -> const CellState& { return cfg.states[j]; };
  return evaluate_cell_with(rs, cfg.topology, cfg.time, i, cfg.states[i], read, read, edges, eff_out);
}

/// Effective addresses of cell i in generation cfg.time.
inline std::vector<Address> effective_addresses(const Configuration& cfg, Index i, const RuleSet& rs) {
  const auto read = [&](Index j) -> const CellState& { return cfg.states[j]; };
  const auto locals = detail::read_locals(rs, cfg.topology, i, read);
  return detail::effective_for(rs, cfg.topology, cfg.time, i, cfg.states[i], locals);
}

/// Q*_i: the m neighbor states cell i reads in generation cfg.time.
inline std::vector<CellState> gather_neighbors(const Configuration& cfg, Index i, const RuleSet& rs,
                                               std::vector<AccessEdge>* edges = nullptr) {
  std::vector<CellState> out;
  for (const auto& a : effective_addresses(cfg, i, rs)) {
    const Index target = cfg.topology.resolve(i, a);
    out.push_back(cfg.states[target]);
    if (edges) edges->push_back({i, target});
  }
  return out;
}

struct SyncOptions {
  std::vector<Index> order;  // Phase-1 evaluation order; empty means ascending
  unsigned threads = 1;
  std::function<void(Index writer, Index target)> on_commit;
};

/// Two-phase synchronous step. Phase 1 evaluates every cell against the
/// unmodified generation-t array (in any order, possibly concurrently);
/// Phase 2 commits all results at once.
inline Configuration step_sync(const Configuration& cfg, const RuleSet& rs, const SyncOptions& opts = {},
                               StepRecord* rec = nullptr) {
  validate(cfg, rs);
  const std::size_t n = cfg.size();
  std::vector<Index> order = opts.order;
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), Index{0});
  }
  {
    std::vector<bool> seen(n, false);
    bool ok = order.size() == n;
    for (std::size_t k = 0; ok && k < n; ++k) {
      ok = order[k] < n && !seen[order[k]];
      if (ok) seen[order[k]] = true;
    }
    if (!ok) throw std::invalid_argument("evaluation order is not a permutation of the cells");
  }

  struct Pending {
    Index owner = 0;
    CellState state;
    std::vector<AccessEdge> edges;
  };
  std::vector<Pending> pending(n);
  std::vector<std::vector<Address>> effective(rec ? n : 0);

  // Per worker: lowest order position that failed.
  struct Failure {
    std::size_t pos;
    Index index;
    std::string what;
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n)));
  std::vector<std::optional<Failure>> failures(workers);

  auto work = [&](unsigned w) {
    const std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
    for (std::size_t pos = lo; pos < hi; ++pos) {
      const Index i = order[pos];
      try {
        Pending& p = pending[i];
        p.owner = i;
        p.state = evaluate_cell(cfg, i, rs, rec ? &p.edges : nullptr, rec ? &effective[i] : nullptr);
      } catch (const std::exception& e) {
        failures[w] = Failure{pos, i, e.what()};
        return;
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& f : failures)
    if (f) throw RuleError(f->index, f->what);

  Configuration out{cfg.topology, std::vector<CellState>(n), cfg.time + 1};
  for (Index k = 0; k < n; ++k) {
    if (opts.on_commit) opts.on_commit(pending[k].owner, k);
    out.states[k] = std::move(pending[k].state);
  }
  if (rec) {
    rec->time = cfg.time;
    rec->edges.clear();
    for (auto& p : pending) rec->edges.insert(rec->edges.end(), p.edges.begin(), p.edges.end());
    rec->effective = std::move(effective);
  }
  return out;
}

struct AsyncOrder {
  enum class Kind { ascending, descending, random } kind = Kind::ascending;
  std::optional<std::uint64_t> seed;

  static AsyncOrder ascending() { return {}; }
  static AsyncOrder descending() { return {Kind::descending, std::nullopt}; }
  static AsyncOrder random(std::uint64_t seed) { return {Kind::random, seed}; }
};

inline std::vector<Index> sweep_order(std::size_t n, const AsyncOrder& order) {
  std::vector<Index> seq(n);
  std::iota(seq.begin(), seq.end(), Index{0});
  switch (order.kind) {
    case AsyncOrder::Kind::ascending:
      break;
    case AsyncOrder::Kind::descending:
      std::reverse(seq.begin(), seq.end());
      break;
    case AsyncOrder::Kind::random: {
      if (!order.seed) throw std::invalid_argument("random update order needs an explicit seed");
      std::mt19937_64 gen(*order.seed);
      std::shuffle(seq.begin(), seq.end(), gen);
      break;
    }
  }
  return seq;
}

/// One asynchronous sweep: each cell commits immediately, so later cells see
/// earlier results. The stencil W still reads generation t.
inline Configuration step_async(const Configuration& cfg, const RuleSet& rs,
                                const AsyncOrder& order = AsyncOrder::ascending(), StepRecord* rec = nullptr) {
  validate(cfg, rs);
  Configuration work = cfg;
  if (rec) {
    rec->time = cfg.time;
    rec->edges.clear();
    rec->effective.assign(cfg.size(), {});
  }
  const auto read_work = [&](Index j) -> const CellState& { return work.states[j]; };
  const auto read_old = [&](Index j) -> const CellState& { return cfg.states[j]; };
  for (const Index i : sweep_order(cfg.size(), order)) {
    try {
      work.states[i] = evaluate_cell_with(rs, cfg.topology, cfg.time, i, work.states[i], read_work, read_old,
                                          rec ? &rec->edges : nullptr, rec ? &rec->effective[i] : nullptr);
    } catch (const std::exception& e) {
      throw RuleError(i, e.what());
    }
  }
  work.time = cfg.time + 1;
  return work;
}

struct Stop {
  enum class Kind { steps, fixed_point, predicate } kind = Kind::steps;
  std::uint64_t steps = 0;
  std::function<bool(const Configuration&)> predicate;

  static Stop after(std::uint64_t t) { return {Kind::steps, t, {}}; }
  static Stop fixed_point() { return {Kind::fixed_point, 0, {}}; }
  static Stop when(std::function<bool(const Configuration&)> p) { return {Kind::predicate, 0, std::move(p)}; }
};

/// External mutation applied to the configuration of generation `time`
/// before it is read (e.g. introducing a general).
struct ScheduledEvent {
  std::uint64_t time = 0;
  std::function<void(Configuration&)> apply;
};

struct RunOptions {
  bool synchronous = true;
  AsyncOrder order;
  unsigned threads = 1;
  bool record_states = false;
  bool record_edges = false;
  std::optional<std::uint64_t> step_limit;  // default 10n + 64
  std::vector<ScheduledEvent> events;
};

enum class HaltReason { steps, fixed_point, predicate };

inline const char* to_string(HaltReason r) {
  switch (r) {
    case HaltReason::steps: return "steps";
    case HaltReason::fixed_point: return "fixed point";
    case HaltReason::predicate: return "predicate";
  }
  return "?";
}

struct RunResult {
  Configuration final;
  Trace trace;
  HaltReason reason = HaltReason::steps;
  std::uint64_t steps = 0;
};

inline void apply_events(Configuration& cfg, const std::vector<ScheduledEvent>& events) {
  for (const auto& e : events)
    if (e.time == cfg.time && e.apply) e.apply(cfg);
}

inline RunResult run(Configuration cfg, const RuleSet& rs, const Stop& stop, const RunOptions& opts = {}) {
  if (stop.kind == Stop::Kind::fixed_point && !opts.synchronous)
    throw std::invalid_argument("fixed-point stopping requires synchronous updating");
  if (stop.kind == Stop::Kind::predicate && !stop.predicate)
    throw std::invalid_argument("predicate stop without a predicate");
  const std::uint64_t limit = opts.step_limit.value_or(10 * cfg.size() + 64);

  RunResult res;
  apply_events(cfg, opts.events);
  if (opts.record_states) res.trace.snapshots.push_back(cfg);
  SyncOptions sync;
  sync.threads = opts.threads;

  for (;;) {
    if (stop.kind == Stop::Kind::steps && res.steps == stop.steps) {
      res.reason = HaltReason::steps;
      break;
    }
    if (stop.kind == Stop::Kind::predicate && stop.predicate(cfg)) {
      res.reason = HaltReason::predicate;
      break;
    }
    if (stop.kind != Stop::Kind::steps && res.steps >= limit)
      throw StepLimitError("no halt after " + std::to_string(limit) + " steps (t=" + std::to_string(cfg.time) + ")");

    StepRecord rec;
    Configuration next = opts.synchronous ? step_sync(cfg, rs, sync, opts.record_edges ? &rec : nullptr)
                                          : step_async(cfg, rs, opts.order, opts.record_edges ? &rec : nullptr);
    ++res.steps;
    if (opts.record_edges) res.trace.steps.push_back(std::move(rec));
    const bool fixed = stop.kind == Stop::Kind::fixed_point && next.states == cfg.states;
    cfg = std::move(next);
    if (fixed) {
      if (opts.record_states) res.trace.snapshots.push_back(cfg);
      res.reason = HaltReason::fixed_point;
      break;
    }
    apply_events(cfg, opts.events);
    if (opts.record_states) res.trace.snapshots.push_back(cfg);
  }
  res.final = std::move(cfg);
  return res;
}

}  // namespace gca
