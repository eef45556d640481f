#pragma once

// Cycle model of the pipelined GCA processors: the sequential design with
// 2(k+1) memories and the data-parallel design with p lanes and banked
// memories. Every cell passes Fetch, Get, Exe, Write in consecutive cycles.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "gca/algorithms/spec.hpp"

namespace gca::arch {

struct ArchParams {
  std::size_t n = 1;
  std::size_t k = 1;      // pointers per cell
  std::size_t p = 1;      // lanes (data-parallel only)
  std::size_t delta = 8;  // bits of the data state
  double T = 1.0;         // clock period
  std::size_t switch_cycles = 1;

  void check() const {
    if (n < 1) throw std::invalid_argument("arch: n must be at least 1");
    if (p < 1 || p > n) throw std::invalid_argument("arch: lane count p must satisfy 1 <= p <= n");
  }
};

enum class Stage { fetch, get, exe, write };

inline const char* to_string(Stage s) {
  switch (s) {
    case Stage::fetch: return "Fetch";
    case Stage::get: return "Get";
    case Stage::exe: return "Exe";
    case Stage::write: return "Write";
  }
  return "?";
}

struct PipelineEvent {
  std::uint64_t cycle = 0;
  Stage stage = Stage::fetch;
  std::size_t lane = 0;
  Index cell = 0;
  std::size_t bank = 0;
  std::size_t generation = 0;
};

struct ScheduleReport {
  std::vector<PipelineEvent> events;
  std::vector<std::uint64_t> switches;  // first bubble cycle of each generation switch
  std::vector<std::uint64_t> generation_start;
  std::uint64_t total_cycles = 0;
  std::uint64_t iterations = 0;  // per generation
  std::size_t generations = 0;
  std::size_t lanes = 1;
  std::size_t idle_slots = 0;
  std::vector<std::string> conflicts;

  std::uint64_t cycles_per_generation() const { return iterations + 3; }
  // Results per cycle over the whole run.
  double throughput(std::size_t n) const {
    return total_cycles == 0 ? 0.0 : static_cast<double>(n * generations) / static_cast<double>(total_cycles);
  }
};

namespace detail {

// Memory identity: (buffer set, memory number, bank). Set g%2 holds
// generation g. Memory 0 is the one Fetch reads, 1..k serve the Get reads.
// Lane j of the data-parallel design owns bank j of every memory.
using Port = std::tuple<std::size_t, std::size_t, std::size_t, bool>;  // set, memory, bank-or-reader, is_write

/// Lays out `generations` generations of ceil(n/p) iterations. Generation
/// g+1 starts fetching `switch_cycles` after the last fetch of g, so its
/// pipeline fill overlaps the drain of g. `drain_before` forces a full drain
/// (no overlap) before the listed generations.
inline ScheduleReport build_schedule(const ArchParams& ap, std::size_t generations,
                                     const std::set<std::size_t>& drain_before = {}) {
  ap.check();
  ScheduleReport rep;
  rep.lanes = ap.p;
  rep.generations = generations;
  rep.iterations = (ap.n + ap.p - 1) / ap.p;
  std::uint64_t start = 1;
  for (std::size_t g = 0; g < generations; ++g) {
    if (g > 0) {
      rep.switches.push_back(start - ap.switch_cycles);
      if (drain_before.count(g)) start = std::max<std::uint64_t>(start, rep.generation_start.back() + rep.iterations + 3 + ap.switch_cycles);
    }
    rep.generation_start.push_back(start);
    for (std::uint64_t z = 0; z < rep.iterations; ++z) {
      for (std::size_t lane = 0; lane < ap.p; ++lane) {
        const Index cell = z * ap.p + lane;
        if (cell >= ap.n) {
          ++rep.idle_slots;
          continue;
        }
        for (int s = 0; s < 4; ++s)
          rep.events.push_back({start + z + static_cast<std::uint64_t>(s), static_cast<Stage>(s), lane, cell, lane, g});
      }
    }
    rep.total_cycles = start + rep.iterations + 2;
    start += rep.iterations + ap.switch_cycles;
  }
  std::stable_sort(rep.events.begin(), rep.events.end(),
                   [](const PipelineEvent& a, const PipelineEvent& b) { return a.cycle < b.cycle; });
  return rep;
}

/// Every memory port serves at most one access per cycle; a Write lands 3
/// cycles after its Fetch.
inline void check_structure(const ArchParams& ap, ScheduleReport& rep) {
  std::map<std::uint64_t, std::set<Port>> used;
  std::map<std::tuple<std::size_t, Index>, std::uint64_t> fetched;
  auto claim = [&](std::uint64_t cycle, Port port, const std::string& what) {
    if (!used[cycle].insert(port).second)
      rep.conflicts.push_back("cycle " + std::to_string(cycle) + ": port conflict on " + what);
  };
  for (const auto& e : rep.events) {
    const std::size_t rd = e.generation % 2, wr = (e.generation + 1) % 2;
    switch (e.stage) {
      case Stage::fetch:
        claim(e.cycle, {rd, 0, e.lane, false}, "fetch memory");
        fetched[{e.generation, e.cell}] = e.cycle;
        break;
      case Stage::get:
        // One dedicated read memory per (lane, arm); each has one read port.
        for (std::size_t a = 1; a <= ap.k; ++a) claim(e.cycle, {rd, a, e.lane, false}, "neighbor memory");
        break;
      case Stage::exe:
        break;
      case Stage::write:
        // The new state goes to bank (cell mod p) of every memory of the
        // other set.
        if (e.bank != e.cell % ap.p)
          rep.conflicts.push_back("cycle " + std::to_string(e.cycle) + ": cell " + std::to_string(e.cell) +
                                  " written to foreign bank " + std::to_string(e.bank));
        for (std::size_t a = 0; a <= ap.k; ++a) claim(e.cycle, {wr, a, e.bank, true}, "bank write");
        if (e.cycle != fetched[{e.generation, e.cell}] + 3)
          rep.conflicts.push_back("cell " + std::to_string(e.cell) + " not written 3 cycles after its fetch");
        break;
    }
  }
}

}  // namespace detail

/// Sequential 4-stage pipeline, one cell per cycle. Total cycles for G
/// generations: G*n + 3 + switch*(G-1).
inline ScheduleReport seq_pipeline_simulate(ArchParams ap, std::size_t generations) {
  ap.p = 1;
  auto rep = detail::build_schedule(ap, generations);
  detail::check_structure(ap, rep);
  return rep;
}

/// p parallel pipelines over banked memories: ceil(n/p) + 3 cycles per
/// generation. Lanes of the last iteration stay idle when p does not divide n.
inline ScheduleReport dpa_simulate(const ArchParams& ap, std::size_t generations) {
  auto rep = detail::build_schedule(ap, generations);
  detail::check_structure(ap, rep);
  return rep;
}

inline std::uint64_t address_bits(std::size_t n) { return log2_ceil(n); }

/// M(n,k) = 2(k+1) n (delta + k ceil(log2 n)).
inline std::uint64_t seq_memory_capacity(const ArchParams& ap) {
  return 2 * ap.n * (ap.k + 1) * (ap.delta + ap.k * address_bits(ap.n));
}

/// M = 2n(kp+1)(delta + k ceil(log2 n)).
inline std::uint64_t dpa_memory_capacity(const ArchParams& ap) {
  return 2 * ap.n * (ap.k * ap.p + 1) * (ap.delta + ap.k * address_bits(ap.n));
}

/// Idealized multiport memory: one double-buffered copy of all states.
inline std::uint64_t multiport_memory_bound(const ArchParams& ap) {
  return 2 * ap.n * (ap.delta + ap.k * address_bits(ap.n));
}

inline void write_schedule_csv(std::ostream& os, const ScheduleReport& rep) {
  os << "cycle,stage,lane,cell,bank\n";
  for (const auto& e : rep.events)
    os << e.cycle << "," << to_string(e.stage) << "," << e.lane << "," << e.cell << "," << e.bank << "\n";
}

struct ArchTarget {
  enum class Kind { seq, dpa } kind = Kind::seq;
  std::size_t lanes = 1;
  std::size_t k = 0;  // memory arms provided; 0 means "as many as the workload needs"
  std::size_t switch_cycles = 1;

  static ArchTarget seq() { return {}; }
  static ArchTarget dpa(std::size_t p) { return {Kind::dpa, p}; }
};

struct ArchRun {
  Configuration final;
  std::uint64_t cycles = 0;
  std::size_t generations = 0;
  ScheduleReport schedule;
};

class HazardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Executes a workload on the modeled machine. Each Get reads the neighbor
/// states out of the previous generation's memory set at its cycle and
/// fails if that word has not been written yet; each Write stores into the
/// other set. Stopping follows the spec's halt rule generation by
/// generation. Scheduled events (external inputs) drain the pipeline first.
inline ArchRun run_on_arch(const AlgorithmSpec& spec, const ArchTarget& target,
                           std::optional<Stop> stop = std::nullopt) {
  const Stop halt = stop.value_or(spec.halt);
  const RuleSet& rs = spec.rules;
  if (target.k != 0 && rs.arms > target.k)
    throw std::invalid_argument("run_on_arch: workload needs " + std::to_string(rs.arms) + " arms, machine has " +
                                std::to_string(target.k));
  if (halt.kind == Stop::Kind::predicate && !halt.predicate) throw std::invalid_argument("run_on_arch: empty predicate");

  ArchParams ap;
  ap.n = spec.topology.size();
  ap.k = target.k == 0 ? rs.arms : target.k;
  ap.p = target.kind == ArchTarget::Kind::seq ? 1 : target.lanes;
  ap.switch_cycles = target.switch_cycles;
  ap.check();

  Configuration cur = spec.initial();
  apply_events(cur, spec.events);
  validate(cur, rs);
  const std::size_t n = cur.size();
  std::vector<std::uint64_t> written(n, 0);  // cycle at which each word of `cur` became valid
  std::set<std::size_t> drains;
  const std::uint64_t limit = 10 * n + 64;

  // Timing of generation g: its first fetch is at `start`; cell c is
  // fetched at start + c/p, read its neighbors one cycle later and is
  // written three cycles after the fetch.
  ArchRun out;
  const std::uint64_t iters = (n + ap.p - 1) / ap.p;
  std::uint64_t start = 1, prev_start = 0;
  std::size_t g = 0;
  for (;;) {
    if (halt.kind == Stop::Kind::steps && g == halt.steps) break;
    if (halt.kind == Stop::Kind::predicate && halt.predicate(cur)) break;
    if (halt.kind != Stop::Kind::steps && g >= limit) throw StepLimitError("run_on_arch: no halt");

    if (g > 0 && drains.count(g)) start = std::max(start, prev_start + iters + 3 + ap.switch_cycles);
    std::vector<CellState> next(n);
    std::vector<std::uint64_t> next_written(n, 0);
    auto read_at = [&](std::uint64_t cycle) {
      return [&, cycle](Index j) -> const CellState& {
        if (written[j] > cycle)
          throw HazardError("read of cell " + std::to_string(j) + " at cycle " + std::to_string(cycle) +
                            " before its write at cycle " + std::to_string(written[j]));
        return cur.states[j];
      };
    };
    for (Index i = 0; i < n; ++i) {
      const std::uint64_t fetch = start + i / ap.p;
      const CellState& self = read_at(fetch)(i);
      try {
        next[i] = evaluate_cell_with(rs, cur.topology, cur.time, i, self, read_at(fetch + 1), read_at(fetch));
      } catch (const HazardError&) {
        throw;
      } catch (const std::exception& ex) {
        throw RuleError(i, ex.what());
      }
      next_written[i] = fetch + 3;
    }
    Configuration nxt{cur.topology, std::move(next), cur.time + 1};
    ++g;
    out.cycles = start + iters + 2;
    prev_start = start;
    start += iters + ap.switch_cycles;
    const bool fixed = halt.kind == Stop::Kind::fixed_point && nxt.states == cur.states;
    const bool has_event = std::any_of(spec.events.begin(), spec.events.end(),
                                       [&](const ScheduledEvent& ev) { return ev.time == nxt.time; });
    cur = std::move(nxt);
    written = std::move(next_written);
    if (fixed) break;
    if (has_event) {
      apply_events(cur, spec.events);
      for (auto& w : written) w = std::max(w, prev_start + iters + 2);
      drains.insert(g);
    }
  }
  out.schedule = detail::build_schedule(ap, g, drains);
  detail::check_structure(ap, out.schedule);
  if (!out.schedule.conflicts.empty()) throw HazardError("run_on_arch: " + out.schedule.conflicts.front());
  if (g > 0 && out.schedule.total_cycles != out.cycles) throw std::logic_error("run_on_arch: schedule mismatch");
  out.final = std::move(cur);
  out.generations = g;
  return out;
}

}  // namespace gca::arch
