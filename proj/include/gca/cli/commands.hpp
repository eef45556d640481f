#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gca/archsim/archsim.hpp"
#include "gca/catalog.hpp"
#include "gca/cli/run_config.hpp"
#include "gca/cli/verify.hpp"
#include "gca/core/trace_io.hpp"
#include "gca/io/render.hpp"

namespace gca::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kPrecondition = 2, kVerifyFailed = 3 };

inline constexpr const char* kOutDirEnv = "GCA_OUT_DIR";

namespace detail {

inline std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = trim(item);
    if (v.empty()) continue;
    out.push_back(parse_number<std::int64_t>("data", v));
  }
  return out;
}

inline std::optional<Variant> parse_variant(const std::string& v) {
  if (v.empty()) return std::nullopt;
  if (v == "basic") return Variant::basic;
  if (v == "general") return Variant::general;
  if (v == "plain") return Variant::plain;
  throw UsageError("unknown model variant '" + v + "' (basic, general, plain)");
}

struct Mode {
  bool synchronous = true;
  AsyncOrder order;
  bool stochastic = false;
};

inline Mode parse_mode(const std::string& mode, std::optional<std::uint64_t> seed) {
  if (mode == "sync") return {};
  if (mode == "async:asc") return {false, AsyncOrder::ascending(), false};
  if (mode == "async:desc") return {false, AsyncOrder::descending(), false};
  if (mode.rfind("async:random", 0) == 0) {
    if (mode.size() > 12) {
      if (mode[12] != ':') throw UsageError("unknown update mode '" + mode + "'");
      seed = parse_number<std::uint64_t>("mode", std::string_view(mode).substr(13));
    }
    if (!seed) throw UsageError("update mode async:random needs an explicit seed (--seed)");
    return {false, AsyncOrder::random(*seed), true};
  }
  throw UsageError("unknown update mode '" + mode + "' (sync, async:asc, async:desc, async:random[:seed])");
}

inline Stop parse_stop(const std::string& stop, const AlgorithmSpec& spec) {
  if (stop == "halt") return spec.halt;
  if (stop == "fixed-point") return Stop::fixed_point();
  if (stop.rfind("steps:", 0) == 0) return Stop::after(parse_number<std::uint64_t>("stop", std::string_view(stop).substr(6)));
  throw UsageError("unknown stop rule '" + stop + "' (halt, fixed-point, steps:N)");
}

inline CatalogParams catalog_params(const RunConfig& cfg) {
  CatalogParams p;
  p.n = cfg.n;
  if (cfg.w || cfg.h) {
    const std::size_t side = cfg.w ? cfg.w : cfg.h;
    if ((cfg.w && cfg.h && cfg.w != cfg.h) || (cfg.n && cfg.n != side))
      throw std::invalid_argument("lattice must be square: w=" + std::to_string(cfg.w) + " h=" + std::to_string(cfg.h));
    p.n = side;
  }
  p.variant = parse_variant(cfg.variant);
  p.data = parse_int_list(cfg.data);
  p.seed = cfg.seed;
  p.general_at = cfg.general_at;
  p.introduce_at = cfg.introduce_at;
  p.initial_pointer = cfg.initial_pointer;
  p.a = cfg.a;
  p.b = cfg.b;
  p.rings = cfg.rings;
  for (auto& c : p.rings)
    if (c == ';') c = '\n';
  return p;
}

inline void write_lines(const std::filesystem::path& path, const std::vector<std::string>& rows) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  for (const auto& r : rows) os << r << "\n";
}

inline std::vector<std::string> text_rows(const std::vector<Configuration>& snaps, const RuleSet& rs) {
  if (snaps.empty()) return {};
  if (snaps.front().topology.is_torus()) {
    std::vector<std::string> rows;
    for (const auto& s : snaps) {
      rows.push_back("t=" + std::to_string(s.time));
      for (auto& r : io::render_grid(s)) rows.push_back(std::move(r));
    }
    return rows;
  }
  const bool binary = std::all_of(snaps.begin(), snaps.end(), [](const Configuration& c) { return io::is_binary(c); });
  return binary ? io::render_line_rows(snaps, rs) : io::render_table_rows(snaps);
}

}  // namespace detail

/// Runs one cataloged algorithm and writes its artifacts into cfg.out_dir:
///   text  <alg>.txt          evolution, one row (or grid block) per generation
///   pgm   <alg>.tNNNN.pgm    one image per generation
///   csv   <alg>.trace.csv    long-format states; <alg>.edges.csv with trace_edges
/// Every format except none also writes <alg>.snapshot.json (final state).
inline int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.algorithm.empty()) throw UsageError("no algorithm given (--alg)");
    if (cfg.format != "text" && cfg.format != "pgm" && cfg.format != "csv" && cfg.format != "none")
      throw UsageError("unknown format '" + cfg.format + "' (text, pgm, csv, none)");
    const auto mode = detail::parse_mode(cfg.mode, cfg.seed);
    if (cfg.algorithm == "max-random" && !cfg.seed) throw UsageError("max-random draws random pointers: --seed is required");

    const auto spec = make_algorithm(cfg.algorithm, detail::catalog_params(cfg));
    const Stop stop = detail::parse_stop(cfg.stop, spec);

    RunOptions opts;
    opts.synchronous = mode.synchronous;
    opts.order = mode.order;
    opts.threads = cfg.threads == 0 ? 1 : cfg.threads;
    opts.record_states = cfg.format != "none";
    opts.record_edges = cfg.trace_edges;
    opts.events = spec.events;
    const auto res = run(spec.initial(), spec.rules, stop, opts);

    const std::filesystem::path dir(cfg.out_dir.empty() ? "." : cfg.out_dir);
    const std::string base = spec.name;
    std::vector<std::filesystem::path> written;
    if (cfg.format != "none") std::filesystem::create_directories(dir);
    if (cfg.format == "text") {
      written.push_back(dir / (base + ".txt"));
      detail::write_lines(written.back(), detail::text_rows(res.trace.snapshots, spec.rules));
    } else if (cfg.format == "pgm") {
      for (const auto& s : res.trace.snapshots) {
        char name[64];
        std::snprintf(name, sizeof name, ".t%04llu.pgm", static_cast<unsigned long long>(s.time));
        written.push_back(dir / (base + name));
        std::ofstream os(written.back(), std::ios::binary);
        io::write_pgm(os, s, cfg.tile2);
      }
    } else if (cfg.format == "csv") {
      if (cfg.trace_states || cfg.trace_pointers) {
        written.push_back(dir / (base + ".trace.csv"));
        std::ofstream os(written.back(), std::ios::binary);
        write_trace_csv(os, res.trace, cfg.trace_states, cfg.trace_pointers);
      }
    }
    if (cfg.trace_edges && cfg.format != "none") {
      written.push_back(dir / (base + ".edges.csv"));
      std::ofstream os(written.back(), std::ios::binary);
      write_edges_csv(os, res.trace);
    }
    if (cfg.format != "none") {
      written.push_back(dir / (base + ".snapshot.json"));
      std::ofstream os(written.back(), std::ios::binary);
      write_snapshot(os, {res.final, spec.variant, spec.arms});
    }

    out << "algorithm: " << spec.name << " n=" << spec.topology.size() << "\n";
    out << "halted: " << to_string(res.reason) << ", t=" << res.final.time << "\n";
    out << "steps: " << res.steps << "\n";
    for (const auto& p : written) out << "wrote: " << p.string() << "\n";
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownAlgorithm& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  }
}

struct RenderArgs {
  std::string input;
  std::string format = "text";  // text | pgm
  bool tile2 = false;
  std::string output;  // empty: input with the format's extension
};

/// Renders a snapshot file as text rows or a P5 image.
inline int cmd_render(const RenderArgs& args, std::ostream& out, std::ostream& err) {
  try {
    if (args.format != "text" && args.format != "pgm") throw UsageError("unknown render format '" + args.format + "'");
    std::ifstream in(args.input, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open snapshot " + args.input);
    const auto snap = read_snapshot(in);
    std::filesystem::path dst = args.output;
    if (dst.empty()) dst = std::filesystem::path(args.input).replace_extension(args.format == "pgm" ? ".pgm" : ".txt");
    if (args.format == "pgm") {
      std::ofstream os(dst, std::ios::binary);
      io::write_pgm(os, snap.cfg, args.tile2);
    } else {
      detail::write_lines(dst, io::render_grid(snap.cfg));
    }
    out << "wrote: " << dst.string() << "\n";
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  }
}

struct ArchArgs {
  bool seq = false;
  std::optional<std::size_t> dpa;  // lane count
  bool capacity = false;
  std::size_t n = 8;
  std::size_t k = 1;
  std::size_t delta = 8;
  std::size_t generations = 1;
  std::size_t switch_cycles = 1;
  std::string algorithm;  // workload; empty: bare schedule of `generations`
  std::string out_dir = ".";
};

/// Cycle summary (and schedule CSV) for a machine, and/or the capacity
/// table. With a workload the machine result is checked against the engine.
inline int cmd_arch(const ArchArgs& a, std::ostream& out, std::ostream& err) {
  try {
    if (a.seq && a.dpa) throw UsageError("choose one of --seq and --dpa");
    if (!a.seq && !a.dpa && !a.capacity) throw UsageError("nothing to do: give --seq, --dpa P or --capacity");
    char line[256];
    if (a.capacity) {
      arch::ArchParams ap{a.n, a.k, a.dpa.value_or(1), a.delta};
      ap.check();
      out << "memory capacity (bits)\n";
      std::snprintf(line, sizeof line, "seq        n=%zu k=%zu delta=%zu: %llu bits\n", ap.n, ap.k, ap.delta,
                    static_cast<unsigned long long>(arch::seq_memory_capacity(ap)));
      out << line;
      if (a.dpa) {
        std::snprintf(line, sizeof line, "dpa        n=%zu k=%zu p=%zu delta=%zu: %llu bits\n", ap.n, ap.k, ap.p, ap.delta,
                      static_cast<unsigned long long>(arch::dpa_memory_capacity(ap)));
        out << line;
      }
      std::snprintf(line, sizeof line, "multiport  n=%zu k=%zu delta=%zu: %llu bits\n", ap.n, ap.k, ap.delta,
                    static_cast<unsigned long long>(arch::multiport_memory_bound(ap)));
      out << line;
    }
    if (!a.seq && !a.dpa) return kOk;

    arch::ArchTarget target = a.seq ? arch::ArchTarget::seq() : arch::ArchTarget::dpa(*a.dpa);
    target.switch_cycles = a.switch_cycles;
    arch::ScheduleReport rep;
    bool engine_equal = true;
    std::string stem = "schedule";
    if (!a.algorithm.empty()) {
      const auto spec = make_algorithm(a.algorithm, {.n = a.n});
      target.k = std::max(a.k, spec.rules.arms);
      const auto ar = arch::run_on_arch(spec, target);
      rep = ar.schedule;
      engine_equal = ar.final == spec.execute().final;
      stem = spec.name + ".schedule";
    } else {
      arch::ArchParams ap{a.n, a.k, a.seq ? 1 : *a.dpa, a.delta, 1.0, a.switch_cycles};
      rep = a.seq ? arch::seq_pipeline_simulate(ap, a.generations) : arch::dpa_simulate(ap, a.generations);
    }
    const std::uint64_t G = rep.generations;
    std::snprintf(line, sizeof line, "cycles: %llu = %llu x %llu fetch + 3 latency + %llu switches\n",
                  static_cast<unsigned long long>(rep.total_cycles), static_cast<unsigned long long>(G),
                  static_cast<unsigned long long>(rep.iterations),
                  static_cast<unsigned long long>(G ? a.switch_cycles * (G - 1) : 0));
    out << line;
    out << "generations: " << G << "\n";
    out << "cycles/generation: " << rep.cycles_per_generation() << "\n";
    if (!a.algorithm.empty()) out << "engine-equal: " << (engine_equal ? "yes" : "no") << "\n";

    const std::filesystem::path dir(a.out_dir.empty() ? "." : a.out_dir);
    std::filesystem::create_directories(dir);
    const auto csv = dir / (stem + ".csv");
    std::ofstream os(csv, std::ios::binary);
    arch::write_schedule_csv(os, rep);
    out << "wrote: " << csv.string() << "\n";
    return engine_equal ? kOk : kVerifyFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownAlgorithm& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  }
}

/// Runs the check of one algorithm, or of all of them as a table.
inline int cmd_verify(const std::string& what, std::ostream& out, std::ostream& err) {
  const auto& reg = verify_registry();
  std::vector<std::string> names;
  if (what == "all") {
    for (const auto& [name, fn] : reg) names.push_back(name);
  } else if (reg.count(what)) {
    names.push_back(what);
  } else {
    err << "error: unknown algorithm '" << what << "'\n";
    return kUsage;
  }
  std::size_t failed = 0;
  for (const auto& name : names) {
    VerifyResult r;
    try {
      r = reg.at(name)();
    } catch (const std::exception& e) {
      r = {false, e.what()};
    }
    char line[64];
    std::snprintf(line, sizeof line, "%-16s %s", name.c_str(), r.ok ? "PASS" : "FAIL");
    out << line;
    if (!r.ok) {
      out << "  " << r.detail;
      ++failed;
    }
    out << "\n";
  }
  if (names.size() > 1) out << names.size() - failed << "/" << names.size() << " passed\n";
  return failed ? kVerifyFailed : kOk;
}

}  // namespace gca::cli
