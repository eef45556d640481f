// gca: run, render, verify and machine-model front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gca/cli/commands.hpp"

using namespace gca::cli;

int main(int argc, char** argv) {
  CLI::App app{"Global cellular automata simulator"};
  app.require_subcommand(1);

  // run
  RunConfig flags;
  std::string config_file, rings_file;
  std::uint64_t steps = 0, seed = 0;
  auto* run = app.add_subcommand("run", "run a cataloged algorithm");
  run->add_option("--config", config_file, "key=value file; flags override it");
  run->add_option("--alg", flags.algorithm, "algorithm name");
  run->add_option("--n", flags.n, "cells (ring) or side (torus)");
  run->add_option("--width", flags.w, "torus width");
  run->add_option("--height", flags.h, "torus height");
  run->add_option("--variant", flags.variant, "basic, general or plain");
  run->add_option("--mode", flags.mode, "sync, async:asc, async:desc, async:random[:seed]");
  run->add_option("--seed", seed, "seed for every random choice");
  run->add_option("--steps", steps, "stop after this many generations");
  run->add_option("--stop", flags.stop, "halt, fixed-point or steps:N");
  run->add_option("--format", flags.format, "text, pgm, csv or none");
  run->add_flag("--no-states", "leave data out of the csv trace");
  run->add_flag("--no-pointers", "leave pointers out of the csv trace");
  run->add_flag("--edges", "record access edges");
  run->add_option("--out", flags.out_dir, "output directory");
  run->add_option("--general-at", flags.general_at, "general position (firing)");
  run->add_option("--introduce-at", flags.introduce_at, "generation the general appears (firing-jump-v2)");
  run->add_option("--initial-pointer", flags.initial_pointer, "initial pointer (firing-jump-v2)");
  run->add_option("--A", flags.a, "plain XOR distance for q=0");
  run->add_option("--B", flags.b, "plain XOR distance for q=1");
  run->add_option("--rings", flags.rings, "ring layout, rings separated by ';'");
  run->add_option("--rings-file", rings_file, "ring layout file, one ring per line");
  run->add_option("--data", flags.data, "initial data, comma separated");
  run->add_option("--threads", flags.threads, "Phase-1 worker threads");
  run->add_flag("--tile2", flags.tile2, "repeat pgm images twice in each direction");

  // render
  RenderArgs rargs;
  auto* render = app.add_subcommand("render", "render a snapshot file");
  render->add_option("snapshot", rargs.input, "snapshot file")->required();
  render->add_option("--format", rargs.format, "text or pgm");
  render->add_flag("--tile2", rargs.tile2, "repeat the image twice in each direction");
  render->add_option("-o,--output", rargs.output, "output file");

  // arch
  ArchArgs aargs;
  std::size_t dpa_lanes = 0;
  auto* arch = app.add_subcommand("arch", "machine schedules and memory capacity");
  arch->add_flag("--seq", aargs.seq, "sequential pipeline");
  arch->add_option("--dpa", dpa_lanes, "data-parallel machine with P lanes");
  arch->add_flag("--capacity", aargs.capacity, "memory capacity table");
  arch->add_option("--n", aargs.n, "cells");
  arch->add_option("--k", aargs.k, "pointers per cell");
  arch->add_option("--delta", aargs.delta, "bits of data state");
  arch->add_option("--generations", aargs.generations, "generations without a workload");
  arch->add_option("--switch", aargs.switch_cycles, "cycles per generation switch");
  arch->add_option("--alg", aargs.algorithm, "workload");
  std::string arch_out;
  arch->add_option("--out", arch_out, "output directory");

  // verify
  std::string what;
  auto* verify = app.add_subcommand("verify", "oracle and golden checks");
  verify->add_option("algorithm", what, "algorithm name or 'all'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const char* env_out = std::getenv(kOutDirEnv);

  if (*run) {
    RunConfig cfg;
    try {
      if (!config_file.empty()) {
        std::ifstream in(config_file);
        if (!in) throw UsageError("cannot open config " + config_file);
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = RunConfig::parse_text(ss.str());
      }
      if (env_out) cfg.out_dir = env_out;
      auto given = [&](const char* opt) { return run->count(opt) > 0; };
      if (given("--alg")) cfg.algorithm = flags.algorithm;
      if (given("--n")) cfg.n = flags.n;
      if (given("--width")) cfg.w = flags.w;
      if (given("--height")) cfg.h = flags.h;
      if (given("--variant")) cfg.variant = flags.variant;
      if (given("--mode")) cfg.mode = flags.mode;
      if (given("--seed")) cfg.seed = seed;
      if (given("--stop")) cfg.stop = flags.stop;
      if (given("--steps")) cfg.stop = "steps:" + std::to_string(steps);
      if (given("--format")) cfg.format = flags.format;
      if (given("--no-states")) cfg.trace_states = false;
      if (given("--no-pointers")) cfg.trace_pointers = false;
      if (given("--edges")) cfg.trace_edges = true;
      if (given("--out")) cfg.out_dir = flags.out_dir;
      if (given("--general-at")) cfg.general_at = flags.general_at;
      if (given("--introduce-at")) cfg.introduce_at = flags.introduce_at;
      if (given("--initial-pointer")) cfg.initial_pointer = flags.initial_pointer;
      if (given("--A")) cfg.a = flags.a;
      if (given("--B")) cfg.b = flags.b;
      if (given("--rings")) cfg.rings = flags.rings;
      if (given("--rings-file")) {
        std::ifstream in(rings_file);
        if (!in) throw UsageError("cannot open ring layout " + rings_file);
        std::string line, text;
        while (std::getline(in, line)) {
          const auto first = line.find_first_not_of(" \t\r");
          if (first == std::string::npos || line[first] == '#') continue;
          text += (text.empty() ? "" : ";") + line;
        }
        cfg.rings = text;
      }
      if (given("--data")) cfg.data = flags.data;
      if (given("--threads")) cfg.threads = flags.threads;
      if (given("--tile2")) cfg.tile2 = true;
    } catch (const UsageError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
    return cmd_run(cfg, std::cout, std::cerr);
  }
  if (*render) return cmd_render(rargs, std::cout, std::cerr);
  if (*arch) {
    if (arch->count("--dpa")) aargs.dpa = dpa_lanes;
    aargs.out_dir = arch->count("--out") ? arch_out : env_out ? env_out : ".";
    return cmd_arch(aargs, std::cout, std::cerr);
  }
  if (*verify) return cmd_verify(what, std::cout, std::cerr);
  return kUsage;
}
