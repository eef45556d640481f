#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gca::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything one `run` needs. Textual form: one "key=value" per line, keys
/// in a fixed order; the seed line is omitted when there is no seed.
struct RunConfig {
  std::string algorithm;
  std::size_t n = 0;  // 0: the algorithm's default
  std::size_t w = 0;  // torus sides; when set they must agree with each other
  std::size_t h = 0;
  std::string variant;          // empty, basic, general or plain
  std::string mode = "sync";    // sync | async:asc | async:desc | async:random[:seed]
  std::optional<std::uint64_t> seed;
  std::string stop = "halt";    // halt | fixed-point | steps:N
  std::string format = "text";  // text | pgm | csv | none
  bool trace_states = true;
  bool trace_pointers = true;
  bool trace_edges = false;
  std::string out_dir = ".";
  std::size_t general_at = 0;
  std::uint64_t introduce_at = 1;
  std::int64_t initial_pointer = 0;
  std::int64_t a = 9;
  std::int64_t b = 1;
  std::string rings;  // ring layout with ';' between rings
  std::string data;   // comma-separated initial data
  unsigned threads = 1;
  bool tile2 = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  std::string to_text() const;
  void set(std::string_view key, std::string_view value);
  static RunConfig parse_text(std::string_view text);
};

namespace detail {

template <class T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw UsageError("config: '" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
  return out;
}

inline bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw UsageError("config: '" + std::string(key) + "' expects true or false, got '" + std::string(v) + "'");
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

inline std::string RunConfig::to_text() const {
  std::ostringstream os;
  const auto b = [](bool v) { return v ? "true" : "false"; };
  os << "algorithm=" << algorithm << "\n"
     << "n=" << n << "\n"
     << "w=" << w << "\n"
     << "h=" << h << "\n"
     << "variant=" << variant << "\n"
     << "mode=" << mode << "\n";
  if (seed) os << "seed=" << *seed << "\n";
  os << "stop=" << stop << "\n"
     << "format=" << format << "\n"
     << "trace_states=" << b(trace_states) << "\n"
     << "trace_pointers=" << b(trace_pointers) << "\n"
     << "trace_edges=" << b(trace_edges) << "\n"
     << "out_dir=" << out_dir << "\n"
     << "general_at=" << general_at << "\n"
     << "introduce_at=" << introduce_at << "\n"
     << "initial_pointer=" << initial_pointer << "\n"
     << "A=" << a << "\n"
     << "B=" << b << "\n"
     << "rings=" << rings << "\n"
     << "data=" << data << "\n"
     << "threads=" << threads << "\n"
     << "tile2=" << b(tile2) << "\n";
  return os.str();
}

inline void RunConfig::set(std::string_view key, std::string_view v) {
  using detail::parse_bool;
  using detail::parse_number;
  if (key == "algorithm") algorithm = v;
  else if (key == "n") n = parse_number<std::size_t>(key, v);
  else if (key == "w") w = parse_number<std::size_t>(key, v);
  else if (key == "h") h = parse_number<std::size_t>(key, v);
  else if (key == "variant") variant = v;
  else if (key == "mode") mode = v;
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, v);
  else if (key == "stop") stop = v;
  else if (key == "format") format = v;
  else if (key == "trace_states") trace_states = parse_bool(key, v);
  else if (key == "trace_pointers") trace_pointers = parse_bool(key, v);
  else if (key == "trace_edges") trace_edges = parse_bool(key, v);
  else if (key == "out_dir") out_dir = v;
  else if (key == "general_at") general_at = parse_number<std::size_t>(key, v);
  else if (key == "introduce_at") introduce_at = parse_number<std::uint64_t>(key, v);
  else if (key == "initial_pointer") initial_pointer = parse_number<std::int64_t>(key, v);
  else if (key == "A") a = parse_number<std::int64_t>(key, v);
  else if (key == "B") b = parse_number<std::int64_t>(key, v);
  else if (key == "rings") rings = v;
  else if (key == "data") data = v;
  else if (key == "threads") threads = parse_number<unsigned>(key, v);
  else if (key == "tile2") tile2 = parse_bool(key, v);
  else throw UsageError("config: unknown key '" + std::string(key) + "'");
}

/// Blank lines and '#' comments are skipped. Values keep inner blanks.
inline RunConfig RunConfig::parse_text(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw UsageError("config line " + std::to_string(line_no) + ": expected key=value");
    cfg.set(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace gca::cli
