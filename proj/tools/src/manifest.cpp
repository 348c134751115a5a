#include "qpst/cli/manifest.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "qpst/errors.hpp"

namespace qpst::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += exact(values[i]);
  }
  return out;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ArgumentError(std::string(what) + ": expected a non-negative integer, got '" +
                        std::string(text) + "'");
  }
  return v;
}

}  // namespace

double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ArgumentError(std::string(what) + ": expected a number, got '" + std::string(text) +
                        "'");
  }
  return v;
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  return static_cast<std::size_t>(parse_u64(text, what));
}

std::vector<double> parse_number_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_double(text.substr(start, comma - start), what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

const std::vector<std::string_view>& manifest_keys() {
  static const std::vector<std::string_view> keys{
      "experiment", "d",    "n",    "steps", "input", "noise_p",     "p_grid",
      "couplings",  "seed", "jobs", "out",   "plot",  "tool_version"};
  return keys;
}

void set_field(RunManifest& m, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  if (key == "experiment") {
    m.experiment = std::string(value);
  } else if (key == "d") {
    m.d = parse_count(value, key);
  } else if (key == "n") {
    m.n = parse_count(value, key);
  } else if (key == "steps") {
    m.steps = value.empty() ? std::nullopt : std::optional(parse_count(value, key));
  } else if (key == "input") {
    m.input = std::string(value);
  } else if (key == "noise_p") {
    m.noise_p = value.empty() ? std::nullopt : std::optional(parse_double(value, key));
  } else if (key == "p_grid") {
    m.p_grid = parse_number_list(value, key);
  } else if (key == "couplings") {
    m.couplings = parse_number_list(value, key);
  } else if (key == "seed") {
    m.seed = parse_u64(value, key);
  } else if (key == "jobs") {
    m.jobs = parse_count(value, key);
  } else if (key == "out") {
    m.out = std::string(value);
  } else if (key == "plot") {
    m.plot = std::string(value);
  } else if (key == "tool_version") {
    m.tool_version = std::string(value);
  } else {
    throw ArgumentError("manifest: unknown key '" + std::string(key) + "'");
  }
}

RunManifest parse_manifest(std::istream& in) {
  RunManifest m;
  std::set<std::string, std::less<>> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ArgumentError("manifest line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key(trim(s.substr(0, eq)));
    if (!seen.insert(key).second) {
      throw ArgumentError("manifest line " + std::to_string(lineno) + ": repeated key '" + key +
                          "'");
    }
    set_field(m, key, s.substr(eq + 1));
  }
  return m;
}

RunManifest parse_manifest_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_manifest(in);
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read config file '" + path + "'");
  return parse_manifest(in);
}

std::string write_manifest(const RunManifest& m) {
  std::ostringstream o;
  o << "experiment = " << m.experiment << '\n'
    << "d = " << m.d << '\n'
    << "n = " << m.n << '\n'
    << "steps = " << (m.steps ? std::to_string(*m.steps) : "") << '\n'
    << "input = " << m.input << '\n'
    << "noise_p = " << (m.noise_p ? exact(*m.noise_p) : "") << '\n'
    << "p_grid = " << join(m.p_grid) << '\n'
    << "couplings = " << join(m.couplings) << '\n'
    << "seed = " << m.seed << '\n'
    << "jobs = " << m.jobs << '\n'
    << "out = " << m.out << '\n'
    << "plot = " << m.plot << '\n'
    << "tool_version = " << m.tool_version << '\n';
  return o.str();
}

void save_manifest(const RunManifest& m, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot write manifest '" + path + "'");
  f << write_manifest(m);
}

}  // namespace qpst::cli
