#pragma once

// Flat `key = value` description of one run. Every field maps to a CLI flag.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qpst::cli {

struct RunManifest {
  std::string experiment = "transfer";  // transfer | noisy-sweep | pst-time | generators
  std::size_t d = 2;
  std::size_t n = 4;
  std::optional<std::size_t> steps;     // empty: 8 noiseless, 16 noisy
  // "bell:p,q", "single:a0,a1,..." (real amplitudes) or "random" (uses seed).
  std::string input = "bell:0,0";
  std::optional<double> noise_p;
  std::vector<double> p_grid;
  std::vector<double> couplings;        // empty: default profile
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string out;                      // empty: stdout
  std::string plot;                     // empty: no SVG
  std::string tool_version;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

// Keys in file order.
const std::vector<std::string_view>& manifest_keys();

// Throws qpst::ArgumentError on unknown or repeated keys and malformed values.
RunManifest parse_manifest(std::istream& in);
RunManifest parse_manifest_text(std::string_view text);
RunManifest load_manifest(const std::string& path);

// Doubles use 17 significant digits so that parse(write(m)) == m.
std::string write_manifest(const RunManifest& m);
void save_manifest(const RunManifest& m, const std::string& path);

// Applies one key/value pair; shared by the file parser and the flag layer.
void set_field(RunManifest& m, std::string_view key, std::string_view value);

std::vector<double> parse_number_list(std::string_view text, std::string_view what);
double parse_double(std::string_view text, std::string_view what);
std::size_t parse_count(std::string_view text, std::string_view what);

}  // namespace qpst::cli
