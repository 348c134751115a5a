#include "qpst/cli/cli_runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qpst/cli/svg_plot.hpp"
#include "qpst/su_generators.hpp"

#ifndef QPST_VERSION
#define QPST_VERSION "0.0.0"
#endif

namespace qpst::cli {

namespace {

constexpr std::size_t kMaxGeneratorLevels = 6;

std::string format_complex(Complex z) {
  const double re = std::abs(z.real()) < 1e-15 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-15 ? 0.0 : z.imag();
  if (im == 0.0) return format_number(re);
  if (re == 0.0) return format_number(im) + "i";
  return format_number(re) + (im < 0 ? "-" : "+") + format_number(std::abs(im)) + "i";
}

// Writes `body` to `path`, or to `fallback` when the path is empty.
template <typename Body>
void emit(const std::string& path, std::ostream& fallback, Body&& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot write '" + path + "'");
  body(f);
  if (!f) throw ArgumentError("write to '" + path + "' failed");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot write '" + path + "'");
  f << text;
}

std::size_t resolved_steps(const RunManifest& m, bool noisy) {
  const std::size_t steps = m.steps.value_or(noisy ? kNoisySteps : kNoiselessSteps);
  if (steps < 1) throw ArgumentError("--steps must be >= 1");
  return steps;
}

// Maps exceptions to exit codes.
template <typename F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const PstNotFoundError& e) {
    err << "error: perfect state transfer not found: " << e.what()
        << "; best time " << format_number(e.best_time()) << '\n';
    return kExitPstNotFound;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

std::string tool_version() { return QPST_VERSION; }

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

PureState make_input(const RunManifest& m) {
  const std::string& in = m.input;
  if (in.rfind("bell:", 0) == 0) {
    const auto pq = parse_number_list(std::string_view(in).substr(5), "--bell");
    if (pq.size() != 2 || pq[0] < 0 || pq[1] < 0 || pq[0] != std::floor(pq[0]) ||
        pq[1] != std::floor(pq[1])) {
      throw ArgumentError("--bell expects two non-negative integers p,q");
    }
    return generalized_bell(
        BellLabel(static_cast<std::size_t>(pq[0]), static_cast<std::size_t>(pq[1]), m.d));
  }
  if (in.rfind("single:", 0) == 0) {
    const auto amps = parse_number_list(std::string_view(in).substr(7), "--single");
    if (amps.size() != m.d) {
      throw ArgumentError("--single expects " + std::to_string(m.d) + " amplitudes, got " +
                          std::to_string(amps.size()));
    }
    CVector v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
    return PureState::normalized(m.d, 1, std::move(v));
  }
  if (in == "random") {
    std::mt19937_64 rng(m.seed);
    return random_state(m.d, 1, rng);
  }
  throw ArgumentError("input must be bell:p,q, single:amps or random, got '" + in + "'");
}

ChainSpec make_chain(const RunManifest& m) {
  if (m.couplings.empty()) return ChainSpec::with_default_couplings(m.d, m.n);
  return ChainSpec(m.d, m.n, m.couplings);
}

TransferConfig make_transfer_config(const RunManifest& m) {
  TransferConfig cfg{make_chain(m), make_input(m)};
  if (m.noise_p) cfg.noise = phase_damping(*m.noise_p, m.d);
  cfg.steps = resolved_steps(m, m.noise_p.has_value());
  return cfg;
}

void write_transfer_csv(const TransferTrace& trace, std::ostream& out) {
  out << "step,time,fidelity_raw,fidelity_bell,entropy,support_size\n";
  for (const StepRecord& r : trace.records) {
    out << r.step << ',' << format_number(r.time) << ',' << format_number(r.fidelity_raw) << ','
        << format_number(r.fidelity_bell) << ',' << format_number(r.entropy) << ','
        << r.support.size() << '\n';
  }
}

std::string transfer_summary(const TransferTrace& trace) {
  const StepRecord& last = trace.records.back();
  std::ostringstream o;
  o << "# summary t*=" << format_number(trace.total_time)
    << " fidelity_raw=" << format_number(last.fidelity_raw)
    << " fidelity_bell=" << format_number(last.fidelity_bell);
  if (trace.final_bell_label) {
    o << " bell_label=" << trace.final_bell_label->p << ',' << trace.final_bell_label->q;
  }
  if (std::holds_alternative<DensityMatrix>(trace.final_state)) {
    o << " fidelity_reference=" << format_number(last.fidelity_reference);
  }
  o << " entropy=" << format_number(last.entropy) << " support_size=" << last.support.size()
    << '\n';
  return o.str();
}

SweepResult run_sweep(const RunManifest& m) {
  if (m.p_grid.empty()) throw ArgumentError("noisy-sweep needs a non-empty --p-grid");
  // Validate every point before any work starts.
  std::vector<TransferConfig> configs;
  for (double p : m.p_grid) {
    RunManifest point = m;
    point.noise_p = p;
    point.steps = resolved_steps(m, true);
    configs.push_back(make_transfer_config(point));
  }

  SweepResult result{m.p_grid, std::vector<std::vector<StepRecord>>(configs.size())};
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        result.records[i] = run_noisy(configs[i]).records;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t jobs = m.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : m.jobs;
  jobs = std::min(jobs, configs.size());
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return result;
}

void write_sweep_csv(const SweepResult& sweep, std::ostream& out) {
  out << "p,step,fidelity\n";
  for (std::size_t i = 0; i < sweep.grid.size(); ++i) {
    for (const StepRecord& r : sweep.records[i]) {
      out << format_number(sweep.grid[i]) << ',' << r.step << ','
          << format_number(r.fidelity_reference) << '\n';
    }
  }
}

int cmd_generators(std::size_t d, std::ostream& out, std::ostream& err) {
  if (d < 2 || d > kMaxGeneratorLevels) {
    err << "error: generators needs 2 <= d <= " << kMaxGeneratorLevels << ", got " << d << '\n';
    return kExitUsage;
  }
  for (const NamedGenerator& g : generator_set(d).ordered()) {
    out << g.name << '\n';
    std::vector<std::string> cells;
    std::size_t width = 1;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        cells.push_back(format_complex(g.matrix.at(r, c)));
        width = std::max(width, cells.back().size());
      }
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        const std::string& s = cells[r * d + c];
        out << "  " << std::string(width - s.size(), ' ') << s;
      }
      out << '\n';
    }
    out << '\n';
  }
  return kExitOk;
}

int cmd_transfer(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const TransferTrace trace = run_transfer(make_transfer_config(m));
    emit(m.out, out, [&](std::ostream& o) { write_transfer_csv(trace, o); });
    out << transfer_summary(trace);
    if (!m.plot.empty()) {
      LineChart chart{"Transfer fidelity, d=" + std::to_string(m.d) + " n=" + std::to_string(m.n),
                      "time", "fidelity", {}};
      Series raw{"raw", {}}, bell{"corrected", {}};
      for (const StepRecord& r : trace.records) {
        raw.points.emplace_back(r.time, r.fidelity_raw);
        bell.points.emplace_back(r.time, r.fidelity_bell);
      }
      chart.series = {raw, bell};
      write_text(m.plot, render_svg(chart));
    }
    return kExitOk;
  });
}

int cmd_noisy_sweep(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SweepResult sweep = run_sweep(m);
    emit(m.out, out, [&](std::ostream& o) { write_sweep_csv(sweep, o); });
    if (!m.out.empty()) {
      out << "# wrote " << sweep.grid.size() << " curves to " << m.out << '\n';
    }
    if (!m.plot.empty()) {
      LineChart chart{"Noisy transfer, d=" + std::to_string(m.d) + " n=" + std::to_string(m.n),
                      "step", "fidelity", {}};
      chart.y_min = chart.y_max = 0.0;
      for (std::size_t i = 0; i < sweep.grid.size(); ++i) {
        Series s{"p=" + format_number(sweep.grid[i]), {}};
        for (const StepRecord& r : sweep.records[i]) {
          s.points.emplace_back(static_cast<double>(r.step), r.fidelity_reference);
        }
        chart.series.push_back(std::move(s));
      }
      write_text(m.plot, render_svg(chart));
    }
    return kExitOk;
  });
}

int cmd_pst_time(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PstResult r = find_pst(ChainDynamics(make_chain(m)));
    out << "t*=" << format_number(r.time) << " fidelity=" << format_number(r.fidelity) << '\n';
    return kExitOk;
  });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect state transfer simulator for qudit spin chains", "qpst"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  // Every run flag is captured as text and applied through the manifest
  // layer, so flags and config files share one parser.
  std::map<std::string, std::string> flags;
  std::string config_path, save_path;
  std::size_t gen_d = 0;

  auto* gen = app.add_subcommand("generators", "Print the SU(d) generators");
  gen->add_option("--d", gen_d, "Levels per qudit")->required();

  auto add_run_flags = [&](CLI::App* sub, bool with_input) {
    sub->add_option("--config", config_path, "Read a key = value manifest first");
    sub->add_option("--save-manifest", save_path, "Write the resolved manifest");
    sub->add_option("--d", flags["d"], "Levels per qudit");
    sub->add_option("--n", flags["n"], "Chain length");
    sub->add_option("--couplings", flags["couplings"], "Comma-separated J_1..J_{n-1}");
    if (!with_input) return;
    sub->add_option("--steps", flags["steps"], "Number of propagation steps");
    auto* bell = sub->add_option("--bell", flags["bell"], "Generalized Bell input p,q");
    auto* single = sub->add_option("--single", flags["single"],
                                   "Single-qudit input amplitudes, or 'random'");
    bell->excludes(single);
    sub->add_option("--noise-p", flags["noise_p"], "Phase damping parameter in [0,1]");
    sub->add_option("--p-grid", flags["p_grid"], "Comma-separated damping parameters");
    sub->add_option("--out", flags["out"], "CSV path (default stdout)");
    sub->add_option("--plot", flags["plot"], "SVG path");
    sub->add_option("--seed", flags["seed"], "Seed for random inputs");
    sub->add_option("--jobs", flags["jobs"], "Concurrent sweep points (0: all cores)");
  };
  auto* transfer = app.add_subcommand("transfer", "Run one transfer and print its trace");
  auto* sweep = app.add_subcommand("noisy-sweep", "Final-fidelity sweep over phase damping");
  auto* pst = app.add_subcommand("pst-time", "Locate the perfect transfer time");
  add_run_flags(transfer, true);
  add_run_flags(sweep, true);
  add_run_flags(pst, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (gen->parsed()) return cmd_generators(gen_d, out, err);

  CLI::App* sub = transfer->parsed() ? transfer : (sweep->parsed() ? sweep : pst);
  RunManifest m;
  const int rc = guarded(err, [&] {
    if (!config_path.empty()) m = load_manifest(config_path);
    m.experiment = sub->get_name();
    m.tool_version = tool_version();
    for (const auto& [key, value] : flags) {
      const std::string flag = "--" + (key == "noise_p" ? std::string("noise-p")
                                       : key == "p_grid" ? std::string("p-grid")
                                                         : key);
      const CLI::Option* opt = sub->get_option_no_throw(flag);
      if (opt == nullptr || opt->count() == 0) continue;
      if (key == "bell") {
        set_field(m, "input", "bell:" + value);
      } else if (key == "single") {
        set_field(m, "input", value == "random" ? value : "single:" + value);
      } else {
        set_field(m, key, value);
      }
    }
    if (!save_path.empty()) save_manifest(m, save_path);
    return kExitOk;
  });
  if (rc != kExitOk) return rc;

  if (sub == transfer) return cmd_transfer(m, out, err);
  if (sub == sweep) return cmd_noisy_sweep(m, out, err);
  return cmd_pst_time(m, out, err);
}

}  // namespace qpst::cli
