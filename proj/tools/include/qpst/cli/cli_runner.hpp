#pragma once

// Subcommands of the qpst tool. Everything is reachable without a process
// boundary through run_cli, which is what the tests drive.

#include <iosfwd>
#include <string>
#include <vector>

#include "qpst/cli/manifest.hpp"
#include "qpst/transfer_engine.hpp"

namespace qpst::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPstNotFound = 3;

std::string tool_version();

// 12 significant digits, dot decimal separator.
std::string format_number(double v);

PureState make_input(const RunManifest& m);
ChainSpec make_chain(const RunManifest& m);
// Noise comes from m.noise_p when present.
TransferConfig make_transfer_config(const RunManifest& m);

void write_transfer_csv(const TransferTrace& trace, std::ostream& out);
std::string transfer_summary(const TransferTrace& trace);

struct SweepResult {
  std::vector<double> grid;
  std::vector<std::vector<StepRecord>> records;  // one trace per grid point, grid order
};

// Runs the grid points on up to m.jobs threads (0: hardware concurrency).
SweepResult run_sweep(const RunManifest& m);
void write_sweep_csv(const SweepResult& sweep, std::ostream& out);

int cmd_generators(std::size_t d, std::ostream& out, std::ostream& err);
int cmd_transfer(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_noisy_sweep(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_pst_time(const RunManifest& m, std::ostream& out, std::ostream& err);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpst::cli
