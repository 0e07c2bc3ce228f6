// run.hpp: command-line front end
//
//   wqed spectrum|occupations|bound|verify|figure <id>|wavepacket [options]
//
// Parameters come from an optional key=value config file (--config) with
// command-line flags taking precedence. Exit status: 0 success, 1 invalid
// input, 2 numerical failure.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "wqed/figures.hpp"
#include "wqed/io.hpp"
#include "wqed/lattice_oracle.hpp"
#include "wqed/model.hpp"

namespace wqed::cli {

enum class Command { Spectrum, Occupations, Bound, Verify, Figure, Wavepacket };

struct GridSpec {
    double start;
    double stop;
    std::size_t count;
};

struct RunConfig {
    Command command{Command::Spectrum};
    ModelParams params;                 // normalized to g = 1
    GridSpec grid{};
    std::string output{"-"};            // "-" = stdout
    OutputFormat format{OutputFormat::Csv};
    FigureId figure{FigureId::Fig5d};
    LatticeConfig lattice;              // wavepacket only
    WavepacketSpec packet;              // wavepacket only
    std::string snapshots;              // wavepacket snapshot CSV path, empty = none
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;

/// Builds a RunConfig from merged settings (config-file entries overlaid by
/// flags). `origin` names where each key came from, for error messages.
RunConfig resolve(Command command, const std::map<std::string, std::string>& settings,
                  const std::map<std::string, std::string>& origin);

/// Executes a resolved configuration, writing the artifact and any
/// diagnostics. Returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full entry point: parse argv, resolve, run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace wqed::cli
