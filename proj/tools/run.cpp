// run.cpp: argument parsing, config resolution and command dispatch

#include "run.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "wqed/boundstates.hpp"
#include "wqed/errors.hpp"
#include "wqed/scattering.hpp"
#include "wqed/verify.hpp"

namespace wqed::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct Key {
    const char* name;
    const char* help;
};

// Every key accepted both as --flag and as a config-file entry.
const std::vector<Key> kKeys = {
    {"omega", "resonator frequency (absolute units, default 5)"},
    {"g", "hopping strength; energies are reported in units of g (default 1)"},
    {"Omega", "atomic level spacing (default 8)"},
    {"G", "collective coupling xi*sqrt(N) (default 3)"},
    {"n-atoms", "number of atoms, used with --xi"},
    {"xi", "single-atom coupling; G = xi*sqrt(N) or xi*sqrt(sum|zeta|^2)"},
    {"zeta-file", "file with one complex coupling factor per line as 're im'"},
    {"k-min", "first wavenumber of the grid (default 0.01*pi)"},
    {"k-max", "last wavenumber of the grid (default 0.99*pi)"},
    {"k-count", "number of grid points (default 1001)"},
    {"convention", "dispersion convention: plus (omega + 2g cos k) or minus"},
    {"out", "output path, '-' for stdout (default)"},
    {"format", "csv or json (default csv)"},
    {"k0", "wavepacket carrier wavenumber (default pi/2)"},
    {"sigma", "wavepacket width in sites (default 40)"},
    {"j0", "wavepacket launch site (default -L/2)"},
    {"t-final", "propagation time in 1/g (default 1500)"},
    {"dt", "time step in 1/g (default 0.02)"},
    {"L", "lattice half-width (default 2000)"},
    {"j-cut", "measurement buffer around the node (default 50)"},
    {"absorber-width", "absorbing layer width in sites (default 200)"},
    {"absorber-strength", "absorbing ramp height in units of g (default 0.5)"},
    {"snapshot-every", "steps between probability snapshots (default 0 = none)"},
    {"snapshots", "CSV path for t,j,prob snapshots"},
};

class Settings {
public:
    Settings(const std::map<std::string, std::string>& values, const std::map<std::string, std::string>& origin)
        : values_(values), origin_(origin) {}

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string where(const std::string& key) const {
        const auto it = origin_.find(key);
        return it == origin_.end() ? "--" + key : it->second;
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw InvalidInput(where(key) + ": '" + key + "' " + what);
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double real(const std::string& key, double fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        const std::string& s = it->second;
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
            fail(key, "expects a finite number, got '" + s + "'");
        }
        return v;
    }

    long integer(const std::string& key, long fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        const std::string& s = it->second;
        char* end = nullptr;
        const long v = std::strtol(s.c_str(), &end, 10);
        if (s.empty() || end != s.c_str() + s.size()) fail(key, "expects an integer, got '" + s + "'");
        return v;
    }

private:
    const std::map<std::string, std::string>& values_;
    const std::map<std::string, std::string>& origin_;
};

ModelParams resolve_params(const Settings& s) {
    ModelParams p;
    p.omega = s.real("omega", 5.0);
    p.g = s.real("g", 1.0);
    p.Omega = s.real("Omega", 8.0);
    if (!(p.g > 0.0)) s.fail("g", "must be > 0");

    const bool ensemble = s.has("xi") || s.has("n-atoms") || s.has("zeta-file");
    if (s.has("G") && ensemble) s.fail("G", "conflicts with --xi/--n-atoms/--zeta-file; give one or the other");
    if (ensemble) {
        if (!s.has("xi")) s.fail(s.has("n-atoms") ? "n-atoms" : "zeta-file", "requires --xi");
        if (s.has("n-atoms") && s.has("zeta-file")) s.fail("n-atoms", "conflicts with --zeta-file");
        const double xi = s.real("xi", 0.0);
        if (!(xi >= 0.0)) s.fail("xi", "must be >= 0");
        if (s.has("zeta-file")) {
            const auto zeta = read_zeta_file(s.text("zeta-file", ""));
            p.G = effective_coupling(xi, zeta);
        } else {
            const long n = s.integer("n-atoms", 1);
            if (n < 1) s.fail("n-atoms", "must be >= 1");
            p.G = effective_coupling(xi, n);
        }
    } else {
        p.G = s.real("G", 3.0);
        if (!(p.G >= 0.0)) s.fail("G", "must be >= 0");
    }

    const std::string conv = s.text("convention", "plus");
    if (conv == "plus") {
        p.hopping_sign = HoppingSign::Plus;
    } else if (conv == "minus") {
        p.hopping_sign = HoppingSign::Minus;
    } else {
        s.fail("convention", "must be 'plus' or 'minus', got '" + conv + "'");
    }
    return in_units_of_g(p);
}

GridSpec resolve_grid(const Settings& s) {
    GridSpec g{s.real("k-min", 0.01 * kPi), s.real("k-max", 0.99 * kPi), 1001};
    const long count = s.integer("k-count", 1001);
    if (count < 2) s.fail("k-count", "must be >= 2");
    g.count = static_cast<std::size_t>(count);
    if (!(g.start > 0.0 && g.start < kPi)) s.fail("k-min", "must lie strictly inside (0, pi)");
    if (!(g.stop > 0.0 && g.stop < kPi)) s.fail("k-max", "must lie strictly inside (0, pi)");
    if (!(g.stop > g.start)) s.fail("k-max", "must exceed k-min");
    return g;
}

void write_artifact(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.output == "-") {
        out << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw InvalidInput("cannot open output file '" + cfg.output + "'");
    f << text;
    if (!f) throw InvalidInput("failed writing output file '" + cfg.output + "'");
}

std::string serialize(const RunConfig& cfg, const Table& t) {
    return cfg.format == OutputFormat::Json ? to_json_string(t) : to_csv(t);
}

Table occupations_table(const ModelParams& p, const std::vector<double>& grid) {
    Table t;
    t.columns = {"k", "E", "uA2", "uB2", "Re_uA", "Im_uA", "Re_uB", "Im_uB"};
    for (const auto& s : transmission_spectrum(p, grid)) {
        t.rows.push_back({s.k, s.E, std::norm(s.u_A), std::norm(s.u_B), s.u_A.real(), s.u_A.imag(),
                          s.u_B.real(), s.u_B.imag()});
    }
    return t;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
    std::ostringstream report;
    bool all = true;
    for (const auto& check : verification_checks()) {
        const CheckResult r = check.run(VerifyOptions{});
        all = all && r.passed;
        report << format_check_line(r) << '\n';
        if (cfg.output == "-") {
            out << format_check_line(r) << '\n' << std::flush;
        }
    }
    report << (all ? "all checks passed\n" : "some checks FAILED\n");
    if (cfg.output == "-") {
        out << (all ? "all checks passed\n" : "some checks FAILED\n");
    } else {
        write_artifact(cfg, out, report.str());
    }
    return all ? kExitOk : kExitNumerical;
}

int run_wavepacket(const RunConfig& cfg, std::ostream& out) {
    const auto res = propagate_wavepacket(cfg.params, cfg.lattice, cfg.packet);
    Table t;
    t.columns = {"k0", "T_num", "R_num", "absorbed_left", "absorbed_right", "residual", "norm_error",
                 "energy_drift", "steps"};
    t.rows.push_back({cfg.packet.k0, res.T_num, res.R_num, res.absorbed_left, res.absorbed_right, res.residual,
                      res.norm_error, res.energy_drift, static_cast<double>(res.steps)});
    write_artifact(cfg, out, serialize(cfg, t));
    if (!cfg.snapshots.empty()) {
        std::ofstream f(cfg.snapshots, std::ios::binary);
        if (!f) throw InvalidInput("cannot open snapshot file '" + cfg.snapshots + "'");
        write_snapshots_csv(f, res.history, cfg.lattice.L);
    }
    return kExitOk;
}

} // namespace

RunConfig resolve(Command command, const std::map<std::string, std::string>& settings,
                  const std::map<std::string, std::string>& origin) {
    const Settings s(settings, origin);
    RunConfig cfg;
    cfg.command = command;
    cfg.params = resolve_params(s);
    cfg.grid = resolve_grid(s);
    cfg.output = s.text("out", "-");
    try {
        cfg.format = parse_output_format(s.text("format", "csv"));
    } catch (const InvalidInput& e) {
        s.fail("format", "must be 'csv' or 'json'");
    }

    if (command == Command::Wavepacket) {
        cfg.lattice.L = s.integer("L", 2000);
        cfg.lattice.boundary = Boundary::Absorbing;
        cfg.lattice.absorber_width = s.integer("absorber-width", 200);
        cfg.lattice.absorber_strength = s.real("absorber-strength", 0.5);
        cfg.packet.k0 = s.real("k0", kPi / 2.0);
        cfg.packet.sigma = s.real("sigma", 40.0);
        cfg.packet.j0 = s.integer("j0", -cfg.lattice.L / 2);
        cfg.packet.t_final = s.real("t-final", 1500.0);
        cfg.packet.dt = s.real("dt", 0.02);
        cfg.packet.j_cut = s.integer("j-cut", 50);
        cfg.packet.snapshot_every = s.integer("snapshot-every", 0);
        cfg.snapshots = s.text("snapshots", "");
        if (!cfg.snapshots.empty() && cfg.packet.snapshot_every == 0) {
            s.fail("snapshots", "requires --snapshot-every > 0");
        }
    }
    return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const std::vector<double> grid = linear_grid(cfg.grid.start, cfg.grid.stop, cfg.grid.count);
        switch (cfg.command) {
        case Command::Spectrum:
            write_artifact(cfg, out, serialize(cfg, spectrum_table(cfg.params, grid)));
            return kExitOk;
        case Command::Occupations:
            write_artifact(cfg, out, serialize(cfg, occupations_table(cfg.params, grid)));
            return kExitOk;
        case Command::Bound:
            if (cfg.params.G == 0.0) err << "note: G = 0, the node binds no photon\n";
            write_artifact(cfg, out, serialize(cfg, bound_table(cfg.params)));
            return kExitOk;
        case Command::Figure:
            write_artifact(cfg, out, serialize(cfg, figure_table(cfg.figure, grid)));
            return kExitOk;
        case Command::Verify:
            return run_verify(cfg, out);
        case Command::Wavepacket:
            return run_wavepacket(cfg, out);
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitInvalid;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Single-photon transport through an atomic-ensemble node in a coupled-resonator waveguide"};
    app.require_subcommand(1);
    app.fallthrough();

    std::map<std::string, std::string> flag_values;
    std::map<std::string, CLI::Option*> flag_options;
    for (const auto& key : kKeys) {
        flag_options[key.name] = app.add_option(std::string("--") + key.name, flag_values[key.name], key.help);
    }
    std::string config_path;
    app.add_option("--config", config_path, "key=value settings file; flags override its entries");

    std::map<CLI::App*, Command> commands;
    commands[app.add_subcommand("spectrum", "transmission/reflection spectrum (k,E,T,R,Re_s,Im_s,uA2,uB2)")] =
        Command::Spectrum;
    commands[app.add_subcommand("occupations", "polariton occupation amplitudes over the grid")] =
        Command::Occupations;
    commands[app.add_subcommand("bound", "bound-state energies, decay factors and amplitudes")] = Command::Bound;
    commands[app.add_subcommand("verify", "run the verification suite and print a pass/fail table")] =
        Command::Verify;
    auto* figure = app.add_subcommand("figure", "figure data: fig5d, fig7 or fig9");
    commands[figure] = Command::Figure;
    std::string figure_name;
    figure->add_option("id", figure_name, "fig5d | fig7 | fig9")->required();
    commands[app.add_subcommand("wavepacket", "propagate a wavepacket through the node on a finite lattice")] =
        Command::Wavepacket;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        std::map<std::string, std::string> settings;
        std::map<std::string, std::string> origin;
        if (!config_path.empty()) {
            const std::set<std::string> known = [] {
                std::set<std::string> k;
                for (const auto& key : kKeys) k.insert(key.name);
                return k;
            }();
            for (const auto& [key, entry] : read_config_file(config_path)) {
                const std::string where = config_path + ":" + std::to_string(entry.line);
                if (!known.count(key)) throw InvalidInput(where + ": unknown key '" + key + "'");
                settings[key] = entry.value;
                origin[key] = where;
            }
        }
        for (const auto& [name, opt] : flag_options) {
            if (opt->count() > 0) {
                settings[name] = flag_values[name];
                origin[name] = "--" + name;
            }
        }

        Command command = Command::Spectrum;
        for (const auto& [sub, cmd] : commands) {
            if (sub->parsed()) command = cmd;
        }
        RunConfig cfg = resolve(command, settings, origin);
        if (command == Command::Figure) cfg.figure = parse_figure_id(figure_name);
        return run(cfg, out, err);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace wqed::cli
