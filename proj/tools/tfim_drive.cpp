// tfim-drive: command-line front end for the driven Ising chain solvers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef TFIM_HAVE_OPENMP
#include <omp.h>
#endif

#include "tfim/analysis.hpp"
#include "tfim/bdg.hpp"
#include "tfim/ed.hpp"
#include "tfim/errors.hpp"
#include "tfim/floquet_k.hpp"
#include "tfim/io.hpp"
#include "tfim/lrt.hpp"

#ifndef TFIM_VERSION
#define TFIM_VERSION "0.0.0"
#endif

using namespace tfim;
using json = nlohmann::json;

namespace {

using Knobs = std::map<std::string, std::string>;

struct Command {
    std::string name;
    std::string help;
    Knobs defaults;                     // empty value = required
    std::vector<std::pair<std::string, std::string>> schema;  // column, meaning
};

const std::vector<Command>& commands() {
    static const std::vector<Command> cmds = {
        {"lrt-spectrum",
         "chi'' and chi' of the uniform magnetization on a frequency grid",
         {{"omega_min", "0.05"}, {"omega_max", "6"}, {"omega_count", "120"}, {"panels", "128"}},
         {{"omega", "frequency"}, {"chi2", "chi''(omega)"}, {"chi1", "chi'(omega)"}}},
        {"lrt-trace",
         "linear-response m(t) and energy for the uniform drive",
         {{"L", "64"}, {"h", "1"}, {"dh", "0.01"}, {"omega", ""}, {"periods", "10"}, {"samples", "64"}},
         {{"t", "time"},
          {"t_over_tau", "time in drive periods"},
          {"m", "linear-response magnetization density"},
          {"transient", "switch-on transient part of m - m_eq"},
          {"e", "second-order energy density e0(t) - e0(0)"}}},
        {"floquet-uniform",
         "k-space evolution of the uniformly driven chain with the LRT reference",
         {{"L", "1024"}, {"h", "1"}, {"dh", "0.01"}, {"omega", ""}, {"periods", "50"}, {"steps", "4096"},
          {"samples", "64"}, {"with_lrt", "1"}},
         {{"t", "time"},
          {"t_over_tau", "time in drive periods"},
          {"m", "magnetization density"},
          {"e0", "energy density of the undriven Hamiltonian"},
          {"e", "energy density of the driven Hamiltonian"},
          {"de0_over_dh2", "(e0(t) - e0(0)) / dh^2"},
          {"lrt_over_dh2", "linear-response energy / dh^2 (NaN when with_lrt = 0)"},
          {"m_lrt", "linear-response magnetization (NaN when with_lrt = 0)"}}},
        {"bdg-run",
         "real-space BdG evolution with a drive on the first l sites",
         {{"L", "64"}, {"l", "1"}, {"h", "1"}, {"dh", "0.01"}, {"omega", ""}, {"periods", "20"}, {"steps", "1024"},
          {"samples", "64"}, {"table", "periods"}},
         {{"n", "period index (table = periods)"},
          {"a0", "mean of M_l over period n"},
          {"a1c", "cos(w0 t) coefficient of M_l"},
          {"a1s", "sin(w0 t) coefficient of M_l"},
          {"a1c_over_l", "a1c / l"},
          {"a1s_over_l", "a1s / l"},
          {"lrt_a1c_over_l", "linear-response a1c / l in the same window"},
          {"lrt_a1s_over_l", "linear-response a1s / l in the same window"},
          {"W_n", "absorption rate from a1c"},
          {"dE0", "E0(n tau) - E0((n-1) tau)"},
          {"t", "time (table = series)"},
          {"Ml", "subchain magnetization (table = series)"},
          {"m", "chain-averaged magnetization (table = series)"}}},
        {"ed-check",
         "exact diagonalization against the BdG solver for L <= 12",
         {{"L", "8"}, {"l", "8"}, {"h", "1"}, {"dh", "0.01"}, {"omega", ""}, {"periods", "10"}, {"steps", "4096"},
          {"samples", "64"}},
         {{"t", "time"},
          {"Ml_ed", "subchain magnetization, exact diagonalization"},
          {"Ml_bdg", "subchain magnetization, BdG"},
          {"e0_ed", "undriven energy density, exact diagonalization"},
          {"norm", "state norm"},
          {"parity", "fermion parity"}}},
        {"fourier",
         "per-period Fourier coefficients of a column in a CSV time series",
         {{"input", ""}, {"column", "m"}, {"omega", ""}, {"harmonics", "1"}},
         {{"n", "period index"}, {"a0", "mean"}, {"a<m>c", "cosine coefficient of harmonic m"},
          {"a<m>s", "sine coefficient of harmonic m"}}},
        {"tstar",
         "first departure of the energy from linear response",
         {{"input", ""}, {"column", "e0"}, {"L", "1024"}, {"h", "1"}, {"dh", ""}, {"omega", ""}, {"threshold", "0"}},
         {{"found", "1 if the threshold was crossed"}, {"tstar", "departure time"}, {"nstar", "ceil(tstar / tau)"}}},
        {"sweep",
         "late-window Fourier coefficients of m over a frequency list",
         {{"L", "1024"}, {"h", "1"}, {"dh", "0.01"}, {"omegas", "0.25,0.5,1,2,3,5"}, {"periods", "200"},
          {"steps", "4096"}, {"samples", "64"}, {"late_fraction", "0.2"}},
         {{"omega", "drive frequency"},
          {"sine2", "2 m1s / dh, late window"},
          {"cosine2", "2 m1c / dh, late window"},
          {"mean_shift", "(m0 - m_eq) / dh, late window"},
          {"chi1", "chi'(omega)"},
          {"chi2", "chi''(omega)"}}},
    };
    return cmds;
}

const Command& find_command(const std::string& name) {
    for (const auto& c : commands())
        if (c.name == name) return c;
    throw InvalidConfig("unknown command '" + name + "'");
}

class KnobReader {
public:
    explicit KnobReader(const Knobs& k) : k_(k) {}

    const std::string& str(const std::string& key) const {
        auto it = k_.find(key);
        if (it == k_.end() || it->second.empty()) throw InvalidConfig("missing required knob '" + key + "'");
        return it->second;
    }
    double num(const std::string& key) const {
        const std::string& s = str(key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw InvalidConfig("knob '" + key + "' is not a number: " + s);
        }
    }
    int integer(const std::string& key) const {
        const double v = num(key);
        if (v != std::floor(v) || std::abs(v) > 1e9) throw InvalidConfig("knob '" + key + "' must be an integer");
        return static_cast<int>(v);
    }
    int positive(const std::string& key) const {
        const int v = integer(key);
        if (v <= 0) throw InvalidConfig("knob '" + key + "' must be positive");
        return v;
    }
    std::vector<double> list(const std::string& key) const {
        std::vector<double> out;
        std::stringstream ss(str(key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                out.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw InvalidConfig("knob '" + key + "' has a non-numeric entry: " + item);
            }
        }
        if (out.empty()) throw InvalidConfig("knob '" + key + "' is empty");
        return out;
    }
    DriveConfig drive() const {
        DriveConfig c;
        c.L = positive("L");
        c.l = k_.count("l") ? positive("l") : c.L;
        c.h = num("h");
        c.dh = num("dh");
        c.omega = num("omega");
        c.validate();
        return c;
    }

private:
    const Knobs& k_;
};

std::vector<double> times(const DriveConfig& c, int periods, int S) {
    std::vector<double> t;
    for (long i = 0; i <= static_cast<long>(periods) * S; ++i) t.push_back(i * c.tau() / S);
    return t;
}

Table run_lrt_spectrum(const KnobReader& k) {
    const double a = k.num("omega_min"), b = k.num("omega_max");
    const int n = k.positive("omega_count");
    if (!(b > a)) throw InvalidConfig("omega_max must exceed omega_min");
    QuadOptions q{k.positive("panels")};
    Table t{{"omega", "chi2", "chi1"}, {}};
    for (int i = 0; i < n; ++i) {
        const double w = n == 1 ? a : a + (b - a) * i / (n - 1);
        const double c1 = w == 0.0 ? NAN : chi_prime(w, q);
        t.rows.push_back({w, chi_second(w), c1});
    }
    return t;
}

Table run_lrt_trace(const KnobReader& k) {
    DriveConfig c = k.drive();
    c.l = c.L;
    const auto ts = times(c, k.positive("periods"), k.positive("samples"));
    const auto tr = lrt_trace(c, ts);
    Table t{{"t", "t_over_tau", "m", "transient", "e"}, {}};
    for (std::size_t i = 0; i < ts.size(); ++i)
        t.rows.push_back({ts[i], ts[i] / c.tau(), tr.m[i], tr.transient[i], lrt_energy(ts[i], c)});
    return t;
}

Table run_floquet_uniform(const KnobReader& k) {
    DriveConfig c = k.drive();
    c.l = c.L;
    const int S = k.positive("samples");
    const auto tr = magnetization_trace(c, k.positive("periods"), {k.positive("steps"), S});
    const bool lrt = k.integer("with_lrt") != 0;
    std::vector<double> mref(tr.t.size(), NAN);
    if (lrt) mref = lrt_trace(c, tr.t).m;
    const double d2 = c.dh * c.dh;
    Table t{{"t", "t_over_tau", "m", "e0", "e", "de0_over_dh2", "lrt_over_dh2", "m_lrt"}, {}};
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        const double el = lrt ? lrt_energy(tr.t[i], c) / d2 : NAN;
        t.rows.push_back({tr.t[i], tr.t[i] / c.tau(), tr.m[i], tr.e0[i], tr.e[i], (tr.e0[i] - tr.e0[0]) / d2, el,
                          mref[i]});
    }
    return t;
}

Table run_bdg(const KnobReader& k) {
    const DriveConfig c = k.drive();
    const int S = k.positive("samples"), np = k.positive("periods");
    const auto run = bdg_run(c, np, {k.positive("steps"), S});
    const std::string& mode = k.str("table");
    if (mode == "series") {
        Table t{{"t", "Ml", "m"}, {}};
        for (std::size_t i = 0; i < run.t.size(); ++i) t.rows.push_back({run.t[i], run.Ml[i], run.m[i]});
        return t;
    }
    if (mode != "periods") throw InvalidConfig("table must be 'periods' or 'series'");
    const auto pf = all_periods(run.Ml, S, c.omega, 1);
    const auto lr = all_periods(lrt_subchain_response(c, run.t), S, c.omega, 1);
    const double l = c.l;
    Table t{{"n", "a0", "a1c", "a1s", "a1c_over_l", "a1s_over_l", "lrt_a1c_over_l", "lrt_a1s_over_l", "W_n", "dE0"},
            {}};
    for (std::size_t n = 0; n < pf.size(); ++n) {
        const double de = (run.e0_boundary[n + 1] - run.e0_boundary[n]) * c.L;
        t.rows.push_back({double(pf[n].n), pf[n].a0, pf[n].a1c(), pf[n].a1s(), pf[n].a1c() / l, pf[n].a1s() / l,
                          lr[n].a1c() / l, lr[n].a1s() / l, absorption_rate(pf[n], c), de});
    }
    return t;
}

Table run_ed_check(const KnobReader& k) {
    const DriveConfig c = k.drive();
    const int S = k.positive("samples"), np = k.positive("periods"), steps = k.positive("steps");
    const auto ed = ed_evolve(c, np, {steps, S});
    const auto bd = bdg_run(c, np, {steps, S});
    Table t{{"t", "Ml_ed", "Ml_bdg", "e0_ed", "norm", "parity"}, {}};
    double dev = 0.0;
    for (std::size_t i = 0; i < ed.t.size(); ++i) {
        t.rows.push_back({ed.t[i], ed.Ml[i], bd.Ml[i], ed.e0[i], ed.norm[i], ed.parity[i]});
        dev = std::max(dev, std::abs(ed.Ml[i] - bd.Ml[i]));
    }
    std::fprintf(stderr, "max |Ml_ed - Ml_bdg| = %.3e\n", dev);
    return t;
}

// Samples per period from a uniformly sampled time column starting at 0.
int samples_from_time(const std::vector<double>& t, double omega) {
    if (t.size() < 2) throw InvalidConfig("time series needs at least two samples");
    const double tau = 2.0 * kPi / omega;
    const double s = tau / (t[1] - t[0]);
    const int S = static_cast<int>(std::lround(s));
    if (S < 1 || std::abs(s - S) > 1e-6 * s || std::abs(t[0]) > 1e-12)
        throw InvalidConfig("time column is not an integer number of samples per period starting at 0");
    return S;
}

Table run_fourier(const KnobReader& k) {
    const Table in = read_csv_file(k.str("input"));
    const double w0 = k.num("omega");
    if (!(w0 > 0.0)) throw InvalidConfig("omega must be positive");
    const int M = k.positive("harmonics");
    const auto t = in.values("t");
    const auto y = in.values(k.str("column"));
    const int S = samples_from_time(t, w0);
    const auto pfs = all_periods(y, S, w0, M);
    Table out;
    out.columns = {"n", "a0"};
    for (int m = 1; m <= M; ++m) {
        out.columns.push_back("a" + std::to_string(m) + "c");
        out.columns.push_back("a" + std::to_string(m) + "s");
    }
    for (const auto& p : pfs) {
        std::vector<double> r{double(p.n), p.a0};
        for (int m = 0; m < M; ++m) {
            r.push_back(p.ac[m]);
            r.push_back(p.as[m]);
        }
        out.rows.push_back(r);
    }
    return out;
}

Table run_tstar(const KnobReader& k) {
    const Table in = read_csv_file(k.str("input"));
    DriveConfig c = k.drive();
    c.l = c.L;
    const auto t = in.values("t");
    const auto e = in.values(k.str("column"));
    const double thr = k.num("threshold");
    const auto r = detect_tstar(t, e, c, thr > 0.0 ? thr : -1.0);
    if (!r.found) std::fprintf(stderr, "%s\n", r.message.c_str());
    return {{"found", "tstar", "nstar"}, {{r.found ? 1.0 : 0.0, r.found ? r.tstar : NAN, double(r.nstar)}}};
}

Table run_sweep(const KnobReader& k) {
    DriveConfig c;
    c.L = k.positive("L");
    c.l = c.L;
    c.h = k.num("h");
    c.dh = k.num("dh");
    c.validate();
    SweepOptions o;
    o.n_periods = k.positive("periods");
    o.steps_per_period = k.positive("steps");
    o.samples_per_period = k.positive("samples");
    o.late_fraction = k.num("late_fraction");
    const auto rows = sweep_omega(c, k.list("omegas"), o);
    Table t{{"omega", "sine2", "cosine2", "mean_shift", "chi1", "chi2"}, {}};
    for (const auto& r : rows) t.rows.push_back({r.omega, r.sine2, r.cosine2, r.mean_shift, r.chi1, r.chi2});
    return t;
}

Table dispatch(const std::string& cmd, const KnobReader& k) {
    if (cmd == "lrt-spectrum") return run_lrt_spectrum(k);
    if (cmd == "lrt-trace") return run_lrt_trace(k);
    if (cmd == "floquet-uniform") return run_floquet_uniform(k);
    if (cmd == "bdg-run") return run_bdg(k);
    if (cmd == "ed-check") return run_ed_check(k);
    if (cmd == "fourier") return run_fourier(k);
    if (cmd == "tstar") return run_tstar(k);
    return run_sweep(k);
}

// Knobs from a flat key=value file or from the "knobs" object of a run manifest.
Knobs load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidConfig("cannot open config file " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Knobs k;
        try {
            const json j = json::parse(text);
            for (const auto& [key, v] : j.at("knobs").items()) k[key] = v.get<std::string>();
        } catch (const json::exception& e) {
            throw InvalidConfig("bad manifest " + path + ": " + e.what());
        }
        return k;
    }
    std::istringstream is(text);
    return parse_key_values(is);
}

Knobs resolve(const Command& cmd, const std::string& config, const std::vector<std::string>& sets) {
    Knobs k = cmd.defaults;
    auto merge = [&](const std::string& key, const std::string& value) {
        if (!k.count(key)) throw InvalidConfig("unknown knob '" + key + "' for " + cmd.name);
        k[key] = value;
    };
    if (!config.empty())
        for (const auto& [key, value] : load_config(config)) merge(key, value);
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw InvalidConfig("--set expects key=value, got '" + s + "'");
        merge(s.substr(0, eq), s.substr(eq + 1));
    }
    return k;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven transverse-field Ising chain: linear response, Floquet and BdG solvers"};
    app.set_version_flag("--version", TFIM_VERSION);
    std::string command, config, out, format = "csv";
    std::vector<std::string> sets;
    int threads = 0;
    bool schema = false;
    std::vector<std::string> names;
    for (const auto& c : commands()) names.push_back(c.name);
    app.add_option("command", command, "one of: " + CLI::detail::join(names, ", "))
        ->required()
        ->check(CLI::IsMember(names));
    app.add_option("--config", config, "flat key=value file or a previous run manifest");
    app.add_option("--set", sets, "override a knob, key=value (repeatable)");
    app.add_option("--out", out, "output path (default stdout); a manifest is written next to it");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    app.add_flag("--schema", schema, "print the output columns and knobs of the command");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Command& cmd = find_command(command);
        if (schema) {
            std::cout << cmd.name << ": " << cmd.help << "\ncolumns:\n";
            for (const auto& [col, meaning] : cmd.schema) std::cout << "  " << col << "  " << meaning << '\n';
            std::cout << "knobs (default; empty = required):\n";
            for (const auto& [key, def] : cmd.defaults) std::cout << "  " << key << " = " << def << '\n';
            return 0;
        }
        const Knobs knobs = resolve(cmd, config, sets);
#ifdef TFIM_HAVE_OPENMP
        if (threads > 0) omp_set_num_threads(threads);
#endif
        const Table table = dispatch(command, KnobReader(knobs));

        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!out.empty()) {
            file.open(out, std::ios::binary);
            if (!file) throw InvalidConfig("cannot write " + out);
            os = &file;
        }
        if (format == "json")
            write_json(*os, table);
        else
            write_csv(*os, table);

        if (!out.empty()) {
            json m;
            m["command"] = command;
            m["knobs"] = knobs;
            m["format"] = format;
            m["threads"] = threads;
            m["version"] = TFIM_VERSION;
            m["rows"] = table.rows.size();
            m["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::ofstream mf(out + ".manifest.json", std::ios::binary);
            mf << m.dump(2) << '\n';
        }
    } catch (const InvalidConfig& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
