#include "podsolid/cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "podsolid/analysis.hpp"
#include "podsolid/cases1d.hpp"
#include "podsolid/config.hpp"
#include "podsolid/errors.hpp"
#include "podsolid/flow.hpp"
#include "podsolid/pod.hpp"
#include "podsolid/snap_io.hpp"

namespace fs = std::filesystem;

namespace podsolid {

namespace {

/**
 * Ordered `section.key` settings of one verb. Values start at their
 * defaults, then a config file and finally explicit flags override them.
 */
class Settings {
public:
    void add(const std::string& key, const std::string& value) {
        keys_.push_back(key);
        values_[key] = value;
    }

    void set(const std::string& key, const std::string& value) {
        if (!values_.contains(key)) throw ArgumentError("unknown setting '" + key + "'");
        values_[key] = value;
    }

    void apply(const ConfigFile& file) {
        file.require_known(keys_);
        for (const auto& [section, entries] : file.sections()) {
            for (const auto& [key, entry] : entries) values_[section + "." + key] = entry.value;
        }
    }

    const std::string& get(const std::string& key) const { return values_.at(key); }
    double real(const std::string& key) const { return parse_real(key, get(key)); }
    std::size_t count(const std::string& key) const { return parse_count(key, get(key)); }
    const std::vector<std::string>& keys() const { return keys_; }

    /// Case-file text, sections in order of first appearance.
    std::string format() const {
        std::vector<std::string> sections;
        for (const auto& key : keys_) {
            const std::string section = key.substr(0, key.find('.'));
            if (std::find(sections.begin(), sections.end(), section) == sections.end()) sections.push_back(section);
        }
        std::ostringstream out;
        for (std::size_t i = 0; i < sections.size(); ++i) {
            if (i) out << '\n';
            out << '[' << sections[i] << "]\n";
            for (const auto& key : keys_) {
                const auto dot = key.find('.');
                if (key.substr(0, dot) == sections[i]) out << key.substr(dot + 1) << " = " << values_.at(key) << '\n';
            }
        }
        return out.str();
    }

private:
    std::vector<std::string> keys_;
    std::map<std::string, std::string> values_;
};

/// Flags that map one-to-one onto settings; unset flags leave the setting alone.
class FlagBindings {
public:
    void bind(CLI::App* app, const std::string& flag, const std::string& key, const Settings& defaults,
              const std::string& help) {
        auto& slot = slots_[key];
        app->add_option(flag, slot, help)->default_str(defaults.get(key));
    }

    void apply(Settings& s) const {
        for (const auto& [key, value] : slots_) {
            if (value) s.set(key, *value);
        }
    }

private:
    std::map<std::string, std::optional<std::string>> slots_;
};

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

void require_distinct(const fs::path& input, const fs::path& output) {
    std::error_code ec;
    if (fs::weakly_canonical(input, ec) == fs::weakly_canonical(output, ec)) {
        throw ArgumentError("output path '" + output.string() + "' is the same as input path '" + input.string() + "'");
    }
}

void print_resolved(std::ostream& err, const std::string& verb, const Settings& s) {
    fmt::print(err, "# {} resolved configuration\n{}", verb, s.format());
}

void write_summary(std::ostream& out, const fs::path& path, const SnapshotMatrix& m) {
    fmt::print(out, "wrote {} ({} x {})\n", path.string(), m.n_dof(), m.n_snaps());
}

// 1D generators ------------------------------------------------------------

Settings grid1d_settings(const std::string& out_default) {
    Settings s;
    s.add("grid.nodes", "256");
    s.add("grid.x_min", "0");
    s.add("grid.x_max", "1");
    s.add("time.snapshots", "128");
    s.add("output.snapshots", out_default);
    return s;
}

Grid1D grid_from(const Settings& s) { return Grid1D(s.count("grid.nodes"), s.real("grid.x_min"), s.real("grid.x_max")); }

struct Verb {
    CLI::App* app = nullptr;
    std::function<int(std::ostream&, std::ostream&)> run;
};

struct OneDimVerb {
    Settings settings;
    FlagBindings flags;
    std::string config;
};

void bind_grid_flags(CLI::App* app, OneDimVerb& v) {
    app->add_option("--config", v.config, "Optional case file ([grid], [time], [output] ... sections)");
    v.flags.bind(app, "--nodes", "grid.nodes", v.settings, "Number of grid nodes, ends included");
    v.flags.bind(app, "--x-min", "grid.x_min", v.settings, "Left end of the domain");
    v.flags.bind(app, "--x-max", "grid.x_max", v.settings, "Right end of the domain");
    v.flags.bind(app, "--snapshots", "time.snapshots", v.settings, "Number of snapshot columns");
    v.flags.bind(app, "--out", "output.snapshots", v.settings, "Output SNAP1 file");
}

void resolve(OneDimVerb& v) {
    if (!v.config.empty()) v.settings.apply(ConfigFile::parse_file(v.config));
    v.flags.apply(v.settings);
}

Verb make_gen_heat(CLI::App& root, std::shared_ptr<OneDimVerb> v) {
    v->settings = grid1d_settings("heat.snap");
    v->settings.add("time.dt", "0.001");
    v->settings.add("time.scheme", "implicit");
    v->settings.add("material.alpha", "1");
    v->settings.add("initial.left", "0.25");
    v->settings.add("initial.right", "0.75");
    v->settings.add("initial.height", "1");
    auto* app = root.add_subcommand("gen-heat1d", "1D heat equation snapshots from a rectangle initial condition");
    bind_grid_flags(app, *v);
    v->flags.bind(app, "--dt", "time.dt", v->settings, "Time step");
    v->flags.bind(app, "--scheme", "time.scheme", v->settings, "implicit | explicit");
    v->flags.bind(app, "--alpha", "material.alpha", v->settings, "Thermal diffusivity");
    v->flags.bind(app, "--ic-left", "initial.left", v->settings, "Left edge of the rectangle");
    v->flags.bind(app, "--ic-right", "initial.right", v->settings, "Right edge of the rectangle");
    v->flags.bind(app, "--ic-height", "initial.height", v->settings, "Rectangle height");
    return {app, [v](std::ostream& out, std::ostream& err) {
                resolve(*v);
                const auto& s = v->settings;
                print_resolved(err, "gen-heat1d", s);
                Heat1DConfig cfg;
                cfg.grid = grid_from(s);
                cfg.n_snaps = s.count("time.snapshots");
                cfg.dt = s.real("time.dt");
                cfg.alpha = s.real("material.alpha");
                const auto& scheme = s.get("time.scheme");
                if (scheme == "implicit") {
                    cfg.scheme = TimeScheme::implicit_euler;
                } else if (scheme == "explicit") {
                    cfg.scheme = TimeScheme::explicit_euler;
                } else {
                    throw ArgumentError("time.scheme: expected implicit or explicit, got '" + scheme + "'");
                }
                cfg.ic = RectangleIC{s.real("initial.left"), s.real("initial.right"), s.real("initial.height")};
                const auto m = solve_heat1d(cfg);
                const fs::path path = s.get("output.snapshots");
                write_snap(m, path);
                write_summary(out, path, m);
                return kExitOk;
            }};
}

Verb make_gen_jump(CLI::App& root, std::shared_ptr<OneDimVerb> v) {
    v->settings = grid1d_settings("jump.snap");
    auto* app = root.add_subcommand("gen-jump", "Advected jump u = 1 for x <= t, sampled on t in [0, 1]");
    bind_grid_flags(app, *v);
    return {app, [v](std::ostream& out, std::ostream& err) {
                resolve(*v);
                const auto& s = v->settings;
                print_resolved(err, "gen-jump", s);
                const auto m = gen_advected_jump(grid_from(s), s.count("time.snapshots"));
                const fs::path path = s.get("output.snapshots");
                write_snap(m, path);
                write_summary(out, path, m);
                return kExitOk;
            }};
}

Verb make_gen_sigmoid(CLI::App& root, std::shared_ptr<OneDimVerb> v) {
    v->settings = grid1d_settings("sigmoid.snap");
    v->settings.add("profile.steepness", fmt::format("{}", kSteepSigmoid));
    auto* app = root.add_subcommand("gen-sigmoid", "Advected sigmoid 1 / (1 + exp(-k (t - x)))");
    bind_grid_flags(app, *v);
    v->flags.bind(app, "--steepness", "profile.steepness", v->settings,
                  fmt::format("Sigmoid steepness k (stretched case uses {})", kStretchedSigmoid));
    return {app, [v](std::ostream& out, std::ostream& err) {
                resolve(*v);
                const auto& s = v->settings;
                print_resolved(err, "gen-sigmoid", s);
                const double k = s.real("profile.steepness");
                if (!(k > 0.0)) throw ArgumentError("profile.steepness must be positive");
                const auto m = gen_sigmoid(grid_from(s), s.count("time.snapshots"), k);
                const fs::path path = s.get("output.snapshots");
                write_snap(m, path);
                write_summary(out, path, m);
                return kExitOk;
            }};
}

// 2D cavity ----------------------------------------------------------------

struct CavityVerb {
    Settings settings;
    FlagBindings flags;
    std::string config;
    std::vector<std::string> overrides;
};

Verb make_gen_cavity(CLI::App& root, std::shared_ptr<CavityVerb> v) {
    const CavityCase defaults;
    for (const auto& key : cavity_config_keys()) v->settings.add(key, get_cavity_key(defaults, key));
    auto* app = root.add_subcommand("gen-cavity2d", "2D solidifying cavity snapshots (u, v, p, T)");
    app->add_option("--config", v->config, "Case file with [grid] [time] [material] [boundary] [output] sections")
        ->required();
    v->flags.bind(app, "--nx", "grid.nx", v->settings, "Cells in x");
    v->flags.bind(app, "--ny", "grid.ny", v->settings, "Cells in y");
    v->flags.bind(app, "--dt", "time.dt", v->settings, "Time step");
    v->flags.bind(app, "--steps", "time.n_steps", v->settings, "Number of time steps");
    v->flags.bind(app, "--snap-every", "time.snap_every", v->settings, "Steps between snapshots");
    v->flags.bind(app, "--viscosity-model", "material.viscosity_model", v->settings, "mushy | sharp_jump");
    v->flags.bind(app, "--out", "output.snapshots", v->settings, "Output SNAP1 file");
    app->add_option("--set", v->overrides, "Override any case key, e.g. --set boundary.h=20 (repeatable)");
    return {app, [v](std::ostream& out, std::ostream& err) {
                v->settings.apply(ConfigFile::parse_file(v->config));
                v->flags.apply(v->settings);
                for (const auto& o : v->overrides) {
                    const auto eq = o.find('=');
                    if (eq == std::string::npos) throw ArgumentError("--set expects KEY=VALUE, got '" + o + "'");
                    v->settings.set(o.substr(0, eq), o.substr(eq + 1));
                }
                CavityCase c;
                for (const auto& key : v->settings.keys()) set_cavity_key(c, key, v->settings.get(key));
                c.sim.validate();
                print_resolved(err, "gen-cavity2d", v->settings);
                const auto m = run_case(c.sim);
                const fs::path path = c.output.snapshots;
                write_snap(m, path);
                write_summary(out, path, m);
                return kExitOk;
            }};
}

// pod / analyze ----------------------------------------------------------

struct PodVerb {
    std::string input;
    std::string output;
    std::string components = "combined";
    std::string method = "auto";
    std::vector<std::string> fields;
};

fs::path component_path(const fs::path& combined, const std::string& field) {
    auto p = combined;
    p.replace_filename(combined.stem().string() + "." + field + combined.extension().string());
    return p;
}

Verb make_pod(CLI::App& root, std::shared_ptr<PodVerb> v) {
    auto* app = root.add_subcommand("pod", "Singular value spectrum of a SNAP1 file");
    app->add_option("--in", v->input, "Input SNAP1 file")->required();
    app->add_option("--out", v->output, "Spectrum CSV of the full matrix")->required();
    app->add_option("--components", v->components,
                    "combined | all (all adds <stem>.<field>.csv per layout segment)")
        ->capture_default_str();
    app->add_option("--method", v->method, "auto | direct | snapshots")->capture_default_str();
    app->add_option("--fields", v->fields, "Comma-separated layout segments to keep, e.g. u,v")
        ->delimiter(',')
        ->default_str("all");
    return {app, [v](std::ostream& out, std::ostream& err) {
                if (v->components != "combined" && v->components != "all") {
                    throw ArgumentError("--components: expected combined or all, got '" + v->components + "'");
                }
                SvdMethod method = SvdMethod::automatic;
                if (v->method == "direct") {
                    method = SvdMethod::direct;
                } else if (v->method == "snapshots") {
                    method = SvdMethod::method_of_snapshots;
                } else if (v->method != "auto") {
                    throw ArgumentError("--method: expected auto, direct or snapshots, got '" + v->method + "'");
                }
                require_distinct(v->input, v->output);
                Settings s;
                s.add("pod.in", v->input);
                s.add("pod.out", v->output);
                s.add("pod.components", v->components);
                s.add("pod.method", v->method);
                s.add("pod.fields", v->fields.empty() ? std::string("all") : join(v->fields, ","));
                print_resolved(err, "pod", s);

                auto m = read_snap(fs::path(v->input));
                if (!v->fields.empty()) m = select_fields(m, v->fields);
                if (v->components == "all") {
                    for (const auto& seg : m.layout().segments()) require_distinct(v->input, component_path(v->output, seg.name));
                }
                const auto basis = decompose(m, method);
                write_spectrum_csv(basis.spectrum, fs::path(v->output));
                fmt::print(out, "wrote {} ({} singular values)\n", v->output, basis.spectrum.size());
                if (v->components == "all") {
                    for (const auto& [name, part] : component_split(m)) {
                        const auto path = component_path(v->output, name);
                        write_spectrum_csv(decompose(part, method).spectrum, path);
                        fmt::print(out, "wrote {}\n", path.string());
                    }
                }
                return kExitOk;
            }};
}

struct AnalyzeVerb {
    std::vector<std::string> inputs;
    std::vector<double> thresholds{0.9999};
    std::size_t fit_first = 4;
    std::size_t fit_last = 64;
    std::string output = "report.csv";
};

Verb make_analyze(CLI::App& root, std::shared_ptr<AnalyzeVerb> v) {
    auto* app = root.add_subcommand("analyze", "Mode counts, decay fits and pairwise verdicts for spectrum CSVs");
    app->add_option("--in", v->inputs, "Two or more spectrum CSVs; the file stem names each case")->required();
    app->add_option("--threshold", v->thresholds, "Energy thresholds in (0, 1]")->capture_default_str();
    app->add_option("--fit-first", v->fit_first, "First index of the decay-fit window (1-based)")
        ->capture_default_str();
    app->add_option("--fit-last", v->fit_last, "Last index of the decay-fit window")->capture_default_str();
    app->add_option("--out", v->output, "Report CSV; verdicts go to <stem>.verdicts.csv")->capture_default_str();
    return {app, [v](std::ostream& out, std::ostream& err) {
                std::vector<std::string> thresholds;
                for (double t : v->thresholds) thresholds.push_back(fmt::format("{}", t));
                for (const auto& in : v->inputs) require_distinct(in, v->output);
                Settings s;
                s.add("analyze.in", join(v->inputs, " "));
                s.add("analyze.threshold", join(thresholds, " "));
                s.add("analyze.fit_first", std::to_string(v->fit_first));
                s.add("analyze.fit_last", std::to_string(v->fit_last));
                s.add("analyze.out", v->output);
                print_resolved(err, "analyze", s);

                std::vector<std::pair<std::string, PodSpectrum>> spectra;
                for (const auto& in : v->inputs) {
                    auto spectrum = read_spectrum_csv(fs::path(in));
                    spectra.emplace_back(fs::path(in).stem().string(), std::move(spectrum));
                }
                const auto report = compare(spectra, v->thresholds, {v->fit_first, v->fit_last});
                const auto verdicts = write_report(report, v->output);
                for (const auto& c : report.cases) {
                    for (std::size_t k = 0; k < report.thresholds.size(); ++k) {
                        fmt::print(out, "{:<24} threshold {:<8} modes {:>5}  loglog slope {}\n", c.name,
                                   report.thresholds[k], c.modes_needed[k],
                                   c.loglog ? fmt::format("{:.4f}", c.loglog->slope) : std::string("n/a"));
                    }
                }
                fmt::print(out, "wrote {} and {}\n", v->output, verdicts.string());
                return kExitOk;
            }};
}

// repro --------------------------------------------------------------------

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct ReproVerb {
    std::string out_dir = "repro";
    std::size_t nx = 64;
    std::size_t ny = 64;
    std::size_t snapshots = 500;
    std::size_t jobs = 0;
    bool skip_2d = false;
};

struct Task {
    std::vector<std::string> args;
    std::ostringstream out;
    std::ostringstream err;
    int code = kExitOk;
};

/// Runs every task, at most `jobs` at a time; logs are replayed in task order.
int run_tasks(std::vector<Task>& tasks, std::size_t jobs, std::ostream& out, std::ostream& err) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            tasks[i].code = dispatch(tasks[i].args, tasks[i].out, tasks[i].err);
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(jobs, tasks.size()); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    int code = kExitOk;
    for (auto& t : tasks) {
        out << t.out.str();
        err << t.err.str();
        if (code == kExitOk) code = t.code;
    }
    return code;
}

Verb make_repro(CLI::App& root, std::shared_ptr<ReproVerb> v) {
    auto* app = root.add_subcommand("repro", "Full pipeline: every 1D case, mushy and pure cavity, spectra and reports");
    app->add_option("--out-dir", v->out_dir, "Directory for all outputs")->capture_default_str();
    app->add_option("--nx", v->nx, "Cavity cells in x")->capture_default_str();
    app->add_option("--ny", v->ny, "Cavity cells in y")->capture_default_str();
    app->add_option("--snapshots", v->snapshots, "Cavity snapshots per case")->capture_default_str();
    app->add_option("--jobs", v->jobs, "Concurrent generators (0 = hardware threads)")->capture_default_str();
    app->add_flag("--skip-2d", v->skip_2d, "Only run the 1D cases")->capture_default_str();
    return {app, [v](std::ostream& out, std::ostream& err) {
                if (v->snapshots == 0) throw ArgumentError("--snapshots must be positive");
                const fs::path dir = v->out_dir;
                const std::size_t jobs = v->jobs ? v->jobs : std::max(1u, std::thread::hardware_concurrency());
                Settings s;
                s.add("repro.out_dir", v->out_dir);
                s.add("repro.nx", std::to_string(v->nx));
                s.add("repro.ny", std::to_string(v->ny));
                s.add("repro.snapshots", std::to_string(v->snapshots));
                s.add("repro.jobs", std::to_string(jobs));
                s.add("repro.skip_2d", v->skip_2d ? "true" : "false");
                print_resolved(err, "repro", s);
                fs::create_directories(dir);
                auto at = [&dir](const std::string& name) { return (dir / name).string(); };

                std::vector<std::vector<std::string>> gen = {
                    {"gen-heat1d", "--out", at("heat.snap")},
                    {"gen-jump", "--out", at("jump.snap")},
                    {"gen-sigmoid", "--steepness", fmt::format("{}", kSteepSigmoid), "--out", at("sigmoid_steep.snap")},
                    {"gen-sigmoid", "--steepness", fmt::format("{}", kStretchedSigmoid), "--out",
                     at("sigmoid_stretched.snap")},
                };
                std::vector<std::string> cases1d = {"heat", "sigmoid_stretched", "sigmoid_steep", "jump"};
                std::vector<std::string> cases2d = {"mushy", "pure"};
                if (!v->skip_2d) {
                    for (const auto& name : cases2d) {
                        CavityCase c;
                        c.sim.grid = StaggeredGrid2D(v->nx, v->ny);
                        c.sim.n_steps = v->snapshots * c.sim.snap_every;
                        c.sim.viscosity.kind = name == "mushy" ? ViscosityKind::mushy : ViscosityKind::sharp_jump;
                        c.output.snapshots = at(name + ".snap");
                        const auto config = dir / (name + ".ini");
                        std::ofstream(config, std::ios::trunc) << format_cavity_case(c);
                        gen.push_back({"gen-cavity2d", "--config", config.string()});
                    }
                }

                std::vector<Task> tasks(gen.size());
                for (std::size_t i = 0; i < gen.size(); ++i) tasks[i].args = gen[i];
                if (int code = run_tasks(tasks, jobs, out, err); code != kExitOk) return code;

                std::vector<Task> pods;
                auto add_pod = [&](const std::string& name, bool all) {
                    pods.emplace_back().args = {"pod", "--in", at(name + ".snap"), "--out", at(name + ".csv"),
                                                "--components", all ? "all" : "combined"};
                };
                for (const auto& name : cases1d) add_pod(name, false);
                if (!v->skip_2d) {
                    for (const auto& name : cases2d) {
                        add_pod(name, true);
                        pods.emplace_back().args = {"pod", "--in", at(name + ".snap"), "--out",
                                                    at(name + "_velocity.csv"), "--fields", "u,v"};
                    }
                }
                if (int code = run_tasks(pods, jobs, out, err); code != kExitOk) return code;

                std::vector<Task> reports;
                auto add_report = [&](const std::string& report, const std::vector<std::string>& names) {
                    auto& args = reports.emplace_back().args;
                    args = {"analyze", "--threshold", "0.99", "0.999", "0.9999", "--out", at(report), "--in"};
                    for (const auto& n : names) args.push_back(at(n + ".csv"));
                };
                add_report("report_1d.csv", cases1d);
                if (!v->skip_2d) {
                    add_report("report_2d.csv", {"mushy", "pure"});
                    add_report("report_2d_velocity.csv", {"mushy_velocity", "pure_velocity"});
                    for (const auto& name : cases2d) {
                        add_report("report_" + name + "_components.csv",
                                   {name + ".p", name + ".u", name + ".v", name + ".T"});
                    }
                }
                return run_tasks(reports, 1, out, err);
            }};
}

std::string one_line(std::string text) {
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App root{"Snapshot generation, POD spectra and decay analysis", "podsolid"};
    root.require_subcommand(1);
    root.get_formatter()->column_width(40);

    std::vector<Verb> verbs;
    verbs.push_back(make_gen_heat(root, std::make_shared<OneDimVerb>()));
    verbs.push_back(make_gen_jump(root, std::make_shared<OneDimVerb>()));
    verbs.push_back(make_gen_sigmoid(root, std::make_shared<OneDimVerb>()));
    verbs.push_back(make_gen_cavity(root, std::make_shared<CavityVerb>()));
    verbs.push_back(make_pod(root, std::make_shared<PodVerb>()));
    verbs.push_back(make_analyze(root, std::make_shared<AnalyzeVerb>()));
    verbs.push_back(make_repro(root, std::make_shared<ReproVerb>()));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        root.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        return root.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return root.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        fmt::print(err, "error: usage: {}\n", one_line(e.what()));
        return kExitUsage;
    }

    try {
        for (auto& verb : verbs) {
            if (verb.app->parsed()) return verb.run(out, err);
        }
        return kExitUsage;
    } catch (const NumericalError& e) {
        fmt::print(err, "error: numerical: {}\n", one_line(e.what()));
        return kExitNumerical;
    } catch (const ArgumentError& e) {
        fmt::print(err, "error: usage: {}\n", one_line(e.what()));
        return kExitUsage;
    } catch (const std::exception& e) {
        fmt::print(err, "error: data: {}\n", one_line(e.what()));
        return kExitData;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return dispatch(args, out, err);
}

}  // namespace podsolid
