#include "podsolid/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

#include <fmt/format.h>

#include "podsolid/errors.hpp"

namespace podsolid {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

double parse_real(const std::string& key, const std::string& text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ArgumentError(fmt::format("{}: expected a finite number, got '{}'", key, text));
    }
    return value;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
    std::size_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ArgumentError(fmt::format("{}: expected a non-negative integer, got '{}'", key, text));
    }
    return value;
}

namespace {

struct KeySpec {
    const char* name;
    std::function<void(CavityCase&, const std::string&)> set;
    std::function<std::string(const CavityCase&)> get;
};

std::string num(double v) { return fmt::format("{}", v); }

// Grid is immutable, so grid keys rebuild it with one dimension changed.
void set_grid(CavityCase& c, std::size_t nx, std::size_t ny, double lx, double ly) {
    c.sim.grid = StaggeredGrid2D(nx, ny, lx, ly);
}

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = [] {
        std::vector<KeySpec> t;
        auto real = [&t](const char* name, double SimConfig::*field) {
            t.push_back({name, [name, field](CavityCase& c, const std::string& v) { c.sim.*field = parse_real(name, v); },
                         [field](const CavityCase& c) { return num(c.sim.*field); }});
        };
        auto count = [&t](const char* name, std::size_t SimConfig::*field) {
            t.push_back({name, [name, field](CavityCase& c, const std::string& v) { c.sim.*field = parse_count(name, v); },
                         [field](const CavityCase& c) { return fmt::format("{}", c.sim.*field); }});
        };
        auto visc = [&t](const char* name, double ViscosityModel::*field) {
            t.push_back({name,
                         [name, field](CavityCase& c, const std::string& v) {
                             c.sim.viscosity.*field = parse_real(name, v);
                         },
                         [field](const CavityCase& c) { return num(c.sim.viscosity.*field); }});
        };
        auto wall = [&t](const char* name, double RightWallBC::*field) {
            t.push_back({name,
                         [name, field](CavityCase& c, const std::string& v) {
                             c.sim.right_wall.*field = parse_real(name, v);
                         },
                         [field](const CavityCase& c) { return num(c.sim.right_wall.*field); }});
        };

        t.push_back({"grid.nx",
                     [](CavityCase& c, const std::string& v) {
                         const auto& g = c.sim.grid;
                         set_grid(c, parse_count("grid.nx", v), g.ny(), g.lx(), g.ly());
                     },
                     [](const CavityCase& c) { return fmt::format("{}", c.sim.grid.nx()); }});
        t.push_back({"grid.ny",
                     [](CavityCase& c, const std::string& v) {
                         const auto& g = c.sim.grid;
                         set_grid(c, g.nx(), parse_count("grid.ny", v), g.lx(), g.ly());
                     },
                     [](const CavityCase& c) { return fmt::format("{}", c.sim.grid.ny()); }});
        t.push_back({"grid.lx",
                     [](CavityCase& c, const std::string& v) {
                         const auto& g = c.sim.grid;
                         set_grid(c, g.nx(), g.ny(), parse_real("grid.lx", v), g.ly());
                     },
                     [](const CavityCase& c) { return num(c.sim.grid.lx()); }});
        t.push_back({"grid.ly",
                     [](CavityCase& c, const std::string& v) {
                         const auto& g = c.sim.grid;
                         set_grid(c, g.nx(), g.ny(), g.lx(), parse_real("grid.ly", v));
                     },
                     [](const CavityCase& c) { return num(c.sim.grid.ly()); }});

        real("time.dt", &SimConfig::dt);
        count("time.n_steps", &SimConfig::n_steps);
        count("time.snap_every", &SimConfig::snap_every);
        count("time.inner_iterations", &SimConfig::inner_iterations);
        real("time.cfl_max", &SimConfig::cfl_max);

        t.push_back({"material.viscosity_model",
                     [](CavityCase& c, const std::string& v) {
                         if (v == "mushy") {
                             c.sim.viscosity.kind = ViscosityKind::mushy;
                         } else if (v == "sharp_jump") {
                             c.sim.viscosity.kind = ViscosityKind::sharp_jump;
                         } else {
                             throw ArgumentError("material.viscosity_model: expected mushy or sharp_jump, got '" + v + "'");
                         }
                     },
                     [](const CavityCase& c) {
                         return std::string(c.sim.viscosity.kind == ViscosityKind::mushy ? "mushy" : "sharp_jump");
                     }});
        visc("material.mu_liquid", &ViscosityModel::mu_liquid);
        visc("material.t_freeze", &ViscosityModel::t_freeze);
        visc("material.mushy_coeff", &ViscosityModel::mushy_coeff);
        visc("material.jump_factor", &ViscosityModel::jump_factor);
        visc("material.mu_cap", &ViscosityModel::mu_cap);
        real("material.buoyancy_coeff", &SimConfig::buoyancy_coeff);
        real("material.t_ref", &SimConfig::t_ref);
        real("material.thermal_diffusivity", &SimConfig::thermal_diffusivity);
        real("material.initial_temp", &SimConfig::initial_temp);

        t.push_back({"boundary.right_wall",
                     [](CavityCase& c, const std::string& v) {
                         using K = RightWallBC::Kind;
                         if (v == "robin") {
                             c.sim.right_wall.kind = K::robin;
                         } else if (v == "dirichlet") {
                             c.sim.right_wall.kind = K::dirichlet;
                         } else if (v == "adiabatic") {
                             c.sim.right_wall.kind = K::adiabatic;
                         } else {
                             throw ArgumentError("boundary.right_wall: expected robin, dirichlet or adiabatic, got '" + v + "'");
                         }
                     },
                     [](const CavityCase& c) {
                         switch (c.sim.right_wall.kind) {
                             case RightWallBC::Kind::robin: return std::string("robin");
                             case RightWallBC::Kind::dirichlet: return std::string("dirichlet");
                             case RightWallBC::Kind::adiabatic: break;
                         }
                         return std::string("adiabatic");
                     }});
        wall("boundary.h", &RightWallBC::h);
        wall("boundary.t_ambient", &RightWallBC::t_ambient);
        wall("boundary.t_cold", &RightWallBC::t_cold);
        t.push_back({"boundary.walls",
                     [](CavityCase& c, const std::string& v) {
                         if (v == "no_slip") {
                             c.sim.walls = WallKind::no_slip;
                         } else if (v == "free_slip") {
                             c.sim.walls = WallKind::free_slip;
                         } else {
                             throw ArgumentError("boundary.walls: expected no_slip or free_slip, got '" + v + "'");
                         }
                     },
                     [](const CavityCase& c) {
                         return std::string(c.sim.walls == WallKind::no_slip ? "no_slip" : "free_slip");
                     }});

        t.push_back({"output.snapshots", [](CavityCase& c, const std::string& v) { c.output.snapshots = v; },
                     [](const CavityCase& c) { return c.output.snapshots; }});
        return t;
    }();
    return table;
}

const KeySpec& find_key(const std::string& dotted) {
    for (const auto& spec : key_table()) {
        if (dotted == spec.name) return spec;
    }
    throw ArgumentError("unknown configuration key '" + dotted + "'");
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in) {
    ConfigFile cfg;
    std::string raw;
    std::string section;
    std::size_t line_no = 0;
    std::size_t offset = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t line_offset = offset;
        offset += raw.size() + 1;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw FormatError(fmt::format("line {}: malformed section header '{}'", line_no, line), line_offset);
            }
            section = trim(line.substr(1, line.size() - 2));
            cfg.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw FormatError(fmt::format("line {}: expected 'key = value', got '{}'", line_no, line), line_offset);
        }
        if (section.empty()) {
            throw FormatError(fmt::format("line {}: key outside of any [section]", line_no), line_offset);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw FormatError(fmt::format("line {}: empty key", line_no), line_offset);
        auto& entries = cfg.sections_[section];
        if (entries.contains(key)) {
            throw FormatError(fmt::format("line {}: duplicate key '{}.{}'", line_no, section, key), line_offset);
        }
        entries.emplace(key, Entry{value, line_no});
    }
    return cfg;
}

ConfigFile ConfigFile::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open config file '" + path.string() + "'");
    return parse(in);
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    return it != sections_.end() && it->second.contains(key);
}

const ConfigFile::Entry& ConfigFile::at(const std::string& section, const std::string& key) const {
    if (!has(section, key)) throw ArgumentError("missing configuration key '" + section + "." + key + "'");
    return sections_.at(section).at(key);
}

void ConfigFile::require_known(const std::vector<std::string>& allowed) const {
    for (const auto& [section, entries] : sections_) {
        for (const auto& [key, entry] : entries) {
            const std::string dotted = section + "." + key;
            if (std::find(allowed.begin(), allowed.end(), dotted) == allowed.end()) {
                throw FormatError(fmt::format("line {}: unknown key '{}'", entry.line, dotted));
            }
        }
    }
}

std::vector<std::string> cavity_config_keys() {
    std::vector<std::string> keys;
    for (const auto& spec : key_table()) keys.emplace_back(spec.name);
    return keys;
}

void set_cavity_key(CavityCase& c, const std::string& dotted_key, const std::string& value) {
    find_key(dotted_key).set(c, value);
}

std::string get_cavity_key(const CavityCase& c, const std::string& dotted_key) {
    return find_key(dotted_key).get(c);
}

CavityCase cavity_case_from(const ConfigFile& file, CavityCase base) {
    file.require_known(cavity_config_keys());
    // Table order, so grid dimensions are applied before anything else.
    for (const auto& spec : key_table()) {
        const std::string dotted = spec.name;
        const auto dot = dotted.find('.');
        const std::string section = dotted.substr(0, dot);
        const std::string key = dotted.substr(dot + 1);
        if (!file.has(section, key)) continue;
        const auto& entry = file.at(section, key);
        try {
            spec.set(base, entry.value);
        } catch (const ArgumentError& e) {
            throw FormatError(fmt::format("line {}: {}", entry.line, e.what()));
        }
    }
    return base;
}

std::string format_cavity_case(const CavityCase& c) {
    std::ostringstream out;
    std::string current;
    for (const auto& spec : key_table()) {
        const std::string dotted = spec.name;
        const auto dot = dotted.find('.');
        const std::string section = dotted.substr(0, dot);
        if (section != current) {
            if (!current.empty()) out << '\n';
            out << '[' << section << "]\n";
            current = section;
        }
        out << dotted.substr(dot + 1) << " = " << spec.get(c) << '\n';
    }
    return out.str();
}

std::vector<std::string> diff_cavity_cases(const CavityCase& a, const CavityCase& b) {
    std::vector<std::string> diff;
    for (const auto& spec : key_table()) {
        if (spec.get(a) != spec.get(b)) diff.emplace_back(spec.name);
    }
    return diff;
}

}  // namespace podsolid
