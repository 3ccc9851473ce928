#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "podsolid/flow.hpp"

namespace podsolid {

/// Parsed `key = value` file grouped under `[section]` headers. Blank lines
/// and lines starting with '#' or ';' are ignored.
class ConfigFile {
public:
    struct Entry {
        std::string value;
        std::size_t line = 0;
    };

    static ConfigFile parse(std::istream& in);
    static ConfigFile parse_file(const std::filesystem::path& path);

    const std::map<std::string, std::map<std::string, Entry>>& sections() const noexcept { return sections_; }
    bool has(const std::string& section, const std::string& key) const;
    const Entry& at(const std::string& section, const std::string& key) const;

    /// Throws FormatError naming the first key not in `allowed` ("section.key").
    void require_known(const std::vector<std::string>& allowed) const;

private:
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

/// Text to number conversions that name `key` in their ArgumentError.
double parse_real(const std::string& key, const std::string& text);
std::size_t parse_count(const std::string& key, const std::string& text);

/// Output options that live next to the solver settings in a case file.
struct OutputOptions {
    std::string snapshots = "cavity.snap";
};

struct CavityCase {
    SimConfig sim;
    OutputOptions output;
};

/// All addressable keys as "section.key", in print order.
std::vector<std::string> cavity_config_keys();

/// Applies every key of `file` on top of `base`; unknown keys are errors.
CavityCase cavity_case_from(const ConfigFile& file, CavityCase base = {});

/// Sets one key from its textual value (used for CLI overrides too).
void set_cavity_key(CavityCase& c, const std::string& dotted_key, const std::string& value);
std::string get_cavity_key(const CavityCase& c, const std::string& dotted_key);

/// Full resolved configuration in the case-file syntax.
std::string format_cavity_case(const CavityCase& c);

/// Keys whose values differ between two cases.
std::vector<std::string> diff_cavity_cases(const CavityCase& a, const CavityCase& b);

}  // namespace podsolid
