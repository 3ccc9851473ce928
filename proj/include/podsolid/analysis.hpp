#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "podsolid/pod.hpp"

namespace podsolid {

enum class DecayModel {
    semilog,  ///< log sigma_n against n
    loglog,   ///< log sigma_n against log n
};

/// 1-based inclusive index window into a spectrum.
struct FitRange {
    std::size_t first = 4;
    std::size_t last = 64;
};

/// Entries below this fraction of sigma_1 are treated as round-off and left out of fits.
inline constexpr double kFitFloor = 1e-14;

struct DecayFit {
    DecayModel model = DecayModel::loglog;
    double slope = 0.0;
    double intercept = 0.0;
    FitRange range;              ///< window actually fitted, after the round-off cut
    double residual = 0.0;       ///< RMS of the fit in log space
    std::size_t cut_index = 0;   ///< number of leading entries at or above kFitFloor * sigma_1
};

/**
 * Least-squares line through (n, ln sigma_n) or (ln n, ln sigma_n) over
 * `range`. The window must lie inside the spectrum; trailing entries under
 * the round-off floor are dropped and at least 4 points must remain.
 * Zero or negative entries in the window throw DegenerateSpectrumError.
 */
DecayFit fit_decay(const PodSpectrum& s, DecayModel model, FitRange range = {});

/// Number of leading entries at or above kFitFloor * sigma_1 (0 for an all-zero spectrum).
std::size_t round_off_cut(const PodSpectrum& s);

enum class Verdict {
    fewer,  ///< case_a needs fewer modes than case_b
    more,
    tie,
};

const char* verdict_name(Verdict v);

struct CaseReport {
    std::string name;
    std::vector<std::size_t> modes_needed;  ///< one per report threshold
    std::vector<double> normalized;
    std::optional<DecayFit> loglog;         ///< empty when fewer than 4 points survive the cut
    std::optional<DecayFit> semilog;
};

struct PairVerdict {
    std::string case_a;
    std::string case_b;
    double threshold = 0.0;
    std::size_t modes_a = 0;
    std::size_t modes_b = 0;
    Verdict verdict = Verdict::tie;
};

struct SpectrumReport {
    std::vector<double> thresholds;  ///< ascending, unique
    FitRange fit_range;              ///< requested window; per-case fits may be clipped
    std::vector<CaseReport> cases;
    std::vector<PairVerdict> verdicts;

    const CaseReport& at(const std::string& name) const;
};

/**
 * Mode counts per case and threshold, decay fits and pairwise verdicts for
 * every pair (i < j) in input order. Needs at least two spectra with
 * distinct names; thresholds must lie in (0, 1].
 */
SpectrumReport compare(const std::vector<std::pair<std::string, PodSpectrum>>& spectra,
                       std::vector<double> thresholds, FitRange fit_range = {});

// Report CSV: case,threshold,modes_needed,loglog_slope,semilog_slope,fit_residual,fit_first,fit_last,cut_index
// Verdict CSV: case_a,case_b,threshold,verdict
void write_report_csv(const SpectrumReport& r, std::ostream& out);
void write_verdicts_csv(const SpectrumReport& r, std::ostream& out);

/// Writes `path` and the verdicts next to it as `<stem>.verdicts.csv`.
std::filesystem::path write_report(const SpectrumReport& r, const std::filesystem::path& path);

}  // namespace podsolid
