#include "podsolid/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "podsolid/errors.hpp"

namespace podsolid {

namespace {

std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    return fmt::format("{:.17g}", v);
}

}  // namespace

std::size_t round_off_cut(const PodSpectrum& s) {
    const double floor = kFitFloor * s[0];
    if (!(s[0] > 0.0)) return 0;
    std::size_t cut = 0;
    while (cut < s.size() && s[cut] >= floor) ++cut;
    return cut;
}

DecayFit fit_decay(const PodSpectrum& s, DecayModel model, FitRange range) {
    if (range.first < 1 || range.last < range.first || range.last > s.size()) {
        throw ArgumentError(fmt::format("fit range [{}, {}] does not lie within a spectrum of length {}", range.first,
                                        range.last, s.size()));
    }
    for (std::size_t n = range.first; n <= range.last; ++n) {
        if (!(s[n - 1] > 0.0)) {
            throw DegenerateSpectrumError(fmt::format("cannot fit decay: sigma_{} = {}", n, s[n - 1]));
        }
    }
    DecayFit fit;
    fit.model = model;
    fit.cut_index = round_off_cut(s);
    fit.range = {range.first, std::min(range.last, fit.cut_index)};
    if (fit.range.last < fit.range.first || fit.range.last - fit.range.first + 1 < 4) {
        throw DegenerateSpectrumError(fmt::format("cannot fit decay: fewer than 4 entries of [{}, {}] lie above the "
                                                  "round-off floor (cut at {})",
                                                  range.first, range.last, fit.cut_index));
    }

    const std::size_t count = fit.range.last - fit.range.first + 1;
    Eigen::MatrixXd a(count, 2);
    Eigen::VectorXd b(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double n = static_cast<double>(fit.range.first + k);
        a(k, 0) = model == DecayModel::loglog ? std::log(n) : n;
        a(k, 1) = 1.0;
        b(k) = std::log(s[fit.range.first + k - 1]);
    }
    const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
    fit.slope = coef(0);
    fit.intercept = coef(1);
    fit.residual = std::sqrt((a * coef - b).squaredNorm() / static_cast<double>(count));
    return fit;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::fewer: return "fewer";
        case Verdict::more: return "more";
        case Verdict::tie: break;
    }
    return "tie";
}

const CaseReport& SpectrumReport::at(const std::string& name) const {
    for (const auto& c : cases) {
        if (c.name == name) return c;
    }
    throw ArgumentError("no case named '" + name + "' in report");
}

SpectrumReport compare(const std::vector<std::pair<std::string, PodSpectrum>>& spectra,
                       std::vector<double> thresholds, FitRange fit_range) {
    if (spectra.size() < 2) {
        throw ArgumentError(fmt::format("comparison needs at least two spectra, got {}", spectra.size()));
    }
    if (thresholds.empty()) throw ArgumentError("comparison needs at least one energy threshold");
    for (double t : thresholds) {
        if (!(t > 0.0 && t <= 1.0)) throw ArgumentError(fmt::format("energy threshold must lie in (0, 1], got {}", t));
    }
    if (fit_range.first < 1 || fit_range.last < fit_range.first) {
        throw ArgumentError(fmt::format("invalid fit range [{}, {}]", fit_range.first, fit_range.last));
    }
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    std::set<std::string> names;
    for (const auto& [name, s] : spectra) {
        if (!names.insert(name).second) throw ArgumentError("duplicate case name '" + name + "'");
    }

    SpectrumReport report;
    report.thresholds = thresholds;
    report.fit_range = fit_range;
    for (const auto& [name, s] : spectra) {
        CaseReport c;
        c.name = name;
        c.normalized = normalized_spectrum(s);
        for (double t : thresholds) c.modes_needed.push_back(modes_for_energy(s, t).modes_needed);
        // Clip to the spectrum and its round-off floor so short or smooth spectra still get a fit when possible.
        const std::size_t last = std::min({fit_range.last, s.size(), round_off_cut(s)});
        if (last >= fit_range.first && last - fit_range.first + 1 >= 4) {
            c.loglog = fit_decay(s, DecayModel::loglog, {fit_range.first, last});
            c.semilog = fit_decay(s, DecayModel::semilog, {fit_range.first, last});
        }
        report.cases.push_back(std::move(c));
    }

    for (std::size_t i = 0; i < report.cases.size(); ++i) {
        for (std::size_t j = i + 1; j < report.cases.size(); ++j) {
            for (std::size_t k = 0; k < thresholds.size(); ++k) {
                PairVerdict v;
                v.case_a = report.cases[i].name;
                v.case_b = report.cases[j].name;
                v.threshold = thresholds[k];
                v.modes_a = report.cases[i].modes_needed[k];
                v.modes_b = report.cases[j].modes_needed[k];
                v.verdict = v.modes_a < v.modes_b ? Verdict::fewer : v.modes_a > v.modes_b ? Verdict::more : Verdict::tie;
                report.verdicts.push_back(v);
            }
        }
    }
    return report;
}

void write_report_csv(const SpectrumReport& r, std::ostream& out) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    out << "case,threshold,modes_needed,loglog_slope,semilog_slope,fit_residual,fit_first,fit_last,cut_index\n";
    for (const auto& c : r.cases) {
        const std::size_t cut = c.loglog ? c.loglog->cut_index : 0;
        const FitRange range = c.loglog ? c.loglog->range : FitRange{0, 0};
        for (std::size_t k = 0; k < r.thresholds.size(); ++k) {
            fmt::print(out, "{},{},{},{},{},{},{},{},{}\n", c.name, r.thresholds[k], c.modes_needed[k],
                       csv_number(c.loglog ? c.loglog->slope : nan), csv_number(c.semilog ? c.semilog->slope : nan),
                       csv_number(c.loglog ? c.loglog->residual : nan), range.first, range.last, cut);
        }
    }
}

void write_verdicts_csv(const SpectrumReport& r, std::ostream& out) {
    out << "case_a,case_b,threshold,verdict\n";
    for (const auto& v : r.verdicts) {
        fmt::print(out, "{},{},{},{}\n", v.case_a, v.case_b, v.threshold, verdict_name(v.verdict));
    }
}

std::filesystem::path write_report(const SpectrumReport& r, const std::filesystem::path& path) {
    auto verdict_path = path;
    verdict_path.replace_filename(path.stem().string() + ".verdicts.csv");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    write_report_csv(r, out);
    std::ofstream vout(verdict_path, std::ios::trunc);
    if (!vout) throw Error("cannot open '" + verdict_path.string() + "' for writing");
    write_verdicts_csv(r, vout);
    if (!out || !vout) throw Error("failed writing report '" + path.string() + "'");
    return verdict_path;
}

}  // namespace podsolid
