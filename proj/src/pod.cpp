#include "podsolid/pod.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "podsolid/errors.hpp"

namespace podsolid {

namespace {

// Gram eigenvalues below this fraction of the largest are treated as zero.
constexpr double kGramClamp = 1e-14;

void check_finite(const Eigen::MatrixXd& x) {
    if (x.size() == 0) throw DimensionError("cannot decompose an empty matrix");
    if (!x.allFinite()) throw DataError("cannot decompose a matrix with non-finite entries");
}

// Flip each mode so its largest-magnitude entry is positive; coeffs follow.
void fix_signs(Eigen::MatrixXd& modes, Eigen::MatrixXd& coeffs) {
    for (Eigen::Index k = 0; k < modes.cols(); ++k) {
        Eigen::Index arg = 0;
        modes.col(k).cwiseAbs().maxCoeff(&arg);
        if (modes(arg, k) < 0.0) {
            modes.col(k) *= -1.0;
            coeffs.row(k) *= -1.0;
        }
    }
}

PodBasis direct_svd(const Eigen::MatrixXd& x, std::string label) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("SVD did not converge", -1);
    }
    const Eigen::VectorXd& s = svd.singularValues();
    Eigen::MatrixXd modes = svd.matrixU();
    Eigen::MatrixXd coeffs = s.asDiagonal() * svd.matrixV().transpose();
    fix_signs(modes, coeffs);
    return {std::move(modes), std::move(coeffs), PodSpectrum({s.data(), s.data() + s.size()}, std::move(label))};
}

PodBasis snapshots_svd(const Eigen::MatrixXd& x, std::string label) {
    const Eigen::Index n_snaps = x.cols();
    const Eigen::Index r = std::min(x.rows(), n_snaps);
    const Eigen::MatrixXd gram = x.transpose() * x;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    if (eig.info() != Eigen::Success) {
        // Eigen's tridiagonal QR gives up after 30 sweeps per row.
        throw NumericalError("Gram eigen-decomposition did not converge", 30 * static_cast<long>(n_snaps));
    }
    // Ascending -> descending.
    const Eigen::VectorXd lambda = eig.eigenvalues().reverse();
    const Eigen::MatrixXd vecs = eig.eigenvectors().rowwise().reverse();
    const double lambda_max = std::max(lambda(0), 0.0);

    std::vector<double> sigma(static_cast<std::size_t>(r), 0.0);
    Eigen::Index n_positive = 0;
    for (Eigen::Index i = 0; i < r; ++i) {
        const double l = lambda(i);
        if (lambda_max > 0.0 && l > kGramClamp * lambda_max) {
            sigma[static_cast<std::size_t>(i)] = std::sqrt(l);
            ++n_positive;
        }
    }

    // Lift to spatial modes, then re-orthonormalise; Householder QR also
    // completes the basis for the clamped (zero) singular values.
    Eigen::MatrixXd lifted = x * vecs.leftCols(n_positive);
    for (Eigen::Index i = 0; i < n_positive; ++i) lifted.col(i) /= sigma[static_cast<std::size_t>(i)];

    Eigen::MatrixXd modes;
    if (n_positive > 0) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(lifted);
        modes = qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), r);
        const Eigen::MatrixXd& packed = qr.matrixQR();
        for (Eigen::Index i = 0; i < n_positive; ++i) {
            if (packed(i, i) < 0.0) modes.col(i) *= -1.0;
        }
    } else {
        modes = Eigen::MatrixXd::Identity(x.rows(), r);
    }
    Eigen::MatrixXd coeffs = modes.transpose() * x;
    fix_signs(modes, coeffs);
    return {std::move(modes), std::move(coeffs), PodSpectrum(std::move(sigma), std::move(label))};
}

}  // namespace

PodSpectrum::PodSpectrum(std::vector<double> sigma, std::string source_label)
    : sigma_(std::move(sigma)), source_label_(std::move(source_label)) {
    if (sigma_.empty()) throw DataError("spectrum needs at least one singular value");
    for (std::size_t i = 0; i < sigma_.size(); ++i) {
        if (!std::isfinite(sigma_[i]) || sigma_[i] < 0.0) {
            throw DataError("singular values must be finite and non-negative (index " + std::to_string(i + 1) + ")");
        }
        if (i > 0 && sigma_[i] > sigma_[i - 1]) {
            throw DataError("singular values must be non-increasing (index " + std::to_string(i + 1) + ")");
        }
    }
}

double PodSpectrum::tail_energy(std::size_t r) const {
    double sum = 0.0;
    // Smallest first for accuracy.
    for (std::size_t i = sigma_.size(); i > r; --i) sum += sigma_[i - 1] * sigma_[i - 1];
    return sum;
}

PodBasis decompose(const Eigen::MatrixXd& x, SvdMethod method, std::string label) {
    check_finite(x);
    if (method == SvdMethod::automatic) {
        method = x.rows() > 4 * x.cols() ? SvdMethod::method_of_snapshots : SvdMethod::direct;
    }
    return method == SvdMethod::direct ? direct_svd(x, std::move(label)) : snapshots_svd(x, std::move(label));
}

PodBasis decompose(const SnapshotMatrix& m, SvdMethod method) { return decompose(m.data(), method); }

std::vector<double> normalized_spectrum(const PodSpectrum& s) {
    const double first = s[0];
    if (!(first > 0.0)) throw DegenerateSpectrumError("cannot normalise an all-zero spectrum");
    std::vector<double> out(s.size());
    std::transform(s.sigma().begin(), s.sigma().end(), out.begin(), [first](double v) { return v / first; });
    out[0] = 1.0;
    return out;
}

std::vector<double> cumulative_energy(const PodSpectrum& s) {
    std::vector<double> partial(s.size());
    double running = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        running += s[i] * s[i];
        partial[i] = running;
    }
    if (!(running > 0.0)) throw DegenerateSpectrumError("spectrum carries no energy");
    // The last partial sum is the total, so the final fraction is exactly 1.
    for (double& p : partial) p /= running;
    return partial;
}

EnergyReport modes_for_energy(const PodSpectrum& s, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw ArgumentError(fmt::format("energy threshold must lie in (0, 1], got {}", threshold));
    }
    EnergyReport report;
    report.threshold = threshold;
    report.cumulative = cumulative_energy(s);
    const auto it = std::find_if(report.cumulative.begin(), report.cumulative.end(),
                                 [threshold](double c) { return c >= threshold; });
    report.modes_needed = static_cast<std::size_t>(it - report.cumulative.begin()) + 1;
    return report;
}

PodBasis truncate(const PodBasis& b, std::size_t r) {
    if (r == 0 || r > b.rank()) {
        throw ArgumentError(fmt::format("truncation rank must lie in [1, {}], got {}", b.rank(), r));
    }
    const auto rr = static_cast<Eigen::Index>(r);
    return {b.modes.leftCols(rr), b.coeffs.topRows(rr), b.spectrum};
}

Eigen::MatrixXd reconstruct(const PodBasis& b) { return b.modes * b.coeffs; }

std::map<std::string, SnapshotMatrix> component_split(const SnapshotMatrix& m) {
    std::map<std::string, SnapshotMatrix> parts;
    for (const auto& seg : m.layout().segments()) {
        Eigen::MatrixXd block = m.data().middleRows(static_cast<Eigen::Index>(seg.row_offset),
                                                    static_cast<Eigen::Index>(seg.row_count));
        parts.emplace(seg.name, SnapshotMatrix(std::move(block), FieldLayout::single(seg.name, seg.row_count),
                                               m.labels()));
    }
    return parts;
}

SnapshotMatrix select_fields(const SnapshotMatrix& m, const std::vector<std::string>& names) {
    if (names.empty()) throw ArgumentError("select_fields needs at least one field name");
    std::vector<std::pair<std::string, std::size_t>> counts;
    for (const auto& name : names) counts.emplace_back(name, m.layout().find(name).row_count);
    FieldLayout layout = FieldLayout::from_counts(counts);
    Eigen::MatrixXd data(static_cast<Eigen::Index>(layout.total_rows()), m.data().cols());
    for (std::size_t k = 0; k < names.size(); ++k) {
        const auto& src = m.layout().find(names[k]);
        data.middleRows(static_cast<Eigen::Index>(layout.segments()[k].row_offset),
                        static_cast<Eigen::Index>(src.row_count)) =
            m.data().middleRows(static_cast<Eigen::Index>(src.row_offset), static_cast<Eigen::Index>(src.row_count));
    }
    return SnapshotMatrix(std::move(data), std::move(layout), m.labels());
}

void write_spectrum_csv(const PodSpectrum& s, std::ostream& out) {
    const double first = s[0];
    // An all-zero spectrum (e.g. a field that never moves) is written with zero fractions.
    const auto cumulative = first > 0.0 ? cumulative_energy(s) : std::vector<double>(s.size(), 0.0);
    out << "index,sigma,sigma_norm,cumulative_energy\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double norm = first > 0.0 ? s[i] / first : 0.0;
        out << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", i + 1, s[i], norm, cumulative[i]);
    }
}

void write_spectrum_csv(const PodSpectrum& s, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    write_spectrum_csv(s, out);
}

PodSpectrum read_spectrum_csv(std::istream& in, std::string label) {
    std::string line;
    std::size_t offset = 0;
    if (!std::getline(in, line) || line != "index,sigma,sigma_norm,cumulative_energy") {
        throw FormatError("spectrum CSV must start with 'index,sigma,sigma_norm,cumulative_energy'", 0);
    }
    offset += line.size() + 1;
    std::vector<double> sigma;
    while (std::getline(in, line)) {
        if (line.empty()) {
            offset += 1;
            continue;
        }
        std::istringstream row(line);
        std::string index_field;
        std::string sigma_field;
        if (!std::getline(row, index_field, ',') || !std::getline(row, sigma_field, ',')) {
            throw FormatError("malformed spectrum CSV row", offset);
        }
        try {
            std::size_t used = 0;
            const long index = std::stol(index_field);
            const double value = std::stod(sigma_field, &used);
            if (used != sigma_field.size() || index != static_cast<long>(sigma.size()) + 1) {
                throw FormatError("bad spectrum CSV row", offset);
            }
            sigma.push_back(value);
        } catch (const std::logic_error&) {
            throw FormatError("unparsable spectrum CSV row", offset);
        }
        offset += line.size() + 1;
    }
    try {
        return PodSpectrum(std::move(sigma), std::move(label));
    } catch (const DataError& e) {
        throw FormatError(std::string("invalid spectrum CSV: ") + e.what(), offset);
    }
}

PodSpectrum read_spectrum_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path.string() + "' for reading");
    return read_spectrum_csv(in, path.stem().string());
}

}  // namespace podsolid
