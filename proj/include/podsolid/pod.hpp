#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "podsolid/snapshot.hpp"

namespace podsolid {

enum class SvdMethod {
    automatic,            ///< method_of_snapshots when n_dof > 4 * n_snaps, else direct
    direct,               ///< thin SVD of X
    method_of_snapshots,  ///< eigen-decomposition of the Gram matrix X^T X
};

/// Singular values sorted non-increasing, all finite and >= 0.
class PodSpectrum {
public:
    PodSpectrum(std::vector<double> sigma, std::string source_label = {});

    const std::vector<double>& sigma() const noexcept { return sigma_; }
    const std::string& source_label() const noexcept { return source_label_; }
    std::size_t size() const noexcept { return sigma_.size(); }
    double operator[](std::size_t i) const { return sigma_[i]; }

    /// Sum of squared singular values with index >= r (zero-based), i.e. the
    /// squared Frobenius error of the best rank-r approximation.
    double tail_energy(std::size_t r) const;
    double total_energy() const { return tail_energy(0); }

private:
    std::vector<double> sigma_;
    std::string source_label_;
};

/**
 * POD of a snapshot matrix X = U S V^T.
 *
 * `modes` holds the leading columns of U (orthonormal), `coeffs` the matching
 * rows of S V^T, so `modes * coeffs` reconstructs X at full rank. The
 * spectrum always keeps every singular value, also after truncation.
 */
struct PodBasis {
    Eigen::MatrixXd modes;
    Eigen::MatrixXd coeffs;
    PodSpectrum spectrum;

    std::size_t rank() const noexcept { return static_cast<std::size_t>(modes.cols()); }
};

struct EnergyReport {
    double threshold = 1.0;
    std::size_t modes_needed = 0;
    /// cumulative[i] = energy fraction captured by the first i + 1 modes.
    std::vector<double> cumulative;
};

PodBasis decompose(const SnapshotMatrix& m, SvdMethod method = SvdMethod::automatic);
PodBasis decompose(const Eigen::MatrixXd& x, SvdMethod method, std::string label = {});

/// sigma_i / sigma_1. Throws DegenerateSpectrumError when sigma_1 == 0.
std::vector<double> normalized_spectrum(const PodSpectrum& s);

/// Cumulative squared-singular-value energy fractions.
std::vector<double> cumulative_energy(const PodSpectrum& s);

/// Smallest N whose leading modes capture `threshold` of the energy.
EnergyReport modes_for_energy(const PodSpectrum& s, double threshold);

PodBasis truncate(const PodBasis& b, std::size_t r);

Eigen::MatrixXd reconstruct(const PodBasis& b);

/// One sub-matrix per layout segment, each with a single-field layout.
std::map<std::string, SnapshotMatrix> component_split(const SnapshotMatrix& m);

/// Rows of the named segments stacked in the given order, layout kept per segment.
SnapshotMatrix select_fields(const SnapshotMatrix& m, const std::vector<std::string>& names);

// Spectrum CSV: header `index,sigma,sigma_norm,cumulative_energy`, 1-based
// index, floats with 17 significant digits.
void write_spectrum_csv(const PodSpectrum& s, std::ostream& out);
void write_spectrum_csv(const PodSpectrum& s, const std::filesystem::path& path);
PodSpectrum read_spectrum_csv(std::istream& in, std::string label = {});
PodSpectrum read_spectrum_csv(const std::filesystem::path& path);

}  // namespace podsolid
