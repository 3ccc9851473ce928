#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace podsolid {

struct FieldSegment {
    std::string name;
    std::size_t row_offset = 0;
    std::size_t row_count = 0;

    bool operator==(const FieldSegment&) const = default;
};

/// Ordered partition of the snapshot rows into named fields.
/// Segments must be contiguous, start at row 0 and have unique names.
class FieldLayout {
public:
    explicit FieldLayout(std::vector<FieldSegment> segments);

    /// One segment named `name` spanning all rows.
    static FieldLayout single(std::string name, std::size_t n_rows);
    /// Consecutive segments from (name, row_count) pairs.
    static FieldLayout from_counts(const std::vector<std::pair<std::string, std::size_t>>& counts);

    const std::vector<FieldSegment>& segments() const noexcept { return segments_; }
    std::size_t total_rows() const noexcept;
    const FieldSegment& find(const std::string& name) const;

    bool operator==(const FieldLayout&) const = default;

private:
    std::vector<FieldSegment> segments_;
};

/**
 * Snapshot matrix X: one column per time instant, one row per degree of
 * freedom. Immutable once built; every entry is finite and the labels are
 * strictly increasing.
 */
class SnapshotMatrix {
public:
    SnapshotMatrix(Eigen::MatrixXd data, FieldLayout layout, std::vector<double> labels);

    const Eigen::MatrixXd& data() const noexcept { return data_; }
    const FieldLayout& layout() const noexcept { return layout_; }
    const std::vector<double>& labels() const noexcept { return labels_; }

    std::size_t n_dof() const noexcept { return static_cast<std::size_t>(data_.rows()); }
    std::size_t n_snaps() const noexcept { return static_cast<std::size_t>(data_.cols()); }

    std::vector<double> column(std::size_t j) const;

    bool operator==(const SnapshotMatrix& other) const;

private:
    Eigen::MatrixXd data_;
    FieldLayout layout_;
    std::vector<double> labels_;
};

/// Stack flat field vectors side by side. Throws DimensionError on length
/// mismatch, DataError on non-finite values or non-increasing labels.
SnapshotMatrix assemble(std::span<const std::vector<double>> columns, const FieldLayout& layout,
                        std::span<const double> labels);

/// Incremental column collector used by the generators.
class SnapshotBuilder {
public:
    explicit SnapshotBuilder(FieldLayout layout);

    void append(std::span<const double> column, double label);
    std::size_t size() const noexcept { return labels_.size(); }
    SnapshotMatrix build() const;

private:
    FieldLayout layout_;
    std::vector<double> values_;
    std::vector<double> labels_;
};

}  // namespace podsolid
