#include "podsolid/snapshot.hpp"

#include <cmath>
#include <set>

#include "podsolid/errors.hpp"

namespace podsolid {

FieldLayout::FieldLayout(std::vector<FieldSegment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) {
        throw DimensionError("FieldLayout needs at least one segment");
    }
    std::set<std::string> names;
    std::size_t expected_offset = 0;
    for (const auto& seg : segments_) {
        if (seg.name.empty()) throw DimensionError("FieldLayout segment with empty name");
        if (!names.insert(seg.name).second) {
            throw DimensionError("FieldLayout duplicate segment name '" + seg.name + "'");
        }
        if (seg.row_offset != expected_offset) {
            throw DimensionError("FieldLayout segment '" + seg.name + "' starts at row " +
                                 std::to_string(seg.row_offset) + ", expected " +
                                 std::to_string(expected_offset));
        }
        if (seg.row_count == 0) {
            throw DimensionError("FieldLayout segment '" + seg.name + "' is empty");
        }
        expected_offset += seg.row_count;
    }
}

FieldLayout FieldLayout::single(std::string name, std::size_t n_rows) {
    return FieldLayout({FieldSegment{std::move(name), 0, n_rows}});
}

FieldLayout FieldLayout::from_counts(const std::vector<std::pair<std::string, std::size_t>>& counts) {
    std::vector<FieldSegment> segs;
    std::size_t offset = 0;
    for (const auto& [name, count] : counts) {
        segs.push_back({name, offset, count});
        offset += count;
    }
    return FieldLayout(std::move(segs));
}

std::size_t FieldLayout::total_rows() const noexcept {
    const auto& last = segments_.back();
    return last.row_offset + last.row_count;
}

const FieldSegment& FieldLayout::find(const std::string& name) const {
    for (const auto& seg : segments_) {
        if (seg.name == name) return seg;
    }
    throw ArgumentError("no field named '" + name + "' in layout");
}

SnapshotMatrix::SnapshotMatrix(Eigen::MatrixXd data, FieldLayout layout, std::vector<double> labels)
    : data_(std::move(data)), layout_(std::move(layout)), labels_(std::move(labels)) {
    if (data_.rows() < 1 || data_.cols() < 1) {
        throw DimensionError("snapshot matrix needs at least one row and one column");
    }
    if (layout_.total_rows() != n_dof()) {
        throw DimensionError("layout covers " + std::to_string(layout_.total_rows()) +
                             " rows but matrix has " + std::to_string(n_dof()));
    }
    if (labels_.size() != n_snaps()) {
        throw DimensionError("got " + std::to_string(labels_.size()) + " labels for " +
                             std::to_string(n_snaps()) + " columns");
    }
    for (std::size_t j = 0; j < labels_.size(); ++j) {
        if (!std::isfinite(labels_[j])) throw DataError("non-finite column label");
        if (j > 0 && !(labels_[j] > labels_[j - 1])) {
            throw DataError("column labels must be strictly increasing (column " +
                            std::to_string(j) + ")");
        }
    }
    if (!data_.allFinite()) {
        throw DataError("snapshot matrix contains non-finite entries");
    }
}

std::vector<double> SnapshotMatrix::column(std::size_t j) const {
    const auto col = data_.col(static_cast<Eigen::Index>(j));
    return {col.data(), col.data() + col.size()};
}

bool SnapshotMatrix::operator==(const SnapshotMatrix& other) const {
    return layout_ == other.layout_ && labels_ == other.labels_ &&
           data_.rows() == other.data_.rows() && data_.cols() == other.data_.cols() &&
           data_ == other.data_;
}

SnapshotMatrix assemble(std::span<const std::vector<double>> columns, const FieldLayout& layout,
                        std::span<const double> labels) {
    if (columns.empty()) throw DimensionError("assemble needs at least one column");
    if (labels.size() != columns.size()) {
        throw DimensionError("assemble: " + std::to_string(labels.size()) + " labels for " +
                             std::to_string(columns.size()) + " columns");
    }
    const std::size_t n_dof = layout.total_rows();
    Eigen::MatrixXd data(static_cast<Eigen::Index>(n_dof), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != n_dof) {
            throw DimensionError("assemble: column " + std::to_string(j) + " has length " +
                                 std::to_string(columns[j].size()) + ", layout expects " +
                                 std::to_string(n_dof));
        }
        data.col(static_cast<Eigen::Index>(j)) =
            Eigen::Map<const Eigen::VectorXd>(columns[j].data(), static_cast<Eigen::Index>(n_dof));
    }
    return SnapshotMatrix(std::move(data), layout, {labels.begin(), labels.end()});
}

SnapshotBuilder::SnapshotBuilder(FieldLayout layout) : layout_(std::move(layout)) {}

void SnapshotBuilder::append(std::span<const double> column, double label) {
    if (column.size() != layout_.total_rows()) {
        throw DimensionError("snapshot column has length " + std::to_string(column.size()) +
                             ", layout expects " + std::to_string(layout_.total_rows()));
    }
    values_.insert(values_.end(), column.begin(), column.end());
    labels_.push_back(label);
}

SnapshotMatrix SnapshotBuilder::build() const {
    if (labels_.empty()) throw DimensionError("no snapshots collected");
    Eigen::MatrixXd data = Eigen::Map<const Eigen::MatrixXd>(
        values_.data(), static_cast<Eigen::Index>(layout_.total_rows()),
        static_cast<Eigen::Index>(labels_.size()));
    return SnapshotMatrix(std::move(data), layout_, labels_);
}

}  // namespace podsolid
