#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "podsolid/snapshot.hpp"

namespace podsolid {

// SNAP1 layout (little-endian, no padding):
//   "PODSNAP1" | u32 n_dof | u32 n_snaps | u32 n_segments
//   n_segments x { u16 name_len | name bytes | u32 row_offset | u32 row_count }
//   n_snaps x f64 labels
//   n_dof * n_snaps x f64 values, column-major
inline constexpr char kSnapMagic[8] = {'P', 'O', 'D', 'S', 'N', 'A', 'P', '1'};

/// Bytes before the value block for a given layout.
std::uint64_t snap_header_size(const FieldLayout& layout, std::size_t n_snaps);

void write_snap(const SnapshotMatrix& m, std::ostream& out);
void write_snap(const SnapshotMatrix& m, const std::filesystem::path& path);

/// Throws FormatError (with byte offset) on bad magic, truncation or layout mismatch.
SnapshotMatrix read_snap(std::istream& in);
SnapshotMatrix read_snap(const std::filesystem::path& path);

}  // namespace podsolid
