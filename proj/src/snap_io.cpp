#include "podsolid/snap_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "podsolid/errors.hpp"

namespace podsolid {

namespace {

template <typename UInt>
void put_le(std::vector<char>& buf, UInt value) {
    for (std::size_t b = 0; b < sizeof(UInt); ++b) {
        buf.push_back(static_cast<char>((value >> (8 * b)) & 0xFFu));
    }
}

void put_f64(std::vector<char>& buf, double value) { put_le(buf, std::bit_cast<std::uint64_t>(value)); }

std::uint32_t checked_u32(std::size_t value, const char* what) {
    if (value > std::numeric_limits<std::uint32_t>::max()) {
        throw DimensionError(std::string(what) + " does not fit the SNAP1 u32 field");
    }
    return static_cast<std::uint32_t>(value);
}

// Sequential reader that tracks the byte offset for error messages.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    void read_bytes(char* dst, std::size_t n, const char* what) {
        in_.read(dst, static_cast<std::streamsize>(n));
        const auto got = static_cast<std::size_t>(in_.gcount());
        if (got != n) {
            throw FormatError(std::string("truncated SNAP1 file while reading ") + what, offset_ + got);
        }
        offset_ += n;
    }

    template <typename UInt>
    UInt get_le(const char* what) {
        std::array<unsigned char, sizeof(UInt)> raw{};
        read_bytes(reinterpret_cast<char*>(raw.data()), raw.size(), what);
        UInt value = 0;
        for (std::size_t b = 0; b < sizeof(UInt); ++b) value |= static_cast<UInt>(raw[b]) << (8 * b);
        return value;
    }

    double get_f64(const char* what) { return std::bit_cast<double>(get_le<std::uint64_t>(what)); }

    std::size_t offset() const noexcept { return offset_; }

private:
    std::istream& in_;
    std::size_t offset_ = 0;
};

}  // namespace

std::uint64_t snap_header_size(const FieldLayout& layout, std::size_t n_snaps) {
    std::uint64_t size = sizeof(kSnapMagic) + 3 * 4;
    for (const auto& seg : layout.segments()) size += 2 + seg.name.size() + 4 + 4;
    return size + 8 * static_cast<std::uint64_t>(n_snaps);
}

void write_snap(const SnapshotMatrix& m, std::ostream& out) {
    std::vector<char> buf;
    buf.reserve(snap_header_size(m.layout(), m.n_snaps()));
    buf.insert(buf.end(), std::begin(kSnapMagic), std::end(kSnapMagic));
    put_le(buf, checked_u32(m.n_dof(), "n_dof"));
    put_le(buf, checked_u32(m.n_snaps(), "n_snaps"));
    put_le(buf, checked_u32(m.layout().segments().size(), "n_segments"));
    for (const auto& seg : m.layout().segments()) {
        if (seg.name.size() > std::numeric_limits<std::uint16_t>::max()) {
            throw DimensionError("field name too long for SNAP1");
        }
        put_le(buf, static_cast<std::uint16_t>(seg.name.size()));
        buf.insert(buf.end(), seg.name.begin(), seg.name.end());
        put_le(buf, checked_u32(seg.row_offset, "row_offset"));
        put_le(buf, checked_u32(seg.row_count, "row_count"));
    }
    for (double label : m.labels()) put_f64(buf, label);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));

    // Eigen's default storage is column-major, which is the on-disk order.
    const double* values = m.data().data();
    const std::size_t n_values = m.n_dof() * m.n_snaps();
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(values), static_cast<std::streamsize>(n_values * 8));
    } else {
        std::vector<char> block;
        block.reserve(n_values * 8);
        for (std::size_t k = 0; k < n_values; ++k) put_f64(block, values[k]);
        out.write(block.data(), static_cast<std::streamsize>(block.size()));
    }
    if (!out) throw Error("failed writing SNAP1 stream");
}

void write_snap(const SnapshotMatrix& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    write_snap(m, out);
}

SnapshotMatrix read_snap(std::istream& in) {
    Reader r(in);
    char magic[sizeof(kSnapMagic)];
    r.read_bytes(magic, sizeof(magic), "magic");
    if (std::memcmp(magic, kSnapMagic, sizeof(magic)) != 0) {
        throw FormatError("bad SNAP1 magic", 0);
    }
    const auto n_dof = r.get_le<std::uint32_t>("n_dof");
    const auto n_snaps = r.get_le<std::uint32_t>("n_snaps");
    const auto n_segments = r.get_le<std::uint32_t>("n_segments");
    if (n_dof == 0 || n_snaps == 0 || n_segments == 0) {
        throw FormatError("SNAP1 header has a zero dimension", r.offset());
    }

    std::vector<FieldSegment> segs;
    for (std::uint32_t s = 0; s < n_segments; ++s) {
        const std::size_t seg_start = r.offset();
        const auto len = r.get_le<std::uint16_t>("segment name length");
        std::string name(len, '\0');
        r.read_bytes(name.data(), len, "segment name");
        const auto offset = r.get_le<std::uint32_t>("segment row_offset");
        const auto count = r.get_le<std::uint32_t>("segment row_count");
        if (static_cast<std::uint64_t>(offset) + count > n_dof) {
            throw FormatError("segment '" + name + "' exceeds n_dof", seg_start);
        }
        segs.push_back({std::move(name), offset, count});
    }
    const std::size_t layout_end = r.offset();
    std::optional<FieldLayout> layout;
    try {
        layout.emplace(std::move(segs));
    } catch (const DimensionError& e) {
        throw FormatError(std::string("invalid layout: ") + e.what(), layout_end);
    }
    if (layout->total_rows() != n_dof) {
        throw FormatError("layout covers " + std::to_string(layout->total_rows()) + " rows, header says " +
                              std::to_string(n_dof),
                          layout_end);
    }

    std::vector<double> labels(n_snaps);
    for (auto& label : labels) label = r.get_f64("labels");

    Eigen::MatrixXd data(static_cast<Eigen::Index>(n_dof), static_cast<Eigen::Index>(n_snaps));
    const std::size_t n_values = static_cast<std::size_t>(n_dof) * n_snaps;
    if constexpr (std::endian::native == std::endian::little) {
        r.read_bytes(reinterpret_cast<char*>(data.data()), n_values * 8, "values");
    } else {
        for (std::size_t k = 0; k < n_values; ++k) data.data()[k] = r.get_f64("values");
    }
    const std::size_t data_end = r.offset();
    if (in.peek() != std::char_traits<char>::eof()) {
        throw FormatError("trailing bytes after SNAP1 payload", data_end);
    }
    try {
        return SnapshotMatrix(std::move(data), std::move(*layout), std::move(labels));
    } catch (const Error& e) {
        throw FormatError(std::string("invalid SNAP1 payload: ") + e.what(), layout_end);
    }
}

SnapshotMatrix read_snap(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path.string() + "' for reading");
    return read_snap(in);
}

}  // namespace podsolid
