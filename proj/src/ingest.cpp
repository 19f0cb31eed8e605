#include "tprs/ingest.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

namespace tprs {

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(IoError::Kind::missing_file, "cannot open file: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

void write_binary_file(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(IoError::Kind::write_failed, "cannot open file for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError(IoError::Kind::write_failed, "write failed: " + path.string());
}

std::size_t volume_dtype_bytes(VolumeDtype dtype) {
    switch (dtype) {
        case VolumeDtype::u8: return 1;
        case VolumeDtype::u16: return 2;
        case VolumeDtype::f32: return 4;
    }
    throw std::invalid_argument("unknown volume dtype");
}

namespace {

constexpr char kVolumeMagic[4] = {'T', 'V', 'O', 'L'};
constexpr std::uint16_t kVolumeVersion = 1;

}  // namespace

DenseTensor load_volume(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = read_binary_file(path);
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kVolumeMagic, 4) != 0)
        throw IoError(IoError::Kind::bad_magic, "volume: bad magic in " + path.string());
    std::size_t pos = 4;
    auto need = [&](std::size_t n) {
        if (bytes.size() - pos < n)
            throw IoError(IoError::Kind::truncated, "volume: truncated data in " + path.string());
    };
    need(2);
    const std::uint16_t version =
        static_cast<std::uint16_t>(bytes[pos]) | static_cast<std::uint16_t>(bytes[pos + 1]) << 8;
    pos += 2;
    if (version != kVolumeVersion)
        throw IoError(IoError::Kind::bad_version,
                      "volume: unsupported version " + std::to_string(version));
    need(2);
    const std::uint8_t dtype_code = bytes[pos++];
    const std::uint8_t order = bytes[pos++];
    if (dtype_code < 1 || dtype_code > 3)
        throw IoError(IoError::Kind::bad_format,
                      "volume: unknown dtype " + std::to_string(dtype_code));
    if (order < 1)
        throw IoError(IoError::Kind::bad_format, "volume: order must be >= 1");
    const VolumeDtype dtype = static_cast<VolumeDtype>(dtype_code);

    Shape shape(order);
    for (auto& e : shape) {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[pos + i]) << (8 * i);
        pos += 4;
        if (v == 0)
            throw IoError(IoError::Kind::bad_format, "volume: zero extent");
        e = v;
    }
    const std::size_t n = shape_volume(shape);
    const std::size_t b = volume_dtype_bytes(dtype);
    if (bytes.size() - pos < n * b)
        throw IoError(IoError::Kind::truncated, "volume: truncated data in " + path.string());

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (dtype) {
            case VolumeDtype::u8:
                values[i] = static_cast<double>(bytes[pos + i]);
                break;
            case VolumeDtype::u16: {
                const std::size_t o = pos + 2 * i;
                values[i] = static_cast<double>(
                    static_cast<std::uint16_t>(bytes[o]) |
                    static_cast<std::uint16_t>(bytes[o + 1]) << 8);
                break;
            }
            case VolumeDtype::f32: {
                const std::size_t o = pos + 4 * i;
                std::uint32_t v = 0;
                for (int k = 0; k < 4; ++k)
                    v |= static_cast<std::uint32_t>(bytes[o + k]) << (8 * k);
                values[i] = static_cast<double>(std::bit_cast<float>(v));
                break;
            }
        }
    }
    return DenseTensor(shape, std::move(values));
}

void save_volume(const DenseTensor& t, const std::filesystem::path& path, VolumeDtype dtype) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(8 + 4 * t.order() + t.size() * volume_dtype_bytes(dtype));
    for (char c : kVolumeMagic) bytes.push_back(static_cast<std::uint8_t>(c));
    bytes.push_back(static_cast<std::uint8_t>(kVolumeVersion));
    bytes.push_back(static_cast<std::uint8_t>(kVolumeVersion >> 8));
    bytes.push_back(static_cast<std::uint8_t>(dtype));
    bytes.push_back(static_cast<std::uint8_t>(t.order()));
    for (std::size_t e : t.shape()) {
        if (e > std::numeric_limits<std::uint32_t>::max())
            throw IoError(IoError::Kind::unrepresentable, "volume: extent exceeds u32 range");
        for (int i = 0; i < 4; ++i)
            bytes.push_back(static_cast<std::uint8_t>(static_cast<std::uint32_t>(e) >> (8 * i)));
    }
    for (double v : t.values()) {
        switch (dtype) {
            case VolumeDtype::u8: {
                if (!(v >= 0.0 && v <= 255.0) || v != std::floor(v))
                    throw IoError(IoError::Kind::unrepresentable,
                                  "volume: sample not an integer in [0, 255]");
                bytes.push_back(static_cast<std::uint8_t>(v));
                break;
            }
            case VolumeDtype::u16: {
                if (!(v >= 0.0 && v <= 65535.0) || v != std::floor(v))
                    throw IoError(IoError::Kind::unrepresentable,
                                  "volume: sample not an integer in [0, 65535]");
                const std::uint16_t s = static_cast<std::uint16_t>(v);
                bytes.push_back(static_cast<std::uint8_t>(s));
                bytes.push_back(static_cast<std::uint8_t>(s >> 8));
                break;
            }
            case VolumeDtype::f32: {
                if (!std::isfinite(v))
                    throw IoError(IoError::Kind::unrepresentable, "volume: non-finite sample");
                const std::uint32_t s = std::bit_cast<std::uint32_t>(static_cast<float>(v));
                for (int i = 0; i < 4; ++i)
                    bytes.push_back(static_cast<std::uint8_t>(s >> (8 * i)));
                break;
            }
        }
    }
    write_binary_file(path, bytes);
}

namespace {

// Whitespace-delimited PGM header token, skipping '#' comment lines.
std::size_t next_pgm_token(const std::vector<std::uint8_t>& bytes, std::size_t& pos,
                           const std::filesystem::path& path) {
    while (pos < bytes.size()) {
        if (std::isspace(bytes[pos])) {
            ++pos;
        } else if (bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    if (pos >= bytes.size() || !std::isdigit(bytes[pos]))
        throw IoError(IoError::Kind::bad_format, "pgm: malformed header in " + path.string());
    std::size_t value = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
        value = value * 10 + (bytes[pos] - '0');
        if (value > 1u << 30)
            throw IoError(IoError::Kind::bad_format, "pgm: header value out of range");
        ++pos;
    }
    return value;
}

}  // namespace

Matrix load_pgm(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = read_binary_file(path);
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw IoError(IoError::Kind::bad_format, "pgm: not a PGM file: " + path.string());
    if (bytes[1] != '5')
        throw IoError(IoError::Kind::bad_format,
                      "pgm: unsupported format P" + std::string(1, static_cast<char>(bytes[1])) +
                          " (only binary P5 is supported)");
    std::size_t pos = 2;
    const std::size_t width = next_pgm_token(bytes, pos, path);
    const std::size_t height = next_pgm_token(bytes, pos, path);
    const std::size_t maxval = next_pgm_token(bytes, pos, path);
    if (width == 0 || height == 0 || maxval == 0 || maxval > 65535)
        throw IoError(IoError::Kind::bad_format, "pgm: malformed header in " + path.string());
    if (pos >= bytes.size() || !std::isspace(bytes[pos]))
        throw IoError(IoError::Kind::bad_format, "pgm: malformed header in " + path.string());
    ++pos;  // single whitespace byte before the raster

    const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
    const std::size_t n = width * height;
    if (bytes.size() - pos < n * sample_bytes)
        throw IoError(IoError::Kind::truncated, "pgm: truncated raster in " + path.string());

    Matrix m(static_cast<Eigen::Index>(height), static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < height; ++i) {
        for (std::size_t j = 0; j < width; ++j) {
            const std::size_t o = pos + (i * width + j) * sample_bytes;
            const std::size_t v = sample_bytes == 1
                                      ? bytes[o]
                                      : (static_cast<std::size_t>(bytes[o]) << 8) | bytes[o + 1];
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                static_cast<double>(v);
        }
    }
    return m;
}

}  // namespace tprs
