#pragma once

#include "tprs/tensor.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace tprs {

class IoError : public std::runtime_error {
public:
    enum class Kind {
        missing_file,
        bad_magic,
        bad_version,
        truncated,
        bad_format,
        unrepresentable,
        write_failed,
    };
    IoError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);
void write_binary_file(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes);

/// Raw volume container, extension ".tvol". Byte layout (little-endian):
/// magic "TVOL", u16 version (1), u8 dtype (1 = u8, 2 = u16, 3 = binary32),
/// u8 order, order x u32 shape, then the samples row-major.
enum class VolumeDtype : std::uint8_t { u8 = 1, u16 = 2, f32 = 3 };

std::size_t volume_dtype_bytes(VolumeDtype dtype);

/// Loads a .tvol volume into working precision; integer samples widen
/// exactly.
DenseTensor load_volume(const std::filesystem::path& path);

/// Integer dtypes require every sample to be an integer in range.
void save_volume(const DenseTensor& t, const std::filesystem::path& path,
                 VolumeDtype dtype);

/// Binary (P5) PGM reader, maxval up to 65535; samples above 255 are stored
/// big-endian per the PGM convention.
Matrix load_pgm(const std::filesystem::path& path);

/// Deterministic synthetic volume: `blob_count` anisotropic Gaussian bumps
/// (truncated at three standard deviations) at seeded positions, optional
/// sinusoidal amplitude modulation over the leading (time) mode for order-4
/// shapes, seeded Gaussian noise, and a final affine map onto [0, 255].
///
/// All randomness comes from a counter-based generator keyed on `seed`, so
/// equal specs produce bitwise-equal tensors.
struct PhantomSpec {
    Shape shape;                      // order 3 or 4
    std::uint64_t seed = 0;
    std::size_t blob_count = 3;
    double temporal_frequency = 1.0;  // cycles per series, order-4 only
    double noise_sigma = 0.0;
};

DenseTensor generate_phantom(const PhantomSpec& spec);

/// The fixture used throughout the test corpus: 32^3, seeded, mildly noisy.
PhantomSpec standard_phantom_32();
/// Same geometry with the noise removed.
PhantomSpec standard_phantom_32_clean();

std::string phantom_spec_text(const PhantomSpec& spec);

}  // namespace tprs
