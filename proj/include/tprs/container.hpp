#pragma once

#include "tprs/svd_codec.hpp"
#include "tprs/tucker_codec.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace tprs {

/// Artifact container, file extension ".tprs". Byte layout (little-endian):
///
///   offset  size  field
///   0       4     magic "TPRS"
///   4       2     format_version (currently 1)
///   6       1     method: 1 = svd, 2 = tucker, 3 = svd-per-slice
///   7       1     sample dtype: 1 = binary32, 2 = binary64
///   8       1     order d
///   9       4*d   original_shape, u32 each
///   9+4d    4*d   rank_spec, u32 each (svd / svd-per-slice: [k, 0, ...])
///   9+8d    8     payload_byte_length, u64
///
/// followed by exactly payload_byte_length bytes of factor samples in the
/// declared dtype:
///   svd            u column-major, s, vt row-major
///   tucker         core row-major, then factors for modes 0..d-1, each
///                  column-major
///   svd-per-slice  the svd layout once per slice, slices in leading-mode
///                  row-major order
enum class Method : std::uint8_t { svd = 1, tucker = 2, svd_per_slice = 3 };

enum class SampleDtype : std::uint8_t { f32 = 1, f64 = 2 };

constexpr std::uint16_t kFormatVersion = 1;

std::size_t dtype_bytes(SampleDtype dtype);

struct ArtifactHeader {
    std::uint16_t format_version = kFormatVersion;
    Method method = Method::svd;
    SampleDtype dtype = SampleDtype::f32;
    Shape original_shape;
    std::vector<std::uint32_t> rank_spec;
    std::uint64_t payload_byte_length = 0;
};

class DecodeError : public std::runtime_error {
public:
    enum class Kind { bad_magic, bad_version, truncated, inconsistent };
    DecodeError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

using AnyFactors = std::variant<SvdFactors, TuckerFactors, SvdSliceFactors>;

Method method_of(const AnyFactors& factors);

std::vector<std::uint8_t> encode(const AnyFactors& factors, SampleDtype dtype);
AnyFactors decode(std::span<const std::uint8_t> bytes);

/// Byte length encode() would produce, from the closed-form factor counts.
std::uint64_t serialized_size(const AnyFactors& factors, SampleDtype dtype);
std::uint64_t header_size(std::size_t order);

/// Reconstructs the original-shape tensor from any decoded factor variant.
DenseTensor reconstruct_any(const AnyFactors& factors);

Shape original_shape_of(const AnyFactors& factors);
std::vector<std::size_t> rank_list_of(const AnyFactors& factors);

void write_artifact(const AnyFactors& factors, SampleDtype dtype,
                    const std::filesystem::path& path);
AnyFactors read_artifact(const std::filesystem::path& path);

}  // namespace tprs
