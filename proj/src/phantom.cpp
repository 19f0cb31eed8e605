#include "tprs/ingest.hpp"

#include "tprs/numfmt.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tprs {

namespace {

// Counter-based generator: word k of stream `seed` is the splitmix64
// finalizer applied to seed + (k+1) * golden gamma. Random access, no
// platform randomness involved.
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t rng_word(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t x = seed + (counter + 1) * kGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double rng_uniform(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(rng_word(seed, counter) >> 11) * 0x1.0p-53;
}

// Box-Muller on two counter words; u1 is shifted into (0, 1] so the log is
// always finite.
double rng_gauss(std::uint64_t seed, std::uint64_t counter) {
    const double u1 =
        static_cast<double>((rng_word(seed, counter) >> 11) + 1) * 0x1.0p-53;
    const double u2 = rng_uniform(seed, counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Transcendental outputs are snapped to a 2^-20 grid before any value
// mixes into the field, which keeps the generated samples bitwise stable
// across libm implementations.
double quantize(double v) { return std::round(v * 0x1.0p20) * 0x1.0p-20; }

struct Blob {
    Eigen::Vector3d center;
    Eigen::Matrix3d precision;  // inverse covariance in voxel units
    double amplitude = 0.0;
    double phase = 0.0;
};

constexpr std::uint64_t kBlobWordStride = 16;
constexpr std::uint64_t kNoiseCounterBase = 1ull << 32;

Blob make_blob(const PhantomSpec& spec, const Shape& spatial, std::size_t index) {
    const std::uint64_t base = index * kBlobWordStride;
    Blob blob;
    for (int j = 0; j < 3; ++j) {
        // Centers snap to grid points so the bump is mirror-symmetric in
        // index space.
        const double extent = static_cast<double>(spatial[static_cast<std::size_t>(j)]);
        blob.center[j] = std::round(rng_uniform(spec.seed, base + 0 + j) * (extent - 1.0));
    }
    Eigen::Vector3d width;
    for (int j = 0; j < 3; ++j) {
        const double extent = static_cast<double>(spatial[static_cast<std::size_t>(j)]);
        width[j] = (0.10 + 0.15 * rng_uniform(spec.seed, base + 3 + j)) * extent;
    }
    blob.amplitude = 0.5 + 0.5 * rng_uniform(spec.seed, base + 6);
    blob.phase = 2.0 * std::numbers::pi * rng_uniform(spec.seed, base + 7);

    // Rotate the axis-aligned precision so the bumps are genuinely
    // anisotropic and no mode unfolding is exactly low rank.
    Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
    const int planes[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int p = 0; p < 3; ++p) {
        const double angle =
            (rng_uniform(spec.seed, base + 8 + p) - 0.5) * std::numbers::pi / 2.0;
        const double c = quantize(std::cos(angle));
        const double s = quantize(std::sin(angle));
        Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
        g(planes[p][0], planes[p][0]) = c;
        g(planes[p][1], planes[p][1]) = c;
        g(planes[p][0], planes[p][1]) = -s;
        g(planes[p][1], planes[p][0]) = s;
        rot = g * rot;
    }
    Eigen::Vector3d inv_var;
    for (int j = 0; j < 3; ++j) inv_var[j] = 1.0 / (width[j] * width[j]);
    blob.precision = rot * inv_var.asDiagonal() * rot.transpose();
    return blob;
}

}  // namespace

DenseTensor generate_phantom(const PhantomSpec& spec) {
    if (spec.shape.size() != 3 && spec.shape.size() != 4)
        throw std::invalid_argument("phantom: shape must have order 3 or 4");
    for (std::size_t e : spec.shape)
        if (e == 0) throw std::invalid_argument("phantom: extents must be >= 1");
    if (spec.noise_sigma < 0.0)
        throw std::invalid_argument("phantom: noise_sigma must be nonnegative");

    const bool temporal = spec.shape.size() == 4;
    const Shape spatial(spec.shape.end() - 3, spec.shape.end());
    const std::size_t frames = temporal ? spec.shape[0] : 1;
    const std::size_t voxels = spatial[0] * spatial[1] * spatial[2];

    std::vector<Blob> blobs;
    blobs.reserve(spec.blob_count);
    for (std::size_t i = 0; i < spec.blob_count; ++i)
        blobs.push_back(make_blob(spec, spatial, i));

    // Spatial profile of each blob, computed once and reused per frame.
    std::vector<std::vector<double>> profiles(blobs.size(),
                                              std::vector<double>(voxels, 0.0));
    for (std::size_t b = 0; b < blobs.size(); ++b) {
        const Blob& blob = blobs[b];
        std::size_t v = 0;
        for (std::size_t i0 = 0; i0 < spatial[0]; ++i0)
            for (std::size_t i1 = 0; i1 < spatial[1]; ++i1)
                for (std::size_t i2 = 0; i2 < spatial[2]; ++i2, ++v) {
                    Eigen::Vector3d d(static_cast<double>(i0) - blob.center[0],
                                      static_cast<double>(i1) - blob.center[1],
                                      static_cast<double>(i2) - blob.center[2]);
                    const double q = d.dot(blob.precision * d);
                    if (q <= 9.0) profiles[b][v] = quantize(std::exp(-0.5 * q));
                }
    }

    std::vector<double> values(frames * voxels, 0.0);
    for (std::size_t t = 0; t < frames; ++t) {
        for (std::size_t b = 0; b < blobs.size(); ++b) {
            double amp = blobs[b].amplitude;
            if (temporal) {
                const double angle = 2.0 * std::numbers::pi * spec.temporal_frequency *
                                         static_cast<double>(t) /
                                         static_cast<double>(frames) +
                                     blobs[b].phase;
                amp *= 1.0 + 0.5 * quantize(std::sin(angle));
            }
            double* frame = values.data() + t * voxels;
            const std::vector<double>& profile = profiles[b];
            for (std::size_t v = 0; v < voxels; ++v) frame[v] += amp * profile[v];
        }
    }

    if (spec.noise_sigma > 0.0) {
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] += spec.noise_sigma *
                         quantize(rng_gauss(spec.seed, kNoiseCounterBase + 2 * i));
    }

    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi > lo) {
        const double span = hi - lo;
        for (double& v : values) v = (v - lo) / span * 255.0;
    } else {
        for (double& v : values) v = 0.0;
    }
    return DenseTensor(spec.shape, std::move(values));
}

PhantomSpec standard_phantom_32() {
    PhantomSpec spec;
    spec.shape = {32, 32, 32};
    spec.seed = 42;
    spec.blob_count = 4;
    spec.temporal_frequency = 1.0;
    spec.noise_sigma = 0.02;
    return spec;
}

PhantomSpec standard_phantom_32_clean() {
    PhantomSpec spec = standard_phantom_32();
    spec.noise_sigma = 0.0;
    return spec;
}

std::string phantom_spec_text(const PhantomSpec& spec) {
    std::string out = "shape=";
    for (std::size_t i = 0; i < spec.shape.size(); ++i) {
        if (i) out += 'x';
        out += std::to_string(spec.shape[i]);
    }
    out += "\nseed=" + std::to_string(spec.seed);
    out += "\nblob_count=" + std::to_string(spec.blob_count);
    out += "\ntemporal_frequency=" + format_double(spec.temporal_frequency);
    out += "\nnoise_sigma=" + format_double(spec.noise_sigma);
    out += '\n';
    return out;
}

}  // namespace tprs
