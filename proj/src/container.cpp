#include "tprs/container.hpp"

#include "tprs/ingest.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>

namespace tprs {

std::size_t dtype_bytes(SampleDtype dtype) {
    switch (dtype) {
        case SampleDtype::f32: return 4;
        case SampleDtype::f64: return 8;
    }
    throw std::invalid_argument("unknown sample dtype");
}

std::uint64_t header_size(std::size_t order) {
    return 4 + 2 + 1 + 1 + 1 + 8 * static_cast<std::uint64_t>(order) + 8;
}

Method method_of(const AnyFactors& factors) {
    if (std::holds_alternative<SvdFactors>(factors)) return Method::svd;
    if (std::holds_alternative<TuckerFactors>(factors)) return Method::tucker;
    return Method::svd_per_slice;
}

namespace {

constexpr char kMagic[4] = {'T', 'P', 'R', 'S'};

class ByteWriter {
public:
    explicit ByteWriter(std::vector<std::uint8_t>& out) : out_(out) {}

    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v) {
        out_.push_back(static_cast<std::uint8_t>(v));
        out_.push_back(static_cast<std::uint8_t>(v >> 8));
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void sample(double v, SampleDtype dtype) {
        if (dtype == SampleDtype::f64) {
            u64(std::bit_cast<std::uint64_t>(v));
        } else {
            u32(std::bit_cast<std::uint32_t>(static_cast<float>(v)));
        }
    }

private:
    std::vector<std::uint8_t>& out_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t remaining() const { return bytes_.size() - pos_; }

    std::uint8_t u8() {
        need(1);
        return bytes_[pos_++];
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_]) |
                          static_cast<std::uint16_t>(bytes_[pos_ + 1]) << 8;
        pos_ += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
        pos_ += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return v;
    }
    double sample(SampleDtype dtype) {
        if (dtype == SampleDtype::f64) return std::bit_cast<double>(u64());
        return static_cast<double>(std::bit_cast<float>(u32()));
    }
    void expect_magic() {
        if (bytes_.size() < 4 ||
            std::memcmp(bytes_.data(), kMagic, 4) != 0)
            throw DecodeError(DecodeError::Kind::bad_magic, "decode: bad magic");
        pos_ = 4;
    }

private:
    void need(std::size_t n) const {
        if (remaining() < n)
            throw DecodeError(DecodeError::Kind::truncated, "decode: truncated payload");
    }
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

std::uint64_t svd_sample_count(std::size_t rows, std::size_t cols, std::size_t k) {
    return static_cast<std::uint64_t>(rows) * k + k + static_cast<std::uint64_t>(k) * cols;
}

std::uint64_t payload_samples(const AnyFactors& factors) {
    if (const auto* f = std::get_if<SvdFactors>(&factors))
        return svd_sample_count(f->rows, f->cols, f->rank);
    if (const auto* f = std::get_if<TuckerFactors>(&factors)) {
        std::uint64_t n = f->core.size();
        for (std::size_t m = 0; m < f->factors.size(); ++m)
            n += static_cast<std::uint64_t>(f->original_shape[m]) * f->core.extent(m);
        return n;
    }
    const auto& f = std::get<SvdSliceFactors>(factors);
    const std::size_t k = f.slices.empty() ? 0 : f.slices.front().rank;
    return slice_count(f.original_shape) *
           svd_sample_count(slice_rows(f.original_shape), slice_cols(f.original_shape), k);
}

void write_svd_payload(ByteWriter& w, const SvdFactors& f, SampleDtype dtype) {
    for (Eigen::Index j = 0; j < f.u.cols(); ++j)
        for (Eigen::Index i = 0; i < f.u.rows(); ++i) w.sample(f.u(i, j), dtype);
    for (Eigen::Index i = 0; i < f.s.size(); ++i) w.sample(f.s[i], dtype);
    for (Eigen::Index i = 0; i < f.vt.rows(); ++i)
        for (Eigen::Index j = 0; j < f.vt.cols(); ++j) w.sample(f.vt(i, j), dtype);
}

SvdFactors read_svd_payload(ByteReader& r, std::size_t rows, std::size_t cols,
                            std::size_t k, SampleDtype dtype) {
    SvdFactors f;
    f.rank = k;
    f.rows = rows;
    f.cols = cols;
    f.u.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(k));
    for (Eigen::Index j = 0; j < f.u.cols(); ++j)
        for (Eigen::Index i = 0; i < f.u.rows(); ++i) f.u(i, j) = r.sample(dtype);
    f.s.resize(static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < f.s.size(); ++i) f.s[i] = r.sample(dtype);
    f.vt.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < f.vt.rows(); ++i)
        for (Eigen::Index j = 0; j < f.vt.cols(); ++j) f.vt(i, j) = r.sample(dtype);
    return f;
}

ArtifactHeader header_for(const AnyFactors& factors, SampleDtype dtype) {
    ArtifactHeader h;
    h.method = method_of(factors);
    h.dtype = dtype;
    h.original_shape = original_shape_of(factors);
    const std::vector<std::size_t> ranks = rank_list_of(factors);
    h.rank_spec.assign(h.original_shape.size(), 0);
    for (std::size_t i = 0; i < ranks.size() && i < h.rank_spec.size(); ++i)
        h.rank_spec[i] = static_cast<std::uint32_t>(ranks[i]);
    if (h.method != Method::tucker) {
        h.rank_spec.assign(h.original_shape.size(), 0);
        h.rank_spec[0] = static_cast<std::uint32_t>(ranks.at(0));
    }
    h.payload_byte_length = payload_samples(factors) * dtype_bytes(dtype);
    return h;
}

}  // namespace

Shape original_shape_of(const AnyFactors& factors) {
    if (const auto* f = std::get_if<SvdFactors>(&factors)) return {f->rows, f->cols};
    if (const auto* f = std::get_if<TuckerFactors>(&factors)) return f->original_shape;
    return std::get<SvdSliceFactors>(factors).original_shape;
}

std::vector<std::size_t> rank_list_of(const AnyFactors& factors) {
    if (const auto* f = std::get_if<SvdFactors>(&factors)) return {f->rank};
    if (const auto* f = std::get_if<TuckerFactors>(&factors)) {
        std::vector<std::size_t> ranks;
        for (std::size_t n = 0; n < f->core.order(); ++n) ranks.push_back(f->core.extent(n));
        return ranks;
    }
    const auto& f = std::get<SvdSliceFactors>(factors);
    if (f.slices.empty())
        throw std::invalid_argument("encode: per-slice factors must hold at least one slice");
    return {f.slices.front().rank};
}

std::vector<std::uint8_t> encode(const AnyFactors& factors, SampleDtype dtype) {
    const ArtifactHeader h = header_for(factors, dtype);
    for (std::size_t e : h.original_shape)
        if (e > std::numeric_limits<std::uint32_t>::max())
            throw std::invalid_argument("encode: extent exceeds u32 range");

    std::vector<std::uint8_t> out;
    out.reserve(header_size(h.original_shape.size()) + h.payload_byte_length);
    ByteWriter w(out);
    for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
    w.u16(h.format_version);
    w.u8(static_cast<std::uint8_t>(h.method));
    w.u8(static_cast<std::uint8_t>(h.dtype));
    w.u8(static_cast<std::uint8_t>(h.original_shape.size()));
    for (std::size_t e : h.original_shape) w.u32(static_cast<std::uint32_t>(e));
    for (std::uint32_t r : h.rank_spec) w.u32(r);
    w.u64(h.payload_byte_length);

    if (const auto* f = std::get_if<SvdFactors>(&factors)) {
        write_svd_payload(w, *f, dtype);
    } else if (const auto* f = std::get_if<TuckerFactors>(&factors)) {
        for (double v : f->core.values()) w.sample(v, dtype);
        for (const Matrix& u : f->factors)
            for (Eigen::Index j = 0; j < u.cols(); ++j)
                for (Eigen::Index i = 0; i < u.rows(); ++i) w.sample(u(i, j), dtype);
    } else {
        const auto& f = std::get<SvdSliceFactors>(factors);
        const std::size_t k = f.slices.front().rank;
        for (const SvdFactors& s : f.slices) {
            if (s.rank != k)
                throw std::invalid_argument("encode: per-slice factors must share one rank");
            write_svd_payload(w, s, dtype);
        }
    }
    return out;
}

AnyFactors decode(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    r.expect_magic();
    const std::uint16_t version = r.u16();
    if (version != kFormatVersion)
        throw DecodeError(DecodeError::Kind::bad_version,
                          "decode: unsupported format version " + std::to_string(version));
    const std::uint8_t method_code = r.u8();
    if (method_code < 1 || method_code > 3)
        throw DecodeError(DecodeError::Kind::inconsistent,
                          "decode: unknown method " + std::to_string(method_code));
    const Method method = static_cast<Method>(method_code);
    const std::uint8_t dtype_code = r.u8();
    if (dtype_code < 1 || dtype_code > 2)
        throw DecodeError(DecodeError::Kind::inconsistent,
                          "decode: unknown sample dtype " + std::to_string(dtype_code));
    const SampleDtype dtype = static_cast<SampleDtype>(dtype_code);
    const std::uint8_t order = r.u8();
    if (order < 1)
        throw DecodeError(DecodeError::Kind::inconsistent, "decode: order must be >= 1");

    Shape shape(order);
    for (auto& e : shape) {
        e = r.u32();
        if (e == 0)
            throw DecodeError(DecodeError::Kind::inconsistent, "decode: zero extent");
    }
    std::vector<std::uint32_t> rank_spec(order);
    for (auto& v : rank_spec) v = r.u32();
    const std::uint64_t payload_len = r.u64();
    if (r.remaining() < payload_len)
        throw DecodeError(DecodeError::Kind::truncated, "decode: truncated payload");
    if (r.remaining() > payload_len)
        throw DecodeError(DecodeError::Kind::inconsistent,
                          "decode: trailing bytes beyond declared payload");

    const std::size_t b = dtype_bytes(dtype);

    if (method == Method::svd) {
        if (order != 2)
            throw DecodeError(DecodeError::Kind::inconsistent, "decode: svd artifacts are order-2");
        const std::size_t k = rank_spec[0];
        if (k < 1 || k > std::min(shape[0], shape[1]) || rank_spec[1] != 0)
            throw DecodeError(DecodeError::Kind::inconsistent, "decode: invalid svd rank spec");
        if (payload_len != svd_sample_count(shape[0], shape[1], k) * b)
            throw DecodeError(DecodeError::Kind::inconsistent,
                              "decode: payload length does not match shape and rank");
        return read_svd_payload(r, shape[0], shape[1], k, dtype);
    }

    if (method == Method::tucker) {
        Shape ranks(order);
        std::uint64_t samples = 1;
        for (std::size_t n = 0; n < order; ++n) {
            ranks[n] = rank_spec[n];
            if (ranks[n] < 1 || ranks[n] > shape[n])
                throw DecodeError(DecodeError::Kind::inconsistent, "decode: invalid tucker rank spec");
            samples *= ranks[n];
        }
        for (std::size_t n = 0; n < order; ++n)
            samples += static_cast<std::uint64_t>(shape[n]) * ranks[n];
        if (payload_len != samples * b)
            throw DecodeError(DecodeError::Kind::inconsistent,
                              "decode: payload length does not match shape and ranks");
        TuckerFactors f;
        f.original_shape = shape;
        std::vector<double> core_values(shape_volume(ranks));
        for (double& v : core_values) v = r.sample(dtype);
        f.core = DenseTensor(ranks, std::move(core_values));
        for (std::size_t n = 0; n < order; ++n) {
            Matrix u(static_cast<Eigen::Index>(shape[n]), static_cast<Eigen::Index>(ranks[n]));
            for (Eigen::Index j = 0; j < u.cols(); ++j)
                for (Eigen::Index i = 0; i < u.rows(); ++i) u(i, j) = r.sample(dtype);
            f.factors.push_back(std::move(u));
        }
        return f;
    }

    // svd-per-slice
    if (order != 3 && order != 4)
        throw DecodeError(DecodeError::Kind::inconsistent,
                          "decode: per-slice artifacts are order 3 or 4");
    const std::size_t k = rank_spec[0];
    const std::size_t rows = shape[order - 2];
    const std::size_t cols = shape[order - 1];
    for (std::size_t n = 1; n < order; ++n)
        if (rank_spec[n] != 0)
            throw DecodeError(DecodeError::Kind::inconsistent, "decode: invalid per-slice rank spec");
    if (k < 1 || k > std::min(rows, cols))
        throw DecodeError(DecodeError::Kind::inconsistent, "decode: invalid per-slice rank spec");
    const std::size_t n_slices = slice_count(shape);
    if (payload_len != n_slices * svd_sample_count(rows, cols, k) * b)
        throw DecodeError(DecodeError::Kind::inconsistent,
                          "decode: payload length does not match shape and rank");
    SvdSliceFactors f;
    f.original_shape = shape;
    f.slices.reserve(n_slices);
    for (std::size_t s = 0; s < n_slices; ++s)
        f.slices.push_back(read_svd_payload(r, rows, cols, k, dtype));
    return f;
}

std::uint64_t serialized_size(const AnyFactors& factors, SampleDtype dtype) {
    return header_size(original_shape_of(factors).size()) +
           payload_samples(factors) * dtype_bytes(dtype);
}

DenseTensor reconstruct_any(const AnyFactors& factors) {
    if (const auto* f = std::get_if<SvdFactors>(&factors))
        return DenseTensor::from_matrix(reconstruct_svd(*f));
    if (const auto* f = std::get_if<TuckerFactors>(&factors)) return reconstruct_tucker(*f);
    return reconstruct_svd_slices(std::get<SvdSliceFactors>(factors));
}

void write_artifact(const AnyFactors& factors, SampleDtype dtype,
                    const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = encode(factors, dtype);
    write_binary_file(path, bytes);
}

AnyFactors read_artifact(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = read_binary_file(path);
    return decode(bytes);
}

}  // namespace tprs
