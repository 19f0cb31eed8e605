#include "tprs/svd_codec.hpp"

#include <cmath>
#include <stdexcept>

namespace tprs {

SvdFactors compress_svd(const Matrix& a, std::size_t k) {
    const std::size_t p = static_cast<std::size_t>(std::min(a.rows(), a.cols()));
    if (k < 1 || k > p)
        throw std::out_of_range("compress_svd: rank must be in [1, min(rows, cols)]");
    SvdTriple svd = thin_svd(a);
    SvdFactors f;
    f.rank = k;
    f.u = svd.u.leftCols(static_cast<Eigen::Index>(k));
    f.s = svd.s.head(static_cast<Eigen::Index>(k));
    f.vt = svd.vt.topRows(static_cast<Eigen::Index>(k));
    f.rows = static_cast<std::size_t>(a.rows());
    f.cols = static_cast<std::size_t>(a.cols());
    return f;
}

Matrix reconstruct_svd(const SvdFactors& f) {
    if (f.rank < 1) throw std::invalid_argument("reconstruct_svd: rank must be >= 1");
    if (static_cast<std::size_t>(f.u.rows()) != f.rows ||
        static_cast<std::size_t>(f.u.cols()) != f.rank ||
        static_cast<std::size_t>(f.s.size()) != f.rank ||
        static_cast<std::size_t>(f.vt.rows()) != f.rank ||
        static_cast<std::size_t>(f.vt.cols()) != f.cols)
        throw std::invalid_argument("reconstruct_svd: inconsistent factor shapes");
    return f.u * f.s.asDiagonal() * f.vt;
}

std::size_t select_rank_by_energy(const Eigen::VectorXd& s, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("select_rank_by_energy: fraction must be in (0, 1]");
    if (s.size() == 0)
        throw std::invalid_argument("select_rank_by_energy: empty spectrum");
    double total = 0.0;
    std::size_t nonzero = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s[i] < 0.0 || (i > 0 && s[i] > s[i - 1]))
            throw std::invalid_argument("select_rank_by_energy: spectrum must be nonincreasing and nonnegative");
        total += s[i] * s[i];
        if (s[i] > 0.0) ++nonzero;
    }
    if (total == 0.0)
        throw std::invalid_argument("select_rank_by_energy: all-zero spectrum");
    // fraction == 1 means every nonzero component; the prefix scan can hit
    // 1.0 early through rounding.
    if (fraction == 1.0) return nonzero;
    double prefix = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        prefix += s[i] * s[i];
        if (prefix / total >= fraction) return static_cast<std::size_t>(i) + 1;
    }
    return static_cast<std::size_t>(s.size());
}

std::size_t slice_count(const Shape& shape) {
    if (shape.size() < 2)
        throw std::invalid_argument("slice operations require order >= 2");
    std::size_t n = 1;
    for (std::size_t k = 0; k + 2 < shape.size(); ++k) n *= shape[k];
    return n;
}

std::size_t slice_rows(const Shape& shape) {
    if (shape.size() < 2)
        throw std::invalid_argument("slice operations require order >= 2");
    return shape[shape.size() - 2];
}

std::size_t slice_cols(const Shape& shape) {
    if (shape.size() < 2)
        throw std::invalid_argument("slice operations require order >= 2");
    return shape[shape.size() - 1];
}

Matrix tensor_slice(const DenseTensor& t, std::size_t index) {
    const std::size_t rows = slice_rows(t.shape());
    const std::size_t cols = slice_cols(t.shape());
    if (index >= slice_count(t.shape()))
        throw std::out_of_range("tensor_slice: slice index out of range");
    // Row-major layout makes each trailing 2-D slice a contiguous block.
    const std::size_t offset = index * rows * cols;
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                t.value(offset + i * cols + j);
    return m;
}

SvdSliceFactors compress_svd_slices(const DenseTensor& t, std::size_t k) {
    if (t.order() != 3 && t.order() != 4)
        throw std::invalid_argument("compress_svd_slices: input must be order 3 or 4");
    const std::size_t p = std::min(slice_rows(t.shape()), slice_cols(t.shape()));
    if (k < 1 || k > p)
        throw std::out_of_range("compress_svd_slices: rank out of range for slice shape");
    SvdSliceFactors out;
    out.original_shape = t.shape();
    const std::size_t n = slice_count(t.shape());
    out.slices.reserve(n);
    for (std::size_t s = 0; s < n; ++s)
        out.slices.push_back(compress_svd(tensor_slice(t, s), k));
    return out;
}

DenseTensor reconstruct_svd_slices(const SvdSliceFactors& f) {
    const Shape& shape = f.original_shape;
    const std::size_t n = slice_count(shape);
    const std::size_t rows = slice_rows(shape);
    const std::size_t cols = slice_cols(shape);
    if (f.slices.size() != n)
        throw std::invalid_argument("reconstruct_svd_slices: slice count does not match shape");
    std::vector<double> values(shape_volume(shape));
    for (std::size_t s = 0; s < n; ++s) {
        const Matrix slice = reconstruct_svd(f.slices[s]);
        if (static_cast<std::size_t>(slice.rows()) != rows ||
            static_cast<std::size_t>(slice.cols()) != cols)
            throw std::invalid_argument("reconstruct_svd_slices: slice shape mismatch");
        const std::size_t offset = s * rows * cols;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                values[offset + i * cols + j] =
                    slice(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    return DenseTensor(shape, std::move(values));
}

}  // namespace tprs
