#include "tprs/tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tprs {

std::size_t shape_volume(const Shape& shape) {
    std::size_t n = 1;
    for (std::size_t e : shape) n *= e;
    return n;
}

namespace {

void validate_shape(const Shape& shape) {
    if (shape.empty())
        throw std::invalid_argument("tensor shape must have order >= 1");
    for (std::size_t e : shape)
        if (e == 0) throw std::invalid_argument("tensor extents must be >= 1");
}

}  // namespace

DenseTensor::DenseTensor(Shape shape) : shape_(std::move(shape)) {
    validate_shape(shape_);
    values_.assign(shape_volume(shape_), 0.0);
}

DenseTensor::DenseTensor(Shape shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
    validate_shape(shape_);
    if (values_.size() != shape_volume(shape_))
        throw std::invalid_argument(
            "tensor data length " + std::to_string(values_.size()) +
            " does not match shape volume " + std::to_string(shape_volume(shape_)));
}

DenseTensor DenseTensor::from_matrix(const Matrix& m) {
    std::vector<double> values(static_cast<std::size_t>(m.rows()) *
                               static_cast<std::size_t>(m.cols()));
    std::size_t flat = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) values[flat++] = m(i, j);
    return DenseTensor({static_cast<std::size_t>(m.rows()),
                        static_cast<std::size_t>(m.cols())},
                       std::move(values));
}

std::vector<std::size_t> row_major_strides(const Shape& shape) {
    std::vector<std::size_t> strides(shape.size(), 1);
    for (std::size_t k = shape.size(); k-- > 1;)
        strides[k - 1] = strides[k] * shape[k];
    return strides;
}

std::size_t DenseTensor::flat_index(std::span<const std::size_t> index) const {
    if (index.size() != shape_.size())
        throw std::invalid_argument("multi-index order does not match tensor order");
    std::size_t flat = 0;
    std::size_t stride = 1;
    for (std::size_t k = shape_.size(); k-- > 0;) {
        if (index[k] >= shape_[k])
            throw std::out_of_range("multi-index out of range");
        flat += index[k] * stride;
        stride *= shape_[k];
    }
    return flat;
}

double DenseTensor::at(std::span<const std::size_t> index) const {
    return values_[flat_index(index)];
}

Matrix DenseTensor::as_matrix() const {
    if (order() != 2)
        throw std::invalid_argument("as_matrix requires an order-2 tensor");
    Matrix m(static_cast<Eigen::Index>(shape_[0]), static_cast<Eigen::Index>(shape_[1]));
    std::size_t flat = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = values_[flat++];
    return m;
}

namespace {

// Column weights of the mode-n unfolding: remaining modes in increasing
// order, earliest varying fastest.
std::vector<std::size_t> unfold_col_weights(const Shape& shape, std::size_t mode) {
    std::vector<std::size_t> weights(shape.size(), 0);
    std::size_t w = 1;
    for (std::size_t k = 0; k < shape.size(); ++k) {
        if (k == mode) continue;
        weights[k] = w;
        w *= shape[k];
    }
    return weights;
}

// Odometer walk over all multi-indices in row-major order, calling
// f(flat, row, col) for every element of the mode-n matricization.
template <typename F>
void for_each_unfold_entry(const Shape& shape, std::size_t mode, F&& f) {
    const std::size_t order = shape.size();
    const std::size_t n = shape_volume(shape);
    const std::vector<std::size_t> weights = unfold_col_weights(shape, mode);
    std::vector<std::size_t> idx(order, 0);
    for (std::size_t flat = 0; flat < n; ++flat) {
        std::size_t col = 0;
        for (std::size_t k = 0; k < order; ++k) col += idx[k] * weights[k];
        f(flat, idx[mode], col);
        for (std::size_t k = order; k-- > 0;) {
            if (++idx[k] < shape[k]) break;
            idx[k] = 0;
        }
    }
}

}  // namespace

Matrix unfold(const DenseTensor& t, std::size_t mode) {
    if (mode >= t.order())
        throw std::out_of_range("unfold: mode out of range");
    const std::size_t rows = t.extent(mode);
    const std::size_t cols = t.size() / rows;
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for_each_unfold_entry(t.shape(), mode, [&](std::size_t flat, std::size_t r, std::size_t c) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = t.value(flat);
    });
    return m;
}

DenseTensor fold(const Matrix& m, std::size_t mode, const Shape& shape) {
    if (mode >= shape.size())
        throw std::out_of_range("fold: mode out of range");
    validate_shape(shape);
    const std::size_t rows = shape[mode];
    const std::size_t cols = shape_volume(shape) / rows;
    if (static_cast<std::size_t>(m.rows()) != rows ||
        static_cast<std::size_t>(m.cols()) != cols)
        throw std::invalid_argument("fold: matrix extents do not match target shape");
    std::vector<double> values(shape_volume(shape));
    for_each_unfold_entry(shape, mode, [&](std::size_t flat, std::size_t r, std::size_t c) {
        values[flat] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    });
    return DenseTensor(shape, std::move(values));
}

DenseTensor mode_n_product(const DenseTensor& t, const Matrix& m, std::size_t mode) {
    if (mode >= t.order())
        throw std::out_of_range("mode_n_product: mode out of range");
    if (static_cast<std::size_t>(m.cols()) != t.extent(mode))
        throw std::invalid_argument("mode_n_product: matrix columns do not match mode extent");
    Matrix product = m * unfold(t, mode);
    Shape out_shape = t.shape();
    out_shape[mode] = static_cast<std::size_t>(m.rows());
    return fold(product, mode, out_shape);
}

double frobenius_norm(const DenseTensor& t) {
    double sum = 0.0;
    for (double v : t.values()) sum += v * v;
    return std::sqrt(sum);
}

}  // namespace tprs
