#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace tprs {

/// Dense matrix of real samples. Order-2 tensors convert to and from this
/// type for the operations that are naturally matrix-shaped (SVD, unfolding).
using Matrix = Eigen::MatrixXd;

using Shape = std::vector<std::size_t>;

std::size_t shape_volume(const Shape& shape);

/// Dense N-way array of real samples, row-major (last index fastest).
/// Values are immutable after construction; all tensor operations are pure
/// functions returning new tensors.
class DenseTensor {
public:
    DenseTensor() = default;

    /// Zero-filled tensor of the given shape.
    explicit DenseTensor(Shape shape);

    /// Takes ownership of `values`, which must have exactly
    /// shape_volume(shape) entries.
    DenseTensor(Shape shape, std::vector<double> values);

    static DenseTensor from_matrix(const Matrix& m);

    const Shape& shape() const { return shape_; }
    std::size_t order() const { return shape_.size(); }
    std::size_t size() const { return values_.size(); }
    std::size_t extent(std::size_t mode) const { return shape_.at(mode); }

    const std::vector<double>& values() const { return values_; }
    double value(std::size_t flat) const { return values_[flat]; }

    /// Row-major flat offset of a multi-index.
    std::size_t flat_index(std::span<const std::size_t> index) const;
    double at(std::span<const std::size_t> index) const;

    /// Order-2 tensors only.
    Matrix as_matrix() const;

private:
    Shape shape_;
    std::vector<double> values_;
};

std::vector<std::size_t> row_major_strides(const Shape& shape);

/// Mode-n matricization: rows index `mode`, columns index the remaining
/// modes in increasing mode order with the earliest remaining mode varying
/// fastest (Kolda-Bader convention).
Matrix unfold(const DenseTensor& t, std::size_t mode);

/// Exact inverse of unfold under the same column convention.
DenseTensor fold(const Matrix& m, std::size_t mode, const Shape& shape);

/// n-mode product t x_mode m, i.e. fold(m * unfold(t, mode), mode, ...).
/// Requires m.cols() == t.shape()[mode]; the result replaces that extent
/// with m.rows().
DenseTensor mode_n_product(const DenseTensor& t, const Matrix& m, std::size_t mode);

double frobenius_norm(const DenseTensor& t);

}  // namespace tprs
