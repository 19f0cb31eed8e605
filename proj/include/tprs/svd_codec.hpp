#pragma once

#include "tprs/linalg.hpp"
#include "tprs/tensor.hpp"

#include <cstddef>
#include <vector>

namespace tprs {

/// Leading-k truncation of a thin SVD, together with the original matrix
/// shape. Frobenius-optimal rank-k approximation of the input (Eckart-Young).
struct SvdFactors {
    std::size_t rank = 0;
    Matrix u;           // rows x rank, orthonormal columns
    Eigen::VectorXd s;  // rank entries, nonincreasing, nonnegative
    Matrix vt;          // rank x cols, orthonormal rows
    std::size_t rows = 0;
    std::size_t cols = 0;
};

/// Per-slice truncation of an order-3/4 tensor: one SvdFactors per 2-D slice
/// along the leading mode(s), all sharing the same rank.
struct SvdSliceFactors {
    Shape original_shape;
    std::vector<SvdFactors> slices;
};

SvdFactors compress_svd(const Matrix& a, std::size_t k);
Matrix reconstruct_svd(const SvdFactors& f);

/// Smallest k whose leading singular values carry at least `fraction` of the
/// total energy sum(s_i^2). `fraction` lies in (0, 1]; at exactly 1 the
/// count of nonzero singular values is returned.
std::size_t select_rank_by_energy(const Eigen::VectorXd& s, double fraction);

SvdSliceFactors compress_svd_slices(const DenseTensor& t, std::size_t k);
DenseTensor reconstruct_svd_slices(const SvdSliceFactors& f);

/// Number of matrix slices of an order >= 2 tensor (product of all extents
/// except the trailing two) and the slice dimensions.
std::size_t slice_count(const Shape& shape);
std::size_t slice_rows(const Shape& shape);
std::size_t slice_cols(const Shape& shape);

/// Copies slice `index` (0-based, leading modes flattened row-major) into a
/// matrix of shape slice_rows x slice_cols.
Matrix tensor_slice(const DenseTensor& t, std::size_t index);

}  // namespace tprs
