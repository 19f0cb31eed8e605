#pragma once

#include "tprs/tensor.hpp"

#include <stdexcept>

namespace tprs {

/// Raised when an input contains non-finite samples or an iterative kernel
/// cannot produce a valid result.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thin SVD a = u * diag(s) * vt with p = min(rows, cols) columns.
///
/// Columns of u are orthonormal, rows of vt are orthonormal, s is
/// nonincreasing and nonnegative. Signs are fixed so that the entry of
/// largest magnitude in each left singular vector is nonnegative (ties
/// broken by lowest row index), which makes the factorization deterministic
/// for a fixed input.
struct SvdTriple {
    Matrix u;
    Eigen::VectorXd s;
    Matrix vt;
};

SvdTriple thin_svd(const Matrix& a);

/// First r columns of thin_svd(a).u, r <= min(rows, cols).
Matrix leading_left_singular_vectors(const Matrix& a, std::size_t r);

}  // namespace tprs
