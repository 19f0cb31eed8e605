#include "tprs/linalg.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace tprs {

namespace {

// Flip signs so the largest-magnitude entry of each left singular vector is
// nonnegative; the first occurrence wins on ties. The matching row of vt is
// flipped with it so the product is unchanged.
void fix_signs(Matrix& u, Matrix& vt) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
        Eigen::Index pivot = 0;
        double best = std::abs(u(0, j));
        for (Eigen::Index i = 1; i < u.rows(); ++i) {
            const double mag = std::abs(u(i, j));
            if (mag > best) {
                best = mag;
                pivot = i;
            }
        }
        if (u(pivot, j) < 0.0) {
            u.col(j) = -u.col(j);
            if (j < vt.rows()) vt.row(j) = -vt.row(j);
        }
    }
}

}  // namespace

SvdTriple thin_svd(const Matrix& a) {
    if (a.rows() < 1 || a.cols() < 1)
        throw std::invalid_argument("thin_svd: matrix must be non-empty");
    if (!a.allFinite())
        throw NumericalError("thin_svd: input has non-finite entries");

    SvdTriple out;
    // Jacobi is the more accurate kernel; BDC is used once the small
    // dimension makes Jacobi's O(min^2 * max) cost noticeable.
    if (std::min(a.rows(), a.cols()) <= 64) {
        Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        out.u = svd.matrixU();
        out.s = svd.singularValues();
        out.vt = svd.matrixV().transpose();
    } else {
        Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        out.u = svd.matrixU();
        out.s = svd.singularValues();
        out.vt = svd.matrixV().transpose();
    }
    fix_signs(out.u, out.vt);
    return out;
}

Matrix leading_left_singular_vectors(const Matrix& a, std::size_t r) {
    const std::size_t p = static_cast<std::size_t>(std::min(a.rows(), a.cols()));
    if (r < 1 || r > p)
        throw std::out_of_range("leading_left_singular_vectors: rank out of range");
    return thin_svd(a).u.leftCols(static_cast<Eigen::Index>(r));
}

}  // namespace tprs
