#include "tprs/tucker_codec.hpp"

#include "tprs/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tprs {

namespace {

void validate_ranks(const DenseTensor& t, const std::vector<std::size_t>& ranks) {
    if (ranks.size() != t.order())
        throw std::invalid_argument("tucker: rank list length must equal tensor order");
    for (std::size_t n = 0; n < ranks.size(); ++n) {
        if (ranks[n] < 1 || ranks[n] > t.extent(n))
            throw std::out_of_range("tucker: rank for mode " + std::to_string(n) +
                                    " out of range [1, " + std::to_string(t.extent(n)) + "]");
    }
}

// Leading left singular vectors of `a`, extended with a deterministic
// orthonormal completion (Gram-Schmidt over standard basis vectors) when r
// exceeds min(rows, cols). The extra columns carry zero core energy, so the
// reconstruction is unchanged; they only arise when one extent exceeds the
// product of the others.
Matrix mode_basis(const Matrix& a, std::size_t r) {
    const std::size_t p = static_cast<std::size_t>(std::min(a.rows(), a.cols()));
    if (r <= p) return leading_left_singular_vectors(a, r);
    Matrix u(a.rows(), static_cast<Eigen::Index>(r));
    u.leftCols(static_cast<Eigen::Index>(p)) = thin_svd(a).u;
    Eigen::Index filled = static_cast<Eigen::Index>(p);
    for (Eigen::Index e = 0; e < a.rows() && filled < u.cols(); ++e) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(a.rows(), e);
        v -= u.leftCols(filled) * (u.leftCols(filled).transpose() * v);
        const double norm = v.norm();
        if (norm > 1e-8) {
            u.col(filled) = v / norm;
            ++filled;
        }
    }
    if (filled < u.cols())
        throw NumericalError("tucker: failed to complete an orthonormal mode basis");
    return u;
}

// t x_0 U_0^T x_1 U_1^T ... over every mode.
DenseTensor project_core(const DenseTensor& t, const std::vector<Matrix>& factors) {
    DenseTensor core = t;
    for (std::size_t n = 0; n < factors.size(); ++n)
        core = mode_n_product(core, factors[n].transpose(), n);
    return core;
}

}  // namespace

TuckerFactors hosvd(const DenseTensor& t, const std::vector<std::size_t>& ranks) {
    validate_ranks(t, ranks);
    TuckerFactors f;
    f.original_shape = t.shape();
    f.factors.reserve(t.order());
    for (std::size_t n = 0; n < t.order(); ++n)
        f.factors.push_back(mode_basis(unfold(t, n), ranks[n]));
    f.core = project_core(t, f.factors);
    return f;
}

HooiResult hooi(const DenseTensor& t, const std::vector<std::size_t>& ranks,
                std::size_t max_iters, double tol) {
    validate_ranks(t, ranks);
    if (max_iters < 1) throw std::invalid_argument("hooi: max_iters must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("hooi: tol must be positive");

    const double t_norm = frobenius_norm(t);
    HooiResult result;
    result.factors = hosvd(t, ranks);
    if (t_norm == 0.0) {
        result.fits.push_back(0.0);
        return result;
    }

    double fit = frobenius_norm(result.factors.core) / t_norm;
    result.fits.push_back(fit);

    const std::size_t d = t.order();
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        for (std::size_t n = 0; n < d; ++n) {
            // Project every mode except n, then refresh factor n from the
            // leading left singular subspace of the projected unfolding.
            DenseTensor projected = t;
            for (std::size_t m = 0; m < d; ++m) {
                if (m == n) continue;
                projected = mode_n_product(projected, result.factors.factors[m].transpose(), m);
            }
            result.factors.factors[n] = mode_basis(unfold(projected, n), ranks[n]);
        }
        result.factors.core = project_core(t, result.factors.factors);
        const double new_fit = frobenius_norm(result.factors.core) / t_norm;
        result.fits.push_back(new_fit);
        ++result.iterations;
        if (std::abs(new_fit - fit) < tol * std::max(fit, 1e-300)) break;
        fit = new_fit;
    }
    return result;
}

DenseTensor reconstruct_tucker(const TuckerFactors& f) {
    if (f.factors.size() != f.original_shape.size() ||
        f.factors.size() != f.core.order())
        throw std::invalid_argument("reconstruct_tucker: factor count does not match order");
    for (std::size_t n = 0; n < f.factors.size(); ++n) {
        if (static_cast<std::size_t>(f.factors[n].rows()) != f.original_shape[n] ||
            static_cast<std::size_t>(f.factors[n].cols()) != f.core.extent(n))
            throw std::invalid_argument("reconstruct_tucker: factor shape mismatch at mode " +
                                        std::to_string(n));
    }
    DenseTensor out = f.core;
    for (std::size_t n = 0; n < f.factors.size(); ++n)
        out = mode_n_product(out, f.factors[n], n);
    return out;
}

std::vector<std::size_t> select_ranks_by_variance(const DenseTensor& t, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("select_ranks_by_variance: threshold must be in (0, 1)");
    if (frobenius_norm(t) == 0.0)
        throw std::invalid_argument("select_ranks_by_variance: zero tensor");
    std::vector<std::size_t> ranks;
    ranks.reserve(t.order());
    for (std::size_t n = 0; n < t.order(); ++n) {
        const Eigen::VectorXd s = thin_svd(unfold(t, n)).s;
        double total = 0.0;
        for (Eigen::Index i = 0; i < s.size(); ++i) total += s[i] * s[i];
        std::size_t r = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s[i] * s[i] / total >= threshold) ++r;
        ranks.push_back(std::max<std::size_t>(r, 1));
    }
    return ranks;
}

}  // namespace tprs
