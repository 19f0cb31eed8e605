#pragma once

#include "tprs/tensor.hpp"

#include <cstddef>
#include <vector>

namespace tprs {

/// Tucker model: core tensor of shape `ranks` plus one column-orthonormal
/// factor matrix per mode (factor n is original_shape[n] x ranks[n]).
struct TuckerFactors {
    DenseTensor core;
    std::vector<Matrix> factors;
    Shape original_shape;
};

/// One-shot higher-order SVD: factor n spans the leading left singular
/// subspace of the mode-n unfolding; the core is the multilinear projection
/// of t onto those subspaces.
TuckerFactors hosvd(const DenseTensor& t, const std::vector<std::size_t>& ranks);

struct HooiResult {
    TuckerFactors factors;
    /// Fit ||core|| / ||t|| after HOSVD initialization and after each full
    /// alternating sweep; nondecreasing up to roundoff.
    std::vector<double> fits;
    std::size_t iterations = 0;
};

/// Alternating refinement of the HOSVD factors (higher-order orthogonal
/// iteration). Modes are updated in increasing index order; iteration stops
/// when the relative fit change drops below `tol` or after `max_iters`
/// sweeps.
HooiResult hooi(const DenseTensor& t, const std::vector<std::size_t>& ranks,
                std::size_t max_iters = 50, double tol = 1e-8);

DenseTensor reconstruct_tucker(const TuckerFactors& f);

/// Per-mode rank selection: mode n keeps the singular values of its
/// unfolding whose squared share of the mode's total energy is at least
/// `threshold`, never fewer than one.
std::vector<std::size_t> select_ranks_by_variance(const DenseTensor& t,
                                                  double threshold = 0.01);

}  // namespace tprs
