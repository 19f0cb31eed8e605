#pragma once

#include "tprs/container.hpp"
#include "tprs/report.hpp"
#include "tprs/tensor.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tprs {

/// Rank-sweep configuration. SVD ranks are scalars (plain truncation for
/// matrices, shared per-slice truncation for order-3/4 inputs); Tucker ranks
/// are per-mode tuples. For order-4 inputs a 3-tuple plus `time_full_rank`
/// keeps the leading (time) mode at full extent.
struct SweepConfig {
    bool run_svd = true;
    bool run_tucker = true;
    std::vector<std::size_t> svd_ranks;
    std::vector<std::vector<std::size_t>> tucker_ranks;
    SampleDtype dtype = SampleDtype::f32;
    bool with_ssim = true;
    bool time_full_rank = true;
    std::size_t hooi_max_iters = 50;
    double hooi_tol = 1e-8;
};

/// Paper-protocol default rank lists.
std::vector<std::size_t> default_svd_ranks();
std::vector<std::vector<std::size_t>> default_tucker_ranks();

/// Validates every configured rank against the input shape; throws before
/// any decomposition runs if one is out of range.
void validate_sweep(const DenseTensor& input, const SweepConfig& config);

/// Runs every configured rank (Tucker rows first, then SVD rows) and
/// returns one report per configuration. `original_bytes` is the byte size
/// the input occupies in its source representation.
std::vector<EvaluationReport> run_sweep(const DenseTensor& input,
                                        std::uint64_t original_bytes,
                                        const SweepConfig& config);

/// Compresses with one method and rank set; returns the factor variant the
/// container serializes. SVD on order-3/4 inputs compresses per slice.
AnyFactors compress_for_method(const DenseTensor& input, const std::string& method,
                               const std::vector<std::size_t>& ranks,
                               const SweepConfig& config);

/// Expands a Tucker rank tuple against the input order (applying the
/// time_full_rank rule for order-4 inputs given 3-tuples).
std::vector<std::size_t> expand_tucker_ranks(const DenseTensor& input,
                                             const std::vector<std::size_t>& ranks,
                                             bool time_full_rank);

}  // namespace tprs
