#pragma once

#include "tprs/tensor.hpp"

#include <cstddef>

namespace tprs {

/// Mean of (x - y)^2 over all entries; shapes must match.
double mse(const DenseTensor& x, const DenseTensor& y);

/// 10 * log10(data_range^2 / mse). Identical inputs yield +infinity.
double psnr(const DenseTensor& x, const DenseTensor& y, double data_range);

/// data_range taken as max(x) - min(x) of the reference tensor.
double psnr(const DenseTensor& x, const DenseTensor& y);

/// sqrt(mse): absolute root-mean-square error.
double rmse_abs(const DenseTensor& x, const DenseTensor& y);

/// ||x - y||_F / ||x||_F: dimensionless, 0 for perfect reconstruction.
/// The reference x must be nonzero.
double rmse_rel(const DenseTensor& x, const DenseTensor& y);

double value_range(const DenseTensor& t);

struct SsimParams {
    std::size_t window = 7;  // square uniform window, stride 1, no padding
    double k1 = 0.01;
    double k2 = 0.03;
    double data_range = 0.0;  // must be set > 0
};

/// Mean of the local SSIM map over all fully-interior windows, with
/// C1 = (k1 * L)^2 and C2 = (k2 * L)^2 for L = data_range. Window moments
/// are plain (population) averages.
double ssim(const Matrix& x, const Matrix& y, const SsimParams& params);

/// Order-2 tensors compare directly; order-3/4 tensors report the mean of
/// per-slice SSIM over the leading mode(s).
double ssim(const DenseTensor& x, const DenseTensor& y, const SsimParams& params);

/// original_bytes / compressed_bytes as a real quotient.
double compression_ratio(std::uint64_t original_bytes, std::uint64_t compressed_bytes);

}  // namespace tprs
