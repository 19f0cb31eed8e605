#include "tprs/metrics.hpp"

#include "tprs/svd_codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tprs {

namespace {

void require_same_shape(const DenseTensor& x, const DenseTensor& y, const char* op) {
    if (x.shape() != y.shape())
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

}  // namespace

double mse(const DenseTensor& x, const DenseTensor& y) {
    require_same_shape(x, y, "mse");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x.value(i) - y.value(i);
        sum += d * d;
    }
    return sum / static_cast<double>(x.size());
}

double psnr(const DenseTensor& x, const DenseTensor& y, double data_range) {
    require_same_shape(x, y, "psnr");
    if (!(data_range > 0.0))
        throw std::invalid_argument("psnr: data_range must be positive");
    const double err = mse(x, y);
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(data_range * data_range / err);
}

double psnr(const DenseTensor& x, const DenseTensor& y) {
    return psnr(x, y, value_range(x));
}

double rmse_abs(const DenseTensor& x, const DenseTensor& y) {
    return std::sqrt(mse(x, y));
}

double rmse_rel(const DenseTensor& x, const DenseTensor& y) {
    require_same_shape(x, y, "rmse_rel");
    const double ref = frobenius_norm(x);
    if (ref == 0.0)
        throw std::invalid_argument("rmse_rel: reference tensor is zero");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x.value(i) - y.value(i);
        sum += d * d;
    }
    return std::sqrt(sum) / ref;
}

double value_range(const DenseTensor& t) {
    const auto [lo, hi] = std::minmax_element(t.values().begin(), t.values().end());
    return *hi - *lo;
}

double ssim(const Matrix& x, const Matrix& y, const SsimParams& params) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("ssim: shape mismatch");
    if (!(params.data_range > 0.0))
        throw std::invalid_argument("ssim: data_range must be positive");
    const Eigen::Index w = static_cast<Eigen::Index>(params.window);
    if (w < 1 || x.rows() < w || x.cols() < w)
        throw std::invalid_argument("ssim: image smaller than window");

    const double l = params.data_range;
    const double c1 = (params.k1 * l) * (params.k1 * l);
    const double c2 = (params.k2 * l) * (params.k2 * l);
    const double n = static_cast<double>(w) * static_cast<double>(w);

    double total = 0.0;
    std::size_t windows = 0;
    for (Eigen::Index i = 0; i + w <= x.rows(); ++i) {
        for (Eigen::Index j = 0; j + w <= x.cols(); ++j) {
            double mean_x = 0.0, mean_y = 0.0;
            for (Eigen::Index a = 0; a < w; ++a)
                for (Eigen::Index b = 0; b < w; ++b) {
                    mean_x += x(i + a, j + b);
                    mean_y += y(i + a, j + b);
                }
            mean_x /= n;
            mean_y /= n;
            double var_x = 0.0, var_y = 0.0, cov = 0.0;
            for (Eigen::Index a = 0; a < w; ++a)
                for (Eigen::Index b = 0; b < w; ++b) {
                    const double dx = x(i + a, j + b) - mean_x;
                    const double dy = y(i + a, j + b) - mean_y;
                    var_x += dx * dx;
                    var_y += dy * dy;
                    cov += dx * dy;
                }
            var_x /= n;
            var_y /= n;
            cov /= n;
            const double num = (2.0 * mean_x * mean_y + c1) * (2.0 * cov + c2);
            const double den = (mean_x * mean_x + mean_y * mean_y + c1) * (var_x + var_y + c2);
            total += num / den;
            ++windows;
        }
    }
    return total / static_cast<double>(windows);
}

double ssim(const DenseTensor& x, const DenseTensor& y, const SsimParams& params) {
    require_same_shape(x, y, "ssim");
    if (x.order() < 2)
        throw std::invalid_argument("ssim: tensor must have order >= 2");
    if (x.order() == 2) return ssim(x.as_matrix(), y.as_matrix(), params);
    const std::size_t n = slice_count(x.shape());
    double total = 0.0;
    for (std::size_t s = 0; s < n; ++s)
        total += ssim(tensor_slice(x, s), tensor_slice(y, s), params);
    return total / static_cast<double>(n);
}

double compression_ratio(std::uint64_t original_bytes, std::uint64_t compressed_bytes) {
    if (original_bytes == 0)
        throw std::invalid_argument("compression_ratio: original size must be positive");
    if (compressed_bytes == 0)
        throw std::invalid_argument("compression_ratio: compressed size must be positive");
    return static_cast<double>(original_bytes) / static_cast<double>(compressed_bytes);
}

}  // namespace tprs
