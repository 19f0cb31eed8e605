#include "tprs/sweep.hpp"

#include "tprs/metrics.hpp"
#include "tprs/svd_codec.hpp"
#include "tprs/tucker_codec.hpp"

#include <stdexcept>

namespace tprs {

std::vector<std::size_t> default_svd_ranks() { return {5, 10, 20, 30, 40, 50, 75, 100}; }

std::vector<std::vector<std::size_t>> default_tucker_ranks() {
    std::vector<std::vector<std::size_t>> ranks;
    for (std::size_t r : {5, 10, 20, 30, 40, 50, 75}) ranks.push_back({r, r, r});
    return ranks;
}

std::vector<std::size_t> expand_tucker_ranks(const DenseTensor& input,
                                             const std::vector<std::size_t>& ranks,
                                             bool time_full_rank) {
    if (ranks.size() == input.order()) return ranks;
    if (input.order() == 4 && ranks.size() == 3 && time_full_rank) {
        std::vector<std::size_t> full = {input.extent(0)};
        full.insert(full.end(), ranks.begin(), ranks.end());
        return full;
    }
    throw std::invalid_argument("tucker rank tuple length " + std::to_string(ranks.size()) +
                                " does not match tensor order " + std::to_string(input.order()));
}

namespace {

void validate_svd_rank(const DenseTensor& input, std::size_t k) {
    std::size_t limit;
    if (input.order() == 2) {
        limit = std::min(input.extent(0), input.extent(1));
    } else if (input.order() == 3 || input.order() == 4) {
        limit = std::min(slice_rows(input.shape()), slice_cols(input.shape()));
    } else {
        throw std::invalid_argument("svd sweep requires an order-2, 3, or 4 input");
    }
    if (k < 1 || k > limit)
        throw std::out_of_range("svd rank " + std::to_string(k) +
                                " out of range [1, " + std::to_string(limit) + "]");
}

void validate_tucker_ranks(const DenseTensor& input, const std::vector<std::size_t>& expanded) {
    if (input.order() < 3)
        throw std::invalid_argument("tucker sweep requires an order-3 or order-4 input");
    for (std::size_t n = 0; n < expanded.size(); ++n)
        if (expanded[n] < 1 || expanded[n] > input.extent(n))
            throw std::out_of_range("tucker rank " + std::to_string(expanded[n]) +
                                    " out of range for mode " + std::to_string(n));
}

}  // namespace

void validate_sweep(const DenseTensor& input, const SweepConfig& config) {
    if ((config.run_svd && config.svd_ranks.empty()) ||
        (config.run_tucker && config.tucker_ranks.empty()))
        throw std::invalid_argument("sweep: rank list must be nonempty");
    if (!config.run_svd && !config.run_tucker)
        throw std::invalid_argument("sweep: no method selected");
    if (config.run_svd)
        for (std::size_t k : config.svd_ranks) validate_svd_rank(input, k);
    if (config.run_tucker)
        for (const auto& ranks : config.tucker_ranks)
            validate_tucker_ranks(input,
                                  expand_tucker_ranks(input, ranks, config.time_full_rank));
}

AnyFactors compress_for_method(const DenseTensor& input, const std::string& method,
                               const std::vector<std::size_t>& ranks,
                               const SweepConfig& config) {
    if (method == "svd") {
        if (ranks.size() != 1)
            throw std::invalid_argument("svd compression takes a single rank");
        validate_svd_rank(input, ranks[0]);
        if (input.order() == 2) return compress_svd(input.as_matrix(), ranks[0]);
        return compress_svd_slices(input, ranks[0]);
    }
    if (method == "tucker") {
        const std::vector<std::size_t> expanded =
            expand_tucker_ranks(input, ranks, config.time_full_rank);
        validate_tucker_ranks(input, expanded);
        return hooi(input, expanded, config.hooi_max_iters, config.hooi_tol).factors;
    }
    throw std::invalid_argument("unknown method: " + method);
}

std::vector<EvaluationReport> run_sweep(const DenseTensor& input,
                                        std::uint64_t original_bytes,
                                        const SweepConfig& config) {
    validate_sweep(input, config);
    std::vector<EvaluationReport> reports;

    // Each row measures the artifact as stored: factors round-trip through
    // the container at the configured dtype before reconstruction.
    auto evaluate_row = [&](const std::string& method, const std::vector<std::size_t>& ranks) {
        const AnyFactors factors = compress_for_method(input, method, ranks, config);
        const std::vector<std::uint8_t> bytes = encode(factors, config.dtype);
        const AnyFactors stored = decode(bytes);
        const DenseTensor recon = reconstruct_any(stored);
        return evaluate_reconstruction(input, recon, method, rank_list_of(stored),
                                       original_bytes, bytes.size(), config.with_ssim);
    };

    if (config.run_tucker)
        for (const auto& ranks : config.tucker_ranks)
            reports.push_back(evaluate_row("tucker", ranks));
    if (config.run_svd)
        for (std::size_t k : config.svd_ranks)
            reports.push_back(evaluate_row("svd", {k}));
    return reports;
}

}  // namespace tprs
