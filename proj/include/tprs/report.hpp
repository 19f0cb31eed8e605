#pragma once

#include "tprs/container.hpp"
#include "tprs/tensor.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tprs {

/// One evaluated compression configuration: identification, sizes, and the
/// full fidelity metric set. `ssim` is absent when SSIM was not requested.
struct EvaluationReport {
    std::string method;  // "svd" | "tucker"
    std::vector<std::size_t> ranks;
    std::uint64_t original_bytes = 0;
    std::uint64_t compressed_bytes = 0;
    double compression_ratio = 0.0;
    double mse = 0.0;
    double psnr_db = 0.0;
    double rmse_abs = 0.0;
    double rmse_rel = 0.0;
    std::optional<double> ssim;
};

/// Sweep CSV schema "tprs-sweep-v1": a `# schema:` comment line, the fixed
/// header row, then one row per configuration. Rank tuples are joined with
/// 'x' so every field stays comma-free.
inline constexpr std::string_view kSweepCsvSchema = "tprs-sweep-v1";
inline constexpr std::string_view kSweepCsvHeader =
    "method,ranks,original_bytes,compressed_bytes,compression_ratio,"
    "mse,psnr_db,rmse_abs,rmse_rel,ssim";

std::string format_ranks(const std::vector<std::size_t>& ranks);
std::vector<std::size_t> parse_ranks_field(const std::string& text);

std::string report_csv_row(const EvaluationReport& report);
std::string reports_to_csv(const std::vector<EvaluationReport>& reports);

/// Computes every metric for a reconstruction against its original.
/// data_range for PSNR and SSIM is max - min of the original.
EvaluationReport evaluate_reconstruction(const DenseTensor& original,
                                         const DenseTensor& reconstruction,
                                         std::string method,
                                         std::vector<std::size_t> ranks,
                                         std::uint64_t original_bytes,
                                         std::uint64_t compressed_bytes,
                                         bool with_ssim);

}  // namespace tprs
