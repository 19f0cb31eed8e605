#include "tprs/report.hpp"

#include "tprs/metrics.hpp"
#include "tprs/numfmt.hpp"

#include <stdexcept>

namespace tprs {

std::string format_ranks(const std::vector<std::size_t>& ranks) {
    std::string out;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (i) out += 'x';
        out += std::to_string(ranks[i]);
    }
    return out;
}

std::vector<std::size_t> parse_ranks_field(const std::string& text) {
    std::vector<std::size_t> ranks;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t sep = text.find('x', start);
        const std::string piece =
            text.substr(start, sep == std::string::npos ? std::string::npos : sep - start);
        ranks.push_back(static_cast<std::size_t>(parse_u64(piece)));
        if (sep == std::string::npos) break;
        start = sep + 1;
    }
    if (ranks.empty()) throw std::invalid_argument("empty ranks field");
    return ranks;
}

std::string report_csv_row(const EvaluationReport& r) {
    std::string row = r.method;
    row += ',';
    row += format_ranks(r.ranks);
    row += ',';
    row += std::to_string(r.original_bytes);
    row += ',';
    row += std::to_string(r.compressed_bytes);
    row += ',';
    row += format_double(r.compression_ratio);
    row += ',';
    row += format_double(r.mse);
    row += ',';
    row += format_double(r.psnr_db);
    row += ',';
    row += format_double(r.rmse_abs);
    row += ',';
    row += format_double(r.rmse_rel);
    row += ',';
    if (r.ssim) row += format_double(*r.ssim);
    return row;
}

std::string reports_to_csv(const std::vector<EvaluationReport>& reports) {
    std::string out = "# schema: ";
    out += kSweepCsvSchema;
    out += '\n';
    out += kSweepCsvHeader;
    out += '\n';
    for (const EvaluationReport& r : reports) {
        out += report_csv_row(r);
        out += '\n';
    }
    return out;
}

EvaluationReport evaluate_reconstruction(const DenseTensor& original,
                                         const DenseTensor& reconstruction,
                                         std::string method,
                                         std::vector<std::size_t> ranks,
                                         std::uint64_t original_bytes,
                                         std::uint64_t compressed_bytes,
                                         bool with_ssim) {
    EvaluationReport r;
    r.method = std::move(method);
    r.ranks = std::move(ranks);
    r.original_bytes = original_bytes;
    r.compressed_bytes = compressed_bytes;
    r.compression_ratio = compression_ratio(original_bytes, compressed_bytes);
    r.mse = mse(original, reconstruction);
    const double range = value_range(original);
    r.psnr_db = psnr(original, reconstruction, range);
    r.rmse_abs = rmse_abs(original, reconstruction);
    r.rmse_rel = rmse_rel(original, reconstruction);
    if (with_ssim) {
        SsimParams params;
        params.data_range = range;
        r.ssim = ssim(original, reconstruction, params);
    }
    return r;
}

}  // namespace tprs
