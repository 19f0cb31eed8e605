#pragma once

#include "tprs/report.hpp"

#include <istream>
#include <string>
#include <vector>

namespace tprs {

/// Parsed sweep CSV. Parsing validates the schema comment (when present)
/// and the exact header row, and rejects empty bodies.
struct SweepTable {
    std::vector<EvaluationReport> rows;
};

SweepTable parse_sweep_csv(std::istream& in);
SweepTable parse_sweep_csv_text(const std::string& text);

/// Fidelity-versus-compression series: method, compression_ratio, rmse_abs
/// (tab-separated, one row per sweep row, header included).
std::string fidelity_series_tsv(const SweepTable& table);

/// Rank-trend series: method, ranks, compressed_bytes, mse, psnr_db.
std::string rank_series_tsv(const SweepTable& table);

/// Self-contained SVG scatter of rmse_abs against compression ratio, one
/// marker series per method.
std::string render_fidelity_svg(const SweepTable& table);

}  // namespace tprs
