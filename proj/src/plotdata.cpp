#include "tprs/plotdata.hpp"

#include "tprs/numfmt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tprs {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

}  // namespace

SweepTable parse_sweep_csv(std::istream& in) {
    SweepTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("schema:") != std::string::npos &&
                line.find(kSweepCsvSchema) == std::string::npos)
                throw std::invalid_argument("plotdata: unsupported sweep CSV schema: " + line);
            continue;
        }
        if (!header_seen) {
            if (line != kSweepCsvHeader)
                throw std::invalid_argument("plotdata: unexpected CSV header: " + line);
            header_seen = true;
            continue;
        }
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 10)
            throw std::invalid_argument("plotdata: malformed CSV row: " + line);
        EvaluationReport r;
        r.method = fields[0];
        r.ranks = parse_ranks_field(fields[1]);
        r.original_bytes = parse_u64(fields[2]);
        r.compressed_bytes = parse_u64(fields[3]);
        r.compression_ratio = parse_double(fields[4]);
        r.mse = parse_double(fields[5]);
        r.psnr_db = parse_double(fields[6]);
        r.rmse_abs = parse_double(fields[7]);
        r.rmse_rel = parse_double(fields[8]);
        if (!fields[9].empty()) r.ssim = parse_double(fields[9]);
        table.rows.push_back(std::move(r));
    }
    if (!header_seen)
        throw std::invalid_argument("plotdata: missing CSV header");
    if (table.rows.empty())
        throw std::invalid_argument("plotdata: CSV has no data rows");
    return table;
}

SweepTable parse_sweep_csv_text(const std::string& text) {
    std::istringstream in(text);
    return parse_sweep_csv(in);
}

std::string fidelity_series_tsv(const SweepTable& table) {
    std::string out = "method\tcompression_ratio\trmse_abs\n";
    for (const EvaluationReport& r : table.rows) {
        out += r.method;
        out += '\t';
        out += format_double(r.compression_ratio);
        out += '\t';
        out += format_double(r.rmse_abs);
        out += '\n';
    }
    return out;
}

std::string rank_series_tsv(const SweepTable& table) {
    std::string out = "method\tranks\tcompressed_bytes\tmse\tpsnr_db\n";
    for (const EvaluationReport& r : table.rows) {
        out += r.method;
        out += '\t';
        out += format_ranks(r.ranks);
        out += '\t';
        out += std::to_string(r.compressed_bytes);
        out += '\t';
        out += format_double(r.mse);
        out += '\t';
        out += format_double(r.psnr_db);
        out += '\n';
    }
    return out;
}

namespace {

struct AxisRange {
    double lo = 0.0;
    double hi = 1.0;
    double scale(double v, double px0, double px1) const {
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return px0 + t * (px1 - px0);
    }
};

std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string render_fidelity_svg(const SweepTable& table) {
    constexpr double kWidth = 640, kHeight = 480;
    constexpr double kLeft = 70, kRight = 610, kTop = 30, kBottom = 420;

    AxisRange x, y;
    x.lo = x.hi = table.rows.front().compression_ratio;
    y.lo = y.hi = table.rows.front().rmse_abs;
    for (const EvaluationReport& r : table.rows) {
        x.lo = std::min(x.lo, r.compression_ratio);
        x.hi = std::max(x.hi, r.compression_ratio);
        y.lo = std::min(y.lo, r.rmse_abs);
        y.hi = std::max(y.hi, r.rmse_abs);
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_num(kWidth) +
           "\" height=\"" + svg_num(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<line x1=\"" + svg_num(kLeft) + "\" y1=\"" + svg_num(kBottom) + "\" x2=\"" +
           svg_num(kRight) + "\" y2=\"" + svg_num(kBottom) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + svg_num(kLeft) + "\" y1=\"" + svg_num(kTop) + "\" x2=\"" +
           svg_num(kLeft) + "\" y2=\"" + svg_num(kBottom) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + svg_num((kLeft + kRight) / 2) + "\" y=\"" + svg_num(kHeight - 15) +
           "\" text-anchor=\"middle\" font-size=\"14\">compression ratio</text>\n";
    svg += "<text x=\"18\" y=\"" + svg_num((kTop + kBottom) / 2) +
           "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 " +
           svg_num((kTop + kBottom) / 2) + ")\">rmse</text>\n";
    svg += "<text x=\"" + svg_num(kLeft) + "\" y=\"" + svg_num(kBottom + 18) +
           "\" font-size=\"11\">" + format_double(x.lo) + "</text>\n";
    svg += "<text x=\"" + svg_num(kRight) + "\" y=\"" + svg_num(kBottom + 18) +
           "\" text-anchor=\"end\" font-size=\"11\">" + format_double(x.hi) + "</text>\n";
    svg += "<text x=\"" + svg_num(kLeft - 6) + "\" y=\"" + svg_num(kBottom) +
           "\" text-anchor=\"end\" font-size=\"11\">" + format_double(y.lo) + "</text>\n";
    svg += "<text x=\"" + svg_num(kLeft - 6) + "\" y=\"" + svg_num(kTop + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + format_double(y.hi) + "</text>\n";

    for (const EvaluationReport& r : table.rows) {
        const double px = x.scale(r.compression_ratio, kLeft, kRight);
        const double py = y.scale(r.rmse_abs, kBottom, kTop);
        if (r.method == "tucker") {
            svg += "<circle cx=\"" + svg_num(px) + "\" cy=\"" + svg_num(py) +
                   "\" r=\"4\" fill=\"blue\"/>\n";
        } else {
            svg += "<rect x=\"" + svg_num(px - 3.5) + "\" y=\"" + svg_num(py - 3.5) +
                   "\" width=\"7\" height=\"7\" fill=\"red\"/>\n";
        }
    }
    svg += "<circle cx=\"" + svg_num(kRight - 120) + "\" cy=\"" + svg_num(kTop + 6) +
           "\" r=\"4\" fill=\"blue\"/>\n";
    svg += "<text x=\"" + svg_num(kRight - 110) + "\" y=\"" + svg_num(kTop + 10) +
           "\" font-size=\"12\">tucker</text>\n";
    svg += "<rect x=\"" + svg_num(kRight - 123.5) + "\" y=\"" + svg_num(kTop + 20) +
           "\" width=\"7\" height=\"7\" fill=\"red\"/>\n";
    svg += "<text x=\"" + svg_num(kRight - 110) + "\" y=\"" + svg_num(kTop + 28) +
           "\" font-size=\"12\">svd</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace tprs
