#include "tprs/container.hpp"
#include "tprs/ingest.hpp"
#include "tprs/linalg.hpp"
#include "tprs/metrics.hpp"
#include "tprs/numfmt.hpp"
#include "tprs/plotdata.hpp"
#include "tprs/report.hpp"
#include "tprs/svd_codec.hpp"
#include "tprs/sweep.hpp"
#include "tprs/tucker_codec.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

std::vector<std::size_t> parse_scalar_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t sep = text.find_first_of(",;", start);
        const std::string piece =
            text.substr(start, sep == std::string::npos ? std::string::npos : sep - start);
        if (!piece.empty()) out.push_back(static_cast<std::size_t>(tprs::parse_u64(piece)));
        if (sep == std::string::npos) break;
        start = sep + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty rank list: " + text);
    return out;
}

std::vector<std::vector<std::size_t>> parse_tuple_list(const std::string& text) {
    std::string cleaned;
    for (char c : text)
        if (c != '[' && c != ']' && c != ' ') cleaned += c;
    std::vector<std::vector<std::size_t>> out;
    std::size_t start = 0;
    while (start <= cleaned.size()) {
        std::size_t sep = cleaned.find(';', start);
        const std::string piece =
            cleaned.substr(start, sep == std::string::npos ? std::string::npos : sep - start);
        if (!piece.empty()) out.push_back(parse_scalar_list(piece));
        if (sep == std::string::npos) break;
        start = sep + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty rank tuple list: " + text);
    return out;
}

tprs::Shape parse_shape(const std::string& text) {
    std::vector<std::size_t> list = parse_scalar_list(text);
    return tprs::Shape(list.begin(), list.end());
}

tprs::SampleDtype parse_sample_dtype(const std::string& text) {
    if (text == "f32") return tprs::SampleDtype::f32;
    if (text == "f64") return tprs::SampleDtype::f64;
    throw std::invalid_argument("unknown dtype (expected f32 or f64): " + text);
}

tprs::VolumeDtype parse_volume_dtype(const std::string& text) {
    if (text == "u8") return tprs::VolumeDtype::u8;
    if (text == "u16") return tprs::VolumeDtype::u16;
    if (text == "f32") return tprs::VolumeDtype::f32;
    throw std::invalid_argument("unknown volume dtype (expected u8, u16, or f32): " + text);
}

tprs::DenseTensor load_input(const std::filesystem::path& path) {
    if (path.extension() == ".pgm")
        return tprs::DenseTensor::from_matrix(tprs::load_pgm(path));
    return tprs::load_volume(path);
}

// "Original Data Size" of an input: its sample count in the binary64
// working representation. Source-file headers and storage dtype do not
// enter the ratio.
std::uint64_t original_bytes_of(const tprs::DenseTensor& t) {
    return static_cast<std::uint64_t>(t.size()) * 8;
}

void write_text(const std::optional<std::string>& path, const std::string& text) {
    if (!path) {
        std::cout << text;
        return;
    }
    std::ofstream out(*path, std::ios::binary | std::ios::trunc);
    if (!out) throw tprs::IoError(tprs::IoError::Kind::write_failed,
                                  "cannot open file for writing: " + *path);
    out << text;
    if (!out) throw tprs::IoError(tprs::IoError::Kind::write_failed, "write failed: " + *path);
}

struct PhantomCliOptions {
    std::string shape = "32,32,32";
    std::uint64_t seed = 42;
    std::size_t blobs = 4;
    double noise = 0.02;
    double freq = 1.0;
};

void add_phantom_options(CLI::App* cmd, PhantomCliOptions& opts) {
    cmd->add_option("--shape", opts.shape, "phantom shape, e.g. 32,32,32 or 8,32,32,32");
    cmd->add_option("--seed", opts.seed, "phantom generator seed");
    cmd->add_option("--blobs", opts.blobs, "number of Gaussian blobs");
    cmd->add_option("--noise", opts.noise, "Gaussian noise standard deviation");
    cmd->add_option("--freq", opts.freq, "temporal frequency (order-4 shapes)");
}

tprs::PhantomSpec spec_from_options(const PhantomCliOptions& opts) {
    tprs::PhantomSpec spec;
    spec.shape = parse_shape(opts.shape);
    spec.seed = opts.seed;
    spec.blob_count = opts.blobs;
    spec.noise_sigma = opts.noise;
    spec.temporal_frequency = opts.freq;
    return spec;
}

int run(int argc, char** argv) {
    CLI::App app{
        "tprs: low-rank compression of matrices, volumes, and time series.\n"
        "Compressed sizes are the byte length of the .tprs container; original\n"
        "sizes count the binary64 working representation of the input samples."};
    app.require_subcommand(1);

    // compress
    auto* compress = app.add_subcommand("compress", "compress an input file into a .tprs artifact");
    std::string c_input, c_method = "tucker", c_ranks, c_dtype = "f32", c_out;
    double c_energy = 0.0, c_variance = 0.0, c_tol = 1e-8;
    std::size_t c_iters = 50;
    bool c_time_ranked = false;
    compress->add_option("-i,--input", c_input, "input volume (.tvol) or image (.pgm)")->required();
    compress->add_option("-m,--method", c_method, "svd | tucker (svd compresses order-3/4 inputs per slice)");
    compress->add_option("-r,--ranks", c_ranks, "svd: k; tucker: tuple such as 8,8,8");
    compress->add_option("--energy", c_energy, "svd: pick the smallest rank holding this energy fraction");
    compress->add_option("--variance", c_variance, "tucker: per-mode variance-share threshold");
    compress->add_option("--dtype", c_dtype, "payload dtype: f32 | f64 (default f32)");
    compress->add_option("--iters", c_iters, "tucker refinement sweep limit");
    compress->add_option("--tol", c_tol, "tucker relative fit tolerance");
    compress->add_flag("--time-ranked", c_time_ranked,
                       "order-4 tucker: apply a 3-tuple to modes 1..3 is disabled; "
                       "rank the leading mode too (tuple must list all 4 modes)");
    compress->add_option("-o,--out", c_out, "output artifact path (.tprs)")->required();

    // decompress
    auto* decompress = app.add_subcommand("decompress", "reconstruct a volume from a .tprs artifact");
    std::string d_input, d_out, d_dtype = "f32";
    decompress->add_option("-i,--input", d_input, "artifact path (.tprs)")->required();
    decompress->add_option("-o,--out", d_out, "output volume path (.tvol)")->required();
    decompress->add_option("--vol-dtype", d_dtype, "output sample dtype: u8 | u16 | f32");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "metrics for an artifact against its original");
    std::string e_original, e_artifact;
    std::optional<std::string> e_out;
    bool e_no_ssim = false;
    evaluate->add_option("--original", e_original, "original input (.tvol or .pgm)")->required();
    evaluate->add_option("--artifact", e_artifact, "compressed artifact (.tprs)")->required();
    evaluate->add_flag("--no-ssim", e_no_ssim, "skip SSIM");
    evaluate->add_option("-o,--out", e_out, "output CSV path (default stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "rank sweep producing one CSV row per configuration");
    std::string s_input, s_method = "both", s_ranks, s_svd_ranks, s_tucker_ranks, s_dtype = "f32";
    std::optional<std::string> s_out;
    bool s_phantom = false, s_no_ssim = false, s_time_ranked = false;
    PhantomCliOptions s_phantom_opts;
    s_phantom_opts.shape = "100,100,100";
    sweep->add_option("-i,--input", s_input, "input volume (.tvol) or image (.pgm)");
    sweep->add_flag("--phantom", s_phantom, "sweep a generated phantom instead of a file");
    add_phantom_options(sweep, s_phantom_opts);
    sweep->add_option("-m,--method", s_method, "svd | tucker | both");
    sweep->add_option("-r,--ranks", s_ranks, "rank list for a single-method sweep");
    sweep->add_option("--svd-ranks", s_svd_ranks, "svd rank list, e.g. 5,10,20");
    sweep->add_option("--tucker-ranks", s_tucker_ranks, "tucker tuples, e.g. 5,5,5;10,10,10");
    sweep->add_option("--dtype", s_dtype, "payload dtype: f32 | f64");
    sweep->add_flag("--no-ssim", s_no_ssim, "skip SSIM");
    sweep->add_flag("--time-ranked", s_time_ranked, "order-4 tucker: tuples must rank all 4 modes");
    sweep->add_option("-o,--out", s_out, "output CSV path (default stdout)");

    // phantom
    auto* phantom = app.add_subcommand("phantom", "generate a deterministic synthetic volume");
    PhantomCliOptions p_opts;
    std::string p_out, p_dtype = "f32";
    add_phantom_options(phantom, p_opts);
    phantom->add_option("-o,--out", p_out, "output volume path (.tvol)")->required();
    phantom->add_option("--vol-dtype", p_dtype, "sample dtype: u8 | u16 | f32");

    // plotdata
    auto* plotdata = app.add_subcommand("plotdata", "turn a sweep CSV into plot-ready series");
    std::string pd_input;
    std::optional<std::string> pd_out, pd_svg;
    plotdata->add_option("-i,--input", pd_input, "sweep CSV path")->required();
    plotdata->add_option("-o,--out", pd_out,
                         "output prefix; writes <prefix>_fidelity.tsv and <prefix>_rank.tsv");
    plotdata->add_option("--svg", pd_svg, "also render a scatter SVG to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    if (compress->parsed()) {
        const tprs::DenseTensor input = load_input(c_input);
        tprs::SweepConfig config;
        config.dtype = parse_sample_dtype(c_dtype);
        config.time_full_rank = !c_time_ranked;
        config.hooi_max_iters = c_iters;
        config.hooi_tol = c_tol;

        std::vector<std::size_t> ranks;
        if (!c_ranks.empty()) {
            ranks = parse_scalar_list(c_ranks);
        } else if (c_energy > 0.0) {
            if (c_method != "svd")
                throw std::invalid_argument("--energy applies to --method svd");
            const tprs::Matrix a = input.order() == 2
                                       ? input.as_matrix()
                                       : tprs::tensor_slice(input, 0);
            // Shared per-slice rank from the first slice's spectrum.
            ranks = {tprs::select_rank_by_energy(tprs::thin_svd(a).s, c_energy)};
        } else if (c_variance > 0.0) {
            if (c_method != "tucker")
                throw std::invalid_argument("--variance applies to --method tucker");
            ranks = tprs::select_ranks_by_variance(input, c_variance);
        } else {
            throw std::invalid_argument("one of --ranks, --energy, --variance is required");
        }

        const tprs::AnyFactors factors =
            tprs::compress_for_method(input, c_method, ranks, config);
        tprs::write_artifact(factors, config.dtype, c_out);
        const std::uint64_t original = original_bytes_of(input);
        const std::uint64_t compressed = tprs::serialized_size(factors, config.dtype);
        std::cout << "original_bytes=" << original << " compressed_bytes=" << compressed
                  << " compression_ratio="
                  << tprs::format_double(tprs::compression_ratio(original, compressed)) << "\n";
        return 0;
    }

    if (decompress->parsed()) {
        const tprs::AnyFactors factors = tprs::read_artifact(d_input);
        const tprs::DenseTensor recon = tprs::reconstruct_any(factors);
        tprs::save_volume(recon, d_out, parse_volume_dtype(d_dtype));
        std::cerr << "wrote " << d_out << "\n";
        return 0;
    }

    if (evaluate->parsed()) {
        const tprs::DenseTensor original = load_input(e_original);
        const tprs::AnyFactors factors = tprs::read_artifact(e_artifact);
        const tprs::DenseTensor recon = tprs::reconstruct_any(factors);
        if (recon.shape() != original.shape())
            throw std::invalid_argument("evaluate: artifact shape does not match original");
        const std::string method =
            tprs::method_of(factors) == tprs::Method::tucker ? "tucker" : "svd";
        const std::uint64_t compressed = std::filesystem::file_size(e_artifact);
        tprs::EvaluationReport report = tprs::evaluate_reconstruction(
            original, recon, method, tprs::rank_list_of(factors),
            original_bytes_of(original), compressed, !e_no_ssim);
        write_text(e_out, tprs::reports_to_csv({report}));
        return 0;
    }

    if (sweep->parsed()) {
        if (s_phantom == !s_input.empty())
            throw std::invalid_argument("sweep: provide exactly one of --input or --phantom");
        const tprs::DenseTensor input =
            s_phantom ? tprs::generate_phantom(spec_from_options(s_phantom_opts))
                      : load_input(s_input);

        tprs::SweepConfig config;
        config.run_svd = s_method == "svd" || s_method == "both";
        config.run_tucker = s_method == "tucker" || s_method == "both";
        if (!config.run_svd && !config.run_tucker)
            throw std::invalid_argument("sweep: --method must be svd, tucker, or both");
        if (!s_ranks.empty()) {
            if (s_method == "both")
                throw std::invalid_argument(
                    "sweep: --ranks needs a single method; use --svd-ranks/--tucker-ranks");
            if (config.run_svd) s_svd_ranks = s_ranks;
            if (config.run_tucker) s_tucker_ranks = s_ranks;
        }
        config.svd_ranks =
            s_svd_ranks.empty() ? tprs::default_svd_ranks() : parse_scalar_list(s_svd_ranks);
        config.tucker_ranks = s_tucker_ranks.empty() ? tprs::default_tucker_ranks()
                                                     : parse_tuple_list(s_tucker_ranks);
        config.dtype = parse_sample_dtype(s_dtype);
        config.with_ssim = !s_no_ssim;
        config.time_full_rank = !s_time_ranked;

        const std::vector<tprs::EvaluationReport> reports =
            tprs::run_sweep(input, original_bytes_of(input), config);
        write_text(s_out, tprs::reports_to_csv(reports));
        return 0;
    }

    if (phantom->parsed()) {
        const tprs::PhantomSpec spec = spec_from_options(p_opts);
        const tprs::DenseTensor volume = tprs::generate_phantom(spec);
        tprs::save_volume(volume, p_out, parse_volume_dtype(p_dtype));
        write_text(p_out + ".meta.txt", tprs::phantom_spec_text(spec));
        std::cerr << "wrote " << p_out << " and " << p_out << ".meta.txt\n";
        return 0;
    }

    if (plotdata->parsed()) {
        std::ifstream in(pd_input, std::ios::binary);
        if (!in)
            throw tprs::IoError(tprs::IoError::Kind::missing_file,
                                "cannot open file: " + pd_input);
        const tprs::SweepTable table = tprs::parse_sweep_csv(in);
        const std::string fidelity = tprs::fidelity_series_tsv(table);
        const std::string rank = tprs::rank_series_tsv(table);
        if (pd_out) {
            write_text(*pd_out + "_fidelity.tsv", fidelity);
            write_text(*pd_out + "_rank.tsv", rank);
        } else {
            std::cout << "# fidelity series\n" << fidelity << "# rank series\n" << rank;
        }
        if (pd_svg) write_text(*pd_svg, tprs::render_fidelity_svg(table));
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const tprs::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const tprs::DecodeError& e) {
        std::cerr << "decode error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const tprs::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
