// cdmawm: command-line front end for embedding, extracting, attacking and
// benchmarking blind CDMA watermarks.
//
// Exit status: 0 ok, 2 bad arguments, 3 I/O failure, 4 pipeline precondition
// violated (odd size, mark too large, ...), 5 bench finished with failed cells.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "cdmawm.hpp"

namespace fs = std::filesystem;
using namespace cdmawm;

namespace {

constexpr int kExitBadArgs = 2;
constexpr int kExitIo = 3;
constexpr int kExitPipeline = 4;
constexpr int kExitBenchPartial = 5;

struct Shape {
    std::size_t rows = WatermarkImage::kDefaultRows;
    std::size_t cols = WatermarkImage::kDefaultCols;
};

Shape parse_shape(const std::string& text)
{
    const auto x = text.find_first_of("xX");
    if (x == std::string::npos)
        throw Error(ErrorKind::InvalidArgument, "shape must look like 15x64");
    Shape s;
    try {
        std::size_t used = 0;
        s.rows = std::stoul(text.substr(0, x), &used);
        if (used != x)
            throw std::invalid_argument("rows");
        const std::string cols = text.substr(x + 1);
        s.cols = std::stoul(cols, &used);
        if (used != cols.size())
            throw std::invalid_argument("cols");
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "shape must look like 15x64, got '" + text + "'");
    }
    if (s.rows == 0 || s.cols == 0)
        throw Error(ErrorKind::InvalidArgument, "shape dimensions must be positive");
    return s;
}

void write_json(const fs::path& path, const nlohmann::json& j)
{
    std::ofstream f(path);
    if (!f)
        throw Error(ErrorKind::IoFailure, "cannot write " + path.string());
    f << j.dump(2) << '\n';
    if (!f)
        throw Error(ErrorKind::IoFailure, "cannot write " + path.string());
}

nlohmann::json read_json(const fs::path& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorKind::IoFailure, "cannot read " + path.string());
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, path.string() + ": " + e.what());
    }
}

nlohmann::json number_or_string(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

struct EmbedArgs {
    std::string in, mark, key, out, report;
    double gain = 1.0;
    double quant_step = 1.0;
};

int cmd_embed(const EmbedArgs& a)
{
    const WatermarkKey key = WatermarkKey::parse(a.key);
    const EmbedParams params{a.gain, a.quant_step};
    params.validate();
    const RasterImage host = read_image(a.in);
    const WatermarkImage mark = read_watermark(a.mark);

    const EmbedResult result = embed(host, mark, key, params);
    write_image(a.out, result.image);

    const fs::path report = a.report.empty() ? fs::path(a.out).replace_extension(".json") : fs::path(a.report);
    write_json(report, result.descriptor.to_json());

    const QualityReport q = image_quality(host, result.image);
    fmt::print("psnr={:.4f} corr={:.6f} mse={:.6f}\n", q.psnr, q.corr, q.mse);
    return 0;
}

struct ExtractArgs {
    std::string in, key, shape = "15x64", out, report, reference;
    double quant_step = 1.0;
};

int cmd_extract(const ExtractArgs& a)
{
    const WatermarkKey key = WatermarkKey::parse(a.key);
    const Shape shape = parse_shape(a.shape);
    if (!(a.quant_step > 0.0))
        throw Error(ErrorKind::InvalidArgument, "quantization step must be positive");
    std::optional<WatermarkImage> reference;
    if (!a.reference.empty())
        reference = read_watermark(a.reference);
    const RasterImage img = read_image(a.in);

    ExtractReport report = extract(img, key, shape.rows, shape.cols, {1.0, a.quant_step});
    if (reference)
        report.score_against(*reference);

    if (!a.out.empty())
        write_watermark(a.out, report.mark());
    if (!a.report.empty())
        write_json(a.report, report.to_json());

    if (report.nc)
        fmt::print("threshold={:.6f} error_bits={} error_bit_pct={:.4f} nc={:.6f}\n", report.threshold,
                   *report.error_bits, *report.error_bit_pct, *report.nc);
    else
        fmt::print("threshold={:.6f} bits={}\n", report.threshold, report.bits.to_string());
    return 0;
}

struct AttackArgs {
    std::string in, out;
    std::optional<int> jpeg_quality;
    std::optional<double> gaussian_var;
    std::optional<double> sp_density;
    std::uint64_t seed = 1;
};

int cmd_attack(const AttackArgs& a)
{
    const int chosen = int(a.jpeg_quality.has_value()) + int(a.gaussian_var.has_value()) +
                       int(a.sp_density.has_value());
    if (chosen != 1)
        throw Error(ErrorKind::InvalidArgument,
                    "give exactly one of --jpeg-quality, --gaussian-var, --sp-density");
    AttackSpec spec;
    if (a.jpeg_quality)
        spec = JpegAttack{*a.jpeg_quality};
    else if (a.gaussian_var)
        spec = GaussianAttack{*a.gaussian_var, a.seed};
    else
        spec = SaltPepperAttack{*a.sp_density, a.seed};

    const RasterImage img = read_image(a.in);
    const RasterImage attacked = apply_attack(img, spec);
    write_image(a.out, attacked);
    fmt::print("attack={} psnr={:.4f}\n", attack_name(spec), psnr(img, attacked));
    return 0;
}

struct MetricsArgs {
    std::string in, mark, reference, report;
};

int cmd_metrics(const MetricsArgs& a)
{
    if (a.reference.empty() || (a.in.empty() == a.mark.empty()))
        throw Error(ErrorKind::InvalidArgument, "use --in IMAGE or --mark MARK, together with --reference");
    nlohmann::json j;
    if (!a.in.empty()) {
        const RasterImage ref = read_image(a.reference);
        const RasterImage img = read_image(a.in);
        const QualityReport q = image_quality(ref, img);
        j = {{"corr", q.corr}, {"mse", q.mse}, {"psnr", number_or_string(q.psnr)}};
    } else {
        const WatermarkImage ref = read_watermark(a.reference);
        const WatermarkImage mark = read_watermark(a.mark);
        if (ref.rows() != mark.rows() || ref.cols() != mark.cols())
            throw Error(ErrorKind::DimensionMismatch, "marks differ in shape");
        j = {{"nc", nc(ref.bits(), mark.bits())},
             {"error_bits", hamming(ref.bits(), mark.bits())},
             {"error_bit_pct", error_bit_pct(ref.bits(), mark.bits())}};
    }
    if (!a.report.empty())
        write_json(a.report, j);
    std::cout << j.dump(2) << '\n';
    return 0;
}

struct BenchArgs {
    std::string config, mark, key, out;
    std::vector<std::string> hosts;
    std::vector<double> gains, gaussian_vars, sp_densities;
    std::vector<int> jpeg_qualities;
    std::vector<std::uint64_t> seeds;
    std::optional<double> quant_step;
};

int cmd_bench(const BenchArgs& a)
{
    BenchConfig cfg = a.config.empty() ? BenchConfig{} : BenchConfig::from_json(read_json(a.config));
    if (!a.hosts.empty())
        cfg.hosts = a.hosts;
    if (!a.mark.empty())
        cfg.mark = a.mark;
    if (!a.key.empty())
        cfg.key = WatermarkKey::parse(a.key);
    if (!a.gains.empty())
        cfg.gains = a.gains;
    if (!a.jpeg_qualities.empty())
        cfg.jpeg_qualities = a.jpeg_qualities;
    if (!a.gaussian_vars.empty())
        cfg.gaussian_variances = a.gaussian_vars;
    if (!a.sp_densities.empty())
        cfg.sp_densities = a.sp_densities;
    if (!a.seeds.empty())
        cfg.seeds = a.seeds;
    if (a.quant_step)
        cfg.quant_step = *a.quant_step;
    if (!a.out.empty())
        cfg.output_dir = a.out;
    cfg.validate();

    const BenchResult result = run_bench(cfg);
    write_bench_outputs(cfg, result);
    fmt::print("cells={} failed={} output={}\n", result.rows.size(), result.failed_cells, cfg.output_dir);
    return result.failed_cells == 0 ? 0 : kExitBenchPartial;
}

struct GenerateArgs {
    std::string kind, out, text = "WMARK", shape = "15x64";
    std::uint64_t seed = 1;
    std::size_t size = kSyntheticSize;
};

int cmd_generate(const GenerateArgs& a)
{
    if (a.kind == "host") {
        write_image(a.out, synthetic_host(a.size, a.size, a.seed));
    } else if (a.kind == "mark") {
        const Shape s = parse_shape(a.shape);
        write_watermark(a.out, text_mark(a.text, s.rows, s.cols));
    } else {
        throw Error(ErrorKind::InvalidArgument, "--kind must be host or mark");
    }
    return 0;
}

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::KeyOutOfRange: return kExitBadArgs;
    case ErrorKind::IoFailure: return kExitIo;
    default: return kExitPipeline;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Blind CDMA watermarking in the DWT domain of the Y channel"};
    app.require_subcommand(1);

    EmbedArgs embed_args;
    auto* embed_cmd = app.add_subcommand("embed", "Embed a binary mark into a host image");
    embed_cmd->add_option("--in", embed_args.in, "Host image")->required();
    embed_cmd->add_option("--mark", embed_args.mark, "Binary mark image (>=128 reads as 1)")->required();
    embed_cmd->add_option("--key", embed_args.key, "Owner key, up to 9 decimal digits")->required();
    embed_cmd->add_option("--gain", embed_args.gain, "Gain factor k")->capture_default_str();
    embed_cmd->add_option("--quant-step", embed_args.quant_step, "Magnitude quantization step")
        ->capture_default_str();
    embed_cmd->add_option("--out", embed_args.out, "Watermarked image (lossless format)")->required();
    embed_cmd->add_option("--report", embed_args.report, "Descriptor JSON (default: <out>.json)");

    ExtractArgs extract_args;
    auto* extract_cmd = app.add_subcommand("extract", "Recover a mark without the original host");
    extract_cmd->add_option("--in", extract_args.in, "Possibly watermarked image")->required();
    extract_cmd->add_option("--key", extract_args.key, "Owner key")->required();
    extract_cmd->add_option("--shape", extract_args.shape, "Mark shape RxC")->capture_default_str();
    extract_cmd->add_option("--quant-step", extract_args.quant_step, "Magnitude quantization step")
        ->capture_default_str();
    extract_cmd->add_option("--out", extract_args.out, "Recovered mark image");
    extract_cmd->add_option("--report", extract_args.report, "Extraction report JSON");
    extract_cmd->add_option("--reference", extract_args.reference, "Original mark, enables NC/error bits");

    AttackArgs attack_args;
    auto* attack_cmd = app.add_subcommand("attack", "Apply JPEG, Gaussian or salt & pepper degradation");
    attack_cmd->add_option("--in", attack_args.in, "Input image")->required();
    attack_cmd->add_option("--out", attack_args.out, "Attacked image (lossless format)")->required();
    attack_cmd->add_option("--jpeg-quality", attack_args.jpeg_quality, "JPEG quality 1..100");
    attack_cmd->add_option("--gaussian-var", attack_args.gaussian_var, "Noise variance on the [0,1] scale");
    attack_cmd->add_option("--sp-density", attack_args.sp_density, "Salt & pepper density in [0,1]");
    attack_cmd->add_option("--seed", attack_args.seed, "Noise seed")->capture_default_str();

    MetricsArgs metrics_args;
    auto* metrics_cmd = app.add_subcommand("metrics", "PSNR/MSE/Corr of two images, or NC of two marks");
    metrics_cmd->add_option("--in", metrics_args.in, "Image to compare");
    metrics_cmd->add_option("--mark", metrics_args.mark, "Mark to compare");
    metrics_cmd->add_option("--reference", metrics_args.reference, "Reference image or mark")->required();
    metrics_cmd->add_option("--report", metrics_args.report, "Write the JSON here as well");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Embed/attack/extract sweep with CSV output");
    bench_cmd->add_option("--config", bench_args.config, "JSON bench configuration");
    bench_cmd->add_option("--in", bench_args.hosts, "Host image(s) or synthetic:<seed>");
    bench_cmd->add_option("--mark", bench_args.mark, "Mark image (default: generated 15x64 text)");
    bench_cmd->add_option("--key", bench_args.key, "Owner key");
    bench_cmd->add_option("--gain", bench_args.gains, "Gain factor(s)");
    bench_cmd->add_option("--jpeg-quality", bench_args.jpeg_qualities, "JPEG quality level(s)");
    bench_cmd->add_option("--gaussian-var", bench_args.gaussian_vars, "Gaussian variance level(s)");
    bench_cmd->add_option("--sp-density", bench_args.sp_densities, "Salt & pepper density level(s)");
    bench_cmd->add_option("--seed", bench_args.seeds, "Noise seed(s); noise cells average over them");
    bench_cmd->add_option("--quant-step", bench_args.quant_step, "Magnitude quantization step");
    bench_cmd->add_option("--out", bench_args.out, "Output directory");

    GenerateArgs generate_args;
    auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic host or a text mark");
    generate_cmd->add_option("--kind", generate_args.kind, "host or mark")->required();
    generate_cmd->add_option("--out", generate_args.out, "Output file")->required();
    generate_cmd->add_option("--seed", generate_args.seed, "Host generator seed")->capture_default_str();
    generate_cmd->add_option("--size", generate_args.size, "Host edge length")->capture_default_str();
    generate_cmd->add_option("--text", generate_args.text, "Mark text (A-Z, 0-9, space)")
        ->capture_default_str();
    generate_cmd->add_option("--shape", generate_args.shape, "Mark shape RxC")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        if (code != 0)
            std::cerr << app.help();
        return code == 0 ? 0 : kExitBadArgs;
    }

    try {
        if (*embed_cmd)
            return cmd_embed(embed_args);
        if (*extract_cmd)
            return cmd_extract(extract_args);
        if (*attack_cmd)
            return cmd_attack(attack_args);
        if (*metrics_cmd)
            return cmd_metrics(metrics_args);
        if (*bench_cmd)
            return cmd_bench(bench_args);
        if (*generate_cmd)
            return cmd_generate(generate_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPipeline;
    }
    return kExitBadArgs;
}
