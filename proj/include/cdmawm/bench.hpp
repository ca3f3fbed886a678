#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "attacks.hpp"
#include "codec.hpp"
#include "embedder.hpp"
#include "extractor.hpp"
#include "fixtures.hpp"
#include "io.hpp"
#include "metrics.hpp"

namespace cdmawm {

inline constexpr std::string_view kSyntheticPrefix = "synthetic:";
inline constexpr std::size_t kSyntheticSize = 512;

struct BenchConfig {
    std::vector<std::string> hosts; // image paths, or "synthetic:<seed>"
    std::string mark;               // empty: the generated 15x64 text mark
    WatermarkKey key{123456789};
    std::vector<double> gains{0.5, 1.0, 1.5};
    std::vector<int> jpeg_qualities{10, 15, 25, 50, 75};
    std::vector<double> gaussian_variances{0.001, 0.005, 0.01};
    std::vector<double> sp_densities{0.01, 0.05, 0.1, 0.25, 0.5};
    std::vector<std::uint64_t> seeds{1}; // noise cells average over these
    double quant_step = 1.0;
    std::string output_dir = "bench_out";
    unsigned threads = 0; // 0: WM_THREADS, else hardware concurrency

    void validate() const
    {
        if (hosts.empty())
            throw Error(ErrorKind::InvalidArgument, "bench needs at least one host image");
        if (gains.empty())
            throw Error(ErrorKind::InvalidArgument, "bench needs at least one gain");
        for (double g : gains)
            EmbedParams{g, quant_step}.validate();
        for (int q : jpeg_qualities)
            if (q < 1 || q > 100)
                throw Error(ErrorKind::InvalidArgument, "JPEG quality out of range: " + std::to_string(q));
        for (double v : gaussian_variances)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw Error(ErrorKind::InvalidArgument, "negative noise variance");
        for (double d : sp_densities)
            if (!(d >= 0.0 && d <= 1.0))
                throw Error(ErrorKind::InvalidArgument, "salt & pepper density outside [0,1]");
        if (seeds.empty() && (!gaussian_variances.empty() || !sp_densities.empty()))
            throw Error(ErrorKind::InvalidArgument, "noise attacks need at least one seed");
    }

    nlohmann::json to_json() const
    {
        return {
            {"hosts", hosts},
            {"mark", mark},
            {"key", key.value()},
            {"gains", gains},
            {"jpeg_qualities", jpeg_qualities},
            {"gaussian_variances", gaussian_variances},
            {"sp_densities", sp_densities},
            {"seeds", seeds},
            {"quant_step", quant_step},
            {"output_dir", output_dir},
        };
    }

    // Missing fields keep their defaults.
    static BenchConfig from_json(const nlohmann::json& j)
    {
        BenchConfig c;
        try {
            c.hosts = j.value("hosts", c.hosts);
            c.mark = j.value("mark", c.mark);
            if (j.contains("key"))
                c.key = j.at("key").is_string() ? WatermarkKey::parse(j.at("key").get<std::string>())
                                                : WatermarkKey(j.at("key").get<std::uint64_t>());
            c.gains = j.value("gains", c.gains);
            c.jpeg_qualities = j.value("jpeg_qualities", c.jpeg_qualities);
            c.gaussian_variances = j.value("gaussian_variances", c.gaussian_variances);
            c.sp_densities = j.value("sp_densities", c.sp_densities);
            c.seeds = j.value("seeds", c.seeds);
            c.quant_step = j.value("quant_step", c.quant_step);
            c.output_dir = j.value("output_dir", c.output_dir);
            c.threads = j.value("threads", c.threads);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::InvalidArgument, std::string("bad bench config: ") + e.what());
        }
        return c;
    }
};

inline std::string host_label(const std::string& spec)
{
    if (spec.starts_with(kSyntheticPrefix))
        return "synthetic-" + spec.substr(kSyntheticPrefix.size());
    return std::filesystem::path(spec).stem().string();
}

inline RasterImage load_host(const std::string& spec)
{
    if (spec.starts_with(kSyntheticPrefix)) {
        const std::string digits = spec.substr(kSyntheticPrefix.size());
        std::uint64_t seed = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
        if (ec != std::errc{} || ptr != digits.data() + digits.size())
            throw Error(ErrorKind::InvalidArgument, "bad synthetic host seed in '" + spec + "'");
        return synthetic_host(kSyntheticSize, kSyntheticSize, seed);
    }
    return read_image(spec);
}

struct BenchRow {
    std::string image;
    double gain = 0.0;
    std::string attack;
    std::string level;
    std::size_t trials = 0;
    double psnr_embed = std::numeric_limits<double>::quiet_NaN();
    double corr_embed = std::numeric_limits<double>::quiet_NaN();
    double psnr_attacked = std::numeric_limits<double>::quiet_NaN();
    double nc = std::numeric_limits<double>::quiet_NaN();
    double error_bit_pct = std::numeric_limits<double>::quiet_NaN();
    std::string status = "ok";

    bool ok() const { return status == "ok"; }
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::size_t failed_cells = 0;
};

namespace detail {

struct AttackLevel {
    std::string attack;
    std::string level;
    std::vector<AttackSpec> trials;
};

inline std::vector<AttackLevel> attack_plan(const BenchConfig& cfg)
{
    std::vector<AttackLevel> plan;
    for (int q : cfg.jpeg_qualities)
        plan.push_back({"jpeg", fmt::format("{}", q), {JpegAttack{q}}});
    for (double v : cfg.gaussian_variances) {
        AttackLevel lvl{"gaussian", fmt::format("{}", v), {}};
        for (auto s : cfg.seeds)
            lvl.trials.push_back(GaussianAttack{v, s});
        plan.push_back(std::move(lvl));
    }
    for (double d : cfg.sp_densities) {
        AttackLevel lvl{"salt_pepper", fmt::format("{}", d), {}};
        for (auto s : cfg.seeds)
            lvl.trials.push_back(SaltPepperAttack{d, s});
        plan.push_back(std::move(lvl));
    }
    return plan;
}

inline unsigned worker_count(unsigned requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("WM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

inline std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.6f}", v);
}

} // namespace detail

// Runs every (host x gain x attack level) cell: embed once per (host, gain),
// then attack, extract and score. Rows come out in configuration order no
// matter how many workers run, so output is reproducible for fixed seeds.
inline BenchResult run_bench(const BenchConfig& cfg)
{
    cfg.validate();
    const WatermarkImage mark = cfg.mark.empty() ? text_mark() : read_watermark(cfg.mark);
    const auto plan = detail::attack_plan(cfg);

    struct Task {
        std::size_t host;
        std::size_t gain;
    };
    std::vector<Task> tasks;
    for (std::size_t h = 0; h < cfg.hosts.size(); ++h)
        for (std::size_t g = 0; g < cfg.gains.size(); ++g)
            tasks.push_back({h, g});

    BenchResult result;
    result.rows.resize(tasks.size() * plan.size());

    auto run_task = [&](std::size_t t) {
        const Task task = tasks[t];
        const std::string& spec = cfg.hosts[task.host];
        const double gain = cfg.gains[task.gain];
        BenchRow* out = &result.rows[t * plan.size()];
        for (std::size_t a = 0; a < plan.size(); ++a) {
            out[a].image = host_label(spec);
            out[a].gain = gain;
            out[a].attack = plan[a].attack;
            out[a].level = plan[a].level;
        }

        RasterImage host, marked;
        QualityReport embedded;
        try {
            host = load_host(spec);
            marked = embed(host, mark, cfg.key, {gain, cfg.quant_step}).image;
            embedded = image_quality(host, marked);
        } catch (const std::exception& e) {
            for (std::size_t a = 0; a < plan.size(); ++a)
                out[a].status = std::string("error: ") + e.what();
            return;
        }

        for (std::size_t a = 0; a < plan.size(); ++a) {
            BenchRow& row = out[a];
            row.psnr_embed = embedded.psnr;
            row.corr_embed = embedded.corr;
            try {
                double psnr_sum = 0.0, nc_sum = 0.0, err_sum = 0.0;
                for (const auto& trial : plan[a].trials) {
                    const RasterImage attacked = apply_attack(marked, trial);
                    ExtractReport report = extract(attacked, cfg.key, mark.rows(), mark.cols(),
                                                   {gain, cfg.quant_step});
                    report.score_against(mark);
                    psnr_sum += psnr(host, attacked);
                    nc_sum += *report.nc;
                    err_sum += *report.error_bit_pct;
                }
                const double n = static_cast<double>(plan[a].trials.size());
                row.trials = plan[a].trials.size();
                row.psnr_attacked = psnr_sum / n;
                row.nc = nc_sum / n;
                row.error_bit_pct = err_sum / n;
            } catch (const std::exception& e) {
                row.status = std::string("error: ") + e.what();
            }
        }
    };

    const unsigned workers = std::min<unsigned>(detail::worker_count(cfg.threads),
                                                static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < tasks.size(); t = next++)
                    run_task(t);
            });
    }

    for (const auto& row : result.rows)
        if (!row.ok())
            ++result.failed_cells;
    return result;
}

inline constexpr std::string_view kBenchCsvHeader =
    "image,gain,attack,level,trials,psnr_embed,corr_embed,psnr_attacked,nc,error_bit_pct,status";

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"')
            quoted += '"';
        quoted += ch;
    }
    return quoted + '"';
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows)
{
    os << kBenchCsvHeader << '\n';
    for (const auto& r : rows)
        fmt::print(os, "{},{},{},{},{},{},{},{},{},{},{}\n", csv_field(r.image), fmt::format("{}", r.gain),
                   r.attack, r.level, r.trials, detail::format_number(r.psnr_embed),
                   detail::format_number(r.corr_embed), detail::format_number(r.psnr_attacked),
                   detail::format_number(r.nc), detail::format_number(r.error_bit_pct), csv_field(r.status));
}

// Pivot for one attack: one line per (image, gain, metric), one column per
// level. The jpeg pivot has the layout of the usual NC/PSNR-per-quality table;
// the error_bit_pct lines are the error-rate curves.
inline void write_attack_table(std::ostream& os, const std::vector<BenchRow>& rows, const std::string& attack)
{
    std::vector<std::string> levels;
    std::vector<std::pair<std::string, double>> groups;
    for (const auto& r : rows) {
        if (r.attack != attack)
            continue;
        if (std::find(levels.begin(), levels.end(), r.level) == levels.end())
            levels.push_back(r.level);
        const std::pair<std::string, double> key{r.image, r.gain};
        if (std::find(groups.begin(), groups.end(), key) == groups.end())
            groups.push_back(key);
    }
    os << "image,gain,metric";
    for (const auto& l : levels)
        os << ',' << l;
    os << '\n';

    const std::pair<const char*, double BenchRow::*> metrics[] = {
        {"nc", &BenchRow::nc}, {"psnr_attacked", &BenchRow::psnr_attacked}, {"error_bit_pct", &BenchRow::error_bit_pct}};
    for (const auto& [image, gain] : groups)
        for (const auto& [name, field] : metrics) {
            os << csv_field(image) << ',' << fmt::format("{}", gain) << ',' << name;
            for (const auto& l : levels) {
                double v = std::numeric_limits<double>::quiet_NaN();
                for (const auto& r : rows)
                    if (r.attack == attack && r.image == image && r.gain == gain && r.level == l)
                        v = r.*field;
                os << ',' << detail::format_number(v);
            }
            os << '\n';
        }
}

// Writes bench.csv, one <attack>_table.csv per attack family and
// bench_meta.json into cfg.output_dir.
inline void write_bench_outputs(const BenchConfig& cfg, const BenchResult& result)
{
    const std::filesystem::path dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorKind::IoFailure, "cannot create " + dir.string() + ": " + ec.message());

    auto open = [](const std::filesystem::path& p) {
        std::ofstream f(p, std::ios::binary);
        if (!f)
            throw Error(ErrorKind::IoFailure, "cannot write " + p.string());
        return f;
    };

    {
        auto f = open(dir / "bench.csv");
        write_bench_csv(f, result.rows);
    }
    for (const char* attack : {"jpeg", "gaussian", "salt_pepper"}) {
        auto f = open(dir / (std::string(attack) + "_table.csv"));
        write_attack_table(f, result.rows, attack);
    }
    {
        nlohmann::json meta = {
            {"config", cfg.to_json()},
            {"jpeg_codec", jpeg_codec_description()},
            {"csv_columns", std::string(kBenchCsvHeader)},
            {"cells", result.rows.size()},
            {"failed_cells", result.failed_cells},
        };
        auto f = open(dir / "bench_meta.json");
        f << meta.dump(2) << '\n';
    }
}

} // namespace cdmawm
