#include "qillqa/builtin_data.hpp"
#include "qillqa/effort.hpp"
#include "qillqa/errors.hpp"
#include "qillqa/frequency.hpp"
#include "qillqa/keyboard.hpp"
#include "qillqa/language.hpp"
#include "qillqa/optimize.hpp"
#include "qillqa/report.hpp"
#include "qillqa/unicode.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

namespace fs = std::filesystem;
using namespace qillqa;

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitCapacity = 4;
constexpr int kExitIo = 5;
constexpr int kExitUsage = 64;

std::string read_input_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open file: " + path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError("read failed: " + path);
    return content;
}

void write_output_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open file for writing: " + path);
    out << content;
    if (!out)
        throw IoError("write failed: " + path);
}

LanguageProfile resolve_profile(const std::string& spec) {
    if (spec == "quechua" || spec == "spanish" || spec == "english")
        return builtin_profile(spec);
    return load_profile_file(spec);
}

EffortParams load_params_or_default(const std::string& path) {
    return path.empty() ? EffortParams{} : load_params_file(path);
}

BigramTable load_bigrams_or_empty(const std::string& path) {
    return path.empty() ? BigramTable{} : load_bigrams_file(path);
}

struct AnalyzeOptions {
    std::string corpus;
    std::string profile = "quechua";
    std::string mode = "char";
    std::string out_dir;
};

int run_analyze(const AnalyzeOptions& opt) {
    const std::string raw = read_input_file(opt.corpus);
    const LanguageProfile profile = resolve_profile(opt.profile);
    const TokenMode mode = token_mode_from_string(opt.mode);

    const std::string text = normalize(raw);
    const auto tokens = tokenize(text, profile, mode);
    const FrequencyTable unigrams = count_unigrams(tokens);
    const BigramTable bigrams = count_bigrams(tokens);

    fs::create_directories(opt.out_dir);
    save_table_file(unigrams, (fs::path(opt.out_dir) / "unigrams.json").string());
    save_bigrams_file(bigrams, (fs::path(opt.out_dir) / "bigrams.json").string());

    std::cout << format_top_entries(unigrams, 20);
    return 0;
}

struct OptimizeOptions {
    std::string freq;
    std::string bigrams;
    std::string mode = "free";
    std::string config;
    std::string params;
    std::string geometry = "ansi32";
    std::string out_dir;
    std::string trace;
    std::optional<std::uint32_t> max_moves;
};

int run_optimize(const OptimizeOptions& opt) {
    const FrequencyTable freq = resolve_table(opt.freq);
    const BigramTable bigrams = load_bigrams_or_empty(opt.bigrams);
    const EffortParams params = load_params_or_default(opt.params);
    const KeyboardGeometry& geometry = builtin_geometry(opt.geometry);

    OptimizeConfig config;
    if (!opt.config.empty())
        config = load_config_file(opt.config);
    if (opt.max_moves)
        config.max_moves = opt.max_moves;
    if (!opt.trace.empty() && config.trace_stride == 0)
        config.trace_stride = std::max<std::uint64_t>(1, config.iterations / 1000);

    OptimizationResult result;
    std::string result_name;
    if (opt.mode == "free") {
        const Layout seed = greedy_seed(freq, geometry, params, {});
        result = anneal(seed, geometry, freq, bigrams, params, config);
        result_name = "optimized-free";
    } else if (opt.mode == "qwerty-delta") {
        const Layout base = builtin_layout("qwerty-latam");
        result = optimize_qwerty_delta(base, geometry, freq, bigrams, params, config);
        result_name = "optimized-qwerty-delta";
    } else {
        throw ValidationError("unknown optimize mode: " + opt.mode);
    }
    result.layout.name = result_name;

    fs::create_directories(opt.out_dir);
    save_layout_file(result.layout, (fs::path(opt.out_dir) / "layout.json").string());

    const ComparisonReport comparison = compare(result.seed_metrics, result.metrics);
    nlohmann::json report;
    report["mode"] = opt.mode;
    report["baseline"] =
        nlohmann::json::parse(serialize_metrics(result.seed_metrics));
    report["optimized"] = nlohmann::json::parse(serialize_metrics(result.metrics));
    report["comparison"] = nlohmann::json::parse(serialize_comparison(comparison));
    report["moves_from_base"] = result.moves_from_base;
    write_output_file((fs::path(opt.out_dir) / "report.json").string(),
                      report.dump(2) + "\n");

    if (!opt.trace.empty())
        write_output_file(opt.trace, format_trace_csv(result.trace));

    std::cout << "mode: " << opt.mode
              << "  moves from base: " << result.moves_from_base << "\n\n";
    std::cout << format_comparison_table(result.seed_metrics, result.metrics, comparison);
    return 0;
}

struct EvaluateOptions {
    std::string layout;
    std::string freq;
    std::string bigrams;
    std::string params;
    std::string out;
};

int run_evaluate(const EvaluateOptions& opt) {
    const Layout layout = resolve_layout(opt.layout);
    const FrequencyTable freq = resolve_table(opt.freq);
    const BigramTable bigrams = load_bigrams_or_empty(opt.bigrams);
    const EffortParams params = load_params_or_default(opt.params);
    const KeyboardGeometry& geometry = builtin_geometry(layout.geometry);

    const LayoutMetrics metrics = evaluate(layout, geometry, freq, bigrams, params);

    std::cout << format_metrics_table(metrics);
    if (metrics.unassigned_mass > 0.0)
        std::cout << format_unassigned_warning(layout, freq);

    const std::string doc = serialize_metrics(metrics);
    if (opt.out.empty())
        std::cout << "\n" << doc;
    else
        write_output_file(opt.out, doc);
    return 0;
}

struct CompareOptions {
    std::string baseline;
    std::string candidate;
    std::string out;
};

int run_compare(const CompareOptions& opt) {
    const LayoutMetrics baseline = load_metrics_file(opt.baseline);
    const LayoutMetrics candidate = load_metrics_file(opt.candidate);
    const ComparisonReport report = compare(baseline, candidate);
    std::cout << format_comparison_table(baseline, candidate, report);
    if (!opt.out.empty())
        write_output_file(opt.out, serialize_comparison(report));
    return 0;
}

struct ExportOptions {
    std::string layout;
    std::string out;
};

int run_export(const ExportOptions& opt) {
    const Layout layout = resolve_layout(opt.layout);
    save_layout_file(layout, opt.out);
    return 0;
}

struct HeatmapOptions {
    std::string layout;
    std::string freq;
    std::string style = "text";
    std::string out;
};

int run_heatmap(const HeatmapOptions& opt) {
    const Layout layout = resolve_layout(opt.layout);
    const FrequencyTable freq = resolve_table(opt.freq);
    const HeatmapStyle style = heatmap_style_from_string(opt.style);
    const KeyboardGeometry& geometry = builtin_geometry(layout.geometry);
    const std::string rendered = render_heatmap(layout, geometry, freq, style);
    if (opt.out.empty())
        std::cout << rendered;
    else
        write_output_file(opt.out, rendered);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qillqa: corpus-driven keyboard layout analysis and optimization"};
    app.require_subcommand(1);

    AnalyzeOptions analyze_opt;
    auto* analyze = app.add_subcommand(
        "analyze", "Count unigram/bigram frequencies in a UTF-8 corpus");
    analyze->add_option("corpus", analyze_opt.corpus, "corpus file (UTF-8)")->required();
    analyze->add_option("--profile", analyze_opt.profile,
                        "built-in profile name or profile file");
    analyze->add_option("--mode", analyze_opt.mode, "counting unit")
        ->check(CLI::IsMember({"char", "grapheme"}));
    analyze->add_option("--out", analyze_opt.out_dir, "output directory")->required();

    OptimizeOptions optimize_opt;
    auto* optimize = app.add_subcommand("optimize", "Search for a lower-effort layout");
    optimize->add_option("--freq", optimize_opt.freq, "frequency table (path or builtin:x)")
        ->required();
    optimize->add_option("--bigrams", optimize_opt.bigrams, "bigram table file");
    optimize->add_option("--mode", optimize_opt.mode, "search regime")
        ->check(CLI::IsMember({"free", "qwerty-delta"}));
    optimize->add_option("--max-moves", optimize_opt.max_moves,
                         "relocation budget (qwerty-delta)");
    optimize->add_option("--config", optimize_opt.config, "optimizer config file");
    optimize->add_option("--params", optimize_opt.params, "effort params file");
    optimize->add_option("--geometry", optimize_opt.geometry, "keyboard geometry");
    optimize->add_option("--trace", optimize_opt.trace, "write (iteration,effort) CSV");
    optimize->add_option("--out", optimize_opt.out_dir, "output directory")->required();

    EvaluateOptions evaluate_opt;
    auto* evaluate = app.add_subcommand("evaluate", "Score a layout against frequency data");
    evaluate->add_option("--layout", evaluate_opt.layout, "layout (path or builtin:x)")
        ->required();
    evaluate->add_option("--freq", evaluate_opt.freq, "frequency table (path or builtin:x)")
        ->required();
    evaluate->add_option("--bigrams", evaluate_opt.bigrams, "bigram table file");
    evaluate->add_option("--params", evaluate_opt.params, "effort params file");
    evaluate->add_option("--out", evaluate_opt.out, "write metrics JSON here");

    CompareOptions compare_opt;
    auto* compare_cmd = app.add_subcommand("compare", "Compare two metrics documents");
    compare_cmd->add_option("baseline", compare_opt.baseline, "baseline metrics JSON")
        ->required();
    compare_cmd->add_option("candidate", compare_opt.candidate, "candidate metrics JSON")
        ->required();
    compare_cmd->add_option("--out", compare_opt.out, "write comparison JSON here");

    ExportOptions export_opt;
    auto* export_cmd =
        app.add_subcommand("export", "Write a layout in the generic JSON format");
    export_cmd->add_option("--layout", export_opt.layout, "layout (path or builtin:x)")
        ->required();
    export_cmd->add_option("--out", export_opt.out, "output file")->required();

    HeatmapOptions heatmap_opt;
    auto* heatmap = app.add_subcommand("heatmap", "Render per-key usage");
    heatmap->add_option("--layout", heatmap_opt.layout, "layout (path or builtin:x)")
        ->required();
    heatmap->add_option("--freq", heatmap_opt.freq, "frequency table (path or builtin:x)")
        ->required();
    heatmap->add_option("--style", heatmap_opt.style, "rendering style")
        ->check(CLI::IsMember({"text", "svg"}));
    heatmap->add_option("--out", heatmap_opt.out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (analyze->parsed())
            return run_analyze(analyze_opt);
        if (optimize->parsed())
            return run_optimize(optimize_opt);
        if (evaluate->parsed())
            return run_evaluate(evaluate_opt);
        if (compare_cmd->parsed())
            return run_compare(compare_opt);
        if (export_cmd->parsed())
            return run_export(export_opt);
        if (heatmap->parsed())
            return run_heatmap(heatmap_opt);
    } catch (const Utf8Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
