// gradinspect: periodic-texture defect detection in gradient space.
//
// Exit codes: 0 success, 1 I/O failure while writing outputs, 2 bad
// arguments, 3 unreadable or undecodable image, 4 image holds fewer than two
// whole periods along an axis, 5 malformed truth or spec document.

#include "gi/error.hpp"
#include "gi/io.hpp"
#include "gi/metrics.hpp"
#include "gi/pipeline.hpp"
#include "gi/report.hpp"
#include "gi/synth.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

enum ExitCode : int {
    kOk = 0,
    kWriteFailed = 1,
    kBadArguments = 2,
    kBadImage = 3,
    kPeriodicity = 4,
    kBadDocument = 5,
};

struct ExitError {
    int code;
    std::string message;
};

struct PipelineArgs {
    std::string input;
    std::size_t period_rows = 0;
    std::size_t period_cols = 0;
    std::string out_mask;
    std::string out_edges;
    std::string out_overlay;
    std::string report;
    gi::CannyParams canny;
    double tau = 0.0;
    bool timings = false;
};

void add_pipeline_options(CLI::App& cmd, PipelineArgs& args) {
    cmd.add_option("--input", args.input, "Input image (PGM P5/P2 or PNG)")->required();
    cmd.add_option("--period-rows", args.period_rows, "Rows in one periodic unit")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd.add_option("--period-cols", args.period_cols, "Columns in one periodic unit")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd.add_option("--out-mask", args.out_mask, "Filled defect mask (PGM)");
    cmd.add_option("--out-edges", args.out_edges, "Defect edge mask (PGM)");
    cmd.add_option("--out-overlay", args.out_overlay, "Input with defect edges burnt in (PGM)");
    cmd.add_option("--report", args.report, "JSON report path");
    cmd.add_option("--canny-sigma", args.canny.sigma, "Gaussian sigma for edge extraction")
        ->capture_default_str();
    cmd.add_option("--canny-high-pct", args.canny.high_percentile,
                   "High threshold percentile of nonzero gradient magnitudes")
        ->capture_default_str();
    cmd.add_option("--canny-low-ratio", args.canny.low_ratio, "Low threshold / high threshold")
        ->capture_default_str();
    cmd.add_option("--tau", args.tau, "Report a crop defect-free when its two clusters' mean energies differ by less than this fraction of the mean (0 = off)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd.add_flag("--timings", args.timings, "Include stage timings in the report");
}

unsigned threads_from_env() {
    const char* raw = std::getenv("GI_THREADS");
    if (raw == nullptr || *raw == '\0') {
        return 0;
    }
    try {
        std::size_t used = 0;
        const unsigned long value = std::stoul(raw, &used);
        if (used != std::string(raw).size() || value > 1024) {
            throw std::invalid_argument(raw);
        }
        return static_cast<unsigned>(value);
    } catch (const std::exception&) {
        throw ExitError{kBadArguments, std::string("GI_THREADS must be a non-negative integer, got '") +
                                           raw + "'"};
    }
}

gi::GrayImage load_input(const std::string& path) {
    try {
        return gi::read_image(path);
    } catch (const gi::Error& e) {
        throw ExitError{kBadImage, e.what()};
    }
}

struct PipelineRun {
    gi::InspectOptions options;
    gi::GrayImage image;
    gi::Inspection inspection;
};

PipelineRun run_pipeline(const PipelineArgs& args) {
    PipelineRun run;
    run.options.period = {args.period_rows, args.period_cols};
    run.options.canny = args.canny;
    run.options.tau = args.tau;
    run.options.threads = threads_from_env();
    try {
        run.options.canny.validate();
    } catch (const gi::InvalidArgument& e) {
        throw ExitError{kBadArguments, e.what()};
    }

    run.image = load_input(args.input);
    try {
        run.inspection = gi::inspect(run.image, run.options);
    } catch (const gi::PeriodicityError& e) {
        throw ExitError{kPeriodicity, e.what()};
    } catch (const gi::InvalidArgument& e) {
        // e.g. an image smaller than the edge-smoothing kernel
        throw ExitError{kBadArguments, e.what()};
    }
    return run;
}

void write_outputs(const PipelineArgs& args, const PipelineRun& run,
                   const std::optional<nlohmann::ordered_json>& metrics) {
    const gi::Inspection& ins = run.inspection;
    if (!args.out_mask.empty()) {
        gi::write_pgm_file(args.out_mask, ins.fused.filled.to_image(gi::kMaxIntensity));
    }
    if (!args.out_edges.empty()) {
        gi::write_pgm_file(args.out_edges, ins.fused.edges.to_image(gi::kMaxIntensity));
    }
    if (!args.out_overlay.empty()) {
        gi::write_pgm_file(args.out_overlay, ins.overlay);
    }
    if (!args.report.empty()) {
        auto report = gi::inspection_report(ins, run.options, args.input, args.timings);
        if (metrics) {
            report["metrics"] = *metrics;
        }
        gi::write_file_atomic(args.report, report.dump(2) + "\n");
    }
}

void print_detections(const gi::Inspection& ins) {
    for (const gi::CropAnalysis& crop : ins.crops) {
        std::cout << gi::corner_name(crop.grid.crop().corner) << ": "
                  << crop.cut.defective_blocks.size() << " of " << crop.grid.block_count()
                  << " blocks defective";
        if (crop.cut.ambiguous) {
            std::cout << " (equal-size clusters)";
        }
        std::cout << '\n';
    }
}

int cmd_inspect(const PipelineArgs& args) {
    const PipelineRun run = run_pipeline(args);
    print_detections(run.inspection);
    write_outputs(args, run, std::nullopt);
    return kOk;
}

std::string read_text_file(const std::string& path, int code) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ExitError{code, "cannot open '" + path + "'"};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

gi::CropBlockLists load_truth(const std::string& path, const gi::Inspection& ins) {
    const std::string text = read_text_file(path, kBadDocument);
    gi::CropBlockLists lists;
    if (text.rfind("P5", 0) == 0 || text.rfind("P2", 0) == 0) {
        std::istringstream in(text);
        gi::GrayImage mask_image;
        try {
            mask_image = gi::read_pgm(in);
        } catch (const gi::FormatError& e) {
            throw ExitError{kBadDocument, "truth mask: " + std::string(e.what())};
        }
        if (mask_image.height() != ins.height || mask_image.width() != ins.width) {
            throw ExitError{kBadDocument, "truth mask size does not match the input image"};
        }
        gi::DefectMask mask(ins.height, ins.width);
        for (std::size_t r = 0; r < ins.height; ++r) {
            for (std::size_t c = 0; c < ins.width; ++c) {
                mask.set(r, c, mask_image(r, c) > 0.0);
            }
        }
        for (std::size_t i = 0; i < ins.crops.size(); ++i) {
            lists[i] = gi::ground_truth_blocks(mask, ins.crops[i].grid);
        }
        return lists;
    }
    try {
        return gi::parse_truth(text);
    } catch (const gi::FormatError& e) {
        throw ExitError{kBadDocument, e.what()};
    }
}

int cmd_evaluate(const PipelineArgs& args, const std::string& truth_path) {
    const PipelineRun run = run_pipeline(args);
    const gi::Inspection& ins = run.inspection;
    const gi::CropBlockLists truth = load_truth(truth_path, ins);

    std::vector<gi::CropMetrics> rows;
    for (std::size_t i = 0; i < ins.crops.size(); ++i) {
        const gi::CropAnalysis& crop = ins.crops[i];
        gi::CropMetrics m;
        m.corner = crop.grid.crop().corner;
        m.n_blocks = crop.grid.block_count();
        try {
            m.score = gi::score_crop(crop.cut.defective_blocks, truth[i], m.n_blocks);
        } catch (const gi::InvalidArgument& e) {
            throw ExitError{kBadDocument, std::string(gi::corner_name(m.corner)) + ": " + e.what()};
        }
        rows.push_back(m);
    }
    const gi::MetricsReport metrics = gi::summarize(std::move(rows));
    std::cout << gi::format_metrics_table(metrics);
    write_outputs(args, run, gi::metrics_json(metrics));
    return kOk;
}

struct SynthArgs {
    std::string spec;
    std::optional<std::uint64_t> seed;
    std::string out_image;
    std::string out_mask;
    std::string out_truth;
};

int cmd_synth(const SynthArgs& args) {
    const std::string text = read_text_file(args.spec, kBadDocument);
    gi::SyntheticSpec spec;
    gi::SyntheticTexture texture;
    gi::CropBlockLists truth;
    try {
        spec = gi::parse_synthetic_spec(text);
        if (args.seed) {
            spec.seed = *args.seed;
        }
        texture = gi::generate_texture(spec);
        const auto crops = gi::four_crops(spec.height(), spec.width(), spec.period);
        for (std::size_t i = 0; i < crops.size(); ++i) {
            truth[i] = gi::ground_truth_blocks(texture.defects, gi::BlockGrid(crops[i], spec.period));
        }
    } catch (const gi::Error& e) {
        throw ExitError{kBadDocument, args.spec + ": " + e.what()};
    }

    gi::write_pgm_file(args.out_image, texture.image);
    if (!args.out_mask.empty()) {
        gi::write_pgm_file(args.out_mask, texture.defects.to_image(gi::kMaxIntensity));
    }
    if (!args.out_truth.empty()) {
        gi::write_file_atomic(args.out_truth, gi::format_truth(truth));
    }
    std::cout << spec.height() << "x" << spec.width() << " " << gi::motif_name(spec.motif)
              << " texture, " << spec.defects.size() << " defect(s)\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Defect detection for periodic textures in gradient space"};
    app.set_version_flag("--version", std::string(gi::kToolVersion));
    app.require_subcommand(1);

    PipelineArgs inspect_args;
    auto* inspect = app.add_subcommand("inspect", "Detect defects and write masks/overlay/report");
    add_pipeline_options(*inspect, inspect_args);

    PipelineArgs eval_args;
    std::string truth_path;
    auto* evaluate = app.add_subcommand("evaluate", "Inspect and score against ground truth");
    add_pipeline_options(*evaluate, eval_args);
    evaluate->add_option("--truth", truth_path, "Truth block lists or defect pixel mask (PGM)")
        ->required();

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic patterned texture");
    synth->add_option("--spec", synth_args.spec, "Synthetic spec document")->required();
    synth->add_option("--seed", synth_args.seed, "Override the spec's seed");
    synth->add_option("--out-image", synth_args.out_image, "Generated image (PGM)")->required();
    synth->add_option("--out-mask", synth_args.out_mask, "Defect pixel mask (PGM)");
    synth->add_option("--out-truth", synth_args.out_truth, "Per-crop truth block lists");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kBadArguments;
    }

    try {
        if (*inspect) {
            return cmd_inspect(inspect_args);
        }
        if (*evaluate) {
            return cmd_evaluate(eval_args, truth_path);
        }
        return cmd_synth(synth_args);
    } catch (const ExitError& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kWriteFailed;
    }
}
