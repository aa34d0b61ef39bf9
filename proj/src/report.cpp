#include "gi/report.hpp"

#include "gi/error.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace gi {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string percent(const std::optional<double>& v) {
    if (!v) {
        return "n/a";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", *v * 100.0);
    return buf;
}

} // namespace

CropBlockLists parse_truth(std::string_view text) {
    CropBlockLists lists;
    std::array<bool, 4> seen{};
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw FormatError("truth line " + std::to_string(line_no) +
                              ": expected '<corner>: <block> ...'");
        }
        std::size_t slot = 0;
        try {
            slot = static_cast<std::size_t>(parse_corner(trim(line.substr(0, colon))));
        } catch (const InvalidArgument& e) {
            throw FormatError("truth line " + std::to_string(line_no) + ": " + e.what());
        }
        if (seen[slot]) {
            throw FormatError("truth line " + std::to_string(line_no) + ": corner listed twice");
        }
        seen[slot] = true;

        std::string_view rest = line.substr(colon + 1);
        while (!(rest = trim(rest)).empty()) {
            const auto end = rest.find_first_of(" \t,");
            const std::string_view word = rest.substr(0, end);
            std::size_t k = 0;
            const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), k);
            if (ec != std::errc{} || ptr != word.data() + word.size() || k == 0) {
                throw FormatError("truth line " + std::to_string(line_no) + ": '" +
                                  std::string(word) + "' is not a 1-based block index");
            }
            lists[slot].push_back(k);
            rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end + 1);
        }
    }
    return lists;
}

std::string format_truth(const CropBlockLists& lists) {
    std::ostringstream out;
    out << "# defective periodic blocks per crop (1-based, row-major)\n";
    for (std::size_t i = 0; i < kCorners.size(); ++i) {
        out << corner_name(kCorners[i]) << ':';
        for (std::size_t k : lists[i]) {
            out << ' ' << k;
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::ordered_json inspection_report(const Inspection& inspection,
                                         const InspectOptions& options, std::string_view input,
                                         bool with_timings) {
    using json = nlohmann::ordered_json;
    json report;
    report["tool"] = kToolName;
    report["version"] = kToolVersion;
    report["input"] = input;
    report["image"] = {{"height", inspection.height}, {"width", inspection.width}};
    report["parameters"] = {
        {"period_rows", options.period.rows},
        {"period_cols", options.period.cols},
        {"canny_sigma", options.canny.sigma},
        {"canny_high_percentile", options.canny.high_percentile},
        {"canny_low_ratio", options.canny.low_ratio},
        {"tau", options.tau},
    };

    std::size_t total_defective = 0;
    json crops = json::array();
    for (const CropAnalysis& crop : inspection.crops) {
        const CropSpec& spec = crop.grid.crop();
        json z = json::array();
        for (const LinkageRow& row : crop.linkage.rows) {
            z.push_back(json::array({row.left, row.right, row.distance}));
        }
        json entry;
        entry["corner"] = corner_name(spec.corner);
        entry["row_offset"] = spec.row_offset;
        entry["col_offset"] = spec.col_offset;
        entry["height"] = spec.height;
        entry["width"] = spec.width;
        entry["rows_of_blocks"] = crop.grid.rows_of_blocks();
        entry["cols_of_blocks"] = crop.grid.cols_of_blocks();
        entry["n_blocks"] = crop.grid.block_count();
        entry["defective_blocks"] = crop.cut.defective_blocks;
        entry["defective_cluster"] =
            crop.cut.defective ? json(crop.cut.defective == ClusterLabel::A ? "A" : "B") : json(nullptr);
        entry["ambiguous"] = crop.cut.ambiguous;
        entry["cluster_separation"] = cluster_separation(crop.cut, crop.energies);
        entry["energies"] = crop.energies;
        entry["linkage"] = std::move(z);
        total_defective += crop.cut.defective_blocks.size();
        crops.push_back(std::move(entry));
    }
    report["crops"] = std::move(crops);
    report["summary"] = {
        {"defective_blocks_total", total_defective},
        {"filled_pixels", inspection.fused.filled.population()},
        {"edge_pixels", inspection.fused.edges.population()},
    };
    if (with_timings) {
        const StageTimings& t = inspection.timings;
        report["timings_ms"] = {
            {"analysis", t.analysis_ms},
            {"fusion", t.fusion_ms},
            {"total", t.total_ms},
        };
    }
    return report;
}

nlohmann::ordered_json metrics_json(const MetricsReport& report) {
    using json = nlohmann::ordered_json;
    json rows = json::array();
    for (const CropMetrics& m : report.per_crop) {
        const ConfusionCounts& c = m.score.counts;
        rows.push_back({
            {"corner", corner_name(m.corner)},
            {"n_blocks", m.n_blocks},
            {"tp", c.tp},
            {"tn", c.tn},
            {"fp", c.fp},
            {"fn", c.fn},
            {"precision", optional_number(m.score.precision)},
            {"recall", optional_number(m.score.recall)},
            {"accuracy", optional_number(m.score.accuracy)},
        });
    }
    return json{
        {"per_crop", std::move(rows)},
        {"average",
         {{"precision", optional_number(report.precision)},
          {"recall", optional_number(report.recall)},
          {"accuracy", optional_number(report.accuracy)}}},
    };
}

std::string format_metrics_table(const MetricsReport& report) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-14s %8s %14s %11s %13s\n", "crop", "blocks",
                  "precision(%)", "recall(%)", "accuracy(%)");
    out << line;
    std::size_t blocks = 0;
    for (const CropMetrics& m : report.per_crop) {
        std::snprintf(line, sizeof line, "%-14s %8zu %14s %11s %13s\n",
                      std::string(corner_name(m.corner)).c_str(), m.n_blocks,
                      percent(m.score.precision).c_str(), percent(m.score.recall).c_str(),
                      percent(m.score.accuracy).c_str());
        out << line;
        blocks = m.n_blocks;
    }
    std::snprintf(line, sizeof line, "%-14s %8zu %14s %11s %13s\n", "average", blocks,
                  percent(report.precision).c_str(), percent(report.recall).c_str(),
                  percent(report.accuracy).c_str());
    out << line;
    return out.str();
}

} // namespace gi
