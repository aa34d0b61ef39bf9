#pragma once

#include "gi/metrics.hpp"
#include "gi/pipeline.hpp"

#include <json.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gi {

inline constexpr std::string_view kToolName = "gradinspect";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Defective block indices per crop, in kCorners order.
using CropBlockLists = std::array<std::vector<std::size_t>, 4>;

/**
 * Ground-truth text: one `<corner>: <k> <k> ...` line per crop, `#`
 * comments. Corners may be omitted (no defects). Throws FormatError on an
 * unknown corner, a repeated corner, or an index that is not a positive
 * integer.
 */
CropBlockLists parse_truth(std::string_view text);
std::string format_truth(const CropBlockLists& lists);

/**
 * Structured inspection report: tool/version, parameters, image size and,
 * per crop, its geometry, block energies, linkage matrix (1-based ids),
 * defective blocks and the cut flags. Timings vary run to run, so they are
 * only included when @p with_timings is set.
 */
nlohmann::ordered_json inspection_report(const Inspection& inspection,
                                         const InspectOptions& options, std::string_view input,
                                         bool with_timings = false);

nlohmann::ordered_json metrics_json(const MetricsReport& report);

/// Fixed-width table with one row per crop plus the average; percentages
/// rounded to one decimal, "n/a" where a metric is undefined.
std::string format_metrics_table(const MetricsReport& report);

} // namespace gi
