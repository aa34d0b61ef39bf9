#pragma once

#include "gi/tiling.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gi {

/// Block-level confusion counts; tp + tn + fp + fn equals the block count.
struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    std::size_t total() const noexcept { return tp + tn + fp + fn; }
    bool operator==(const ConfusionCounts&) const = default;
};

/// A metric whose denominator is zero is left empty rather than reported
/// as 0 or 1.
struct CropScore {
    ConfusionCounts counts;
    std::optional<double> precision; ///< TP / (TP + FP)
    std::optional<double> recall;    ///< TP / (TP + FN)
    std::optional<double> accuracy;  ///< (TP + TN) / n
};

CropScore score_counts(const ConfusionCounts& counts);

/**
 * Scores predicted against true defective blocks (1-based indices; order and
 * duplicates are ignored). Throws InvalidArgument on an index outside
 * 1..n_blocks.
 */
CropScore score_crop(std::span<const std::size_t> predicted, std::span<const std::size_t> truth,
                     std::size_t n_blocks);

struct CropMetrics {
    Corner corner = Corner::TopLeft;
    std::size_t n_blocks = 0;
    CropScore score;
};

struct MetricsReport {
    std::vector<CropMetrics> per_crop;
    /// Unweighted means over the crops where each metric is defined.
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> accuracy;
};

MetricsReport summarize(std::vector<CropMetrics> per_crop);

} // namespace gi
