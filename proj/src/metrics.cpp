#include "gi/metrics.hpp"

#include "gi/error.hpp"

#include <cstdint>
#include <string>

namespace gi {
namespace {

std::vector<std::uint8_t> membership(std::span<const std::size_t> blocks, std::size_t n_blocks,
                                     const char* what) {
    std::vector<std::uint8_t> in(n_blocks + 1, 0);
    for (std::size_t k : blocks) {
        if (k < 1 || k > n_blocks) {
            throw InvalidArgument(std::string(what) + " block index " + std::to_string(k) +
                                  " outside 1.." + std::to_string(n_blocks));
        }
        in[k] = 1;
    }
    return in;
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
    if (den == 0) {
        return std::nullopt;
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

} // namespace

CropScore score_counts(const ConfusionCounts& counts) {
    CropScore score;
    score.counts = counts;
    score.precision = ratio(counts.tp, counts.tp + counts.fp);
    score.recall = ratio(counts.tp, counts.tp + counts.fn);
    score.accuracy = ratio(counts.tp + counts.tn, counts.total());
    return score;
}

CropScore score_crop(std::span<const std::size_t> predicted, std::span<const std::size_t> truth,
                     std::size_t n_blocks) {
    const auto pred = membership(predicted, n_blocks, "predicted");
    const auto real = membership(truth, n_blocks, "ground-truth");
    ConfusionCounts counts;
    for (std::size_t k = 1; k <= n_blocks; ++k) {
        if (pred[k] && real[k]) {
            ++counts.tp;
        } else if (pred[k]) {
            ++counts.fp;
        } else if (real[k]) {
            ++counts.fn;
        } else {
            ++counts.tn;
        }
    }
    return score_counts(counts);
}

MetricsReport summarize(std::vector<CropMetrics> per_crop) {
    MetricsReport report;
    report.per_crop = std::move(per_crop);

    auto mean = [&](auto field) -> std::optional<double> {
        double sum = 0.0;
        std::size_t count = 0;
        for (const CropMetrics& m : report.per_crop) {
            if (const std::optional<double> v = m.score.*field) {
                sum += *v;
                ++count;
            }
        }
        if (count == 0) {
            return std::nullopt;
        }
        return sum / static_cast<double>(count);
    };
    report.precision = mean(&CropScore::precision);
    report.recall = mean(&CropScore::recall);
    report.accuracy = mean(&CropScore::accuracy);
    return report;
}

} // namespace gi
