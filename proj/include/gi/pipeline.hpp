#pragma once

#include "gi/features.hpp"
#include "gi/fusion.hpp"
#include "gi/image.hpp"
#include "gi/tiling.hpp"
#include "gi/ward.hpp"

#include <cstddef>
#include <vector>

namespace gi {

struct InspectOptions {
    Periodicity period;
    CannyParams canny;
    double tau = 0.0;      ///< minimum relative cluster separation; 0 disables the guard
    unsigned threads = 0;  ///< worker cap for the per-crop stage; 0 = hardware concurrency
};

/// Everything computed for one of the four corner crops.
struct CropAnalysis {
    BlockGrid grid;
    EnergyVector energies;
    LinkageMatrix linkage;
    TwoClusterCut cut;
};

/// Wall-clock stage durations in milliseconds.
struct StageTimings {
    double analysis_ms = 0.0; ///< gradient space, crops, clustering
    double fusion_ms = 0.0;   ///< rasterize, fill, edges, overlay
    double total_ms = 0.0;
};

struct Inspection {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<CropAnalysis> crops; ///< in kCorners order
    FusedDefects fused;
    GrayImage overlay;
    StageTimings timings;

    std::vector<CropDetection> detections() const;
};

/// Blocks -> energies -> Ward linkage -> two-cluster cut -> minority rule.
CropAnalysis analyze_crop(const GrayImage& gradient, const CropSpec& crop, Periodicity period,
                          double tau);

/**
 * Runs the whole chain on @p img: gradient space, four corner crops analysed
 * concurrently, fusion and overlay. Output does not depend on the thread
 * count. Throws PeriodicityError when fewer than two whole periods fit along
 * an axis.
 */
Inspection inspect(const GrayImage& img, const InspectOptions& options);

/// 0 maps to std::thread::hardware_concurrency() (at least 1).
unsigned resolve_threads(unsigned requested) noexcept;

} // namespace gi
