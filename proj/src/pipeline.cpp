#include "gi/pipeline.hpp"

#include "gi/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <optional>
#include <thread>

namespace gi {

std::vector<CropDetection> Inspection::detections() const {
    std::vector<CropDetection> out;
    out.reserve(crops.size());
    for (const CropAnalysis& crop : crops) {
        out.push_back(CropDetection{crop.grid, crop.cut.defective_blocks});
    }
    return out;
}

CropAnalysis analyze_crop(const GrayImage& gradient, const CropSpec& crop, Periodicity period,
                          double tau) {
    BlockGrid grid(crop, period);
    EnergyVector energies = block_energies(gradient, grid);
    LinkageMatrix linkage = ward_linkage(energies);
    TwoClusterCut cut = minority_rule(cut_two_clusters(linkage), energies, tau);
    return CropAnalysis{std::move(grid), std::move(energies), std::move(linkage), std::move(cut)};
}

unsigned resolve_threads(unsigned requested) noexcept {
    if (requested != 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

Inspection inspect(const GrayImage& img, const InspectOptions& options) {
    options.canny.validate();
    if (options.tau < 0.0) {
        throw InvalidArgument("tau must be >= 0");
    }
    using Clock = std::chrono::steady_clock;
    const auto ms = [](Clock::duration d) {
        return std::chrono::duration<double, std::milli>(d).count();
    };
    const auto start = Clock::now();
    const GrayImage gradient = gradient_space(img);
    const auto crops = four_crops(img.height(), img.width(), options.period);

    std::vector<std::optional<CropAnalysis>> results(crops.size());
    std::vector<std::exception_ptr> errors(crops.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < crops.size(); i = next++) {
            try {
                results[i] = analyze_crop(gradient, crops[i], options.period, options.tau);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const std::size_t workers =
        std::min<std::size_t>(resolve_threads(options.threads), crops.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back(worker);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    Inspection out;
    out.height = img.height();
    out.width = img.width();
    for (auto& r : results) {
        out.crops.push_back(std::move(*r));
    }
    const auto fusion_start = Clock::now();
    const auto detections = out.detections();
    out.fused = fuse(detections, img.height(), img.width(), options.canny);
    out.overlay = overlay(img, out.fused.edges);
    const auto end = Clock::now();
    out.timings = StageTimings{ms(fusion_start - start), ms(end - fusion_start), ms(end - start)};
    return out;
}

} // namespace gi
