#include "gi/error.hpp"
#include "gi/pipeline.hpp"
#include "gi/report.hpp"
#include "gi/synth.hpp"

#include <doctest.h>

using gi::DefectShape;
using gi::Motif;

namespace {

gi::SyntheticSpec spec_with(std::vector<gi::DefectSpec> defects, double noise = 4.0) {
    gi::SyntheticSpec spec;
    spec.motif = Motif::Dot;
    spec.period = {25, 30};
    spec.repeat_rows = 10;
    spec.repeat_cols = 8;
    spec.margin_rows = 6;
    spec.margin_cols = 4;
    spec.noise = noise;
    spec.seed = 5;
    spec.defects = std::move(defects);
    return spec;
}

gi::InspectOptions options_for(const gi::SyntheticSpec& spec, double tau = 0.0) {
    gi::InspectOptions o;
    o.period = spec.period;
    o.tau = tau;
    return o;
}

} // namespace

TEST_CASE("single blob is found in every crop") {
    const auto spec = spec_with({{DefectShape::Blob, 112, 135, 6, 70.0}});
    const auto tex = gi::generate_texture(spec);
    const auto ins = gi::inspect(tex.image, options_for(spec));
    REQUIRE(ins.crops.size() == 4);
    for (const auto& crop : ins.crops) {
        CHECK(crop.cut.defective_blocks == gi::ground_truth_blocks(tex.defects, crop.grid));
        // Each reported block is inside the filled region.
        for (std::size_t k : crop.cut.defective_blocks) {
            const auto rect = crop.grid.block_rect(k);
            for (std::size_t r = rect.row; r < rect.row + rect.height; ++r)
                for (std::size_t c = rect.col; c < rect.col + rect.width; ++c)
                    CHECK(ins.fused.filled(r, c));
        }
    }
    // The overlay differs from the input exactly on edge pixels that were not already white.
    std::size_t diffs = 0;
    for (std::size_t i = 0; i < tex.image.size(); ++i)
        diffs += ins.overlay.pixels()[i] != tex.image.pixels()[i];
    std::size_t expected = 0;
    for (std::size_t r = 0; r < tex.image.height(); ++r)
        for (std::size_t c = 0; c < tex.image.width(); ++c)
            expected += ins.fused.edges(r, c) && tex.image(r, c) != gi::kMaxIntensity;
    CHECK(diffs == expected);
    CHECK(diffs > 0);
}

TEST_CASE("defect-free texture with the guard reports nothing") {
    for (double noise : {0.0, 4.0}) {
        const auto spec = spec_with({}, noise);
        const auto ins = gi::inspect(gi::generate_texture(spec).image, options_for(spec, 0.05));
        for (const auto& crop : ins.crops) CHECK(crop.cut.defective_blocks.empty());
        CHECK(ins.fused.filled.population() == 0);
        CHECK(ins.fused.edges.population() == 0);
    }
}

TEST_CASE("output is independent of the thread count") {
    const auto spec = spec_with({{DefectShape::Scratch, 60, 40, 50, 60.0}});
    const auto img = gi::generate_texture(spec).image;
    auto one = options_for(spec);
    one.threads = 1;
    auto four = options_for(spec);
    four.threads = 4;
    const auto a = gi::inspect(img, one);
    const auto b = gi::inspect(img, four);
    CHECK(a.fused.filled == b.fused.filled);
    CHECK(a.fused.edges == b.fused.edges);
    CHECK(gi::inspection_report(a, one, "x").dump() == gi::inspection_report(b, one, "x").dump());
}

TEST_CASE("too-small image is rejected") {
    gi::InspectOptions o;
    o.period = {25, 30};
    CHECK_THROWS_AS(gi::inspect(gi::GrayImage(49, 120), o), gi::PeriodicityError);
}

TEST_CASE("report carries linkage and detections") {
    const auto spec = spec_with({{DefectShape::Blob, 112, 135, 6, 70.0}});
    const auto opts = options_for(spec);
    const auto ins = gi::inspect(gi::generate_texture(spec).image, opts);
    const auto json = gi::inspection_report(ins, opts, "in.pgm");
    CHECK(json["tool"] == "gradinspect");
    CHECK(json["crops"].size() == 4);
    CHECK(json["crops"][0]["linkage"].size() == ins.crops[0].grid.block_count() - 1);
    CHECK(json["crops"][0]["linkage"][0].size() == 3);
    CHECK_FALSE(json.contains("timings_ms"));
    CHECK(gi::inspection_report(ins, opts, "in.pgm", true).contains("timings_ms"));
}
