#include "gi/error.hpp"
#include "gi/fusion.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using gi::Corner;
using gi::DefectMask;
using gi::Periodicity;

namespace {

DefectMask outline(std::size_t h, std::size_t w, gi::Rect r) {
    DefectMask m(h, w);
    for (std::size_t c = r.col; c < r.col + r.width; ++c) {
        m.set(r.row, c);
        m.set(r.row + r.height - 1, c);
    }
    for (std::size_t rr = r.row; rr < r.row + r.height; ++rr) {
        m.set(rr, r.col);
        m.set(rr, r.col + r.width - 1);
    }
    return m;
}

std::size_t count_in(const DefectMask& m, gi::Rect r) {
    std::size_t n = 0;
    for (std::size_t y = r.row; y < r.row + r.height; ++y)
        for (std::size_t x = r.col; x < r.col + r.width; ++x) n += m(y, x);
    return n;
}

const Periodicity kPeriod{25, 30};

} // namespace

TEST_CASE("rasterize_boundaries") {
    const gi::BlockGrid grid(gi::CropSpec{Corner::TopLeft, 0, 0, 100, 120}, kPeriod);
    SUBCASE("no detections") {
        const std::vector<gi::CropDetection> none{{grid, {}}};
        CHECK(gi::rasterize_boundaries(none, 100, 120).population() == 0);
    }
    SUBCASE("single block perimeter") {
        const std::vector<gi::CropDetection> one{{grid, {1}}};
        const auto m = gi::rasterize_boundaries(one, 100, 120);
        CHECK(m.population() == 2 * (25 + 30) - 4);
        CHECK(m == outline(100, 120, {0, 0, 25, 30}));
    }
    SUBCASE("overlapping crops union their outlines") {
        const gi::BlockGrid shifted(gi::CropSpec{Corner::BottomRight, 10, 7, 100, 120}, kPeriod);
        const std::vector<gi::CropDetection> two{{grid, {6}}, {shifted, {6}}};
        const auto m = gi::rasterize_boundaries(two, 110, 127);
        DefectMask expected(110, 127);
        const auto a = outline(110, 127, grid.block_rect(6));
        const auto b = outline(110, 127, shifted.block_rect(6));
        for (std::size_t r = 0; r < 110; ++r)
            for (std::size_t c = 0; c < 127; ++c) expected.set(r, c, a(r, c) || b(r, c));
        CHECK(m == expected);
        CHECK(m.population() < a.population() + b.population());
    }
    SUBCASE("out of range block") {
        const std::vector<gi::CropDetection> bad{{grid, {17}}};
        CHECK_THROWS_AS(gi::rasterize_boundaries(bad, 100, 120), gi::InvalidArgument);
        const std::vector<gi::CropDetection> big{{grid, {16}}};
        CHECK_THROWS_AS(gi::rasterize_boundaries(big, 90, 120), gi::InvalidArgument);
    }
}

TEST_CASE("fill_holes") {
    SUBCASE("hollow rectangle becomes solid") {
        const auto filled = gi::fill_holes(outline(40, 50, {5, 8, 20, 25}));
        CHECK(filled.population() == 20 * 25);
        CHECK(count_in(filled, {5, 8, 20, 25}) == 500);
    }
    SUBCASE("empty mask stays empty") {
        CHECK(gi::fill_holes(DefectMask(10, 10)).population() == 0);
    }
    SUBCASE("nested outlines fill to the outer extent") {
        auto m = outline(40, 50, {2, 3, 30, 40});
        const auto inner = outline(40, 50, {10, 12, 8, 9});
        for (std::size_t r = 0; r < 40; ++r)
            for (std::size_t c = 0; c < 50; ++c)
                if (inner(r, c)) m.set(r, c);
        const auto filled = gi::fill_holes(m);
        CHECK(filled == oracle::fill_by_reconstruction(m));
        CHECK(filled.population() == 30 * 40);
    }
    SUBCASE("outline touching the border keeps outside background") {
        const auto filled = gi::fill_holes(outline(20, 20, {0, 0, 10, 10}));
        CHECK(filled.population() == 100);
        CHECK_FALSE(filled(15, 15));
    }
    SUBCASE("random masks: oracle, idempotent, monotone") {
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 50; ++trial) {
            const auto m = oracle::random_mask(rng, 23, 31, 0.35);
            const auto f = gi::fill_holes(m);
            CHECK(f == oracle::fill_by_reconstruction(m));
            CHECK(gi::fill_holes(f) == f);
            for (std::size_t r = 0; r < 23; ++r)
                for (std::size_t c = 0; c < 31; ++c)
                    if (m(r, c)) CHECK(f(r, c));
        }
    }
}

TEST_CASE("canny parameters") {
    CHECK_THROWS_AS((gi::CannyParams{0.0, 90, 0.4}.validate()), gi::InvalidArgument);
    CHECK_THROWS_AS((gi::CannyParams{1.0, 0, 0.4}.validate()), gi::InvalidArgument);
    CHECK_THROWS_AS((gi::CannyParams{1.0, 101, 0.4}.validate()), gi::InvalidArgument);
    CHECK_THROWS_AS((gi::CannyParams{1.0, 90, 1.5}.validate()), gi::InvalidArgument);
    CHECK_NOTHROW(gi::CannyParams{}.validate());
    CHECK(gi::gaussian_kernel(1.4).size() == 11);
    CHECK_THROWS_AS(gi::canny_edges(gi::GrayImage(10, 40), gi::CannyParams{}), gi::InvalidArgument);
}

TEST_CASE("canny on a constant image finds nothing") {
    CHECK(gi::canny_edges(gi::GrayImage(32, 32, 128.0), gi::CannyParams{}).population() == 0);
}

TEST_CASE("canny on a vertical step gives one straight 1-px line") {
    gi::GrayImage img(32, 32);
    for (std::size_t r = 0; r < 32; ++r)
        for (std::size_t c = 16; c < 32; ++c) img(r, c) = 255.0;
    const auto edges = gi::canny_edges(img, gi::CannyParams{});
    CHECK(edges.population() == 32);
    std::size_t column = 99;
    for (std::size_t r = 0; r < 32; ++r) {
        std::size_t in_row = 0;
        for (std::size_t c = 0; c < 32; ++c)
            if (edges(r, c)) {
                ++in_row;
                column = c;
            }
        CHECK(in_row == 1);
    }
    CHECK((column == 15 || column == 16));
    CHECK(oracle::components8(edges) == 1);
}

TEST_CASE("canny on a filled rectangle traces a closed contour") {
    DefectMask block(60, 70);
    for (std::size_t r = 15; r < 40; ++r)
        for (std::size_t c = 20; c < 50; ++c) block.set(r, c);
    const auto edges = gi::canny_edges(block.to_image(), gi::CannyParams{});
    CHECK(oracle::components8(edges) == 1);
    // Closed: filling the contour encloses pixels it does not itself cover.
    CHECK(gi::fill_holes(edges).population() > edges.population() + 20 * 25 / 2);
    // Edge pixels hug the rectangle boundary.
    for (std::size_t r = 0; r < 60; ++r)
        for (std::size_t c = 0; c < 70; ++c)
            if (edges(r, c)) {
                const bool near_rect = r + 2 >= 15 && r <= 41 && c + 2 >= 20 && c <= 51;
                const bool deep_inside = r >= 18 && r < 37 && c >= 23 && c < 47;
                CHECK(near_rect);
                CHECK_FALSE(deep_inside);
            }
}

TEST_CASE("every canny edge pixel is a recomputed local maximum") {
    std::mt19937_64 rng(17);
    const gi::CannyParams params{};
    for (int trial = 0; trial < 10; ++trial) {
        gi::GrayImage img = oracle::random_image(rng, 30, 36, 0.0, 30.0);
        for (std::size_t r = 8; r < 20; ++r)
            for (std::size_t c = 10; c < 25; ++c) img(r, c) += 200.0;
        const auto edges = gi::canny_edges(img, params);
        const auto maxima = oracle::local_maxima(gi::gaussian_smooth(img, params.sigma));
        CHECK(edges.population() > 0);
        for (std::size_t r = 0; r < 30; ++r)
            for (std::size_t c = 0; c < 36; ++c)
                if (edges(r, c)) CHECK(maxima[r][c]);
    }
}

TEST_CASE("fuse") {
    const gi::BlockGrid grid(gi::CropSpec{Corner::TopLeft, 0, 0, 100, 120}, kPeriod);
    SUBCASE("null case") {
        const std::vector<gi::CropDetection> none{{grid, {}}, {grid, {}}};
        const auto f = gi::fuse(none, 100, 120, gi::CannyParams{});
        CHECK(f.filled.population() == 0);
        CHECK(f.edges.population() == 0);
    }
    SUBCASE("single block") {
        const std::vector<gi::CropDetection> one{{grid, {6}}};
        const auto f = gi::fuse(one, 100, 120, gi::CannyParams{});
        CHECK(f.filled.population() == 25 * 30);
        CHECK(count_in(f.filled, grid.block_rect(6)) == 25 * 30);
        CHECK(f.edges == gi::canny_edges(f.filled.to_image(255.0), gi::CannyParams{}));
        CHECK(oracle::components8(f.edges) == 1);
    }
    SUBCASE("adjacent blocks across crops form one region") {
        const gi::BlockGrid other(gi::CropSpec{Corner::BottomRight, 0, 0, 100, 120}, kPeriod);
        const std::vector<gi::CropDetection> dets{{grid, {6, 7}}, {other, {6, 7}}};
        const auto f = gi::fuse(dets, 100, 120, gi::CannyParams{});
        CHECK(count_in(f.filled, grid.block_rect(6)) == 750);
        CHECK(count_in(f.filled, grid.block_rect(7)) == 750);
        CHECK(f.filled.population() == 1500);
        CHECK(oracle::components8(f.edges) == 1);
    }
}

TEST_CASE("overlay burns edges into a copy") {
    std::mt19937_64 rng(2);
    const gi::GrayImage base = oracle::random_image(rng, 20, 20, 0.0, 200.0);
    CHECK(gi::overlay(base, DefectMask(20, 20)) == base);

    DefectMask all(20, 20);
    for (std::size_t r = 0; r < 20; ++r)
        for (std::size_t c = 0; c < 20; ++c) all.set(r, c);
    CHECK(gi::overlay(base, all) == gi::GrayImage(20, 20, gi::kMaxIntensity));

    const DefectMask contour = outline(20, 20, {4, 5, 8, 9});
    const gi::GrayImage out = gi::overlay(base, contour);
    std::size_t diffs = 0;
    for (std::size_t r = 0; r < 20; ++r)
        for (std::size_t c = 0; c < 20; ++c) {
            diffs += out(r, c) != base(r, c);
            if (!contour(r, c)) CHECK(out(r, c) == base(r, c));
        }
    CHECK(diffs == contour.population());

    CHECK_THROWS_AS(gi::overlay(base, DefectMask(20, 21)), gi::InvalidArgument);
}
