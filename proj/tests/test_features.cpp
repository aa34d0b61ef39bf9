#include "gi/error.hpp"
#include "gi/features.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using gi::Corner;
using gi::Periodicity;

TEST_CASE("zero gradient gives zero energies") {
    const gi::BlockGrid grid(gi::CropSpec{Corner::TopLeft, 0, 0, 50, 60}, Periodicity{25, 30});
    const auto e = gi::block_energies(gi::GrayImage(50, 60), grid);
    CHECK(e == std::vector<double>(4, 0.0));
}

TEST_CASE("single block direct sum") {
    gi::GrayImage g(50, 60);
    // Block 2 spans rows 0..24, cols 30..59.
    g(0, 30) = 1.0;
    g(3, 40) = 2.0;
    g(24, 59) = 3.0;
    const gi::BlockGrid grid(gi::CropSpec{Corner::TopLeft, 0, 0, 50, 60}, Periodicity{25, 30});
    CHECK(gi::block_energies(g, grid) == std::vector<double>{0.0, 6.0, 0.0, 0.0});
}

TEST_CASE("energies match a per-pixel accumulation and partition the total") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const gi::GrayImage g = gi::gradient_space(oracle::random_image(rng, 57, 64));
        const auto crops = gi::four_crops(57, 64, Periodicity{25, 30});
        for (const auto& crop : crops) {
            const gi::BlockGrid grid(crop, Periodicity{25, 30});
            const auto e = gi::block_energies(g, grid);
            std::vector<double> ref(grid.block_count(), 0.0);
            double total = 0.0;
            for (std::size_t r = crop.row_offset; r < crop.row_offset + crop.height; ++r)
                for (std::size_t c = crop.col_offset; c < crop.col_offset + crop.width; ++c) {
                    const std::size_t br = (r - crop.row_offset) / 25, bc = (c - crop.col_offset) / 30;
                    ref[br * 2 + bc] += g(r, c);
                    total += g(r, c);
                }
            CHECK(e == ref);
            const double sum = std::accumulate(e.begin(), e.end(), 0.0);
            CHECK(sum == doctest::Approx(total).epsilon(1e-6));
            for (double v : e) CHECK(v >= 0.0);
        }
    }
}

TEST_CASE("scaling the source scales energies") {
    std::mt19937_64 rng(3);
    const gi::GrayImage img = oracle::random_image(rng, 50, 60);
    gi::GrayImage scaled = img;
    for (double& v : scaled.pixels()) v *= 3.5;
    const gi::BlockGrid grid(gi::CropSpec{Corner::TopLeft, 0, 0, 50, 60}, Periodicity{25, 30});
    const auto e = gi::block_energies(gi::gradient_space(img), grid);
    const auto es = gi::block_energies(gi::gradient_space(scaled), grid);
    for (std::size_t k = 0; k < e.size(); ++k) CHECK(es[k] == doctest::Approx(3.5 * e[k]).epsilon(1e-9));
}

TEST_CASE("permuting blocks permutes energies") {
    std::mt19937_64 rng(8);
    const gi::GrayImage g = oracle::random_image(rng, 50, 60, 0.0, 4.0);
    // Swap blocks 1 and 4.
    gi::GrayImage swapped = g;
    for (std::size_t r = 0; r < 25; ++r)
        for (std::size_t c = 0; c < 30; ++c) std::swap(swapped(r, c), swapped(r + 25, c + 30));
    const gi::BlockGrid grid(gi::CropSpec{Corner::TopLeft, 0, 0, 50, 60}, Periodicity{25, 30});
    const auto e = gi::block_energies(g, grid);
    const auto es = gi::block_energies(swapped, grid);
    CHECK(es[0] == e[3]);
    CHECK(es[3] == e[0]);
    CHECK(es[1] == e[1]);
    CHECK(es[2] == e[2]);
}

TEST_CASE("crop outside the gradient image is rejected") {
    const gi::BlockGrid grid(gi::CropSpec{Corner::BottomRight, 5, 5, 50, 60}, Periodicity{25, 30});
    CHECK_THROWS_AS(gi::block_energies(gi::GrayImage(50, 60), grid), gi::InvalidArgument);
}
