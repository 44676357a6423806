/*
Copyright 2026 The fusesgm Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <random>
#include <vector>

#include "fusesgm/eval.hpp"

using namespace fusesgm;

namespace {

DenseValue px(double pixels)
{
    return DenseValue::from_fixed(static_cast<std::int32_t>(round_half_up(pixels * 256)));
}

// Reference single-row interpolation, written as the plain scan it is.
std::vector<DenseValue> interpolate_row_oracle(const std::vector<DenseValue>& row)
{
    const int w = static_cast<int>(row.size());
    std::vector<DenseValue> out = row;
    int prev = -1;
    for (int x = 0; x < w; ++x) {
        if (!row[x].valid())
            continue;
        if (prev < 0) {
            for (int g = 0; g < x; ++g)
                out[g] = row[x];
        } else {
            const auto fill = DenseValue::from_fixed(
                std::min(row[prev].fixed(), row[x].fixed()));
            for (int g = prev + 1; g < x; ++g)
                out[g] = fill;
        }
        prev = x;
    }
    if (prev >= 0)
        for (int g = prev + 1; g < w; ++g)
            out[g] = row[prev];
    return out;
}

}  // namespace

TEST_SUITE("eval")
{
    TEST_CASE("interior gaps fill with the smaller boundary")
    {
        DenseDisparityMap map(4, 1);
        map.set(0, 0, px(5));
        map.set(3, 0, px(9));
        const auto result = background_interpolate(map);
        CHECK(!result.fully_invalid);
        CHECK(result.map.at(0, 0) == px(5));
        CHECK(result.map.at(1, 0) == px(5));
        CHECK(result.map.at(2, 0) == px(5));
        CHECK(result.map.at(3, 0) == px(9));
    }

    TEST_CASE("border runs take the single available boundary")
    {
        DenseDisparityMap map(2, 1);
        map.set(1, 0, px(7));
        const auto result = background_interpolate(map);
        CHECK(result.map.at(0, 0) == px(7));
        CHECK(result.map.at(1, 0) == px(7));
    }

    TEST_CASE("a checkerboard matches the scanline oracle")
    {
        std::mt19937 rng(5);
        DenseDisparityMap map(17, 9);
        for (int y = 0; y < 9; ++y)
            for (int x = 0; x < 17; ++x)
                if ((x + y) % 2 == 0)
                    map.set(x, y, px(static_cast<double>(1 + rng() % 30)));

        const auto result = background_interpolate(map);
        for (int y = 0; y < 9; ++y) {
            std::vector<DenseValue> row(17);
            for (int x = 0; x < 17; ++x)
                row[x] = map.at(x, y);
            const auto oracle = interpolate_row_oracle(row);
            for (int x = 0; x < 17; ++x)
                CHECK(result.map.at(x, y) == oracle[x]);
        }
    }

    TEST_CASE("empty rows copy the nearest filled row below, then above")
    {
        DenseDisparityMap map(3, 4);
        map.set(1, 2, px(6));  // only row 2 has data
        const auto result = background_interpolate(map);
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 3; ++x)
                CHECK(result.map.at(x, y) == px(6));
    }

    TEST_CASE("one valid pixel is enough to fill the whole map")
    {
        DenseDisparityMap map(5, 5);
        map.set(2, 3, px(4));
        const auto result = background_interpolate(map);
        CHECK(result.map.valid_count() == 25);
    }

    TEST_CASE("a fully invalid map comes back unchanged and flagged")
    {
        const DenseDisparityMap map(6, 4);
        const auto result = background_interpolate(map);
        CHECK(result.fully_invalid);
        CHECK(result.map == map);
    }

    TEST_CASE("a perfect estimate scores 100 / 0 / 0")
    {
        DenseDisparityMap gt(8, 8);
        std::mt19937 rng(7);
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x)
                gt.set(x, y, px(static_cast<double>(1 + rng() % 40)));
        const FrameStats stats = evaluate(gt, gt);
        CHECK(stats.coverage_pct() == doctest::Approx(100.0));
        CHECK(stats.covered_error_pct() == doctest::Approx(0.0));
        CHECK(stats.total_error_pct() == doctest::Approx(0.0));
    }

    TEST_CASE("an exact 3 px offset counts as error everywhere")
    {
        DenseDisparityMap gt(8, 4), est(8, 4);
        for (int y = 0; y < 4; ++y) {
            for (int x = 0; x < 8; ++x) {
                gt.set(x, y, px(10));
                est.set(x, y, px(13));  // threshold is >= 3
            }
        }
        const FrameStats stats = evaluate(est, gt);
        CHECK(stats.covered_error_pct() == doctest::Approx(100.0));
        CHECK(stats.total_error_pct() == doctest::Approx(100.0));

        // one step inside the threshold is clean
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 8; ++x)
                est.set(x, y, DenseValue::from_fixed(px(13).fixed() - 1));
        CHECK(evaluate(est, gt).covered_error_pct() == doctest::Approx(0.0));
    }

    TEST_CASE("the relative clause forgives large far-field values")
    {
        DenseDisparityMap gt(1, 1), est(1, 1);
        gt.set(0, 0, px(100));
        est.set(0, 0, px(104));  // 4 px but only 4% of gt
        EvalOptions opts;
        CHECK(evaluate(est, gt, opts).covered_bad == 1);
        opts.relative_clause = true;
        CHECK(evaluate(est, gt, opts).covered_bad == 0);
    }

    TEST_CASE("coverage counts only the valid-gt intersection")
    {
        DenseDisparityMap gt(4, 1), est(4, 1);
        gt.set(0, 0, px(5));
        gt.set(1, 0, px(5));
        est.set(1, 0, px(5));
        est.set(3, 0, px(9));  // gt invalid here: ignored
        const FrameStats stats = evaluate(est, gt);
        CHECK(stats.gt_valid == 2);
        CHECK(stats.est_valid_on_gt == 1);
        CHECK(stats.coverage_pct() == doctest::Approx(50.0));
    }

    TEST_CASE("ground truth without valid pixels errors")
    {
        const DenseDisparityMap gt(4, 4), est(4, 4);
        CHECK_THROWS_AS(evaluate(est, gt), std::invalid_argument);
    }

    TEST_CASE("replacing near-correct estimates by gt changes nothing")
    {
        std::mt19937 rng(11);
        DenseDisparityMap gt(12, 12), est(12, 12);
        for (int y = 0; y < 12; ++y) {
            for (int x = 0; x < 12; ++x) {
                gt.set(x, y, px(static_cast<double>(1 + rng() % 30)));
                if (rng() % 4 != 0)
                    est.set(x, y, px(static_cast<double>(1 + rng() % 30)));
            }
        }
        DenseDisparityMap snapped = est;
        for (int y = 0; y < 12; ++y)
            for (int x = 0; x < 12; ++x)
                if (est.at(x, y).valid() &&
                    std::abs(est.at(x, y).fixed() - gt.at(x, y).fixed()) < 3 * 256)
                    snapped.set(x, y, gt.at(x, y));

        const FrameStats a = evaluate(est, gt);
        const FrameStats b = evaluate(snapped, gt);
        CHECK(a.covered_bad == b.covered_bad);
        CHECK(a.est_valid_on_gt == b.est_valid_on_gt);
    }

    TEST_CASE("pooling weighs frames by pixel count and ignores order")
    {
        FrameStats a{"a", 100, 90, 9, 10};
        FrameStats b{"b", 300, 300, 30, 30};
        EvalReport fwd{{a, b}};
        EvalReport rev{{b, a}};
        CHECK(fwd.pooled().coverage_pct() == doctest::Approx(rev.pooled().coverage_pct()));
        CHECK(fwd.pooled().coverage_pct() == doctest::Approx(100.0 * 390 / 400));
        CHECK(fwd.pooled().covered_error_pct() == doctest::Approx(100.0 * 39 / 390));
        CHECK(fwd.pooled().total_error_pct() == doctest::Approx(100.0 * 40 / 400));
    }

    TEST_CASE("error maps clamp at 8 px and scale by 32")
    {
        DenseDisparityMap gt(3, 1), est(3, 1);
        gt.set(0, 0, px(10));
        est.set(0, 0, px(12));  // 2 px -> 64
        gt.set(1, 0, px(10));
        est.set(1, 0, px(30));  // 20 px -> clamped to 8 px * 32 = 256 -> 255
        const GrayImage err = render_error_map(est, gt);
        CHECK(err.at(0, 0) == 64);
        CHECK(err.at(1, 0) == 255);
        CHECK(err.at(2, 0) == 0);  // both invalid
    }
}
