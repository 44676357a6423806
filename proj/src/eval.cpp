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

#include "fusesgm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

namespace fusesgm {

FrameStats EvalReport::pooled() const
{
    FrameStats pool;
    pool.frame_id = "pooled";
    for (const FrameStats& f : frames) {
        pool.gt_valid += f.gt_valid;
        pool.est_valid_on_gt += f.est_valid_on_gt;
        pool.covered_bad += f.covered_bad;
        pool.total_bad += f.total_bad;
    }
    return pool;
}

void EvalReport::write_csv(const std::string& path) const
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open report for writing: " + path);
    out << "frame_id,coverage_pct,covered_error_pct,total_error_pct\n";
    const auto row = [&](const FrameStats& f) {
        out << f.frame_id << ',' << f.coverage_pct() << ',' << f.covered_error_pct() << ','
            << f.total_error_pct() << '\n';
    };
    for (const FrameStats& f : frames)
        row(f);
    row(pooled());
}

InterpolationResult background_interpolate(const DenseDisparityMap& map)
{
    const int w = map.width();
    const int h = map.height();
    InterpolationResult result{map, false};
    DenseDisparityMap& out = result.map;

    std::vector<int> empty_rows;
    for (int y = 0; y < h; ++y) {
        int first_valid = -1;
        int last_valid = -1;
        for (int x = 0; x < w; ++x) {
            if (!map.at(x, y).valid())
                continue;
            if (first_valid < 0)
                first_valid = x;
            if (last_valid >= 0 && x > last_valid + 1) {
                // interior gap: smaller bound is the farther surface
                const std::int32_t fill = std::min(map.at(last_valid, y).fixed(),
                                                   map.at(x, y).fixed());
                for (int g = last_valid + 1; g < x; ++g)
                    out.set(g, y, DenseValue::from_fixed(fill));
            }
            last_valid = x;
        }
        if (first_valid < 0) {
            empty_rows.push_back(y);
            continue;
        }
        for (int x = 0; x < first_valid; ++x)
            out.set(x, y, map.at(first_valid, y));
        for (int x = last_valid + 1; x < w; ++x)
            out.set(x, y, map.at(last_valid, y));
    }

    if (static_cast<int>(empty_rows.size()) == h) {
        result.fully_invalid = true;
        return result;
    }

    std::vector<bool> is_empty(h, false);
    for (int y : empty_rows)
        is_empty[y] = true;
    for (int y : empty_rows) {
        int src = -1;
        for (int yy = y + 1; yy < h; ++yy) {
            if (!is_empty[yy]) {
                src = yy;
                break;
            }
        }
        if (src < 0) {
            for (int yy = y - 1; yy >= 0; --yy) {
                if (!is_empty[yy]) {
                    src = yy;
                    break;
                }
            }
        }
        for (int x = 0; x < w; ++x)
            out.set(x, y, out.at(x, src));
    }
    return result;
}

namespace {

inline bool is_bad(std::int32_t est_fixed, std::int32_t gt_fixed, std::int32_t thr_fixed,
                   bool relative_clause)
{
    const std::int32_t err = std::abs(est_fixed - gt_fixed);
    if (err < thr_fixed)
        return false;
    if (relative_clause && 20 * err < gt_fixed)  // err / gt < 5%
        return false;
    return true;
}

}  // namespace

FrameStats evaluate(const DenseDisparityMap& est, const DenseDisparityMap& gt,
                    const EvalOptions& opts, const std::string& frame_id)
{
    if (est.width() != gt.width() || est.height() != gt.height())
        throw std::invalid_argument("evaluate: estimate and ground truth dimensions disagree");

    FrameStats stats;
    stats.frame_id = frame_id;

    const std::int32_t thr_fixed =
        static_cast<std::int32_t>(round_half_up(opts.threshold_px * DenseValue::kScale));

    for (int y = 0; y < gt.height(); ++y) {
        for (int x = 0; x < gt.width(); ++x) {
            const DenseValue g = gt.at(x, y);
            if (!g.valid())
                continue;
            ++stats.gt_valid;
            const DenseValue e = est.at(x, y);
            if (e.valid()) {
                ++stats.est_valid_on_gt;
                if (is_bad(e.fixed(), g.fixed(), thr_fixed, opts.relative_clause))
                    ++stats.covered_bad;
            }
        }
    }
    if (stats.gt_valid == 0)
        throw std::invalid_argument("evaluate: ground truth has no valid pixels");

    const DenseDisparityMap filled = background_interpolate(est).map;
    for (int y = 0; y < gt.height(); ++y) {
        for (int x = 0; x < gt.width(); ++x) {
            const DenseValue g = gt.at(x, y);
            if (!g.valid())
                continue;
            const DenseValue e = filled.at(x, y);
            if (!e.valid() || is_bad(e.fixed(), g.fixed(), thr_fixed, opts.relative_clause))
                ++stats.total_bad;
        }
    }
    return stats;
}

GrayImage render_error_map(const DenseDisparityMap& est, const DenseDisparityMap& gt)
{
    if (est.width() != gt.width() || est.height() != gt.height())
        throw std::invalid_argument("render_error_map: dimensions disagree");
    GrayImage img(est.width(), est.height(), 0);
    for (int y = 0; y < est.height(); ++y) {
        for (int x = 0; x < est.width(); ++x) {
            const DenseValue e = est.at(x, y);
            const DenseValue g = gt.at(x, y);
            if (!e.valid() || !g.valid())
                continue;
            const double err_px = std::abs(e.fixed() - g.fixed()) / double(DenseValue::kScale);
            const auto v = round_half_up(std::min(err_px, 8.0) * 32.0);
            img.at(x, y) = static_cast<std::uint8_t>(std::min<std::int64_t>(v, 255));
        }
    }
    return img;
}

}  // namespace fusesgm
