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

#include "fusesgm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace fusesgm {

namespace {

// mt19937_64 is specified bit-exactly; the standard distributions are not,
// so values are derived from the raw stream directly.
class SceneRng {
public:
    explicit SceneRng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi)  // inclusive
    {
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

struct Plane {
    double a = 0, b = 0, c = 0;            // disparity(x, y) = a + b x + c y
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0; // support rect in the base view
    bool background = false;
    double gray = 128, amp = 0;
    double fu1 = 0, fv1 = 0, ph1 = 0;
    double fu2 = 0, fv2 = 0, ph2 = 0;

    double disparity_at(double x, double y) const { return a + b * x + c * y; }

    bool covers(double x, double y) const
    {
        return background || (x >= x0 && x < x1 && y >= y0 && y < y1);
    }

    double texture(double u, double v) const
    {
        if (amp == 0)
            return gray;
        constexpr double tau = 2.0 * std::numbers::pi;
        return gray + 0.5 * amp * (std::sin(tau * (fu1 * u + fv1 * v) + ph1) +
                                   std::sin(tau * (fu2 * u + fv2 * v) + ph2));
    }
};

void draw_texture(SceneRng& rng, Plane& p, bool textured)
{
    p.gray = rng.uniform(70, 185);
    if (!textured) {
        p.amp = 0;
        return;
    }
    p.amp = rng.uniform(35, 60);
    p.fu1 = (rng.uniform() < 0.5 ? -1 : 1) / rng.uniform(6, 14);
    p.fv1 = (rng.uniform() < 0.5 ? -1 : 1) / rng.uniform(12, 30);
    p.ph1 = rng.uniform(0, 2.0 * std::numbers::pi);
    p.fu2 = (rng.uniform() < 0.5 ? -1 : 1) / rng.uniform(9, 22);
    p.fv2 = (rng.uniform() < 0.5 ? -1 : 1) / rng.uniform(7, 16);
    p.ph2 = rng.uniform(0, 2.0 * std::numbers::pi);
}

// Slope drawn within a total variation budget over the plane's support.
void draw_slope(SceneRng& rng, Plane& p, double budget_px, double span_x, double span_y,
                bool slanted)
{
    if (!slanted) {
        p.a = std::floor(p.a + 0.5);  // integer fronto-parallel plane
        return;
    }
    p.b = rng.uniform(-1, 1) * 0.5 * budget_px / span_x;
    p.c = rng.uniform(-1, 1) * 0.5 * budget_px / span_y;
    // keep the band: shift so the rect-center disparity stays at a
    p.a -= p.b * (p.x0 + p.x1) * 0.5 + p.c * (p.y0 + p.y1) * 0.5;
}

std::uint8_t quantize(double v)
{
    return static_cast<std::uint8_t>(std::clamp<std::int64_t>(round_half_up(v), 0, 255));
}

}  // namespace

SynthScene synth_scene(std::uint64_t seed, int width, int height, int dmax,
                       const SynthOptions& options)
{
    if (width < 64 || height < 64)
        throw std::invalid_argument("synth_scene: dims must be >= 64x64");
    if (dmax < 16)
        throw std::invalid_argument("synth_scene: dmax must be >= 16");
    if (options.lidar_row_stride < 1 || options.lidar_col_stride < 1)
        throw std::invalid_argument("synth_scene: lidar strides must be >= 1");

    SceneRng rng(seed);

    int fg_count = rng.uniform_int(options.planes_min, options.planes_max);
    if (options.textureless_background)
        fg_count = std::min(fg_count, 4);  // bounds occlusion of the flat area

    std::vector<Plane> planes;
    planes.reserve(fg_count + 1);

    // Background: far band, full frame.
    {
        Plane bg;
        bg.background = true;
        bg.x0 = 0;
        bg.x1 = width;
        bg.y0 = 0;
        bg.y1 = height;
        bg.a = rng.uniform(2.0, 0.15 * dmax);
        draw_texture(rng, bg, !options.textureless_background);
        draw_slope(rng, bg, 1.5, width, height, rng.uniform() < options.slanted_fraction);
        planes.push_back(bg);
    }

    // Foreground planes occupy disjoint ascending disparity bands, so a
    // later plane is always nearer.
    const double band_lo = 0.35 * dmax;
    const double band_hi = 0.85 * dmax;
    const double slot = (band_hi - band_lo) / fg_count;
    const double max_half = options.textureless_background ? 0.17 : 0.22;
    for (int k = 0; k < fg_count; ++k) {
        Plane p;
        const double half_w = rng.uniform(0.08, max_half) * width;
        const double half_h = rng.uniform(0.08, max_half) * height;
        const double cx = rng.uniform(0.12, 0.88) * width;
        const double cy = rng.uniform(0.12, 0.88) * height;
        p.x0 = std::max(0.0, cx - half_w);
        p.x1 = std::min<double>(width, cx + half_w);
        p.y0 = std::max(0.0, cy - half_h);
        p.y1 = std::min<double>(height, cy + half_h);
        p.a = band_lo + slot * (k + rng.uniform(0.25, 0.65));
        const bool textured = options.textureless_plane_fraction <= 0 ||
                              rng.uniform() >= options.textureless_plane_fraction;
        draw_texture(rng, p, textured);
        draw_slope(rng, p, 0.3 * slot, std::max(1.0, p.x1 - p.x0), std::max(1.0, p.y1 - p.y0),
                   rng.uniform() < options.slanted_fraction);
        planes.push_back(p);
    }

    const auto visible_at = [&](double x, double y) {
        for (int k = static_cast<int>(planes.size()) - 1; k >= 0; --k)
            if (planes[k].covers(x, y))
                return k;
        return 0;
    };

    SynthScene scene{GrayImage(width, height), GrayImage(width, height),
                     DenseDisparityMap(width, height), SparseDisparityMap(width, height)};

    std::vector<double> base_px(static_cast<std::size_t>(width) * height);
    std::vector<double> match_px(static_cast<std::size_t>(width) * height);

    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const int k = visible_at(x, y);
            const Plane& p = planes[k];
            base_px[static_cast<std::size_t>(y) * width + x] = p.texture(x, y);
            const double d = std::clamp(p.disparity_at(x, y), 0.0, dmax - 1.0);
            scene.gt.set(x, y, DenseValue::from_fixed(static_cast<std::int32_t>(
                                   round_half_up(d * DenseValue::kScale))));
        }
    }

    // Match view: walk the epipolar ray back through the planes; the first
    // (nearest) plane whose support contains the un-warped point wins.
    for (int y = 0; y < height; ++y) {
        for (int xr = 0; xr < width; ++xr) {
            for (int k = static_cast<int>(planes.size()) - 1; k >= 0; --k) {
                const Plane& p = planes[k];
                const double xl = (xr + p.a + p.c * y) / (1.0 - p.b);
                if (p.covers(xl, y)) {
                    match_px[static_cast<std::size_t>(y) * width + xr] = p.texture(xl, y);
                    break;
                }
            }
        }
    }

    const int na = options.noise_amplitude;
    for (std::size_t i = 0; i < base_px.size(); ++i)
        scene.base.data()[i] = quantize(base_px[i] + (na > 0 ? rng.uniform_int(-na, na) : 0));
    for (std::size_t i = 0; i < match_px.size(); ++i)
        scene.match.data()[i] = quantize(match_px[i] + (na > 0 ? rng.uniform_int(-na, na) : 0));

    // Scan-line-like prior raster with optional misprojection injection:
    // a corrupted sample reports the surface hidden behind the visible one.
    for (int y = 0; y < height; y += options.lidar_row_stride) {
        for (int x = 0; x < width; x += options.lidar_col_stride) {
            const int k = visible_at(x, y);
            int d = static_cast<int>((scene.gt.at(x, y).fixed() + DenseValue::kScale / 2) /
                                     DenseValue::kScale);
            if (options.misprojection_fraction > 0 &&
                rng.uniform() < options.misprojection_fraction && k != 0) {
                const double behind = std::clamp(planes[0].disparity_at(x, y), 0.0, dmax - 1.0);
                d = static_cast<int>(round_half_up(behind));
            }
            scene.lidar.set(x, y, SparseValue::of(std::min(d, dmax - 1)));
        }
    }
    return scene;
}

}  // namespace fusesgm
