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

// End-to-end acceptance checks. Each criterion prints one PASS/FAIL/SKIP
// line; the process exits non-zero if any criterion fails. The KITTI 141
// checks need the dataset on disk (FUSION_KITTI141_DIR, default
// data/kitti141) and are skipped otherwise.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "fusesgm/batch.hpp"
#include "fusesgm/consistency.hpp"
#include "fusesgm/cost.hpp"
#include "fusesgm/eval.hpp"
#include "fusesgm/lidar.hpp"
#include "fusesgm/parallel.hpp"
#include "fusesgm/pipeline.hpp"
#include "fusesgm/png_io.hpp"
#include "fusesgm/semidensify.hpp"
#include "fusesgm/sgm.hpp"
#include "fusesgm/synth.hpp"

using namespace fusesgm;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail)
{
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!pass)
        ++g_failures;
}

void report_skip(int id, const std::string& name, const std::string& why)
{
    std::printf("[SKIP] criterion %d: %s (%s)\n", id, name.c_str(), why.c_str());
}

std::string fmt(const char* format, ...)
{
    va_list args;
    va_start(args, format);
    char buf[512];
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

DenseDisparityMap sparse_to_dense(const SparseDisparityMap& sparse)
{
    DenseDisparityMap out(sparse.width(), sparse.height());
    for (int y = 0; y < sparse.height(); ++y)
        for (int x = 0; x < sparse.width(); ++x)
            if (sparse.at(x, y).valid())
                out.set(x, y, DenseValue::from_fixed(sparse.at(x, y).get() * DenseValue::kScale));
    return out;
}

GrayImage random_image(int w, int h, std::uint32_t seed)
{
    std::mt19937 rng(seed);
    GrayImage img(w, h);
    for (auto& px : img.data())
        px = static_cast<std::uint8_t>(rng() % 256);
    return img;
}

// Brute-force forward Viterbi of the 1D chain energy: every transition of
// the pairwise term is enumerated directly, O(width * dmax^2).
std::vector<int> viterbi_winners(const CostVolume& vol, int y, int p1, int p2)
{
    const int w = vol.width();
    const int dmax = vol.dmax();
    std::vector<std::int64_t> prev(dmax), cur(dmax);
    std::vector<int> winners(w);
    for (int d = 0; d < dmax; ++d)
        prev[d] = vol.at(0, y, d);
    winners[0] = static_cast<int>(std::min_element(prev.begin(), prev.end()) - prev.begin());
    for (int x = 1; x < w; ++x) {
        for (int d = 0; d < dmax; ++d) {
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            for (int k = 0; k < dmax; ++k) {
                const int diff = std::abs(d - k);
                best = std::min(best, prev[k] + (diff == 0 ? 0 : diff == 1 ? p1 : p2));
            }
            cur[d] = best + vol.at(x, y, d);
        }
        winners[x] = static_cast<int>(std::min_element(cur.begin(), cur.end()) - cur.begin());
        std::swap(prev, cur);
    }
    return winners;
}

// ---------------------------------------------------------------- criteria

void criterion_1_oracle_equivalence()
{
    const auto t0 = Clock::now();
    const int p1 = 10 * kCostScale;
    const int p2 = 120 * kCostScale;
    long checked = 0;
    bool ok = true;

    for (std::uint32_t seed = 0; seed < 100 && ok; ++seed) {
        const GrayImage base = random_image(8, 8, 2000 + 2 * seed);
        const GrayImage match = random_image(8, 8, 2001 + 2 * seed);
        const CostVolume vol = scale_costs(
            stereo_cost(census_transform(base, 5, 5), census_transform(match, 5, 5), 8));
        const DenseDisparityMap winners = select_winner(aggregate(vol, p1, p2, paths::kE), false);
        for (int y = 0; y < 8 && ok; ++y) {
            const auto oracle = viterbi_winners(vol, y, p1, p2);
            for (int x = 0; x < 8; ++x, ++checked) {
                if (winners.at(x, y).fixed() != oracle[x] * DenseValue::kScale) {
                    ok = false;
                    break;
                }
            }
        }
    }
    const double dt = seconds_since(t0);
    report(1, "single-path aggregation equals the scanline Viterbi oracle", ok && dt < 5.0,
           fmt("%ld pixels on 100 random 8x8 frames, %.2f s (budget 5 s)", checked, dt));
}

void criterion_2_sgm_degradation()
{
    FusionParams params;
    params.dmax = 32;
    params.r_c = 8;
    int identical = 0;
    const int frames = 20;
    for (int i = 0; i < frames; ++i) {
        const SynthScene scene = synth_scene(3000 + i, 96, 64, params.dmax);
        const SparseDisparityMap empty(96, 64);
        const FrameResult sgm = run_frame(scene.base, scene.match, empty, params, Variant::kSgm);
        const FrameResult dsgm = run_frame(scene.base, scene.match, empty, params, Variant::kDsgm);
        const FrameResult sdsgm =
            run_frame(scene.base, scene.match, empty, params, Variant::kSdsgm);
        if (sgm.disparity == dsgm.disparity && sgm.disparity == sdsgm.disparity &&
            sgm.raw_winner == dsgm.raw_winner && sgm.raw_winner == sdsgm.raw_winner)
            ++identical;
    }
    report(2, "with an empty prior every variant degrades to pure SGM", identical == frames,
           fmt("%d/%d frames bit-identical", identical, frames));
}

void criterion_3_semidensification_direction()
{
    FusionParams params;
    params.dmax = 32;
    SynthOptions opts;
    opts.misprojection_fraction = 0.05;

    const int scenes = 30;
    int improved = 0;
    for (int i = 0; i < scenes; ++i) {
        const SynthScene scene = synth_scene(4000 + i, 192, 128, params.dmax, opts);
        const CensusImage cb = census_transform(scene.base, params.census_w, params.census_h);
        const CensusImage cm = census_transform(scene.match, params.census_w, params.census_h);
        const SparseDisparityMap semidense = semidensify(cb, cm, scene.lidar, params);

        const FrameStats before = evaluate(sparse_to_dense(scene.lidar), scene.gt);
        const FrameStats after = evaluate(sparse_to_dense(semidense), scene.gt);
        if (after.coverage_pct() > before.coverage_pct() &&
            after.covered_error_pct() < before.covered_error_pct())
            ++improved;
    }
    report(3, "semidensification raises coverage and lowers covered error", improved >= 28,
           fmt("%d/30 scenes improved on both metrics (need >= 28)", improved));
}

void criterion_4_consistency_ordering()
{
    FusionParams params;
    params.dmax = 32;
    params.r_c = 8;
    SynthOptions opts;
    opts.misprojection_fraction = 0.02;

    const int scenes = 30;
    int ordered = 0;
    for (int i = 0; i < scenes; ++i) {
        const SynthScene scene = synth_scene(5000 + i, 192, 128, params.dmax, opts);
        const FrameResult r =
            run_frame(scene.base, scene.match, scene.lidar, params, Variant::kSdsgm);
        const auto stereo = consistency_check(r.raw_winner, r.match_winner, scene.lidar, params,
                                              CheckMode::kStereo);
        const auto lidar = consistency_check(r.raw_winner, r.match_winner, scene.lidar, params,
                                             CheckMode::kCameraLidar);
        const auto both = consistency_check(r.raw_winner, r.match_winner, scene.lidar, params,
                                            CheckMode::kStereoLidar);
        if (stereo.valid_count() <= lidar.valid_count() &&
            lidar.valid_count() <= both.valid_count())
            ++ordered;
    }
    report(4, "consistency-check coverage orders stereo <= camera-LiDAR <= stereo-LiDAR",
           ordered == scenes, fmt("%d/30 scenes ordered (need 30)", ordered));
}

void criterion_5_fusion_benefit()
{
    FusionParams params;
    params.dmax = 32;
    SynthOptions opts;
    opts.textureless_background = true;  // flat area covers well over 20%
    opts.misprojection_fraction = 0.02;

    const int scenes = 30;
    int better = 0;
    for (int i = 0; i < scenes; ++i) {
        const SynthScene scene = synth_scene(6000 + i, 192, 128, params.dmax, opts);
        const FrameResult fused =
            run_frame(scene.base, scene.match, scene.lidar, params, Variant::kSdsgm);
        const FrameResult plain =
            run_frame(scene.base, scene.match, scene.lidar, params, Variant::kSgm);
        const double fused_err = evaluate(fused.disparity, scene.gt).total_error_pct();
        const double plain_err = evaluate(plain.disparity, scene.gt).total_error_pct();
        if (fused_err <= plain_err)
            ++better;
    }
    report(5, "SDSGM total error is at most pure-SGM total error on textureless scenes",
           better >= 28, fmt("%d/30 scenes (need >= 28)", better));
}

std::optional<std::vector<FrameFiles>> kitti141_frames()
{
    const char* env = std::getenv("FUSION_KITTI141_DIR");
    const fs::path root = env ? fs::path(env) : fs::path("data/kitti141");
    if (!fs::is_directory(root))
        return std::nullopt;

    const auto pick = [&](std::initializer_list<const char*> names)
        -> std::optional<std::string> {
        for (const char* n : names)
            if (fs::is_directory(root / n))
                return (root / n).string();
        return std::nullopt;
    };
    const auto left = pick({"left", "image_2", "image_0"});
    const auto right = pick({"right", "image_3", "image_1"});
    const auto gt = pick({"gt", "disp_occ", "disp_occ_0"});
    const auto sparse = pick({"sparse", "disp_lidar"});
    const auto velo = pick({"velodyne"});
    const auto calib = pick({"calib"});
    if (!left || !right || !gt || (!sparse && (!velo || !calib)))
        return std::nullopt;
    try {
        return discover_frames(*left, *right, sparse, velo, calib, gt);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void criterion_6_kitti141()
{
    const auto frames = kitti141_frames();
    if (!frames) {
        report_skip(6, "KITTI 141 reproduction",
                    "dataset not found; set FUSION_KITTI141_DIR or place it in data/kitti141");
        return;
    }
    RunConfig config;  // published defaults: dmax 128, SDSGM
    const auto t0 = Clock::now();
    BatchOptions quiet;
    const FrameStats sdsgm = run_batch(*frames, config, quiet).pooled();
    config.variant = Variant::kDsgm;
    const FrameStats dsgm = run_batch(*frames, config, quiet).pooled();
    const double dt = seconds_since(t0);

    const bool ok = sdsgm.coverage_pct() >= 99.0 && sdsgm.covered_error_pct() <= 3.1 &&
                    sdsgm.total_error_pct() <= 3.3 && dsgm.total_error_pct() <= 3.6;
    report(6, "KITTI 141 error rates", ok,
           fmt("SDSGM coverage %.2f%% (>= 99.0), covered %.2f%% (<= 3.1), total %.2f%% (<= 3.3); "
               "DSGM total %.2f%% (<= 3.6); %zu frames in %.0f s",
               sdsgm.coverage_pct(), sdsgm.covered_error_pct(), sdsgm.total_error_pct(),
               dsgm.total_error_pct(), frames->size(), dt));

    // semidensification effect, only measurable on the real dataset
    FusionParams params;
    EvalReport before, after;
    for (const FrameFiles& frame : *frames) {
        const GrayImage left = read_gray_png(frame.left);
        const GrayImage right = read_gray_png(frame.right);
        const SparseDisparityMap sparse =
            load_sparse_input(frame, params, left.width(), left.height());
        const SparseDisparityMap semidense =
            semidensify(census_transform(left, params.census_w, params.census_h),
                        census_transform(right, params.census_w, params.census_h), sparse, params);
        const DenseDisparityMap gt = read_dense_disparity_png(*frame.gt);
        before.frames.push_back(evaluate(sparse_to_dense(sparse), gt, {}, frame.id));
        after.frames.push_back(evaluate(sparse_to_dense(semidense), gt, {}, frame.id));
    }
    const FrameStats b = before.pooled();
    const FrameStats a = after.pooled();
    const bool semi_ok = std::abs(b.coverage_pct() - 7.3) <= 8.0 &&
                         std::abs(a.coverage_pct() - 28.6) <= 8.0 &&
                         std::abs(b.covered_error_pct() - 4.66) <= 0.8 &&
                         std::abs(a.covered_error_pct() - 4.15) <= 0.8;
    report(6, "KITTI 141 semidensification effect", semi_ok,
           fmt("coverage %.1f%% -> %.1f%% (7.3 -> 28.6 +-8pp), covered error %.2f%% -> %.2f%% "
               "(4.66 -> 4.15 +-0.8pp)",
               b.coverage_pct(), a.coverage_pct(), b.covered_error_pct(), a.covered_error_pct()));
}

void criterion_7_density_trend()
{
    FusionParams params;
    params.dmax = 32;

    const int scenes = 30;
    int monotone = 0;
    for (int i = 0; i < scenes; ++i) {
        double err[3];
        const int strides[3] = {16, 8, 4};  // quarter, half, full
        for (int s = 0; s < 3; ++s) {
            SynthOptions opts;
            opts.misprojection_fraction = 0.05;
            opts.lidar_row_stride = strides[s];
            const SynthScene scene = synth_scene(7000 + i, 192, 128, params.dmax, opts);
            const FrameResult r =
                run_frame(scene.base, scene.match, scene.lidar, params, Variant::kSdsgm);
            err[s] = evaluate(r.disparity, scene.gt).total_error_pct();
        }
        if (err[0] >= err[1] && err[1] >= err[2])
            ++monotone;
    }
    report(7, "total error does not rise as LiDAR density doubles", monotone >= 25,
           fmt("%d/30 scenes monotone quarter >= half >= full (need >= 25)", monotone));
}

void criterion_8_performance()
{
    FusionParams params;  // dmax 128, the published setup
    const SynthScene scene = synth_scene(8000, 1242, 375, params.dmax);

    const auto t0 = Clock::now();
    const FrameResult r =
        run_frame(scene.base, scene.match, scene.lidar, params, Variant::kSdsgm);
    const double dt = seconds_since(t0);

    // The 2 s target assumes 8 cores; scale the budget when fewer exist.
    const int cores = std::min(8, worker_count());
    const double budget = 2.0 * 8.0 / cores;
    report(8, "one KITTI-sized SDSGM frame fits the runtime budget",
           dt <= budget && r.disparity.valid_count() > 0,
           fmt("1242x375, dmax 128: %.2f s on %d worker(s), budget %.1f s (2 s at 8 cores)", dt,
               cores, budget));
}

void criterion_9_io_bit_exactness()
{
    const fs::path dir = fs::temp_directory_path() / "fusesgm_acceptance";
    fs::create_directories(dir);

    // disparity PNG round trip over every encodable value
    DenseDisparityMap map(256, 256);
    int k = 1;
    for (int y = 0; y < 256; ++y)
        for (int x = 0; x < 256 && k <= 65535; ++x)
            map.set(x, y, DenseValue::from_fixed(k++));
    const std::string png = (dir / "roundtrip.png").string();
    write_disparity_png(map, png);
    const bool png_ok = read_dense_disparity_png(png) == map;

    // velodyne fixture with exact binary float values
    const std::string bin = (dir / "points.bin").string();
    {
        std::ofstream out(bin, std::ios::binary);
        const float values[12] = {1.5f, -0.25f, 2.0f, 0.5f, -3.25f, 4.0f,
                                  -1.0f, 0.0f, 0.0f, 0.125f, 64.0f, 1.0f};
        for (const float f : values) {
            const auto u = std::bit_cast<std::uint32_t>(f);
            const char bytes[4] = {static_cast<char>(u & 0xff),
                                   static_cast<char>((u >> 8) & 0xff),
                                   static_cast<char>((u >> 16) & 0xff),
                                   static_cast<char>((u >> 24) & 0xff)};
            out.write(bytes, 4);
        }
    }
    const PointCloud cloud = read_velodyne_bin(bin);
    const bool velo_ok = cloud.points.size() == 3 &&
                         cloud.points[0] == LidarPoint{1.5f, -0.25f, 2.0f, 0.5f} &&
                         cloud.points[1] == LidarPoint{-3.25f, 4.0f, -1.0f, 0.0f} &&
                         cloud.points[2] == LidarPoint{0.0f, 0.125f, 64.0f, 1.0f};

    report(9, "file I/O is bit-exact", png_ok && velo_ok,
           fmt("PNG round trip %s over 65535 values, velodyne fixture %s",
               png_ok ? "lossless" : "LOSSY", velo_ok ? "exact" : "WRONG"));
}

}  // namespace

int main()
{
    std::printf("running acceptance criteria (%d workers)\n", worker_count());
    criterion_1_oracle_equivalence();
    criterion_2_sgm_degradation();
    criterion_3_semidensification_direction();
    criterion_4_consistency_ordering();
    criterion_5_fusion_benefit();
    criterion_6_kitti141();
    criterion_7_density_trend();
    criterion_8_performance();
    criterion_9_io_bit_exactness();

    if (g_failures == 0) {
        std::printf("all criteria passed (skips noted above)\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
