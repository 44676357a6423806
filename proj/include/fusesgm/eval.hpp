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

#ifndef FUSESGM_EVAL_HPP
#define FUSESGM_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fusesgm/image.hpp"

namespace fusesgm {

struct EvalOptions {
    double threshold_px = 3.0;    // error when |est - gt| >= threshold
    bool relative_clause = false; // additionally require error >= 5% of gt
};

/// Error counters for one frame; percentages derive from the raw counts so
/// multi-frame results pool pixel-weighted.
struct FrameStats {
    std::string frame_id;
    std::int64_t gt_valid = 0;
    std::int64_t est_valid_on_gt = 0;
    std::int64_t covered_bad = 0;
    std::int64_t total_bad = 0;

    double coverage_pct() const
    {
        return gt_valid ? 100.0 * est_valid_on_gt / gt_valid : 0.0;
    }
    double covered_error_pct() const
    {
        return est_valid_on_gt ? 100.0 * covered_bad / est_valid_on_gt : 0.0;
    }
    double total_error_pct() const
    {
        return gt_valid ? 100.0 * total_bad / gt_valid : 0.0;
    }
};

struct EvalReport {
    std::vector<FrameStats> frames;

    /// Pixel-weighted pool over all frames.
    FrameStats pooled() const;

    /// One row per frame plus a pooled footer row.
    void write_csv(const std::string& path) const;
};

struct InterpolationResult {
    DenseDisparityMap map;
    bool fully_invalid = false;
};

/// Fills invalid pixels per row with the smaller (more distant) of the two
/// bounding valid disparities; runs touching a border take the single
/// available bound. Rows without any valid pixel copy the nearest filled
/// row below, then above. A fully invalid map is returned unchanged with
/// the warning flag set.
InterpolationResult background_interpolate(const DenseDisparityMap& map);

/// Coverage and 3-px error rates of an estimate against ground truth,
/// restricted to pixels with valid ground truth. The total error rate is
/// computed after background interpolation of the estimate.
FrameStats evaluate(const DenseDisparityMap& est, const DenseDisparityMap& gt,
                    const EvalOptions& opts = {}, const std::string& frame_id = "");

/// |est - gt| clamped at 8 px, scaled by 32; zero where either is invalid.
GrayImage render_error_map(const DenseDisparityMap& est, const DenseDisparityMap& gt);

}  // namespace fusesgm

#endif  // FUSESGM_EVAL_HPP
