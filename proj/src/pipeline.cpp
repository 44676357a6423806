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

#include "fusesgm/pipeline.hpp"

#include <chrono>

#include "fusesgm/consistency.hpp"
#include "fusesgm/cost.hpp"
#include "fusesgm/semidensify.hpp"
#include "fusesgm/sgm.hpp"

namespace fusesgm {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

const char* variant_name(Variant v)
{
    switch (v) {
        case Variant::kSgm: return "sgm";
        case Variant::kDsgm: return "dsgm";
        case Variant::kSdsgm: return "sdsgm";
    }
    return "?";
}

std::optional<Variant> variant_from_string(const std::string& name)
{
    if (name == "sgm") return Variant::kSgm;
    if (name == "dsgm") return Variant::kDsgm;
    if (name == "sdsgm") return Variant::kSdsgm;
    return std::nullopt;
}

FrameResult run_frame(const GrayImage& left, const GrayImage& right,
                      const SparseDisparityMap& sparse, const FusionParams& params,
                      Variant variant)
{
    params.validate();
    if (left.width() != right.width() || left.height() != right.height())
        throw std::invalid_argument("run_frame: stereo pair dimensions disagree");
    if (sparse.width() != left.width() || sparse.height() != left.height())
        throw std::invalid_argument("run_frame: sparse map does not match the stereo pair");

    StageTimes times;

    auto t = Clock::now();
    const CensusImage census_l = census_transform(left, params.census_w, params.census_h);
    const CensusImage census_r = census_transform(right, params.census_w, params.census_h);
    times.census_ms = ms_since(t);

    // The disparity prior for the joint cost. A plain-SGM run sees an empty
    // prior, which reduces the fused volume to the scaled stereo cost.
    const SparseDisparityMap empty(left.width(), left.height());
    t = Clock::now();
    SparseDisparityMap prior =
        variant == Variant::kSdsgm ? semidensify(census_l, census_r, sparse, params)
        : variant == Variant::kDsgm ? sparse
                                    : empty;
    times.semidensify_ms = ms_since(t);

    t = Clock::now();
    CostVolume fused = [&] {
        const CostVolume hamming = stereo_cost(census_l, census_r, params.dmax);
        return ddc_fuse(hamming, prior, params, kCostScale);
    }();
    times.cost_ms = ms_since(t);

    t = Clock::now();
    const AggregatedVolume agg =
        aggregate(fused, params.p1 * kCostScale, params.p2 * kCostScale, paths::kAll);
    times.aggregate_ms = ms_since(t);
    fused = CostVolume(1, 1, 1);  // release before the winner maps allocate

    t = Clock::now();
    DenseDisparityMap dstar = select_winner(agg, params.dmax >= 2);
    DenseDisparityMap dprime = winner_from_match_view(agg);
    times.winner_ms = ms_since(t);

    // The check always uses the sensor prior, never the semidense one.
    t = Clock::now();
    DenseDisparityMap final_map = consistency_check(
        dstar, dprime, variant == Variant::kSgm ? empty : sparse, params,
        CheckMode::kStereoLidar);
    times.consistency_ms = ms_since(t);

    return FrameResult{std::move(final_map), std::move(dstar), std::move(dprime),
                       std::move(prior), times};
}

}  // namespace fusesgm
