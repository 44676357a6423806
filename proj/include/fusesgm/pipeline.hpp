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

#ifndef FUSESGM_PIPELINE_HPP
#define FUSESGM_PIPELINE_HPP

#include <optional>
#include <string>

#include "fusesgm/image.hpp"

namespace fusesgm {

/// Pipeline variants: plain stereo, fusion without the semidense pre-pass,
/// and the full fusion pipeline.
enum class Variant { kSgm, kDsgm, kSdsgm };

const char* variant_name(Variant v);
std::optional<Variant> variant_from_string(const std::string& name);

struct StageTimes {
    double census_ms = 0;
    double semidensify_ms = 0;
    double cost_ms = 0;
    double aggregate_ms = 0;
    double winner_ms = 0;
    double consistency_ms = 0;

    double total_ms() const
    {
        return census_ms + semidensify_ms + cost_ms + aggregate_ms + winner_ms + consistency_ms;
    }
};

struct FrameResult {
    DenseDisparityMap disparity;     // final, after the consistency check
    DenseDisparityMap raw_winner;    // before the check
    DenseDisparityMap match_winner;  // disparity of the matching view
    SparseDisparityMap prior;        // map fed to the joint cost
    StageTimes times;
};

/// Runs one frame end to end. The sparse map is ignored by the kSgm
/// variant, used directly by kDsgm and semidensified first by kSdsgm; the
/// consistency check always sees the original sparse map.
FrameResult run_frame(const GrayImage& left, const GrayImage& right,
                      const SparseDisparityMap& sparse, const FusionParams& params,
                      Variant variant);

}  // namespace fusesgm

#endif  // FUSESGM_PIPELINE_HPP
