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

#ifndef FUSESGM_SEMIDENSIFY_HPP
#define FUSESGM_SEMIDENSIFY_HPP

#include "fusesgm/cost.hpp"
#include "fusesgm/image.hpp"

namespace fusesgm {

/// Spreads sparse prior disparities to pixels where they match well.
///
/// Each pixel considers the distinct valid disparities found in its
/// (2*r_s+1)^2 window and takes the one with the lowest raw Hamming
/// matching cost, provided that cost is below T_s; otherwise the pixel
/// keeps its own input value (possibly invalid). Cost ties break toward
/// the smaller disparity. No spatial smoothing is applied.
SparseDisparityMap semidensify(const CensusImage& base, const CensusImage& match,
                               const SparseDisparityMap& sparse, const FusionParams& params);

}  // namespace fusesgm

#endif  // FUSESGM_SEMIDENSIFY_HPP
