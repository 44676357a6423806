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

#ifndef FUSESGM_CONSISTENCY_HPP
#define FUSESGM_CONSISTENCY_HPP

#include "fusesgm/image.hpp"

namespace fusesgm {

/// Which agreement clauses may keep a disparity.
enum class CheckMode { kStereo, kCameraLidar, kStereoLidar };

/// Three-view consistency filter. A pixel keeps its estimate d* when the
/// matching view agrees (|d* - d'(q_m)| <= 1 at q_m = (x - round(d*), y))
/// or some valid sparse disparity within the (2*r_c+1)^2 window is within
/// T_c of d*; otherwise it becomes invalid. The sparse map must be the
/// original sensor prior, not the semidensified one.
DenseDisparityMap consistency_check(const DenseDisparityMap& dstar,
                                    const DenseDisparityMap& dprime,
                                    const SparseDisparityMap& sparse,
                                    const FusionParams& params,
                                    CheckMode mode = CheckMode::kStereoLidar);

}  // namespace fusesgm

#endif  // FUSESGM_CONSISTENCY_HPP
