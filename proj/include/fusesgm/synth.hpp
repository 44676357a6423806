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

#ifndef FUSESGM_SYNTH_HPP
#define FUSESGM_SYNTH_HPP

#include <cstdint>

#include "fusesgm/image.hpp"

namespace fusesgm {

struct SynthOptions {
    int planes_min = 3;
    int planes_max = 6;
    double slanted_fraction = 0.3;        // remaining planes are fronto-parallel
    double misprojection_fraction = 0.0;  // prior samples swapped to the occluded surface
    bool textureless_background = false;  // keeps >= 20% of the frame untextured
    double textureless_plane_fraction = 0.0;  // chance a foreground plane is flat
    int lidar_row_stride = 4;
    int lidar_col_stride = 2;
    int noise_amplitude = 2;              // uncorrelated per-view sensor noise
};

struct SynthScene {
    GrayImage base;
    GrayImage match;
    DenseDisparityMap gt;      // dense, every pixel valid
    SparseDisparityMap lidar;  // gt sampled on a scan-line-like raster
};

/// Deterministic random scene of textured fronto-parallel and slanted
/// planes, composited back to front. The match image is synthesized by
/// inverse-disparity warping with exact occlusion handling, so thin
/// foreground planes occlude and disocclude correctly. Requires
/// dims >= 64x64 and dmax >= 16.
SynthScene synth_scene(std::uint64_t seed, int width, int height, int dmax,
                       const SynthOptions& options = {});

}  // namespace fusesgm

#endif  // FUSESGM_SYNTH_HPP
