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

#ifndef FUSESGM_LIDAR_HPP
#define FUSESGM_LIDAR_HPP

#include <array>
#include <string>
#include <vector>

#include "fusesgm/image.hpp"

namespace fusesgm {

struct LidarPoint {
    float x = 0;  // forward, meters
    float y = 0;  // left
    float z = 0;  // up
    float reflectance = 0;

    bool operator==(const LidarPoint&) const = default;
};

struct PointCloud {
    std::vector<LidarPoint> points;
};

struct Mat3 {
    std::array<double, 9> m{};  // row-major

    std::array<double, 3> apply(const std::array<double, 3>& v) const
    {
        return {m[0] * v[0] + m[1] * v[1] + m[2] * v[2],
                m[3] * v[0] + m[4] * v[1] + m[5] * v[2],
                m[6] * v[0] + m[7] * v[1] + m[8] * v[2]};
    }

    static Mat3 identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
};

struct Mat34 {
    std::array<double, 12> m{};  // row-major

    std::array<double, 3> apply(const std::array<double, 3>& v) const
    {
        return {m[0] * v[0] + m[1] * v[1] + m[2] * v[2] + m[3],
                m[4] * v[0] + m[5] * v[1] + m[6] * v[2] + m[7],
                m[8] * v[0] + m[9] * v[1] + m[10] * v[2] + m[11]};
    }

    static Mat34 identity() { return {{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0}}; }
};

struct CalibrationSet {
    Mat34 projection = Mat34::identity();     // base camera, pixels
    Mat3 rect_rotation = Mat3::identity();    // rectifying rotation
    Mat34 lidar_to_cam = Mat34::identity();   // rigid transform, meters
    double fb = 1.0;                          // focal length x baseline, pixel*meters

    void validate() const;
};

/// KITTI Velodyne dump: little-endian float32 (x, y, z, reflectance) records.
PointCloud read_velodyne_bin(const std::string& path);

/// KITTI calibration text file with keys P2/P3 (or P0/P1), R0_rect and
/// Tr_velo_to_cam. fb is derived from the projection pair.
CalibrationSet read_kitti_calib(const std::string& path);

/// Projects a point cloud into an aligned sparse disparity map. Points
/// behind the camera, outside the image or outside [0, dmax) are dropped;
/// pixel collisions keep the nearest point (first point on depth ties).
SparseDisparityMap project_to_sparse(const PointCloud& cloud, const CalibrationSet& calib,
                                     int width, int height, int dmax);

struct ScanlineBins {
    double min_elev_deg = -24.9;  // HDL-64E nominal field of view
    double max_elev_deg = 2.0;
    int bins = 64;
};

/// Buckets points into elevation-angle bins and keeps every Nth bin,
/// starting from bin 0. keep_one_in must be 1, 2 or 4.
PointCloud subsample_scanlines(const PointCloud& cloud, int keep_one_in,
                               const ScanlineBins& bins = {});

}  // namespace fusesgm

#endif  // FUSESGM_LIDAR_HPP
