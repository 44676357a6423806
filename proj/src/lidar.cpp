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

#include "fusesgm/lidar.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "fusesgm/png_io.hpp"

namespace fusesgm {

void CalibrationSet::validate() const
{
    // R * R^T must be the identity within 1e-6.
    const Mat3& r = rect_rotation;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double dot = 0;
            for (int k = 0; k < 3; ++k)
                dot += r.m[3 * i + k] * r.m[3 * j + k];
            const double expect = i == j ? 1.0 : 0.0;
            if (std::abs(dot - expect) > 1e-6)
                throw std::invalid_argument("CalibrationSet: rectifying rotation is not orthonormal");
        }
    }
    if (!(fb > 0))
        throw std::invalid_argument("CalibrationSet: fb must be > 0");
}

PointCloud read_velodyne_bin(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open velodyne file: " + path);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() % 16 != 0)
        throw IoError("velodyne file size is not a multiple of 16 bytes: " + path);

    const auto read_f32 = [&](std::size_t off) {
        std::uint32_t u = static_cast<std::uint8_t>(bytes[off]) |
                          static_cast<std::uint8_t>(bytes[off + 1]) << 8 |
                          static_cast<std::uint8_t>(bytes[off + 2]) << 16 |
                          static_cast<std::uint8_t>(bytes[off + 3]) << 24;
        return std::bit_cast<float>(u);
    };

    PointCloud cloud;
    cloud.points.resize(bytes.size() / 16);
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        LidarPoint& p = cloud.points[i];
        p.x = read_f32(16 * i);
        p.y = read_f32(16 * i + 4);
        p.z = read_f32(16 * i + 8);
        p.reflectance = read_f32(16 * i + 12);
    }
    return cloud;
}

CalibrationSet read_kitti_calib(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open calib file: " + path);

    std::vector<std::pair<std::string, std::vector<double>>> entries;
    std::string line;
    while (std::getline(in, line)) {
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            continue;
        std::string key = line.substr(0, colon);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
            key.pop_back();
        std::istringstream vals(line.substr(colon + 1));
        std::vector<double> nums;
        double v;
        while (vals >> v)
            nums.push_back(v);
        entries.emplace_back(key, std::move(nums));
    }

    const auto find = [&](const std::string& key) -> const std::vector<double>* {
        for (const auto& [k, v] : entries)
            if (k == key)
                return &v;
        return nullptr;
    };

    const std::vector<double>* p_base = find("P2");
    const std::vector<double>* p_match = find("P3");
    if (!p_base || !p_match) {
        p_base = find("P0");
        p_match = find("P1");
    }
    const std::vector<double>* r0 = find("R0_rect");
    if (!r0)
        r0 = find("R_rect");
    const std::vector<double>* tr = find("Tr_velo_to_cam");
    if (!tr)
        tr = find("Tr_velo_cam");

    if (!p_base || !p_match || p_base->size() != 12 || p_match->size() != 12)
        throw IoError("calib file needs P2/P3 (or P0/P1) with 12 values: " + path);
    if (!r0 || r0->size() != 9)
        throw IoError("calib file needs R0_rect with 9 values: " + path);
    if (!tr || tr->size() != 12)
        throw IoError("calib file needs Tr_velo_to_cam with 12 values: " + path);

    CalibrationSet calib;
    std::copy(p_base->begin(), p_base->end(), calib.projection.m.begin());
    std::copy(r0->begin(), r0->end(), calib.rect_rotation.m.begin());
    std::copy(tr->begin(), tr->end(), calib.lidar_to_cam.m.begin());
    // P(0,3) = -fx * baseline relative to the reference camera, so the
    // difference of the pair gives fx * (stereo baseline).
    calib.fb = (*p_base)[3] - (*p_match)[3];
    calib.validate();
    return calib;
}

SparseDisparityMap project_to_sparse(const PointCloud& cloud, const CalibrationSet& calib,
                                     int width, int height, int dmax)
{
    calib.validate();
    SparseDisparityMap map(width, height);
    std::vector<double> depth(static_cast<std::size_t>(width) * height,
                              std::numeric_limits<double>::infinity());

    for (const LidarPoint& p : cloud.points) {
        const auto cam = calib.lidar_to_cam.apply({p.x, p.y, p.z});
        const auto rect = calib.rect_rotation.apply(cam);
        if (rect[2] <= 0)
            continue;
        const auto uvw = calib.projection.apply(rect);
        const int px = static_cast<int>(round_half_up(uvw[0] / uvw[2]));
        const int py = static_cast<int>(round_half_up(uvw[1] / uvw[2]));
        if (px < 0 || px >= width || py < 0 || py >= height)
            continue;
        const int d = static_cast<int>(round_half_up(calib.fb / rect[2]));
        if (d < 0 || d >= dmax)
            continue;
        const std::size_t idx = static_cast<std::size_t>(py) * width + px;
        if (rect[2] < depth[idx]) {
            depth[idx] = rect[2];
            map.set(px, py, SparseValue::of(d));
        }
    }
    return map;
}

PointCloud subsample_scanlines(const PointCloud& cloud, int keep_one_in, const ScanlineBins& bins)
{
    if (keep_one_in != 1 && keep_one_in != 2 && keep_one_in != 4)
        throw std::invalid_argument("subsample_scanlines: keep_one_in must be 1, 2 or 4");
    if (keep_one_in == 1)
        return cloud;

    const double lo = bins.min_elev_deg * std::numbers::pi / 180.0;
    const double hi = bins.max_elev_deg * std::numbers::pi / 180.0;
    const double span = hi - lo;

    PointCloud out;
    out.points.reserve(cloud.points.size() / keep_one_in + 1);
    for (const LidarPoint& p : cloud.points) {
        const double range = std::hypot(static_cast<double>(p.x), static_cast<double>(p.y));
        const double elev = std::atan2(static_cast<double>(p.z), range);
        int bin = static_cast<int>(std::floor((elev - lo) / span * bins.bins));
        bin = std::clamp(bin, 0, bins.bins - 1);
        if (bin % keep_one_in == 0)
            out.points.push_back(p);
    }
    return out;
}

}  // namespace fusesgm
