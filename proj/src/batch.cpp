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

#include "fusesgm/batch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "fusesgm/lidar.hpp"
#include "fusesgm/png_io.hpp"

namespace fusesgm {

namespace fs = std::filesystem;

namespace {

int parse_int(const std::string& key, const std::string& value)
{
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer for " + key + ": '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad number for " + key + ": '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1" || value == "on")
        return true;
    if (value == "false" || value == "0" || value == "off")
        return false;
    throw ConfigError("config: bad boolean for " + key + ": '" + value + "'");
}

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value)
{
    FusionParams& p = config.params;
    if (key == "T_s")
        p.t_s = parse_int(key, value);
    else if (key == "r_s")
        p.r_s = parse_int(key, value);
    else if (key == "P_1")
        p.p1 = parse_int(key, value);
    else if (key == "P_2")
        p.p2 = parse_int(key, value);
    else if (key == "Q_1")
        p.q1 = parse_int(key, value);
    else if (key == "Q_2")
        p.q2 = parse_int(key, value);
    else if (key == "alpha")
        p.alpha = parse_double(key, value);
    else if (key == "T_c")
        p.t_c = parse_int(key, value);
    else if (key == "r_c")
        p.r_c = parse_int(key, value);
    else if (key == "dmax")
        p.dmax = parse_int(key, value);
    else if (key == "census_w")
        p.census_w = parse_int(key, value);
    else if (key == "census_h")
        p.census_h = parse_int(key, value);
    else if (key == "variant") {
        const auto v = variant_from_string(value);
        if (!v)
            throw ConfigError("config: unknown variant '" + value + "'");
        config.variant = *v;
    } else if (key == "error_threshold_px")
        config.eval.threshold_px = parse_double(key, value);
    else if (key == "relative_clause")
        config.eval.relative_clause = parse_bool(key, value);
    else
        throw ConfigError("config: unknown key '" + key + "'");
}

void load_config_file(RunConfig& config, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

namespace {

std::map<std::string, fs::path> list_by_stem(const fs::path& dir, const std::string& ext)
{
    std::map<std::string, fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        if (!ext.empty() && entry.path().extension() != ext)
            continue;
        out[entry.path().stem().string()] = entry.path();
    }
    return out;
}

// Matches a frame id in a file-or-directory argument. Single files apply
// to every frame; directories pair by stem.
std::optional<std::string> resolve(const std::optional<std::string>& arg, const std::string& id,
                                   const std::string& ext, const std::string& what)
{
    if (!arg)
        return std::nullopt;
    const fs::path p(*arg);
    if (fs::is_directory(p)) {
        const auto files = list_by_stem(p, ext);
        const auto it = files.find(id);
        if (it == files.end())
            throw IoError("no " + what + " for frame '" + id + "' in " + *arg);
        return it->second.string();
    }
    return *arg;
}

}  // namespace

std::vector<FrameFiles> discover_frames(const std::string& left, const std::string& right,
                                        const std::optional<std::string>& sparse,
                                        const std::optional<std::string>& velodyne,
                                        const std::optional<std::string>& calib,
                                        const std::optional<std::string>& gt)
{
    std::vector<std::pair<std::string, fs::path>> lefts;
    if (fs::is_directory(left)) {
        for (const auto& [stem, path] : list_by_stem(left, ".png"))
            lefts.emplace_back(stem, path);
    } else {
        if (!fs::exists(left))
            throw IoError("left image not found: " + left);
        lefts.emplace_back(fs::path(left).stem().string(), left);
    }
    if (lefts.empty())
        throw IoError("no left images found in: " + left);

    std::vector<FrameFiles> frames;
    frames.reserve(lefts.size());
    for (const auto& [id, lpath] : lefts) {
        FrameFiles f;
        f.id = id;
        f.left = lpath.string();
        f.right = *resolve(right, id, ".png", "right image");
        f.sparse_png = resolve(sparse, id, ".png", "sparse disparity");
        f.velodyne = resolve(velodyne, id, ".bin", "velodyne scan");
        f.calib = resolve(calib, id, ".txt", "calibration");
        f.gt = resolve(gt, id, ".png", "ground truth");
        frames.push_back(std::move(f));
    }
    return frames;
}

SparseDisparityMap load_sparse_input(const FrameFiles& frame, const FusionParams& params,
                                     int width, int height)
{
    if (frame.sparse_png) {
        SparseDisparityMap map = read_sparse_disparity_png(*frame.sparse_png, params.dmax);
        if (map.width() != width || map.height() != height)
            throw IoError("sparse map dimensions do not match the stereo pair: " +
                          *frame.sparse_png);
        return map;
    }
    if (frame.velodyne) {
        if (!frame.calib)
            throw IoError("velodyne input needs a calibration file (frame '" + frame.id + "')");
        const PointCloud cloud = read_velodyne_bin(*frame.velodyne);
        const CalibrationSet calib = read_kitti_calib(*frame.calib);
        return project_to_sparse(cloud, calib, width, height, params.dmax);
    }
    return SparseDisparityMap(width, height);
}

EvalReport run_batch(const std::vector<FrameFiles>& frames, const RunConfig& config,
                     const BatchOptions& options)
{
    config.params.validate();
    if (!options.out_dir.empty())
        fs::create_directories(options.out_dir);

    EvalReport report;
    for (const FrameFiles& frame : frames) {
        const GrayImage left = read_gray_png(frame.left);
        const GrayImage right = read_gray_png(frame.right);

        SparseDisparityMap sparse = [&] {
            if (frame.velodyne && options.subsample_scans != 1) {
                if (!frame.calib)
                    throw IoError("velodyne input needs a calibration file (frame '" + frame.id + "')");
                const PointCloud cloud =
                    subsample_scanlines(read_velodyne_bin(*frame.velodyne), options.subsample_scans);
                return project_to_sparse(cloud, read_kitti_calib(*frame.calib),
                                         left.width(), left.height(), config.params.dmax);
            }
            return load_sparse_input(frame, config.params, left.width(), left.height());
        }();

        const FrameResult result = run_frame(left, right, sparse, config.params, config.variant);

        if (options.print_timing) {
            const StageTimes& t = result.times;
            std::printf("%s: census %.1f ms, semidensify %.1f ms, cost %.1f ms, "
                        "aggregate %.1f ms, winner %.1f ms, consistency %.1f ms, total %.1f ms\n",
                        frame.id.c_str(), t.census_ms, t.semidensify_ms, t.cost_ms,
                        t.aggregate_ms, t.winner_ms, t.consistency_ms, t.total_ms());
        }

        if (!options.out_dir.empty())
            write_disparity_png(result.disparity,
                                (fs::path(options.out_dir) / (frame.id + "_disp.png")).string());

        if (frame.gt) {
            const DenseDisparityMap gt = read_dense_disparity_png(*frame.gt);
            report.frames.push_back(evaluate(result.disparity, gt, config.eval, frame.id));
            if (options.write_error_maps && !options.out_dir.empty())
                write_gray_png(render_error_map(result.disparity, gt),
                               (fs::path(options.out_dir) / (frame.id + "_err.png")).string());
        }
    }
    return report;
}

std::vector<SweepRow> run_sweep(const std::vector<FrameFiles>& frames, const RunConfig& config,
                                const std::string& parameter, const std::vector<double>& values)
{
    static const std::vector<std::string> kSweepable = {"T_s", "r_s", "Q_1", "Q_2",
                                                        "alpha", "T_c", "r_c"};
    if (std::find(kSweepable.begin(), kSweepable.end(), parameter) == kSweepable.end())
        throw ConfigError("sweep: parameter must be one of T_s, r_s, Q_1, Q_2, alpha, T_c, r_c");
    if (values.empty())
        throw ConfigError("sweep: empty value list");

    BatchOptions quiet;
    const double baseline = run_batch(frames, config, quiet).pooled().total_error_pct();

    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (const double v : values) {
        RunConfig varied = config;
        if (parameter == "alpha") {
            apply_config_entry(varied, parameter, std::to_string(v));
        } else {
            if (v != std::floor(v))
                throw ConfigError("sweep: " + parameter + " takes integer values");
            apply_config_entry(varied, parameter, std::to_string(static_cast<long long>(v)));
        }
        SweepRow row;
        row.parameter = parameter;
        row.value = v;
        row.pooled = run_batch(frames, varied, quiet).pooled();
        row.relative_total_error =
            baseline > 0 ? row.pooled.total_error_pct() / baseline : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open sweep report for writing: " + path);
    out << "parameter,value,coverage_pct,covered_error_pct,total_error_pct,relative_total_error\n";
    for (const SweepRow& r : rows)
        out << r.parameter << ',' << r.value << ',' << r.pooled.coverage_pct() << ','
            << r.pooled.covered_error_pct() << ',' << r.pooled.total_error_pct() << ','
            << r.relative_total_error << '\n';
}

}  // namespace fusesgm
