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

#ifndef FUSESGM_BATCH_HPP
#define FUSESGM_BATCH_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fusesgm/eval.hpp"
#include "fusesgm/image.hpp"
#include "fusesgm/pipeline.hpp"

namespace fusesgm {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    FusionParams params;
    Variant variant = Variant::kSdsgm;
    EvalOptions eval;
};

/// Applies one `key = value` entry; keys use the published parameter names
/// (T_s, r_s, P_1, P_2, Q_1, Q_2, alpha, T_c, r_c, dmax, census_w,
/// census_h, variant, error_threshold_px, relative_clause).
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

/// Loads a `key = value` config file; '#' starts a comment.
void load_config_file(RunConfig& config, const std::string& path);

/// One frame's input files. Sparse input comes either from a disparity PNG
/// or from a Velodyne scan plus calibration.
struct FrameFiles {
    std::string id;
    std::string left;
    std::string right;
    std::optional<std::string> sparse_png;
    std::optional<std::string> velodyne;
    std::optional<std::string> calib;
    std::optional<std::string> gt;
};

/// Resolves frames from file-or-directory arguments. A directory is paired
/// by file stem against the left image listing.
std::vector<FrameFiles> discover_frames(const std::string& left, const std::string& right,
                                        const std::optional<std::string>& sparse,
                                        const std::optional<std::string>& velodyne,
                                        const std::optional<std::string>& calib,
                                        const std::optional<std::string>& gt);

/// Loads the sparse prior for a frame, projecting the point cloud when the
/// frame carries a Velodyne scan. Frames with neither source get an empty map.
SparseDisparityMap load_sparse_input(const FrameFiles& frame, const FusionParams& params,
                                     int width, int height);

struct BatchOptions {
    std::string out_dir;           // empty: write nothing
    bool write_error_maps = false; // needs ground truth
    bool print_timing = false;
    int subsample_scans = 1;       // 1, 2 or 4; applies to Velodyne input
};

/// Runs every frame through the pipeline; frames with ground truth
/// contribute an EvalReport row.
EvalReport run_batch(const std::vector<FrameFiles>& frames, const RunConfig& config,
                     const BatchOptions& options);

struct SweepRow {
    std::string parameter;
    double value = 0;
    FrameStats pooled;
    double relative_total_error = 0;  // against the unmodified config
};

/// Re-evaluates the batch once per parameter value. The parameter must be
/// one of T_s, r_s, Q_1, Q_2, alpha, T_c, r_c; frames need ground truth.
std::vector<SweepRow> run_sweep(const std::vector<FrameFiles>& frames, const RunConfig& config,
                                const std::string& parameter, const std::vector<double>& values);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace fusesgm

#endif  // FUSESGM_BATCH_HPP
