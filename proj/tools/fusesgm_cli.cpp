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

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "fusesgm/batch.hpp"
#include "fusesgm/png_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

std::vector<double> parse_value_list(const std::string& csv)
{
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size())
            throw fusesgm::ConfigError("sweep: bad value '" + item + "'");
        values.push_back(v);
    }
    return values;
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace fusesgm;

    CLI::App app{"Stereo-LiDAR disparity fusion (semi-global matching with a "
                 "disparity-matching cost, semidensification and a three-view "
                 "consistency check)"};

    std::string left, right, variant_str, config_path, out_dir, report_path;
    std::string sparse, velodyne, calib, gt;
    std::vector<std::string> sweep_args;
    int dmax = 0;
    int subsample = 1;
    bool error_maps = false;

    app.add_option("--left", left, "Left (base) image PNG, or a directory of frames")->required();
    app.add_option("--right", right, "Right (matching) image PNG, or a directory")->required();
    app.add_option("--sparse", sparse, "Sparse disparity PNG (16-bit, x256), or a directory");
    app.add_option("--velodyne", velodyne, "Velodyne .bin point cloud, or a directory");
    app.add_option("--calib", calib, "KITTI calibration text file, or a directory");
    app.add_option("--variant", variant_str, "Pipeline variant: sgm, dsgm or sdsgm");
    app.add_option("--gt", gt, "Ground-truth disparity PNG, or a directory");
    app.add_option("--out-dir", out_dir, "Directory for disparity and error-map PNGs");
    app.add_option("--config", config_path, "key = value parameter file");
    app.add_option("--dmax", dmax, "Disparity search range (positive multiple of 8)");
    app.add_option("--sweep", sweep_args, "Parameter sweep: <param> <v1,v2,...>")
        ->expected(2);
    app.add_option("--report", report_path, "Write the evaluation CSV here");
    app.add_option("--subsample-scans", subsample, "Keep one in N LiDAR scan lines (1, 2 or 4)");
    app.add_flag("--error-maps", error_maps, "Also write |est-gt| error maps (needs --gt)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    RunConfig config;
    try {
        if (!config_path.empty())
            load_config_file(config, config_path);
        if (!variant_str.empty()) {
            const auto v = variant_from_string(variant_str);
            if (!v)
                throw ConfigError("unknown variant '" + variant_str + "'");
            config.variant = *v;
        }
        if (dmax != 0)
            config.params.dmax = dmax;
        config.params.validate();
        if (subsample != 1 && subsample != 2 && subsample != 4)
            throw ConfigError("--subsample-scans must be 1, 2 or 4");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    }

    try {
        const auto opt = [](const std::string& s) {
            return s.empty() ? std::optional<std::string>() : std::optional<std::string>(s);
        };
        const auto frames =
            discover_frames(left, right, opt(sparse), opt(velodyne), opt(calib), opt(gt));

        if (!sweep_args.empty()) {
            if (report_path.empty())
                throw ConfigError("--sweep needs --report for its CSV output");
            const auto rows =
                run_sweep(frames, config, sweep_args[0], parse_value_list(sweep_args[1]));
            write_sweep_csv(rows, report_path);
            std::printf("sweep over %s: %zu runs, report written to %s\n",
                        sweep_args[0].c_str(), rows.size(), report_path.c_str());
            return kExitOk;
        }

        BatchOptions options;
        options.out_dir = out_dir;
        options.write_error_maps = error_maps;
        options.print_timing = true;
        options.subsample_scans = subsample;

        const auto start = std::chrono::steady_clock::now();
        const EvalReport report = run_batch(frames, config, options);
        const double wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();

        if (!report.frames.empty()) {
            const FrameStats pooled = report.pooled();
            std::printf("%zu frame(s) (%s): coverage %.2f%%, covered error %.2f%%, "
                        "total error %.2f%%\n",
                        report.frames.size(), variant_name(config.variant),
                        pooled.coverage_pct(), pooled.covered_error_pct(),
                        pooled.total_error_pct());
            if (!report_path.empty())
                report.write_csv(report_path);
        } else {
            std::printf("%zu frame(s) processed (%s), %.1f ms\n", frames.size(),
                        variant_name(config.variant), wall_ms);
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
}
