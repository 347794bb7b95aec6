#pragma once

#include "pursuit/detector.hpp"
#include "pursuit/geometry.hpp"
#include "pursuit/simulator.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pursuit {

/// One `key = value` line. Blank lines and `#` comments are skipped.
struct KeyValue {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

[[nodiscard]] std::vector<KeyValue> parse_key_values(std::istream& in);

/// Scenario description, one setting per line:
///
///     targets = 20                 # study layout (6..24, even)
///     target = 0 A 130 2.5 0 cw    # or custom targets: id label radius period phase cw|ccw [cx cy]
///     screen = 1920 1080
///     duration = 2.5               # seconds
///     sample_rate = 60
///     seed = 1
///     pursue = 3 0 2.5             # target id (or none), start s, end s; repeatable
///     gain = 1
///     latency_ms = 0
///     noise_sigma = 0
///     scale = 1.0 1.0
///     offset = 0 0
///
/// Errors are ParseError carrying the offending line.
[[nodiscard]] Scenario parse_scenario(std::istream& in);
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);
void write_scenario(std::ostream& out, const Scenario& scenario);

/// Overrides detector parameters by name: method, window_size, smoothing_k,
/// min_duration, threshold (one value for correlation, `lo hi` for slope),
/// slope_lo, slope_hi, skip_samples, sample_rate, smooth_targets.
void apply_config(DetectorConfig& config, const std::vector<KeyValue>& entries);
[[nodiscard]] std::vector<KeyValue> load_key_values(const std::filesystem::path& path);

/// Gaze log CSV with header `t_ms,gx_px,gy_px`. Reading rejects malformed
/// rows and non-increasing timestamps with a ParseError naming the line.
void write_gaze_log(std::ostream& out, const std::vector<GazeSample>& samples);
[[nodiscard]] std::vector<GazeSample> read_gaze_log(std::istream& in);

} // namespace pursuit
