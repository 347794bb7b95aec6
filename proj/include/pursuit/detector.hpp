#pragma once

#include "pursuit/geometry.hpp"
#include "pursuit/moving_average.hpp"
#include "pursuit/window_stats.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pursuit {

enum class Method { correlation, slope };

[[nodiscard]] std::string_view to_string(Method m) noexcept;
/// Throws ConfigError for anything but "slope" or "correlation".
[[nodiscard]] Method parse_method(std::string_view text);

/// Detection parameters. `defaults(method)` gives the values used in the
/// user study: window 30 for both methods, smoothing 0 / 20, minimum
/// duration 20 / 15, threshold r >= 0.8 / slope in [0.77, 1.3], skip 30.
struct DetectorConfig {
    Method method = Method::slope;
    std::size_t window_size = 30;
    std::size_t smoothing_k = 20;
    std::size_t min_duration = 15;
    double correlation_threshold = 0.8;
    double slope_lo = 0.77;
    double slope_hi = 1.3;
    std::size_t skip_samples = 30;
    double sample_rate = 60.0;
    /// Run target coordinates through the same moving average as the gaze.
    /// Without this the filter's group delay makes the smoothed gaze trail
    /// the pursued target by more than the gap between neighbours.
    bool smooth_targets = true;

    [[nodiscard]] static DetectorConfig defaults(Method method) noexcept;

    /// Throws ConfigError when an invariant does not hold.
    void validate() const;

    /// Axis threshold test on one metric value.
    [[nodiscard]] bool accepts(double metric) const noexcept;

    friend bool operator==(const DetectorConfig&, const DetectorConfig&) = default;
};

struct TargetPosition {
    int id = 0;
    Point pos;
};

struct DetectionEvent {
    int target_id = 0;
    double t_ms = 0.0;
    Method method = Method::slope;

    friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

struct TargetFrame {
    int id = 0;
    double progress = 0.0;
    RegressionResult x;
    RegressionResult y;
    bool cond_x = false;
    bool cond_y = false;
    std::size_t consecutive = 0;
};

struct FrameOutput {
    double t_ms = 0.0;
    std::vector<TargetFrame> targets; // layout order
    std::vector<DetectionEvent> events;
    bool ambiguous = false;
    bool skipping = false;
};

/// Streaming pursuit detector for one session.
///
/// Every target owns one window per axis pairing the (smoothed) gaze
/// coordinate with the target coordinate. An axis condition holds when its
/// metric is defined and inside the threshold; a target fires once both
/// axes have held for `min_duration` consecutive samples. Any event clears
/// every window and the smoothing history and drops the next
/// `skip_samples` gaze samples.
class Detector {
public:
    Detector(DetectorConfig config, std::vector<int> target_ids);

    /// Process one gaze sample against the target positions at the same
    /// instant. Throws OrderingError, InvalidSampleError or
    /// LayoutMismatchError without touching the state.
    FrameOutput ingest(const GazeSample& gaze, std::span<const TargetPosition> targets);

    void reset() noexcept;

    [[nodiscard]] const DetectorConfig& config() const noexcept { return config_; }
    [[nodiscard]] const std::vector<int>& target_ids() const noexcept { return ids_; }
    [[nodiscard]] std::size_t skip_remaining() const noexcept { return skip_remaining_; }
    /// Progress of each target after the last ingest, layout order.
    [[nodiscard]] std::vector<double> progress() const;

private:
    struct Channel {
        AxisWindowStats x;
        AxisWindowStats y;
        std::optional<MovingAverage> smoother;
        std::size_t consecutive = 0;
    };

    void clear_buffers() noexcept;
    void map_targets(std::span<const TargetPosition> targets);
    [[nodiscard]] double progress_of(std::size_t consecutive) const noexcept;

    DetectorConfig config_;
    std::vector<int> ids_;
    std::unordered_map<int, std::size_t> index_of_;
    std::vector<Channel> channels_;
    std::optional<MovingAverage> gaze_smoother_;
    std::vector<std::size_t> slot_; // scratch: channel index per input position
    std::size_t skip_remaining_ = 0;
    std::optional<double> last_t_ms_;
};

} // namespace pursuit
