#pragma once

#include "pursuit/detector.hpp"
#include "pursuit/geometry.hpp"
#include "pursuit/trace.hpp"
#include "pursuit/trajectory.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

namespace pursuit {

/// Per-axis affine error between true and reported gaze. Scaling is about
/// the trajectory centre, so offset and scale act independently.
struct Calibration {
    double scale_x = 1.0;
    double scale_y = 1.0;
    double offset_x = 0.0;
    double offset_y = 0.0;
};

struct GazeModel {
    double pursuit_gain = 1.0;
    double latency_ms = 0.0;
    double noise_sigma = 0.0; // px, isotropic white Gaussian
    Calibration calibration;
};

/// `target` empty means the user pursues nothing (gaze holds still).
struct PursuitInterval {
    std::optional<int> target;
    double start_s = 0.0;
    double end_s = 0.0;
};

struct Scenario {
    Layout layout;
    std::vector<PursuitInterval> schedule;
    double duration_s = apparatus::kRotationPeriodS;
    double sample_rate = apparatus::kSampleRateHz;
    GazeModel gaze;
    std::uint64_t seed = 0;

    void validate() const;
    [[nodiscard]] std::size_t sample_count() const noexcept;
    [[nodiscard]] double sample_time_ms(std::size_t index) const noexcept;
    /// Schedule entry covering sample `index`, if any.
    [[nodiscard]] const PursuitInterval* interval_at(std::size_t index) const noexcept;
    /// First sample index at or after `t_s`.
    [[nodiscard]] std::size_t first_sample_at(double t_s) const noexcept;
};

[[nodiscard]] std::vector<TargetPosition> target_positions(const Layout& layout, double t_ms);

/// Deterministic for a given scenario (including its seed).
[[nodiscard]] std::vector<GazeSample> generate_gaze(const Scenario& scenario);

/// Raw output of running one detector over a gaze stream.
struct DetectorRun {
    DetectorConfig config;
    std::vector<DetectionEvent> events;
    std::vector<std::size_t> event_samples; // sample index of each event
    std::vector<TraceRow> trace;            // filled when requested
};

/// Feeds `samples` through a fresh detector with target positions from
/// `layout` at each sample's timestamp.
[[nodiscard]] DetectorRun run_detector(const Layout& layout, const std::vector<GazeSample>& samples,
                                       const DetectorConfig& config, bool with_trace);

struct TargetScore {
    std::size_t false_positives = 0;
    std::vector<std::size_t> latencies; // samples, onset to event inclusive
};

struct MethodMetrics {
    DetectorRun run;
    std::size_t tp_events = 0;
    std::size_t fp_events = 0;
    std::vector<std::size_t> tp_latencies;
    std::size_t pursuits = 0;          // non-empty schedule intervals
    std::size_t pursuits_detected = 0; // intervals with at least one true positive
    std::map<int, TargetScore> per_target;
};

struct ScenarioMetrics {
    std::vector<GazeSample> gaze;
    std::vector<MethodMetrics> methods; // one per config, same order
};

/// Replays the same gaze stream through a fresh detector per config.
/// A true positive is an event on the target being pursued at that sample;
/// its latency (first event of the interval only) counts samples from the
/// pursuit onset to the event, both included. Every other event is a false
/// positive.
[[nodiscard]] ScenarioMetrics run_scenario(const Scenario& scenario,
                                           const std::vector<DetectorConfig>& configs,
                                           bool with_trace = false);

struct SweepOptions {
    std::vector<int> target_counts{6, 8, 10, 12, 14, 16, 18, 20, 22, 24};
    std::vector<DetectorConfig> configs{DetectorConfig::defaults(Method::slope),
                                        DetectorConfig::defaults(Method::correlation)};
    GazeModel gaze;
    std::size_t repetitions = 1;
    std::uint64_t seed = 0;
    double rotations = 1.0;
};

struct SweepRow {
    Method method = Method::slope;
    int targets = 0;
    std::size_t scenarios = 0;
    std::size_t tp_events = 0;
    std::size_t fp_events = 0;
    std::size_t missed = 0; // scenarios where the pursued target never fired
    double latency_mean = 0.0;
    std::size_t latency_min = 0;
    std::size_t latency_max = 0;
};

/// For every target count and repetition, pursues each selectable target of
/// the study layout in its own scenario and aggregates per method.
[[nodiscard]] std::vector<SweepRow> sweep(const SweepOptions& options);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

} // namespace pursuit
