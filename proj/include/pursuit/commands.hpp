#pragma once

#include "pursuit/simulator.hpp"
#include "pursuit/text_format.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace pursuit::cli {

/// Study defaults for the method, then overrides from a config file.
/// An explicit `method` wins over a `method` line in the file.
[[nodiscard]] DetectorConfig resolve_config(std::optional<Method> method, const std::vector<KeyValue>& overrides);

/// Per-sample, per-target detector state for the scenario's gaze stream.
DetectorRun cmd_trace(const Scenario& scenario, const DetectorConfig& config, std::ostream& out);

void cmd_sweep(const SweepOptions& options, std::ostream& out);

/// Runs a recorded gaze log through the detector. Events go to `events`,
/// trace rows to `trace` when given.
DetectorRun cmd_replay(const std::vector<GazeSample>& log, const Layout& layout, const DetectorConfig& config,
                       std::ostream& events, std::ostream* trace);

/// Gaze log for the scenario, readable by cmd_replay.
void cmd_gaze(const Scenario& scenario, std::ostream& out);

/// Target positions of a layout at time `t_s`.
void cmd_layout(const Layout& layout, double t_s, std::ostream& out);

} // namespace pursuit::cli
