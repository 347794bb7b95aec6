#pragma once

#include "pursuit/detector.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace pursuit {

/// One sample of one target's detector state, as written by the trace and
/// replay commands. Undefined metrics are written as empty CSV fields.
struct TraceRow {
    double t_s = 0.0;
    int target_id = 0;
    RegressionResult x;
    RegressionResult y;
    bool cond_x = false;
    bool cond_y = false;
    std::size_t consecutive = 0;
    bool event = false;

    [[nodiscard]] bool cond_both() const noexcept { return cond_x && cond_y; }
};

void append_trace_rows(const FrameOutput& frame, std::vector<TraceRow>& rows);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);
void write_events_csv(std::ostream& out, const std::vector<DetectionEvent>& events);

/// Shortest text that parses back to the identical double.
[[nodiscard]] std::string format_double(double v);

} // namespace pursuit
