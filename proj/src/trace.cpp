#include "pursuit/trace.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <ostream>
#include <string>

namespace pursuit {

std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

void append_trace_rows(const FrameOutput& frame, std::vector<TraceRow>& rows) {
    for (const auto& tf : frame.targets) {
        TraceRow row;
        row.t_s = frame.t_ms / 1000.0;
        row.target_id = tf.id;
        row.x = tf.x;
        row.y = tf.y;
        row.cond_x = tf.cond_x;
        row.cond_y = tf.cond_y;
        row.consecutive = tf.consecutive;
        row.event = std::any_of(frame.events.begin(), frame.events.end(),
                                [&](const DetectionEvent& e) { return e.target_id == tf.id; });
        rows.push_back(row);
    }
}

namespace {

void field(std::ostream& out, bool defined, double v) {
    out << ',';
    if (defined) {
        out << format_double(v);
    }
}

} // namespace

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
    out << "t,target,slope_x,slope_y,corr_x,corr_y,cond_x,cond_y,cond_both,consecutive,event\n";
    for (const auto& r : rows) {
        out << format_double(r.t_s) << ',' << r.target_id;
        field(out, r.x.slope_defined, r.x.slope);
        field(out, r.y.slope_defined, r.y.slope);
        field(out, r.x.correlation_defined, r.x.correlation);
        field(out, r.y.correlation_defined, r.y.correlation);
        out << ',' << int(r.cond_x) << ',' << int(r.cond_y) << ',' << int(r.cond_both()) << ','
            << r.consecutive << ',' << int(r.event) << '\n';
    }
}

void write_events_csv(std::ostream& out, const std::vector<DetectionEvent>& events) {
    out << "t_ms,target,method\n";
    for (const auto& e : events) {
        out << format_double(e.t_ms) << ',' << e.target_id << ',' << to_string(e.method) << '\n';
    }
}

} // namespace pursuit
