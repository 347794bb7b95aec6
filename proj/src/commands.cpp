#include "pursuit/commands.hpp"

#include "pursuit/trace.hpp"

#include <ostream>

namespace pursuit::cli {

DetectorConfig resolve_config(std::optional<Method> method, const std::vector<KeyValue>& overrides) {
    if (!method) {
        method = Method::slope;
        for (const auto& kv : overrides) {
            if (kv.key == "method") {
                method = parse_method(kv.value);
            }
        }
    }
    std::vector<KeyValue> rest;
    for (const auto& kv : overrides) {
        if (kv.key != "method") {
            rest.push_back(kv);
        }
    }
    DetectorConfig config = DetectorConfig::defaults(*method);
    apply_config(config, rest);
    return config;
}

DetectorRun cmd_trace(const Scenario& scenario, const DetectorConfig& config, std::ostream& out) {
    auto metrics = run_scenario(scenario, {config}, true);
    write_trace_csv(out, metrics.methods.front().run.trace);
    return std::move(metrics.methods.front().run);
}

void cmd_sweep(const SweepOptions& options, std::ostream& out) {
    write_sweep_csv(out, sweep(options));
}

DetectorRun cmd_replay(const std::vector<GazeSample>& log, const Layout& layout, const DetectorConfig& config,
                       std::ostream& events, std::ostream* trace) {
    DetectorRun run = run_detector(layout, log, config, trace != nullptr);
    write_events_csv(events, run.events);
    if (trace != nullptr) {
        write_trace_csv(*trace, run.trace);
    }
    return run;
}

void cmd_gaze(const Scenario& scenario, std::ostream& out) {
    write_gaze_log(out, generate_gaze(scenario));
}

void cmd_layout(const Layout& layout, double t_s, std::ostream& out) {
    out << "id,label,x,y,radius,period,phase,direction\n";
    for (const auto& t : layout.targets) {
        const auto& tr = t.trajectory;
        const Point p = tr.position_at(t_s);
        out << t.id << ',' << t.label << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
            << format_double(tr.radius) << ',' << format_double(tr.period()) << ',' << format_double(tr.phase) << ','
            << (tr.clockwise() ? "cw" : "ccw") << '\n';
    }
}

} // namespace pursuit::cli
