#include "pursuit/simulator.hpp"

#include "pursuit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

namespace pursuit {

void Scenario::validate() const {
    validate_layout(layout);
    if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
        throw ConfigError("scenario duration must be positive");
    }
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
        throw ConfigError("scenario sample rate must be positive");
    }
    std::vector<PursuitInterval> sorted = schedule;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.start_s < b.start_s; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& iv = sorted[i];
        if (!(iv.start_s >= 0.0) || !(iv.end_s <= duration_s) || !(iv.start_s < iv.end_s)) {
            throw ConfigError("schedule interval must satisfy 0 <= start < end <= duration");
        }
        if (i > 0 && iv.start_s < sorted[i - 1].end_s) {
            throw ConfigError("schedule intervals overlap");
        }
        if (iv.target && layout.find(*iv.target) == nullptr) {
            throw ConfigError("schedule references unknown target " + std::to_string(*iv.target));
        }
    }
    const auto& c = gaze.calibration;
    if (!std::isfinite(gaze.pursuit_gain) || !(gaze.latency_ms >= 0.0) || !(gaze.noise_sigma >= 0.0) ||
        !std::isfinite(gaze.latency_ms) || !std::isfinite(gaze.noise_sigma)) {
        throw ConfigError("gaze model needs finite gain, latency >= 0 and noise >= 0");
    }
    if (!(c.scale_x > 0.0) || !(c.scale_y > 0.0) || !std::isfinite(c.scale_x) ||
        !std::isfinite(c.scale_y) || !std::isfinite(c.offset_x) || !std::isfinite(c.offset_y)) {
        throw ConfigError("calibration needs finite positive scales and finite offsets");
    }
}

std::size_t Scenario::sample_count() const noexcept {
    return first_sample_at(duration_s);
}

double Scenario::sample_time_ms(std::size_t index) const noexcept {
    return static_cast<double>(index) * 1000.0 / sample_rate;
}

std::size_t Scenario::first_sample_at(double t_s) const noexcept {
    const double k = std::ceil(t_s * sample_rate - 1e-9);
    return k <= 0.0 ? 0 : static_cast<std::size_t>(k);
}

const PursuitInterval* Scenario::interval_at(std::size_t index) const noexcept {
    for (const auto& iv : schedule) {
        if (index >= first_sample_at(iv.start_s) && index < first_sample_at(iv.end_s)) {
            return &iv;
        }
    }
    return nullptr;
}

std::vector<TargetPosition> target_positions(const Layout& layout, double t_ms) {
    std::vector<TargetPosition> out;
    out.reserve(layout.targets.size());
    const double t_s = t_ms / 1000.0;
    for (const auto& t : layout.targets) {
        out.push_back({t.id, t.trajectory.position_at(t_s)});
    }
    return out;
}

namespace {

// Identity parameters must leave coordinates bit-identical.
double scale_about(double v, double center, double scale) noexcept {
    return scale == 1.0 ? v : center + scale * (v - center);
}

} // namespace

std::vector<GazeSample> generate_gaze(const Scenario& scenario) {
    scenario.validate();
    const auto& model = scenario.gaze;
    const Point ref = scenario.layout.targets.front().trajectory.center;

    std::mt19937_64 rng(scenario.seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    const std::size_t n = scenario.sample_count();
    std::vector<GazeSample> out;
    out.reserve(n);
    Point held = ref;
    for (std::size_t i = 0; i < n; ++i) {
        const double t_ms = scenario.sample_time_ms(i);
        const PursuitInterval* iv = scenario.interval_at(i);
        if (iv != nullptr && iv->target) {
            const auto& tr = scenario.layout.find(*iv->target)->trajectory;
            Point p = tr.position_at((t_ms - model.latency_ms) / 1000.0);
            p.x = scale_about(p.x, tr.center.x, model.pursuit_gain);
            p.y = scale_about(p.y, tr.center.y, model.pursuit_gain);
            held = p;
        }
        Point g{scale_about(held.x, ref.x, model.calibration.scale_x) + model.calibration.offset_x,
                scale_about(held.y, ref.y, model.calibration.scale_y) + model.calibration.offset_y};
        if (model.noise_sigma > 0.0) {
            g.x += model.noise_sigma * noise(rng);
            g.y += model.noise_sigma * noise(rng);
        }
        out.push_back({t_ms, g});
    }
    return out;
}

DetectorRun run_detector(const Layout& layout, const std::vector<GazeSample>& samples,
                         const DetectorConfig& config, bool with_trace) {
    DetectorRun run;
    run.config = config;
    Detector detector(config, layout.ids());
    if (with_trace) {
        run.trace.reserve(samples.size() * layout.targets.size());
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto positions = target_positions(layout, samples[i].t_ms);
        const FrameOutput frame = detector.ingest(samples[i], positions);
        for (const auto& e : frame.events) {
            run.events.push_back(e);
            run.event_samples.push_back(i);
        }
        if (with_trace) {
            append_trace_rows(frame, run.trace);
        }
    }
    return run;
}

ScenarioMetrics run_scenario(const Scenario& scenario, const std::vector<DetectorConfig>& configs,
                             bool with_trace) {
    ScenarioMetrics metrics;
    metrics.gaze = generate_gaze(scenario);
    for (const auto& config : configs) {
        MethodMetrics m;
        m.run = run_detector(scenario.layout, metrics.gaze, config, with_trace);
        std::set<const PursuitInterval*> detected;
        for (const auto& iv : scenario.schedule) {
            if (iv.target) {
                ++m.pursuits;
            }
        }
        for (std::size_t k = 0; k < m.run.events.size(); ++k) {
            const auto& e = m.run.events[k];
            const std::size_t idx = m.run.event_samples[k];
            const PursuitInterval* iv = scenario.interval_at(idx);
            auto& score = m.per_target[e.target_id];
            if (iv != nullptr && iv->target && *iv->target == e.target_id) {
                ++m.tp_events;
                if (detected.insert(iv).second) {
                    const std::size_t latency = idx - scenario.first_sample_at(iv->start_s) + 1;
                    m.tp_latencies.push_back(latency);
                    score.latencies.push_back(latency);
                }
            } else {
                ++m.fp_events;
                ++score.false_positives;
            }
        }
        m.pursuits_detected = detected.size();
        metrics.methods.push_back(std::move(m));
    }
    return metrics;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::vector<SweepRow> sweep(const SweepOptions& options) {
    if (!(options.rotations > 0.0)) {
        throw ConfigError("sweep needs a positive number of rotations");
    }
    std::vector<SweepRow> rows;
    for (const int count : options.target_counts) {
        const Layout layout = dialplate_layout(count);
        std::vector<SweepRow> cell(options.configs.size());
        std::vector<std::vector<std::size_t>> latencies(options.configs.size());
        for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
            for (int pursued = 0; pursued < count; ++pursued) {
                Scenario s;
                s.layout = layout;
                s.duration_s = options.rotations * apparatus::kRotationPeriodS;
                s.schedule = {{pursued, 0.0, s.duration_s}};
                s.gaze = options.gaze;
                s.seed = splitmix64(options.seed ^ splitmix64((static_cast<std::uint64_t>(count) << 40) ^
                                                             (static_cast<std::uint64_t>(rep) << 20) ^
                                                             static_cast<std::uint64_t>(pursued)));
                const ScenarioMetrics m = run_scenario(s, options.configs);
                for (std::size_t c = 0; c < options.configs.size(); ++c) {
                    const auto& mm = m.methods[c];
                    auto& row = cell[c];
                    ++row.scenarios;
                    row.tp_events += mm.tp_events;
                    row.fp_events += mm.fp_events;
                    if (mm.pursuits_detected == 0) {
                        ++row.missed;
                    }
                    latencies[c].insert(latencies[c].end(), mm.tp_latencies.begin(), mm.tp_latencies.end());
                }
            }
        }
        for (std::size_t c = 0; c < options.configs.size(); ++c) {
            auto& row = cell[c];
            row.method = options.configs[c].method;
            row.targets = count;
            const auto& lat = latencies[c];
            if (!lat.empty()) {
                row.latency_mean = static_cast<double>(std::accumulate(lat.begin(), lat.end(), std::size_t{0})) /
                                   static_cast<double>(lat.size());
                row.latency_min = *std::min_element(lat.begin(), lat.end());
                row.latency_max = *std::max_element(lat.begin(), lat.end());
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "method,targets,scenarios,tp_events,fp_events,missed,latency_mean,latency_min,latency_max\n";
    for (const auto& r : rows) {
        out << to_string(r.method) << ',' << r.targets << ',' << r.scenarios << ',' << r.tp_events << ','
            << r.fp_events << ',' << r.missed << ',';
        if (r.tp_events > 0) {
            out << format_double(r.latency_mean) << ',' << r.latency_min << ',' << r.latency_max;
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

} // namespace pursuit
