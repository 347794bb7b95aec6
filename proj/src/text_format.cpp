#include "pursuit/text_format.hpp"

#include "pursuit/errors.hpp"
#include "pursuit/trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace pursuit {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

double to_double(std::string_view s, std::size_t line, std::string_view what) {
    s = trim(s);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ParseError(line, "expected a number for " + std::string(what) + ", got '" + std::string(s) + "'");
    }
    return v;
}

std::size_t to_count(std::string_view s, std::size_t line, std::string_view what) {
    s = trim(s);
    unsigned long long v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError(line, "expected a non-negative integer for " + std::string(what) + ", got '" +
                                   std::string(s) + "'");
    }
    return static_cast<std::size_t>(v);
}

std::vector<double> numbers(const KeyValue& kv, std::size_t min_count, std::size_t max_count) {
    const auto toks = split_ws(kv.value);
    if (toks.size() < min_count || toks.size() > max_count) {
        throw ParseError(kv.line, "wrong number of values for " + kv.key);
    }
    std::vector<double> out;
    for (const auto& t : toks) {
        out.push_back(to_double(t, kv.line, kv.key));
    }
    return out;
}

bool to_bool(const KeyValue& kv) {
    const auto v = trim(kv.value);
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    throw ParseError(kv.line, "expected true or false for " + kv.key);
}

} // namespace

std::vector<KeyValue> parse_key_values(std::istream& in) {
    std::vector<KeyValue> out;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text(raw);
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line, "expected 'key = value'");
        }
        KeyValue kv{std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1))), line};
        if (kv.key.empty() || kv.value.empty()) {
            throw ParseError(line, "expected 'key = value'");
        }
        out.push_back(std::move(kv));
    }
    return out;
}

std::vector<KeyValue> load_key_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(0, "cannot open " + path.string());
    }
    return parse_key_values(in);
}

Scenario parse_scenario(std::istream& in) {
    const auto entries = parse_key_values(in);
    Scenario s;
    std::optional<int> dialplate_count;
    std::size_t dialplate_line = 0;
    Point screen = apparatus::kDefaultScreen;
    std::vector<TargetSpec> custom;
    std::vector<std::pair<PursuitInterval, std::size_t>> pursuits;

    for (const auto& kv : entries) {
        if (kv.key == "targets") {
            dialplate_count = static_cast<int>(to_count(kv.value, kv.line, kv.key));
            dialplate_line = kv.line;
        } else if (kv.key == "screen") {
            const auto v = numbers(kv, 2, 2);
            screen = {v[0], v[1]};
        } else if (kv.key == "target") {
            const auto toks = split_ws(kv.value);
            if (toks.size() != 6 && toks.size() != 8) {
                throw ParseError(kv.line, "target needs: id label radius period phase cw|ccw [cx cy]");
            }
            const int id = static_cast<int>(to_count(toks[0], kv.line, "target id"));
            const double radius = to_double(toks[2], kv.line, "radius");
            const double period = to_double(toks[3], kv.line, "period");
            const double phase = to_double(toks[4], kv.line, "phase");
            if (toks[5] != "cw" && toks[5] != "ccw") {
                throw ParseError(kv.line, "direction must be cw or ccw");
            }
            Point center{screen.x / 2.0, screen.y / 2.0};
            if (toks.size() == 8) {
                center = {to_double(toks[6], kv.line, "cx"), to_double(toks[7], kv.line, "cy")};
            }
            try {
                custom.push_back({id, toks[1], make_trajectory(center, radius, period, phase, toks[5] == "cw")});
            } catch (const ConfigError& e) {
                throw ParseError(kv.line, e.what());
            }
        } else if (kv.key == "duration") {
            s.duration_s = to_double(kv.value, kv.line, kv.key);
        } else if (kv.key == "sample_rate") {
            s.sample_rate = to_double(kv.value, kv.line, kv.key);
        } else if (kv.key == "seed") {
            s.seed = to_count(kv.value, kv.line, kv.key);
        } else if (kv.key == "pursue") {
            const auto toks = split_ws(kv.value);
            if (toks.size() != 3) {
                throw ParseError(kv.line, "pursue needs: target|none start end");
            }
            PursuitInterval iv;
            if (toks[0] != "none") {
                iv.target = static_cast<int>(to_count(toks[0], kv.line, "pursued target"));
            }
            iv.start_s = to_double(toks[1], kv.line, "start");
            iv.end_s = to_double(toks[2], kv.line, "end");
            pursuits.emplace_back(iv, kv.line);
        } else if (kv.key == "gain") {
            s.gaze.pursuit_gain = to_double(kv.value, kv.line, kv.key);
        } else if (kv.key == "latency_ms") {
            s.gaze.latency_ms = to_double(kv.value, kv.line, kv.key);
        } else if (kv.key == "noise_sigma") {
            s.gaze.noise_sigma = to_double(kv.value, kv.line, kv.key);
        } else if (kv.key == "scale") {
            const auto v = numbers(kv, 1, 2);
            s.gaze.calibration.scale_x = v[0];
            s.gaze.calibration.scale_y = v.size() == 2 ? v[1] : v[0];
        } else if (kv.key == "offset") {
            const auto v = numbers(kv, 2, 2);
            s.gaze.calibration.offset_x = v[0];
            s.gaze.calibration.offset_y = v[1];
        } else {
            throw ParseError(kv.line, "unknown key '" + kv.key + "'");
        }
    }

    if (dialplate_count && !custom.empty()) {
        throw ParseError(dialplate_line, "use either 'targets' or 'target' lines, not both");
    }
    if (dialplate_count) {
        try {
            s.layout = dialplate_layout(*dialplate_count, screen);
        } catch (const ConfigError& e) {
            throw ParseError(dialplate_line, e.what());
        }
    } else if (!custom.empty()) {
        s.layout.targets = std::move(custom);
    } else {
        throw ParseError(0, "scenario defines no targets");
    }

    // Validate the schedule line by line so the diagnostic can point at it.
    for (std::size_t i = 0; i < pursuits.size(); ++i) {
        const auto& [iv, line] = pursuits[i];
        s.schedule.push_back(iv);
        Scenario probe = s;
        probe.schedule.assign(s.schedule.begin(), s.schedule.end());
        try {
            probe.validate();
        } catch (const ConfigError& e) {
            throw ParseError(line, e.what());
        }
    }
    try {
        s.validate();
    } catch (const ConfigError& e) {
        throw ParseError(0, e.what());
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(0, "cannot open " + path.string());
    }
    return parse_scenario(in);
}

void write_scenario(std::ostream& out, const Scenario& s) {
    for (const auto& t : s.layout.targets) {
        const auto& tr = t.trajectory;
        out << "target = " << t.id << ' ' << t.label << ' ' << format_double(tr.radius) << ' '
            << format_double(tr.period()) << ' ' << format_double(tr.phase) << ' ' << (tr.clockwise() ? "cw" : "ccw")
            << ' ' << format_double(tr.center.x) << ' ' << format_double(tr.center.y) << '\n';
    }
    out << "duration = " << format_double(s.duration_s) << '\n'
        << "sample_rate = " << format_double(s.sample_rate) << '\n'
        << "seed = " << s.seed << '\n';
    for (const auto& iv : s.schedule) {
        out << "pursue = " << (iv.target ? std::to_string(*iv.target) : std::string("none")) << ' '
            << format_double(iv.start_s) << ' ' << format_double(iv.end_s) << '\n';
    }
    const auto& g = s.gaze;
    out << "gain = " << format_double(g.pursuit_gain) << '\n'
        << "latency_ms = " << format_double(g.latency_ms) << '\n'
        << "noise_sigma = " << format_double(g.noise_sigma) << '\n'
        << "scale = " << format_double(g.calibration.scale_x) << ' ' << format_double(g.calibration.scale_y) << '\n'
        << "offset = " << format_double(g.calibration.offset_x) << ' ' << format_double(g.calibration.offset_y)
        << '\n';
}

void apply_config(DetectorConfig& config, const std::vector<KeyValue>& entries) {
    // method first so threshold parsing knows which form to expect
    for (const auto& kv : entries) {
        if (kv.key == "method") {
            try {
                config.method = parse_method(kv.value);
            } catch (const ConfigError& e) {
                throw ParseError(kv.line, e.what());
            }
        }
    }
    for (const auto& kv : entries) {
        if (kv.key == "method") {
            continue;
        }
        if (kv.key == "window_size") {
            config.window_size = to_count(kv.value, kv.line, kv.key);
        } else if (kv.key == "smoothing_k" || kv.key == "smoothing") {
            config.smoothing_k = to_count(kv.value, kv.line, kv.key);
        } else if (kv.key == "min_duration") {
            config.min_duration = to_count(kv.value, kv.line, kv.key);
        } else if (kv.key == "threshold") {
            if (config.method == Method::slope) {
                const auto v = numbers(kv, 2, 2);
                config.slope_lo = v[0];
                config.slope_hi = v[1];
            } else {
                config.correlation_threshold = numbers(kv, 1, 1)[0];
            }
        } else if (kv.key == "slope_lo") {
            config.slope_lo = to_double(kv.value, kv.line, kv.key);
        } else if (kv.key == "slope_hi") {
            config.slope_hi = to_double(kv.value, kv.line, kv.key);
        } else if (kv.key == "correlation_threshold") {
            config.correlation_threshold = to_double(kv.value, kv.line, kv.key);
        } else if (kv.key == "skip_samples") {
            config.skip_samples = to_count(kv.value, kv.line, kv.key);
        } else if (kv.key == "sample_rate") {
            config.sample_rate = to_double(kv.value, kv.line, kv.key);
        } else if (kv.key == "smooth_targets") {
            config.smooth_targets = to_bool(kv);
        } else {
            throw ParseError(kv.line, "unknown detector parameter '" + kv.key + "'");
        }
    }
    try {
        config.validate();
    } catch (const ConfigError& e) {
        throw ParseError(0, e.what());
    }
}

void write_gaze_log(std::ostream& out, const std::vector<GazeSample>& samples) {
    out << "t_ms,gx_px,gy_px\n";
    for (const auto& s : samples) {
        out << format_double(s.t_ms) << ',' << format_double(s.pos.x) << ',' << format_double(s.pos.y) << '\n';
    }
}

std::vector<GazeSample> read_gaze_log(std::istream& in) {
    std::vector<GazeSample> out;
    std::string raw;
    std::size_t line = 0;
    bool header_seen = false;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = trim(raw);
        if (text.empty()) {
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            if (text != "t_ms,gx_px,gy_px") {
                throw ParseError(line, "expected header 't_ms,gx_px,gy_px'");
            }
            continue;
        }
        std::vector<std::string_view> cols;
        std::size_t pos = 0;
        while (true) {
            const auto comma = text.find(',', pos);
            cols.push_back(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
            if (comma == std::string_view::npos) {
                break;
            }
            pos = comma + 1;
        }
        if (cols.size() != 3) {
            throw ParseError(line, "expected 3 columns, got " + std::to_string(cols.size()));
        }
        GazeSample s{to_double(cols[0], line, "t_ms"),
                     {to_double(cols[1], line, "gx_px"), to_double(cols[2], line, "gy_px")}};
        if (!out.empty() && !(s.t_ms > out.back().t_ms)) {
            throw ParseError(line, "timestamp " + std::string(trim(cols[0])) + " ms does not increase");
        }
        out.push_back(s);
    }
    if (!header_seen) {
        throw ParseError(0, "empty gaze log");
    }
    return out;
}

} // namespace pursuit
