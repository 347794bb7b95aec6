// Command line front end: trace, sweep, replay, gaze, layout, serve.

#include "pursuit/commands.hpp"
#include "pursuit/errors.hpp"
#include "pursuit/server.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace pursuit;

struct Common {
    std::string method;
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c, bool with_method = true) {
    if (with_method) {
        cmd->add_option("--method", c.method, "slope or correlation")->check(CLI::IsMember({"slope", "correlation"}));
        cmd->add_option("--config", c.config_path, "key = value file overriding detector parameters");
    }
    cmd->add_option("--out", c.out_path, "output file (default stdout)");
}

std::optional<Method> method_of(const Common& c) {
    if (c.method.empty()) {
        return std::nullopt;
    }
    return parse_method(c.method);
}

DetectorConfig config_of(const Common& c) {
    std::vector<KeyValue> overrides;
    if (!c.config_path.empty()) {
        overrides = load_key_values(c.config_path);
    }
    return cli::resolve_config(method_of(c), overrides);
}

// Output goes to a file when --out is set, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw Error("cannot write " + path);
            }
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

Scenario scenario_of(const std::string& path, const Common& c) {
    Scenario s = load_scenario(path);
    if (c.seed) {
        s.seed = *c.seed;
    }
    return s;
}

StreamServer* g_server = nullptr;

void on_signal(int) {
    if (g_server != nullptr) {
        g_server->request_stop();
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smooth pursuit detection toolkit (slope and correlation methods)"};
    app.require_subcommand(1);

    Common trace_opts;
    std::string trace_scenario;
    auto* trace = app.add_subcommand("trace", "per-sample metrics and threshold conditions for a scenario");
    trace->add_option("scenario", trace_scenario, "scenario file")->required();
    trace->add_option("--seed", trace_opts.seed, "override the scenario seed");
    add_common(trace, trace_opts);

    Common sweep_opts;
    std::vector<int> sweep_counts{6, 8, 10, 12, 14, 16, 18, 20, 22, 24};
    std::size_t repetitions = 1;
    double rotations = 1.0;
    double noise = 0.0;
    std::vector<double> scale{1.0, 1.0};
    std::vector<double> offset{0.0, 0.0};
    auto* sweep_cmd = app.add_subcommand("sweep", "false positives and latency over target counts");
    sweep_cmd->add_option("--targets", sweep_counts, "target counts")->delimiter(',');
    sweep_cmd->add_option("--repetitions", repetitions, "repetitions per cell")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--rotations", rotations, "pursuit duration in rotations")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--noise", noise, "gaze noise sigma in px")->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--scale", scale, "calibration scale sx sy")->expected(2);
    sweep_cmd->add_option("--offset", offset, "calibration offset dx dy")->expected(2);
    sweep_cmd->add_option("--seed", sweep_opts.seed, "random seed");
    add_common(sweep_cmd, sweep_opts);

    Common replay_opts;
    std::string replay_log;
    std::string replay_scenario;
    int replay_targets = 0;
    std::string events_path;
    auto* replay = app.add_subcommand("replay", "run a recorded gaze log (t_ms,gx_px,gy_px) through the detector");
    replay->add_option("log", replay_log, "gaze log CSV")->required();
    auto* layout_src = replay->add_option("--targets", replay_targets, "study layout with N targets");
    replay->add_option("--scenario", replay_scenario, "take the layout from a scenario file")->excludes(layout_src);
    replay->add_option("--events", events_path, "event CSV (default stdout)");
    add_common(replay, replay_opts);

    Common gaze_opts;
    std::string gaze_scenario;
    auto* gaze = app.add_subcommand("gaze", "write the synthetic gaze log of a scenario");
    gaze->add_option("scenario", gaze_scenario, "scenario file")->required();
    gaze->add_option("--seed", gaze_opts.seed, "override the scenario seed");
    add_common(gaze, gaze_opts, false);

    Common layout_opts;
    int layout_targets = 20;
    double layout_time = 0.0;
    auto* layout = app.add_subcommand("layout", "target positions of the study layout");
    layout->add_option("--targets", layout_targets, "selectable targets (6..24, even)");
    layout->add_option("--time", layout_time, "time in seconds");
    add_common(layout, layout_opts, false);

    StreamServer::Options serve_opts;
    auto* serve = app.add_subcommand("serve", "symbol-entry session service (newline-delimited JSON over TCP)");
    serve->add_option("--port", serve_opts.port, "TCP port");
    serve->add_option("--bind", serve_opts.bind_address, "bind address");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*trace) {
            const Scenario s = scenario_of(trace_scenario, trace_opts);
            Output out(trace_opts.out_path);
            cli::cmd_trace(s, config_of(trace_opts), out.stream());
        } else if (*sweep_cmd) {
            SweepOptions opts;
            opts.target_counts = sweep_counts;
            opts.repetitions = repetitions;
            opts.rotations = rotations;
            opts.seed = sweep_opts.seed.value_or(0);
            opts.gaze.noise_sigma = noise;
            opts.gaze.calibration = {scale[0], scale[1], offset[0], offset[1]};
            if (sweep_opts.method.empty()) {
                std::vector<KeyValue> overrides;
                if (!sweep_opts.config_path.empty()) {
                    overrides = load_key_values(sweep_opts.config_path);
                }
                opts.configs = {cli::resolve_config(Method::slope, overrides),
                                cli::resolve_config(Method::correlation, overrides)};
            } else {
                opts.configs = {config_of(sweep_opts)};
            }
            Output out(sweep_opts.out_path);
            cli::cmd_sweep(opts, out.stream());
        } else if (*replay) {
            std::ifstream in(replay_log);
            if (!in) {
                throw Error("cannot open " + replay_log);
            }
            const auto samples = read_gaze_log(in);
            Layout lay = replay_scenario.empty() ? dialplate_layout(replay_targets ? replay_targets : 20)
                                                 : load_scenario(replay_scenario).layout;
            Output events(events_path);
            if (replay_opts.out_path.empty()) {
                cli::cmd_replay(samples, lay, config_of(replay_opts), events.stream(), nullptr);
            } else {
                Output tr(replay_opts.out_path);
                cli::cmd_replay(samples, lay, config_of(replay_opts), events.stream(), &tr.stream());
            }
        } else if (*gaze) {
            const Scenario s = scenario_of(gaze_scenario, gaze_opts);
            Output out(gaze_opts.out_path);
            cli::cmd_gaze(s, out.stream());
        } else if (*layout) {
            const Layout lay = dialplate_layout(layout_targets);
            for (const auto& w : pursuit_speed_warnings(lay)) {
                std::cerr << "warning: " << w << '\n';
            }
            Output out(layout_opts.out_path);
            cli::cmd_layout(lay, layout_time, out.stream());
        } else if (*serve) {
            StreamServer server(serve_opts);
            const auto port = server.listen();
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cerr << "listening on " << serve_opts.bind_address << ':' << port << '\n';
            server.serve();
            g_server = nullptr;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
