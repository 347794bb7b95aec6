#include "pursuit/session.hpp"

#include "pursuit/errors.hpp"
#include "pursuit/simulator.hpp"

#include <algorithm>

namespace pursuit {

using nlohmann::json;

json error_message(std::string_view what) {
    return json{{"type", "error"}, {"message", std::string(what)}};
}

std::vector<json> Session::handle(const json& message, double now_ms) {
    if (!message.is_object() || !message.contains("type") || !message["type"].is_string()) {
        return {error_message("message must be an object with a string 'type'")};
    }
    const auto type = message["type"].get<std::string>();
    try {
        if (type == "start") {
            return on_start(message, now_ms);
        }
        if (!started()) {
            return {error_message("no active session; send 'start' first")};
        }
        if (type == "gaze") {
            return on_gaze(message);
        }
        if (type == "stop") {
            return on_stop();
        }
    } catch (const Error& e) {
        return {error_message(e.what())};
    }
    return {error_message("unknown message type '" + type + "'")};
}

std::vector<std::string> Session::handle_line(std::string_view line, double now_ms) {
    std::vector<json> replies;
    json message = json::parse(line.begin(), line.end(), nullptr, false);
    if (message.is_discarded()) {
        replies.push_back(error_message("malformed JSON"));
    } else {
        replies = handle(message, now_ms);
    }
    std::vector<std::string> out;
    out.reserve(replies.size());
    for (const auto& r : replies) {
        out.push_back(r.dump());
    }
    return out;
}

std::vector<json> Session::on_start(const json& message, double now_ms) {
    if (!message.contains("targets") || !message["targets"].is_number_integer()) {
        return {error_message("start needs an integer 'targets'")};
    }
    Method method = Method::slope;
    if (message.contains("method")) {
        if (!message["method"].is_string()) {
            return {error_message("'method' must be a string")};
        }
        method = parse_method(message["method"].get<std::string>());
    }
    Layout layout = dialplate_layout(message["targets"].get<int>());

    std::optional<std::vector<std::string>> task;
    if (message.contains("task") && !message["task"].is_null()) {
        if (!message["task"].is_string()) {
            return {error_message("'task' must be a string")};
        }
        const auto text = message["task"].get<std::string>();
        if (text.size() != kTaskLength) {
            return {error_message("task must have exactly 4 symbols")};
        }
        task.emplace();
        for (const char c : text) {
            const std::string symbol(1, c);
            const bool known = std::any_of(layout.targets.begin(), layout.targets.end(), [&](const TargetSpec& t) {
                return !t.is_cancel() && t.label == symbol;
            });
            if (!known) {
                return {error_message("task symbol '" + symbol + "' is not in the layout")};
            }
            task->push_back(symbol);
        }
    }

    layout_ = std::move(layout);
    detector_.emplace(DetectorConfig::defaults(method), layout_.ids());
    progress_.assign(layout_.targets.size(), 0.0);
    buffer_.clear();
    task_ = std::move(task);
    task_finished_ = false;
    errors_ = 0;
    epoch_ms_ = now_ms;

    json targets = json::array();
    for (const auto& t : layout_.targets) {
        const auto& tr = t.trajectory;
        targets.push_back({{"id", t.id},
                           {"label", t.label},
                           {"radius", tr.radius},
                           {"period", tr.period()},
                           {"phase", tr.phase},
                           {"direction", tr.clockwise() ? "cw" : "ccw"},
                           {"center", {tr.center.x, tr.center.y}}});
    }
    json started{{"type", "started"},
                 {"epoch", epoch_ms_},
                 {"method", std::string(to_string(method))},
                 {"target_radius", layout_.display_radius},
                 {"layout", std::move(targets)}};
    if (task_) {
        std::string text;
        for (const auto& s : *task_) {
            text += s;
        }
        started["task"] = text;
    }
    return {std::move(started)};
}

json Session::frame(double t_ms) const {
    json targets = json::array();
    for (std::size_t i = 0; i < layout_.targets.size(); ++i) {
        const auto& t = layout_.targets[i];
        const Point p = t.trajectory.position_at(t_ms / 1000.0);
        targets.push_back({{"id", t.id}, {"x", p.x}, {"y", p.y}, {"progress", progress_[i]}});
    }
    return json{{"type", "frame"}, {"t", t_ms}, {"targets", std::move(targets)}};
}

void Session::check_deadline(double t_ms, std::vector<json>& out) {
    if (task_active() && t_ms >= kTaskTimeoutMs) {
        task_finished_ = true;
        std::string entered;
        for (const auto& s : buffer_) {
            entered += s;
        }
        out.push_back({{"type", "task_failed"}, {"t", t_ms}, {"reason", "timeout"}, {"buffer", entered}, {"errors", errors_}});
    }
}

std::vector<json> Session::on_gaze(const json& message) {
    for (const char* key : {"t", "x", "y"}) {
        if (!message.contains(key) || !message[key].is_number()) {
            return {error_message(std::string("gaze needs numeric '") + key + "'")};
        }
    }
    const GazeSample sample{message["t"].get<double>(), {message["x"].get<double>(), message["y"].get<double>()}};
    const auto positions = target_positions(layout_, sample.t_ms);
    const FrameOutput result = detector_->ingest(sample, positions);

    std::vector<json> out;
    check_deadline(sample.t_ms, out);
    for (std::size_t i = 0; i < result.targets.size(); ++i) {
        progress_[i] = result.targets[i].progress;
    }
    out.insert(out.begin(), frame(sample.t_ms));
    for (const auto& e : result.events) {
        const TargetSpec* target = layout_.find(e.target_id);
        out.push_back(apply_selection(*target, e.t_ms, result.ambiguous));
    }
    // a completed task is reported after the detection that completed it
    if (task_ && !task_finished_ && buffer_ == *task_) {
        task_finished_ = true;
        out.push_back({{"type", "task_done"}, {"t", sample.t_ms}, {"elapsed_ms", sample.t_ms}, {"errors", errors_}});
    }
    return out;
}

json Session::apply_selection(const TargetSpec& target, double t_ms, bool ambiguous) {
    const bool active = task_active();
    bool prefix_ok = true;
    if (task_) {
        prefix_ok = buffer_.size() <= task_->size() && std::equal(buffer_.begin(), buffer_.end(), task_->begin());
    }
    bool correct = false;
    if (target.is_cancel()) {
        // removing a wrong symbol is the right move; every cancel still counts as an error
        correct = !buffer_.empty() && !prefix_ok;
        if (!buffer_.empty()) {
            buffer_.pop_back();
        }
        if (active) {
            ++errors_;
        }
    } else {
        if (task_) {
            correct = prefix_ok && buffer_.size() < task_->size() && (*task_)[buffer_.size()] == target.label;
        }
        buffer_.push_back(target.label);
    }

    std::string entered;
    for (const auto& s : buffer_) {
        entered += s;
    }
    json msg{{"type", "detected"}, {"id", target.id}, {"label", target.label}, {"t", t_ms},
             {"buffer", entered}, {"ambiguous", ambiguous}};
    if (active) {
        msg["correct"] = correct;
    }
    return msg;
}

std::vector<json> Session::on_stop() {
    detector_.reset();
    task_.reset();
    task_finished_ = false;
    return {json{{"type", "stopped"}}};
}

std::vector<json> Session::tick(double now_ms) {
    if (!started()) {
        return {};
    }
    const double t_ms = now_ms - epoch_ms_;
    std::vector<json> out{frame(t_ms)};
    check_deadline(t_ms, out);
    return out;
}

} // namespace pursuit
