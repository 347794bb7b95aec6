#pragma once

#include "pursuit/detector.hpp"
#include "pursuit/trajectory.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pursuit {

/// Symbol-entry session behind the newline-delimited JSON protocol.
///
/// The session owns the animation clock: `start` records the epoch and all
/// later times (`gaze.t`, frame `t`) are milliseconds since that epoch.
/// Target positions for detection are taken at the gaze sample's own
/// timestamp. Selecting CANCEL removes the last entered symbol.
class Session {
public:
    static constexpr double kTaskTimeoutMs = 90'000.0;
    static constexpr std::size_t kTaskLength = 4;

    /// One protocol message in, zero or more messages out. `now_ms` is the
    /// server clock; only `start` reads it. Protocol violations produce an
    /// `error` message and leave the session as it was.
    std::vector<nlohmann::json> handle(const nlohmann::json& message, double now_ms);

    /// Raw line variant; malformed JSON yields an `error` message.
    std::vector<std::string> handle_line(std::string_view line, double now_ms);

    /// Frame at server time `now_ms` (positions from the trajectories,
    /// progress from the last processed sample), plus `task_failed` when the
    /// task deadline has passed. Empty before `start`.
    std::vector<nlohmann::json> tick(double now_ms);

    [[nodiscard]] bool started() const noexcept { return detector_.has_value(); }
    [[nodiscard]] double epoch_ms() const noexcept { return epoch_ms_; }
    [[nodiscard]] const Layout& layout() const noexcept { return layout_; }
    [[nodiscard]] const std::vector<std::string>& buffer() const noexcept { return buffer_; }
    [[nodiscard]] std::size_t errors() const noexcept { return errors_; }
    [[nodiscard]] bool task_active() const noexcept { return task_ && !task_finished_; }

private:
    std::vector<nlohmann::json> on_start(const nlohmann::json& message, double now_ms);
    std::vector<nlohmann::json> on_gaze(const nlohmann::json& message);
    std::vector<nlohmann::json> on_stop();
    nlohmann::json frame(double t_ms) const;
    void check_deadline(double t_ms, std::vector<nlohmann::json>& out);
    nlohmann::json apply_selection(const TargetSpec& target, double t_ms, bool ambiguous);

    Layout layout_;
    std::optional<Detector> detector_;
    std::vector<double> progress_;
    std::vector<std::string> buffer_;
    std::optional<std::vector<std::string>> task_;
    bool task_finished_ = false;
    std::size_t errors_ = 0;
    double epoch_ms_ = 0.0;
};

[[nodiscard]] nlohmann::json error_message(std::string_view what);

} // namespace pursuit
