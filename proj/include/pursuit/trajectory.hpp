#pragma once

#include "pursuit/geometry.hpp"

#include <numbers>
#include <string>
#include <vector>

namespace pursuit {

/// Display geometry of the study apparatus.
namespace apparatus {
inline constexpr double kSelectableRadiusPx = 130.0;
inline constexpr double kCancelRadiusPx = 80.0;
inline constexpr double kTargetDisplayRadiusPx = 20.0;
inline constexpr double kRotationPeriodS = 2.5;
inline constexpr double kPixelsPerDegree = 50.0;
inline constexpr double kSampleRateHz = 60.0;
inline constexpr double kMinPursuitSpeedDegPerS = 5.0;
inline constexpr double kMaxPursuitSpeedDegPerS = 20.0;
inline constexpr Point kDefaultScreen{1920.0, 1080.0};
} // namespace apparatus

/// Uniform circular motion. Positive angular velocity is clockwise on screen
/// (y down): the angle grows from +x towards +y.
struct CircularTrajectory {
    Point center;
    double radius = 0.0;           // px, > 0
    double angular_velocity = 0.0; // rad/s
    double phase = 0.0;            // rad, [0, 2π)

    [[nodiscard]] Point position_at(double t_s) const noexcept;
    [[nodiscard]] double period() const noexcept;
    [[nodiscard]] bool clockwise() const noexcept { return angular_velocity > 0.0; }
    /// Tangential speed converted to degrees of visual angle per second.
    [[nodiscard]] double speed_deg_per_s(double px_per_degree = apparatus::kPixelsPerDegree) const noexcept;
};

[[nodiscard]] CircularTrajectory make_trajectory(Point center, double radius, double period_s,
                                                 double phase, bool clockwise);

inline constexpr const char* kCancelLabel = "CANCEL";

struct TargetSpec {
    int id = 0;
    std::string label;
    CircularTrajectory trajectory;

    [[nodiscard]] bool is_cancel() const noexcept { return label == kCancelLabel; }
};

struct Layout {
    std::vector<TargetSpec> targets;
    double display_radius = apparatus::kTargetDisplayRadiusPx;

    [[nodiscard]] const TargetSpec* find(int id) const noexcept;
    [[nodiscard]] std::vector<int> ids() const;
};

/// Symbol for the k-th selectable target: 0-9, then A-N.
[[nodiscard]] std::string selectable_label(int k);

/// Study layout: `num_selectable` clockwise targets evenly phased on the
/// 130 px circle plus one counter-clockwise CANCEL target on the 80 px
/// circle, all centred on the screen. Supported counts are 6, 8, ..., 24;
/// anything else throws ConfigError.
[[nodiscard]] Layout dialplate_layout(int num_selectable, Point screen = apparatus::kDefaultScreen);

/// Checks every ordinary layout invariant (unique ids, radius > 0, ...).
void validate_layout(const Layout& layout);

/// Human readable warnings for targets moving outside the 5-20 deg/s band
/// in which smooth pursuit is possible.
[[nodiscard]] std::vector<std::string> pursuit_speed_warnings(const Layout& layout);

} // namespace pursuit
