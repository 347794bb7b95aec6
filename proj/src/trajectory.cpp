#include "pursuit/trajectory.hpp"

#include "pursuit/errors.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace pursuit {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Point CircularTrajectory::position_at(double t_s) const noexcept {
    const double angle = phase + angular_velocity * t_s;
    return {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
}

double CircularTrajectory::period() const noexcept {
    return kTwoPi / std::abs(angular_velocity);
}

double CircularTrajectory::speed_deg_per_s(double px_per_degree) const noexcept {
    return radius * std::abs(angular_velocity) / px_per_degree;
}

CircularTrajectory make_trajectory(Point center, double radius, double period_s, double phase,
                                   bool clockwise) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ConfigError("trajectory radius must be positive");
    }
    if (!(period_s > 0.0) || !std::isfinite(period_s)) {
        throw ConfigError("trajectory period must be positive");
    }
    double wrapped = std::fmod(phase, kTwoPi);
    if (wrapped < 0.0) {
        wrapped += kTwoPi;
    }
    const double omega = kTwoPi / period_s;
    return {center, radius, clockwise ? omega : -omega, wrapped};
}

const TargetSpec* Layout::find(int id) const noexcept {
    for (const auto& t : targets) {
        if (t.id == id) {
            return &t;
        }
    }
    return nullptr;
}

std::vector<int> Layout::ids() const {
    std::vector<int> out;
    out.reserve(targets.size());
    for (const auto& t : targets) {
        out.push_back(t.id);
    }
    return out;
}

std::string selectable_label(int k) {
    if (k < 0 || k >= 24) {
        throw ConfigError("no symbol for target index " + std::to_string(k));
    }
    if (k < 10) {
        return std::string(1, static_cast<char>('0' + k));
    }
    return std::string(1, static_cast<char>('A' + (k - 10)));
}

Layout dialplate_layout(int num_selectable, Point screen) {
    if (num_selectable < 6 || num_selectable > 24 || num_selectable % 2 != 0) {
        throw ConfigError("unsupported target count " + std::to_string(num_selectable) +
                          " (expected 6, 8, ..., 24)");
    }
    const Point center{screen.x / 2.0, screen.y / 2.0};
    Layout layout;
    layout.targets.reserve(static_cast<std::size_t>(num_selectable) + 1);
    for (int k = 0; k < num_selectable; ++k) {
        const double phase = kTwoPi * k / num_selectable;
        layout.targets.push_back({k, selectable_label(k),
                                  make_trajectory(center, apparatus::kSelectableRadiusPx,
                                                  apparatus::kRotationPeriodS, phase, true)});
    }
    layout.targets.push_back({num_selectable, kCancelLabel,
                              make_trajectory(center, apparatus::kCancelRadiusPx,
                                              apparatus::kRotationPeriodS, 0.0, false)});
    return layout;
}

void validate_layout(const Layout& layout) {
    if (layout.targets.empty()) {
        throw ConfigError("layout has no targets");
    }
    std::set<int> ids;
    std::set<std::string> labels;
    for (const auto& t : layout.targets) {
        if (!ids.insert(t.id).second) {
            throw ConfigError("duplicate target id " + std::to_string(t.id));
        }
        if (!t.label.empty() && !labels.insert(t.label).second) {
            throw ConfigError("duplicate target label " + t.label);
        }
        const auto& tr = t.trajectory;
        if (!(tr.radius > 0.0) || !std::isfinite(tr.radius) || !std::isfinite(tr.angular_velocity) ||
            tr.angular_velocity == 0.0 || !std::isfinite(tr.center.x) || !std::isfinite(tr.center.y)) {
            throw ConfigError("target " + std::to_string(t.id) + " has an invalid trajectory");
        }
    }
}

std::vector<std::string> pursuit_speed_warnings(const Layout& layout) {
    std::vector<std::string> out;
    for (const auto& t : layout.targets) {
        const double speed = t.trajectory.speed_deg_per_s();
        if (speed < apparatus::kMinPursuitSpeedDegPerS || speed > apparatus::kMaxPursuitSpeedDegPerS) {
            std::ostringstream msg;
            msg << "target " << t.id << " (" << t.label << ") moves at " << speed
                << " deg/s, outside the 5-20 deg/s smooth pursuit range";
            out.push_back(msg.str());
        }
    }
    return out;
}

} // namespace pursuit
