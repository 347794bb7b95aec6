#pragma once

namespace pursuit {

/// Screen coordinates in pixels; y grows downward.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct GazeSample {
    double t_ms = 0.0;
    Point pos;

    friend bool operator==(const GazeSample&, const GazeSample&) = default;
};

} // namespace pursuit
