#include "pursuit/window_stats.hpp"

#include "pursuit/errors.hpp"

#include <cmath>
#include <utility>

namespace pursuit {

AxisWindowStats::AxisWindowStats(std::size_t capacity)
    : capacity_(capacity), gaze_(capacity), target_(capacity) {
    if (capacity < 2) {
        throw ConfigError("window capacity must be at least 2");
    }
}

void AxisWindowStats::push(double gaze, double target) {
    if (!std::isfinite(gaze) || !std::isfinite(target)) {
        throw InvalidSampleError("non-finite coordinate pushed into window");
    }

    std::size_t slot;
    if (count_ == capacity_) {
        slot = head_;
        const double ox = gaze_[slot];
        const double oy = target_[slot];
        sums_.sx -= ox;
        sums_.sy -= oy;
        sums_.sxy -= ox * oy;
        sums_.sxx -= ox * ox;
        sums_.syy -= oy * oy;
        head_ = (head_ + 1) % capacity_;
    } else {
        slot = (head_ + count_) % capacity_;
        ++count_;
    }

    gaze_[slot] = gaze;
    target_[slot] = target;
    sums_.sx += gaze;
    sums_.sy += target;
    sums_.sxy += gaze * target;
    sums_.sxx += gaze * gaze;
    sums_.syy += target * target;

    if (++pushes_since_recompute_ >= kRecomputeInterval) {
        recompute();
    }
}

void AxisWindowStats::reset() noexcept {
    head_ = 0;
    count_ = 0;
    pushes_since_recompute_ = 0;
    sums_ = {};
}

void AxisWindowStats::recompute() noexcept {
    WindowSums s;
    for (std::size_t i = 0; i < count_; ++i) {
        const std::size_t k = (head_ + i) % capacity_;
        const double x = gaze_[k];
        const double y = target_[k];
        s.sx += x;
        s.sy += y;
        s.sxy += x * y;
        s.sxx += x * x;
        s.syy += y * y;
    }
    sums_ = s;
    pushes_since_recompute_ = 0;
}

std::vector<std::pair<double, double>> AxisWindowStats::contents() const {
    std::vector<std::pair<double, double>> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i) {
        const std::size_t k = (head_ + i) % capacity_;
        out.emplace_back(gaze_[k], target_[k]);
    }
    return out;
}

RegressionResult AxisWindowStats::evaluate() const noexcept {
    if (count_ < capacity_) {
        return {};
    }
    return evaluate_sums(sums_, count_);
}

namespace {

// n*Σx² - (Σx)² suffers cancellation when the coordinates sit far from the
// origin. Anything at the rounding-noise level of n*Σx² counts as zero.
bool degenerate(double denom, double scale) noexcept {
    return !(std::abs(denom) >= AxisWindowStats::kEpsilon) || denom <= 1e-12 * scale;
}

} // namespace

RegressionResult evaluate_sums(const WindowSums& s, std::size_t count) noexcept {
    RegressionResult r;
    if (count == 0) {
        return r;
    }
    const double n = static_cast<double>(count);
    const double num = n * s.sxy - s.sx * s.sy;
    const double dx = n * s.sxx - s.sx * s.sx;
    const double dy = n * s.syy - s.sy * s.sy;
    const bool x_ok = !degenerate(dx, n * s.sxx);
    const bool y_ok = !degenerate(dy, n * s.syy);

    if (x_ok) {
        r.slope = num / dx;
        r.intercept = (s.sy - r.slope * s.sx) / n;
        r.slope_defined = true;
        r.intercept_defined = true;
    }
    if (x_ok && y_ok) {
        r.correlation = num / (std::sqrt(dx) * std::sqrt(dy));
        r.correlation_defined = true;
    }
    return r;
}

} // namespace pursuit
