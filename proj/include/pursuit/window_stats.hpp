#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pursuit {

/// Slope, intercept and Pearson correlation of one data window.
/// A quantity is only meaningful when its `*_defined` flag is set.
struct RegressionResult {
    double slope = 0.0;
    double intercept = 0.0;
    double correlation = 0.0;
    bool slope_defined = false;
    bool intercept_defined = false;
    bool correlation_defined = false;
};

struct WindowSums {
    double sx = 0.0;
    double sy = 0.0;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
};

/// Sliding window over the last `capacity` (gaze, target) pairs of one axis.
///
/// x is the gaze coordinate, y the target coordinate. The five running sums
/// are updated by subtracting the evicted pair and adding the new one, so a
/// push costs O(1) regardless of the window size. Every `kRecomputeInterval`
/// pushes the sums are rebuilt from the buffer to bound rounding drift.
class AxisWindowStats {
public:
    static constexpr std::uint64_t kRecomputeInterval = 10'000;
    static constexpr double kEpsilon = 1e-9;

    explicit AxisWindowStats(std::size_t capacity);

    /// Throws InvalidSampleError on non-finite input; the window is left unchanged.
    void push(double gaze, double target);
    void reset() noexcept;

    /// Undefined flags are set while the window is not yet full, or when a
    /// variance denominator is (numerically) zero.
    [[nodiscard]] RegressionResult evaluate() const noexcept;

    [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
    [[nodiscard]] std::size_t count() const noexcept { return count_; }
    [[nodiscard]] bool full() const noexcept { return count_ == capacity_; }
    [[nodiscard]] const WindowSums& sums() const noexcept { return sums_; }

    /// Pairs oldest first.
    [[nodiscard]] std::vector<std::pair<double, double>> contents() const;

private:
    void recompute() noexcept;

    std::size_t capacity_;
    std::vector<double> gaze_;
    std::vector<double> target_;
    std::size_t head_ = 0; // index of the oldest pair
    std::size_t count_ = 0;
    std::uint64_t pushes_since_recompute_ = 0;
    WindowSums sums_;
};

/// Closed-form evaluation of the regression formulas from raw sums.
[[nodiscard]] RegressionResult evaluate_sums(const WindowSums& sums, std::size_t n) noexcept;

} // namespace pursuit
