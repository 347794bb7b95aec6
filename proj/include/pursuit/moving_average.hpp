#pragma once

#include "pursuit/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pursuit {

/// Mean of the last k points, O(1) per push. While fewer than k points have
/// been seen the mean covers what is available.
class MovingAverage {
public:
    explicit MovingAverage(std::size_t k);

    Point push(Point p);
    void reset() noexcept;

    [[nodiscard]] std::size_t size() const noexcept { return count_; }
    [[nodiscard]] std::size_t capacity() const noexcept { return ring_.size(); }

private:
    std::vector<Point> ring_;
    std::size_t head_ = 0;
    std::size_t count_ = 0;
    std::uint64_t pushes_ = 0;
    Point sum_;
};

} // namespace pursuit
