#include "pursuit/moving_average.hpp"

#include "pursuit/errors.hpp"

namespace pursuit {

MovingAverage::MovingAverage(std::size_t k) : ring_(k) {
    if (k == 0) {
        throw ConfigError("moving average length must be positive");
    }
}

Point MovingAverage::push(Point p) {
    const std::size_t k = ring_.size();
    if (count_ == k) {
        sum_.x -= ring_[head_].x;
        sum_.y -= ring_[head_].y;
        ring_[head_] = p;
        head_ = (head_ + 1) % k;
    } else {
        ring_[(head_ + count_) % k] = p;
        ++count_;
    }
    sum_.x += p.x;
    sum_.y += p.y;

    // periodic exact rebuild against drift
    if (++pushes_ % 10'000 == 0) {
        sum_ = {};
        for (std::size_t i = 0; i < count_; ++i) {
            sum_.x += ring_[(head_ + i) % k].x;
            sum_.y += ring_[(head_ + i) % k].y;
        }
    }

    const double n = static_cast<double>(count_);
    return {sum_.x / n, sum_.y / n};
}

void MovingAverage::reset() noexcept {
    head_ = 0;
    count_ = 0;
    pushes_ = 0;
    sum_ = {};
}

} // namespace pursuit
