#pragma once

// Brute-force reference implementations used only by tests. Nothing here
// shares code with the incremental implementation: windows are stored in
// full and every metric is recomputed from centred two-pass sums.

#include "pursuit/detector.hpp"
#include "pursuit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

struct Fit {
    std::optional<double> slope;
    std::optional<double> intercept;
    std::optional<double> correlation;
};

// Centred two-pass regression of y on x.
inline Fit fit(const std::vector<std::pair<double, double>>& pairs) {
    Fit f;
    if (pairs.empty()) {
        return f;
    }
    const double n = static_cast<double>(pairs.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : pairs) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double cxy = 0.0;
    double cxx = 0.0;
    double cyy = 0.0;
    for (const auto& [x, y] : pairs) {
        cxy += (x - mx) * (y - my);
        cxx += (x - mx) * (x - mx);
        cyy += (y - my) * (y - my);
    }
    if (cxx * n * n > 1e-9) {
        f.slope = cxy / cxx;
        f.intercept = my - *f.slope * mx;
        if (cyy * n * n > 1e-9) {
            f.correlation = cxy / std::sqrt(cxx * cyy);
        }
    }
    return f;
}

struct Event {
    std::size_t sample;
    int target;
    bool operator==(const Event&) const = default;
};

// Straightforward per-sample detector: full windows kept as deques,
// smoothing as a plain mean over the stored history.
class Detector {
public:
    Detector(pursuit::DetectorConfig config, std::size_t targets)
        : cfg_(config), windows_(targets), target_hist_(targets), consecutive_(targets, 0) {}

    std::vector<int> ingest(pursuit::Point gaze, const std::vector<pursuit::Point>& targets) {
        ++sample_;
        if (skip_ > 0) {
            --skip_;
            return {};
        }
        const pursuit::Point g = smooth(gaze_hist_, gaze);
        std::vector<int> fired;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            const pursuit::Point t = cfg_.smooth_targets ? smooth(target_hist_[i], targets[i]) : targets[i];
            auto& w = windows_[i];
            w.push_back({g, t});
            if (w.size() > cfg_.window_size) {
                w.pop_front();
            }
            bool ok = w.size() == cfg_.window_size;
            for (int axis = 0; ok && axis < 2; ++axis) {
                std::vector<std::pair<double, double>> pairs;
                for (const auto& [gp, tp] : w) {
                    pairs.emplace_back(axis == 0 ? gp.x : gp.y, axis == 0 ? tp.x : tp.y);
                }
                const Fit f = fit(pairs);
                if (cfg_.method == pursuit::Method::slope) {
                    ok = f.slope && *f.slope >= cfg_.slope_lo && *f.slope <= cfg_.slope_hi;
                } else {
                    ok = f.correlation && *f.correlation >= cfg_.correlation_threshold;
                }
            }
            consecutive_[i] = ok ? consecutive_[i] + 1 : 0;
            if (consecutive_[i] == cfg_.min_duration) {
                fired.push_back(static_cast<int>(i));
            }
        }
        if (!fired.empty()) {
            for (auto& w : windows_) {
                w.clear();
            }
            for (auto& h : target_hist_) {
                h.clear();
            }
            gaze_hist_.clear();
            std::fill(consecutive_.begin(), consecutive_.end(), 0);
            skip_ = cfg_.skip_samples;
        }
        return fired;
    }

private:
    pursuit::Point smooth(std::deque<pursuit::Point>& hist, pursuit::Point p) const {
        if (cfg_.smoothing_k == 0) {
            return p;
        }
        hist.push_back(p);
        if (hist.size() > cfg_.smoothing_k) {
            hist.pop_front();
        }
        pursuit::Point m;
        for (const auto& q : hist) {
            m.x += q.x;
            m.y += q.y;
        }
        return {m.x / static_cast<double>(hist.size()), m.y / static_cast<double>(hist.size())};
    }

    pursuit::DetectorConfig cfg_;
    std::vector<std::deque<std::pair<pursuit::Point, pursuit::Point>>> windows_;
    std::vector<std::deque<pursuit::Point>> target_hist_;
    std::deque<pursuit::Point> gaze_hist_;
    std::vector<std::size_t> consecutive_;
    std::size_t skip_ = 0;
    std::size_t sample_ = 0;
};

} // namespace oracle
