#include "pursuit/detector.hpp"

#include "pursuit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pursuit {

std::string_view to_string(Method m) noexcept {
    return m == Method::slope ? "slope" : "correlation";
}

Method parse_method(std::string_view text) {
    if (text == "slope") {
        return Method::slope;
    }
    if (text == "correlation") {
        return Method::correlation;
    }
    throw ConfigError("unknown method '" + std::string(text) + "' (expected slope or correlation)");
}

DetectorConfig DetectorConfig::defaults(Method method) noexcept {
    DetectorConfig c;
    c.method = method;
    if (method == Method::correlation) {
        c.smoothing_k = 0;
        c.min_duration = 20;
    }
    return c;
}

void DetectorConfig::validate() const {
    if (window_size < 2) {
        throw ConfigError("window_size must be at least 2");
    }
    if (min_duration < 1) {
        throw ConfigError("min_duration must be at least 1");
    }
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
        throw ConfigError("sample_rate must be positive");
    }
    if (method == Method::slope) {
        if (!std::isfinite(slope_lo) || !std::isfinite(slope_hi) || !(slope_lo < slope_hi)) {
            throw ConfigError("slope interval needs lo < hi");
        }
    } else if (!(correlation_threshold > 0.0 && correlation_threshold <= 1.0)) {
        throw ConfigError("correlation threshold must lie in (0, 1]");
    }
}

bool DetectorConfig::accepts(double metric) const noexcept {
    if (method == Method::slope) {
        return metric >= slope_lo && metric <= slope_hi;
    }
    return metric >= correlation_threshold;
}

Detector::Detector(DetectorConfig config, std::vector<int> target_ids)
    : config_(config), ids_(std::move(target_ids)) {
    config_.validate();
    if (ids_.empty()) {
        throw ConfigError("detector needs at least one target");
    }
    channels_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (!index_of_.emplace(ids_[i], i).second) {
            throw ConfigError("duplicate target id " + std::to_string(ids_[i]));
        }
        Channel ch{AxisWindowStats(config_.window_size), AxisWindowStats(config_.window_size), {}, 0};
        if (config_.smoothing_k > 0 && config_.smooth_targets) {
            ch.smoother.emplace(config_.smoothing_k);
        }
        channels_.push_back(std::move(ch));
    }
    if (config_.smoothing_k > 0) {
        gaze_smoother_.emplace(config_.smoothing_k);
    }
    slot_.resize(ids_.size());
}

void Detector::map_targets(std::span<const TargetPosition> targets) {
    if (targets.size() != ids_.size()) {
        throw LayoutMismatchError("expected " + std::to_string(ids_.size()) + " targets, got " +
                                  std::to_string(targets.size()));
    }
    std::vector<bool> seen(ids_.size(), false);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        std::size_t idx;
        if (ids_[i] == targets[i].id) {
            idx = i;
        } else {
            auto it = index_of_.find(targets[i].id);
            if (it == index_of_.end()) {
                throw LayoutMismatchError("unknown target id " + std::to_string(targets[i].id));
            }
            idx = it->second;
        }
        if (seen[idx]) {
            throw LayoutMismatchError("target id " + std::to_string(targets[i].id) + " given twice");
        }
        seen[idx] = true;
        if (!std::isfinite(targets[i].pos.x) || !std::isfinite(targets[i].pos.y)) {
            throw InvalidSampleError("non-finite position for target " + std::to_string(targets[i].id));
        }
        slot_[i] = idx;
    }
}

double Detector::progress_of(std::size_t consecutive) const noexcept {
    return std::min(1.0, static_cast<double>(consecutive) / static_cast<double>(config_.min_duration));
}

FrameOutput Detector::ingest(const GazeSample& gaze, std::span<const TargetPosition> targets) {
    if (!std::isfinite(gaze.t_ms) || !std::isfinite(gaze.pos.x) || !std::isfinite(gaze.pos.y)) {
        throw InvalidSampleError("non-finite gaze sample");
    }
    if (last_t_ms_ && !(gaze.t_ms > *last_t_ms_)) {
        throw OrderingError("gaze timestamp " + std::to_string(gaze.t_ms) +
                            " ms does not follow " + std::to_string(*last_t_ms_) + " ms");
    }
    map_targets(targets);
    last_t_ms_ = gaze.t_ms;

    FrameOutput out;
    out.t_ms = gaze.t_ms;
    out.targets.resize(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        out.targets[i].id = ids_[i];
    }

    if (skip_remaining_ > 0) {
        --skip_remaining_;
        out.skipping = true;
        return out;
    }

    const Point effective = gaze_smoother_ ? gaze_smoother_->push(gaze.pos) : gaze.pos;

    for (std::size_t i = 0; i < targets.size(); ++i) {
        const std::size_t idx = slot_[i];
        Channel& ch = channels_[idx];
        const Point target = ch.smoother ? ch.smoother->push(targets[i].pos) : targets[i].pos;
        ch.x.push(effective.x, target.x);
        ch.y.push(effective.y, target.y);

        TargetFrame& tf = out.targets[idx];
        tf.x = ch.x.evaluate();
        tf.y = ch.y.evaluate();
        if (config_.method == Method::slope) {
            tf.cond_x = tf.x.slope_defined && config_.accepts(tf.x.slope);
            tf.cond_y = tf.y.slope_defined && config_.accepts(tf.y.slope);
        } else {
            tf.cond_x = tf.x.correlation_defined && config_.accepts(tf.x.correlation);
            tf.cond_y = tf.y.correlation_defined && config_.accepts(tf.y.correlation);
        }
        ch.consecutive = (tf.cond_x && tf.cond_y) ? ch.consecutive + 1 : 0;
        tf.consecutive = ch.consecutive;
        tf.progress = progress_of(ch.consecutive);
        if (ch.consecutive == config_.min_duration) {
            out.events.push_back({ids_[idx], gaze.t_ms, config_.method});
        }
    }

    if (!out.events.empty()) {
        std::sort(out.events.begin(), out.events.end(),
                  [this](const DetectionEvent& a, const DetectionEvent& b) {
                      return index_of_.at(a.target_id) < index_of_.at(b.target_id);
                  });
        out.ambiguous = out.events.size() > 1;
        clear_buffers();
        skip_remaining_ = config_.skip_samples;
    }
    return out;
}

void Detector::clear_buffers() noexcept {
    for (auto& ch : channels_) {
        ch.x.reset();
        ch.y.reset();
        if (ch.smoother) {
            ch.smoother->reset();
        }
        ch.consecutive = 0;
    }
    if (gaze_smoother_) {
        gaze_smoother_->reset();
    }
}

void Detector::reset() noexcept {
    clear_buffers();
    skip_remaining_ = 0;
    last_t_ms_.reset();
}

std::vector<double> Detector::progress() const {
    std::vector<double> out;
    out.reserve(channels_.size());
    for (const auto& ch : channels_) {
        out.push_back(progress_of(ch.consecutive));
    }
    return out;
}

} // namespace pursuit
