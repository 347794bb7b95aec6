#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "pursuit/detector.hpp"
#include "pursuit/errors.hpp"
#include "pursuit/trajectory.hpp"

#include <limits>
#include <random>

using namespace pursuit;

namespace {

constexpr double kDtMs = 1000.0 / 60.0;

std::vector<TargetPosition> positions(const Layout& l, double t_ms) {
    std::vector<TargetPosition> out;
    for (const auto& t : l.targets) {
        out.push_back({t.id, t.trajectory.position_at(t_ms / 1000.0)});
    }
    return out;
}

struct Fired {
    std::size_t sample;
    int target;
    bool operator==(const Fired&) const = default;
};

// Gaze follows `pursued` exactly, passed through an optional affine map.
std::vector<Fired> run_ideal(const Layout& l, int pursued, const DetectorConfig& cfg, std::size_t samples,
                             double sx = 1, double sy = 1, double dx = 0, double dy = 0) {
    Detector d(cfg, l.ids());
    std::vector<Fired> out;
    const auto& tr = l.find(pursued)->trajectory;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) * kDtMs;
        Point g = tr.position_at(t / 1000.0);
        g = {g.x * sx + dx, g.y * sy + dy};
        for (const auto& e : d.ingest({t, g}, positions(l, t)).events) {
            out.push_back({i, e.target_id});
        }
    }
    return out;
}

std::vector<Fired> run_oracle(const Layout& l, int pursued, const DetectorConfig& cfg, std::size_t samples) {
    oracle::Detector d(cfg, l.targets.size());
    std::vector<Fired> out;
    const auto& tr = l.find(pursued)->trajectory;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) * kDtMs;
        std::vector<Point> targets;
        for (const auto& p : positions(l, t)) {
            targets.push_back(p.pos);
        }
        for (int k : d.ingest(tr.position_at(t / 1000.0), targets)) {
            out.push_back({i, l.targets[static_cast<std::size_t>(k)].id});
        }
    }
    return out;
}

const DetectorConfig kSlope = DetectorConfig::defaults(Method::slope);
const DetectorConfig kCorr = DetectorConfig::defaults(Method::correlation);

} // namespace

TEST_CASE("study defaults") {
    CHECK(kCorr.window_size == 30);
    CHECK(kCorr.smoothing_k == 0);
    CHECK(kCorr.min_duration == 20);
    CHECK(kCorr.correlation_threshold == 0.8);
    CHECK(kCorr.skip_samples == 30);
    CHECK(kSlope.window_size == 30);
    CHECK(kSlope.smoothing_k == 20);
    CHECK(kSlope.min_duration == 15);
    CHECK(kSlope.slope_lo == 0.77);
    CHECK(kSlope.slope_hi == 1.3);
    CHECK(kSlope.skip_samples == 30);
    CHECK(kSlope.sample_rate == 60.0);
}

TEST_CASE("config validation") {
    DetectorConfig c = kSlope;
    c.window_size = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = kSlope;
    c.min_duration = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = kSlope;
    c.slope_lo = 1.3;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = kCorr;
    c.correlation_threshold = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.correlation_threshold = 1.0;
    CHECK_NOTHROW(c.validate());
    CHECK_THROWS_AS(Detector(kSlope, {1, 1}), ConfigError);
    CHECK(parse_method("slope") == Method::slope);
    CHECK_THROWS_AS((void)parse_method("euclidean"), ConfigError);
}

TEST_CASE("ideal pursuit: correlation fires on the 49th sample") {
    const Layout l = dialplate_layout(20);
    const auto fired = run_ideal(l, 3, kCorr, 150);
    REQUIRE_FALSE(fired.empty());
    CHECK(fired.front() == Fired{48, 3});
    CHECK(fired.front().sample + 1 == kCorr.window_size + kCorr.min_duration - 1);
}

TEST_CASE("detector agrees with the brute-force oracle") {
    for (int n : {6, 12, 20, 24}) {
        for (const auto& cfg : {kSlope, kCorr}) {
            for (int pursued : {0, 3, n - 1, n}) {
                CAPTURE(n);
                CAPTURE(pursued);
                CHECK(run_ideal(dialplate_layout(n), pursued, cfg, 300) ==
                      run_oracle(dialplate_layout(n), pursued, cfg, 300));
            }
        }
    }
}

TEST_CASE("stationary gaze never fires") {
    for (int n : {6, 24}) {
        const Layout l = dialplate_layout(n);
        for (const auto& cfg : {kSlope, kCorr}) {
            Detector d(cfg, l.ids());
            for (int i = 0; i < 2000; ++i) {
                const double t = i * kDtMs;
                CHECK(d.ingest({t, {960, 540}}, positions(l, t)).events.empty());
            }
        }
    }
}

TEST_CASE("20 targets, one rotation: slope has no false positives, correlation does") {
    const Layout l = dialplate_layout(20);
    const auto slope = run_ideal(l, 3, kSlope, 150);
    REQUIRE_FALSE(slope.empty());
    for (const auto& f : slope) {
        CHECK(f.target == 3);
    }
    const auto corr = run_ideal(l, 3, kCorr, 150);
    std::size_t neighbour = 0;
    for (const auto& f : corr) {
        if (f.target != 3) {
            ++neighbour;
            CHECK((f.target == 2 || f.target == 4));
        }
    }
    CHECK(neighbour >= 1);
}

TEST_CASE("same-phase targets of different radius") {
    Layout l;
    l.targets.push_back({0, "big", make_trajectory({960, 540}, 130, 2.5, 0.0, true)});
    l.targets.push_back({1, "small", make_trajectory({960, 540}, 80, 2.5, 0.0, true)});

    const auto slope = run_ideal(l, 0, kSlope, 300);
    REQUIRE_FALSE(slope.empty());
    for (const auto& f : slope) {
        CHECK(f.target == 0);
    }

    Detector d(kCorr, l.ids());
    bool both = false;
    bool ambiguous = false;
    for (int i = 0; i < 150; ++i) {
        const double t = i * kDtMs;
        const auto out = d.ingest({t, l.targets[0].trajectory.position_at(t / 1000.0)}, positions(l, t));
        both = both || (out.targets[0].cond_x && out.targets[0].cond_y && out.targets[1].cond_x && out.targets[1].cond_y);
        ambiguous = ambiguous || out.ambiguous;
        if (!out.targets[1].x.slope_defined) {
            continue;
        }
        CHECK(out.targets[1].x.slope == doctest::Approx(80.0 / 130.0).epsilon(1e-6));
    }
    CHECK(both);
    CHECK(ambiguous);
}

TEST_CASE("sample errors leave the detector untouched") {
    const Layout l = dialplate_layout(6);
    Detector d(kCorr, l.ids());
    Detector twin(kCorr, l.ids());
    const auto& tr = l.targets[2].trajectory;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < 80; ++i) {
        const double t = i * kDtMs;
        const Point g = tr.position_at(t / 1000.0);
        if (i == 10) {
            CHECK_THROWS_AS(d.ingest({t, {nan, 1}}, positions(l, t)), InvalidSampleError);
            auto bad = positions(l, t);
            bad[0].id = 99;
            CHECK_THROWS_AS(d.ingest({t, g}, bad), LayoutMismatchError);
            bad = positions(l, t);
            bad.pop_back();
            CHECK_THROWS_AS(d.ingest({t, g}, bad), LayoutMismatchError);
            bad = positions(l, t);
            bad[1].id = bad[0].id;
            CHECK_THROWS_AS(d.ingest({t, g}, bad), LayoutMismatchError);
        }
        if (i == 20) {
            CHECK_THROWS_AS(d.ingest({t - kDtMs, g}, positions(l, t)), OrderingError);
        }
        const auto a = d.ingest({t, g}, positions(l, t));
        const auto b = twin.ingest({t, g}, positions(l, t));
        CHECK(a.events == b.events);
        CHECK(a.targets[2].consecutive == b.targets[2].consecutive);
    }
    CHECK_THROWS_AS(d.ingest({79 * kDtMs, {1, 1}}, positions(l, 0)), OrderingError);
}

TEST_CASE("targets may arrive in any order") {
    const Layout l = dialplate_layout(8);
    Detector a(kCorr, l.ids());
    Detector b(kCorr, l.ids());
    const auto& tr = l.targets[5].trajectory;
    for (int i = 0; i < 120; ++i) {
        const double t = i * kDtMs;
        auto pos = positions(l, t);
        const auto ra = a.ingest({t, tr.position_at(t / 1000)}, pos);
        std::reverse(pos.begin(), pos.end());
        const auto rb = b.ingest({t, tr.position_at(t / 1000)}, pos);
        CHECK(ra.events == rb.events);
        CHECK(ra.targets[5].progress == rb.targets[5].progress);
    }
}

TEST_CASE("progress, event edge and skip") {
    const Layout l = dialplate_layout(6);
    Detector d(kCorr, l.ids());
    const auto& tr = l.targets[1].trajectory;
    std::optional<std::size_t> last_event;
    std::size_t events = 0;
    for (std::size_t i = 0; i < 600; ++i) {
        const double t = static_cast<double>(i) * kDtMs;
        const auto out = d.ingest({t, tr.position_at(t / 1000)}, positions(l, t));
        for (const auto& tf : out.targets) {
            CHECK(tf.progress == doctest::Approx(std::min(1.0, tf.consecutive / 20.0)));
            CHECK((tf.consecutive == 0 || (tf.cond_x && tf.cond_y)));
        }
        if (!out.events.empty()) {
            ++events;
            CHECK(out.targets[1].progress == 1.0);
            CHECK(out.targets[1].consecutive == kCorr.min_duration);
            if (last_event) {
                CHECK(i - *last_event > kCorr.skip_samples);
            }
            last_event = i;
            CHECK(d.skip_remaining() == 30);
            for (double p : d.progress()) {
                CHECK(p == 0.0);
            }
        } else if (last_event && i - *last_event <= 30) {
            CHECK(out.skipping);
        }
    }
    CHECK(events >= 4);
}

TEST_CASE("reset") {
    const Layout l = dialplate_layout(6);
    Detector d(kCorr, l.ids());
    const auto& tr = l.targets[0].trajectory;
    std::size_t i = 0;
    auto feed = [&](std::size_t count, Point fixed = {-1, -1}) {
        std::optional<std::size_t> first;
        for (std::size_t k = 0; k < count; ++k, ++i) {
            const double t = static_cast<double>(i) * kDtMs;
            const Point g = fixed.x < 0 ? tr.position_at(t / 1000) : fixed;
            if (!d.ingest({t, g}, positions(l, t)).events.empty() && !first) {
                first = k;
            }
        }
        return first;
    };
    CHECK_FALSE(feed(40));
    d.reset();
    d.reset();
    CHECK(d.skip_remaining() == 0);
    // latency restarts from zero after the reset
    CHECK(feed(100) == std::optional<std::size_t>{48});
    d.reset();
    CHECK_FALSE(feed(500, {960, 540}));
}

TEST_CASE("single-sample correlation detector") {
    DetectorConfig prior = kCorr;
    prior.min_duration = 1;
    const auto fired = run_ideal(dialplate_layout(6), 2, prior, 40);
    REQUIRE_FALSE(fired.empty());
    CHECK(fired.front() == Fired{29, 2});
}

TEST_CASE("property: affine calibration errors do not change events") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> scale(0.9, 1.1);
    std::uniform_real_distribution<double> offset(-200.0, 200.0);
    for (int n : {6, 12, 20}) {
        const Layout l = dialplate_layout(n);
        const auto corr_ref = run_ideal(l, 1, kCorr, 300);
        for (int trial = 0; trial < 10; ++trial) {
            const double sx = scale(rng), sy = scale(rng), dx = offset(rng), dy = offset(rng);
            CAPTURE(sx);
            CAPTURE(sy);
            CHECK(run_ideal(l, 1, kCorr, 300, sx, sy, dx, dy) == corr_ref);
            const auto slope = run_ideal(l, 1, kSlope, 300, sx, sy, dx, dy);
            REQUIRE_FALSE(slope.empty());
            for (const auto& f : slope) {
                CHECK(f.target == 1);
            }
        }
    }
}

TEST_CASE("gaze-only smoothing trails the pursued target") {
    DetectorConfig gaze_only = kSlope;
    gaze_only.smooth_targets = false;
    CHECK(run_ideal(dialplate_layout(6), 3, gaze_only, 150).empty());
    const auto fired = run_ideal(dialplate_layout(20), 3, gaze_only, 150);
    REQUIRE_FALSE(fired.empty());
    CHECK(fired.front().target == 2);
    CHECK(run_oracle(dialplate_layout(20), 3, gaze_only, 150) == fired);
}
