#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace pursuit {

/// Line-oriented TCP front end: one Session per connection, newline
/// delimited JSON both ways. Idle sessions get a frame every
/// `tick_interval_ms` so clients keep animating and deadlines fire.
class StreamServer {
public:
    struct Options {
        std::string bind_address = "127.0.0.1";
        std::uint16_t port = 7470; // 0 picks a free port
        int tick_interval_ms = 17;
    };

    explicit StreamServer(Options options);
    ~StreamServer();

    StreamServer(const StreamServer&) = delete;
    StreamServer& operator=(const StreamServer&) = delete;

    /// Binds and listens; returns the bound port. Throws std::system_error.
    std::uint16_t listen();
    /// Accepts connections until stop(). Blocks.
    void serve();
    /// Ends serve() and closes every connection. The listening socket stays
    /// open until destruction.
    void stop();
    /// Async-signal-safe: makes serve() return at its next poll.
    void request_stop() noexcept { running_ = false; }

    [[nodiscard]] std::uint16_t port() const noexcept { return port_; }

private:
    void handle_connection(int fd);

    Options options_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::atomic<bool> running_{false};
    std::mutex mutex_;
    std::vector<std::thread> workers_;
    std::vector<int> client_fds_;
};

/// Milliseconds on the wall clock, used as the session clock.
[[nodiscard]] double wall_clock_ms();

} // namespace pursuit
