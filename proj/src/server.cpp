#include "pursuit/server.hpp"

#include "pursuit/session.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <system_error>

namespace pursuit {

double wall_clock_ms() {
    using namespace std::chrono;
    return static_cast<double>(duration_cast<microseconds>(system_clock::now().time_since_epoch()).count()) / 1000.0;
}

namespace {

[[noreturn]] void throw_errno(const char* what) {
    throw std::system_error(errno, std::generic_category(), what);
}

bool send_all(int fd, const std::string& data) {
    std::size_t sent = 0;
    while (sent < data.size()) {
        const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            return false;
        }
        sent += static_cast<std::size_t>(n);
    }
    return true;
}

} // namespace

StreamServer::StreamServer(Options options) : options_(std::move(options)) {}

StreamServer::~StreamServer() {
    stop();
    if (listen_fd_ >= 0) {
        ::close(listen_fd_);
    }
}

std::uint16_t StreamServer::listen() {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) {
        throw_errno("socket");
    }
    const int yes = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(options_.port);
    if (::inet_pton(AF_INET, options_.bind_address.c_str(), &addr.sin_addr) != 1) {
        throw std::system_error(EINVAL, std::generic_category(), "bad bind address " + options_.bind_address);
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
        throw_errno("bind");
    }
    if (::listen(listen_fd_, 16) < 0) {
        throw_errno("listen");
    }
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    running_ = true;
    return port_;
}

void StreamServer::serve() {
    while (running_) {
        pollfd pfd{listen_fd_, POLLIN, 0};
        const int ready = ::poll(&pfd, 1, 100);
        if (ready <= 0 || !(pfd.revents & POLLIN)) {
            continue;
        }
        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            continue;
        }
        std::lock_guard lock(mutex_);
        client_fds_.push_back(fd);
        workers_.emplace_back([this, fd] { handle_connection(fd); });
    }
}

void StreamServer::stop() {
    running_ = false;
    std::vector<std::thread> workers;
    {
        std::lock_guard lock(mutex_);
        for (const int fd : client_fds_) {
            ::shutdown(fd, SHUT_RDWR);
        }
        workers.swap(workers_);
    }
    for (auto& w : workers) {
        if (w.joinable()) {
            w.join();
        }
    }
}

void StreamServer::handle_connection(int fd) {
    Session session;
    std::string pending;
    char chunk[4096];
    bool gaze_since_tick = false;
    auto last_tick = std::chrono::steady_clock::now();

    auto emit = [&](const std::vector<std::string>& lines) {
        std::string data;
        for (const auto& l : lines) {
            data += l;
            data += '\n';
        }
        return data.empty() || send_all(fd, data);
    };

    bool open = true;
    while (open && running_) {
        pollfd pfd{fd, POLLIN, 0};
        const int ready = ::poll(&pfd, 1, options_.tick_interval_ms);
        if (ready > 0) {
            const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
            if (n <= 0) {
                break;
            }
            pending.append(chunk, static_cast<std::size_t>(n));
            std::size_t nl;
            while ((nl = pending.find('\n')) != std::string::npos) {
                std::string line = pending.substr(0, nl);
                pending.erase(0, nl + 1);
                if (!line.empty() && line.back() == '\r') {
                    line.pop_back();
                }
                if (line.empty()) {
                    continue;
                }
                gaze_since_tick = true;
                if (!emit(session.handle_line(line, wall_clock_ms()))) {
                    open = false;
                    break;
                }
            }
        }
        const auto now = std::chrono::steady_clock::now();
        if (now - last_tick >= std::chrono::milliseconds(options_.tick_interval_ms)) {
            last_tick = now;
            if (!gaze_since_tick) {
                std::vector<std::string> lines;
                for (const auto& m : session.tick(wall_clock_ms())) {
                    lines.push_back(m.dump());
                }
                open = open && emit(lines);
            }
            gaze_since_tick = false;
        }
    }
    {
        std::lock_guard lock(mutex_);
        client_fds_.erase(std::remove(client_fds_.begin(), client_fds_.end(), fd), client_fds_.end());
    }
    ::close(fd);
}

} // namespace pursuit
