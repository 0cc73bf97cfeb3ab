// SPDX-License-Identifier: Apache-2.0
#include "serve.hpp"

#include "engine.hpp"

#include <atomic>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <iostream>
#include <thread>

#include <poll.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

namespace alloyse_cli {

namespace {

constexpr std::uint32_t kMaxFrame = 16u << 20;

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

bool read_all(int fd, void* buf, std::size_t n) {
  auto* p = static_cast<char*>(buf);
  while (n > 0) {
    const ssize_t got = ::read(fd, p, n);
    if (got < 0 && errno == EINTR)
      continue;
    if (got <= 0)
      return false;
    p += got;
    n -= static_cast<std::size_t>(got);
  }
  return true;
}

bool write_all(int fd, const void* buf, std::size_t n) {
  const auto* p = static_cast<const char*>(buf);
  while (n > 0) {
    const ssize_t put = ::send(fd, p, n, MSG_NOSIGNAL);
    if (put < 0 && errno == EINTR)
      continue;
    if (put <= 0)
      return false;
    p += put;
    n -= static_cast<std::size_t>(put);
  }
  return true;
}

bool write_frame(int fd, const std::string& payload) {
  const auto n = static_cast<std::uint32_t>(payload.size());
  const unsigned char header[4] = {static_cast<unsigned char>(n >> 24), static_cast<unsigned char>(n >> 16),
                                   static_cast<unsigned char>(n >> 8), static_cast<unsigned char>(n)};
  return write_all(fd, header, 4) && write_all(fd, payload.data(), payload.size());
}

void serve_connection(int fd, json config) {
  try {
    Engine engine(config);
    if (!write_frame(fd, engine.hello()))
      return ::close(fd), void();
    while (!engine.closed()) {
      unsigned char header[4];
      if (!read_all(fd, header, 4))
        break;
      const std::uint32_t n = (std::uint32_t{header[0]} << 24) | (std::uint32_t{header[1]} << 16) |
                              (std::uint32_t{header[2]} << 8) | std::uint32_t{header[3]};
      if (n > kMaxFrame) {
        write_frame(fd, json{{"id", nullptr},
                             {"ok", false},
                             {"error", {{"code", "malformed_request"}, {"message", "frame too large"}, {"reason_class", ""}}}}
                            .dump());
        break;
      }
      std::string payload(n, '\0');
      if (!read_all(fd, payload.data(), n))
        break;
      if (!write_frame(fd, engine.handle(payload)))
        break;
    }
  } catch (const std::exception& e) {
    std::cerr << "alloyse: connection error: " << e.what() << "\n";
  }
  ::close(fd);
}

} // namespace

int serve_stdio(const json& config, std::istream& in, std::ostream& out) {
  Engine engine(config);
  out << engine.hello() << "\n" << std::flush;
  std::string line;
  while (!engine.closed() && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    out << engine.handle(line) << "\n" << std::flush;
  }
  return 0;
}

int serve_socket(const json& config, const std::string& path) {
  sockaddr_un addr{};
  if (path.size() >= sizeof(addr.sun_path)) {
    std::cerr << "alloyse: socket path too long\n";
    return 3;
  }
  const int listener = ::socket(AF_UNIX, SOCK_STREAM, 0);
  if (listener < 0) {
    std::cerr << "alloyse: socket: " << std::strerror(errno) << "\n";
    return 3;
  }
  addr.sun_family = AF_UNIX;
  std::memcpy(addr.sun_path, path.c_str(), path.size() + 1);
  ::unlink(path.c_str());
  if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0 || ::listen(listener, 16) < 0) {
    std::cerr << "alloyse: cannot listen on " << path << ": " << std::strerror(errno) << "\n";
    ::close(listener);
    return 3;
  }
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "alloyse: listening on " << path << "\n";
  while (!g_stop) {
    pollfd pfd{listener, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 200);
    if (ready <= 0)
      continue;
    const int fd = ::accept(listener, nullptr, nullptr);
    if (fd < 0)
      continue;
    std::thread(serve_connection, fd, config).detach();
  }
  ::close(listener);
  ::unlink(path.c_str());
  return 0;
}

} // namespace alloyse_cli
