#ifndef ANONCOMM_TRANSPORT_HPP
#define ANONCOMM_TRANSPORT_HPP

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include "anoncomm/wire.hpp"

namespace anoncomm {

/// Message fabric between actors. Delivery is FIFO per ordered (from, to)
/// pair; recv addresses a specific peer so assembly order is deterministic.
class Transport {
 public:
  using Observer = std::function<void(std::uint16_t from, std::uint16_t to,
                                      const WireMessage&)>;

  virtual ~Transport() = default;
  virtual void send(std::uint16_t from, std::uint16_t to, const WireMessage& msg) = 0;
  virtual WireMessage recv(std::uint16_t to, std::uint16_t from) = 0;

  void set_observer(Observer obs) { observer_ = std::move(obs); }

 protected:
  void observe(std::uint16_t from, std::uint16_t to, const WireMessage& msg) {
    if (observer_) observer_(from, to, msg);
  }

 private:
  Observer observer_;
};

/// Queues in shared memory, one per ordered actor pair.
class InProcessTransport : public Transport {
 public:
  void send(std::uint16_t from, std::uint16_t to, const WireMessage& msg) override {
    observe(from, to, msg);
    {
      std::lock_guard<std::mutex> lock(mu_);
      queues_[{from, to}].push_back(msg);
    }
    cv_.notify_all();
  }

  WireMessage recv(std::uint16_t to, std::uint16_t from) override {
    std::unique_lock<std::mutex> lock(mu_);
    auto& q = queues_[{from, to}];
    cv_.wait(lock, [&] { return !q.empty(); });
    WireMessage msg = std::move(q.front());
    q.pop_front();
    return msg;
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::map<std::pair<std::uint16_t, std::uint16_t>, std::deque<WireMessage>> queues_;
};

/// Localhost TCP fabric: one connection per ordered actor pair, frames as in
/// wire.hpp. A demux thread per connection feeds the same per-pair queue
/// structure the in-process transport uses, so actor-visible semantics match.
class StreamTransport : public Transport {
 public:
  /// actor_ids lists every participant; connections are established eagerly
  /// for all ordered pairs.
  explicit StreamTransport(const std::vector<std::uint16_t>& actor_ids) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw Error("socket() failed");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
      throw Error("bind() failed");
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    const std::uint16_t port = ntohs(addr.sin_port);
    if (::listen(listen_fd_, 128) != 0) throw Error("listen() failed");

    std::size_t pair_count = 0;
    for (auto from : actor_ids)
      for (auto to : actor_ids)
        if (from != to) ++pair_count;

    std::thread acceptor([this, pair_count] {
      for (std::size_t i = 0; i < pair_count; ++i) {
        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) throw Error("accept() failed");
        std::uint8_t hello[4];
        read_exact(fd, hello, 4);
        const std::uint16_t from = wire_detail::get_u16(hello);
        const std::uint16_t to = wire_detail::get_u16(hello + 2);
        std::lock_guard<std::mutex> lock(mu_);
        read_fds_[{from, to}] = fd;
      }
    });

    for (auto from : actor_ids)
      for (auto to : actor_ids) {
        if (from == to) continue;
        const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
        if (fd < 0) throw Error("socket() failed");
        sockaddr_in peer{};
        peer.sin_family = AF_INET;
        peer.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
        peer.sin_port = htons(port);
        if (::connect(fd, reinterpret_cast<sockaddr*>(&peer), sizeof(peer)) != 0)
          throw Error("connect() failed");
        std::uint8_t hello[4];
        hello[0] = static_cast<std::uint8_t>(from >> 8);
        hello[1] = static_cast<std::uint8_t>(from & 0xff);
        hello[2] = static_cast<std::uint8_t>(to >> 8);
        hello[3] = static_cast<std::uint8_t>(to & 0xff);
        write_all(fd, hello, 4);
        write_fds_[{from, to}] = fd;
      }
    acceptor.join();

    for (auto& [pair, fd] : read_fds_)
      demux_.emplace_back([this, pair = pair, fd = fd] { demux_loop(pair, fd); });
  }

  ~StreamTransport() override {
    for (auto& [pair, fd] : write_fds_) ::shutdown(fd, SHUT_RDWR);
    for (auto& t : demux_) t.join();
    for (auto& [pair, fd] : write_fds_) ::close(fd);
    for (auto& [pair, fd] : read_fds_) ::close(fd);
    ::close(listen_fd_);
  }

  void send(std::uint16_t from, std::uint16_t to, const WireMessage& msg) override {
    observe(from, to, msg);
    const std::vector<std::uint8_t> frame = encode_frame(msg);
    int fd;
    {
      std::lock_guard<std::mutex> lock(mu_);
      const auto it = write_fds_.find({from, to});
      if (it == write_fds_.end()) throw Error("no connection for actor pair");
      fd = it->second;
    }
    write_all(fd, frame.data(), frame.size());
  }

  WireMessage recv(std::uint16_t to, std::uint16_t from) override {
    std::unique_lock<std::mutex> lock(mu_);
    auto& q = queues_[{from, to}];
    cv_.wait(lock, [&] { return !q.empty(); });
    WireMessage msg = std::move(q.front());
    q.pop_front();
    return msg;
  }

 private:
  static void read_exact(int fd, std::uint8_t* buf, std::size_t n) {
    std::size_t got = 0;
    while (got < n) {
      const ssize_t r = ::read(fd, buf + got, n - got);
      if (r <= 0) throw Error("connection closed while reading");
      got += static_cast<std::size_t>(r);
    }
  }
  static void write_all(int fd, const std::uint8_t* buf, std::size_t n) {
    std::size_t put = 0;
    while (put < n) {
      const ssize_t r = ::write(fd, buf + put, n - put);
      if (r <= 0) throw Error("connection closed while writing");
      put += static_cast<std::size_t>(r);
    }
  }

  void demux_loop(std::pair<std::uint16_t, std::uint16_t> pair, int fd) {
    for (;;) {
      std::uint8_t lenbuf[4];
      std::size_t got = 0;
      while (got < 4) {
        const ssize_t r = ::read(fd, lenbuf + got, 4 - got);
        if (r <= 0) return;  // peer closed; fabric is shutting down
        got += static_cast<std::size_t>(r);
      }
      const std::uint32_t frame_len = wire_detail::get_u32(lenbuf);
      std::vector<std::uint8_t> frame(4 + frame_len);
      std::copy(lenbuf, lenbuf + 4, frame.begin());
      read_exact(fd, frame.data() + 4, frame_len);
      WireMessage msg = decode_frame(frame);
      {
        std::lock_guard<std::mutex> lock(mu_);
        queues_[pair].push_back(std::move(msg));
      }
      cv_.notify_all();
    }
  }

  int listen_fd_ = -1;
  std::mutex mu_;
  std::condition_variable cv_;
  std::map<std::pair<std::uint16_t, std::uint16_t>, int> write_fds_;
  std::map<std::pair<std::uint16_t, std::uint16_t>, int> read_fds_;
  std::map<std::pair<std::uint16_t, std::uint16_t>, std::deque<WireMessage>> queues_;
  std::vector<std::thread> demux_;
};

}  // namespace anoncomm

#endif  // ANONCOMM_TRANSPORT_HPP
