#pragma once

// TCP transport for the oracle protocol (POSIX sockets, IPv4/IPv6 via
// getaddrinfo). The server answers one connection at a time.

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "pdwb/oracle.hpp"
#include "pdwb/protocol.hpp"

namespace pdwb {

/// The peer went away mid-session.
class OracleDisconnected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;
};

/// "host:port"; the host may be bracketed for IPv6 ("[::1]:7000").
/// Throws std::invalid_argument.
Endpoint parse_endpoint(const std::string& text);

class OracleServer {
 public:
  /// Binds and listens immediately; port 0 picks an ephemeral port.
  OracleServer(Oracle& oracle, const Endpoint& listen_at);
  ~OracleServer();
  OracleServer(const OracleServer&) = delete;
  OracleServer& operator=(const OracleServer&) = delete;

  std::uint16_t port() const { return port_; }

  /// Accepts and serves connections until stop() is called, or until
  /// max_connections sessions have ended when it is nonzero.
  void serve(std::size_t max_connections = 0);
  /// Safe to call from another thread.
  void stop() { stopping_ = true; }

 private:
  void serve_one(int fd);

  Oracle& oracle_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
};

/// Oracle client. Performs the HELLO handshake on construction.
class RemoteOracle final : public Oracle {
 public:
  explicit RemoteOracle(const Endpoint& server);
  ~RemoteOracle() override;
  RemoteOracle(const RemoteOracle&) = delete;
  RemoteOracle& operator=(const RemoteOracle&) = delete;

  AttackModel model() const override { return hello_.model; }
  std::size_t height() const override { return hello_.height; }
  std::size_t width() const override { return hello_.width; }
  Image encrypt(const Image& plain) override;
  PlainCipherPair sample() override;
  std::size_t query_count() const override;

 private:
  std::string exchange(const std::string& request) const;

  int fd_ = -1;
  mutable std::string inbox_;
  wire::Hello hello_;
};

}  // namespace pdwb
