#include "pdwb/net.hpp"

#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <memory>

#include "pdwb/word.hpp"

namespace pdwb {

namespace {

using AddrList = std::unique_ptr<addrinfo, decltype(&freeaddrinfo)>;

AddrList resolve(const Endpoint& ep, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  const std::string port = std::to_string(ep.port);
  const int rc = getaddrinfo(ep.host.empty() ? nullptr : ep.host.c_str(), port.c_str(), &hints, &res);
  if (rc != 0) throw std::runtime_error("cannot resolve " + ep.host + ": " + gai_strerror(rc));
  return AddrList(res, &freeaddrinfo);
}

std::string sys_error(const std::string& what) { return what + ": " + std::strerror(errno); }

void send_all(int fd, const std::string& data) {
  std::size_t off = 0;
  while (off < data.size()) {
    const auto n = ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw OracleDisconnected(sys_error("send"));
    off += static_cast<std::size_t>(n);
  }
}

// Reads one line (without the newline) into line. Returns false on EOF.
// With a stop flag, polls so that a waiting read can be abandoned.
bool read_line(int fd, std::string& inbox, std::string& line,
               const std::atomic<bool>* stop = nullptr) {
  for (;;) {
    const auto nl = inbox.find('\n');
    if (nl != std::string::npos) {
      line = inbox.substr(0, nl);
      inbox.erase(0, nl + 1);
      return true;
    }
    if (stop) {
      pollfd p{fd, POLLIN, 0};
      const int rc = ::poll(&p, 1, 100);
      if (stop->load()) return false;
      if (rc == 0 || (rc < 0 && errno == EINTR)) continue;
    }
    char buf[65536];
    const auto n = ::recv(fd, buf, sizeof buf, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    inbox.append(buf, static_cast<std::size_t>(n));
  }
}

}  // namespace

Endpoint parse_endpoint(const std::string& text) {
  std::string host;
  std::string port;
  if (!text.empty() && text[0] == '[') {
    const auto close = text.find(']');
    if (close == std::string::npos || close + 1 >= text.size() || text[close + 1] != ':') {
      throw std::invalid_argument("bad endpoint '" + text + "'");
    }
    host = text.substr(1, close - 1);
    port = text.substr(close + 2);
  } else {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos) throw std::invalid_argument("endpoint needs host:port");
    host = text.substr(0, colon);
    port = text.substr(colon + 1);
  }
  std::size_t used = 0;
  unsigned long p = 0;
  try {
    p = std::stoul(port, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (port.empty() || used != port.size() || p > 65535) {
    throw std::invalid_argument("bad port in '" + text + "'");
  }
  return {host, static_cast<std::uint16_t>(p)};
}

OracleServer::OracleServer(Oracle& oracle, const Endpoint& listen_at) : oracle_(oracle) {
  const auto addrs = resolve(listen_at, true);
  for (auto* a = addrs.get(); a != nullptr; a = a->ai_next) {
    const int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    const int on = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &on, sizeof on);
    if (::bind(fd, a->ai_addr, a->ai_addrlen) == 0 && ::listen(fd, 4) == 0) {
      listen_fd_ = fd;
      break;
    }
    ::close(fd);
  }
  if (listen_fd_ < 0) throw std::runtime_error(sys_error("cannot listen on " + listen_at.host));

  sockaddr_storage bound{};
  socklen_t len = sizeof bound;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  char serv[NI_MAXSERV];
  ::getnameinfo(reinterpret_cast<sockaddr*>(&bound), len, nullptr, 0, serv, sizeof serv,
                NI_NUMERICSERV);
  port_ = static_cast<std::uint16_t>(std::stoul(serv));
}

OracleServer::~OracleServer() {
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void OracleServer::serve(std::size_t max_connections) {
  std::size_t served = 0;
  while (!stopping_ && (max_connections == 0 || served < max_connections)) {
    pollfd p{listen_fd_, POLLIN, 0};
    const int rc = ::poll(&p, 1, 100);
    if (rc <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    serve_one(fd);
    ::close(fd);
    ++served;
  }
}

void OracleServer::serve_one(int fd) {
  std::string inbox;
  std::string line;
  try {
    while (read_line(fd, inbox, line, &stopping_)) {
      std::string reply;
      try {
        reply = wire::respond(oracle_, line);
      } catch (const std::exception& e) {
        reply = std::string("ERR ") + e.what();
      }
      send_all(fd, reply + "\n");
    }
  } catch (const OracleDisconnected&) {
    // Client went away; wait for the next one.
  }
}

RemoteOracle::RemoteOracle(const Endpoint& server) {
  const auto addrs = resolve(server, false);
  for (auto* a = addrs.get(); a != nullptr; a = a->ai_next) {
    const int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) {
      fd_ = fd;
      break;
    }
    ::close(fd);
  }
  if (fd_ < 0) {
    throw OracleDisconnected(sys_error("cannot connect to " + server.host + ":" +
                                       std::to_string(server.port)));
  }
  hello_ = wire::parse_hello(exchange("HELLO"));
}

RemoteOracle::~RemoteOracle() {
  if (fd_ >= 0) ::close(fd_);
}

std::string RemoteOracle::exchange(const std::string& request) const {
  send_all(fd_, request + "\n");
  std::string line;
  if (!read_line(fd_, inbox_, line)) throw OracleDisconnected("oracle closed the connection");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

Image RemoteOracle::encrypt(const Image& plain) {
  if (plain.height() != height() || plain.width() != width()) {
    throw ContractViolation("query image has the wrong size");
  }
  return wire::parse_ct(exchange("ENC " + wire::to_hex(plain.pixels())), height(), width());
}

PlainCipherPair RemoteOracle::sample() {
  return wire::parse_sample(exchange("SAMPLE"), height(), width());
}

std::size_t RemoteOracle::query_count() const { return wire::parse_count(exchange("COUNT")); }

}  // namespace pdwb
