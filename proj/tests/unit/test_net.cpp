#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include "pdwb/attacks.hpp"
#include "pdwb/experiments.hpp"
#include "pdwb/net.hpp"
#include "support.hpp"

using namespace pdwb;

namespace {

// Answers HELLO and `answers` further requests with canned text, then hangs up.
class FlakyServer {
 public:
  FlakyServer(std::string hello, int answers) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    ::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr);
    ::listen(fd_, 1);
    socklen_t len = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    thread_ = std::thread([this, hello, answers] {
      const int c = ::accept(fd_, nullptr, nullptr);
      std::string buf;
      char ch;
      int replies = -1;
      while (replies < answers && ::read(c, &ch, 1) == 1) {
        if (ch != '\n') continue;
        const std::string out = (replies < 0 ? hello : std::string("CT 00000000")) + "\n";
        if (::write(c, out.data(), out.size()) < 0) break;
        ++replies;
      }
      ::close(c);
    });
  }
  ~FlakyServer() {
    thread_.join();
    ::close(fd_);
  }
  Endpoint endpoint() const { return {"127.0.0.1", port_}; }

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_SUITE("net") {

TEST_CASE("endpoints") {
  const auto e = parse_endpoint("127.0.0.1:7000");
  CHECK(e.host == "127.0.0.1");
  CHECK(e.port == 7000);
  const auto v6 = parse_endpoint("[::1]:80");
  CHECK(v6.host == "::1");
  CHECK_THROWS_AS(parse_endpoint("nohost"), std::invalid_argument);
  CHECK_THROWS_AS(parse_endpoint("h:99999"), std::invalid_argument);
}

TEST_CASE("remote ENC of the all-zero image matches local encrypt") {
  LocalOracle local(key_schedule(Seed{3, CipherId::Yang}, 4, 4), AttackModel::ChosenPlaintext);
  test::ServerThread srv(local);
  RemoteOracle remote(srv.endpoint());
  CHECK(remote.model() == AttackModel::ChosenPlaintext);
  CHECK(remote.height() == 4);
  CHECK(remote.encrypt(Image(4, 4, 0)) == encrypt(Image(4, 4, 0), local.hidden_key()));
  CHECK(remote.query_count() == 1);
  CHECK_THROWS_AS(remote.sample(), ModelViolation);
}

TEST_CASE("kp-mode server rejects ENC") {
  LocalOracle local(key_schedule(Seed{3, CipherId::Norouzi}, 4, 4), AttackModel::KnownPlaintext, 5);
  test::ServerThread srv(local);
  RemoteOracle remote(srv.endpoint());
  CHECK_THROWS_AS(remote.encrypt(Image(4, 4, 0)), ModelViolation);
  const auto s = remote.sample();
  CHECK(encrypt(s.plain, local.hidden_key()) == s.cipher);
  CHECK(remote.query_count() == 1);
}

TEST_CASE("sequential clients on one server") {
  LocalOracle local(key_schedule(Seed{4, CipherId::Parvin}, 3, 3), AttackModel::ChosenPlaintext);
  test::ServerThread srv(local);
  for (int i = 0; i < 3; ++i) {
    RemoteOracle remote(srv.endpoint());
    remote.encrypt(Image(3, 3, 0));
  }
  CHECK(local.query_count() == 3);
}

TEST_CASE("remote and in-process attacks agree byte for byte") {
  struct Case {
    CipherId id;
    AttackModel m;
    std::size_t size;
  };
  for (const auto c : {Case{CipherId::Yang, AttackModel::ChosenPlaintext, 8},
                       Case{CipherId::Norouzi, AttackModel::KnownPlaintext, 8},
                       Case{CipherId::Parvin, AttackModel::ChosenPlaintext, 8}}) {
    const auto km = key_schedule(Seed{42, c.id}, c.size, c.size);
    LocalOracle in_process(km, c.m, 9);
    const auto local = run_attack(in_process, c.id, 2);
    LocalOracle served(km, c.m, 9);
    test::ServerThread srv(served);
    RemoteOracle remote(srv.endpoint());
    const auto over_tcp = run_attack(remote, c.id, 2);
    CHECK(local == over_tcp);
    CHECK(to_json(local) == to_json(over_tcp));
  }
}

TEST_CASE("connection loss mid-attack surfaces as OracleDisconnected") {
  FlakyServer flaky("MODE cp SIZE 2 2", 3);
  RemoteOracle remote(flaky.endpoint());
  for (int i = 0; i < 3; ++i) CHECK_NOTHROW(remote.encrypt(Image(2, 2, 0)));
  CHECK_THROWS_AS(remote.encrypt(Image(2, 2, 0)), OracleDisconnected);
}

TEST_CASE("connecting to a closed port fails") {
  std::uint16_t port = 0;
  {
    LocalOracle local(key_schedule(Seed{1, CipherId::Norouzi}, 2, 2), AttackModel::ChosenPlaintext);
    OracleServer s(local, Endpoint{"127.0.0.1", 0});
    port = s.port();
  }
  CHECK_THROWS(RemoteOracle(Endpoint{"127.0.0.1", port}));
}

}
