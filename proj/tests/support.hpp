#pragma once

// Helpers shared by the unit and acceptance tests.

#include <cstdint>
#include <thread>
#include <vector>

#include "pdwb/image.hpp"
#include "pdwb/net.hpp"
#include "pdwb/prng.hpp"

namespace pdwb::test {

inline Image image_of(std::size_t H, std::size_t W, std::vector<std::uint8_t> px) {
  return Image(H, W, std::move(px));
}

inline Image random_image(std::size_t H, std::size_t W, SplitMixStream& rng) {
  Image img(H, W, 0);
  for (auto& p : img.pixels()) p = rng.next_byte();
  return img;
}

/// OracleServer on an ephemeral loopback port, served from a thread.
class ServerThread {
 public:
  explicit ServerThread(Oracle& oracle, std::size_t max_connections = 0)
      : server_(oracle, Endpoint{"127.0.0.1", 0}),
        thread_([this, max_connections] { server_.serve(max_connections); }) {}
  ~ServerThread() {
    server_.stop();
    thread_.join();
  }
  Endpoint endpoint() const { return {"127.0.0.1", server_.port()}; }

 private:
  OracleServer server_;
  std::thread thread_;
};

}  // namespace pdwb::test
