#include "pdwb/pgm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>

namespace pdwb {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(ch)) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::uint64_t read_uint(const char* field) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw PgmError(std::string("expected ") + field, pos_);
    }
    std::uint64_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > std::numeric_limits<std::uint32_t>::max()) {
        throw PgmError(std::string(field) + " too large", pos_);
      }
      ++pos_;
    }
    return v;
  }

  // Exactly one whitespace byte separates maxval from the payload.
  void expect_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw PgmError("expected whitespace before pixel data", pos_);
    }
    ++pos_;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw PgmError("bad magic, expected P5", 0);
  }
  HeaderReader hdr(bytes.subspan(2));
  const auto width = hdr.read_uint("width");
  const auto height = hdr.read_uint("height");
  const std::size_t maxval_at = hdr.offset() + 2;
  const auto maxval = hdr.read_uint("maxval");
  if (width == 0 || height == 0) throw PgmError("zero image dimension", hdr.offset() + 2);
  if (maxval != 255) {
    throw PgmError("unsupported maxval " + std::to_string(maxval) + ", only 255 is accepted",
                   maxval_at);
  }
  hdr.expect_single_space();

  const std::size_t start = hdr.offset() + 2;
  const std::size_t need = static_cast<std::size_t>(width) * height;
  if (bytes.size() - start < need) {
    throw PgmError("truncated payload: need " + std::to_string(need) + " bytes, have " +
                       std::to_string(bytes.size() - start),
                   bytes.size());
  }
  std::vector<std::uint8_t> pixels(bytes.begin() + start, bytes.begin() + start + need);
  return Image(height, width, std::move(pixels));
}

std::vector<std::uint8_t> write_pgm(const Image& img) {
  const std::string header = "P5\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

Image load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return read_pgm(bytes);
}

void save_pgm(const std::filesystem::path& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const auto bytes = write_pgm(img);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace pdwb
