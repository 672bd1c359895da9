#include "keyfile.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "pdwb/protocol.hpp"

namespace pdwb::tool {

std::string key_to_json(const KeyMaterial& km) {
  nlohmann::ordered_json j;
  j["cipher"] = std::string(to_string(km.cipher));
  j["height"] = km.height;
  j["width"] = km.width;
  j["K"] = wire::to_hex(km.K);
  j["U"] = km.U;
  j["V"] = km.V;
  return j.dump(2) + "\n";
}

KeyMaterial key_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  KeyMaterial km;
  km.cipher = parse_cipher(j.at("cipher").get<std::string>());
  km.height = j.at("height").get<std::size_t>();
  km.width = j.at("width").get<std::size_t>();
  auto K = wire::from_hex(j.at("K").get<std::string>());
  if (!K) throw std::invalid_argument("key file: K is not hex");
  km.K = std::move(*K);
  km.U = j.value("U", std::vector<std::uint32_t>{});
  km.V = j.value("V", std::vector<std::uint32_t>{});
  validate(km);
  return km;
}

KeyMaterial load_key(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return key_from_json(ss.str());
}

std::pair<std::size_t, std::size_t> parse_size(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw std::invalid_argument("size must look like HxW");
  std::size_t used_h = 0;
  std::size_t used_w = 0;
  const auto h = std::stoul(text.substr(0, x), &used_h);
  const auto w = std::stoul(text.substr(x + 1), &used_w);
  if (used_h != x || used_w != text.size() - x - 1 || h < 2 || w < 2) {
    throw std::invalid_argument("size must be HxW with H, W >= 2");
  }
  return {h, w};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace pdwb::tool
