#pragma once

#include <filesystem>
#include <string>

#include "pdwb/ciphers.hpp"

namespace pdwb::tool {

/// {"cipher", "height", "width", "K" (hex), "U", "V"}
std::string key_to_json(const KeyMaterial& km);
KeyMaterial key_from_json(const std::string& text);
KeyMaterial load_key(const std::filesystem::path& path);

/// "HxW" -> (H, W). Throws std::invalid_argument.
std::pair<std::size_t, std::size_t> parse_size(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pdwb::tool
