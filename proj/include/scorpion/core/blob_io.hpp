#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include <json.hpp>

namespace scorpion {

/// Container for flat float payloads (trained parameters, probability maps):
/// one JSON header line terminated by '\n', then raw little-endian float32.
void write_blob(const std::filesystem::path& path, const nlohmann::json& header,
                std::span<const float> payload);

struct Blob {
  nlohmann::json header;
  std::vector<float> payload;
};

Blob read_blob(const std::filesystem::path& path);

}  // namespace scorpion
