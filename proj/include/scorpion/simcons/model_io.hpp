#pragma once

#include <filesystem>

#include "scorpion/simcons/segmenter.hpp"

namespace scorpion::simcons {

/// On-disk model: JSON header line {arch, K, param_count, seed} followed by
/// the flat parameter vector as little-endian float32.
void save_model(const std::filesystem::path& path, const Segmenter& model,
                uint64_t seed);

struct LoadedModel {
  Segmenter model;
  uint64_t seed = 0;
};

LoadedModel load_model(const std::filesystem::path& path);

}  // namespace scorpion::simcons
