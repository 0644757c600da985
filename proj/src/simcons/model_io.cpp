#include "scorpion/simcons/model_io.hpp"

#include "scorpion/core/blob_io.hpp"

namespace scorpion::simcons {

namespace {
constexpr const char* kArch = "conv3x3(3->8)+tanh,conv3x3(8->8)+tanh,conv1x1(8->K),softmax";
}

void save_model(const std::filesystem::path& path, const Segmenter& model,
                uint64_t seed) {
  std::vector<float> payload(model.parameters().size());
  for (size_t i = 0; i < payload.size(); ++i)
    payload[i] = static_cast<float>(model.parameters()[i]);
  nlohmann::json header = {{"arch", kArch},
                           {"K", model.num_classes()},
                           {"param_count", payload.size()},
                           {"seed", seed}};
  write_blob(path, header, payload);
}

LoadedModel load_model(const std::filesystem::path& path) {
  Blob blob = read_blob(path);
  require(blob.header.contains("K") && blob.header.contains("param_count"),
          ErrorKind::SchemaViolation, "model header missing K/param_count");
  int k = blob.header.at("K").get<int>();
  size_t count = blob.header.at("param_count").get<size_t>();
  require(blob.header.value("arch", std::string(kArch)) == kArch,
          ErrorKind::UnsupportedFormat, "unknown model architecture");
  require(count == Segmenter::parameter_count(k), ErrorKind::SchemaViolation,
          "param_count does not match the architecture");
  require(blob.payload.size() == count, ErrorKind::TruncatedPayload,
          "model payload size mismatch");

  LoadedModel out{Segmenter(k), blob.header.value("seed", uint64_t{0})};
  for (size_t i = 0; i < count; ++i)
    out.model.parameters()[i] = static_cast<double>(blob.payload[i]);
  return out;
}

}  // namespace scorpion::simcons
