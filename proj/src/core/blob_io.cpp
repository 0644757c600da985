#include "scorpion/core/blob_io.hpp"

#include <bit>
#include <cstring>

#include "scorpion/core/error.hpp"
#include "scorpion/core/fsutil.hpp"

static_assert(std::endian::native == std::endian::little,
              "blob payloads are little-endian float32");

namespace scorpion {

void write_blob(const std::filesystem::path& path, const nlohmann::json& header,
                std::span<const float> payload) {
  std::string bytes = header.dump();
  bytes.push_back('\n');
  size_t offset = bytes.size();
  bytes.resize(offset + payload.size() * sizeof(float));
  std::memcpy(bytes.data() + offset, payload.data(), payload.size() * sizeof(float));
  atomic_write_bytes(path, bytes);
}

Blob read_blob(const std::filesystem::path& path) {
  std::string bytes = read_file_bytes(path);
  size_t nl = bytes.find('\n');
  require(nl != std::string::npos, ErrorKind::SchemaViolation,
          "blob missing header line: " + path.string());
  Blob blob;
  blob.header = nlohmann::json::parse(bytes.substr(0, nl), nullptr, false);
  require(!blob.header.is_discarded(), ErrorKind::SchemaViolation,
          "blob header is not JSON: " + path.string());
  size_t payload_bytes = bytes.size() - nl - 1;
  require(payload_bytes % sizeof(float) == 0, ErrorKind::TruncatedPayload,
          "blob payload not a whole number of floats: " + path.string());
  blob.payload.resize(payload_bytes / sizeof(float));
  std::memcpy(blob.payload.data(), bytes.data() + nl + 1, payload_bytes);
  return blob;
}

}  // namespace scorpion
