#include "scorpion/core/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "scorpion/core/fsutil.hpp"

namespace scorpion {
namespace {

constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

struct FileHandle {
  FILE* f = nullptr;
  explicit FileHandle(const std::filesystem::path& path, const char* mode)
      : f(std::fopen(path.string().c_str(), mode)) {}
  ~FileHandle() {
    if (f) std::fclose(f);
  }
  FileHandle(const FileHandle&) = delete;
  FileHandle& operator=(const FileHandle&) = delete;
};

// Skips whitespace and '#' comments in a PNM header.
void skip_pnm_space(std::istream& in) {
  for (;;) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

int read_pnm_int(std::istream& in, const std::string& path) {
  skip_pnm_space(in);
  int v = -1;
  in >> v;
  require(in.good() && v >= 0, ErrorKind::UnsupportedFormat,
          "bad PNM header in " + path);
  return v;
}

struct PnmHeader {
  std::string magic;
  int width = 0;
  int height = 0;
  int maxval = 0;
  std::streampos payload_start;
};

PnmHeader read_pnm_header(std::istream& in, const std::string& path) {
  PnmHeader h;
  char m[2];
  in.read(m, 2);
  require(in.good(), ErrorKind::UnsupportedFormat, "unreadable header: " + path);
  h.magic.assign(m, 2);
  h.width = read_pnm_int(in, path);
  h.height = read_pnm_int(in, path);
  h.maxval = read_pnm_int(in, path);
  // Exactly one whitespace byte separates the header from the payload.
  in.get();
  require(in.good(), ErrorKind::TruncatedPayload, "PNM ends at header: " + path);
  require(h.width > 0 && h.height > 0, ErrorKind::UnsupportedFormat,
          "nonpositive PNM dimensions in " + path);
  require(h.maxval == 255, ErrorKind::UnsupportedFormat,
          "only 8-bit PNM supported, maxval=" + std::to_string(h.maxval) +
              " in " + path);
  h.payload_start = in.tellg();
  return h;
}

RasterImage load_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.is_open(), ErrorKind::NotFound, "cannot open " + path.string());
  PnmHeader h = read_pnm_header(in, path.string());
  require(h.magic == "P6", ErrorKind::UnsupportedFormat,
          "expected P6 magic in " + path.string());
  std::vector<unsigned char> bytes(static_cast<size_t>(h.width) * h.height * 3);
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  require(static_cast<size_t>(in.gcount()) == bytes.size(),
          ErrorKind::TruncatedPayload, "short PPM payload in " + path.string());
  RasterImage img(h.width, h.height);
  for (size_t i = 0; i < bytes.size(); ++i)
    img.data[i] = static_cast<float>(bytes[i]) / 255.0f;
  return img;
}

// libpng reports all decode problems through longjmp; translate the two
// phases (header vs pixel data) into distinct error kinds.
RasterImage load_png_rgb(const std::filesystem::path& path) {
  FileHandle fh(path, "rb");
  require(fh.f != nullptr, ErrorKind::NotFound, "cannot open " + path.string());

  unsigned char sig[8];
  require(std::fread(sig, 1, 8, fh.f) == 8 && std::memcmp(sig, kPngSignature, 8) == 0,
          ErrorKind::UnsupportedFormat, "not a PNG file: " + path.string());

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  require(png != nullptr, ErrorKind::IoFailure, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(ErrorKind::IoFailure, "png_create_info_struct failed");
  }

  // Storage shared with the setjmp region is kept outside it.
  RasterImage img;
  std::vector<unsigned char> row;
  volatile bool header_done = false;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    if (header_done)
      fail(ErrorKind::TruncatedPayload, "truncated or corrupt PNG payload in " + path.string());
    fail(ErrorKind::UnsupportedFormat, "corrupt PNG header in " + path.string());
  }

  png_init_io(png, fh.f);
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  png_uint_32 w = png_get_image_width(png, info);
  png_uint_32 h = png_get_image_height(png, info);
  int bit_depth = png_get_bit_depth(png, info);
  int color_type = png_get_color_type(png, info);
  if (bit_depth != 8 || color_type != PNG_COLOR_TYPE_RGB) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(ErrorKind::UnsupportedFormat,
         "only 8-bit RGB PNG supported (depth=" + std::to_string(bit_depth) +
             ", color_type=" + std::to_string(color_type) + ") in " + path.string());
  }
  header_done = true;

  img = RasterImage(static_cast<int>(w), static_cast<int>(h));
  row.resize(static_cast<size_t>(w) * 3);
  for (png_uint_32 y = 0; y < h; ++y) {
    png_read_row(png, row.data(), nullptr);
    float* dst = img.data.data() + static_cast<size_t>(y) * w * 3;
    for (size_t i = 0; i < row.size(); ++i) dst[i] = static_cast<float>(row[i]) / 255.0f;
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

void save_png_rgb(const RasterImage& img, const std::filesystem::path& path) {
  FileHandle fh(path, "wb");
  require(fh.f != nullptr, ErrorKind::IoFailure, "cannot write " + path.string());

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  require(png != nullptr, ErrorKind::IoFailure, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail(ErrorKind::IoFailure, "png_create_info_struct failed");
  }

  std::vector<unsigned char> row(static_cast<size_t>(img.width) * 3);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorKind::IoFailure, "PNG write failed for " + path.string());
  }

  png_init_io(png, fh.f);
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height; ++y) {
    const float* src = img.data.data() + static_cast<size_t>(y) * img.width * 3;
    for (size_t i = 0; i < row.size(); ++i) row[i] = quantize_channel(src[i]);
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

bool has_png_magic(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.is_open(), ErrorKind::NotFound, "cannot open " + path.string());
  unsigned char sig[8] = {0};
  in.read(reinterpret_cast<char*>(sig), 8);
  return in.gcount() >= 8 && std::memcmp(sig, kPngSignature, 8) == 0;
}

}  // namespace

uint8_t quantize_channel(float v) {
  double scaled = std::floor(static_cast<double>(v) * 255.0 + 0.5);
  return static_cast<uint8_t>(std::min(255.0, std::max(0.0, scaled)));
}

RasterImage load_image(const std::filesystem::path& path) {
  require(std::filesystem::exists(path), ErrorKind::NotFound,
          "no such file: " + path.string());
  if (has_png_magic(path)) return load_png_rgb(path);
  return load_ppm(path);
}

void save_image(const RasterImage& img, const std::filesystem::path& path) {
  require(img.width > 0 && img.height > 0 &&
              img.data.size() == img.pixel_count() * 3,
          ErrorKind::InvalidArgument, "invalid image buffer");
  std::string ext = path.extension().string();
  if (ext == ".png") {
    save_png_rgb(img, path);
    return;
  }
  require(ext == ".ppm", ErrorKind::UnsupportedFormat,
          "unsupported output extension: " + ext);
  std::string payload;
  payload.reserve(img.data.size() + 32);
  payload += "P6\n" + std::to_string(img.width) + " " +
             std::to_string(img.height) + "\n255\n";
  for (float v : img.data) payload.push_back(static_cast<char>(quantize_channel(v)));
  atomic_write_bytes(path, payload);
}

std::pair<int, int> read_image_size(const std::filesystem::path& path) {
  require(std::filesystem::exists(path), ErrorKind::NotFound,
          "no such file: " + path.string());
  if (has_png_magic(path)) {
    // IHDR is always the first chunk: width/height are big-endian at offset 16.
    std::ifstream in(path, std::ios::binary);
    unsigned char buf[24];
    in.read(reinterpret_cast<char*>(buf), 24);
    require(in.gcount() == 24, ErrorKind::TruncatedPayload,
            "PNG shorter than IHDR in " + path.string());
    auto be32 = [](const unsigned char* p) {
      return (static_cast<uint32_t>(p[0]) << 24) | (static_cast<uint32_t>(p[1]) << 16) |
             (static_cast<uint32_t>(p[2]) << 8) | static_cast<uint32_t>(p[3]);
    };
    return {static_cast<int>(be32(buf + 16)), static_cast<int>(be32(buf + 20))};
  }
  std::ifstream in(path, std::ios::binary);
  require(in.is_open(), ErrorKind::NotFound, "cannot open " + path.string());
  PnmHeader h = read_pnm_header(in, path.string());
  require(h.magic == "P6" || h.magic == "P5", ErrorKind::UnsupportedFormat,
          "unrecognized image format in " + path.string());
  return {h.width, h.height};
}

LabelMask load_mask(const std::filesystem::path& path, int num_classes) {
  std::ifstream in(path, std::ios::binary);
  require(in.is_open(), ErrorKind::NotFound, "cannot open " + path.string());
  PnmHeader h = read_pnm_header(in, path.string());
  require(h.magic == "P5", ErrorKind::UnsupportedFormat,
          "expected P5 magic in " + path.string());
  LabelMask mask(h.width, h.height, num_classes);
  in.read(reinterpret_cast<char*>(mask.labels.data()),
          static_cast<std::streamsize>(mask.labels.size()));
  require(static_cast<size_t>(in.gcount()) == mask.labels.size(),
          ErrorKind::TruncatedPayload, "short PGM payload in " + path.string());
  mask.validate();
  return mask;
}

void save_mask(const LabelMask& mask, const std::filesystem::path& path) {
  std::string payload;
  payload.reserve(mask.labels.size() + 32);
  payload += "P5\n" + std::to_string(mask.width) + " " +
             std::to_string(mask.height) + "\n255\n";
  payload.append(reinterpret_cast<const char*>(mask.labels.data()), mask.labels.size());
  atomic_write_bytes(path, payload);
}

}  // namespace scorpion
