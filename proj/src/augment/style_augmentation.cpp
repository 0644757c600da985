#include "scorpion/augment/style_augmentation.hpp"

namespace scorpion::augment {
namespace {

bool same_content(const RasterImage& a, const RasterImage& b) {
  return a.same_size(b) && a.data == b.data;
}

}  // namespace

SaMethod parse_sa_method(const std::string& name) {
  if (name == "colorjitter") return SaMethod::ColorJitter;
  if (name == "randstainna") return SaMethod::RandStainNa;
  if (name == "fda") return SaMethod::Fda;
  fail(ErrorKind::InvalidArgument, "unknown SA method '" + name +
                                       "' (expected colorjitter, randstainna, or fda)");
}

const char* to_string(SaMethod method) {
  switch (method) {
    case SaMethod::ColorJitter: return "colorjitter";
    case SaMethod::RandStainNa: return "randstainna";
    case SaMethod::Fda: return "fda";
  }
  return "?";
}

StyleAugmentation make_sa(const SaSpec& spec, std::vector<RasterImage> style_pool) {
  switch (spec.method) {
    case SaMethod::ColorJitter: {
      spec.jitter.validate();
      ColorJitterParams params = spec.jitter;
      return {"colorjitter", [params](const RasterImage& img, Rng& rng) {
                return color_jitter(img, params, rng);
              }};
    }
    case SaMethod::RandStainNa: {
      require(spec.stain_dist.has_value(), ErrorKind::InvalidArgument,
              "RandStainNA needs a fitted stain distribution");
      StainStatsDistribution dist = *spec.stain_dist;
      return {"randstainna", [dist](const RasterImage& img, Rng& rng) {
                return rand_stain_na(img, dist, rng);
              }};
    }
    case SaMethod::Fda: {
      spec.fda.validate();
      require(!style_pool.empty(), ErrorKind::InvalidArgument,
              "FDA needs a non-empty style pool");
      auto pool = std::make_shared<const std::vector<RasterImage>>(std::move(style_pool));
      FdaParams params = spec.fda;
      return {"fda", [pool, params](const RasterImage& img, Rng& rng) {
                size_t idx = rng.below(static_cast<uint32_t>(pool->size()));
                if (pool->size() > 1 && same_content((*pool)[idx], img))
                  idx = (idx + 1) % pool->size();
                return fda_transfer(img, (*pool)[idx], params);
              }};
    }
  }
  fail(ErrorKind::InvalidArgument, "unreachable SA method");
}

StyleAugmentation identity_sa() {
  return {"identity", [](const RasterImage& img, Rng&) { return img; }};
}

}  // namespace scorpion::augment
