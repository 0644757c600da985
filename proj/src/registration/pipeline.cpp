#include "scorpion/registration/pipeline.hpp"

#include "scorpion/registration/descriptor.hpp"

namespace scorpion::registration {

nlohmann::json RegistrationResult::to_json() const {
  nlohmann::json j = transform.to_json();
  j["inliers"] = inlier_count;
  j["mean_error"] = mean_error;
  j["keypoints"] = {{"reference", keypoints_reference}, {"moving", keypoints_moving}};
  j["matches"] = matches;
  return j;
}

RegistrationResult register_pair(const RasterImage& reference,
                                 const RasterImage& moving,
                                 const RegistrationParams& params, Rng& rng) {
  auto kp_ref = detect_keypoints(reference, params.max_keypoints);
  auto kp_mov = detect_keypoints(moving, params.max_keypoints);

  auto desc_ref = compute_descriptors(reference, kp_ref);
  auto desc_mov = compute_descriptors(moving, kp_mov);

  MatchSet matches =
      match_descriptors(desc_mov.descriptors, desc_ref.descriptors, params.match_ratio);

  // Match indices refer to the descriptor lists; map back to keypoints.
  std::vector<Vec2> src_points(desc_mov.descriptors.size());
  for (size_t i = 0; i < desc_mov.kept_indices.size(); ++i)
    src_points[i] = kp_mov[desc_mov.kept_indices[i]].position;
  std::vector<Vec2> dst_points(desc_ref.descriptors.size());
  for (size_t i = 0; i < desc_ref.kept_indices.size(); ++i)
    dst_points[i] = kp_ref[desc_ref.kept_indices[i]].position;

  RansacResult ransac =
      estimate_affine_ransac(matches, src_points, dst_points, params.ransac, rng);

  RegistrationResult result;
  result.transform = ransac.transform;
  result.inlier_count = ransac.inlier_count;
  result.mean_error = ransac.mean_error;
  result.keypoints_reference = kp_ref.size();
  result.keypoints_moving = kp_mov.size();
  result.matches = matches.size();
  return result;
}

std::vector<AlignedSample> extract_aligned_patches(
    const ScannerId& reference_id, const RasterImage& reference,
    const std::map<ScannerId, RasterImage>& others,
    const std::map<ScannerId, AffineTransform>& transforms,
    const std::vector<std::array<int, 2>>& regions, int patch_src_size,
    int patch_out_size) {
  require(patch_src_size > 0 && patch_out_size > 0, ErrorKind::InvalidArgument,
          "patch sizes must be positive");

  // Each scan is warped into reference coordinates once, then cropped per region.
  std::map<ScannerId, RasterImage> aligned;
  for (const auto& [scanner, img] : others) {
    auto it = transforms.find(scanner);
    require(it != transforms.end(), ErrorKind::InvalidArgument,
            "no transform for scanner '" + scanner + "'");
    aligned.emplace(scanner,
                    warp_affine(img, it->second, reference.width, reference.height));
  }

  std::vector<AlignedSample> samples;
  int index = 0;
  for (const auto& [rx, ry] : regions) {
    require(rx >= 0 && ry >= 0 && rx + patch_src_size <= reference.width &&
                ry + patch_src_size <= reference.height,
            ErrorKind::InvalidArgument,
            "region (" + std::to_string(rx) + ", " + std::to_string(ry) +
                ") leaves the reference bounds");
    AlignedSample sample;
    char id[32];
    std::snprintf(id, sizeof id, "region_%03d", index++);
    sample.sample_id = id;
    sample.origin = {static_cast<double>(rx), static_cast<double>(ry)};
    sample.patches.emplace(
        reference_id, resize_bilinear(crop(reference, rx, ry, patch_src_size, patch_src_size),
                                      patch_out_size, patch_out_size));
    for (const auto& [scanner, img] : aligned)
      sample.patches.emplace(
          scanner, resize_bilinear(crop(img, rx, ry, patch_src_size, patch_src_size),
                                   patch_out_size, patch_out_size));
    samples.push_back(std::move(sample));
  }
  return samples;
}

}  // namespace scorpion::registration
