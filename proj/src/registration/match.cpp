#include "scorpion/registration/match.hpp"

#include <limits>

namespace scorpion::registration {

MatchSet match_descriptors(const std::vector<BinaryDescriptor>& a,
                           const std::vector<BinaryDescriptor>& b, double ratio) {
  require(ratio > 0.0 && ratio <= 1.0, ErrorKind::InvalidArgument,
          "match ratio must lie in (0, 1]");
  require(!a.empty() && !b.empty(), ErrorKind::InvalidArgument,
          "cannot match empty descriptor lists");

  // Best b-index for every a-descriptor (needed for the mutual check too).
  std::vector<size_t> best_b(a.size());
  MatchSet tentative;
  for (size_t i = 0; i < a.size(); ++i) {
    int d1 = std::numeric_limits<int>::max();
    int d2 = std::numeric_limits<int>::max();
    size_t j1 = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      int d = hamming_distance(a[i], b[j]);
      if (d < d1) {
        d2 = d1;
        d1 = d;
        j1 = j;
      } else if (d < d2) {
        d2 = d;
      }
    }
    best_b[i] = j1;
    bool ratio_ok = b.size() < 2 || static_cast<double>(d1) < ratio * static_cast<double>(d2);
    if (ratio_ok) tentative.push_back({i, j1, d1});
  }

  MatchSet matches;
  for (const Match& m : tentative) {
    // Mutual best: the chosen b-descriptor must prefer this a-descriptor.
    int best = std::numeric_limits<int>::max();
    size_t best_i = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      int d = hamming_distance(a[i], b[m.dst_index]);
      if (d < best) {
        best = d;
        best_i = i;
      }
    }
    if (best_i == m.src_index) matches.push_back(m);
  }
  return matches;
}

}  // namespace scorpion::registration
