#include "eit/segmentation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "eit/block_transforms.hpp"
#include "eit/random.hpp"

namespace eit {

namespace {

constexpr std::uint32_t kNoLabel = std::numeric_limits<std::uint32_t>::max();

double srgb_to_linear(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

// Colour features per pixel: CIELAB for RGB, scaled intensity for gray.
std::vector<std::array<double, 3>> color_features(const ImageBuffer& img) {
  std::vector<std::array<double, 3>> out(img.pixel_count());
  if (img.channels() == 1) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = {img.pixel(i)[0] * (100.0 / 255.0), 0.0, 0.0};
    }
    return out;
  }
  std::array<double, 256> linear{};
  for (std::size_t v = 0; v < 256; ++v) linear[v] = srgb_to_linear(static_cast<double>(v) / 255.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto px = img.pixel(i);
    const double r = linear[px[0]];
    const double g = linear[px[1]];
    const double b = linear[px[2]];
    const double x = (0.4124564 * r + 0.3575761 * g + 0.1804375 * b) / 0.95047;
    const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    const double z = (0.0193339 * r + 0.1191920 * g + 0.9503041 * b) / 1.08883;
    const double fx = lab_f(x);
    const double fy = lab_f(y);
    const double fz = lab_f(z);
    out[i] = {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
  }
  return out;
}

double color_distance2(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double d0 = a[0] - b[0];
  const double d1 = a[1] - b[1];
  const double d2 = a[2] - b[2];
  return d0 * d0 + d1 * d1 + d2 * d2;
}

struct Center {
  std::array<double, 3> color{};
  double x = 0.0;
  double y = 0.0;
};

class Slic {
 public:
  Slic(const ImageBuffer& img, std::size_t n_segments, double compactness)
      : width_(img.width()), height_(img.height()), features_(color_features(img)) {
    const double n = static_cast<double>(img.pixel_count());
    const double k = static_cast<double>(n_segments);
    interval_ = std::sqrt(n / k);
    spatial_weight_ = (compactness / interval_) * (compactness / interval_);

    // Grid follows the aspect ratio; nx * ny <= 1.5 * n_segments.
    const auto ny_ideal = static_cast<std::size_t>(std::llround(std::sqrt(k * height_ / width_)));
    ny_ = std::clamp<std::size_t>(ny_ideal, 1, std::min(n_segments, height_));
    const auto nx_ideal = static_cast<std::size_t>(std::llround(k / static_cast<double>(ny_)));
    nx_ = std::clamp<std::size_t>(nx_ideal, 1, width_);
    step_x_ = static_cast<double>(width_) / static_cast<double>(nx_);
    step_y_ = static_cast<double>(height_) / static_cast<double>(ny_);
  }

  std::size_t cluster_count() const noexcept { return nx_ * ny_; }

  std::vector<std::uint32_t> run(int iterations) {
    seed_centers();
    labels_.assign(width_ * height_, 0);
    for (std::size_t y = 0; y < height_; ++y) {
      const auto row = std::min(ny_ - 1, static_cast<std::size_t>(y / step_y_));
      for (std::size_t x = 0; x < width_; ++x) {
        const auto col = std::min(nx_ - 1, static_cast<std::size_t>(x / step_x_));
        labels_[y * width_ + x] = static_cast<std::uint32_t>(row * nx_ + col);
      }
    }
    for (int it = 0; it < iterations; ++it) {
      assign();
      update_centers();
    }
    return labels_;
  }

 private:
  const std::array<double, 3>& feature(std::size_t x, std::size_t y) const {
    return features_[y * width_ + x];
  }

  double gradient(std::size_t x, std::size_t y) const {
    const std::size_t xl = x > 0 ? x - 1 : x;
    const std::size_t xr = x + 1 < width_ ? x + 1 : x;
    const std::size_t yu = y > 0 ? y - 1 : y;
    const std::size_t yd = y + 1 < height_ ? y + 1 : y;
    return color_distance2(feature(xr, y), feature(xl, y)) +
           color_distance2(feature(x, yd), feature(x, yu));
  }

  void seed_centers() {
    centers_.clear();
    centers_.reserve(nx_ * ny_);
    for (std::size_t j = 0; j < ny_; ++j) {
      for (std::size_t i = 0; i < nx_; ++i) {
        Center c;
        c.x = (static_cast<double>(i) + 0.5) * step_x_ - 0.5;
        c.y = (static_cast<double>(j) + 0.5) * step_y_ - 0.5;
        auto px = static_cast<std::size_t>(std::clamp<double>(std::round(c.x), 0, width_ - 1));
        auto py = static_cast<std::size_t>(std::clamp<double>(std::round(c.y), 0, height_ - 1));
        // Move off edges: lowest gradient in the 3x3 neighbourhood, strict improvement only.
        double best = gradient(px, py);
        std::size_t bx = px;
        std::size_t by = py;
        for (std::size_t yy = py > 0 ? py - 1 : py; yy <= std::min(py + 1, height_ - 1); ++yy) {
          for (std::size_t xx = px > 0 ? px - 1 : px; xx <= std::min(px + 1, width_ - 1); ++xx) {
            const double g = gradient(xx, yy);
            if (g < best) {
              best = g;
              bx = xx;
              by = yy;
            }
          }
        }
        if (bx != px || by != py) {
          c.x = static_cast<double>(bx);
          c.y = static_cast<double>(by);
        }
        c.color = feature(bx, by);
        centers_.push_back(c);
      }
    }
  }

  void assign() {
    const double half = std::ceil(std::max(step_x_, step_y_));
    distance_.assign(width_ * height_, std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < centers_.size(); ++k) {
      const Center& c = centers_[k];
      const auto x0 = static_cast<std::size_t>(std::max(0.0, std::floor(c.x - half)));
      const auto y0 = static_cast<std::size_t>(std::max(0.0, std::floor(c.y - half)));
      const auto x1 = static_cast<std::size_t>(
          std::min(static_cast<double>(width_ - 1), std::ceil(c.x + half)));
      const auto y1 = static_cast<std::size_t>(
          std::min(static_cast<double>(height_ - 1), std::ceil(c.y + half)));
      for (std::size_t y = y0; y <= y1; ++y) {
        const double dy = static_cast<double>(y) - c.y;
        for (std::size_t x = x0; x <= x1; ++x) {
          const double dx = static_cast<double>(x) - c.x;
          const std::size_t i = y * width_ + x;
          const double d = color_distance2(features_[i], c.color) + (dx * dx + dy * dy) * spatial_weight_;
          if (d < distance_[i]) {
            distance_[i] = d;
            labels_[i] = static_cast<std::uint32_t>(k);
          }
        }
      }
    }
  }

  void update_centers() {
    std::vector<std::array<double, 5>> sums(centers_.size(), {0, 0, 0, 0, 0});
    std::vector<std::size_t> counts(centers_.size(), 0);
    for (std::size_t y = 0; y < height_; ++y) {
      for (std::size_t x = 0; x < width_; ++x) {
        const std::size_t i = y * width_ + x;
        auto& s = sums[labels_[i]];
        s[0] += features_[i][0];
        s[1] += features_[i][1];
        s[2] += features_[i][2];
        s[3] += static_cast<double>(x);
        s[4] += static_cast<double>(y);
        ++counts[labels_[i]];
      }
    }
    for (std::size_t k = 0; k < centers_.size(); ++k) {
      if (counts[k] == 0) continue;
      const double inv = 1.0 / static_cast<double>(counts[k]);
      centers_[k].color = {sums[k][0] * inv, sums[k][1] * inv, sums[k][2] * inv};
      centers_[k].x = sums[k][3] * inv;
      centers_[k].y = sums[k][4] * inv;
    }
  }

  std::size_t width_;
  std::size_t height_;
  std::vector<std::array<double, 3>> features_;
  double interval_ = 1.0;
  double spatial_weight_ = 1.0;
  std::size_t nx_ = 1;
  std::size_t ny_ = 1;
  double step_x_ = 1.0;
  double step_y_ = 1.0;
  std::vector<Center> centers_;
  std::vector<std::uint32_t> labels_;
  std::vector<double> distance_;
};

struct Components {
  std::vector<std::uint32_t> of_pixel;
  std::vector<std::size_t> size;
  std::vector<std::size_t> first_pixel;
  std::vector<std::uint32_t> cluster;
};

Components connected_components(const std::vector<std::uint32_t>& labels, std::size_t width,
                                std::size_t height) {
  Components comps;
  comps.of_pixel.assign(labels.size(), kNoLabel);
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < labels.size(); ++start) {
    if (comps.of_pixel[start] != kNoLabel) continue;
    const auto id = static_cast<std::uint32_t>(comps.size.size());
    const std::uint32_t cluster = labels[start];
    std::size_t count = 0;
    stack.assign(1, start);
    comps.of_pixel[start] = id;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++count;
      const std::size_t x = i % width;
      const std::size_t y = i / width;
      const std::array<std::pair<bool, std::size_t>, 4> nbrs{{
          {x > 0, i - 1},
          {x + 1 < width, i + 1},
          {y > 0, i - width},
          {y + 1 < height, i + width},
      }};
      for (const auto& [valid, j] : nbrs) {
        if (valid && comps.of_pixel[j] == kNoLabel && labels[j] == cluster) {
          comps.of_pixel[j] = id;
          stack.push_back(j);
        }
      }
    }
    comps.size.push_back(count);
    comps.first_pixel.push_back(start);
    comps.cluster.push_back(cluster);
  }
  return comps;
}

// Merge every orphan component (not the largest piece of its cluster, or
// smaller than min_size) into its largest neighbour; relabel by first
// appearance in raster order.
SegmentMap enforce_connectivity(const std::vector<std::uint32_t>& labels, std::size_t width,
                                std::size_t height, std::size_t clusters, std::size_t min_size) {
  Components comps = connected_components(labels, width, height);
  const std::size_t n = comps.size.size();

  std::vector<std::uint32_t> largest(clusters, kNoLabel);
  for (std::uint32_t c = 0; c < n; ++c) {
    auto& best = largest[comps.cluster[c]];
    if (best == kNoLabel || comps.size[c] > comps.size[best]) best = c;
  }
  std::vector<std::uint32_t> orphans;
  for (std::uint32_t c = 0; c < n; ++c) {
    if (largest[comps.cluster[c]] != c || comps.size[c] < min_size) orphans.push_back(c);
  }
  std::stable_sort(orphans.begin(), orphans.end(), [&](std::uint32_t a, std::uint32_t b) {
    return comps.size[a] < comps.size[b];
  });

  std::vector<std::vector<std::uint32_t>> adjacency(n);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const std::size_t i = y * width + x;
      const std::uint32_t a = comps.of_pixel[i];
      if (x + 1 < width && comps.of_pixel[i + 1] != a) {
        adjacency[a].push_back(comps.of_pixel[i + 1]);
        adjacency[comps.of_pixel[i + 1]].push_back(a);
      }
      if (y + 1 < height && comps.of_pixel[i + width] != a) {
        adjacency[a].push_back(comps.of_pixel[i + width]);
        adjacency[comps.of_pixel[i + width]].push_back(a);
      }
    }
  }
  for (auto& adj : adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }

  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0U);
  std::vector<std::vector<std::uint32_t>> members(n);
  for (std::uint32_t c = 0; c < n; ++c) members[c] = {c};
  std::vector<std::size_t> root_size = comps.size;
  std::vector<std::size_t> root_first = comps.first_pixel;

  auto find = [&](std::uint32_t c) {
    while (parent[c] != c) {
      parent[c] = parent[parent[c]];
      c = parent[c];
    }
    return c;
  };

  for (const std::uint32_t orphan : orphans) {
    if (find(orphan) != orphan) continue;  // already absorbed
    std::uint32_t target = kNoLabel;
    for (const std::uint32_t m : members[orphan]) {
      for (const std::uint32_t nb : adjacency[m]) {
        const std::uint32_t r = find(nb);
        if (r == orphan) continue;
        if (target == kNoLabel || root_size[r] > root_size[target] ||
            (root_size[r] == root_size[target] && root_first[r] < root_first[target])) {
          target = r;
        }
      }
    }
    if (target == kNoLabel) continue;  // covers the whole image
    parent[orphan] = target;
    root_size[target] += root_size[orphan];
    root_first[target] = std::min(root_first[target], root_first[orphan]);
    members[target].insert(members[target].end(), members[orphan].begin(), members[orphan].end());
    members[orphan].clear();
  }

  SegmentMap seg;
  seg.width = width;
  seg.height = height;
  seg.labels.resize(labels.size());
  std::vector<std::uint32_t> relabel(n, kNoLabel);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::uint32_t r = find(comps.of_pixel[i]);
    if (relabel[r] == kNoLabel) relabel[r] = next++;
    seg.labels[i] = relabel[r];
  }
  seg.n_labels = next;
  return seg;
}

void check_matches(const ImageBuffer& img, const SegmentMap& seg) {
  if (seg.width != img.width() || seg.height != img.height() ||
      seg.labels.size() != img.pixel_count()) {
    throw std::invalid_argument("segment map dimensions do not match the image");
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> SegmentMap::members() const {
  std::vector<std::vector<std::size_t>> out(n_labels);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= n_labels) throw std::invalid_argument("segment label out of range");
    out[labels[i]].push_back(i);
  }
  return out;
}

SegmentMap superpixel_segment(const ImageBuffer& img, std::size_t n_segments, double compactness,
                              int iterations) {
  if (img.empty()) throw std::invalid_argument("superpixel_segment: empty image");
  if (n_segments == 0) throw std::invalid_argument("superpixel_segment: n_segments must be >= 1");
  if (n_segments > img.pixel_count()) {
    throw std::invalid_argument("superpixel_segment: n_segments " + std::to_string(n_segments) +
                                " exceeds pixel count " + std::to_string(img.pixel_count()));
  }
  if (iterations < 1) throw std::invalid_argument("superpixel_segment: iterations must be >= 1");
  if (!(compactness > 0.0)) throw std::invalid_argument("superpixel_segment: compactness must be > 0");

  Slic slic(img, n_segments, compactness);
  const auto labels = slic.run(iterations);
  const std::size_t min_size = img.pixel_count() / (4 * slic.cluster_count());
  return enforce_connectivity(labels, img.width(), img.height(), slic.cluster_count(), min_size);
}

ImageBuffer segmentation_displacement_shuffle(const ImageBuffer& img, const SegmentMap& seg,
                                              std::uint64_t seed) {
  check_matches(img, seg);
  const auto groups = seg.members();
  const auto perm = seeded_permutation(seed, groups.size());
  ImageBuffer out = img;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (perm[i] == i) continue;
    const auto& receivers = groups[i];
    const auto& donors = groups[perm[i]];
    for (std::size_t j = 0; j < receivers.size(); ++j) {
      out.copy_pixel_from(img, donors[j % donors.size()], receivers[j]);
    }
  }
  return out;
}

ImageBuffer segmentation_within_shuffle(const ImageBuffer& img, const SegmentMap& seg, double p,
                                        std::uint64_t seed) {
  check_matches(img, seg);
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  ImageBuffer out = img;
  if (p == 0.0) return out;
  const auto groups = seg.members();
  for (std::size_t l = 0; l < groups.size(); ++l) {
    shuffle_positions(img, out, groups[l], p, mix64(seed, l));
  }
  return out;
}

ImageBuffer render_segment_labels(const SegmentMap& seg) {
  ImageBuffer out(seg.width, seg.height, 1);
  auto data = out.data();
  const std::uint32_t top = seg.n_labels > 1 ? seg.n_labels - 1 : 1;
  for (std::size_t i = 0; i < seg.labels.size(); ++i) {
    data[i] = static_cast<std::uint8_t>(seg.labels[i] * 255U / top);
  }
  return out;
}

}  // namespace eit
