#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "eit/random.hpp"
#include "eit/segmentation.hpp"
#include "test_support.hpp"

using namespace eit;
using namespace eit::testing;

namespace {

ImageBuffer constant_image(std::size_t w, std::size_t h, std::uint8_t v) {
  ImageBuffer img(w, h, 3);
  std::fill(img.data().begin(), img.data().end(), v);
  return img;
}

// Left half black, right half white.
ImageBuffer two_tone(std::size_t w, std::size_t h) {
  ImageBuffer img(w, h, 3);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = w / 2; x < w; ++x) {
      for (std::size_t c = 0; c < 3; ++c) img.at(x, y)[c] = 255;
    }
  }
  return img;
}

// Smooth colour field with some structure, so SLIC has real work to do.
ImageBuffer blobs(std::mt19937_64& rng, std::size_t w, std::size_t h) {
  ImageBuffer img(w, h, 3);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  struct Blob { double x, y, r; std::uint8_t col[3]; };
  std::vector<Blob> bs(6);
  for (auto& b : bs) {
    b = {pos(rng) * w, pos(rng) * h, 4.0 + pos(rng) * w / 3.0,
         {static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
          static_cast<std::uint8_t>(rng())}};
  }
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      auto px = img.at(x, y);
      px[0] = static_cast<std::uint8_t>(x * 255 / w);
      px[1] = static_cast<std::uint8_t>(y * 255 / h);
      px[2] = 128;
      for (const auto& b : bs) {
        const double dx = x - b.x, dy = y - b.y;
        if (dx * dx + dy * dy < b.r * b.r) {
          for (int c = 0; c < 3; ++c) px[c] = b.col[c];
        }
      }
    }
  }
  return img;
}

// Number of 4-connected components of label l, by flood fill.
std::size_t components_of(const SegmentMap& seg, std::uint32_t l) {
  std::vector<char> seen(seg.labels.size(), 0);
  std::size_t count = 0;
  for (std::size_t s = 0; s < seg.labels.size(); ++s) {
    if (seg.labels[s] != l || seen[s]) continue;
    ++count;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const std::size_t i = q.front();
      q.pop();
      const std::size_t x = i % seg.width, y = i / seg.width;
      auto visit = [&](std::size_t j) {
        if (seg.labels[j] == l && !seen[j]) {
          seen[j] = 1;
          q.push(j);
        }
      };
      if (x > 0) visit(i - 1);
      if (x + 1 < seg.width) visit(i + 1);
      if (y > 0) visit(i - seg.width);
      if (y + 1 < seg.height) visit(i + seg.width);
    }
  }
  return count;
}

void check_well_formed(const SegmentMap& seg, std::size_t requested) {
  REQUIRE(seg.labels.size() == seg.width * seg.height);
  CHECK(seg.n_labels >= 1);
  CHECK(seg.n_labels <= 2 * requested);
  // Labels appear in order of first raster occurrence.
  std::uint32_t next = 0;
  for (auto l : seg.labels) {
    REQUIRE(l <= next);
    if (l == next) ++next;
  }
  CHECK(next == seg.n_labels);
  for (std::uint32_t l = 0; l < seg.n_labels; ++l) {
    CAPTURE(l);
    CHECK(components_of(seg, l) == 1);
  }
}

}  // namespace

TEST_CASE("superpixel_segment on simple images") {
  SUBCASE("constant 32x32, k = 4 -> four quadrants") {
    const auto seg = superpixel_segment(constant_image(32, 32, 90), 4);
    CHECK(seg.n_labels == 4);
    check_well_formed(seg, 4);
    const auto members = seg.members();
    for (const auto& m : members) CHECK(m.size() == 256);
  }

  SUBCASE("k = 1 -> one label") {
    std::mt19937_64 rng(1);
    const auto seg = superpixel_segment(random_image(rng, 20, 13, 3), 1);
    CHECK(seg.n_labels == 1);
    CHECK(std::all_of(seg.labels.begin(), seg.labels.end(), [](auto l) { return l == 0; }));
  }

  SUBCASE("two-tone 64x64, k = 8: no segment straddles the edge") {
    const auto img = two_tone(64, 64);
    const auto seg = superpixel_segment(img, 8);
    check_well_formed(seg, 8);
    std::map<std::uint32_t, std::set<int>> tones;
    for (std::size_t i = 0; i < seg.labels.size(); ++i) tones[seg.labels[i]].insert(img.pixel(i)[0]);
    for (const auto& [label, t] : tones) {
      CAPTURE(label);
      CHECK(t.size() == 1);
    }
    CHECK(seg.n_labels >= 2);
  }

  SUBCASE("single-channel input") {
    ImageBuffer gray(40, 30, 1);
    for (std::size_t i = 0; i < gray.pixel_count(); ++i) gray.data()[i] = (i % 40) < 20 ? 10 : 240;
    const auto seg = superpixel_segment(gray, 6);
    check_well_formed(seg, 6);
  }
}

TEST_CASE("superpixel_segment properties") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t w = 16 + rng() % 80;
    const std::size_t h = 16 + rng() % 80;
    const std::size_t k = 1 + rng() % 60;
    const auto img = trial % 3 == 0 ? random_image(rng, w, h, 3) : blobs(rng, w, h);
    CAPTURE(w);
    CAPTURE(h);
    CAPTURE(k);
    const auto seg = superpixel_segment(img, k);
    check_well_formed(seg, k);
    CHECK(superpixel_segment(img, k) == seg);
  }
}

TEST_CASE("superpixel_segment argument checks") {
  const auto img = constant_image(4, 4, 0);
  CHECK_THROWS_AS(superpixel_segment(img, 0), std::invalid_argument);
  CHECK_THROWS_AS(superpixel_segment(img, 17), std::invalid_argument);
  CHECK_NOTHROW(superpixel_segment(img, 16));
  CHECK_THROWS_AS(superpixel_segment(img, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(superpixel_segment(img, 2, 10.0, 0), std::invalid_argument);
}

TEST_CASE("segmentation_displacement_shuffle") {
  std::mt19937_64 rng(3);
  const auto img = distinct_image(60, 40);
  const auto seg = superpixel_segment(blobs(rng, 60, 40), 12);
  const auto members = seg.members();

  SUBCASE("every receiver pixel comes from its donor, cycled in raster order") {
    const std::uint64_t seed = 77;
    const auto out = segmentation_displacement_shuffle(img, seg, seed);
    const auto perm = seeded_permutation(seed, seg.n_labels);
    const auto src = provenance(out);
    for (std::uint32_t l = 0; l < seg.n_labels; ++l) {
      const auto& recv = members[l];
      const auto& donor = members[perm[l]];
      for (std::size_t j = 0; j < recv.size(); ++j) {
        REQUIRE(src[recv[j]] == donor[j % donor.size()]);
      }
    }
  }

  SUBCASE("deterministic, and other seeds move things") {
    CHECK(segmentation_displacement_shuffle(img, seg, 5) == segmentation_displacement_shuffle(img, seg, 5));
    if (seg.n_labels > 2) {
      CHECK(segmentation_displacement_shuffle(img, seg, 5) != segmentation_displacement_shuffle(img, seg, 6));
    }
  }

  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(segmentation_displacement_shuffle(distinct_image(10, 10), seg, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("segmentation_within_shuffle") {
  std::mt19937_64 rng(4);
  const auto img = distinct_image(50, 50);
  const auto seg = superpixel_segment(blobs(rng, 50, 50), 9);

  SUBCASE("pixels never leave their segment") {
    for (double p : {0.25, 0.5, 1.0}) {
      const auto out = segmentation_within_shuffle(img, seg, p, 11);
      const auto src = provenance(out);
      for (std::size_t i = 0; i < src.size(); ++i) REQUIRE(seg.labels[src[i]] == seg.labels[i]);
      CHECK(same_multiset_by_count(img, out));
    }
  }

  SUBCASE("p = 0 is identity") {
    CHECK(segmentation_within_shuffle(img, seg, 0.0, 11) == img);
  }

  SUBCASE("segment l uses sub-seed mix64(seed, l)") {
    ImageBuffer expected = img;
    const auto members = seg.members();
    for (std::uint32_t l = 0; l < seg.n_labels; ++l) {
      const auto sub = mix64(3, l);
      const auto picked = bernoulli_select(mix64(sub, 1), members[l].size(), 0.5);
      const auto perm = seeded_permutation(mix64(sub, 2), picked.size());
      for (std::size_t i = 0; i < picked.size(); ++i) {
        expected.copy_pixel_from(img, members[l][picked[perm[i]]], members[l][picked[i]]);
      }
    }
    CHECK(segmentation_within_shuffle(img, seg, 0.5, 3) == expected);
  }
}

TEST_CASE("render_segment_labels") {
  const auto seg = superpixel_segment(constant_image(32, 32, 0), 4);
  const auto pic = render_segment_labels(seg);
  CHECK(pic.channels() == 1);
  CHECK(pic.width() == 32);
  CHECK(pic.data().front() == 0);
  CHECK(pic.data().back() == 255);
}
