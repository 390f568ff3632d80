#pragma once

#include <cstddef>

#include "pedeval/geometry/homography.hpp"
#include "pedeval/trajdata/types.hpp"

namespace pedeval::pipeline {

struct I2VResult {
  Scene scene;
  std::size_t dropped_points = 0;  // |w| below the projection cutoff
  std::size_t split_tracks = 0;    // extra trajectories created at frame gaps
};

/// Projects ground-contact points to the BEV plane. A track that skips a
/// frame (or loses a point to the projection cutoff) is split; the first
/// piece keeps its id and later pieces get fresh ids above the largest
/// input id, in (track, frame) order. Detection confidences are carried.
I2VResult project_i2v(const TrackletSet& tracklets, const geometry::Homography& homography, double fps);

struct SyntheticBox {
  double width_px = 20.0;
  double height_px = 50.0;
};

/// Inverse of project_i2v: every scene point becomes a box whose bottom
/// midpoint maps to it through the homography.
TrackletSet scene_to_tracklets(const Scene& scene, const geometry::Homography& homography,
                               const SyntheticBox& box = {});

}  // namespace pedeval::pipeline
