// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "asd/geometry.hpp"
#include "asd/tensor.hpp"

namespace asd {

/// RGB pixels covering part of a panorama frame; x coordinates are panorama
/// pixels and may wrap past the seam (normalized modulo pano_width).
struct FrameRegion {
  double origin_x = 0.0;
  double origin_y = 0.0;
  int width = 0;
  int height = 0;
  int pano_width = 10000;
  std::vector<float> rgb;  // row-major, 3 floats per pixel, values in [0,1]

  float sample_gray(double px, double py) const;  // bilinear, edge-replicated
};

struct FacePatch {
  int height = 120;
  int width = 192;
  std::int64_t frame_index = 0;
  std::int64_t tracklet_id = -1;
  std::vector<double> pixels;  // [height*width], values in [0,1]
};

struct PatchSize {
  int height = 120;
  int width = 192;
};

struct BoxAdjustParams {
  double scale_w = 1.2;
  double scale_h = 1.4;
  double shift_down_fraction = 0.15;
};

/// Grows the head box and shifts it toward the lip region, then clips
/// vertically to the panorama.
PixelBox adjust_bbox(const PixelBox& box, const BoxAdjustParams& p, const PanoramaDims& pano);

/// Crops `box` out of the region, converts to grayscale (0.299/0.587/0.114)
/// and bilinearly resizes to the patch size.
FacePatch extract_patch(const FrameRegion& region, const PixelBox& box, const PatchSize& size);

/// Stacks the last l patches as channels, oldest first; at tracklet birth the
/// oldest available patch is repeated to fill. History is ordered oldest to
/// newest. Returns tensor [l, H, W].
Tensor stack_patches(const std::vector<FacePatch>& history, int l);

struct PatchAugmentParams {
  double max_rotation_deg = 10.0;
  double max_translation_px = 5.0;
};

/// One rotation + translation drawn per stack, applied identically to all l
/// channels; borders are edge-replicated.
Tensor augment_patch_stack(const Tensor& stack, const PatchAugmentParams& p, std::mt19937_64& rng);

}  // namespace asd
