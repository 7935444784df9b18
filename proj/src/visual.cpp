// SPDX-License-Identifier: Apache-2.0
#include "asd/visual.hpp"

#include <cmath>
#include <stdexcept>

namespace asd {

namespace {

double wrap_dx(double dx, int pano_width) {
  // nearest representative of dx modulo the panorama circumference
  double w = static_cast<double>(pano_width);
  dx = std::fmod(dx, w);
  if (dx > 0.5 * w) dx -= w;
  if (dx < -0.5 * w) dx += w;
  return dx;
}

double bilinear(const std::vector<double>& img, int h, int w, double x, double y) {
  x = std::fmin(std::fmax(x, 0.0), w - 1.0);
  y = std::fmin(std::fmax(y, 0.0), h - 1.0);
  int x0 = static_cast<int>(std::floor(x)), y0 = static_cast<int>(std::floor(y));
  int x1 = std::min(x0 + 1, w - 1), y1 = std::min(y0 + 1, h - 1);
  double fx = x - x0, fy = y - y0;
  double v00 = img[static_cast<size_t>(y0) * w + x0], v01 = img[static_cast<size_t>(y0) * w + x1];
  double v10 = img[static_cast<size_t>(y1) * w + x0], v11 = img[static_cast<size_t>(y1) * w + x1];
  return (v00 * (1 - fx) + v01 * fx) * (1 - fy) + (v10 * (1 - fx) + v11 * fx) * fy;
}

}  // namespace

float FrameRegion::sample_gray(double px, double py) const {
  double rx = origin_x + wrap_dx(px - origin_x, pano_width);
  double x = rx - origin_x;
  double y = py - origin_y;
  x = std::fmin(std::fmax(x, 0.0), width - 1.0);
  y = std::fmin(std::fmax(y, 0.0), height - 1.0);
  int x0 = static_cast<int>(std::floor(x)), y0 = static_cast<int>(std::floor(y));
  int x1 = std::min(x0 + 1, width - 1), y1 = std::min(y0 + 1, height - 1);
  double fx = x - x0, fy = y - y0;
  auto gray = [&](int yy, int xx) {
    const float* p = rgb.data() + (static_cast<size_t>(yy) * width + xx) * 3;
    return 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
  };
  double v = (gray(y0, x0) * (1 - fx) + gray(y0, x1) * fx) * (1 - fy) +
             (gray(y1, x0) * (1 - fx) + gray(y1, x1) * fx) * fy;
  return static_cast<float>(v);
}

PixelBox adjust_bbox(const PixelBox& box, const BoxAdjustParams& p, const PanoramaDims& pano) {
  PixelBox out;
  double cx = box.cx(), cy = box.cy();
  out.w = box.w * p.scale_w;
  out.h = box.h * p.scale_h;
  cy += p.shift_down_fraction * box.h;
  out.x = cx - 0.5 * out.w;
  out.y = cy - 0.5 * out.h;
  // clip vertically; azimuth wraps so x needs no clipping
  if (out.y < 0.0) {
    out.h += out.y;
    out.y = 0.0;
  }
  if (out.y + out.h > pano.height_px) out.h = pano.height_px - out.y;
  if (out.h < 1.0) out.h = 1.0;
  if (out.w > pano.width_px) out.w = pano.width_px;
  return out;
}

FacePatch extract_patch(const FrameRegion& region, const PixelBox& box, const PatchSize& size) {
  if (box.w <= 0.0 || box.h <= 0.0) throw std::invalid_argument("degenerate patch box");
  if (region.width <= 0 || region.height <= 0) throw std::invalid_argument("empty frame region");
  FacePatch patch;
  patch.height = size.height;
  patch.width = size.width;
  patch.pixels.resize(static_cast<size_t>(size.height) * size.width);
  const double sx = box.w / size.width;
  const double sy = box.h / size.height;
  for (int i = 0; i < size.height; ++i) {
    double py = box.y + (i + 0.5) * sy - 0.5;
    for (int j = 0; j < size.width; ++j) {
      double px = box.x + (j + 0.5) * sx - 0.5;
      patch.pixels[static_cast<size_t>(i) * size.width + j] = region.sample_gray(px, py);
    }
  }
  return patch;
}

Tensor stack_patches(const std::vector<FacePatch>& history, int l) {
  if (history.empty()) throw std::invalid_argument("empty patch history");
  if (l <= 0) throw std::invalid_argument("l must be positive");
  const FacePatch& last = history.back();
  Tensor out({l, last.height, last.width});
  const std::int64_t plane = static_cast<std::int64_t>(last.height) * last.width;
  for (int c = 0; c < l; ++c) {
    // channel c holds the patch l-1-c steps back, clamped to the oldest
    std::int64_t idx = static_cast<std::int64_t>(history.size()) - l + c;
    if (idx < 0) idx = 0;
    const FacePatch& p = history[static_cast<size_t>(idx)];
    if (p.height != last.height || p.width != last.width)
      throw std::invalid_argument("patch size mismatch in history");
    std::copy(p.pixels.begin(), p.pixels.end(), out.data.begin() + c * plane);
  }
  return out;
}

Tensor augment_patch_stack(const Tensor& stack, const PatchAugmentParams& p, std::mt19937_64& rng) {
  if (stack.shape.size() != 3) throw std::invalid_argument("patch stack must be [l,H,W]");
  std::uniform_real_distribution<double> rot(-p.max_rotation_deg, p.max_rotation_deg);
  std::uniform_real_distribution<double> tr(-p.max_translation_px, p.max_translation_px);
  const double angle = rot(rng) * kPi / 180.0;
  const double tx = tr(rng), ty = tr(rng);
  const int l = stack.shape[0], h = stack.shape[1], w = stack.shape[2];
  const double cx = 0.5 * (w - 1), cy = 0.5 * (h - 1);
  const double ca = std::cos(angle), sa = std::sin(angle);
  Tensor out({l, h, w});
  std::vector<double> plane(static_cast<size_t>(h) * w);
  for (int c = 0; c < l; ++c) {
    const double* src = stack.ptr() + static_cast<std::int64_t>(c) * h * w;
    plane.assign(src, src + static_cast<std::int64_t>(h) * w);
    double* dst = out.ptr() + static_cast<std::int64_t>(c) * h * w;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        // inverse map: undo translation, then rotate back about the center
        double ux = x - tx - cx, uy = y - ty - cy;
        double sxp = ca * ux + sa * uy + cx;
        double syp = -sa * ux + ca * uy + cy;
        dst[static_cast<std::int64_t>(y) * w + x] = bilinear(plane, h, w, sxp, syp);
      }
  }
  return out;
}

}  // namespace asd
