// Copyright 2026 The Propforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "propforge/render/depth_render.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>

#include "propforge/common/error.h"
#include "propforge/common/png.h"

namespace propforge {
namespace {

// Depth spreads below this fraction of the farthest depth are interpolation
// rounding, not geometry; such scenes render as flat.
constexpr double kFlatRange = 1e-12;

constexpr double kNearPlane = 1e-3;

double Radians(double deg) { return deg * std::numbers::pi / 180.0; }

struct CameraFrame {
  Vec3 eye;
  Vec3 right;
  Vec3 up;
  Vec3 forward;
};

CameraFrame FrameOf(const CameraPose& camera) {
  return {camera.Position(), camera.Right(), camera.Up(), camera.Forward()};
}

// Vertex after the camera transform: screen position in pixels plus the
// camera-space depth.
struct ScreenVertex {
  double x;
  double y;
  double z;
};

class Projector {
 public:
  Projector(const CameraPose& camera, int width, int height)
      : camera_(camera), width_(width), height_(height) {
    aspect_ = static_cast<double>(width) / height;
    tan_half_ = std::tan(Radians(camera.projection.fov_deg) / 2.0);
  }

  bool perspective() const { return camera_.projection.kind == ProjectionKind::kPerspective; }

  ScreenVertex Project(const Vec3& cam) const {
    double nx;
    double ny;
    if (perspective()) {
      nx = cam.x() / (cam.z() * tan_half_ * aspect_);
      ny = cam.y() / (cam.z() * tan_half_);
    } else {
      nx = cam.x() / (camera_.projection.half_extent * aspect_);
      ny = cam.y() / camera_.projection.half_extent;
    }
    return {(nx + 1.0) * 0.5 * width_, (1.0 - ny) * 0.5 * height_, cam.z()};
  }

  // Inverse of Project for a pixel position and camera depth.
  Vec3 Unproject(double sx, double sy, double z) const {
    const double nx = sx / width_ * 2.0 - 1.0;
    const double ny = 1.0 - sy / height_ * 2.0;
    if (perspective()) {
      return {nx * z * tan_half_ * aspect_, ny * z * tan_half_, z};
    }
    return {nx * camera_.projection.half_extent * aspect_,
            ny * camera_.projection.half_extent, z};
  }

 private:
  CameraPose camera_;
  int width_;
  int height_;
  double aspect_;
  double tan_half_;
};

// Sutherland-Hodgman against z >= near.
std::vector<Vec3> ClipNear(const std::array<Vec3, 3>& tri) {
  std::vector<Vec3> out;
  for (int i = 0; i < 3; ++i) {
    const Vec3& a = tri[i];
    const Vec3& b = tri[(i + 1) % 3];
    const bool a_in = a.z() >= kNearPlane;
    const bool b_in = b.z() >= kNearPlane;
    if (a_in) out.push_back(a);
    if (a_in != b_in) {
      const double t = (kNearPlane - a.z()) / (b.z() - a.z());
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

void RasterizeTriangle(const ScreenVertex& a, const ScreenVertex& b, const ScreenVertex& c,
                       bool perspective, int width, int height,
                       std::vector<double>& zbuffer) {
  const double area = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (area == 0.0 || !std::isfinite(area)) return;

  const double min_x = std::min({a.x, b.x, c.x});
  const double max_x = std::max({a.x, b.x, c.x});
  const double min_y = std::min({a.y, b.y, c.y});
  const double max_y = std::max({a.y, b.y, c.y});
  const int x0 = std::max(0, static_cast<int>(std::floor(min_x - 0.5)));
  const int x1 = std::min(width - 1, static_cast<int>(std::ceil(max_x - 0.5)));
  const int y0 = std::max(0, static_cast<int>(std::floor(min_y - 0.5)));
  const int y1 = std::min(height - 1, static_cast<int>(std::ceil(max_y - 0.5)));
  if (x0 > x1 || y0 > y1) return;

  // Perspective-correct depth: 1/z is affine in screen space.
  const double za = perspective ? 1.0 / a.z : a.z;
  const double zb = perspective ? 1.0 / b.z : b.z;
  const double zc = perspective ? 1.0 / c.z : c.z;
  const double inv_area = 1.0 / area;

  for (int y = y0; y <= y1; ++y) {
    const double py = y + 0.5;
    for (int x = x0; x <= x1; ++x) {
      const double px = x + 0.5;
      const double w0 = ((b.x - px) * (c.y - py) - (b.y - py) * (c.x - px)) * inv_area;
      const double w1 = ((c.x - px) * (a.y - py) - (c.y - py) * (a.x - px)) * inv_area;
      const double w2 = ((a.x - px) * (b.y - py) - (a.y - py) * (b.x - px)) * inv_area;
      if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;
      const double interp = w0 * za + w1 * zb + w2 * zc;
      const double z = perspective ? 1.0 / interp : interp;
      double& slot = zbuffer[static_cast<std::size_t>(y) * width + x];
      if (z < slot) slot = z;
    }
  }
}

void PutU32(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t GetU32(std::span<const std::uint8_t> data, std::size_t pos) {
  return std::uint32_t{data[pos]} | (std::uint32_t{data[pos + 1]} << 8) |
         (std::uint32_t{data[pos + 2]} << 16) | (std::uint32_t{data[pos + 3]} << 24);
}

}  // namespace

void CameraPose::Validate() const {
  if (!(distance > 0.0) || !std::isfinite(distance)) {
    Throw(ErrorCode::kInvalidArgument, "camera distance must be positive");
  }
  if (projection.kind == ProjectionKind::kPerspective) {
    if (!(distance > 1.0)) {
      Throw(ErrorCode::kInvalidArgument,
            "perspective camera must sit outside the unit sphere (distance > 1)");
    }
    if (!(projection.fov_deg > 10.0 && projection.fov_deg < 120.0)) {
      Throw(ErrorCode::kInvalidArgument, "field of view must lie in (10, 120) degrees");
    }
  } else if (!(projection.half_extent > 0.0)) {
    Throw(ErrorCode::kInvalidArgument, "orthographic half extent must be positive");
  }
}

Vec3 CameraPose::Position() const {
  const double el = Radians(elevation_deg);
  const double az = Radians(azimuth_deg);
  return distance * Vec3(std::cos(el) * std::sin(az), std::sin(el), std::cos(el) * std::cos(az));
}

Vec3 CameraPose::Forward() const { return (-Position()).normalized(); }

Vec3 CameraPose::Right() const {
  const Vec3 f = Forward();
  Vec3 r = f.cross(Vec3::UnitY());
  // Looking straight up or down: fall back to a fixed horizontal axis.
  if (r.norm() < 1e-12) r = Vec3::UnitX();
  return r.normalized();
}

Vec3 CameraPose::Up() const { return Right().cross(Forward()); }

CameraPose StandardViewpoint() {
  CameraPose pose;
  pose.elevation_deg = 35.0;
  pose.azimuth_deg = 30.0;
  pose.distance = 3.0;
  pose.projection = Projection{ProjectionKind::kPerspective, 40.0, 1.2};
  return pose;
}

void DepthImage::Validate() const {
  if (width < 1 || height < 1) Throw(ErrorCode::kInvalidArgument, "depth image must be nonempty");
  if (values.size() != static_cast<std::size_t>(width) * height) {
    Throw(ErrorCode::kInvalidArgument, "depth buffer size does not match dimensions");
  }
  for (float v : values) {
    if (!(v >= 0.0f && v <= 1.0f)) Throw(ErrorCode::kInvalidArgument, "depth value outside [0, 1]");
  }
}

DepthRender RenderDepth(const TriangleMesh& mesh, const CameraPose& camera, int width,
                        int height, const RenderOptions& options) {
  camera.Validate();
  ValidateMesh(mesh, /*require_area=*/false);
  if (width < 1 || height < 1) Throw(ErrorCode::kInvalidArgument, "render size must be >= 1");
  if (!(options.far_value > 0.0 && options.far_value < 1.0)) {
    Throw(ErrorCode::kInvalidArgument, "far_value must lie in (0, 1)");
  }

  const CameraFrame frame = FrameOf(camera);
  const Projector projector(camera, width, height);
  std::vector<Vec3> cam;
  cam.reserve(mesh.vertices.size());
  for (const Vec3& p : mesh.vertices) {
    const Vec3 d = p - frame.eye;
    cam.emplace_back(d.dot(frame.right), d.dot(frame.up), d.dot(frame.forward));
  }

  DepthRender render;
  const std::size_t pixel_count = static_cast<std::size_t>(width) * height;
  render.camera_depth.assign(pixel_count, std::numeric_limits<double>::infinity());
  bool anything_in_front = false;
  for (const Face& f : mesh.faces) {
    const std::vector<Vec3> poly = ClipNear({cam[f[0]], cam[f[1]], cam[f[2]]});
    if (poly.size() < 3) continue;
    anything_in_front = true;
    const ScreenVertex s0 = projector.Project(poly[0]);
    for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
      RasterizeTriangle(s0, projector.Project(poly[k]), projector.Project(poly[k + 1]),
                        projector.perspective(), width, height, render.camera_depth);
    }
  }
  render.degenerate_camera = !anything_in_front;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double z : render.camera_depth) {
    if (std::isfinite(z)) {
      lo = std::min(lo, z);
      hi = std::max(hi, z);
      ++render.covered_pixels;
    }
  }
  render.image.width = width;
  render.image.height = height;
  render.image.values.assign(pixel_count, 0.0f);
  if (render.covered_pixels == 0) return render;

  render.nearest_depth = lo;
  render.farthest_depth = hi;
  const double range = hi - lo;
  const double eps = options.far_value;
  for (std::size_t i = 0; i < pixel_count; ++i) {
    const double z = render.camera_depth[i];
    if (!std::isfinite(z)) continue;
    double t = 1.0;  // flat scene: everything is "nearest"
    if (range > kFlatRange * hi) t = options.near_is_bright ? (hi - z) / range : (z - lo) / range;
    const double v = std::clamp(eps + (1.0 - eps) * t, eps, 1.0);
    render.image.values[i] = static_cast<float>(v);
  }
  return render;
}

std::vector<Vec3> VisibleSurfacePoints(const DepthRender& render, const CameraPose& camera) {
  const CameraFrame frame = FrameOf(camera);
  const Projector projector(camera, render.image.width, render.image.height);
  std::vector<Vec3> points;
  points.reserve(render.covered_pixels);
  for (int y = 0; y < render.image.height; ++y) {
    for (int x = 0; x < render.image.width; ++x) {
      const double z = render.camera_depth[static_cast<std::size_t>(y) * render.image.width + x];
      if (!std::isfinite(z)) continue;
      const Vec3 c = projector.Unproject(x + 0.5, y + 0.5, z);
      points.push_back(frame.eye + c.x() * frame.right + c.y() * frame.up + c.z() * frame.forward);
    }
  }
  return points;
}

Bytes EncodeDepthPng(const DepthImage& image) {
  image.Validate();
  Image8 gray;
  gray.width = image.width;
  gray.height = image.height;
  gray.channels = 1;
  gray.pixels.resize(image.values.size());
  for (std::size_t i = 0; i < image.values.size(); ++i) {
    gray.pixels[i] = static_cast<std::uint8_t>(std::lround(255.0 * image.values[i]));
  }
  return EncodePng(gray);
}

DepthImage DecodeDepthPng(std::span<const std::uint8_t> png) {
  const Image8 decoded = DecodePng(png);
  DepthImage image;
  image.width = decoded.width;
  image.height = decoded.height;
  image.values.resize(static_cast<std::size_t>(decoded.width) * decoded.height);
  for (int y = 0; y < decoded.height; ++y) {
    for (int x = 0; x < decoded.width; ++x) {
      image.values[static_cast<std::size_t>(y) * decoded.width + x] =
          static_cast<float>(decoded.at(x, y, 0) / 255.0);
    }
  }
  return image;
}

Bytes EncodeRawDepth(const DepthImage& image) {
  image.Validate();
  Bytes out;
  out.reserve(8 + 4 * image.values.size());
  PutU32(out, static_cast<std::uint32_t>(image.width));
  PutU32(out, static_cast<std::uint32_t>(image.height));
  for (float v : image.values) PutU32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

DepthImage DecodeRawDepth(std::span<const std::uint8_t> data) {
  if (data.size() < 8) Throw(ErrorCode::kParseError, "raw depth dump too short");
  DepthImage image;
  image.width = static_cast<int>(GetU32(data, 0));
  image.height = static_cast<int>(GetU32(data, 4));
  const std::size_t count = static_cast<std::size_t>(image.width) * image.height;
  if (data.size() != 8 + 4 * count) Throw(ErrorCode::kParseError, "raw depth dump size mismatch");
  image.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    image.values[i] = std::bit_cast<float>(GetU32(data, 8 + 4 * i));
  }
  return image;
}

}  // namespace propforge
