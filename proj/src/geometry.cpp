#include "rtplan/domains/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace rtplan {
namespace {

double cross(Point2 o, Point2 a, Point2 b) noexcept {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(Point2 p, Point2 a, Point2 b) noexcept {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

int sign(double v) noexcept { return (v > 0.0) - (v < 0.0); }

}  // namespace

double distance(Point2 a, Point2 b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

double point_segment_distance(Point2 p, Point2 a, Point2 b) noexcept {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return distance(p, Point2{a.x + t * dx, a.y + t * dy});
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) noexcept {
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

bool point_in_convex_polygon(Point2 p, std::span<const Point2> polygon) noexcept {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  int orientation = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int s = sign(cross(polygon[i], polygon[(i + 1) % n], p));
    if (s == 0) continue;
    if (orientation == 0) {
      orientation = s;
    } else if (s != orientation) {
      return false;
    }
  }
  return true;
}

bool segment_hits_convex_polygon(Point2 a, Point2 b, std::span<const Point2> polygon) noexcept {
  if (point_in_convex_polygon(a, polygon) || point_in_convex_polygon(b, polygon)) return true;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (segments_intersect(a, b, polygon[i], polygon[(i + 1) % n])) return true;
  }
  return false;
}

bool is_convex_polygon(std::span<const Point2> polygon) noexcept {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  int orientation = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int s = sign(cross(polygon[i], polygon[(i + 1) % n], polygon[(i + 2) % n]));
    if (s == 0) continue;
    if (orientation == 0) {
      orientation = s;
    } else if (s != orientation) {
      return false;
    }
  }
  return orientation != 0;
}

}  // namespace rtplan
