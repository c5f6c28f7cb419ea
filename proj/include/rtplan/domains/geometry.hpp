#ifndef RTPLAN_DOMAINS_GEOMETRY_HPP
#define RTPLAN_DOMAINS_GEOMETRY_HPP

#include <span>

namespace rtplan {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(Point2 a, Point2 b) noexcept;
double point_segment_distance(Point2 p, Point2 a, Point2 b) noexcept;
// Closed segments; touching counts as intersecting.
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) noexcept;
// Convex polygon, either winding; boundary counts as inside.
bool point_in_convex_polygon(Point2 p, std::span<const Point2> polygon) noexcept;
bool segment_hits_convex_polygon(Point2 a, Point2 b, std::span<const Point2> polygon) noexcept;
bool is_convex_polygon(std::span<const Point2> polygon) noexcept;

}  // namespace rtplan

#endif  // RTPLAN_DOMAINS_GEOMETRY_HPP
