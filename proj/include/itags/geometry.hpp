#ifndef ITAGS__GEOMETRY_HPP
#define ITAGS__GEOMETRY_HPP

#include <cmath>
#include <vector>

namespace itags {

struct Point
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b)
{
  return std::hypot(b.x - a.x, b.y - a.y);
}

/// Axis-aligned rectangle.
struct Bounds
{
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double diagonal() const { return std::hypot(width(), height()); }

  bool contains(const Point& p) const
  {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Simple polygon, counter-clockwise vertex order.
struct Polygon
{
  std::vector<Point> vertices;

  Bounds aabb() const;

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

/// Closed-set membership: points on the boundary count as inside.
bool point_in_polygon(const Point& p, const Polygon& polygon);

/// True when the closed segment [a, b] touches the closed polygon.
bool segment_intersects_polygon(
  const Point& a, const Point& b, const Polygon& polygon);

bool segments_intersect(
  const Point& p1, const Point& p2, const Point& q1, const Point& q2);

bool is_simple(const Polygon& polygon);

double signed_area(const Polygon& polygon);

Polygon rectangle(double x_min, double y_min, double x_max, double y_max);

} // namespace itags

#endif // ITAGS__GEOMETRY_HPP
