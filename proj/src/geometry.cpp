#include <itags/geometry.hpp>

#include <algorithm>
#include <limits>

namespace itags {

namespace {

double cross(const Point& o, const Point& a, const Point& b)
{
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int orientation(const Point& o, const Point& a, const Point& b)
{
  const double c = cross(o, a, b);
  if (c > 0.0)
    return 1;
  if (c < 0.0)
    return -1;
  return 0;
}

bool on_segment(const Point& p, const Point& a, const Point& b)
{
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x)
    && std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool aabb_overlap(const Bounds& a, const Bounds& b)
{
  return a.x_min <= b.x_max && b.x_min <= a.x_max
    && a.y_min <= b.y_max && b.y_min <= a.y_max;
}

} // namespace

Bounds Polygon::aabb() const
{
  Bounds box{
    std::numeric_limits<double>::infinity(),
    std::numeric_limits<double>::infinity(),
    -std::numeric_limits<double>::infinity(),
    -std::numeric_limits<double>::infinity()};
  for (const auto& v : vertices)
  {
    box.x_min = std::min(box.x_min, v.x);
    box.y_min = std::min(box.y_min, v.y);
    box.x_max = std::max(box.x_max, v.x);
    box.y_max = std::max(box.y_max, v.y);
  }
  return box;
}

bool segments_intersect(
  const Point& p1, const Point& p2, const Point& q1, const Point& q2)
{
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);

  if (o1 != o2 && o3 != o4)
    return true;

  if (o1 == 0 && on_segment(q1, p1, p2))
    return true;
  if (o2 == 0 && on_segment(q2, p1, p2))
    return true;
  if (o3 == 0 && on_segment(p1, q1, q2))
    return true;
  if (o4 == 0 && on_segment(p2, q1, q2))
    return true;
  return false;
}

bool point_in_polygon(const Point& p, const Polygon& polygon)
{
  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  if (n < 3)
    return false;

  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++)
  {
    const Point& a = v[j];
    const Point& b = v[i];
    if (orientation(a, b, p) == 0 && on_segment(p, a, b))
      return true;

    if ((b.y > p.y) != (a.y > p.y))
    {
      const double x_cross = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (p.x < x_cross)
        inside = !inside;
    }
  }
  return inside;
}

bool segment_intersects_polygon(
  const Point& a, const Point& b, const Polygon& polygon)
{
  const Bounds seg_box{
    std::min(a.x, b.x), std::min(a.y, b.y),
    std::max(a.x, b.x), std::max(a.y, b.y)};
  if (!aabb_overlap(seg_box, polygon.aabb()))
    return false;

  if (point_in_polygon(a, polygon) || point_in_polygon(b, polygon))
    return true;

  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++)
  {
    if (segments_intersect(a, b, v[j], v[i]))
      return true;
  }
  return false;
}

bool is_simple(const Polygon& polygon)
{
  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  if (n < 3)
    return false;

  for (std::size_t i = 0; i < n; ++i)
  {
    const Point& a1 = v[i];
    const Point& a2 = v[(i + 1) % n];
    if (a1 == a2)
      return false;
    for (std::size_t j = i + 1; j < n; ++j)
    {
      // Adjacent edges share a vertex by construction.
      if (j == i + 1 || (i == 0 && j == n - 1))
        continue;
      const Point& b1 = v[j];
      const Point& b2 = v[(j + 1) % n];
      if (segments_intersect(a1, a2, b1, b2))
        return false;
    }
  }
  return true;
}

double signed_area(const Polygon& polygon)
{
  const auto& v = polygon.vertices;
  double area = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i)
  {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    area += a.x * b.y - b.x * a.y;
  }
  return 0.5 * area;
}

Polygon rectangle(double x_min, double y_min, double x_max, double y_max)
{
  return Polygon{{
    {x_min, y_min}, {x_max, y_min}, {x_max, y_max}, {x_min, y_max}}};
}

} // namespace itags
