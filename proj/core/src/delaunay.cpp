#include "plcp/delaunay.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "plcp/errors.hpp"
#include "plcp/predicates.hpp"

namespace plcp {
namespace {

using predicates::incircle;
using predicates::orient2d;

constexpr std::uint32_t kNone = DelaunayTriangulation::kGhost;

int ghost_slot(const DelaunayTriangulation::Triangle& t) {
  for (int i = 0; i < 3; ++i) {
    if (t.v[i] == kNone) return i;
  }
  return -1;
}

// p strictly inside the segment ab, given that the three are collinear.
bool strictly_between(Point2 a, Point2 b, Point2 p) {
  if (a.x != b.x) return (a.x < p.x && p.x < b.x) || (b.x < p.x && p.x < a.x);
  return (a.y < p.y && p.y < b.y) || (b.y < p.y && p.y < a.y);
}

std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y, std::uint32_t side) {
  std::uint64_t d = 0;
  for (std::uint32_t s = side / 2; s > 0; s /= 2) {
    const std::uint32_t rx = (x & s) > 0 ? 1 : 0;
    const std::uint32_t ry = (y & s) > 0 ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = side - 1 - x;
        y = side - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

}  // namespace

std::vector<std::uint32_t> hilbert_order(std::span<const Point2> points) {
  std::vector<std::uint32_t> order(points.size());
  std::iota(order.begin(), order.end(), 0u);
  if (points.size() < 3) return order;

  double xmin = points[0].x, xmax = xmin, ymin = points[0].y, ymax = ymin;
  for (const Point2& p : points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  constexpr std::uint32_t kSide = 1u << 16;
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-300});
  const double scale = (kSide - 1) / span;
  std::vector<std::uint64_t> key(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto gx = static_cast<std::uint32_t>((points[i].x - xmin) * scale);
    const auto gy = static_cast<std::uint32_t>((points[i].y - ymin) * scale);
    key[i] = hilbert_index(gx, gy, kSide);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return key[a] < key[b]; });
  return order;
}

DelaunayTriangulation::DelaunayTriangulation(std::span<const Point2> points)
    : points_(points.begin(), points.end()), incident_(points.size(), kNone) {
  const std::size_t n = points_.size();
  if (n > std::size_t{kNone} - 1) throw DegenerateInput("too many points for the triangulation");
  for (const Point2& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DegenerateInput("non-finite point coordinates");
    }
  }

  {
    std::vector<std::uint32_t> lex(n);
    std::iota(lex.begin(), lex.end(), 0u);
    std::sort(lex.begin(), lex.end(), [&](std::uint32_t a, std::uint32_t b) {
      return points_[a].x < points_[b].x ||
             (points_[a].x == points_[b].x && points_[a].y < points_[b].y);
    });
    for (std::size_t i = 1; i < n; ++i) {
      if (points_[lex[i]] == points_[lex[i - 1]]) {
        throw DegenerateInput("coincident points " + std::to_string(lex[i - 1]) + " and " +
                              std::to_string(lex[i]));
      }
    }
  }

  const std::vector<std::uint32_t> order = hilbert_order(points_);
  if (n < 3) {
    collinear_ = true;
    return;
  }
  std::uint32_t a = order[0];
  std::uint32_t b = order[1];
  std::size_t third = 2;
  while (third < n && orient2d(points_[a], points_[b], points_[order[third]]) == 0) ++third;
  if (third == n) {
    collinear_ = true;
    return;
  }
  std::uint32_t c = order[third];
  if (orient2d(points_[a], points_[b], points_[c]) < 0) std::swap(b, c);

  // One finite triangle closed by three ghosts.
  triangles_.push_back({{a, b, c}, {1, 2, 3}});
  triangles_.push_back({{c, b, kNone}, {3, 2, 0}});
  triangles_.push_back({{a, c, kNone}, {1, 3, 0}});
  triangles_.push_back({{b, a, kNone}, {2, 1, 0}});
  incident_[a] = incident_[b] = incident_[c] = 0;
  last_ = 0;

  for (std::size_t k = 2; k < n; ++k) {
    if (k == third) continue;
    insert(order[k]);
  }
}

bool DelaunayTriangulation::in_conflict(const Triangle& t, Point2 p) const {
  const int g = ghost_slot(t);
  if (g < 0) {
    return incircle(points_[t.v[0]], points_[t.v[1]], points_[t.v[2]], p) > 0;
  }
  const Point2 u = points_[t.v[(g + 1) % 3]];
  const Point2 w = points_[t.v[(g + 2) % 3]];
  const int o = orient2d(u, w, p);
  if (o != 0) return o > 0;
  return strictly_between(u, w, p);
}

std::uint32_t DelaunayTriangulation::locate(Point2 p) {
  std::uint32_t t = last_;
  if (const int g = ghost_slot(triangles_[t]); g >= 0) t = triangles_[t].n[g];

  const std::size_t limit = 4 * triangles_.size() + 16;
  for (std::size_t step = 0; step < limit; ++step) {
    const Triangle& tri = triangles_[t];
    if (tri.is_ghost()) return t;
    const auto start = static_cast<int>(walk_counter_++ % 3);
    bool moved = false;
    for (int k = 0; k < 3; ++k) {
      const int i = (start + k) % 3;
      if (orient2d(points_[tri.v[(i + 1) % 3]], points_[tri.v[(i + 2) % 3]], p) < 0) {
        t = tri.n[i];
        moved = true;
        break;
      }
    }
    if (!moved) return t;
  }
  // The walk terminates on Delaunay triangulations; this scan is a safety net.
  for (std::uint32_t i = 0; i < triangles_.size(); ++i) {
    if (in_conflict(triangles_[i], p)) return i;
  }
  throw DegenerateInput("point location failed");
}

void DelaunayTriangulation::insert(std::uint32_t point) {
  const Point2 p = points_[point];
  const std::uint32_t seed = locate(p);

  in_cavity_.resize(triangles_.size(), 0);
  cavity_.clear();
  cavity_.push_back(seed);
  in_cavity_[seed] = 1;
  for (std::size_t head = 0; head < cavity_.size(); ++head) {
    const Triangle& t = triangles_[cavity_[head]];
    for (std::uint32_t nb : t.n) {
      if (!in_cavity_[nb] && in_conflict(triangles_[nb], p)) {
        in_cavity_[nb] = 1;
        cavity_.push_back(nb);
      }
    }
  }

  struct BoundaryEdge {
    std::uint32_t from;
    std::uint32_t to;
    std::uint32_t outer;
  };
  std::vector<BoundaryEdge> boundary;
  boundary.reserve(cavity_.size() + 2);
  for (std::uint32_t ti : cavity_) {
    const Triangle& t = triangles_[ti];
    for (int i = 0; i < 3; ++i) {
      if (!in_cavity_[t.n[i]]) boundary.push_back({t.v[(i + 1) % 3], t.v[(i + 2) % 3], t.n[i]});
    }
  }

  std::vector<std::uint32_t> slots(cavity_.begin(), cavity_.end());
  for (std::uint32_t ti : cavity_) in_cavity_[ti] = 0;
  while (slots.size() < boundary.size()) {
    slots.push_back(static_cast<std::uint32_t>(triangles_.size()));
    triangles_.push_back({});
    in_cavity_.push_back(0);
  }

  auto slot_starting_at = [&](std::uint32_t vertex) {
    for (std::size_t k = 0; k < boundary.size(); ++k) {
      if (boundary[k].from == vertex) return slots[k];
    }
    throw DegenerateInput("cavity boundary is not a cycle");
  };
  auto slot_ending_at = [&](std::uint32_t vertex) {
    for (std::size_t k = 0; k < boundary.size(); ++k) {
      if (boundary[k].to == vertex) return slots[k];
    }
    throw DegenerateInput("cavity boundary is not a cycle");
  };

  for (std::size_t k = 0; k < boundary.size(); ++k) {
    const BoundaryEdge& e = boundary[k];
    Triangle& outer = triangles_[e.outer];
    for (int j = 0; j < 3; ++j) {
      if (outer.v[j] != e.from && outer.v[j] != e.to) {
        outer.n[j] = slots[k];
        break;
      }
    }
  }
  for (std::size_t k = 0; k < boundary.size(); ++k) {
    const BoundaryEdge& e = boundary[k];
    Triangle& t = triangles_[slots[k]];
    t.v = {e.from, e.to, point};
    t.n = {slot_starting_at(e.to), slot_ending_at(e.from), e.outer};
    if (e.from != kNone) incident_[e.from] = slots[k];
    if (e.from != kNone && e.to != kNone) {
      incident_[point] = slots[k];
      last_ = slots[k];
    }
  }
}

std::size_t DelaunayTriangulation::finite_triangle_count() const {
  return static_cast<std::size_t>(std::count_if(
      triangles_.begin(), triangles_.end(), [](const Triangle& t) { return !t.is_ghost(); }));
}

std::size_t DelaunayTriangulation::cocircular_certificates() const {
  std::size_t count = 0;
  for (std::uint32_t ti = 0; ti < triangles_.size(); ++ti) {
    const Triangle& t = triangles_[ti];
    if (t.is_ghost()) continue;
    for (int i = 0; i < 3; ++i) {
      const std::uint32_t ni = t.n[i];
      if (ni < ti) continue;
      const Triangle& other = triangles_[ni];
      if (other.is_ghost()) continue;
      for (int j = 0; j < 3; ++j) {
        const std::uint32_t w = other.v[j];
        if (w != t.v[0] && w != t.v[1] && w != t.v[2]) {
          if (incircle(points_[t.v[0]], points_[t.v[1]], points_[t.v[2]], points_[w]) == 0) {
            ++count;
          }
          break;
        }
      }
    }
  }
  return count;
}

}  // namespace plcp
