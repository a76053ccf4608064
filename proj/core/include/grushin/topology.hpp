#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "grushin/types.hpp"

namespace grushin {

// Exact rational on 64-bit numerator/denominator with 128-bit intermediates.
// Coordinates at desk scale stay far from the guards; OverflowError-style
// failures surface as InvalidArgumentError.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d);

  // "3", "-1.25", "2/3" all accepted.
  static Rational parse(std::string_view s);
  // Exact value of the double (binary fraction); throws if out of range.
  static Rational from_double(double v);

  long long num() const { return num_; }
  long long den() const { return den_; }
  double to_double() const { return double(num_) / double(den_); }
  std::string str() const;

  Rational operator-() const { return Rational(-num_, den_); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a < b || a == b;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return b <= a;
  }

 private:
  long long num_;
  long long den_;  // > 0, gcd(|num|, den) = 1
};

// Open axis-aligned rectangle with exact corners.
struct RatRect {
  Rational xmin, xmax, ymin, ymax;
};

struct RatInterval {
  Rational lo, hi;
};

// Finite union of open rectangles. Connectivity of the union is the
// connectivity induced by positive-area overlaps: rectangles that share only
// an edge do not join (the union of open sets omits the shared edge).
class RectilinearDomain {
 public:
  explicit RectilinearDomain(std::vector<RatRect> rects);
  const std::vector<RatRect>& rects() const { return rects_; }
  bool contains(double x, double y) const;
  // xmin, xmax, ymin, ymax of the union.
  std::array<double, 4> bbox() const;
  RectilinearDomain scaled(const Rational& sx, const Rational& sy) const;

 private:
  std::vector<RatRect> rects_;
};

// Maximal open intervals of {x = 0} intersected with the domain, sorted.
std::vector<RatInterval> axis_components(const RectilinearDomain& dom);

// Connected components of the domain minus the axis. Each rectangle is cut
// at x = 0 into pieces; pieces of equal side connect when they overlap with
// positive area. `incident_axis` lists indices into axis_components(dom)
// against which the component has positive-length contact along {x = 0}.
struct SideComponent {
  int side = 0;  // -1 left, +1 right
  std::vector<int> rect_indices;     // originating rectangles (sorted, unique)
  std::vector<int> incident_axis;    // sorted, unique
};
std::vector<SideComponent> side_components(const RectilinearDomain& dom);

// Bipartite contact structure between axis components and side components.
struct IncidenceGraph {
  int axis_count = 0;
  std::vector<SideComponent> sides;
  std::vector<RatInterval> axis;
  std::vector<std::pair<int, int>> edges;  // (axis index, side index)
  std::vector<int> axis_degree;
  std::vector<int> side_degree;
};
IncidenceGraph incidence_graph(const RectilinearDomain& dom);

// Decision: can the incidence structures of the two domains be matched by a
// bijection of axis components and side components (respecting sides, or
// globally swapping them when allow_side_swap)? A mismatch is a topological
// obstruction to a conformal correspondence between the domains.
struct ObstructionResult {
  bool obstructed = false;
  std::string certificate;        // first invariant that failed, if obstructed
  std::vector<int> axis_map;      // witness: axis i of A -> axis_map[i] of B
  std::vector<int> side_map;      // witness: side j of A -> side_map[j] of B
  bool side_swapped = false;      // witness used the global left/right swap
};
ObstructionResult obstruction_check(const RectilinearDomain& a,
                                    const RectilinearDomain& b,
                                    bool allow_side_swap = true);

}  // namespace grushin
