#include "grushin/topology.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace grushin {

namespace {

using i128 = __int128;

long long checked_ll(i128 v, const char* what) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
    throw InvalidArgumentError(std::string("rational overflow in ") + what +
                               "; use smaller coordinates");
  return static_cast<long long>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw InvalidArgumentError("rational with zero denominator");
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  const i128 g = gcd128(nn, dd);
  if (g > 1) {
    nn /= g;
    dd /= g;
  }
  num_ = checked_ll(nn, "construction");
  den_ = checked_ll(dd, "construction");
}

Rational Rational::parse(std::string_view s) {
  const auto fail = [&](const char* why) {
    throw InvalidArgumentError("cannot parse rational '" + std::string(s) +
                               "': " + why);
  };
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  i128 num = 0, den = 1;
  bool digits = false, frac = false, slash = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = true;
      if (slash)
        den = den * 10 + (c - '0');
      else {
        num = num * 10 + (c - '0');
        if (frac) den *= 10;
      }
      if (num > i128(INT64_MAX) || den > i128(INT64_MAX))
        fail("value too large");
    } else if (c == '.' && !frac && !slash) {
      frac = true;
    } else if (c == '/' && !slash && !frac && digits) {
      slash = true;
      den = 0;
      digits = false;
    } else {
      fail("unexpected character");
    }
  }
  if (!digits) fail("no digits");
  if (slash && den == 0) fail("zero denominator");
  return Rational(neg ? -checked_ll(num, "parse") : checked_ll(num, "parse"),
                  checked_ll(den, "parse"));
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v))
    throw InvalidArgumentError("non-finite coordinate value");
  if (v == 0.0) return Rational(0);
  int e = 0;
  const double m = std::frexp(v, &e);  // v = m * 2^e, |m| in [0.5, 1)
  long long mant = static_cast<long long>(std::ldexp(m, 53));
  int shift = e - 53;
  while (mant != 0 && (mant & 1) == 0 && shift < 0) {
    mant >>= 1;
    ++shift;
  }
  if (shift >= 0) {
    if (shift > 10)
      throw InvalidArgumentError("coordinate magnitude too large for exact "
                                 "rational conversion");
    return Rational(mant << shift, 1);
  }
  if (-shift > 62)
    throw InvalidArgumentError(
        "double has no compact exact rational form; pass the coordinate as a "
        "decimal string instead");
  return Rational(mant, 1LL << -shift);
}

std::string Rational::str() const {
  std::ostringstream os;
  os << num_;
  if (den_ != 1) os << "/" << den_;
  return os.str();
}

Rational operator+(const Rational& a, const Rational& b) {
  const i128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
  const i128 d = i128(a.den_) * b.den_;
  const i128 g = gcd128(n, d);
  return Rational(checked_ll(g ? n / g : n, "addition"),
                  checked_ll(g ? d / g : d, "addition"));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const i128 n = i128(a.num_) * b.num_;
  const i128 d = i128(a.den_) * b.den_;
  const i128 g = gcd128(n, d);
  return Rational(checked_ll(g ? n / g : n, "multiplication"),
                  checked_ll(g ? d / g : d, "multiplication"));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw InvalidArgumentError("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
}

RectilinearDomain::RectilinearDomain(std::vector<RatRect> rects)
    : rects_(std::move(rects)) {
  if (rects_.empty())
    throw InvalidArgumentError("domain needs at least one rectangle");
  for (size_t i = 0; i < rects_.size(); ++i) {
    const RatRect& r = rects_[i];
    if (!(r.xmin < r.xmax))
      throw InvalidArgumentError("rects[" + std::to_string(i) +
                                 "]: xmin >= xmax");
    if (!(r.ymin < r.ymax))
      throw InvalidArgumentError("rects[" + std::to_string(i) +
                                 "]: ymin >= ymax");
  }
}

bool RectilinearDomain::contains(double x, double y) const {
  for (const RatRect& r : rects_) {
    if (x > r.xmin.to_double() && x < r.xmax.to_double() &&
        y > r.ymin.to_double() && y < r.ymax.to_double())
      return true;
  }
  return false;
}

std::array<double, 4> RectilinearDomain::bbox() const {
  double xmin = rects_[0].xmin.to_double(), xmax = rects_[0].xmax.to_double();
  double ymin = rects_[0].ymin.to_double(), ymax = rects_[0].ymax.to_double();
  for (const RatRect& r : rects_) {
    xmin = std::min(xmin, r.xmin.to_double());
    xmax = std::max(xmax, r.xmax.to_double());
    ymin = std::min(ymin, r.ymin.to_double());
    ymax = std::max(ymax, r.ymax.to_double());
  }
  return {xmin, xmax, ymin, ymax};
}

RectilinearDomain RectilinearDomain::scaled(const Rational& sx,
                                            const Rational& sy) const {
  if (!(Rational(0) < sx) || !(Rational(0) < sy))
    throw InvalidArgumentError("scaled: factors must be positive");
  std::vector<RatRect> out;
  out.reserve(rects_.size());
  for (const RatRect& r : rects_)
    out.push_back({r.xmin * sx, r.xmax * sx, r.ymin * sy, r.ymax * sy});
  return RectilinearDomain(std::move(out));
}

std::vector<RatInterval> axis_components(const RectilinearDomain& dom) {
  const Rational zero(0);
  std::vector<RatInterval> spans;
  for (const RatRect& r : dom.rects())
    if (r.xmin < zero && zero < r.xmax) spans.push_back({r.ymin, r.ymax});
  std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<RatInterval> merged;
  for (const RatInterval& s : spans) {
    // Strict overlap only: open intervals touching at an endpoint stay
    // separate components of the open union.
    if (!merged.empty() && s.lo < merged.back().hi) {
      if (merged.back().hi < s.hi) merged.back().hi = s.hi;
    } else {
      merged.push_back(s);
    }
  }
  return merged;
}

namespace {

struct Piece {
  int side;  // -1 or +1
  Rational xlo, xhi, ylo, yhi;
  int rect_index;
  bool touches_axis;  // has boundary segment on {x = 0}
};

std::vector<Piece> cut_pieces(const RectilinearDomain& dom) {
  const Rational zero(0);
  std::vector<Piece> pieces;
  for (size_t i = 0; i < dom.rects().size(); ++i) {
    const RatRect& r = dom.rects()[i];
    if (r.xmin < zero) {
      const Rational hi = r.xmax < zero ? r.xmax : zero;
      pieces.push_back({-1, r.xmin, hi, r.ymin, r.ymax, int(i), hi == zero});
    }
    if (zero < r.xmax) {
      const Rational lo = zero < r.xmin ? r.xmin : zero;
      pieces.push_back({+1, lo, r.xmax, r.ymin, r.ymax, int(i), lo == zero});
    }
  }
  return pieces;
}

bool overlaps(const Rational& a_lo, const Rational& a_hi, const Rational& b_lo,
              const Rational& b_hi) {
  const Rational lo = a_lo < b_lo ? b_lo : a_lo;
  const Rational hi = a_hi < b_hi ? a_hi : b_hi;
  return lo < hi;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<SideComponent> side_components(const RectilinearDomain& dom) {
  const std::vector<Piece> pieces = cut_pieces(dom);
  const std::vector<RatInterval> axis = axis_components(dom);
  UnionFind uf(pieces.size());
  for (size_t i = 0; i < pieces.size(); ++i)
    for (size_t j = i + 1; j < pieces.size(); ++j) {
      if (pieces[i].side != pieces[j].side) continue;
      if (overlaps(pieces[i].xlo, pieces[i].xhi, pieces[j].xlo,
                   pieces[j].xhi) &&
          overlaps(pieces[i].ylo, pieces[i].yhi, pieces[j].ylo, pieces[j].yhi))
        uf.unite(int(i), int(j));
    }
  std::map<int, SideComponent> comps;  // keyed by root, iteration order stable
  std::map<int, std::vector<size_t>> members;
  for (size_t i = 0; i < pieces.size(); ++i)
    members[uf.find(int(i))].push_back(i);
  std::vector<SideComponent> out;
  for (const auto& [root, idx] : members) {
    SideComponent c;
    c.side = pieces[idx.front()].side;
    for (size_t i : idx) {
      c.rect_indices.push_back(pieces[i].rect_index);
      if (!pieces[i].touches_axis) continue;
      for (size_t k = 0; k < axis.size(); ++k)
        if (overlaps(pieces[i].ylo, pieces[i].yhi, axis[k].lo, axis[k].hi))
          c.incident_axis.push_back(int(k));
    }
    std::sort(c.rect_indices.begin(), c.rect_indices.end());
    c.rect_indices.erase(
        std::unique(c.rect_indices.begin(), c.rect_indices.end()),
        c.rect_indices.end());
    std::sort(c.incident_axis.begin(), c.incident_axis.end());
    c.incident_axis.erase(
        std::unique(c.incident_axis.begin(), c.incident_axis.end()),
        c.incident_axis.end());
    out.push_back(std::move(c));
  }
  // Deterministic order: left components first, then by first rectangle.
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.side != b.side) return a.side < b.side;
    return a.rect_indices < b.rect_indices;
  });
  return out;
}

IncidenceGraph incidence_graph(const RectilinearDomain& dom) {
  IncidenceGraph g;
  g.axis = axis_components(dom);
  g.sides = side_components(dom);
  g.axis_count = int(g.axis.size());
  g.axis_degree.assign(g.axis.size(), 0);
  g.side_degree.assign(g.sides.size(), 0);
  for (size_t j = 0; j < g.sides.size(); ++j)
    for (int k : g.sides[j].incident_axis) {
      g.edges.emplace_back(k, int(j));
      ++g.axis_degree[k];
      ++g.side_degree[j];
    }
  return g;
}

namespace {

std::string multiset_str(std::vector<int> v) {
  std::sort(v.begin(), v.end(), std::greater<int>());
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "}";
  return os.str();
}

// Signature of a side component under an axis bijection: effective side
// plus the (sorted) set of matched axis components.
using Signature = std::pair<int, std::vector<int>>;

std::vector<Signature> side_signatures(const IncidenceGraph& g,
                                       const std::vector<int>* axis_perm,
                                       bool swap_sides) {
  std::vector<Signature> sig;
  sig.reserve(g.sides.size());
  for (const SideComponent& c : g.sides) {
    std::vector<int> mapped;
    mapped.reserve(c.incident_axis.size());
    for (int k : c.incident_axis)
      mapped.push_back(axis_perm ? (*axis_perm)[k] : k);
    std::sort(mapped.begin(), mapped.end());
    sig.emplace_back(swap_sides ? -c.side : c.side, std::move(mapped));
  }
  return sig;
}

struct MatchSearch {
  const IncidenceGraph& ga;
  const IncidenceGraph& gb;
  bool swap_sides;
  long long nodes = 0;
  std::vector<int> perm;      // axis of A -> axis of B
  std::vector<bool> used;

  bool run(std::vector<int>& out_axis, std::vector<int>& out_side) {
    perm.assign(ga.axis.size(), -1);
    used.assign(ga.axis.size(), false);
    if (!assign(0)) return false;
    out_axis = perm;
    // Pair up side components with equal signatures (stable by index).
    const auto sa = side_signatures(ga, &perm, swap_sides);
    const auto sb = side_signatures(gb, nullptr, false);
    std::vector<int> order_a(sa.size()), order_b(sb.size());
    std::iota(order_a.begin(), order_a.end(), 0);
    std::iota(order_b.begin(), order_b.end(), 0);
    const auto by_sig = [](const auto& sig) {
      return [&sig](int i, int j) {
        return sig[i] < sig[j] || (sig[i] == sig[j] && i < j);
      };
    };
    std::sort(order_a.begin(), order_a.end(), by_sig(sa));
    std::sort(order_b.begin(), order_b.end(), by_sig(sb));
    out_side.assign(sa.size(), -1);
    for (size_t k = 0; k < order_a.size(); ++k)
      out_side[order_a[k]] = order_b[k];
    return true;
  }

  bool assign(size_t i) {
    if (++nodes > 2'000'000)
      throw SearchBudgetExceededError(
          "obstruction_check: bijection search budget exceeded");
    if (i == perm.size()) return sides_match();
    for (size_t j = 0; j < perm.size(); ++j) {
      if (used[j] || ga.axis_degree[i] != gb.axis_degree[j]) continue;
      perm[i] = int(j);
      used[j] = true;
      if (assign(i + 1)) return true;
      used[j] = false;
      perm[i] = -1;
    }
    return false;
  }

  bool sides_match() const {
    auto sa = side_signatures(ga, &perm, swap_sides);
    auto sb = side_signatures(gb, nullptr, false);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
  }
};

}  // namespace

ObstructionResult obstruction_check(const RectilinearDomain& a,
                                    const RectilinearDomain& b,
                                    bool allow_side_swap) {
  const IncidenceGraph ga = incidence_graph(a);
  const IncidenceGraph gb = incidence_graph(b);
  if (ga.axis.size() > 12 || gb.axis.size() > 12 || ga.sides.size() > 12 ||
      gb.sides.size() > 12)
    throw SearchBudgetExceededError(
        "obstruction_check: more than 12 components per part");

  ObstructionResult res;
  if (ga.axis.size() != gb.axis.size()) {
    res.obstructed = true;
    res.certificate = "axis component count " +
                      std::to_string(ga.axis.size()) + " vs " +
                      std::to_string(gb.axis.size());
    return res;
  }
  if (multiset_str(ga.side_degree) != multiset_str(gb.side_degree)) {
    res.obstructed = true;
    res.certificate = "side incidence degree multiset " +
                      multiset_str(ga.side_degree) + " vs " +
                      multiset_str(gb.side_degree);
    return res;
  }
  if (multiset_str(ga.axis_degree) != multiset_str(gb.axis_degree)) {
    res.obstructed = true;
    res.certificate = "axis incidence degree multiset " +
                      multiset_str(ga.axis_degree) + " vs " +
                      multiset_str(gb.axis_degree);
    return res;
  }
  const auto count_side = [](const IncidenceGraph& g, int side) {
    int n = 0;
    for (const auto& c : g.sides) n += c.side == side;
    return n;
  };
  bool any_count_ok = false;
  for (int swap = 0; swap <= (allow_side_swap ? 1 : 0); ++swap) {
    const bool ok =
        count_side(ga, -1) == count_side(gb, swap ? +1 : -1) &&
        count_side(ga, +1) == count_side(gb, swap ? -1 : +1);
    any_count_ok = any_count_ok || ok;
    if (!ok) continue;
    MatchSearch search{ga, gb, bool(swap)};
    if (search.run(res.axis_map, res.side_map)) {
      res.obstructed = false;
      res.side_swapped = bool(swap);
      return res;
    }
  }
  res.obstructed = true;
  res.certificate =
      any_count_ok
          ? std::string("no axis bijection extends to the side components") +
                (allow_side_swap ? " (side swap attempted)" : "")
          : "side component counts per half-plane mismatch";
  res.axis_map.clear();
  res.side_map.clear();
  return res;
}

}  // namespace grushin
