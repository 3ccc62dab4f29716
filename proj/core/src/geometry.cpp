#include "poincare/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace poincare {

namespace {

void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

}  // namespace

AxisBox::AxisBox(std::vector<double> lo_, std::vector<double> hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
  require(!lo.empty() && lo.size() == hi.size(), ErrorCode::invalid_argument,
          "AxisBox: lo/hi must be nonempty and the same length");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    require(std::isfinite(lo[i]) && std::isfinite(hi[i]) && lo[i] < hi[i],
            ErrorCode::invalid_argument,
            "AxisBox: requires finite lo[i] < hi[i]");
  }
}

double AxisBox::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) v *= hi[i] - lo[i];
  return v;
}

double AxisBox::diagonal() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    const double w = hi[i] - lo[i];
    s += w * w;
  }
  return std::sqrt(s);
}

bool AxisBox::contains(std::span<const double> x) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  }
  return true;
}

bool AxisBox::contains_open(std::span<const double> x) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] <= lo[i] || x[i] >= hi[i]) return false;
  }
  return true;
}

AxisBox AxisBox::unit(std::size_t n) {
  return AxisBox(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0));
}

AxisBox LShape::cut() const {
  std::vector<double> lo(outer.dim()), hi(outer.dim());
  for (std::size_t i = 0; i < outer.dim(); ++i) {
    lo[i] = 0.5 * (outer.lo[i] + outer.hi[i]);
    hi[i] = outer.hi[i];
  }
  return AxisBox(std::move(lo), std::move(hi));
}

// ---------------------------------------------------------------------------
// Domain constructors

namespace {

AxisBox ball_bbox(const std::vector<double>& c, double r) {
  std::vector<double> lo(c.size()), hi(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    lo[i] = c[i] - r;
    hi[i] = c[i] + r;
  }
  return AxisBox(std::move(lo), std::move(hi));
}

AxisBox primitive_bbox(const PrimitiveShape& p) {
  return std::visit(
      [](const auto& s) -> AxisBox {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          return s.box;
        } else if constexpr (std::is_same_v<T, BallShape>) {
          return ball_bbox(s.center, s.radius);
        } else if constexpr (std::is_same_v<T, LShape>) {
          return s.outer;
        } else {
          return ball_bbox(s.center, s.r_out);
        }
      },
      p);
}

}  // namespace

Domain Domain::box(AxisBox b) {
  AxisBox bb = b;
  return Domain(BoxShape{std::move(b)}, std::move(bb));
}

Domain Domain::ball(std::vector<double> center, double radius) {
  require(radius > 0.0 && std::isfinite(radius), ErrorCode::invalid_argument,
          "ball: radius must be positive and finite");
  AxisBox bb = ball_bbox(center, radius);
  return Domain(BallShape{std::move(center), radius}, std::move(bb));
}

Domain Domain::l_shape(AxisBox outer) {
  AxisBox bb = outer;
  return Domain(LShape{std::move(outer)}, std::move(bb));
}

Domain Domain::annulus(std::vector<double> center, double r_in, double r_out) {
  require(0.0 < r_in && r_in < r_out && std::isfinite(r_out),
          ErrorCode::invalid_argument, "annulus: requires 0 < r_in < r_out");
  AxisBox bb = ball_bbox(center, r_out);
  return Domain(AnnulusShape{std::move(center), r_in, r_out}, std::move(bb));
}

Domain Domain::intervals(std::vector<std::pair<double, double>> parts) {
  require(!parts.empty(), ErrorCode::invalid_argument,
          "intervals: at least one interval required");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& [a, b] : parts) {
    require(std::isfinite(a) && std::isfinite(b) && a < b,
            ErrorCode::invalid_argument, "intervals: requires finite a < b");
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  return Domain(IntervalListShape{std::move(parts)}, AxisBox({lo}, {hi}));
}

Domain Domain::union_of(std::vector<PrimitiveShape> parts) {
  require(!parts.empty(), ErrorCode::invalid_argument,
          "union_of: at least one part required");
  AxisBox bb = primitive_bbox(parts.front());
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const AxisBox pb = primitive_bbox(parts[k]);
    require(pb.dim() == bb.dim(), ErrorCode::invalid_argument,
            "union_of: parts must share one dimension");
    for (std::size_t i = 0; i < bb.dim(); ++i) {
      bb.lo[i] = std::min(bb.lo[i], pb.lo[i]);
      bb.hi[i] = std::max(bb.hi[i], pb.hi[i]);
    }
  }
  return Domain(UnionShape{std::move(parts)}, std::move(bb));
}

Domain Domain::from_predicate(AxisBox bounding,
                              std::function<bool(std::span<const double>)> member,
                              int samples_per_axis) {
  require(samples_per_axis >= 1, ErrorCode::invalid_argument,
          "from_predicate: samples_per_axis must be >= 1");
  AxisBox bb = bounding;
  return Domain(PredicateShape{std::move(member), samples_per_axis},
                std::move(bb));
}

Domain Domain::unbounded(const std::string& kind) {
  throw Error(ErrorCode::unbounded_domain,
              "unbounded domain '" + kind +
                  "' rejected: the cube measure sum sum_k mu(U_k) diverges, so "
                  "mu(Omega)^(1/p-1/q) is infinite and no finite embedding "
                  "constant exists");
}

// ---------------------------------------------------------------------------
// Membership

namespace {

double dist2(std::span<const double> x, const std::vector<double>& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double d = x[i] - c[i];
    s += d * d;
  }
  return s;
}

bool primitive_contains(const PrimitiveShape& p, std::span<const double> x) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          return s.box.contains_open(x);
        } else if constexpr (std::is_same_v<T, BallShape>) {
          return dist2(x, s.center) < s.radius * s.radius;
        } else if constexpr (std::is_same_v<T, LShape>) {
          return s.outer.contains_open(x) && !s.cut().contains(x);
        } else {
          const double d2 = dist2(x, s.center);
          return d2 > s.r_in * s.r_in && d2 < s.r_out * s.r_out;
        }
      },
      p);
}

}  // namespace

bool Domain::contains(std::span<const double> x) const {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IntervalListShape>) {
          for (const auto& [a, b] : s.intervals)
            if (x[0] > a && x[0] < b) return true;
          return false;
        } else if constexpr (std::is_same_v<T, UnionShape>) {
          for (const auto& part : s.parts)
            if (primitive_contains(part, x)) return true;
          return false;
        } else if constexpr (std::is_same_v<T, PredicateShape>) {
          return s.member(x);
        } else {
          return primitive_contains(PrimitiveShape{s}, x);
        }
      },
      shape_);
}

bool Domain::is_convex() const {
  if (std::holds_alternative<BoxShape>(shape_) ||
      std::holds_alternative<BallShape>(shape_))
    return true;
  if (const auto* iv = std::get_if<IntervalListShape>(&shape_))
    return iv->intervals.size() == 1;
  return false;
}

bool Domain::exact_classification() const {
  return !std::holds_alternative<PredicateShape>(shape_);
}

std::string Domain::shape_name() const {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) return "box";
        if constexpr (std::is_same_v<T, BallShape>) return "ball";
        if constexpr (std::is_same_v<T, LShape>) return "l_shape";
        if constexpr (std::is_same_v<T, AnnulusShape>) return "annulus";
        if constexpr (std::is_same_v<T, IntervalListShape>) return "intervals";
        if constexpr (std::is_same_v<T, UnionShape>) return "union";
        if constexpr (std::is_same_v<T, PredicateShape>) return "predicate";
      },
      shape_);
}

// ---------------------------------------------------------------------------
// Classification

namespace {

// Range of (x - c)^2 over [lo, hi], per axis summed.
void dist2_range(const std::vector<double>& c, const AxisBox& b, double& mn,
                 double& mx) {
  mn = 0.0;
  mx = 0.0;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    const double a = b.lo[i] - c[i];
    const double d = b.hi[i] - c[i];
    const double amax = std::max(a * a, d * d);
    const double amin = (a <= 0.0 && d >= 0.0) ? 0.0 : std::min(a * a, d * d);
    mn += amin;
    mx += amax;
  }
}

// Classify the cube's interior against the open region (a, b)^n.
CubeClass classify_against_box(const AxisBox& region, const AxisBox& cube) {
  bool inside = true;
  for (std::size_t i = 0; i < cube.dim(); ++i) {
    if (cube.hi[i] <= region.lo[i] || cube.lo[i] >= region.hi[i])
      return CubeClass::outside;  // interiors disjoint on this axis
    if (cube.lo[i] < region.lo[i] || cube.hi[i] > region.hi[i]) inside = false;
  }
  return inside ? CubeClass::inside : CubeClass::straddling;
}

CubeClass classify_primitive(const PrimitiveShape& p, const AxisBox& cube) {
  return std::visit(
      [&](const auto& s) -> CubeClass {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          return classify_against_box(s.box, cube);
        }
        if constexpr (std::is_same_v<T, BallShape>) {
          double mn, mx;
          dist2_range(s.center, cube, mn, mx);
          const double r2 = s.radius * s.radius;
          if (mx <= r2) return CubeClass::inside;
          if (mn >= r2) return CubeClass::outside;
          return CubeClass::straddling;
        }
        if constexpr (std::is_same_v<T, LShape>) {
          const CubeClass in_outer = classify_against_box(s.outer, cube);
          const CubeClass in_cut = classify_against_box(s.cut(), cube);
          if (in_outer == CubeClass::outside || in_cut == CubeClass::inside)
            return CubeClass::outside;
          if (in_outer == CubeClass::inside && in_cut == CubeClass::outside)
            return CubeClass::inside;
          return CubeClass::straddling;
        }
        if constexpr (std::is_same_v<T, AnnulusShape>) {
          double mn, mx;
          dist2_range(s.center, cube, mn, mx);
          const double ri2 = s.r_in * s.r_in, ro2 = s.r_out * s.r_out;
          if (mn >= ri2 && mx <= ro2) return CubeClass::inside;
          if (mx <= ri2 || mn >= ro2) return CubeClass::outside;
          return CubeClass::straddling;
        }
      },
      p);
}

// inside if any part covers the cube; outside only if every part misses it.
CubeClass classify_union(std::span<const PrimitiveShape> parts,
                         const AxisBox& cube) {
  bool all_outside = true;
  for (const auto& p : parts) {
    const CubeClass c = classify_primitive(p, cube);
    if (c == CubeClass::inside) return CubeClass::inside;
    if (c != CubeClass::outside) all_outside = false;
  }
  return all_outside ? CubeClass::outside : CubeClass::straddling;
}

CubeClass classify_sampled(const PredicateShape& s, const AxisBox& cube) {
  const std::size_t n = cube.dim();
  const int spa = s.samples_per_axis;
  std::vector<double> pt(n);
  std::vector<int> odo(n, 0);
  bool any_in = false, any_out = false;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = (odo[i] + 0.5) / spa;
      pt[i] = cube.lo[i] + t * (cube.hi[i] - cube.lo[i]);
    }
    (s.member(pt) ? any_in : any_out) = true;
    if (any_in && any_out) return CubeClass::straddling;
    std::size_t axis = 0;
    while (axis < n && ++odo[axis] == spa) odo[axis++] = 0;
    if (axis == n) break;
  }
  if (any_in) return CubeClass::inside;
  return CubeClass::outside;
}

}  // namespace

CubeClass classify_cube(const Domain& domain, const AxisBox& box) {
  require(box.dim() == domain.dim(), ErrorCode::invalid_argument,
          "classify_cube: box/domain dimension mismatch");
  return std::visit(
      [&](const auto& s) -> CubeClass {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IntervalListShape>) {
          std::vector<PrimitiveShape> parts;
          parts.reserve(s.intervals.size());
          for (const auto& [a, b] : s.intervals)
            parts.push_back(BoxShape{AxisBox({a}, {b})});
          return classify_union(parts, box);
        } else if constexpr (std::is_same_v<T, UnionShape>) {
          return classify_union(s.parts, box);
        } else if constexpr (std::is_same_v<T, PredicateShape>) {
          return classify_sampled(s, box);
        } else {
          return classify_primitive(PrimitiveShape{s}, box);
        }
      },
      domain.shape());
}

// ---------------------------------------------------------------------------
// Dyadic decomposition

std::string cube_id(const DyadicCube& cube) {
  std::ostringstream os;
  os << cube.level << ":(";
  for (std::size_t i = 0; i < cube.index.size(); ++i) {
    if (i) os << ',';
    os << cube.index[i];
  }
  os << ')';
  return os.str();
}

bool interiors_disjoint(const DyadicCube& a, const DyadicCube& b) {
  const DyadicCube& coarse = (a.level <= b.level) ? a : b;
  const DyadicCube& fine = (a.level <= b.level) ? b : a;
  const int shift = fine.level - coarse.level;
  bool same_branch = true;
  for (std::size_t i = 0; i < coarse.index.size(); ++i) {
    if ((fine.index[i] >> shift) != coarse.index[i]) {
      same_branch = false;
      break;
    }
  }
  // same_branch means one cube contains the other (or they are identical)
  return !same_branch;
}

namespace {

AxisBox cube_box(const AxisBox& root, double root_side, int level,
                 std::span<const std::int64_t> k) {
  const double side = std::ldexp(root_side, -level);
  std::vector<double> lo(k.size()), hi(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    lo[i] = root.lo[i] + side * static_cast<double>(k[i]);
    hi[i] = root.lo[i] + side * static_cast<double>(k[i] + 1);
  }
  return AxisBox(std::move(lo), std::move(hi));
}

struct Refiner {
  const Domain& domain;
  const AxisBox& root;
  double root_side;
  int max_level;
  RefinePolicy policy;
  std::vector<DyadicCube>& out;

  void visit(int level, std::vector<std::int64_t>& k, bool known_inside) {
    AxisBox box = cube_box(root, root_side, level, k);
    CubeClass c =
        known_inside ? CubeClass::inside : classify_cube(domain, box);
    if (c == CubeClass::outside) return;
    if (c == CubeClass::inside) {
      if (policy == RefinePolicy::adaptive || level == max_level) {
        out.push_back(DyadicCube{level, k, std::move(box)});
        return;
      }
      descend(level, k, /*known_inside=*/true);
      return;
    }
    // straddling: refine further or discard at the bottom
    if (level < max_level) descend(level, k, /*known_inside=*/false);
  }

  void descend(int level, std::vector<std::int64_t>& k, bool known_inside) {
    const std::size_t n = k.size();
    std::vector<std::int64_t> child(n);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      for (std::size_t i = 0; i < n; ++i)
        child[i] = 2 * k[i] + ((bits >> (n - 1 - i)) & 1u);
      visit(level + 1, child, known_inside);
    }
  }
};

}  // namespace

Decomposition decompose(const Domain& domain, int max_level,
                        RefinePolicy policy) {
  require(max_level >= 0, ErrorCode::invalid_argument,
          "decompose: max_level must be >= 0");
  require(domain.dim() <= 16, ErrorCode::invalid_argument,
          "decompose: dimension too large for dyadic subdivision");

  const AxisBox& bb = domain.bounding_box();
  double side = 0.0;
  for (std::size_t i = 0; i < bb.dim(); ++i)
    side = std::max(side, bb.hi[i] - bb.lo[i]);
  std::vector<double> hi(bb.dim());
  for (std::size_t i = 0; i < bb.dim(); ++i) hi[i] = bb.lo[i] + side;
  AxisBox root(bb.lo, std::move(hi));

  Decomposition dec{domain, root, max_level, policy, {}, "exact"};
  if (const auto* ps = std::get_if<PredicateShape>(&domain.shape()))
    dec.classification_mode =
        "sampled(" + std::to_string(ps->samples_per_axis) + ")";

  Refiner refiner{domain, dec.root, side, max_level, policy, dec.cubes};
  std::vector<std::int64_t> k0(domain.dim(), 0);
  refiner.visit(0, k0, false);

  std::sort(dec.cubes.begin(), dec.cubes.end(),
            [](const DyadicCube& a, const DyadicCube& b) {
              if (a.level != b.level) return a.level < b.level;
              return a.index < b.index;
            });
  return dec;
}

double total_measure(const Decomposition& dec) {
  CompensatedSum acc;
  for (const auto& cube : dec.cubes) acc.add(cube.box.volume());
  return acc.value();
}

// ---------------------------------------------------------------------------
// Diameter

namespace {

// Support representation: point set plus an additive radius. The farthest
// pair between two primitives is max over point pairs of |p - q| + r_a + r_b.
struct SupportSet {
  std::vector<std::vector<double>> points;
  double radius = 0.0;
};

void box_corners(const AxisBox& b, std::vector<std::vector<double>>& out) {
  const std::size_t n = b.dim();
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i)
      p[i] = ((bits >> i) & 1u) ? b.hi[i] : b.lo[i];
    out.push_back(std::move(p));
  }
}

SupportSet support_set(const PrimitiveShape& p) {
  return std::visit(
      [](const auto& s) -> SupportSet {
        using T = std::decay_t<decltype(s)>;
        SupportSet set;
        if constexpr (std::is_same_v<T, BoxShape>) {
          box_corners(s.box, set.points);
        } else if constexpr (std::is_same_v<T, BallShape>) {
          set.points.push_back(s.center);
          set.radius = s.radius;
        } else if constexpr (std::is_same_v<T, AnnulusShape>) {
          set.points.push_back(s.center);
          set.radius = s.r_out;
        } else if constexpr (std::is_same_v<T, LShape>) {
          // corners of the outer box and of the cut that lie in the closure
          const AxisBox cut = s.cut();
          std::vector<std::vector<double>> candidates;
          box_corners(s.outer, candidates);
          box_corners(cut, candidates);
          for (auto& p : candidates) {
            if (!s.outer.contains(p)) continue;
            bool below_cut_somewhere = false;
            for (std::size_t i = 0; i < p.size(); ++i)
              if (p[i] <= cut.lo[i]) below_cut_somewhere = true;
            if (below_cut_somewhere) set.points.push_back(std::move(p));
          }
        }
        return set;
      },
      p);
}

double pair_distance(const SupportSet& a, const SupportSet& b) {
  double best = 0.0;
  for (const auto& p : a.points) {
    for (const auto& q : b.points) {
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = p[i] - q[i];
        s += d * d;
      }
      best = std::max(best, std::sqrt(s));
    }
  }
  return best + a.radius + b.radius;
}

double support_diameter(std::span<const SupportSet> sets) {
  double best = 0.0;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i; j < sets.size(); ++j)
      best = std::max(best, pair_distance(sets[i], sets[j]));
  return best;
}

}  // namespace

double diameter(const Domain& domain) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          return s.box.diagonal();
        } else if constexpr (std::is_same_v<T, BallShape>) {
          return 2.0 * s.radius;
        } else if constexpr (std::is_same_v<T, AnnulusShape>) {
          return 2.0 * s.r_out;
        } else if constexpr (std::is_same_v<T, LShape>) {
          SupportSet set = support_set(PrimitiveShape{s});
          std::vector<SupportSet> sets{std::move(set)};
          return support_diameter(sets);
        } else if constexpr (std::is_same_v<T, IntervalListShape>) {
          double lo = s.intervals.front().first,
                 hi = s.intervals.front().second;
          for (const auto& [a, b] : s.intervals) {
            lo = std::min(lo, a);
            hi = std::max(hi, b);
          }
          return hi - lo;
        } else if constexpr (std::is_same_v<T, UnionShape>) {
          std::vector<SupportSet> sets;
          sets.reserve(s.parts.size());
          for (const auto& p : s.parts) sets.push_back(support_set(p));
          return support_diameter(sets);
        } else {
          // no exact descriptor: bounding-box diagonal is an upper bound
          return domain.bounding_box().diagonal();
        }
      },
      domain.shape());
}

}  // namespace poincare
