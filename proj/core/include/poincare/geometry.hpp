#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "poincare/common.hpp"

namespace poincare {

/// Axis-aligned box [lo, hi], lo[i] < hi[i] on every axis.
struct AxisBox {
  std::vector<double> lo;
  std::vector<double> hi;

  AxisBox() = default;
  AxisBox(std::vector<double> lo_, std::vector<double> hi_);

  std::size_t dim() const { return lo.size(); }
  double volume() const;
  double diagonal() const;
  /// Closed-box membership.
  bool contains(std::span<const double> x) const;
  /// Open-box membership (strict inequalities).
  bool contains_open(std::span<const double> x) const;

  static AxisBox unit(std::size_t n);  // [0,1]^n
};

struct BoxShape {
  AxisBox box;
};

struct BallShape {
  std::vector<double> center;
  double radius = 0.0;
};

/// Box with the upper corner sub-box [mid, hi]^n removed.
struct LShape {
  AxisBox outer;
  AxisBox cut() const;
};

struct AnnulusShape {
  std::vector<double> center;
  double r_in = 0.0;
  double r_out = 0.0;
};

/// Union of open intervals, n = 1 only.
struct IntervalListShape {
  std::vector<std::pair<double, double>> intervals;
};

using PrimitiveShape = std::variant<BoxShape, BallShape, LShape, AnnulusShape>;

struct UnionShape {
  std::vector<PrimitiveShape> parts;
};

/// User-supplied membership test; classification falls back to sampling.
struct PredicateShape {
  std::function<bool(std::span<const double>)> member;
  int samples_per_axis = 4;
};

using Shape = std::variant<BoxShape, BallShape, LShape, AnnulusShape,
                           IntervalListShape, UnionShape, PredicateShape>;

/** Bounded region of R^n described by a shape plus its bounding box.
 *
 * Every constructor yields a bounded domain; requesting an unbounded one
 * (Domain::unbounded) throws ErrorCode::unbounded_domain. Instances are
 * immutable after construction and safe to share across threads. */
class Domain {
 public:
  static Domain box(AxisBox b);
  static Domain ball(std::vector<double> center, double radius);
  static Domain l_shape(AxisBox outer);
  static Domain annulus(std::vector<double> center, double r_in, double r_out);
  static Domain intervals(std::vector<std::pair<double, double>> parts);
  static Domain union_of(std::vector<PrimitiveShape> parts);
  static Domain from_predicate(AxisBox bounding,
                               std::function<bool(std::span<const double>)> member,
                               int samples_per_axis = 4);
  /// Always throws: the sum of cube measures sum_k mu(U_k) diverges on an
  /// unbounded region, so no finite-measure embedding constant exists.
  static Domain unbounded(const std::string& kind);

  const AxisBox& bounding_box() const { return bbox_; }
  const Shape& shape() const { return shape_; }
  std::size_t dim() const { return bbox_.dim(); }

  /// Open-set membership.
  bool contains(std::span<const double> x) const;
  /// True for the convex descriptors: box, ball, single interval.
  bool is_convex() const;
  /// True when interval-arithmetic classification is available.
  bool exact_classification() const;
  std::string shape_name() const;

 private:
  Domain(Shape s, AxisBox b) : shape_(std::move(s)), bbox_(std::move(b)) {}
  Shape shape_;
  AxisBox bbox_;
};

enum class CubeClass { inside, outside, straddling };

/** Classify an axis box against the domain.
 *
 * Exact (interval arithmetic on the defining inequalities) for the built-in
 * shapes; sampled shapes return inside only when every sample point is a
 * member. Classification treats the box by its interior, so faces shared
 * with the shape boundary still count as inside. */
CubeClass classify_cube(const Domain& domain, const AxisBox& box);

/// Cube 2^-j (k + [0,1]^n) relative to the root box, side s * 2^-j.
struct DyadicCube {
  int level = 0;
  std::vector<std::int64_t> index;
  AxisBox box;
};

std::string cube_id(const DyadicCube& cube);  // "j:(k0,k1,...)"

/// Decided purely from (level, index) arithmetic: distinct cubes either
/// have disjoint interiors or one contains the other (returns false then).
bool interiors_disjoint(const DyadicCube& a, const DyadicCube& b);

enum class RefinePolicy {
  adaptive,  // accept inside cubes as early as they classify
  uniform,   // subdivide everything to max_level
};

/// Inner approximation of a domain by almost-disjoint dyadic cubes.
struct Decomposition {
  Domain domain;
  AxisBox root;  // hypercube anchored at bounding_box().lo
  int max_level = 0;
  RefinePolicy policy = RefinePolicy::adaptive;
  std::vector<DyadicCube> cubes;  // sorted by (level, lexicographic index)
  std::string classification_mode;  // "exact" or "sampled(k)"
};

/** Recursive subdivision from the root hypercube.
 *
 * Inside cubes are accepted, straddling cubes split into 2^n children up to
 * max_level and discarded there, outside cubes dropped. The result is an
 * inner approximation: total measure never exceeds mu(domain). */
Decomposition decompose(const Domain& domain, int max_level,
                        RefinePolicy policy = RefinePolicy::adaptive);

/// Compensated sum of cube volumes in canonical cube order.
double total_measure(const Decomposition& dec);

/// Exact for the built-in shape descriptors (max over supporting points).
double diameter(const Domain& domain);

}  // namespace poincare
