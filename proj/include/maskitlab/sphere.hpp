// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

// Points, Moebius maps and spherical caps on the Riemann sphere.
//
// Points are stored homogeneously so that infinity needs no special casing.
// Caps are closed or open disks of the round unit sphere; Euclidean disks,
// disk complements and half-planes all become caps after stereographic
// projection, which gives one exact formula for containment and disjointness.

#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace maskit {

using cplx = std::complex<double>;

namespace tol {
inline constexpr double kProjective = 1e-10;    // projective equality
inline constexpr double kOracle = 1e-8;         // J-membership hits
inline constexpr double kParabolic = 1e-9;      // |tr^2 - 4|
inline constexpr double kDegenerate = 1e-14;    // |det| before normalization
inline constexpr double kCapEqual = 1e-9;       // cap-set equality
inline constexpr double kDefaultEpsilon = 1e-6; // containment margin
inline constexpr double kDefaultDelta = 1e-3;   // limit-set proxy distance
}  // namespace tol

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const;
  Vec3 normalized() const;
};

/// Angle between two (not necessarily unit) vectors, accurate near 0 and pi.
double angle_between(const Vec3& a, const Vec3& b);

class SpherePoint {
 public:
  /// The origin, z = 0.
  SpherePoint() : z1_(0.0), z2_(1.0) {}
  SpherePoint(cplx z1, cplx z2);

  static SpherePoint from_complex(cplx z) { return {z, 1.0}; }
  static SpherePoint infinity() { return {1.0, 0.0}; }
  static SpherePoint from_vector(const Vec3& v);

  cplx z1() const { return z1_; }
  cplx z2() const { return z2_; }
  bool is_infinity(double eps = 1e-300) const { return std::abs(z2_) <= eps; }
  /// Affine coordinate; only meaningful when !is_infinity().
  cplx affine() const { return z1_ / z2_; }
  Vec3 to_vector() const;

  bool equals(const SpherePoint& o, double eps = tol::kProjective) const;

 private:
  cplx z1_, z2_;
};

double chordal_distance(const SpherePoint& p, const SpherePoint& q);

/// n x n equal-area sample: heights 1 - 2(i + 1/2)/n, longitudes 2pi(j + 1/2)/n.
std::vector<SpherePoint> equal_area_grid(int n);

enum class MapClass { Identity, Elliptic, Parabolic, Loxodromic };
const char* map_class_name(MapClass c);

struct Classification {
  MapClass kind = MapClass::Identity;
  /// Set when |tr^2 - 4| fell inside the parabolic band without being exact.
  bool near_parabolic = false;
  cplx trace_squared;
};

struct FixedPoint {
  SpherePoint point;
  /// Modulus of the derivative at the point; < 1 attracting, > 1 repelling.
  double derivative_modulus = 1.0;
};

struct FixedPoints {
  MapClass kind = MapClass::Loxodromic;
  /// Loxodromic: [attracting, repelling]. Parabolic: one point.
  /// Elliptic: two unlabeled points.
  std::vector<FixedPoint> points;

  const SpherePoint& attracting() const { return points.at(0).point; }
  const SpherePoint& repelling() const { return points.at(1).point; }
};

/// z -> (az + b) / (cz + d), kept with ad - bc = 1.
class Moebius {
 public:
  Moebius() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}
  /// Normalizes to determinant one; throws DegenerateMatrix when |det| is
  /// below 1e-14.
  Moebius(cplx a, cplx b, cplx c, cplx d);

  static Moebius identity() { return {}; }
  static Moebius scaling(cplx k);
  static Moebius translation(cplx t);

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }
  cplx trace() const { return a_ + d_; }
  double frobenius_norm() const;

  Moebius inverse() const;
  Moebius operator*(const Moebius& rhs) const;
  SpherePoint operator()(const SpherePoint& p) const;
  cplx operator()(cplx z) const;

 private:
  struct Raw {};
  Moebius(cplx a, cplx b, cplx c, cplx d, Raw) : a_(a), b_(b), c_(c), d_(d) {}
  cplx a_, b_, c_, d_;
};

inline Moebius compose(const Moebius& m1, const Moebius& m2) { return m1 * m2; }
inline Moebius invert(const Moebius& m) { return m.inverse(); }
inline SpherePoint apply(const Moebius& m, const SpherePoint& p) { return m(p); }

/// min(|A - B|, |A + B|) / max(1, |A|, |B|) in the Frobenius norm.
double projective_distance(const Moebius& m1, const Moebius& m2);
bool projectively_equal(const Moebius& m1, const Moebius& m2,
                        double eps = tol::kProjective);

Classification classify(const Moebius& m);
/// Throws IdentityMap for the identity.
FixedPoints fixed_points(const Moebius& m);

/// Spherical cap {x : angle(x, center) <= radius} (or < for open caps).
struct Cap {
  Vec3 center{0, 0, 1};
  double radius = 0.5 * std::numbers::pi;
  bool closed = true;

  /// Throws Config on a non-unit center or a radius outside (0, pi).
  static Cap make(const Vec3& center, double radius, bool closed = true);
  /// {|z - c| <= r} for inside, {|z - c| >= r} for outside.
  static Cap from_circle(cplx c, double r, bool inside, bool closed = true);
  /// {Re(conj(n) z) <= offset}, including infinity.
  static Cap half_plane(cplx normal, double offset, bool closed = true);

  Cap complement() const { return {-center, std::numbers::pi - radius, !closed}; }
  Cap closure() const { return {center, radius, true}; }
  Cap interior() const { return {center, radius, false}; }

  /// Chordal diameter of the cap.
  double diameter() const;
  /// Signed angular distance from p to the boundary, positive inside.
  double point_margin(const SpherePoint& p) const;
  bool contains(const SpherePoint& p, double eps = 0.0) const;

  /// Euclidean description (center, radius, inside) when the boundary is a
  /// finite circle in the plane; empty for half-planes.
  struct Circle {
    cplx center;
    double radius;
    bool inside;
  };
  std::optional<Circle> plane_circle() const;
};

bool caps_equal(const Cap& a, const Cap& b, double eps = tol::kCapEqual);

/// Exact image of a cap under a Moebius map.
Cap map_cap(const Moebius& m, const Cap& c);

/// outer.radius - inner.radius - angle(centers); inner lies in the interior of
/// outer iff the margin is positive.
double cap_subset(const Cap& inner, const Cap& outer);

/// angle(centers) - a.radius - b.radius; positive means disjoint closures.
double cap_separation(const Cap& a, const Cap& b);

/// Set-level containment honoring open/closed flags up to eps.
bool cap_contained(const Cap& inner, const Cap& outer, double eps);
/// Set-level emptiness of the intersection honoring open/closed flags.
bool caps_disjoint(const Cap& a, const Cap& b, double eps);
/// Boundary circles meet (tangency included) up to eps.
bool boundaries_meet(const Cap& a, const Cap& b, double eps);

/// A finite union of caps.
struct Region {
  std::vector<Cap> caps;

  Region() = default;
  Region(Cap c) : caps{c} {}  // NOLINT: a cap is a one-piece region
  explicit Region(std::vector<Cap> cs) : caps(std::move(cs)) {}

  bool contains(const SpherePoint& p, double eps = 0.0) const;
  /// Largest point margin over the pieces.
  double point_margin(const SpherePoint& p) const;
};

Region map_region(const Moebius& m, const Region& r);

/// Each mapped cap coincides with some cap of the region and vice versa.
bool regions_equal(const Region& a, const Region& b, double eps = tol::kCapEqual);

/// Proved: inside the interior with margin above epsilon. NonStrict: inside the
/// closure but the margin does not clear epsilon.
enum class Containment { Proved, NonStrict, Failed, NotProved };
const char* containment_name(Containment c);

struct SubsetResult {
  Containment status = Containment::Proved;
  /// Minimum over caps of r1 of the best single-cap margin into r2.
  double margin = 0.0;
  /// Index of the cap of r1 realizing the minimum.
  std::size_t worst_cap = 0;
};

/// Proves r1 is inside the interior of r2 cap-by-single-cap. A negative margin
/// is Failed when the target is one cap or when the worst cap's center escapes
/// r2; otherwise the multi-cap cover is NotProved.
SubsetResult region_subset_interior(const Region& r1, const Region& r2,
                                    double epsilon = 0.0);

}  // namespace maskit
