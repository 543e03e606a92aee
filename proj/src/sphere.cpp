// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "maskitlab/sphere.hpp"

#include <algorithm>
#include <cmath>

#include "maskitlab/error.hpp"

namespace maskit {

namespace {

constexpr double kPi = std::numbers::pi;

// Hermitian form [[a, b], [conj(b), d]] whose nonpositive set is a cap.
struct Hermitian {
  double a;
  cplx b;
  double d;
};

Hermitian cap_to_hermitian(const Cap& c) {
  const double cr = std::cos(c.radius);
  return {cr - c.center.z, -cplx(c.center.x, c.center.y), cr + c.center.z};
}

// sin_part is sqrt(-det) of the form, passed separately because it is a
// Moebius invariant and recomputing it from transformed entries loses digits
// for small caps.
Cap hermitian_to_cap(const Hermitian& h, double sin_part, bool closed) {
  const Vec3 n{h.b.real(), h.b.imag(), 0.5 * (h.a - h.d)};
  const double nn = n.norm();
  if (!(nn > 0.0)) throw Error(ErrorCode::Config, "degenerate circle");
  Cap out;
  out.center = -(n * (1.0 / nn));
  out.radius = std::atan2(sin_part, 0.5 * (h.a + h.d));
  out.closed = closed;
  return out;
}

}  // namespace

double Vec3::norm() const { return std::hypot(x, y, z); }

Vec3 Vec3::normalized() const {
  const double n = norm();
  return {x / n, y / n, z / n};
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

SpherePoint::SpherePoint(cplx z1, cplx z2) {
  const double m = std::max(std::abs(z1), std::abs(z2));
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw Error(ErrorCode::Config, "sphere point needs a finite nonzero coordinate");
  }
  z1_ = z1 / m;
  z2_ = z2 / m;
}

SpherePoint SpherePoint::from_vector(const Vec3& v) {
  const Vec3 u = v.normalized();
  if (u.z <= 0.0) return {cplx(u.x, u.y), 1.0 - u.z};
  return {1.0 + u.z, cplx(u.x, -u.y)};
}

Vec3 SpherePoint::to_vector() const {
  const cplx w = z1_ * std::conj(z2_);
  const double n1 = std::norm(z1_);
  const double n2 = std::norm(z2_);
  const double s = n1 + n2;
  return {2.0 * w.real() / s, 2.0 * w.imag() / s, (n1 - n2) / s};
}

bool SpherePoint::equals(const SpherePoint& o, double eps) const {
  return std::abs(z1_ * o.z2_ - z2_ * o.z1_) <= eps;
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  const double np = std::sqrt(std::norm(p.z1()) + std::norm(p.z2()));
  const double nq = std::sqrt(std::norm(q.z1()) + std::norm(q.z2()));
  const double d = 2.0 * std::abs(p.z1() * q.z2() - p.z2() * q.z1()) / (np * nq);
  return std::min(d, 2.0);
}

std::vector<SpherePoint> equal_area_grid(int n) {
  std::vector<SpherePoint> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < n; ++j) {
      const double lon = 2.0 * kPi * (j + 0.5) / n;
      out.push_back(SpherePoint::from_vector({r * std::cos(lon), r * std::sin(lon), z}));
    }
  }
  return out;
}

const char* map_class_name(MapClass c) {
  switch (c) {
    case MapClass::Identity: return "identity";
    case MapClass::Elliptic: return "elliptic";
    case MapClass::Parabolic: return "parabolic";
    case MapClass::Loxodromic: return "loxodromic";
  }
  return "?";
}

Moebius::Moebius(cplx a, cplx b, cplx c, cplx d) {
  const cplx det = a * d - b * c;
  if (!(std::abs(det) >= tol::kDegenerate)) {
    throw Error(ErrorCode::DegenerateMatrix, "Moebius matrix has |det| < 1e-14");
  }
  const cplx s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
}

Moebius Moebius::scaling(cplx k) { return {k, 0.0, 0.0, 1.0}; }
Moebius Moebius::translation(cplx t) { return {1.0, t, 0.0, 1.0}; }

double Moebius::frobenius_norm() const {
  return std::sqrt(std::norm(a_) + std::norm(b_) + std::norm(c_) + std::norm(d_));
}

Moebius Moebius::inverse() const { return {d_, -b_, -c_, a_, Raw{}}; }

Moebius Moebius::operator*(const Moebius& r) const {
  Moebius out(a_ * r.a_ + b_ * r.c_, a_ * r.b_ + b_ * r.d_,
              c_ * r.a_ + d_ * r.c_, c_ * r.b_ + d_ * r.d_, Raw{});
  // Re-normalize to keep long products on the determinant-one slice, unless
  // large entries make the computed determinant mostly rounding error.
  const double scale = std::max({std::norm(out.a_), std::norm(out.b_), std::norm(out.c_),
                                 std::norm(out.d_)});
  const cplx det = out.a_ * out.d_ - out.b_ * out.c_;
  if (!(scale < 1e6) || !(std::abs(det - 1.0) < 0.5)) return out;
  const cplx s = std::sqrt(det);
  out.a_ /= s;
  out.b_ /= s;
  out.c_ /= s;
  out.d_ /= s;
  return out;
}

SpherePoint Moebius::operator()(const SpherePoint& p) const {
  const cplx w1 = a_ * p.z1() + b_ * p.z2();
  const cplx w2 = c_ * p.z1() + d_ * p.z2();
  if (std::max(std::abs(w1), std::abs(w2)) > 0.0) return {w1, w2};
  // Numerically rank one: every point goes to the dominant column.
  if (std::hypot(std::abs(a_), std::abs(c_)) >= std::hypot(std::abs(b_), std::abs(d_))) {
    return {a_, c_};
  }
  return {b_, d_};
}

cplx Moebius::operator()(cplx z) const { return (a_ * z + b_) / (c_ * z + d_); }

double projective_distance(const Moebius& m1, const Moebius& m2) {
  auto diff = [&](double s) {
    return std::sqrt(std::norm(m1.a() - s * m2.a()) + std::norm(m1.b() - s * m2.b()) +
                     std::norm(m1.c() - s * m2.c()) + std::norm(m1.d() - s * m2.d()));
  };
  const double scale =
      std::max({1.0, m1.frobenius_norm(), m2.frobenius_norm()});
  return std::min(diff(1.0), diff(-1.0)) / scale;
}

bool projectively_equal(const Moebius& m1, const Moebius& m2, double eps) {
  return projective_distance(m1, m2) <= eps;
}

Classification classify(const Moebius& m) {
  Classification out;
  const cplx t = m.trace();
  out.trace_squared = t * t;
  if (projectively_equal(m, Moebius::identity())) {
    out.kind = MapClass::Identity;
    return out;
  }
  const cplx t2 = out.trace_squared;
  const double off = std::abs(t2 - 4.0);
  if (off <= tol::kParabolic) {
    out.kind = MapClass::Parabolic;
    out.near_parabolic = off > 0.0;
    return out;
  }
  const double real_tol = tol::kParabolic * std::max(1.0, std::abs(t2));
  if (std::abs(t2.imag()) <= real_tol && t2.real() >= -real_tol && t2.real() < 4.0) {
    out.kind = MapClass::Elliptic;
  } else {
    out.kind = MapClass::Loxodromic;
  }
  return out;
}

namespace {

SpherePoint eigenvector(const Moebius& m, cplx lambda) {
  const cplx v1a = m.b(), v1b = lambda - m.a();
  const cplx v2a = lambda - m.d(), v2b = m.c();
  const double n1 = std::norm(v1a) + std::norm(v1b);
  const double n2 = std::norm(v2a) + std::norm(v2b);
  if (n1 >= n2) return {v1a, v1b};
  return {v2a, v2b};
}

}  // namespace

FixedPoints fixed_points(const Moebius& m) {
  const Classification cls = classify(m);
  if (cls.kind == MapClass::Identity) {
    throw Error(ErrorCode::IdentityMap, "the identity has no isolated fixed points");
  }
  FixedPoints out;
  out.kind = cls.kind;
  const cplx t = m.trace();
  if (cls.kind == MapClass::Parabolic) {
    out.points.push_back({eigenvector(m, 0.5 * t), 1.0});
    return out;
  }
  const cplx disc = std::sqrt(cls.trace_squared - 4.0);
  // Pick the larger root directly and the smaller one as its reciprocal.
  cplx big = 0.5 * (t + disc);
  const cplx other = 0.5 * (t - disc);
  if (std::abs(other) > std::abs(big)) big = other;
  const cplx small = 1.0 / big;
  const double contraction = std::abs(small / big);
  out.points.push_back({eigenvector(m, big), contraction});
  out.points.push_back({eigenvector(m, small), 1.0 / contraction});
  return out;
}

// ---------------------------------------------------------------------------
// Caps

Cap Cap::make(const Vec3& center, double radius, bool closed) {
  const double n = center.norm();
  if (!(std::abs(n - 1.0) <= 1e-9)) {
    throw Error(ErrorCode::Config, "cap center must be a unit vector");
  }
  if (!(radius > 0.0 && radius < kPi)) {
    throw Error(ErrorCode::Config, "cap radius must lie in (0, pi)");
  }
  return {center * (1.0 / n), radius, closed};
}

Cap Cap::from_circle(cplx c, double r, bool inside, bool closed) {
  if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(std::abs(c))) {
    throw Error(ErrorCode::Config, "circle radius must be positive and finite");
  }
  Hermitian h{1.0, -c, std::norm(c) - r * r};
  if (!inside) h = {-h.a, -h.b, -h.d};
  return hermitian_to_cap(h, r, closed);
}

Cap Cap::half_plane(cplx normal, double offset, bool closed) {
  if (!(std::abs(normal) > 0.0)) {
    throw Error(ErrorCode::Config, "half-plane normal must be nonzero");
  }
  const Hermitian h{0.0, 0.5 * normal, -offset};
  return hermitian_to_cap(h, 0.5 * std::abs(normal), closed);
}

double Cap::diameter() const {
  return radius >= 0.5 * kPi ? 2.0 : 2.0 * std::sin(radius);
}

double Cap::point_margin(const SpherePoint& p) const {
  return radius - angle_between(center, p.to_vector());
}

bool Cap::contains(const SpherePoint& p, double eps) const {
  const double m = point_margin(p);
  return closed ? m >= -eps : m > -eps;
}

std::optional<Cap::Circle> Cap::plane_circle() const {
  const Hermitian h = cap_to_hermitian(*this);
  if (std::abs(h.a) <= 1e-14) return std::nullopt;
  const cplx z0 = -h.b / h.a;
  const double r2 = std::norm(z0) - h.d / h.a;
  return Circle{z0, std::sqrt(std::max(r2, 0.0)), h.a > 0.0};
}

bool caps_equal(const Cap& a, const Cap& b, double eps) {
  return std::abs(a.radius - b.radius) <= eps && angle_between(a.center, b.center) <= eps;
}

Cap map_cap(const Moebius& m, const Cap& c) {
  const Hermitian h = cap_to_hermitian(c);
  const Moebius n = m.inverse();
  // H' = N^* H N
  const cplx n00 = n.a(), n01 = n.b(), n10 = n.c(), n11 = n.d();
  const cplx hb = h.b, hbc = std::conj(h.b);
  // H N
  const cplx p00 = h.a * n00 + hb * n10;
  const cplx p01 = h.a * n01 + hb * n11;
  const cplx p10 = hbc * n00 + h.d * n10;
  const cplx p11 = hbc * n01 + h.d * n11;
  const cplx q00 = std::conj(n00) * p00 + std::conj(n10) * p10;
  const cplx q01 = std::conj(n00) * p01 + std::conj(n10) * p11;
  const cplx q11 = std::conj(n01) * p01 + std::conj(n11) * p11;
  return hermitian_to_cap({q00.real(), q01, q11.real()}, std::sin(c.radius), c.closed);
}

double cap_subset(const Cap& inner, const Cap& outer) {
  return outer.radius - inner.radius - angle_between(inner.center, outer.center);
}

double cap_separation(const Cap& a, const Cap& b) {
  return angle_between(a.center, b.center) - a.radius - b.radius;
}

bool cap_contained(const Cap& inner, const Cap& outer, double eps) {
  const double m = cap_subset(inner, outer);
  if (inner.closed && !outer.closed) return m > eps;
  return m >= -eps;
}

bool caps_disjoint(const Cap& a, const Cap& b, double eps) {
  const double s = cap_separation(a, b);
  if (a.closed && b.closed) return s > eps;
  return s >= -eps;
}

bool boundaries_meet(const Cap& a, const Cap& b, double eps) {
  const double ang = angle_between(a.center, b.center);
  const double lo = std::abs(a.radius - b.radius);
  const double hi = std::min(a.radius + b.radius, 2.0 * kPi - a.radius - b.radius);
  return ang >= lo - eps && ang <= hi + eps;
}

bool Region::contains(const SpherePoint& p, double eps) const {
  return std::any_of(caps.begin(), caps.end(),
                     [&](const Cap& c) { return c.contains(p, eps); });
}

double Region::point_margin(const SpherePoint& p) const {
  double best = -kPi;
  for (const Cap& c : caps) best = std::max(best, c.point_margin(p));
  return best;
}

Region map_region(const Moebius& m, const Region& r) {
  Region out;
  out.caps.reserve(r.caps.size());
  for (const Cap& c : r.caps) out.caps.push_back(map_cap(m, c));
  return out;
}

bool regions_equal(const Region& a, const Region& b, double eps) {
  auto covered = [eps](const Region& x, const Region& y) {
    return std::all_of(x.caps.begin(), x.caps.end(), [&](const Cap& c) {
      return std::any_of(y.caps.begin(), y.caps.end(),
                         [&](const Cap& d) { return caps_equal(c, d, eps); });
    });
  };
  return covered(a, b) && covered(b, a);
}

const char* containment_name(Containment c) {
  switch (c) {
    case Containment::Proved: return "proved";
    case Containment::NonStrict: return "non_strict";
    case Containment::Failed: return "failed";
    case Containment::NotProved: return "not_proved";
  }
  return "?";
}

SubsetResult region_subset_interior(const Region& r1, const Region& r2, double epsilon) {
  SubsetResult out;
  out.margin = kPi;
  if (r2.caps.empty()) {
    out.status = r1.caps.empty() ? Containment::Proved : Containment::Failed;
    out.margin = r1.caps.empty() ? kPi : -kPi;
    return out;
  }
  for (std::size_t i = 0; i < r1.caps.size(); ++i) {
    double best = -2.0 * kPi;
    for (const Cap& outer : r2.caps) best = std::max(best, cap_subset(r1.caps[i], outer));
    if (best < out.margin) {
      out.margin = best;
      out.worst_cap = i;
    }
  }
  constexpr double kTouch = 1e-12;
  if (out.margin > epsilon) {
    out.status = Containment::Proved;
  } else if (out.margin >= -kTouch) {
    out.status = Containment::NonStrict;
  } else if (r2.caps.size() == 1) {
    out.status = Containment::Failed;
  } else {
    const Cap& worst = r1.caps[out.worst_cap];
    const SpherePoint probe = SpherePoint::from_vector(worst.center);
    out.status = r2.contains(probe) ? Containment::NotProved : Containment::Failed;
  }
  return out;
}

}  // namespace maskit
