#include "kanforge/sphere.hpp"

#include <cmath>

namespace kanforge {

namespace {

Vec3 slerp3(const Vec3& x, const Vec3& y, double t) {
  double c = std::clamp(x.dot(y), -1.0, 1.0);
  double th = std::acos(c);
  if (th < 1e-12) return ((1 - t) * x + t * y).normalized();
  return (std::sin((1 - t) * th) * x + std::sin(t * th) * y) / std::sin(th);
}

// exact Levi-Civita transport along the geodesic from x to y
Vec3 geodesic_transport(const Vec3& x, const Vec3& y, const Vec3& v) {
  Vec3 axis = x.cross(y);
  double s = axis.norm(), c = std::clamp(x.dot(y), -1.0, 1.0);
  if (s < 1e-15) return v;
  axis /= s;
  double th = std::atan2(s, c);
  // Rodrigues rotation
  return v * std::cos(th) + axis.cross(v) * std::sin(th) +
         axis * (axis.dot(v)) * (1 - std::cos(th));
}

Vec3 transport_polygon(const SpherePath& p, Vec3 v, int stride) {
  int n = p.segments();
  int k = 0;
  while (k < n) {
    int next = std::min(k + stride, n);
    v = geodesic_transport(p.pts[k], p.pts[next], v);
    k = next;
  }
  return v;
}

double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2 * M_PI);
  if (a < 0) a += 2 * M_PI;
  return a - M_PI;
}

}  // namespace

SpherePath SpherePath::reversed() const {
  SpherePath r;
  r.pts.assign(pts.rbegin(), pts.rend());
  return r;
}

void SpherePath::validate(double tol) const {
  if (pts.size() < 2) throw Error("SpherePath: need at least 2 samples");
  for (const auto& x : pts)
    if (std::abs(x.norm() - 1.0) > tol)
      throw Error("SpherePath: sample is not a unit vector");
}

SpherePath great_arc(const Vec3& from, const Vec3& to, int segments) {
  SpherePath p;
  Vec3 x = from.normalized(), y = to.normalized();
  p.pts.resize(segments + 1);
  for (int k = 0; k <= segments; ++k)
    p.pts[k] = slerp3(x, y, static_cast<double>(k) / segments);
  return p;
}

SpherePath latitude_loop(double colatitude, int segments, double phase) {
  SpherePath p;
  p.pts.resize(segments + 1);
  double st = std::sin(colatitude), ct = std::cos(colatitude);
  for (int k = 0; k <= segments; ++k) {
    double phi = phase + 2 * M_PI * k / segments;
    p.pts[k] = Vec3(st * std::cos(phi), st * std::sin(phi), ct);
  }
  p.pts[segments] = p.pts[0];
  return p;
}

SpherePath meridian(double longitude, int segments) {
  SpherePath p;
  p.pts.resize(segments + 1);
  for (int k = 0; k <= segments; ++k) {
    double th = M_PI * k / segments;
    p.pts[k] = Vec3(std::sin(th) * std::cos(longitude),
                    std::sin(th) * std::sin(longitude), std::cos(th));
  }
  return p;
}

SpherePath bezier_arc(const Vec3& from, const Vec3& control, const Vec3& to,
                      int segments) {
  SpherePath p;
  p.pts.resize(segments + 1);
  Vec3 a = from.normalized(), c = control.normalized(), b = to.normalized();
  for (int k = 0; k <= segments; ++k) {
    double t = static_cast<double>(k) / segments;
    p.pts[k] = slerp3(slerp3(a, c, t), slerp3(c, b, t), t);
  }
  return p;
}

Vec3 parallel_transport(const SpherePath& path, const Vec3& xi, double tangent_tol) {
  path.validate();
  if (std::abs(xi.dot(path.start())) > tangent_tol * (1 + xi.norm()))
    throw Error("parallel_transport: xi is not tangent at the start point");
  if (path.segments() == 0 ||
      (path.start() - path.end()).norm() == 0.0) {
    // zero-length path: identity (still transport around loops below)
  }
  Vec3 t1 = transport_polygon(path, xi, 1);
  if (path.segments() < 2) return t1;
  Vec3 t2 = transport_polygon(path, xi, 2);
  // polygon transport is second order; one Richardson step
  Vec3 t = t1 + (t1 - t2) / 3.0;
  // reproject to the tangent plane and restore the norm
  const Vec3& e = path.end();
  t -= e.dot(t) * e;
  if (t.norm() > 0) t *= xi.norm() / t.norm();
  return t;
}

double tangent_angle(const Vec3& p, const Vec3& u, const Vec3& v) {
  Vec3 ju = p.cross(u);
  return std::atan2(v.dot(ju), v.dot(u));
}

SpherePathBundle transport_bundle(const SpherePath& path, const Vec3& xi,
                                  double lifted_angle) {
  SpherePathBundle b;
  b.path = path;
  b.lifted_angle = lifted_angle;
  int n = path.segments();
  b.frame_e1.resize(n + 1);
  b.frame_e2.resize(n + 1);
  Vec3 v = xi.normalized();
  for (int k = 0; k <= n; ++k) {
    if (k > 0) v = geodesic_transport(path.pts[k - 1], path.pts[k], v);
    b.frame_e1[k] = v;
    b.frame_e2[k] = path.pts[k].cross(v);
  }
  return b;
}

void SpherePathBundle::validate(double tol) const {
  for (size_t k = 0; k < frame_e1.size(); ++k) {
    const Vec3& p = path.pts[k];
    if (std::abs(frame_e1[k].norm() - 1) > tol || std::abs(frame_e2[k].norm() - 1) > tol)
      throw Error("SpherePathBundle: frame not unit length");
    if (std::abs(frame_e1[k].dot(p)) > tol || std::abs(frame_e2[k].dot(p)) > tol)
      throw Error("SpherePathBundle: frame not tangent");
    if (std::abs(frame_e1[k].dot(frame_e2[k])) > tol)
      throw Error("SpherePathBundle: frame not orthogonal");
  }
}

double angle_between_paths(const SpherePath& g1, const SpherePath& g2,
                           double endpoint_tol) {
  if ((g1.start() - g2.start()).norm() > endpoint_tol ||
      (g1.end() - g2.end()).norm() > endpoint_tol)
    throw Error("angle_between_paths: endpoint mismatch");
  // seed vector tangent at the common start
  Vec3 x = g1.start();
  Vec3 seed = x.cross(Vec3(0.12, -0.74, 0.66));
  if (seed.norm() < 1e-6) seed = x.cross(Vec3(1, 0, 0));
  seed.normalize();
  Vec3 t1 = parallel_transport(g1, seed);
  Vec3 t2 = parallel_transport(g2, seed);
  return tangent_angle(g1.end(), t1, t2);
}

double signed_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  // van Oosterom-Strackee signed solid angle
  double num = a.dot(b.cross(c));
  double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

double enclosed_area(const SpherePath& g1, const SpherePath& g2,
                     double endpoint_tol) {
  if ((g1.start() - g2.start()).norm() > endpoint_tol ||
      (g1.end() - g2.end()).norm() > endpoint_tol)
    throw Error("enclosed_area: endpoint mismatch");
  // boundary loop: gamma2 forward, then gamma1 reversed; fan from the start
  std::vector<Vec3> loop = g2.pts;
  for (int k = g1.segments(); k >= 0; --k) loop.push_back(g1.pts[k]);
  const Vec3& apex = loop.front();
  double area = 0.0;
  for (size_t k = 1; k + 1 < loop.size(); ++k)
    area += signed_triangle_area(apex, loop[k], loop[k + 1]);
  return area;
}

double strip_area(const SpherePath& a, const SpherePath& b) {
  if (a.segments() != b.segments())
    throw Error("strip_area: sample counts differ");
  double area = 0.0;
  for (int k = 0; k < a.segments(); ++k) {
    area += signed_triangle_area(a.pts[k], a.pts[k + 1], b.pts[k + 1]);
    area += signed_triangle_area(a.pts[k], b.pts[k + 1], b.pts[k]);
  }
  return area;
}

ArrowReport verify_arrow_identity(const ArrowConfig& c, double lift_tol) {
  const Vec3& x = c.gamma1.start();
  const Vec3& y = c.gamma1.end();
  auto tp = [](const SpherePath& g, const Vec3& v) { return parallel_transport(g, v); };

  // lift consistency: pr(r1) = -ang(xi1'//g1, xi2'//g2) at y,
  //                   pr(r2) = -ang(xi1//g1^-1, xi2//g2^-1) at x
  Vec3 x1p_g1 = tp(c.gamma1, c.xi1p), x2p_g2 = tp(c.gamma2, c.xi2p);
  Vec3 x1_g1i = tp(c.gamma1.reversed(), c.xi1), x2_g2i = tp(c.gamma2.reversed(), c.xi2);
  double r1_angle = -tangent_angle(y, x1p_g1, x2p_g2);
  double r2_angle = -tangent_angle(x, x1_g1i, x2_g2i);
  ArrowReport rep;
  rep.lift_consistency = std::max(std::abs(wrap_angle(c.r1 - r1_angle)),
                                  std::abs(wrap_angle(c.r2 - r2_angle)));
  if (rep.lift_consistency > lift_tol)
    throw Error("verify_arrow_identity: lifts are inconsistent with the frames");

  double ang12 = angle_between_paths(c.gamma1, c.gamma2);
  double ang_xi = tangent_angle(y, c.xi1, c.xi2);
  double ang_xip = tangent_angle(x, c.xi1p, c.xi2p);

  rep.chain_r2 = std::abs(wrap_angle(ang12 - c.r2 - ang_xi));
  rep.chain_r1 = std::abs(wrap_angle(ang12 + c.r1 + ang_xip));
  rep.chain_diff =
      std::abs(wrap_angle((c.r2 - c.r1) - (2 * ang12 - ang_xi + ang_xip)));

  // four-term transport telescope ending at ang(xi1, xi2)
  Vec3 x2p_g1 = tp(c.gamma1, c.xi2p);
  double tel = tangent_angle(y, c.xi1, x1p_g1) + tangent_angle(y, x1p_g1, x2p_g1) +
               tangent_angle(y, x2p_g1, x2p_g2) + tangent_angle(y, x2p_g2, c.xi2);
  rep.telescope = std::abs(wrap_angle(tel - ang_xi));

  // [r2 - r1] = ang(g1,g2) - ang(xi1, xi1'//g1) + ang(xi2, xi2'//g2)
  double corr = ang12 - tangent_angle(y, c.xi1, x1p_g1) + tangent_angle(y, c.xi2, x2p_g2);
  rep.chain_final = std::abs(wrap_angle((c.r2 - c.r1) - corr));

  double ang_rev = angle_between_paths(c.gamma1.reversed(), c.gamma2.reversed());
  rep.reversal = std::abs(wrap_angle(ang_rev + ang12));

  rep.max_residual = std::max({rep.chain_r2, rep.chain_r1, rep.chain_diff,
                               rep.telescope, rep.chain_final, rep.reversal});
  return rep;
}

ArrowConfig random_arrow_config(SplitMix64& rng, int segments) {
  auto rand_unit = [&]() {
    while (true) {
      Vec3 v(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
      double n = v.norm();
      if (n > 0.1 && n < 1.0) return Vec3(v / n);
    }
  };
  ArrowConfig c;
  Vec3 x = rand_unit(), y = rand_unit();
  while ((x + y).norm() < 0.2 || (x - y).norm() < 0.2) y = rand_unit();
  c.gamma1 = bezier_arc(x, rand_unit(), y, segments);
  c.gamma2 = bezier_arc(x, rand_unit(), y, segments);
  auto rand_tangent = [&](const Vec3& p) {
    Vec3 v = p.cross(rand_unit());
    while (v.norm() < 1e-3) v = p.cross(rand_unit());
    return Vec3(v.normalized());
  };
  c.xi1 = rand_tangent(y);
  c.xi2 = rand_tangent(y);
  c.xi1p = rand_tangent(x);
  c.xi2p = rand_tangent(x);
  Vec3 x1p_g1 = parallel_transport(c.gamma1, c.xi1p);
  Vec3 x2p_g2 = parallel_transport(c.gamma2, c.xi2p);
  Vec3 x1_g1i = parallel_transport(c.gamma1.reversed(), c.xi1);
  Vec3 x2_g2i = parallel_transport(c.gamma2.reversed(), c.xi2);
  double k1 = static_cast<double>(static_cast<long long>(rng.below(5)) - 2);
  double k2 = static_cast<double>(static_cast<long long>(rng.below(5)) - 2);
  c.r1 = -tangent_angle(y, x1p_g1, x2p_g2) + 2 * M_PI * k1;
  c.r2 = -tangent_angle(x, x1_g1i, x2_g2i) + 2 * M_PI * k2;
  return c;
}

double angle_axiom_residual(SplitMix64& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Vec3 p(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    if (p.norm() < 0.1) continue;
    p.normalize();
    auto tangent = [&]() {
      Vec3 v = p.cross(Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)));
      return Vec3(v.normalized());
    };
    Vec3 a = tangent(), b = tangent(), c = tangent();
    double add = wrap_angle(tangent_angle(p, a, b) + tangent_angle(p, b, c) -
                            tangent_angle(p, a, c));
    double anti = wrap_angle(tangent_angle(p, a, b) + tangent_angle(p, b, a));
    worst = std::max({worst, std::abs(add), std::abs(anti)});
  }
  return worst;
}

SweepResult sweep_winding(const std::vector<SpherePath>& family, double step_tol) {
  if (family.size() < 2) throw Error("sweep_winding: need at least two stages");
  SweepResult out;
  for (size_t s = 0; s + 1 < family.size(); ++s) {
    double d = strip_area(family[s], family[s + 1]);
    if (std::abs(d) > step_tol)
      throw Error("sweep_winding: lift jump exceeds tolerance at stage " +
                  std::to_string(s) + "; refine the family");
    out.max_step = std::max(out.max_step, std::abs(d));
    out.lift_change += d;
  }
  double w = out.lift_change / (2 * M_PI);
  out.winding = std::llround(w);
  out.rounding_distance = std::abs(w - static_cast<double>(out.winding));
  return out;
}

std::vector<SpherePath> full_sphere_sweep(int s_steps, int t_steps, bool reversed) {
  std::vector<SpherePath> fam;
  fam.reserve(s_steps + 1);
  for (int s = 0; s <= s_steps; ++s) {
    double colat = M_PI * s / s_steps;
    fam.push_back(latitude_loop(colat, t_steps));
  }
  if (reversed) {
    for (auto& p : fam) p = p.reversed();
  }
  return fam;
}

}  // namespace kanforge
