#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "kanforge/rng.hpp"
#include "kanforge/sset.hpp"

namespace kanforge {

using Vec3 = Eigen::Vector3d;

// Sampled path on the unit sphere.
struct SpherePath {
  std::vector<Vec3> pts;
  int segments() const { return static_cast<int>(pts.size()) - 1; }
  const Vec3& start() const { return pts.front(); }
  const Vec3& end() const { return pts.back(); }
  SpherePath reversed() const;
  void validate(double tol = 1e-9) const;
};

SpherePath great_arc(const Vec3& from, const Vec3& to, int segments);
SpherePath latitude_loop(double colatitude, int segments, double phase = 0.0);
// meridian from the north to the south pole at the given longitude
SpherePath meridian(double longitude, int segments);
// spherical quadratic Bezier through a control point
SpherePath bezier_arc(const Vec3& from, const Vec3& control, const Vec3& to,
                      int segments);

// Levi-Civita transport along the path (exact per geodesic segment, with one
// Richardson extrapolation step). xi must be tangent at the start.
Vec3 parallel_transport(const SpherePath& path, const Vec3& xi,
                        double tangent_tol = 1e-8);

// Transported orthonormal tangent frame and an externally tracked lift.
struct SpherePathBundle {
  SpherePath path;
  std::vector<Vec3> frame_e1, frame_e2;  // orthonormal tangent frame samples
  double lifted_angle = 0.0;             // continuous lift, radians
  void validate(double tol = 1e-8) const;
};

SpherePathBundle transport_bundle(const SpherePath& path, const Vec3& xi,
                                  double lifted_angle = 0.0);

// Signed angle from u to v in the oriented tangent plane at p (J v = p x v).
double tangent_angle(const Vec3& p, const Vec3& u, const Vec3& v);

// ang(gamma1, gamma2) = angle between the transports of a common seed vector;
// principal value in (-pi, pi]. Independent of the seed.
double angle_between_paths(const SpherePath& g1, const SpherePath& g2,
                           double endpoint_tol = 1e-9);

// Signed solid angle of the geodesic triangle (a, b, c).
double signed_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

// Signed spherical area of the disk with boundary -gamma1 + gamma2, computed
// as a fan of geodesic triangles from the common start point. Real-valued
// (not reduced mod 2pi).
double enclosed_area(const SpherePath& g1, const SpherePath& g2,
                     double endpoint_tol = 1e-9);

// Signed area swept between two paths with common endpoints, via the
// triangulated strip between their samples (requires equal sample counts).
double strip_area(const SpherePath& a, const SpherePath& b);

struct ArrowConfig {
  SpherePath gamma1, gamma2;  // common endpoints x -> y
  Vec3 xi1, xi2;              // unit tangents at y
  Vec3 xi1p, xi2p;            // unit tangents at x
  double r1 = 0.0, r2 = 0.0;  // lifts
};

struct ArrowReport {
  double lift_consistency = 0.0;  // pr(r_i) vs the prescribed frame angles
  double chain_r2 = 0.0;          // ang(g1,g2) = [r2] + ang(xi1, xi2)
  double chain_r1 = 0.0;          // ang(g1,g2) = -[r1] - ang(xi1', xi2')
  double chain_diff = 0.0;        // [r2-r1] = 2 ang - ang(xi) + ang(xi')
  double telescope = 0.0;         // four-term transport chain
  double chain_final = 0.0;       // [r2-r1] = ang + ang-corrections
  double reversal = 0.0;          // ang(g1^-1, g2^-1) + ang(g1, g2)
  double max_residual = 0.0;
};

ArrowReport verify_arrow_identity(const ArrowConfig& c, double lift_tol = 1e-4);

// Seeded configuration generator: random endpoints and Bezier paths, random
// unit tangents, lifts satisfying the groupoid constraints up to a random
// multiple of 2pi.
ArrowConfig random_arrow_config(SplitMix64& rng, int segments);

// Additivity and antisymmetry of the tangent angle at a random point.
double angle_axiom_residual(SplitMix64& rng, int trials);

// Lifted angle along a family of loops; winding = (total change)/(2pi).
struct SweepResult {
  double lift_change = 0.0;
  long long winding = 0;
  double rounding_distance = 0.0;
  double max_step = 0.0;
};

SweepResult sweep_winding(const std::vector<SpherePath>& family,
                          double step_tol = M_PI / 2);

// The standard full-sphere sweep by latitude circles (reversed = swap
// orientation); family[0] and family.back() are constant loops at the poles.
std::vector<SpherePath> full_sphere_sweep(int s_steps, int t_steps,
                                          bool reversed = false);

}  // namespace kanforge
