#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "kanforge/rng.hpp"
#include "kanforge/sset.hpp"

namespace kanforge {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

// Matrix realization of a real Lie algebra: a basis of d x d complex
// matrices closed under commutator. Brackets are taken through the structure
// constants; the anchor is zero (the base is a point).
struct MatrixLieAlgebra {
  std::vector<Mat> basis;
  // c[k](i,j): [e_i, e_j] = sum_k c_k(i,j) e_k
  std::vector<Eigen::MatrixXd> structure;
  double closure_residual = 0.0;

  int dim() const { return static_cast<int>(basis.size()); }
  int matrix_dim() const { return basis.empty() ? 0 : static_cast<int>(basis[0].rows()); }

  Vec bracket(const Vec& v, const Vec& w) const;
  Mat realize(const Vec& coords) const;
  Vec project(const Mat& m) const;  // least squares onto the span

  static MatrixLieAlgebra su2();
  static MatrixLieAlgebra so3();
  static MatrixLieAlgebra from_basis(std::vector<Mat> basis, double tol = 1e-9);
};

// The two concrete algebroid models of the workbench: a matrix Lie algebra
// over a point, and the tangent bundle of the unit sphere with the
// Levi-Civita connection (anchor = identity, torsion = 0).
struct AlgebroidModel {
  enum class Kind { matrix_lie_algebra, tangent_sphere };
  Kind kind = Kind::matrix_lie_algebra;
  std::optional<MatrixLieAlgebra> algebra;

  int fiber_dim() const {
    return kind == Kind::tangent_sphere ? 3 : algebra->dim();
  }
  static AlgebroidModel matrix(MatrixLieAlgebra a) {
    AlgebroidModel m;
    m.kind = Kind::matrix_lie_algebra;
    m.algebra = std::move(a);
    return m;
  }
  static AlgebroidModel sphere() {
    AlgebroidModel m;
    m.kind = Kind::tangent_sphere;
    return m;
  }
};

// Sampled A-path: uniform t_k in [0,1], base points gamma(t_k) (sphere model
// only) and fiber values a(t_k) in model coordinates.
struct APath {
  AlgebroidModel model;
  std::vector<Vec3> base;   // empty for the matrix model
  std::vector<Vec> fiber;   // size N+1
  bool a0_flag = false;

  int segments() const { return static_cast<int>(fiber.size()) - 1; }
  double step() const { return 1.0 / segments(); }
  void validate(double tol = 1e-6) const;
};

// max over interior samples of |rho(a) - central-difference gamma'|
double apath_residual(const APath& p);

struct GroupPath {
  std::vector<Mat> g;
  const Mat& endpoint() const { return g.back(); }
};

// Solve g' = a(t) g, g(0) = 1 with a 4th-order scheme (classical RK4 with
// cubic midpoint interpolation of the samples).
GroupPath integrate_path(const APath& p);

// Scaling-and-squaring matrix exponential (used as the closed-form oracle).
Mat matrix_exp(const Mat& m);

// (a . b)(t) = 2 a(2t) then 2 b(2t-1); bases must match at the joint.
APath concat(const APath& p, const APath& q, double tol = 1e-9);

// Quintic profile tau(t) = t^3(10 - 15t + 6t^2); the output satisfies the
// A0 boundary (value and one-sided derivative vanish at both ends).
APath reparametrize(const APath& p);

// A-homotopy grid over (t, s): rows index s, columns index t.
struct AHomotopy {
  AlgebroidModel model;
  std::vector<std::vector<Vec3>> base;  // sphere model only
  std::vector<std::vector<Vec>> a, b;

  int t_segments() const { return static_cast<int>(a[0].size()) - 1; }
  int s_segments() const { return static_cast<int>(a.size()) - 1; }
  void validate(double boundary_tol = 1e-8, double slice_tol = 1e-2) const;
};

// max over interior grid points of |d_t b - d_s a - T(a, b)| with central
// differences, covariant (tangent-plane projected) for the sphere model.
double ahomotopy_residual(const AHomotopy& h, double* boundary_violation = nullptr);

// The canonical flat 2-simplex with sides p, q and concat(p, q): built from
// Phi(u,v) = g_q(max(u+v-1,0)) . g_p(min(u+v,1)) on the triangle 0<=v<=u<=1.
struct FlatTriangle {
  std::vector<std::vector<Mat>> phi;  // phi[i][j], j <= i, at (u,v) = (i,j)/N
  double mc_residual = 0.0;           // Maurer-Cartan defect of induced data
  APath side_p, side_q, side_diag;    // sampled boundary edges
};

FlatTriangle flat_triangle(const APath& p, const APath& q);

// Seeded random A-paths with smooth band-limited coefficients.
APath random_matrix_path(const MatrixLieAlgebra& alg, SplitMix64& rng, int segments,
                         int modes = 3, double amplitude = 1.0);

// Exact-exponential Maurer-Cartan family in a matrix algebra, with fixed
// endpoints in s: g(t,s) = exp(s phi(t) Z) exp(t X); a and b are extracted by
// second-order finite differences of the exact group grid.
AHomotopy maurer_cartan_family(const MatrixLieAlgebra& alg, const Vec& x_coord,
                               const Vec& z_coord, int t_segments, int s_segments);

// Torsion-free family on the sphere: a spherical Bezier family with fixed
// endpoints; a = d_t gamma, b = d_s gamma by projected finite differences.
AHomotopy sphere_family(const Vec3& from, const Vec3& to, const Vec3& c0,
                        const Vec3& c1, int t_segments, int s_segments);

}  // namespace kanforge
