#include "kanforge/algebroid.hpp"

#include <cmath>

namespace kanforge {

namespace {

double frob_inner(const Mat& a, const Mat& b) {
  return (a.adjoint() * b).trace().real();
}

Vec3 slerp(const Vec3& x, const Vec3& y, double t) {
  double c = std::clamp(x.dot(y), -1.0, 1.0);
  double th = std::acos(c);
  if (th < 1e-12) return ((1 - t) * x + t * y).normalized();
  return (std::sin((1 - t) * th) * x + std::sin(t * th) * y) / std::sin(th);
}

// Cubic Lagrange sample of a uniform sequence at t in [0,1]; one-sided
// stencils at the ends keep full order.
Vec cubic_sample(const std::vector<Vec>& f, double t) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 3) {
    double x = std::clamp(t, 0.0, 1.0) * n;
    int k = std::clamp(static_cast<int>(std::floor(x)), 0, n - 1);
    double u = x - k;
    return (1 - u) * f[k] + u * f[k + 1];
  }
  double x = std::clamp(t, 0.0, 1.0) * n;
  int k = std::clamp(static_cast<int>(std::floor(x)), 0, n - 1);
  int base = std::clamp(k - 1, 0, n - 3);
  double u = x - base;
  double w0 = -(u - 1) * (u - 2) * (u - 3) / 6.0;
  double w1 = u * (u - 2) * (u - 3) / 2.0;
  double w2 = -u * (u - 1) * (u - 3) / 2.0;
  double w3 = u * (u - 1) * (u - 2) / 6.0;
  return w0 * f[base] + w1 * f[base + 1] + w2 * f[base + 2] + w3 * f[base + 3];
}

}  // namespace

Vec MatrixLieAlgebra::bracket(const Vec& v, const Vec& w) const {
  const int n = dim();
  Vec out = Vec::Zero(n);
  for (int k = 0; k < n; ++k) out[k] = v.dot(structure[k] * w);
  return out;
}

Mat MatrixLieAlgebra::realize(const Vec& coords) const {
  Mat m = Mat::Zero(matrix_dim(), matrix_dim());
  for (int i = 0; i < dim(); ++i) m += coords[i] * basis[i];
  return m;
}

Vec MatrixLieAlgebra::project(const Mat& m) const {
  const int n = dim();
  Eigen::MatrixXd gram(n, n);
  Vec rhs(n);
  for (int i = 0; i < n; ++i) {
    rhs[i] = frob_inner(basis[i], m);
    for (int j = 0; j < n; ++j) gram(i, j) = frob_inner(basis[i], basis[j]);
  }
  return gram.ldlt().solve(rhs);
}

MatrixLieAlgebra MatrixLieAlgebra::from_basis(std::vector<Mat> basis, double tol) {
  MatrixLieAlgebra a;
  a.basis = std::move(basis);
  const int n = a.dim();
  a.structure.assign(n, Eigen::MatrixXd::Zero(n, n));
  a.closure_residual = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat c = a.basis[i] * a.basis[j] - a.basis[j] * a.basis[i];
      Vec coords = a.project(c);
      Mat back = a.realize(coords);
      a.closure_residual = std::max(a.closure_residual, (c - back).norm());
      for (int k = 0; k < n; ++k) a.structure[k](i, j) = coords[k];
    }
  if (a.closure_residual > tol)
    throw Error("MatrixLieAlgebra: basis is not closed under commutator (residual " +
                std::to_string(a.closure_residual) + ")");
  return a;
}

MatrixLieAlgebra MatrixLieAlgebra::su2() {
  using namespace std::complex_literals;
  Mat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -1i, 1i, 0;
  s3 << 1, 0, 0, -1;
  return from_basis({-0.5i * s1, -0.5i * s2, -0.5i * s3});
}

MatrixLieAlgebra MatrixLieAlgebra::so3() {
  Mat l1 = Mat::Zero(3, 3), l2 = Mat::Zero(3, 3), l3 = Mat::Zero(3, 3);
  l1(1, 2) = -1;
  l1(2, 1) = 1;
  l2(0, 2) = 1;
  l2(2, 0) = -1;
  l3(0, 1) = -1;
  l3(1, 0) = 1;
  return from_basis({l1, l2, l3});
}

void APath::validate(double tol) const {
  if (segments() < 2) throw Error("APath: need at least 3 samples");
  const double h = step();
  if (model.kind == AlgebroidModel::Kind::tangent_sphere) {
    if (base.size() != fiber.size()) throw Error("APath: base/fiber size mismatch");
    for (const auto& x : base)
      if (std::abs(x.norm() - 1.0) > tol)
        throw Error("APath: base sample leaves the unit sphere");
    // base continuity against the anchor flow (rho = identity)
    for (size_t k = 0; k + 1 < base.size(); ++k) {
      double drift = (base[k + 1] - base[k] - h * Vec3(fiber[k])).norm();
      double scale = 1.0 + fiber[k].norm();
      if (drift > 10.0 * h * h * scale + 10 * tol)
        throw Error("APath: base continuity violated at sample " + std::to_string(k));
    }
  }
  if (a0_flag) {
    const double h2 = step();
    double amax = 0.0;
    for (const auto& v : fiber) amax = std::max(amax, v.norm());
    const size_t n = fiber.size();
    Vec d0 = (-3.0 * fiber[0] + 4.0 * fiber[1] - fiber[2]) / (2 * h2);
    Vec d1 = (3.0 * fiber[n - 1] - 4.0 * fiber[n - 2] + fiber[n - 3]) / (2 * h2);
    double dtol = 200.0 * h2 * (1.0 + amax) + 10 * tol;
    if (fiber.front().norm() > tol || fiber.back().norm() > tol ||
        d0.norm() > dtol || d1.norm() > dtol)
      throw Error("APath: A0 boundary condition violated");
  }
}

double apath_residual(const APath& p) {
  if (p.segments() < 2) throw Error("apath_residual: need >= 3 samples");
  if (p.model.kind == AlgebroidModel::Kind::matrix_lie_algebra) return 0.0;
  const double h = p.step();
  double r = 0.0;
  for (int k = 1; k < p.segments(); ++k) {
    Vec3 gdot = (p.base[k + 1] - p.base[k - 1]) / (2 * h);
    r = std::max(r, (Vec3(p.fiber[k]) - gdot).norm());
  }
  return r;
}

Mat matrix_exp(const Mat& m) {
  double nrm = m.norm();
  int s = 0;
  while (nrm > 0.25) {
    nrm /= 2;
    ++s;
  }
  Mat a = m / std::pow(2.0, s);
  Mat term = Mat::Identity(m.rows(), m.cols());
  Mat sum = term;
  for (int k = 1; k <= 18; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

GroupPath integrate_path(const APath& p) {
  if (p.model.kind != AlgebroidModel::Kind::matrix_lie_algebra)
    throw Error("integrate_path: matrix model only");
  const auto& alg = *p.model.algebra;
  const int n = p.segments();
  const double h = p.step();
  // cubic midpoint interpolation of the fiber samples
  auto mid = [&](int k) -> Vec { return cubic_sample(p.fiber, (k + 0.5) / n); };
  GroupPath out;
  out.g.reserve(n + 1);
  Mat g = Mat::Identity(alg.matrix_dim(), alg.matrix_dim());
  out.g.push_back(g);
  for (int k = 0; k < n; ++k) {
    Mat a0 = alg.realize(p.fiber[k]);
    Mat am = alg.realize(mid(k));
    Mat a1 = alg.realize(p.fiber[k + 1]);
    Mat k1 = a0 * g;
    Mat k2 = am * (g + 0.5 * h * k1);
    Mat k3 = am * (g + 0.5 * h * k2);
    Mat k4 = a1 * (g + h * k3);
    g = g + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
    out.g.push_back(g);
  }
  return out;
}

APath concat(const APath& p, const APath& q, double tol) {
  if (p.model.kind != q.model.kind) throw Error("concat: model mismatch");
  if (p.model.kind == AlgebroidModel::Kind::tangent_sphere) {
    if ((p.base.back() - q.base.front()).norm() > tol)
      throw Error("concat: base endpoint mismatch");
  }
  APath out;
  out.model = p.model;
  const int np = p.segments(), nq = q.segments();
  out.fiber.reserve(np + nq + 1);
  for (int k = 0; k <= np; ++k) out.fiber.push_back(2.0 * p.fiber[k]);
  for (int k = 1; k <= nq; ++k) out.fiber.push_back(2.0 * q.fiber[k]);
  // the joint sample: left limit of 2 a(2t); A0 inputs make this unambiguous
  out.fiber[np] = p.fiber[np] + q.fiber[0];
  if (p.model.kind == AlgebroidModel::Kind::tangent_sphere) {
    out.base.reserve(np + nq + 1);
    for (int k = 0; k <= np; ++k) out.base.push_back(p.base[k]);
    for (int k = 1; k <= nq; ++k) out.base.push_back(q.base[k]);
  }
  return out;
}

APath reparametrize(const APath& p) {
  const int n = p.segments();
  auto tau = [](double t) { return t * t * t * (10 - 15 * t + 6 * t * t); };
  auto dtau = [](double t) { return 30 * t * t * (1 - t) * (1 - t); };
  auto sample_fiber = [&](double t) -> Vec { return cubic_sample(p.fiber, t); };
  APath out;
  out.model = p.model;
  out.fiber.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    double t = static_cast<double>(k) / n;
    out.fiber[k] = dtau(t) * sample_fiber(tau(t));
  }
  if (p.model.kind == AlgebroidModel::Kind::tangent_sphere) {
    out.base.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
      double x = tau(static_cast<double>(k) / n) * n;
      int i = std::clamp(static_cast<int>(std::floor(x)), 0, n - 1);
      out.base[k] = slerp(p.base[i], p.base[i + 1], x - i);
    }
  }
  out.a0_flag = true;
  return out;
}

void AHomotopy::validate(double boundary_tol, double slice_tol) const {
  if (a.size() < 3 || a[0].size() < 3) throw Error("AHomotopy: need >= 3x3 grid");
  for (size_t s = 0; s < b.size(); ++s) {
    if (b[s].front().norm() > boundary_tol || b[s].back().norm() > boundary_tol)
      throw Error("AHomotopy: b(0,s) = b(1,s) = 0 violated at row " + std::to_string(s));
  }
  for (size_t s = 0; s < a.size(); ++s) {
    APath slice;
    slice.model = model;
    slice.fiber = a[s];
    if (model.kind == AlgebroidModel::Kind::tangent_sphere) slice.base = base[s];
    slice.validate(slice_tol);
    if (apath_residual(slice) > slice_tol)
      throw Error("AHomotopy: s-slice " + std::to_string(s) + " is not an A-path");
  }
}

double ahomotopy_residual(const AHomotopy& h, double* boundary_violation) {
  const int nt = h.t_segments(), ns = h.s_segments();
  if (nt < 2 || ns < 2) throw Error("ahomotopy_residual: need >= 3x3 grid");
  const double ht = 1.0 / nt, hs = 1.0 / ns;
  if (boundary_violation) {
    double bv = 0.0;
    for (int s = 0; s <= ns; ++s)
      bv = std::max({bv, h.b[s].front().norm(), h.b[s].back().norm()});
    *boundary_violation = bv;
  }
  double r = 0.0;
  const bool sphere = h.model.kind == AlgebroidModel::Kind::tangent_sphere;
  for (int s = 1; s < ns; ++s)
    for (int t = 1; t < nt; ++t) {
      Vec dtb = (h.b[s][t + 1] - h.b[s][t - 1]) / (2 * ht);
      Vec dsa = (h.a[s + 1][t] - h.a[s - 1][t]) / (2 * hs);
      Vec res;
      if (sphere) {
        // covariant derivatives: project onto the tangent plane at the point
        const Vec3 x = h.base[s][t];
        Vec3 v = Vec3(dtb) - Vec3(dsa);
        res = v - x.dot(v) * x;
      } else {
        res = dtb - dsa - h.model.algebra->bracket(h.a[s][t], h.b[s][t]);
      }
      r = std::max(r, res.norm());
    }
  return r;
}

FlatTriangle flat_triangle(const APath& p, const APath& q) {
  if (p.model.kind != AlgebroidModel::Kind::matrix_lie_algebra ||
      q.model.kind != AlgebroidModel::Kind::matrix_lie_algebra)
    throw Error("flat_triangle: matrix model only");
  const auto& alg = *p.model.algebra;
  if (p.segments() != q.segments())
    throw Error("flat_triangle: the two sides need equal sample counts");
  const int n = p.segments();
  auto gp = integrate_path(p), gq = integrate_path(q);
  // alpha = min(u+v,1) and beta = max(u+v-1,0) land exactly on the shared
  // sample grid, so no interpolation is needed.
  auto g_at = [&](const GroupPath& g, int num) -> const Mat& {
    return g.g[std::clamp(num, 0, static_cast<int>(g.g.size()) - 1)];
  };
  FlatTriangle out;
  out.phi.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    out.phi[i].resize(i + 1);
    for (int j = 0; j <= i; ++j) {
      int w = i + j;
      out.phi[i][j] = g_at(gq, w - n) * g_at(gp, std::min(w, n));
    }
  }
  // Maurer-Cartan residual of the induced fiber data, measured on interior
  // lattice points with one-sided data near the diagonal edge.
  const double h = 1.0 / n;
  double mc = 0.0;
  auto log_deriv = [&](const Mat& g0, const Mat& g1, const Mat& center) {
    return alg.project(((g1 - g0) / (2 * h)) * center.inverse());
  };
  for (int i = 2; i < n; ++i)
    for (int j = 1; j + 1 < i; ++j) {
      // du at (i,j): phi(i+1,j) vs phi(i-1,j); dv similar
      Vec au0 = log_deriv(out.phi[i - 1][j], out.phi[i + 1][j], out.phi[i][j]);
      Vec av0 = log_deriv(out.phi[i][j - 1], out.phi[i][j + 1], out.phi[i][j]);
      // derivative of the fields by nested differences
      Vec au_vp = log_deriv(out.phi[i - 1][j + 1], out.phi[i + 1][j + 1], out.phi[i][j + 1]);
      Vec au_vm = log_deriv(out.phi[i - 1][j - 1], out.phi[i + 1][j - 1], out.phi[i][j - 1]);
      Vec av_up = log_deriv(out.phi[i + 1][j - 1], out.phi[i + 1][j + 1], out.phi[i + 1][j]);
      Vec av_um = log_deriv(out.phi[i - 1][j - 1], out.phi[i - 1][j + 1], out.phi[i - 1][j]);
      Vec dv_au = (au_vp - au_vm) / (2 * h);
      Vec du_av = (av_up - av_um) / (2 * h);
      Vec res = du_av - dv_au - alg.bracket(au0, av0);
      mc = std::max(mc, res.norm());
    }
  out.mc_residual = mc;
  // boundary edges
  out.side_p = p;
  out.side_q = q;
  out.side_diag.model = p.model;
  out.side_diag.fiber.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    double t = static_cast<double>(k) / n;
    double w = 2 * t;
    if (w <= 1.0) {
      // 2 a(2t) sampled from p
      double x = w * p.segments();
      int i = std::clamp(static_cast<int>(std::llround(x)), 0, p.segments());
      out.side_diag.fiber[k] = 2.0 * p.fiber[i];
    } else {
      double x = (w - 1.0) * q.segments();
      int i = std::clamp(static_cast<int>(std::llround(x)), 0, q.segments());
      out.side_diag.fiber[k] = 2.0 * q.fiber[i];
    }
  }
  return out;
}

APath random_matrix_path(const MatrixLieAlgebra& alg, SplitMix64& rng, int segments,
                         int modes, double amplitude) {
  APath p;
  p.model = AlgebroidModel::matrix(alg);
  const int d = alg.dim();
  std::vector<Vec> cs(modes, Vec::Zero(d)), cc(modes, Vec::Zero(d));
  for (int m = 0; m < modes; ++m)
    for (int i = 0; i < d; ++i) {
      cs[m][i] = rng.uniform(-amplitude, amplitude) / (m + 1);
      cc[m][i] = rng.uniform(-amplitude, amplitude) / (m + 1);
    }
  p.fiber.resize(segments + 1);
  for (int k = 0; k <= segments; ++k) {
    double t = static_cast<double>(k) / segments;
    Vec v = Vec::Zero(d);
    for (int m = 0; m < modes; ++m)
      v += std::sin(M_PI * (m + 1) * t) * cs[m] + std::cos(M_PI * (m + 1) * t) * cc[m];
    p.fiber[k] = v;
  }
  return p;
}

AHomotopy maurer_cartan_family(const MatrixLieAlgebra& alg, const Vec& x_coord,
                               const Vec& z_coord, int t_segments, int s_segments) {
  AHomotopy h;
  h.model = AlgebroidModel::matrix(alg);
  const int nt = t_segments, ns = s_segments;
  const double dt = 1.0 / nt, ds = 1.0 / ns;
  Mat X = alg.realize(x_coord), Z = alg.realize(z_coord);
  auto phi = [](double t) { return std::sin(M_PI * t) * std::sin(M_PI * t); };
  auto g_at = [&](double t, double s) -> Mat {
    return matrix_exp((s * phi(t)) * Z) * matrix_exp(t * X);
  };
  h.a.assign(ns + 1, std::vector<Vec>(nt + 1));
  h.b.assign(ns + 1, std::vector<Vec>(nt + 1));
  for (int s = 0; s <= ns; ++s)
    for (int t = 0; t <= nt; ++t) {
      double tv = t * dt, sv = s * ds;
      Mat g = g_at(tv, sv);
      Mat gi = g.inverse();
      // second-order one-sided differences at the boundary samples
      Mat dgt, dgs;
      if (t == 0)
        dgt = (-3 * g + 4 * g_at(tv + dt, sv) - g_at(tv + 2 * dt, sv)) / (2 * dt);
      else if (t == nt)
        dgt = (3 * g - 4 * g_at(tv - dt, sv) + g_at(tv - 2 * dt, sv)) / (2 * dt);
      else
        dgt = (g_at(tv + dt, sv) - g_at(tv - dt, sv)) / (2 * dt);
      if (s == 0)
        dgs = (-3 * g + 4 * g_at(tv, sv + ds) - g_at(tv, sv + 2 * ds)) / (2 * ds);
      else if (s == ns)
        dgs = (3 * g - 4 * g_at(tv, sv - ds) + g_at(tv, sv - 2 * ds)) / (2 * ds);
      else
        dgs = (g_at(tv, sv + ds) - g_at(tv, sv - ds)) / (2 * ds);
      h.a[s][t] = alg.project(dgt * gi);
      h.b[s][t] = alg.project(dgs * gi);
    }
  return h;
}

AHomotopy sphere_family(const Vec3& from, const Vec3& to, const Vec3& c0,
                        const Vec3& c1, int t_segments, int s_segments) {
  AHomotopy h;
  h.model = AlgebroidModel::sphere();
  const int nt = t_segments, ns = s_segments;
  const double dt = 1.0 / nt, ds = 1.0 / ns;
  Vec3 x = from.normalized(), y = to.normalized();
  auto gamma = [&](double t, double s) -> Vec3 {
    Vec3 c = slerp(c0.normalized(), c1.normalized(), s);
    return slerp(slerp(x, c, t), slerp(c, y, t), t);
  };
  h.base.assign(ns + 1, std::vector<Vec3>(nt + 1));
  h.a.assign(ns + 1, std::vector<Vec>(nt + 1));
  h.b.assign(ns + 1, std::vector<Vec>(nt + 1));
  for (int s = 0; s <= ns; ++s)
    for (int t = 0; t <= nt; ++t) {
      double tv = t * dt, sv = s * ds;
      Vec3 g = gamma(tv, sv);
      h.base[s][t] = g;
      Vec3 dgt, dgs;
      if (t == 0)
        dgt = (-3 * g + 4 * gamma(tv + dt, sv) - gamma(tv + 2 * dt, sv)) / (2 * dt);
      else if (t == nt)
        dgt = (3 * g - 4 * gamma(tv - dt, sv) + gamma(tv - 2 * dt, sv)) / (2 * dt);
      else
        dgt = (gamma(tv + dt, sv) - gamma(tv - dt, sv)) / (2 * dt);
      if (s == 0)
        dgs = (-3 * g + 4 * gamma(tv, sv + ds) - gamma(tv, sv + 2 * ds)) / (2 * ds);
      else if (s == ns)
        dgs = (3 * g - 4 * gamma(tv, sv - ds) + gamma(tv, sv - 2 * ds)) / (2 * ds);
      else
        dgs = (gamma(tv, sv + ds) - gamma(tv, sv - ds)) / (2 * ds);
      h.a[s][t] = dgt - g.dot(dgt) * g;
      h.b[s][t] = dgs - g.dot(dgs) * g;
    }
  return h;
}

}  // namespace kanforge
