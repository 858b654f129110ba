#include "plcurv/kinematic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>

#include "plcurv/homology.hpp"
#include "plcurv/slicing.hpp"

namespace plcurv {

namespace {

// Meeting vertices are reconstructed through one small linear solve; see the
// matching constant in the curvature module.
constexpr double kMeetingRadius = 1e-7;

std::vector<Vector> face_points(const EmbeddedComplex& x, const Face& f) {
  std::vector<Vector> pts;
  pts.reserve(f.indices.size());
  for (int i : f.indices) pts.push_back(x.vertex(i));
  return pts;
}

Box points_box(const std::vector<Vector>& pts) {
  Box b{pts[0], pts[0]};
  for (const Vector& p : pts) {
    b.lo = b.lo.cwiseMin(p);
    b.hi = b.hi.cwiseMax(p);
  }
  return b;
}

double simplex_volume(const std::vector<Vector>& pts) {
  int k = static_cast<int>(pts.size()) - 1;
  if (k == 0) return 1.0;
  Matrix d(pts[0].size(), k);
  for (int j = 1; j <= k; ++j) d.col(j - 1) = pts[j] - pts[0];
  double g = (d.transpose() * d).determinant();
  double fact = 1.0;
  for (int j = 2; j <= k; ++j) fact *= j;
  return std::sqrt(std::max(0.0, g)) / fact;
}

// Orthonormal basis of a simplex's direction space.
Matrix direction_frame(const std::vector<Vector>& pts) {
  int n = static_cast<int>(pts[0].size());
  int k = static_cast<int>(pts.size()) - 1;
  if (k == 0) return Matrix(n, 0);
  Matrix d(n, k);
  for (int j = 1; j <= k; ++j) d.col(j - 1) = pts[j] - pts[0];
  Eigen::HouseholderQR<Matrix> qr(d);
  Matrix q = qr.householderQ();
  return q.leftCols(k);
}

int vertex_near(const EmbeddedComplex& x, const Vector& p) {
  if (x.empty()) return -1;
  int best = -1;
  double best_norm = kMeetingRadius;
  for (const auto& s : x.simplices(0)) {
    double nrm = (x.vertex(s[0]) - p).norm();
    if (nrm <= best_norm) {
      best_norm = nrm;
      best = s[0];
    }
  }
  return best;
}

// The single point where the interiors of two faces meet; rejects anything
// else (no meeting, higher-dimensional overlap, boundary contact).
Vector single_meeting_point(const EmbeddedComplex& x1, const Face& f1,
                            const EmbeddedComplex& x2, const Face& f2) {
  std::vector<Vector> pts = convex_intersection(face_points(x1, f1), face_points(x2, f2));
  if (pts.size() != 1)
    throw std::invalid_argument("faces must meet at exactly one point");
  const Vector& p = pts[0];
  for (const auto* pair : {&f1, &f2}) {
    const EmbeddedComplex& x = (pair == &f1) ? x1 : x2;
    const Face& f = *pair;
    int k = f.dim();
    if (k == 0) {
      if ((x.vertex(f.indices[0]) - p).norm() > tol().geometric)
        throw std::invalid_argument("meeting point off the vertex face");
      continue;
    }
    int n = x.ambient_dim();
    Matrix d(n, k);
    for (int j = 1; j <= k; ++j)
      d.col(j - 1) = x.vertex(f.indices[j]) - x.vertex(f.indices[0]);
    Vector c = d.colPivHouseholderQr().solve(p - x.vertex(f.indices[0]));
    double last = 1.0 - c.sum();
    double least = last;
    for (int j = 0; j < k; ++j) least = std::min(least, c[j]);
    if (least <= tol().geometric)
      throw std::invalid_argument("meeting point not interior to a face");
  }
  return p;
}

void require_face(const EmbeddedComplex& x, const Face& f, const char* what) {
  if (!x.has_simplex(f.indices))
    throw std::invalid_argument(std::string(what) + ": not a face of the complex");
}

// x rotated by m about the point p.
EmbeddedComplex about_point(const EmbeddedComplex& x, const Matrix& m, const Vector& p) {
  return translate(apply_linear(translate(x, -p), m), p);
}

double intersection_value(const EmbeddedComplex& y, CurvatureMap map,
                          long directions, const RngStream& inner) {
  if (map == CurvatureMap::Euler)
    return static_cast<double>(euler_characteristic(y));
  if (y.empty()) return 0.0;
  return total_curvature(y, map, directions, inner).mean;
}

}  // namespace

MeasureEstimate kinematic_lhs(const EmbeddedComplex& x1, const EmbeddedComplex& x2,
                              CurvatureMap map, const KinematicConfig& cfg,
                              RngStream rng) {
  int n = x1.ambient_dim();
  if (x2.ambient_dim() != n)
    throw std::invalid_argument("kinematic_lhs: ambient dimensions differ");
  if (cfg.motions < 1) throw std::invalid_argument("kinematic_lhs: motions < 1");
  if (x1.empty() || x2.empty()) return {0.0, 0.0, cfg.motions, 0};
  Box b1 = bounding_box(x1);
  std::vector<double> values(cfg.motions);
  std::vector<long> rej(cfg.motions, 0);
  std::vector<std::exception_ptr> errors(cfg.motions);
  parallel_for(cfg.threads, cfg.motions, [&](long i) {
    try {
      RngStream s = rng.substream(static_cast<std::uint64_t>(i));
      RngStream inner = s.substream(1);
      for (int attempt = 0;; ++attempt) {
        if (attempt > tol().max_rejections)
          throw NearDegeneracyError("motion resampling exhausted its budget");
        Motion rot = random_rotation(n, s);
        EmbeddedComplex moved = apply_motion(x2, rot);
        Box window = Box::minkowski_window(b1, bounding_box(moved))
                         .scaled(cfg.window_scale);
        Vector t = window.sample(s);
        try {
          EmbeddedComplex y = complex_intersection(x1, translate(moved, t));
          values[i] = intersection_value(y, map, cfg.directions, inner) *
                      window.volume();
          break;
        } catch (const DegeneracyError&) {
          ++rej[i];
        } catch (const NearDegeneracyError&) {
          ++rej[i];
        }
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  long rejections = std::accumulate(rej.begin(), rej.end(), 0L);
  return summarize(values, rejections);
}

MeasureEstimate kinematic_rhs(const EmbeddedComplex& x1, const EmbeddedComplex& x2,
                              CurvatureMap map, long samples, RngStream rng,
                              int threads) {
  int n = x1.ambient_dim();
  if (x2.ambient_dim() != n)
    throw std::invalid_argument("kinematic_rhs: ambient dimensions differ");
  std::vector<MeasureEstimate> terms;
  for (int k = 0; k <= n; ++k) {
    MeasureEstimate a, b;
    if (n <= 2) {
      a = {wk_exact(x1, k, map), 0.0, 0, 0};
      b = {wk_exact(x2, n - k, map), 0.0, 0, 0};
    } else {
      a = wk(x1, k, map, samples, rng.substream(2 * k), threads);
      b = wk(x2, n - k, map, samples, rng.substream(2 * k + 1), threads);
    }
    terms.push_back(scale_estimate(product_estimate(a, b), kinematic_constant(n, k)));
  }
  return sum_estimates(terms);
}

VerificationReport verify_kinematic(const EmbeddedComplex& x1,
                                    const EmbeddedComplex& x2, CurvatureMap map,
                                    const KinematicConfig& cfg, RngStream rng,
                                    double abs_tol, double rel_tol) {
  MeasureEstimate lhs = kinematic_lhs(x1, x2, map, cfg, rng.substream(0));
  MeasureEstimate rhs =
      kinematic_rhs(x1, x2, map, cfg.rhs_samples, rng.substream(1), cfg.threads);
  return make_verification("kinematic", lhs, rhs, abs_tol, rel_tol);
}

MeasureEstimate linear_kinematic(const EmbeddedComplex& x, int k, CurvatureMap map,
                                 long samples, RngStream rng, long directions,
                                 int threads) {
  int n = x.ambient_dim();
  if (k < 0 || k > n)
    throw std::out_of_range("linear_kinematic: degree outside [0, ambient]");
  double norm = 1.0 / kinematic_constant(n, k);
  if (k == 0) {
    // The only 0-offset flat is the whole space: a single exact evaluation.
    if (map == CurvatureMap::Euler)
      return {static_cast<double>(euler_characteristic(x)), 0.0, 1, 0};
    return total_curvature(x, map, directions, rng, threads);
  }
  if (x.empty()) return {0.0, 0.0, samples, 0};
  std::vector<double> values(samples);
  std::vector<long> rej(samples, 0);
  std::vector<std::exception_ptr> errors(samples);
  parallel_for(threads, samples, [&](long i) {
    try {
      RngStream s = rng.substream(static_cast<std::uint64_t>(i));
      RngStream inner = s.substream(1);
      for (int attempt = 0;; ++attempt) {
        if (attempt > tol().max_rejections)
          throw NearDegeneracyError("flat resampling exhausted its budget");
        Matrix r = random_rotation(n, s).rotation;
        Matrix dir = r.leftCols(n - k);
        Matrix comp = r.rightCols(k);
        // Projection window of the complex on the offset directions.
        Vector lo(k), hi(k);
        for (int j = 0; j < k; ++j) {
          double a = comp.col(j).dot(x.vertex(0)), b = a;
          for (int vtx = 1; vtx < x.vertex_count(); ++vtx) {
            double h = comp.col(j).dot(x.vertex(vtx));
            a = std::min(a, h);
            b = std::max(b, h);
          }
          lo[j] = a;
          hi[j] = b;
        }
        double volk = 1.0;
        Vector base = Vector::Zero(n);
        for (int j = 0; j < k; ++j) {
          volk *= hi[j] - lo[j];
          base += s.uniform(lo[j], hi[j]) * comp.col(j);
        }
        try {
          EmbeddedComplex y = flat_section(x, Flat(base, dir));
          double rho = (k == n) ? (y.empty() ? 0.0 : 1.0)
                                : intersection_value(y, map, directions, inner);
          values[i] = rho * volk;
          break;
        } catch (const DegeneracyError&) {
          ++rej[i];
        } catch (const NearDegeneracyError&) {
          ++rej[i];
        }
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  long rejections = std::accumulate(rej.begin(), rej.end(), 0L);
  return scale_estimate(summarize(values, rejections), norm);
}

VerificationReport check_factorization_orthogonal(
    const EmbeddedComplex& x1, const Face& f1, const EmbeddedComplex& x2,
    const Face& f2, CurvatureMap map, long directions, RngStream rng,
    double abs_tol, double rel_tol) {
  int n = x1.ambient_dim();
  if (x2.ambient_dim() != n)
    throw std::invalid_argument("factorization: ambient dimensions differ");
  require_face(x1, f1, "factorization");
  require_face(x2, f2, "factorization");
  if (f1.dim() + f2.dim() != n)
    throw std::invalid_argument("factorization: hull dimensions must be complementary");
  Matrix w1 = direction_frame(face_points(x1, f1));
  Matrix w2 = direction_frame(face_points(x2, f2));
  if (w1.cols() > 0 && w2.cols() > 0 &&
      (w1.transpose() * w2).cwiseAbs().maxCoeff() > tol().geometric)
    throw std::invalid_argument("factorization: affine hulls must be orthogonal");
  Vector p = single_meeting_point(x1, f1, x2, f2);

  EmbeddedComplex y = complex_intersection(x1, x2);
  int vy = vertex_near(y, p);
  if (vy < 0) throw std::invalid_argument("factorization: no intersection vertex at the meeting point");
  MeasureEstimate lhs = vertex_measure(y, vy, map, directions, rng.substream(0));

  EmbeddedComplex s1 = flat_section(x1, Flat(p, w2));
  EmbeddedComplex s2 = flat_section(x2, Flat(p, w1));
  int v1 = vertex_near(s1, Vector::Zero(s1.ambient_dim()));
  int v2 = vertex_near(s2, Vector::Zero(s2.ambient_dim()));
  if (v1 < 0 || v2 < 0)
    throw std::invalid_argument("factorization: section misses the meeting point");
  MeasureEstimate m1 = vertex_measure(s1, v1, map, directions, rng.substream(1));
  MeasureEstimate m2 = vertex_measure(s2, v2, map, directions, rng.substream(2));
  return make_verification("factorization_orthogonal", lhs,
                           product_estimate(m1, m2), abs_tol, rel_tol);
}

VerificationReport check_factorization_averaged(
    const EmbeddedComplex& x1, const Face& f1, const EmbeddedComplex& x2,
    const Face& f2, CurvatureMap map, long rotations, long directions,
    RngStream rng, double abs_tol, double rel_tol) {
  int n = x1.ambient_dim();
  if (x2.ambient_dim() != n)
    throw std::invalid_argument("factorization: ambient dimensions differ");
  require_face(x1, f1, "factorization");
  require_face(x2, f2, "factorization");
  int k1 = f1.dim(), k2 = f2.dim();
  if (k1 + k2 != n)
    throw std::invalid_argument("factorization: hull dimensions must be complementary");
  if (rotations < 1) throw std::invalid_argument("factorization: rotations < 1");
  Matrix w1 = direction_frame(face_points(x1, f1));
  Matrix w2 = direction_frame(face_points(x2, f2));
  if (flat_pairing(Flat(Vector::Zero(n), w1), Flat(Vector::Zero(n), w2)) <=
      tol().pairing_zero)
    throw std::invalid_argument("factorization: affine hulls must span the space");
  Vector p = single_meeting_point(x1, f1, x2, f2);
  Matrix basis(n, n);
  basis.leftCols(k1) = w1;
  basis.rightCols(k2) = w2;
  Matrix basis_inv = basis.inverse();

  RngStream lhs_rng = rng.substream(0);
  std::vector<double> values(rotations);
  long rejections = 0;
  for (long i = 0; i < rotations; ++i) {
    RngStream s = lhs_rng.substream(static_cast<std::uint64_t>(i));
    for (int attempt = 0;; ++attempt) {
      if (attempt > tol().max_rejections)
        throw NearDegeneracyError("rotation resampling exhausted its budget");
      Matrix block1 = Matrix::Identity(n, n);
      Matrix block2 = Matrix::Identity(n, n);
      if (k1 > 0) block1.topLeftCorner(k1, k1) = random_rotation(k1, s).rotation;
      if (k2 > 0) block2.bottomRightCorner(k2, k2) = random_rotation(k2, s).rotation;
      // g2 in O(E2) acts on x1, g1 in O(E1) acts on x2, each extended by the
      // identity on the other factor of the oblique decomposition.
      Matrix ghat2 = basis * block2 * basis_inv;
      Matrix ghat1 = basis * block1 * basis_inv;
      try {
        EmbeddedComplex y =
            complex_intersection(about_point(x1, ghat2, p), about_point(x2, ghat1, p));
        int vy = vertex_near(y, p);
        if (vy < 0) throw NearDegeneracyError("meeting vertex lost in the intersection");
        values[i] = vertex_measure(y, vy, map, directions, s.substream(1)).mean;
        break;
      } catch (const DegeneracyError&) {
        ++rejections;
      } catch (const NearDegeneracyError&) {
        ++rejections;
      }
    }
  }
  MeasureEstimate lhs = summarize(values, rejections);
  MeasureEstimate rhs =
      product_estimate(face_measure(x1, f1, map, directions, rng.substream(1)),
                       face_measure(x2, f2, map, directions, rng.substream(2)));
  return make_verification("factorization_averaged", lhs, rhs, abs_tol, rel_tol);
}

VerificationReport translation_coincidence_measure(const std::vector<Vector>& f1,
                                                   const std::vector<Vector>& f2,
                                                   long samples, RngStream rng,
                                                   double abs_tol, double rel_tol) {
  if (f1.empty() || f2.empty())
    throw std::invalid_argument("translation measure: empty face");
  int n = static_cast<int>(f1[0].size());
  int k1 = static_cast<int>(f1.size()) - 1;
  int k2 = static_cast<int>(f2.size()) - 1;
  if (k1 + k2 != n)
    throw std::invalid_argument("translation measure: dimensions must be complementary");
  if (samples < 1) throw std::invalid_argument("translation measure: samples < 1");
  double exact = simplex_volume(f1) * simplex_volume(f2);
  {
    Matrix w1 = direction_frame(f1);
    Matrix w2 = direction_frame(f2);
    exact *= flat_pairing(Flat(Vector::Zero(n), w1), Flat(Vector::Zero(n), w2));
  }
  Box window = Box::minkowski_window(points_box(f1), points_box(f2));
  double vol = window.volume();
  std::vector<double> values(samples);
  for (long i = 0; i < samples; ++i) {
    RngStream s = rng.substream(static_cast<std::uint64_t>(i));
    Vector t = window.sample(s);
    std::vector<Vector> shifted = f2;
    for (Vector& v : shifted) v += t;
    bool meets;
    try {
      meets = !convex_intersection(f1, shifted).empty();
    } catch (const NearDegeneracyError&) {
      meets = true;  // touching within the band: the target set is closed
    }
    values[i] = meets ? vol : 0.0;
  }
  MeasureEstimate lhs = summarize(values);
  MeasureEstimate rhs{exact, 0.0, 0, 0};
  return make_verification("translation_measure", lhs, rhs, abs_tol, rel_tol);
}

}  // namespace plcurv
