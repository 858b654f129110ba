#pragma once

#include <vector>

#include "plcurv/complex.hpp"
#include "plcurv/curvature.hpp"
#include "plcurv/geom.hpp"
#include "plcurv/report.hpp"

namespace plcurv {

struct KinematicConfig {
  long motions = 10000;
  // inner sphere sampling used when the map needs a Monte Carlo total
  // curvature of each intersection (Absolute, Components)
  long directions = 256;
  // enlarges the per-rotation translation window; anything >= 1 only adds
  // zero-contribution samples
  double window_scale = 1.0;
  // Monte Carlo budget for the bilinear side when the ambient dimension
  // rules out the exact invariants
  long rhs_samples = 2000;
  int threads = 1;
};

// Integral over rigid motions g of the measure of x1 and moving x2: per
// sample, a Haar rotation, then a translation uniform in the Minkowski
// window of the two bounding boxes, weighted by the window volume. The
// Euler map evaluates each intersection exactly; the other maps sample
// directions through nested substreams. Near-degenerate motions are
// resampled and counted in the rejection field.
MeasureEstimate kinematic_lhs(const EmbeddedComplex& x1, const EmbeddedComplex& x2,
                              CurvatureMap map, const KinematicConfig& cfg,
                              RngStream rng);

// The bilinear side: sum_k kinematic_constant(n,k) wk(x1,k) wk(x2,n-k).
// Ambient dimension <= 2 uses the exact invariants (zero error); otherwise
// Monte Carlo with `samples` directions per face.
MeasureEstimate kinematic_rhs(const EmbeddedComplex& x1, const EmbeddedComplex& x2,
                              CurvatureMap map, long samples, RngStream rng,
                              int threads = 1);

VerificationReport verify_kinematic(const EmbeddedComplex& x1,
                                    const EmbeddedComplex& x2, CurvatureMap map,
                                    const KinematicConfig& cfg, RngStream rng,
                                    double abs_tol = 0.0, double rel_tol = 0.05);

// Recovers wk(x, k) from random affine (n-k)-flats: rotated coordinate flat,
// offset uniform in the projection window, section measure weighted by the
// window volume, then the dimensional normalization constant
// binom(n,k) * omega_n / (omega_k omega_{n-k}).
MeasureEstimate linear_kinematic(const EmbeddedComplex& x, int k, CurvatureMap map,
                                 long samples, RngStream rng, long directions = 64,
                                 int threads = 1);

// For faces f1 of x1 and f2 of x2 with orthogonal complementary affine hulls
// whose interiors meet at exactly one point: the measure of the intersection
// complex at the meeting point against the product of the measures of the
// two cross-sections (each complex sliced by the other's hull).
VerificationReport check_factorization_orthogonal(
    const EmbeddedComplex& x1, const Face& f1, const EmbeddedComplex& x2,
    const Face& f2, CurvatureMap map, long directions, RngStream rng,
    double abs_tol = 0.0, double rel_tol = 0.05);

// Non-orthogonal version: the hulls only need to be complementary. Averages
// the meeting-point measure over independent rotation pairs (g1, g2) of the
// two hull factors, with g2 applied to x1 and g1 to x2 about the meeting
// point, and compares with face_measure(x1,f1) * face_measure(x2,f2). Each
// factor rotation acts through the oblique direct-sum decomposition
// E^n = E1 + E2, extended by the identity on the other factor.
VerificationReport check_factorization_averaged(
    const EmbeddedComplex& x1, const Face& f1, const EmbeddedComplex& x2,
    const Face& f2, CurvatureMap map, long rotations, long directions,
    RngStream rng, double abs_tol = 0.0, double rel_tol = 0.05);

// Lebesgue measure of translations x with f1 meeting f2 + x, for standalone
// simplices with complementary affine hulls, against the closed form
// vol(f1) * vol(f2) * |pairing of the two hull frames|.
VerificationReport translation_coincidence_measure(const std::vector<Vector>& f1,
                                                   const std::vector<Vector>& f2,
                                                   long samples, RngStream rng,
                                                   double abs_tol = 0.0,
                                                   double rel_tol = 0.02);

}  // namespace plcurv
