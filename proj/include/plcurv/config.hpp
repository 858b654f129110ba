#pragma once

namespace plcurv {

// Central tolerance record. Every geometric decision in the library routes
// through one of these fields; nothing hard-codes its own epsilon.
struct Tolerances {
  // vertex deduplication, feasibility of polytope vertices, on-plane tests
  double geometric = 1e-9;
  // orthonormality of rotation matrices
  double orthonormal = 1e-10;
  // orthonormality of flat frames (built by QR, so held tighter)
  double frame_orthonormal = 1e-12;
  // rejection band for degenerate cuts (vertex on a slicing plane, face in
  // a hyperplane); samples hitting the band are resampled, never perturbed
  double degeneracy = 1e-10;
  // |det| below this counts as a zero flat pairing
  double pairing_zero = 1e-12;
  // feasibility decisions between `geometric` and this bound are treated as
  // undecidable and reported as near-degenerate
  double near_band = 1e-6;
  // consecutive rejected samples before an estimator gives up
  int max_rejections = 1000;
  // attempts to re-pick an interior point when a face slice keeps hitting
  // degenerate position
  int max_perturbations = 16;
};

inline const Tolerances& tol() {
  static const Tolerances t{};
  return t;
}

}  // namespace plcurv
