#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>

#include "plcurv/config.hpp"
#include "plcurv/report.hpp"

namespace plcurv {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Deterministic random stream with cheap substream derivation.
//
// Every estimator in the library derives one substream per sample index, so
// the sequence consumed by sample i never depends on how samples are split
// across threads. The generator is xoshiro256++ seeded through splitmix64;
// both are fixed bit-for-bit here rather than delegated to std::<random>
// distributions, whose output is implementation-defined.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  std::uint64_t next_u64();
  // uniform in [0, 1)
  double uniform01();
  double uniform(double a, double b);
  // standard normal deviate (Box-Muller, pair cached)
  double normal();

  // Independent stream for sub-task i of this stream's task.
  RngStream substream(std::uint64_t i) const;

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t state_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Affine k-flat in E^n: base point plus an orthonormal frame (n x k).
struct Flat {
  Vector base;
  Matrix frame;

  Flat(Vector base_, Matrix frame_);
  int ambient_dim() const { return static_cast<int>(base.size()); }
  int dim() const { return static_cast<int>(frame.cols()); }
  // coordinate flat span(e_1..e_k) through the origin of E^n
  static Flat coordinate(int n, int k);
  // orthonormal basis of the direction space's orthogonal complement
  Matrix orthogonal_complement() const;
};

// Rigid motion x -> R x + t with R in O(n).
struct Motion {
  Matrix rotation;
  Vector translation;

  Motion(Matrix rotation_, Vector translation_);
  int ambient_dim() const { return static_cast<int>(translation.size()); }
  Vector apply(const Vector& v) const { return rotation * v + translation; }
  Motion inverse() const;
  static Motion identity(int n);
};

// Axis-aligned box, used as a translation sampling window.
struct Box {
  Vector lo;
  Vector hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const;
  Vector sample(RngStream& rng) const;
  // Minkowski window: every translation t with (A + t) meeting B satisfies
  // t in box(B) - box(A), coordinatewise.
  static Box minkowski_window(const Box& target, const Box& moving);
  Box scaled(double factor) const;  // about the center
};

// Volume of the unit k-ball, pi^{k/2} / Gamma(k/2 + 1).
double unit_ball_volume(int k);

// Surface measure of S^{k-1}, k * omega_k; returns 0 for k = 0.
double sphere_measure(int k);

// Normalizing constant of the kinematic formula,
// binom(n,k)^{-1} * omega_k * omega_{n-k} / omega_n.
double kinematic_constant(int n, int k);

// |det| of the two frames stacked side by side; requires complementary
// dimensions. 1 for orthogonal complements, 0 when the direction spaces
// share a line.
double flat_pairing(const Flat& e1, const Flat& e2);

// Uniform direction on S^{n-1}.
Vector random_direction(int n, RngStream& rng);

// Haar-distributed element of O(n): orthonormalized Gaussian matrix with the
// QR sign fix, then the last column flipped with probability 1/2 so both
// components carry mass 1/2.
Motion random_rotation(int n, RngStream& rng);

// Haar rotation plus a translation drawn uniformly from the window.
Motion random_motion(RngStream& rotation_rng, const Box& window,
                     RngStream& translation_rng);

// Monte Carlo estimate of kinematic_constant(n,k) as the mean rotation
// pairing of complementary coordinate flats; the independent check that the
// closed-form constant and the flat pairing agree.
MeasureEstimate estimate_cnk(int n, int k, long samples, const RngStream& base,
                             int threads = 1);

// Static partition of [0, count) over `threads` workers; fn(i) must only
// touch slot i of any shared output so results are independent of the split.
void parallel_for(int threads, long count, const std::function<void(long)>& fn);

}  // namespace plcurv
