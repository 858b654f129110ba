#include "plcurv/geom.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace plcurv {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2));
  return splitmix64(s);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
  std::uint64_t s = mix64(master_seed, stream_index);
  for (auto& w : state_) w = splitmix64(s);
  // xoshiro must not start at the all-zero state
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl64(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl64(state_[3], 45);
  return result;
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double a, double b) {
  return a + (b - a) * uniform01();
}

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // 1 - u keeps the log argument in (0, 1]
  double u1 = 1.0 - uniform01();
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double th = 2.0 * M_PI * u2;
  cached_normal_ = r * std::sin(th);
  has_cached_normal_ = true;
  return r * std::cos(th);
}

RngStream RngStream::substream(std::uint64_t i) const {
  return RngStream(mix64(master_seed_, stream_index_), i);
}

Flat::Flat(Vector base_, Matrix frame_) : base(std::move(base_)), frame(std::move(frame_)) {
  if (frame.rows() != base.size())
    throw std::invalid_argument("flat frame rows must match ambient dimension");
  if (frame.cols() > frame.rows())
    throw std::invalid_argument("flat dimension exceeds ambient dimension");
  if (frame.cols() > 0) {
    Matrix gram = frame.transpose() * frame;
    gram -= Matrix::Identity(frame.cols(), frame.cols());
    if (gram.cwiseAbs().maxCoeff() > tol().frame_orthonormal)
      throw std::invalid_argument("flat frame is not orthonormal");
  }
}

Flat Flat::coordinate(int n, int k) {
  if (k < 0 || k > n) throw std::out_of_range("flat dimension out of range");
  Matrix frame = Matrix::Zero(n, k);
  for (int j = 0; j < k; ++j) frame(j, j) = 1.0;
  return Flat(Vector::Zero(n), frame);
}

Matrix Flat::orthogonal_complement() const {
  const int n = ambient_dim();
  const int k = dim();
  if (k == 0) return Matrix::Identity(n, n);
  // columns of Q beyond the frame's span; full QR of the frame
  Eigen::HouseholderQR<Matrix> qr(frame);
  Matrix q = qr.householderQ();
  return q.rightCols(n - k);
}

Motion::Motion(Matrix rotation_, Vector translation_)
    : rotation(std::move(rotation_)), translation(std::move(translation_)) {
  if (rotation.rows() != rotation.cols() || rotation.rows() != translation.size())
    throw std::invalid_argument("motion dimensions inconsistent");
  Matrix gram = rotation.transpose() * rotation;
  gram -= Matrix::Identity(rotation.rows(), rotation.cols());
  if (gram.cwiseAbs().maxCoeff() > tol().orthonormal)
    throw std::invalid_argument("motion rotation is not orthogonal");
}

Motion Motion::inverse() const {
  Matrix rt = rotation.transpose();
  return Motion(rt, -(rt * translation));
}

Motion Motion::identity(int n) {
  return Motion(Matrix::Identity(n, n), Vector::Zero(n));
}

double Box::volume() const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) v *= std::max(0.0, hi[i] - lo[i]);
  return v;
}

Vector Box::sample(RngStream& rng) const {
  Vector t(dim());
  for (int i = 0; i < dim(); ++i) t[i] = rng.uniform(lo[i], hi[i]);
  return t;
}

Box Box::minkowski_window(const Box& target, const Box& moving) {
  Box w;
  w.lo = target.lo - moving.hi;
  w.hi = target.hi - moving.lo;
  return w;
}

Box Box::scaled(double factor) const {
  Box w;
  Vector c = 0.5 * (lo + hi);
  w.lo = c + factor * (lo - c);
  w.hi = c + factor * (hi - c);
  return w;
}

double unit_ball_volume(int k) {
  if (k < 0) throw std::out_of_range("ball dimension must be nonnegative");
  return std::pow(M_PI, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

double sphere_measure(int k) {
  if (k < 0) throw std::out_of_range("sphere dimension must be nonnegative");
  if (k == 0) return 0.0;
  return k * unit_ball_volume(k);
}

namespace {
double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
}  // namespace

double kinematic_constant(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw std::out_of_range("kinematic_constant: bad (n, k)");
  return unit_ball_volume(k) * unit_ball_volume(n - k) /
         (binomial(n, k) * unit_ball_volume(n));
}

double flat_pairing(const Flat& e1, const Flat& e2) {
  const int n = e1.ambient_dim();
  if (e2.ambient_dim() != n || e1.dim() + e2.dim() != n)
    throw std::invalid_argument("flat_pairing needs complementary dimensions");
  Matrix joint(n, n);
  joint.leftCols(e1.dim()) = e1.frame;
  joint.rightCols(e2.dim()) = e2.frame;
  double d = std::abs(joint.determinant());
  return d > 1.0 ? 1.0 : d;
}

Vector random_direction(int n, RngStream& rng) {
  if (n < 1) throw std::out_of_range("direction needs ambient dimension >= 1");
  Vector v(n);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    norm2 = v.squaredNorm();
  } while (norm2 < 1e-24);
  return v / std::sqrt(norm2);
}

Motion random_rotation(int n, RngStream& rng) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // sign fix: make R's diagonal positive so Q is Haar rather than biased by
  // the QR convention
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  if (rng.uniform01() < 0.5) q.col(n - 1) = -q.col(n - 1);
  return Motion(q, Vector::Zero(n));
}

Motion random_motion(RngStream& rotation_rng, const Box& window,
                     RngStream& translation_rng) {
  if (window.volume() <= 0.0)
    throw std::invalid_argument("random_motion: degenerate translation window");
  Motion rot = random_rotation(window.dim(), rotation_rng);
  return Motion(rot.rotation, window.sample(translation_rng));
}

void parallel_for(int threads, long count, const std::function<void(long)>& fn) {
  if (threads <= 1 || count < 2 * threads) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::atomic<long> cursor{0};
  const long chunk = 64;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        long begin = cursor.fetch_add(chunk);
        if (begin >= count) return;
        long end = std::min(count, begin + chunk);
        for (long i = begin; i < end; ++i) fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

MeasureEstimate estimate_cnk(int n, int k, long samples, const RngStream& base,
                             int threads) {
  if (n < 1 || k < 0 || k > n) throw std::out_of_range("estimate_cnk: bad (n, k)");
  Flat e1 = Flat::coordinate(n, k);
  Matrix back(n, n - k);
  back.setZero();
  for (int j = 0; j < n - k; ++j) back(k + j, j) = 1.0;
  std::vector<double> values(samples);
  parallel_for(threads, samples, [&](long i) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(i));
    Motion rot = random_rotation(n, rng);
    Flat e2(Vector::Zero(n), rot.rotation * back);
    values[i] = flat_pairing(e1, e2);
  });
  return summarize(values);
}

}  // namespace plcurv
