#pragma once

#include <vector>

#include "plcurv/complex.hpp"

namespace plcurv {

// Simplex counts and signed boundary matrices of a complex.
// boundary[k] has one column per k-simplex and one row per (k-1)-simplex;
// signs follow the sorted-vertex orientation convention.
struct ChainComplexData {
  std::vector<long> counts;
  std::vector<Eigen::MatrixXi> boundary;  // boundary[0] is the empty 0 x n_0 matrix
};

ChainComplexData boundary_matrices(const EmbeddedComplex& x);

// Rational Betti numbers. The empty complex is tracked separately so the
// reduced convention b~_{-1}(empty) = 1 has somewhere to live.
struct BettiVector {
  std::vector<long> b;
  bool empty_complex = false;

  long betti(int k) const {
    return (k >= 0 && k < static_cast<int>(b.size())) ? b[k] : 0;
  }
  // reduced Betti number; accepts k = -1
  long reduced(int k) const {
    if (k == -1) return empty_complex ? 1 : 0;
    if (k == 0) return empty_complex ? 0 : betti(0) - 1;
    return betti(k);
  }
  long total() const {
    long t = 0;
    for (long v : b) t += v;
    return t;
  }
  long euler() const {
    long chi = 0;
    for (size_t k = 0; k < b.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * b[k];
    return chi;
  }
  bool operator==(const BettiVector& other) const {
    return empty_complex == other.empty_complex && b == other.b;
  }
};

// Betti numbers over the rationals, via exact fraction-free elimination.
BettiVector betti(const EmbeddedComplex& x);

// Betti numbers of the cone pair over a directional link: entry k is the
// reduced Betti number of the link in degree k-1, so an empty link gives
// (1, 0, ...) and a connected, acyclic link gives all zeros.
BettiVector pair_betti_from_link(const EmbeddedComplex& link);

long euler_from_betti(const BettiVector& b);

// Rank of an integer matrix by Bareiss fraction-free elimination with full
// pivoting; exact, no floating point.
long integer_rank(const Eigen::MatrixXi& m);

}  // namespace plcurv
