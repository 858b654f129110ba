#include "plcurv/homology.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace plcurv {

using boost::multiprecision::cpp_int;

ChainComplexData boundary_matrices(const EmbeddedComplex& x) {
  ChainComplexData data;
  int top = x.dim();
  if (top < 0) return data;
  data.counts.resize(top + 1);
  for (int k = 0; k <= top; ++k) data.counts[k] = x.count(k);
  data.boundary.resize(top + 1);
  data.boundary[0] = Eigen::MatrixXi::Zero(0, static_cast<int>(data.counts[0]));
  std::vector<int> face;
  for (int k = 1; k <= top; ++k) {
    Eigen::MatrixXi d = Eigen::MatrixXi::Zero(static_cast<int>(data.counts[k - 1]),
                                              static_cast<int>(data.counts[k]));
    const auto& cells = x.simplices(k);
    for (size_t col = 0; col < cells.size(); ++col) {
      const auto& s = cells[col];
      face.assign(s.size() - 1, 0);
      for (size_t skip = 0; skip < s.size(); ++skip) {
        size_t w = 0;
        for (size_t i = 0; i < s.size(); ++i)
          if (i != skip) face[w++] = s[i];
        long row = x.simplex_index(face);
        d(static_cast<int>(row), static_cast<int>(col)) = (skip % 2 == 0) ? 1 : -1;
      }
    }
    data.boundary[k] = std::move(d);
  }
  return data;
}

long integer_rank(const Eigen::MatrixXi& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  if (rows == 0 || cols == 0) return 0;
  std::vector<std::vector<cpp_int>> a(rows, std::vector<cpp_int>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = m(i, j);

  long rank = 0;
  cpp_int prev = 1;
  int r = 0, c = 0;
  while (r < rows && c < cols) {
    // full pivoting keeps Bareiss division exact under rank deficiency
    int pr = -1, pc = -1;
    for (int i = r; i < rows && pr < 0; ++i)
      for (int j = c; j < cols; ++j)
        if (a[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr < 0) break;
    std::swap(a[r], a[pr]);
    if (pc != c)
      for (int i = 0; i < rows; ++i) std::swap(a[i][c], a[i][pc]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j)
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++rank;
    ++r;
    ++c;
  }
  return rank;
}

namespace {

// b_0 and the cycle count of a complex of dimension <= 1, by union-find;
// avoids integer elimination for the common case of links of surface points.
BettiVector betti_graph(const EmbeddedComplex& x) {
  BettiVector out;
  long nv = x.count(0);
  long ne = x.count(1);
  std::vector<int> parent(static_cast<size_t>(nv));
  for (long i = 0; i < nv; ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  auto vertex_slot = [&](int v) {
    return static_cast<int>(x.simplex_index({v}));
  };
  for (const auto& e : x.simplices(1)) {
    int a = find(vertex_slot(e[0]));
    int b = find(vertex_slot(e[1]));
    if (a != b) parent[a] = b;
  }
  long components = 0;
  for (long i = 0; i < nv; ++i)
    if (find(static_cast<int>(i)) == i) ++components;
  long cycles = ne - nv + components;
  out.b = x.dim() >= 1 ? std::vector<long>{components, cycles}
                       : std::vector<long>{components};
  return out;
}

}  // namespace

BettiVector betti(const EmbeddedComplex& x) {
  BettiVector out;
  if (x.empty()) {
    out.empty_complex = true;
    return out;
  }
  if (x.dim() <= 1) return betti_graph(x);
  ChainComplexData data = boundary_matrices(x);
  int top = x.dim();
  std::vector<long> ranks(top + 2, 0);
  for (int k = 1; k <= top; ++k) ranks[k] = integer_rank(data.boundary[k]);
  out.b.resize(top + 1);
  for (int k = 0; k <= top; ++k)
    out.b[k] = data.counts[k] - ranks[k] - ranks[k + 1];
  return out;
}

BettiVector pair_betti_from_link(const EmbeddedComplex& link) {
  BettiVector l = betti(link);
  BettiVector out;
  int top = link.dim();
  out.b.assign(static_cast<size_t>(top + 2 > 1 ? top + 2 : 1), 0);
  out.b[0] = l.reduced(-1);
  for (int k = 1; k <= top + 1; ++k) out.b[k] = l.reduced(k - 1);
  return out;
}

long euler_from_betti(const BettiVector& b) { return b.euler(); }

}  // namespace plcurv
