#include "plcurv/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace plcurv {

namespace {

// Coordinate store with merge-on-insert: points closer than the geometric
// tolerance share one id, so cells built from different simplices agree on
// their shared vertices.
struct VertexPool {
  std::vector<Vector> pts;

  int insert(const Vector& p) {
    for (size_t i = 0; i < pts.size(); ++i)
      if ((pts[i] - p).norm() < tol().geometric) return static_cast<int>(i);
    pts.push_back(p);
    return static_cast<int>(pts.size()) - 1;
  }
};

// Constructor failures caused by collapsed geometry become near-degeneracy
// reports so randomized callers can redraw; anything else is a real bug and
// propagates unchanged.
EmbeddedComplex assemble(int n, std::vector<Vector> pts,
                         const std::vector<std::vector<int>>& cells,
                         const char* what) {
  try {
    return EmbeddedComplex(n, std::move(pts), cells);
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    if (msg.find("degenerate") != std::string::npos ||
        msg.find("duplicate") != std::string::npos)
      throw NearDegeneracyError(std::string(what) + ": " + msg);
    throw;
  }
}

std::vector<Vector> pool_points(const VertexPool& pool, const std::vector<int>& ids) {
  std::vector<Vector> pts;
  pts.reserve(ids.size());
  for (int id : ids) pts.push_back(pool.pts[id]);
  return pts;
}

}  // namespace

EmbeddedComplex hyperplane_section(const EmbeddedComplex& x, const Vector& p,
                                   const Vector& u) {
  const int n = x.ambient_dim();
  if (p.size() != n || u.size() != n)
    throw std::invalid_argument("dimension mismatch in hyperplane section");
  const double ulen = u.norm();
  if (ulen <= tol().degeneracy) throw std::invalid_argument("zero normal");
  const Vector nu = u / ulen;
  if (x.empty()) return EmbeddedComplex(n);

  const int nv = x.vertex_count();
  std::vector<double> h(nv, 0.0);
  std::vector<int> cls(nv, 0);  // -1 below, 0 on the plane, +1 above
  for (int i = 0; i < nv; ++i) {
    h[i] = nu.dot(x.vertex(i) - p);
    cls[i] = std::abs(h[i]) <= tol().degeneracy ? 0 : (h[i] > 0.0 ? 1 : -1);
  }

  // A plane through a whole edge (hence any higher face) is not transversal.
  if (x.dim() >= 1)
    for (const auto& e : x.simplices(1))
      if (cls[e[0]] == 0 && cls[e[1]] == 0)
        throw DegeneracyError("cutting plane contains an edge");

  VertexPool pool;
  std::vector<int> on_id(nv, -1);
  std::vector<int> cross_id;
  if (x.dim() >= 1) {
    const auto& edges = x.simplices(1);
    cross_id.assign(edges.size(), -1);
    for (size_t e = 0; e < edges.size(); ++e) {
      const int i = edges[e][0], j = edges[e][1];
      if (cls[i] * cls[j] < 0) {
        const double t = h[i] / (h[i] - h[j]);
        cross_id[e] = pool.insert(x.vertex(i) + t * (x.vertex(j) - x.vertex(i)));
      }
    }
  }
  auto on_plane_id = [&](int v) {
    if (on_id[v] < 0) on_id[v] = pool.insert(x.vertex(v));
    return on_id[v];
  };

  // memo[k][i] = maximal cells of the section of the i-th k-simplex,
  // as sorted pool id tuples; built in increasing dimension so facet
  // sections are available when a polytope cell needs its boundary.
  std::vector<std::vector<std::vector<std::vector<int>>>> memo(x.dim() + 1);
  std::vector<std::vector<int>> cells;

  for (int k = 0; k <= x.dim(); ++k) {
    const auto& sk = x.simplices(k);
    memo[k].resize(sk.size());
    for (size_t si = 0; si < sk.size(); ++si) {
      const auto& s = sk[si];
      int pos = 0, neg = 0, zer = 0;
      for (int i : s) {
        if (cls[i] > 0) ++pos;
        else if (cls[i] < 0) ++neg;
        else ++zer;
      }
      if (zer == 0 && (pos == 0 || neg == 0)) continue;
      auto& out = memo[k][si];

      if (pos == 0 || neg == 0) {
        // touches the plane in exactly one vertex: two would put an edge in
        // the plane, which was rejected above
        int v = -1;
        for (int i : s)
          if (cls[i] == 0) v = i;
        out.push_back({on_plane_id(v)});
      } else {
        // transversal: on-plane vertices plus straddled edge crossings are
        // the extreme points of the section of this simplex
        std::vector<int> ids;
        for (int i : s)
          if (cls[i] == 0) ids.push_back(on_plane_id(i));
        for (size_t a = 0; a < s.size(); ++a)
          for (size_t b = a + 1; b < s.size(); ++b)
            if (cls[s[a]] * cls[s[b]] < 0) {
              const long e = x.simplex_index({s[a], s[b]});
              ids.push_back(cross_id[e]);
            }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

        if (static_cast<int>(ids.size()) < k)
          throw NearDegeneracyError("section cell collapsed");
        if (static_cast<int>(ids.size()) == k) {
          if (affinely_degenerate(pool_points(pool, ids)))
            throw NearDegeneracyError("sliver section cell");
          out.push_back(ids);
        } else {
          // a non-simplex polytope: cone its boundary from the centroid;
          // the boundary cells are the full-dimensional cells of the facet
          // sections, which are already triangulated
          Vector c = Vector::Zero(n);
          for (int id : ids) c += pool.pts[id];
          c /= static_cast<double>(ids.size());
          const int cid = pool.insert(c);

          std::set<std::vector<int>> bnd;
          std::vector<int> f(s.size() - 1);
          for (size_t skip = 0; skip < s.size(); ++skip) {
            size_t w = 0;
            for (size_t i = 0; i < s.size(); ++i)
              if (i != skip) f[w++] = s[i];
            const long fi = x.simplex_index(f);
            for (const auto& cell : memo[k - 1][fi])
              if (static_cast<int>(cell.size()) == k - 1) bnd.insert(cell);
          }
          if (bnd.empty()) throw NearDegeneracyError("cone with no boundary");
          for (const auto& b : bnd) {
            std::vector<int> cell = b;
            cell.push_back(cid);
            std::sort(cell.begin(), cell.end());
            if (affinely_degenerate(pool_points(pool, cell)))
              throw NearDegeneracyError("sliver cone cell");
            out.push_back(std::move(cell));
          }
        }
      }
      for (const auto& cell : out) cells.push_back(cell);
    }
  }

  if (cells.empty()) return EmbeddedComplex(n);
  return assemble(n, pool.pts, cells, "hyperplane section");
}

EmbeddedComplex flat_section(const EmbeddedComplex& x, const Flat& flat) {
  const int n = x.ambient_dim();
  if (flat.ambient_dim() != n)
    throw std::invalid_argument("flat ambient dimension mismatch");

  EmbeddedComplex cur = x;
  const Matrix normals = flat.orthogonal_complement();
  for (int j = 0; j < normals.cols(); ++j) {
    cur = hyperplane_section(cur, flat.base, normals.col(j));
    if (cur.empty()) break;
  }

  const int k = flat.dim();
  std::vector<Vector> verts;
  verts.reserve(cur.vertex_count());
  for (int i = 0; i < cur.vertex_count(); ++i)
    verts.push_back(flat.frame.transpose() * (cur.vertex(i) - flat.base));
  if (cur.empty()) return EmbeddedComplex(k);
  return assemble(k, std::move(verts), cur.maximal_simplices(), "flat section");
}

EmbeddedComplex directional_link(const EmbeddedComplex& x, int v, const Vector& a,
                                 double delta_scale) {
  const int n = x.ambient_dim();
  if (v < 0 || v >= x.vertex_count())
    throw std::invalid_argument("vertex index out of range");
  if (a.size() != n) throw std::invalid_argument("direction dimension mismatch");
  if (!(delta_scale > 0.0 && delta_scale < 2.0))
    throw std::invalid_argument("delta_scale must lie in (0,2)");
  const double alen = a.norm();
  if (alen <= tol().degeneracy) throw std::invalid_argument("zero direction");
  const Vector dir = a / alen;

  EmbeddedComplex st = star(x, v);
  if (st.empty()) return EmbeddedComplex(n);

  const Vector& base = x.vertex(v);
  double minpos = std::numeric_limits<double>::infinity();
  for (const auto& s0 : st.simplices(0)) {
    const int w = s0[0];
    if (w == v) continue;
    const double hw = dir.dot(x.vertex(w) - base);
    if (std::abs(hw) <= tol().degeneracy)
      throw DegeneracyError("direction grazes a star vertex");
    if (hw > 0.0) minpos = std::min(minpos, hw);
  }
  if (!std::isfinite(minpos)) return EmbeddedComplex(n);

  const double delta = 0.5 * delta_scale * minpos;
  return hyperplane_section(st, base + delta * dir, dir);
}

// ---------------------------------------------------------------------------
// Simplex pair intersection.
//
// Each hull is carried as an H-representation: unit-normal equalities pinning
// the affine hull, and unit-gradient barycentric inequalities. Extreme points
// of the intersection are enumerated from full-rank subsystems and filtered
// through a two-threshold feasibility test: violations at most the geometric
// tolerance pass, violations beyond the near band fail, and the band between
// raises NearDegeneracyError.

namespace {

constexpr int kMaxDim = 4;

struct HullData {
  int n = 0;
  int neq = 0;
  double eq[kMaxDim][kMaxDim];
  double eqoff[kMaxDim];
  int niq = 0;
  double iq[kMaxDim + 1][kMaxDim];
  double iqc[kMaxDim + 1];
  double lo[kMaxDim];
  double hi[kMaxDim];
};

double dotn(int n, const double* a, const double* b) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Solve the k x k system g * y = rhs in place; returns false near singular.
bool solve_small(int k, double g[kMaxDim][kMaxDim], double rhs[kMaxDim][kMaxDim],
                 int nrhs) {
  int perm[kMaxDim];
  for (int i = 0; i < k; ++i) perm[i] = i;
  for (int c = 0; c < k; ++c) {
    int best = c;
    for (int r = c + 1; r < k; ++r)
      if (std::abs(g[perm[r]][c]) > std::abs(g[perm[best]][c])) best = r;
    std::swap(perm[c], perm[best]);
    const double piv = g[perm[c]][c];
    if (std::abs(piv) < 1e-12) return false;
    for (int r = c + 1; r < k; ++r) {
      const double m = g[perm[r]][c] / piv;
      if (m == 0.0) continue;
      for (int j = c; j < k; ++j) g[perm[r]][j] -= m * g[perm[c]][j];
      for (int j = 0; j < nrhs; ++j) rhs[perm[r]][j] -= m * rhs[perm[c]][j];
    }
  }
  for (int c = k - 1; c >= 0; --c) {
    for (int j = 0; j < nrhs; ++j) {
      double s = rhs[perm[c]][j];
      for (int t = c + 1; t < k; ++t) s -= g[perm[c]][t] * rhs[perm[t]][j];
      rhs[perm[c]][j] = s / g[perm[c]][c];
    }
  }
  // undo the permutation
  double tmp[kMaxDim][kMaxDim];
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < nrhs; ++j) tmp[i][j] = rhs[perm[i]][j];
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < nrhs; ++j) rhs[i][j] = tmp[i][j];
  return true;
}

HullData build_hull(const std::vector<Vector>& pts) {
  HullData hd;
  const int n = static_cast<int>(pts[0].size());
  const int k = static_cast<int>(pts.size()) - 1;
  if (n > kMaxDim) throw std::invalid_argument("ambient dimension above 4");
  hd.n = n;

  for (int c = 0; c < n; ++c) {
    hd.lo[c] = hd.hi[c] = pts[0](c);
    for (size_t i = 1; i < pts.size(); ++i) {
      hd.lo[c] = std::min(hd.lo[c], pts[i](c));
      hd.hi[c] = std::max(hd.hi[c], pts[i](c));
    }
  }

  double p0[kMaxDim];
  for (int c = 0; c < n; ++c) p0[c] = pts[0](c);

  // orthonormal basis of the edge directions
  double dir[kMaxDim][kMaxDim];
  int nd = 0;
  double edges[kMaxDim][kMaxDim];
  for (int j = 0; j < k; ++j) {
    double v[kMaxDim];
    for (int c = 0; c < n; ++c) {
      v[c] = pts[j + 1](c) - p0[c];
      edges[j][c] = v[c];
    }
    for (int rep = 0; rep < 2; ++rep)
      for (int d = 0; d < nd; ++d) {
        const double pr = dotn(n, v, dir[d]);
        for (int c = 0; c < n; ++c) v[c] -= pr * dir[d][c];
      }
    const double vn = std::sqrt(dotn(n, v, v));
    if (vn < 1e-12) throw std::invalid_argument("degenerate simplex for hull");
    for (int c = 0; c < n; ++c) dir[nd][c] = v[c] / vn;
    ++nd;
  }

  // affine hull equalities from the orthogonal complement
  for (int cand = 0; cand < n && hd.neq < n - k; ++cand) {
    double v[kMaxDim] = {0, 0, 0, 0};
    v[cand] = 1.0;
    for (int rep = 0; rep < 2; ++rep) {
      for (int d = 0; d < nd; ++d) {
        const double pr = dotn(n, v, dir[d]);
        for (int c = 0; c < n; ++c) v[c] -= pr * dir[d][c];
      }
      for (int d = 0; d < hd.neq; ++d) {
        const double pr = dotn(n, v, hd.eq[d]);
        for (int c = 0; c < n; ++c) v[c] -= pr * hd.eq[d][c];
      }
    }
    const double vn = std::sqrt(dotn(n, v, v));
    if (vn < 1e-6) continue;
    for (int c = 0; c < n; ++c) hd.eq[hd.neq][c] = v[c] / vn;
    hd.eqoff[hd.neq] = dotn(n, hd.eq[hd.neq], p0);
    ++hd.neq;
  }
  if (hd.neq != n - k)
    throw std::invalid_argument("failed to span the hull complement");

  if (k == 0) return hd;

  // barycentric gradients: columns of D * inverse(Gram)
  double g[kMaxDim][kMaxDim];
  double ginv[kMaxDim][kMaxDim] = {};
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) g[i][j] = dotn(n, edges[i], edges[j]);
    ginv[i][i] = 1.0;
  }
  if (!solve_small(k, g, ginv, k))
    throw std::invalid_argument("degenerate simplex for hull");

  double sumg[kMaxDim] = {0, 0, 0, 0};
  for (int i = 0; i < k; ++i) {
    double gi[kMaxDim] = {0, 0, 0, 0};
    for (int c = 0; c < n; ++c)
      for (int j = 0; j < k; ++j) gi[c] += edges[j][c] * ginv[j][i];
    for (int c = 0; c < n; ++c) sumg[c] += gi[c];
    const double s = std::sqrt(dotn(n, gi, gi));
    for (int c = 0; c < n; ++c) hd.iq[hd.niq][c] = gi[c] / s;
    hd.iqc[hd.niq] = -dotn(n, gi, p0) / s;
    ++hd.niq;
  }
  {
    const double s = std::sqrt(dotn(n, sumg, sumg));
    for (int c = 0; c < n; ++c) hd.iq[hd.niq][c] = -sumg[c] / s;
    hd.iqc[hd.niq] = (1.0 + dotn(n, sumg, p0)) / s;
    ++hd.niq;
  }
  return hd;
}

std::vector<Vector> intersect_hulls(const HullData& h1, const HullData& h2) {
  const int n = h1.n;
  std::vector<Vector> out;

  // only a clear coordinate gap may skip the full test: anything inside the
  // ambiguity band must reach the banded feasibility predicates below
  for (int c = 0; c < n; ++c)
    if (h1.lo[c] > h2.hi[c] + tol().near_band ||
        h2.lo[c] > h1.hi[c] + tol().near_band)
      return out;

  // merged constraint lists
  const int meq = h1.neq + h2.neq;
  double eq[2 * kMaxDim][kMaxDim];
  double eqoff[2 * kMaxDim];
  for (int i = 0; i < h1.neq; ++i) {
    for (int c = 0; c < n; ++c) eq[i][c] = h1.eq[i][c];
    eqoff[i] = h1.eqoff[i];
  }
  for (int i = 0; i < h2.neq; ++i) {
    for (int c = 0; c < n; ++c) eq[h1.neq + i][c] = h2.eq[i][c];
    eqoff[h1.neq + i] = h2.eqoff[i];
  }
  const int miq = h1.niq + h2.niq;
  double iq[2 * kMaxDim + 2][kMaxDim];
  double iqc[2 * kMaxDim + 2];
  for (int i = 0; i < h1.niq; ++i) {
    for (int c = 0; c < n; ++c) iq[i][c] = h1.iq[i][c];
    iqc[i] = h1.iqc[i];
  }
  for (int i = 0; i < h2.niq; ++i) {
    for (int c = 0; c < n; ++c) iq[h1.niq + i][c] = h2.iq[i][c];
    iqc[h1.niq + i] = h2.iqc[i];
  }

  // reduce the equalities: find an independent subset and check consistency
  int pivots[kMaxDim];
  int npiv = 0;
  double pr[kMaxDim][kMaxDim + 1];  // eliminated pivot rows, trailing offset
  int pcol[kMaxDim];
  for (int i = 0; i < meq; ++i) {
    double tmp[kMaxDim + 1];
    for (int c = 0; c < n; ++c) tmp[c] = eq[i][c];
    tmp[n] = eqoff[i];
    for (int p = 0; p < npiv; ++p) {
      const double m = tmp[pcol[p]];
      if (m == 0.0) continue;
      for (int c = 0; c <= n; ++c) tmp[c] -= m * pr[p][c];
    }
    int cbest = 0;
    for (int c = 1; c < n; ++c)
      if (std::abs(tmp[c]) > std::abs(tmp[cbest])) cbest = c;
    if (std::abs(tmp[cbest]) > tol().geometric) {
      const double s = tmp[cbest];
      for (int c = 0; c <= n; ++c) pr[npiv][c] = tmp[c] / s;
      pcol[npiv] = cbest;
      pivots[npiv] = i;
      ++npiv;
    } else {
      const double resid = std::abs(tmp[n]);
      if (resid >= tol().near_band) return out;  // parallel hulls, separated
      if (resid > tol().geometric)
        throw NearDegeneracyError("affine hulls nearly meet");
    }
  }

  const int t = n - npiv;
  if (t > miq) return out;

  double a[kMaxDim][kMaxDim];
  double rhs[kMaxDim][kMaxDim];
  auto try_candidate = [&](const int* subset) {
    for (int r = 0; r < npiv; ++r) {
      for (int c = 0; c < n; ++c) a[r][c] = eq[pivots[r]][c];
      rhs[r][0] = eqoff[pivots[r]];
    }
    for (int r = 0; r < t; ++r) {
      for (int c = 0; c < n; ++c) a[npiv + r][c] = iq[subset[r]][c];
      rhs[npiv + r][0] = -iqc[subset[r]];
    }
    double m[kMaxDim][kMaxDim];
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < n; ++c) m[i][c] = a[i][c];
    if (!solve_small(n, m, rhs, 1)) return;
    double xs[kMaxDim];
    for (int c = 0; c < n; ++c) {
      xs[c] = rhs[c][0];
      if (!std::isfinite(xs[c])) return;
    }

    double viol = 0.0;
    for (int i = 0; i < meq; ++i)
      viol = std::max(viol, std::abs(dotn(n, eq[i], xs) - eqoff[i]));
    for (int i = 0; i < miq; ++i)
      viol = std::max(viol, -(dotn(n, iq[i], xs) + iqc[i]));
    if (viol >= tol().near_band) return;
    if (viol > tol().geometric)
      throw NearDegeneracyError("intersection vertex in the ambiguity band");

    Vector v(n);
    for (int c = 0; c < n; ++c) v(c) = xs[c];
    for (const auto& q : out)
      if ((q - v).norm() < tol().geometric) return;
    out.push_back(std::move(v));
  };

  if (t == 0) {
    int none[1] = {0};
    try_candidate(none);
    return out;
  }

  int subset[kMaxDim];
  for (int i = 0; i < t; ++i) subset[i] = i;
  while (true) {
    try_candidate(subset);
    int pos = t - 1;
    while (pos >= 0 && subset[pos] == miq - t + pos) --pos;
    if (pos < 0) break;
    ++subset[pos];
    for (int i = pos + 1; i < t; ++i) subset[i] = subset[i - 1] + 1;
  }
  return out;
}

int affine_rank(const std::vector<Vector>& pts) {
  if (pts.size() <= 1) return 0;
  double extent = 0.0;
  for (size_t i = 1; i < pts.size(); ++i)
    extent = std::max(extent, (pts[i] - pts[0]).norm());
  const double thresh = tol().geometric * std::max(1.0, extent);
  std::vector<Vector> basis;
  for (size_t i = 1; i < pts.size(); ++i) {
    Vector r = pts[i] - pts[0];
    for (int rep = 0; rep < 2; ++rep)
      for (const auto& b : basis) r -= b.dot(r) * b;
    const double rn = r.norm();
    if (rn > thresh) basis.push_back(r / rn);
  }
  return static_cast<int>(basis.size());
}

}  // namespace

std::vector<Vector> convex_intersection(const std::vector<Vector>& s1,
                                        const std::vector<Vector>& s2) {
  if (s1.empty() || s2.empty())
    throw std::invalid_argument("empty point list");
  if (s1[0].size() != s2[0].size())
    throw std::invalid_argument("ambient dimension mismatch");
  return intersect_hulls(build_hull(s1), build_hull(s2));
}

EmbeddedComplex complex_intersection(const EmbeddedComplex& x1,
                                     const EmbeddedComplex& x2) {
  const int n = x1.ambient_dim();
  if (x2.ambient_dim() != n)
    throw std::invalid_argument("ambient dimension mismatch");
  if (x1.empty() || x2.empty()) return EmbeddedComplex(n);

  // hull data per simplex, reused across all pairs
  struct Prep {
    std::vector<std::vector<HullData>> hull;
    std::vector<long> offset;  // flat simplex numbering per dimension
    long total = 0;
  };
  auto prep = [n](const EmbeddedComplex& x) {
    Prep p;
    p.hull.resize(x.dim() + 1);
    p.offset.resize(x.dim() + 2, 0);
    for (int k = 0; k <= x.dim(); ++k) {
      p.offset[k + 1] = p.offset[k] + x.count(k);
      const auto& sk = x.simplices(k);
      p.hull[k].reserve(sk.size());
      for (const auto& s : sk) {
        std::vector<Vector> pts;
        pts.reserve(s.size());
        for (int i : s) pts.push_back(x.vertex(i));
        p.hull[k].push_back(build_hull(pts));
      }
    }
    p.total = p.offset[x.dim() + 1];
    (void)n;
    return p;
  };
  const Prep p1 = prep(x1);
  const Prep p2 = prep(x2);

  VertexPool pool;
  std::map<std::uint64_t, std::vector<std::vector<int>>> memo;
  auto key = [&](int k1, long i1, int k2, long i2) {
    return static_cast<std::uint64_t>(p1.offset[k1] + i1) *
               static_cast<std::uint64_t>(p2.total) +
           static_cast<std::uint64_t>(p2.offset[k2] + i2);
  };

  std::set<std::vector<int>> all_cells;

  for (int total = 0; total <= x1.dim() + x2.dim(); ++total) {
    for (int k1 = std::max(0, total - x2.dim());
         k1 <= std::min(x1.dim(), total); ++k1) {
      const int k2 = total - k1;
      const auto& sk1 = x1.simplices(k1);
      const auto& sk2 = x2.simplices(k2);
      for (size_t i1 = 0; i1 < sk1.size(); ++i1) {
        for (size_t i2 = 0; i2 < sk2.size(); ++i2) {
          const std::vector<Vector> pts =
              intersect_hulls(p1.hull[k1][i1], p2.hull[k2][i2]);
          if (pts.empty()) continue;

          std::vector<int> ids;
          for (const auto& q : pts) ids.push_back(pool.insert(q));
          std::sort(ids.begin(), ids.end());
          ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
          const std::vector<Vector> upts = pool_points(pool, ids);
          const int d = affine_rank(upts);

          std::vector<std::vector<int>> cells;
          if (ids.size() == 1) {
            cells.push_back(ids);
          } else if (static_cast<int>(ids.size()) == d + 1) {
            if (affinely_degenerate(upts))
              throw NearDegeneracyError("sliver intersection cell");
            cells.push_back(ids);
          } else {
            Vector c = Vector::Zero(n);
            for (const auto& q : upts) c += q;
            c /= static_cast<double>(upts.size());
            const int cid = pool.insert(c);

            std::set<std::vector<int>> bnd;
            auto collect = [&](int fk1, long fi1, int fk2, long fi2) {
              auto it = memo.find(key(fk1, fi1, fk2, fi2));
              if (it == memo.end()) return;
              for (const auto& cell : it->second)
                if (static_cast<int>(cell.size()) == d) bnd.insert(cell);
            };
            if (k1 >= 1) {
              const auto& s = sk1[i1];
              std::vector<int> f(s.size() - 1);
              for (size_t skip = 0; skip < s.size(); ++skip) {
                size_t w = 0;
                for (size_t i = 0; i < s.size(); ++i)
                  if (i != skip) f[w++] = s[i];
                collect(k1 - 1, x1.simplex_index(f), k2, i2);
              }
            }
            if (k2 >= 1) {
              const auto& s = sk2[i2];
              std::vector<int> f(s.size() - 1);
              for (size_t skip = 0; skip < s.size(); ++skip) {
                size_t w = 0;
                for (size_t i = 0; i < s.size(); ++i)
                  if (i != skip) f[w++] = s[i];
                collect(k1, i1, k2 - 1, x2.simplex_index(f));
              }
            }
            if (bnd.empty())
              throw NearDegeneracyError("intersection cone with no boundary");
            for (const auto& b : bnd) {
              std::vector<int> cell = b;
              cell.push_back(cid);
              std::sort(cell.begin(), cell.end());
              if (affinely_degenerate(pool_points(pool, cell)))
                throw NearDegeneracyError("sliver intersection cone cell");
              cells.push_back(std::move(cell));
            }
          }

          for (const auto& cell : cells) all_cells.insert(cell);
          memo.emplace(key(k1, i1, k2, i2), std::move(cells));
        }
      }
    }
  }

  if (all_cells.empty()) return EmbeddedComplex(n);
  return assemble(n, pool.pts,
                  std::vector<std::vector<int>>(all_cells.begin(), all_cells.end()),
                  "intersection assembly");
}

}  // namespace plcurv
