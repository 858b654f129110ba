#include "plcurv/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>

#include "plcurv/slicing.hpp"

namespace plcurv {

namespace {

constexpr double kPi = 3.14159265358979323846;

// A section through an interior point of a face must contain that point as a
// vertex; it is reconstructed through one small linear solve, so anything
// farther from the intrinsic origin than this is not the meeting vertex.
constexpr double kMeetingRadius = 1e-7;

// Reusable buffers for the combinatorial census, so the per-direction loop
// allocates nothing once warm.
struct CensusScratch {
  std::vector<double> h;   // global vertex heights
  std::vector<double> hr;  // star-relative heights
  std::vector<int> parent; // union-find over link nodes, -1 = unused
};

// Combinatorial direction census for complexes of dimension <= 2 (always the
// case in ambient dimension <= 2). The directional link of a vertex is a
// graph whose nodes are the star edges on the positive side plus the
// crossings of straddling opposite edges, with one segment per star triangle
// that has a corner on the positive side. Counting nodes, segments and
// components gives every map's index without building the link complex.
class StarCensus {
 public:
  explicit StarCensus(const EmbeddedComplex& x) : x_(&x) {
    int nv = x.vertex_count();
    nbr_.resize(nv);
    tris_.resize(nv);
    for (const auto& s : x.simplices(0)) verts_.push_back(s[0]);
    if (x.dim() >= 1) {
      for (const auto& e : x.simplices(1)) {
        nbr_[e[0]].push_back(e[1]);
        nbr_[e[1]].push_back(e[0]);
      }
    }
    if (x.dim() >= 2) {
      for (const auto& t : x.simplices(2)) {
        for (int c = 0; c < 3; ++c) {
          int v = t[c], u = t[(c + 1) % 3], w = t[(c + 2) % 3];
          tris_[v].emplace_back(position(v, u), position(v, w));
        }
      }
    }
    for (int v : verts_) {
      max_deg_ = std::max(max_deg_, static_cast<int>(nbr_[v].size()));
      max_nodes_ = std::max(
          max_nodes_, static_cast<int>(nbr_[v].size() + tris_[v].size()));
    }
  }

  long run(const Vector& a, CurvatureMap map, CensusScratch& s) const {
    const EmbeddedComplex& x = *x_;
    int nv = x.vertex_count();
    s.h.resize(nv);
    for (int i = 0; i < nv; ++i) s.h[i] = a.dot(x.vertex(i));
    s.hr.resize(max_deg_);
    s.parent.resize(max_nodes_);
    long total = 0;
    for (int v : verts_) {
      const auto& nb = nbr_[v];
      const auto& tt = tris_[v];
      int ne = static_cast<int>(nb.size());
      int nt = static_cast<int>(tt.size());
      int nodes = 0;
      for (int j = 0; j < ne; ++j) {
        double d = s.h[nb[j]] - s.h[v];
        if (std::abs(d) <= tol().degeneracy)
          throw DegeneracyError("direction grazes a star vertex");
        s.hr[j] = d;
        if (d > 0) ++nodes;
      }
      if (nodes == 0) {
        total += 1;  // empty link: every map's index is one
        continue;
      }
      if (map == CurvatureMap::Components) continue;
      if (map == CurvatureMap::Euler) {
        int segs = 0;
        for (const auto& [j1, j2] : tt) {
          bool p1 = s.hr[j1] > 0, p2 = s.hr[j2] > 0;
          if (p1 && p2) {
            ++segs;
          } else if (p1 || p2) {
            ++segs;
            ++nodes;  // crossing of the straddling opposite edge
          }
        }
        total += 1 - (nodes - segs);
        continue;
      }
      // Absolute map: component count via union-find.
      int nn = ne + nt;
      for (int i = 0; i < nn; ++i) s.parent[i] = -1;
      auto find = [&](int i) {
        while (s.parent[i] != i) {
          s.parent[i] = s.parent[s.parent[i]];
          i = s.parent[i];
        }
        return i;
      };
      for (int j = 0; j < ne; ++j)
        if (s.hr[j] > 0) s.parent[j] = j;
      int segs = 0;
      for (int t = 0; t < nt; ++t) {
        auto [j1, j2] = tt[t];
        bool p1 = s.hr[j1] > 0, p2 = s.hr[j2] > 0;
        int u, w;
        if (p1 && p2) {
          u = j1;
          w = j2;
        } else if (p1 || p2) {
          u = p1 ? j1 : j2;
          w = ne + t;
          s.parent[w] = w;
          ++nodes;
        } else {
          continue;
        }
        ++segs;
        int ru = find(u), rw = find(w);
        if (ru != rw) s.parent[ru] = rw;
      }
      int b0 = 0;
      for (int i = 0; i < nn; ++i)
        if (s.parent[i] != -1 && find(i) == i) ++b0;
      long b1 = segs - nodes + b0;
      total += (b0 + b1) - 1;
    }
    return total;
  }

 private:
  int position(int v, int u) const {
    const auto& nb = nbr_[v];
    return static_cast<int>(std::find(nb.begin(), nb.end(), u) - nb.begin());
  }

  const EmbeddedComplex* x_;
  std::vector<int> verts_;
  std::vector<std::vector<int>> nbr_;
  std::vector<std::vector<std::pair<int, int>>> tris_;
  int max_deg_ = 0;
  int max_nodes_ = 0;
};

void require_material_vertex(const EmbeddedComplex& x, int v) {
  if (v < 0 || v >= x.vertex_count())
    throw std::out_of_range("vertex index out of range");
  if (!x.has_simplex({v}))
    throw std::invalid_argument("vertex is not a simplex of the complex");
}

// Orthonormal basis of the orthogonal complement of the face's direction
// space, via the full Q factor of the edge matrix.
Matrix face_complement_frame(const EmbeddedComplex& x, const Face& f) {
  int n = x.ambient_dim();
  int k = f.dim();
  Matrix d(n, k);
  for (int j = 1; j <= k; ++j)
    d.col(j - 1) = x.vertex(f.indices[j]) - x.vertex(f.indices[0]);
  Eigen::HouseholderQR<Matrix> qr(d);
  Matrix q = qr.householderQ();
  return q.rightCols(n - k);
}

// Deterministic interior points of a face: the barycenter first, then
// bounded weight perturbations that stay strictly inside.
Vector face_interior_point(const EmbeddedComplex& x, const Face& f, int attempt) {
  int m = static_cast<int>(f.indices.size());
  std::vector<double> w(m, 1.0);
  if (attempt > 0)
    for (int j = 0; j < m; ++j)
      w[j] = 1.0 + 0.3 * std::sin(attempt * (j + 1) * 1.6180339887498949);
  double sum = std::accumulate(w.begin(), w.end(), 0.0);
  Vector b = Vector::Zero(x.ambient_dim());
  for (int j = 0; j < m; ++j) b += (w[j] / sum) * x.vertex(f.indices[j]);
  return b;
}

// Index of the section vertex at the intrinsic origin, -1 when absent.
int meeting_vertex(const EmbeddedComplex& section) {
  int best = -1;
  double best_norm = kMeetingRadius;
  if (section.empty()) return -1;
  for (const auto& s : section.simplices(0)) {
    double nrm = section.vertex(s[0]).norm();
    if (nrm <= best_norm) {
      best_norm = nrm;
      best = s[0];
    }
  }
  return best;
}

}  // namespace

CurvatureMap curvature_map_from_string(const std::string& name) {
  if (name == "sigma") return CurvatureMap::Euler;
  if (name == "tau") return CurvatureMap::Absolute;
  if (name == "b0") return CurvatureMap::Components;
  throw std::invalid_argument("unknown curvature map '" + name +
                              "' (expected sigma, tau or b0)");
}

std::string to_string(CurvatureMap map) {
  switch (map) {
    case CurvatureMap::Euler:
      return "sigma";
    case CurvatureMap::Absolute:
      return "tau";
    case CurvatureMap::Components:
      return "b0";
  }
  return "";
}

long index_from_pair_betti(const BettiVector& pb, CurvatureMap map) {
  switch (map) {
    case CurvatureMap::Euler:
      return pb.euler();
    case CurvatureMap::Absolute:
      return pb.total();
    case CurvatureMap::Components:
      return pb.betti(0);
  }
  return 0;
}

long link_index(const EmbeddedComplex& link, CurvatureMap map) {
  switch (map) {
    case CurvatureMap::Euler:
      return 1 - euler_characteristic(link);
    case CurvatureMap::Absolute:
      return link.empty() ? 1 : betti(link).total() - 1;
    case CurvatureMap::Components:
      return link.empty() ? 1 : 0;
  }
  return 0;
}

long direction_census_links(const EmbeddedComplex& x, const Vector& a,
                            CurvatureMap map) {
  if (x.empty()) return 0;
  long total = 0;
  for (const auto& s : x.simplices(0))
    total += link_index(directional_link(x, s[0], a), map);
  return total;
}

long direction_census(const EmbeddedComplex& x, const Vector& a,
                      CurvatureMap map) {
  if (x.empty()) return 0;
  if (x.ambient_dim() == 0) return x.count(0);
  if (x.ambient_dim() <= 2) {
    StarCensus engine(x);
    CensusScratch scratch;
    return engine.run(a, map, scratch);
  }
  return direction_census_links(x, a, map);
}

MeasureEstimate vertex_measure(const EmbeddedComplex& x, int v, CurvatureMap map,
                               long samples, RngStream rng) {
  if (samples <= 0) throw std::invalid_argument("vertex_measure: samples must be positive");
  require_material_vertex(x, v);
  int n = x.ambient_dim();
  if (n == 0) return {1.0, 0.0, samples, 0};
  std::vector<double> values(samples);
  long rejections = 0;
  for (long i = 0; i < samples; ++i) {
    RngStream s = rng.substream(static_cast<std::uint64_t>(i));
    for (int attempt = 0;; ++attempt) {
      if (attempt > tol().max_rejections)
        throw NearDegeneracyError("vertex measure exhausted its rejection budget");
      Vector a = random_direction(n, s);
      try {
        values[i] = static_cast<double>(link_index(directional_link(x, v, a), map));
        break;
      } catch (const DegeneracyError&) {
        ++rejections;
      } catch (const NearDegeneracyError&) {
        ++rejections;
      }
    }
  }
  return summarize(values, rejections);
}

double vertex_measure_exact(const EmbeddedComplex& x, int v, CurvatureMap map) {
  require_material_vertex(x, v);
  int n = x.ambient_dim();
  if (n == 0) return 1.0;
  if (n > 2)
    throw std::invalid_argument("exact vertex measure needs ambient dimension <= 2");
  if (n == 1) {
    Vector plus(1), minus(1);
    plus << 1.0;
    minus << -1.0;
    return 0.5 * (link_index(directional_link(x, v, plus), map) +
                  link_index(directional_link(x, v, minus), map));
  }
  // Ambient dimension 2: the index is constant between consecutive directions
  // orthogonal to star vertex offsets, so integrate over that subdivision.
  EmbeddedComplex st = star(x, v);
  std::vector<double> breaks;
  for (const auto& s : st.simplices(0)) {
    if (s[0] == v) continue;
    Vector d = x.vertex(s[0]) - x.vertex(v);
    double theta = std::atan2(d[1], d[0]);
    for (double b : {theta + kPi / 2, theta - kPi / 2}) {
      b = std::fmod(b, 2 * kPi);
      if (b < 0) b += 2 * kPi;
      breaks.push_back(b);
    }
  }
  if (breaks.empty()) return 1.0;  // isolated vertex, empty link everywhere
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> bp;
  for (double b : breaks)
    if (bp.empty() || b - bp.back() > 1e-12) bp.push_back(b);
  if (bp.size() > 1 && bp.front() + 2 * kPi - bp.back() <= 1e-12) bp.pop_back();
  double acc = 0.0;
  int m = static_cast<int>(bp.size());
  for (int i = 0; i < m; ++i) {
    double lo = bp[i];
    double hi = (i + 1 < m) ? bp[i + 1] : bp[0] + 2 * kPi;
    double len = hi - lo;
    if (len < 1e-12) continue;
    // Any interior point of the interval sees the same link; step off the
    // midpoint if it happens to graze a star vertex numerically.
    long idx = 0;
    bool done = false;
    for (double frac : {0.5, 0.25, 0.75, 0.375, 0.625}) {
      double theta = lo + frac * len;
      Vector a(2);
      a << std::cos(theta), std::sin(theta);
      try {
        idx = link_index(directional_link(x, v, a), map);
        done = true;
        break;
      } catch (const DegeneracyError&) {
      } catch (const NearDegeneracyError&) {
      }
    }
    if (!done)
      throw NearDegeneracyError("angular interval too thin to evaluate");
    acc += static_cast<double>(idx) * len;
  }
  return acc / (2 * kPi);
}

MeasureEstimate face_measure(const EmbeddedComplex& x, const Face& f,
                             CurvatureMap map, long samples, RngStream rng) {
  int n = x.ambient_dim();
  int k = f.dim();
  if (!x.has_simplex(f.indices))
    throw std::invalid_argument("face_measure: not a face of the complex");
  if (k == n) return {1.0, 0.0, samples, 0};
  if (k == 0) return vertex_measure(x, f.indices[0], map, samples, rng);
  Matrix comp = face_complement_frame(x, f);
  for (int attempt = 0; attempt < tol().max_perturbations; ++attempt) {
    Vector b = face_interior_point(x, f, attempt);
    EmbeddedComplex section(0);
    try {
      section = flat_section(x, Flat(b, comp));
    } catch (const DegeneracyError&) {
      continue;
    } catch (const NearDegeneracyError&) {
      continue;
    }
    int v0 = meeting_vertex(section);
    if (v0 < 0) continue;
    MeasureEstimate est = vertex_measure(section, v0, map, samples, rng);
    est.rejections += attempt;
    return est;
  }
  throw NearDegeneracyError(
      "face section stayed degenerate through interior point changes");
}

double face_measure_exact(const EmbeddedComplex& x, const Face& f,
                          CurvatureMap map) {
  int n = x.ambient_dim();
  int k = f.dim();
  if (!x.has_simplex(f.indices))
    throw std::invalid_argument("face_measure_exact: not a face of the complex");
  if (k == n) return 1.0;
  if (k == 0) return vertex_measure_exact(x, f.indices[0], map);
  if (n - k > 2)
    throw std::invalid_argument("exact face measure needs codimension <= 2");
  Matrix comp = face_complement_frame(x, f);
  for (int attempt = 0; attempt < tol().max_perturbations; ++attempt) {
    Vector b = face_interior_point(x, f, attempt);
    EmbeddedComplex section(0);
    try {
      section = flat_section(x, Flat(b, comp));
    } catch (const DegeneracyError&) {
      continue;
    } catch (const NearDegeneracyError&) {
      continue;
    }
    int v0 = meeting_vertex(section);
    if (v0 < 0) continue;
    return vertex_measure_exact(section, v0, map);
  }
  throw NearDegeneracyError(
      "face section stayed degenerate through interior point changes");
}

MeasureEstimate total_curvature(const EmbeddedComplex& x, CurvatureMap map,
                                long samples, RngStream rng, int threads) {
  if (samples <= 0)
    throw std::invalid_argument("total_curvature: samples must be positive");
  int n = x.ambient_dim();
  if (x.empty()) return {0.0, 0.0, samples, 0};
  if (n == 0) return {static_cast<double>(x.count(0)), 0.0, samples, 0};
  std::optional<StarCensus> engine;
  if (n <= 2) engine.emplace(x);
  std::vector<double> values(samples);
  std::vector<long> rej(samples, 0);
  std::vector<std::exception_ptr> errors(samples);
  parallel_for(threads, samples, [&](long i) {
    try {
      RngStream s = rng.substream(static_cast<std::uint64_t>(i));
      CensusScratch scratch;
      for (int attempt = 0;; ++attempt) {
        if (attempt > tol().max_rejections)
          throw NearDegeneracyError("census exhausted its rejection budget");
        Vector a = random_direction(n, s);
        try {
          long c = engine ? engine->run(a, map, scratch)
                          : direction_census_links(x, a, map);
          values[i] = static_cast<double>(c);
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

MeasureEstimate wk(const EmbeddedComplex& x, int k, CurvatureMap map,
                   long samples, RngStream rng, int threads) {
  int n = x.ambient_dim();
  if (k < 0 || k > n)
    throw std::out_of_range("wk: degree outside [0, ambient dimension]");
  if (k == n) return {total_volume(x, n), 0.0, 0, 0};
  if (x.empty() || k > x.dim()) return {0.0, 0.0, 0, 0};
  const auto& faces = x.simplices(k);
  long m = static_cast<long>(faces.size());
  std::vector<double> means(m, 0.0), vars(m, 0.0);
  std::vector<long> rejs(m, 0);
  std::vector<std::exception_ptr> errors(m);
  parallel_for(threads, m, [&](long i) {
    try {
      Face f{faces[i]};
      double vol = face_volume(x, f);
      MeasureEstimate est =
          face_measure(x, f, map, samples, rng.substream(static_cast<std::uint64_t>(i)));
      means[i] = vol * est.mean;
      vars[i] = (vol * est.std_error) * (vol * est.std_error);
      rejs[i] = est.rejections;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  MeasureEstimate out;
  out.mean = std::accumulate(means.begin(), means.end(), 0.0);
  out.std_error = std::sqrt(std::accumulate(vars.begin(), vars.end(), 0.0));
  out.samples = samples;
  out.rejections = std::accumulate(rejs.begin(), rejs.end(), 0L);
  return out;
}

double wk_exact(const EmbeddedComplex& x, int k, CurvatureMap map) {
  int n = x.ambient_dim();
  if (n > 2)
    throw std::invalid_argument("wk_exact needs ambient dimension <= 2");
  if (k < 0 || k > n)
    throw std::out_of_range("wk_exact: degree outside [0, ambient dimension]");
  if (k == n) return total_volume(x, n);
  if (x.empty() || k > x.dim()) return 0.0;
  double acc = 0.0;
  for (const auto& s : x.simplices(k)) {
    Face f{s};
    acc += face_volume(x, f) * face_measure_exact(x, f, map);
  }
  return acc;
}

}  // namespace plcurv
