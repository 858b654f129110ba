#include "plcurv/complex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace plcurv {

namespace {
bool simplex_degenerate(const EmbeddedComplex& x, const std::vector<int>& s);
}

EmbeddedComplex::EmbeddedComplex(int ambient_dim) : ambient_dim_(ambient_dim) {
  if (ambient_dim < 0) throw std::invalid_argument("negative ambient dimension");
}

EmbeddedComplex::EmbeddedComplex(int ambient_dim, std::vector<Vector> vertices,
                                 const std::vector<std::vector<int>>& maximal)
    : ambient_dim_(ambient_dim), vertices_(std::move(vertices)) {
  if (ambient_dim < 0) throw std::invalid_argument("negative ambient dimension");
  for (const auto& v : vertices_)
    if (v.size() != ambient_dim_)
      throw std::invalid_argument("vertex dimension mismatch");
  close_and_sort(maximal);
  for (int i = 0; i < vertex_count(); ++i)
    for (int j = i + 1; j < vertex_count(); ++j)
      if ((vertices_[i] - vertices_[j]).norm() < tol().geometric)
        throw std::invalid_argument("duplicate vertices within tolerance");
  for (int k = 1; k <= dim(); ++k)
    for (const auto& s : simplices(k))
      if (simplex_degenerate(*this, s))
        throw std::invalid_argument("degenerate simplex in input");
}

void EmbeddedComplex::close_and_sort(const std::vector<std::vector<int>>& maximal) {
  std::set<std::vector<int>> faces;
  std::vector<std::vector<int>> stack;
  for (const auto& s : maximal) {
    std::vector<int> t = s;
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end())
      throw std::invalid_argument("simplex repeats a vertex");
    for (int i : t)
      if (i < 0 || i >= vertex_count())
        throw std::invalid_argument("simplex index out of range");
    if (faces.insert(t).second) stack.push_back(std::move(t));
  }
  // generate faces breadth-first; small complexes, so a set is fine
  while (!stack.empty()) {
    std::vector<int> s = std::move(stack.back());
    stack.pop_back();
    if (s.size() == 1) continue;
    std::vector<int> f(s.size() - 1);
    for (size_t skip = 0; skip < s.size(); ++skip) {
      size_t w = 0;
      for (size_t i = 0; i < s.size(); ++i)
        if (i != skip) f[w++] = s[i];
      if (faces.insert(f).second) stack.push_back(f);
    }
  }
  int top = -1;
  for (const auto& s : faces) top = std::max(top, static_cast<int>(s.size()) - 1);
  simplices_.assign(top + 1, {});
  for (const auto& s : faces) simplices_[s.size() - 1].push_back(s);
  // std::set iterates lexicographically, which is also per-dimension sorted
}

const std::vector<std::vector<int>>& EmbeddedComplex::simplices(int k) const {
  static const std::vector<std::vector<int>> none;
  if (k < 0 || k > dim()) return none;
  return simplices_[k];
}

long EmbeddedComplex::count(int k) const {
  return static_cast<long>(simplices(k).size());
}

bool EmbeddedComplex::has_simplex(const std::vector<int>& s) const {
  return simplex_index(s) >= 0;
}

long EmbeddedComplex::simplex_index(const std::vector<int>& s) const {
  int k = static_cast<int>(s.size()) - 1;
  const auto& list = simplices(k);
  auto it = std::lower_bound(list.begin(), list.end(), s);
  if (it != list.end() && *it == s) return it - list.begin();
  return -1;
}

std::vector<std::vector<int>> EmbeddedComplex::maximal_simplices() const {
  std::vector<std::vector<int>> out;
  for (int k = 0; k <= dim(); ++k) {
    for (const auto& s : simplices_[k]) {
      if (k == dim()) {
        out.push_back(s);
        continue;
      }
      // s is maximal iff no (k+1)-simplex contains it
      bool covered = false;
      for (const auto& t : simplices_[k + 1]) {
        if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
          covered = true;
          break;
        }
      }
      if (!covered) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool EmbeddedComplex::operator==(const EmbeddedComplex& other) const {
  if (ambient_dim_ != other.ambient_dim_) return false;
  if (simplices_ != other.simplices_) return false;
  if (vertices_.size() != other.vertices_.size()) return false;
  for (size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] != other.vertices_[i]) return false;
  return true;
}

namespace {

// Gram determinant of the edge vectors from the first point.
double gram_det(const std::vector<Vector>& pts) {
  int k = static_cast<int>(pts.size()) - 1;
  Matrix d(pts[0].size(), k);
  for (int j = 0; j < k; ++j) d.col(j) = pts[j + 1] - pts[0];
  Matrix g = d.transpose() * d;
  return g.determinant();
}

bool simplex_degenerate(const EmbeddedComplex& x, const std::vector<int>& s) {
  std::vector<Vector> pts;
  pts.reserve(s.size());
  for (int i : s) pts.push_back(x.vertex(i));
  return affinely_degenerate(pts);
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<std::string> validate(const EmbeddedComplex& x) {
  std::vector<std::string> problems;
  auto complain = [&](const std::string& msg) { problems.push_back(msg); };

  for (int i = 0; i < x.vertex_count(); ++i)
    for (int j = i + 1; j < x.vertex_count(); ++j)
      if ((x.vertex(i) - x.vertex(j)).norm() < tol().geometric) {
        std::ostringstream os;
        os << "vertices " << i << " and " << j << " coincide within tolerance";
        complain(os.str());
      }

  for (int k = 0; k <= x.dim(); ++k) {
    for (const auto& s : x.simplices(k)) {
      if (k > x.ambient_dim()) {
        complain("simplex dimension exceeds ambient dimension");
        continue;
      }
      if (k >= 1) {
        // all proper faces must be present
        std::vector<int> f(s.size() - 1);
        for (size_t skip = 0; skip < s.size(); ++skip) {
          size_t w = 0;
          for (size_t i = 0; i < s.size(); ++i)
            if (i != skip) f[w++] = s[i];
          if (!x.has_simplex(f)) {
            std::ostringstream os;
            os << "missing face of a " << k << "-simplex";
            complain(os.str());
          }
        }
        if (simplex_degenerate(x, s)) {
          std::ostringstream os;
          os << k << "-simplex is affinely degenerate";
          complain(os.str());
        }
      }
    }
  }
  return problems;
}

EmbeddedComplex close_under_faces(int ambient_dim, std::vector<Vector> vertices,
                                  const std::vector<std::vector<int>>& maximal) {
  return EmbeddedComplex(ambient_dim, std::move(vertices), maximal);
}

std::vector<Face> skeleton(const EmbeddedComplex& x, int k) {
  std::vector<Face> out;
  for (const auto& s : x.simplices(k)) out.push_back(Face{s});
  return out;
}

EmbeddedComplex star(const EmbeddedComplex& x, int v) {
  if (v < 0 || v >= x.vertex_count()) throw std::out_of_range("star: bad vertex");
  std::vector<std::vector<int>> keep;
  for (int k = 0; k <= x.dim(); ++k)
    for (const auto& s : x.simplices(k))
      if (std::binary_search(s.begin(), s.end(), v)) keep.push_back(s);
  return EmbeddedComplex(x.ambient_dim(), x.vertices(), keep);
}

bool affinely_degenerate(const std::vector<Vector>& pts) {
  if (pts.size() < 2) return false;
  double scale = 0.0;
  for (size_t i = 1; i < pts.size(); ++i)
    scale = std::max(scale, (pts[i] - pts[0]).squaredNorm());
  double g = gram_det(pts);
  double floor = std::pow(tol().geometric, 2) * std::max(scale, 1e-12);
  return g < floor;
}

double face_volume(const EmbeddedComplex& x, const Face& f) {
  int k = f.dim();
  if (k < 0) throw std::invalid_argument("empty face");
  if (k == 0) return 1.0;
  std::vector<Vector> pts;
  for (int i : f.indices) pts.push_back(x.vertex(i));
  double g = gram_det(pts);
  return g <= 0.0 ? 0.0 : std::sqrt(g) / factorial(k);
}

double total_volume(const EmbeddedComplex& x, int k) {
  double v = 0.0;
  for (const auto& s : x.simplices(k)) v += face_volume(x, Face{s});
  return v;
}

long euler_characteristic(const EmbeddedComplex& x) {
  long chi = 0;
  for (int k = 0; k <= x.dim(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * x.count(k);
  return chi;
}

EmbeddedComplex subdivide_barycentric(const EmbeddedComplex& x) {
  // one new vertex per simplex
  std::map<std::vector<int>, int> id;
  std::vector<Vector> verts;
  for (int k = 0; k <= x.dim(); ++k) {
    for (const auto& s : x.simplices(k)) {
      Vector b = Vector::Zero(x.ambient_dim());
      for (int i : s) b += x.vertex(i);
      b /= static_cast<double>(s.size());
      id[s] = static_cast<int>(verts.size());
      verts.push_back(b);
    }
  }
  // maximal chains inside each maximal simplex
  std::vector<std::vector<int>> chains;
  std::vector<int> current;
  auto extend = [&](auto&& self, const std::vector<int>& s) -> void {
    current.push_back(id.at(s));
    if (s.size() == 1) {
      std::vector<int> c = current;
      std::sort(c.begin(), c.end());
      chains.push_back(std::move(c));
    } else {
      std::vector<int> f(s.size() - 1);
      for (size_t skip = 0; skip < s.size(); ++skip) {
        size_t w = 0;
        for (size_t i = 0; i < s.size(); ++i)
          if (i != skip) f[w++] = s[i];
        self(self, f);
      }
    }
    current.pop_back();
  };
  for (const auto& s : x.maximal_simplices()) extend(extend, s);
  return EmbeddedComplex(x.ambient_dim(), std::move(verts), chains);
}

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector v3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

EmbeddedComplex make_square() {
  std::vector<Vector> vs = {v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1)};
  return EmbeddedComplex(2, vs, {{0, 1, 2}, {0, 2, 3}});
}

EmbeddedComplex make_lshape() {
  // unit square minus its upper-right quarter, fanned from the origin
  std::vector<Vector> vs = {v2(0, 0),     v2(1, 0),   v2(1, 0.5),
                            v2(0.5, 0.5), v2(0.5, 1), v2(0, 1)};
  return EmbeddedComplex(2, vs, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}});
}

EmbeddedComplex make_annulus() {
  // unit square with a centered half-side hole; eight triangles around the band
  std::vector<Vector> vs = {v2(0, 0),        v2(1, 0),        v2(1, 1),
                            v2(0, 1),        v2(0.25, 0.25),  v2(0.75, 0.25),
                            v2(0.75, 0.75),  v2(0.25, 0.75)};
  std::vector<std::vector<int>> tris;
  for (int i = 0; i < 4; ++i) {
    int o0 = i, o1 = (i + 1) % 4;
    int i0 = 4 + i, i1 = 4 + (i + 1) % 4;
    tris.push_back({o0, o1, i0});
    tris.push_back({o1, i1, i0});
  }
  return EmbeddedComplex(2, vs, tris);
}

EmbeddedComplex make_cross() {
  std::vector<Vector> vs = {v2(0, 0), v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1)};
  return EmbeddedComplex(2, vs, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
}

EmbeddedComplex make_circle(int m) {
  if (m < 3) throw std::invalid_argument("circle needs at least 3 segments");
  std::vector<Vector> vs;
  std::vector<std::vector<int>> segs;
  for (int i = 0; i < m; ++i) {
    double th = 2.0 * M_PI * i / m;
    vs.push_back(v2(std::cos(th), std::sin(th)));
    segs.push_back({i, (i + 1) % m});
  }
  return EmbeddedComplex(2, vs, segs);
}

EmbeddedComplex make_disk(int m) {
  if (m < 3) throw std::invalid_argument("disk needs at least 3 segments");
  std::vector<Vector> vs = {v2(0, 0)};
  std::vector<std::vector<int>> tris;
  for (int i = 0; i < m; ++i) {
    double th = 2.0 * M_PI * i / m;
    vs.push_back(v2(std::cos(th), std::sin(th)));
    tris.push_back({0, 1 + i, 1 + (i + 1) % m});
  }
  return EmbeddedComplex(2, vs, tris);
}

std::vector<Vector> cube_vertices() {
  std::vector<Vector> vs;
  for (int i = 0; i < 8; ++i)
    vs.push_back(v3(i & 1 ? 1 : 0, i & 2 ? 1 : 0, i & 4 ? 1 : 0));
  return vs;
}

EmbeddedComplex make_cube_solid() {
  // Kuhn triangulation: one tetrahedron per coordinate order
  std::vector<std::vector<int>> tets;
  int perm[3] = {0, 1, 2};
  std::sort(perm, perm + 3);
  do {
    std::vector<int> chain = {0};
    int mask = 0;
    for (int step = 0; step < 3; ++step) {
      mask |= 1 << perm[step];
      chain.push_back(mask);
    }
    tets.push_back(chain);
  } while (std::next_permutation(perm, perm + 3));
  return EmbeddedComplex(3, cube_vertices(), tets);
}

EmbeddedComplex make_cube_boundary() {
  EmbeddedComplex solid = make_cube_solid();
  // keep the triangles of the solid hull that lie on a cube facet
  std::vector<std::vector<int>> tris;
  for (const auto& t : solid.simplices(2)) {
    for (int axis = 0; axis < 3; ++axis) {
      for (double level : {0.0, 1.0}) {
        bool flat = true;
        for (int i : t)
          if (solid.vertex(i)[axis] != level) flat = false;
        if (flat) tris.push_back(t);
      }
    }
  }
  return EmbeddedComplex(3, cube_vertices(), tris);
}

EmbeddedComplex make_simplex(int d) {
  if (d < 0 || d > 4) throw std::invalid_argument("simplex dimension out of range");
  std::vector<Vector> vs;
  vs.push_back(Vector::Zero(std::max(d, 1)));
  for (int i = 0; i < d; ++i) {
    Vector e = Vector::Zero(std::max(d, 1));
    e[i] = 1.0;
    vs.push_back(e);
  }
  std::vector<int> all(d + 1);
  for (int i = 0; i <= d; ++i) all[i] = i;
  return EmbeddedComplex(std::max(d, 1), vs, {all});
}

EmbeddedComplex make_bouquet() {
  // two diamond circles sharing the origin
  std::vector<Vector> vs = {v2(0, 0),  v2(-1, 1), v2(-2, 0), v2(-1, -1),
                            v2(1, 1),  v2(2, 0),  v2(1, -1)};
  return EmbeddedComplex(
      2, vs, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {4, 5}, {5, 6}, {0, 6}});
}

EmbeddedComplex make_point(int d) {
  std::vector<Vector> vs = {Vector::Zero(d)};
  return EmbeddedComplex(d, vs, {{0}});
}

EmbeddedComplex make_segment(int d) {
  std::vector<Vector> vs = {Vector::Zero(d), Vector::Zero(d)};
  vs[1][0] = 1.0;
  return EmbeddedComplex(d, vs, {{0, 1}});
}

}  // namespace

EmbeddedComplex generate(const std::string& shape, const GenParams& params) {
  if (shape == "point") return make_point(params.dim);
  if (shape == "segment") return make_segment(params.dim);
  if (shape == "square") return make_square();
  if (shape == "lshape") return make_lshape();
  if (shape == "annulus") return make_annulus();
  if (shape == "cross") return make_cross();
  if (shape == "disk") return make_disk(params.segments);
  if (shape == "circle") return make_circle(params.segments);
  if (shape == "cube_boundary") return make_cube_boundary();
  if (shape == "cube_solid") return make_cube_solid();
  if (shape == "simplex") return make_simplex(params.dim);
  if (shape == "bouquet") return make_bouquet();
  throw std::invalid_argument("unknown shape: " + shape);
}

std::vector<std::string> generator_names() {
  return {"point",  "segment", "square",        "lshape",     "annulus", "cross",
          "disk",   "circle",  "cube_boundary", "cube_solid", "simplex", "bouquet"};
}

namespace {

EmbeddedComplex with_mapped_vertices(const EmbeddedComplex& x,
                                     const std::function<Vector(const Vector&)>& f) {
  std::vector<Vector> vs;
  vs.reserve(x.vertex_count());
  for (int i = 0; i < x.vertex_count(); ++i) vs.push_back(f(x.vertex(i)));
  return EmbeddedComplex(x.ambient_dim(), std::move(vs), x.maximal_simplices());
}

}  // namespace

EmbeddedComplex apply_motion(const EmbeddedComplex& x, const Motion& motion) {
  if (motion.ambient_dim() != x.ambient_dim())
    throw std::invalid_argument("motion dimension mismatch");
  return with_mapped_vertices(x, [&](const Vector& v) { return motion.apply(v); });
}

EmbeddedComplex apply_linear(const EmbeddedComplex& x, const Matrix& map) {
  if (map.cols() != x.ambient_dim())
    throw std::invalid_argument("linear map dimension mismatch");
  return with_mapped_vertices(x, [&](const Vector& v) { return map * v; });
}

EmbeddedComplex translate(const EmbeddedComplex& x, const Vector& t) {
  return with_mapped_vertices(x, [&](const Vector& v) { return v + t; });
}

EmbeddedComplex scale(const EmbeddedComplex& x, double factor) {
  if (factor == 0.0) throw std::invalid_argument("scale factor must be nonzero");
  return with_mapped_vertices(x, [&](const Vector& v) { return factor * v; });
}

EmbeddedComplex disjoint_union(const EmbeddedComplex& a, const EmbeddedComplex& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("disjoint_union dimension mismatch");
  std::vector<Vector> vs = a.vertices();
  vs.insert(vs.end(), b.vertices().begin(), b.vertices().end());
  std::vector<std::vector<int>> maximal = a.maximal_simplices();
  for (auto s : b.maximal_simplices()) {
    for (int& i : s) i += a.vertex_count();
    maximal.push_back(std::move(s));
  }
  return EmbeddedComplex(a.ambient_dim(), std::move(vs), maximal);
}

Box bounding_box(const EmbeddedComplex& x) {
  Box b;
  const int n = x.ambient_dim();
  b.lo = Vector::Constant(n, 0.0);
  b.hi = Vector::Constant(n, 0.0);
  bool first = true;
  for (int k = 0; k <= x.dim(); ++k) {
    for (const auto& s : x.simplices(k)) {
      for (int i : s) {
        if (first) {
          b.lo = x.vertex(i);
          b.hi = x.vertex(i);
          first = false;
        } else {
          b.lo = b.lo.cwiseMin(x.vertex(i));
          b.hi = b.hi.cwiseMax(x.vertex(i));
        }
      }
    }
  }
  return b;
}

}  // namespace plcurv
