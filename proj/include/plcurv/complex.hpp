#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "plcurv/geom.hpp"

namespace plcurv {

// A face is a sorted tuple of vertex indices.
struct Face {
  std::vector<int> indices;
  int dim() const { return static_cast<int>(indices.size()) - 1; }
};

// Finite simplicial complex embedded in E^n, closed under faces.
//
// Simplices are stored per dimension as sorted unique index tuples, so a
// complex built twice from the same data compares equal and iteration order
// is reproducible. Vertices not referenced by any simplex are permitted
// (subcomplexes share their parent's vertex table).
class EmbeddedComplex {
 public:
  explicit EmbeddedComplex(int ambient_dim);
  EmbeddedComplex(int ambient_dim, std::vector<Vector> vertices,
                  const std::vector<std::vector<int>>& maximal);

  int ambient_dim() const { return ambient_dim_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const Vector& vertex(int i) const { return vertices_[i]; }
  const std::vector<Vector>& vertices() const { return vertices_; }

  // Dimension of the complex, -1 when there are no simplices at all.
  int dim() const { return static_cast<int>(simplices_.size()) - 1; }
  bool empty() const { return simplices_.empty(); }

  const std::vector<std::vector<int>>& simplices(int k) const;
  long count(int k) const;
  bool has_simplex(const std::vector<int>& sorted_simplex) const;
  // Index of a sorted tuple within simplices(k), -1 when absent.
  long simplex_index(const std::vector<int>& sorted_simplex) const;

  // Simplices not properly contained in any other simplex.
  std::vector<std::vector<int>> maximal_simplices() const;

  bool operator==(const EmbeddedComplex& other) const;

 private:
  int ambient_dim_ = 0;
  std::vector<Vector> vertices_;
  // simplices_[k] = sorted list of sorted (k+1)-tuples
  std::vector<std::vector<std::vector<int>>> simplices_;

  void close_and_sort(const std::vector<std::vector<int>>& maximal);
};

// Human-readable diagnostics; empty when all structural invariants hold
// (indices in range, faces closed, no duplicate vertices within tolerance,
// every simplex affinely independent).
std::vector<std::string> validate(const EmbeddedComplex& x);

// Builds the closure of a maximal-simplex list. Throws on out-of-range
// indices, duplicate vertices within tolerance, or degenerate simplices.
EmbeddedComplex close_under_faces(int ambient_dim, std::vector<Vector> vertices,
                                  const std::vector<std::vector<int>>& maximal);

// All k-faces, in stored order.
std::vector<Face> skeleton(const EmbeddedComplex& x, int k);

// Subcomplex of all simplices containing vertex v, plus their faces.
// Shares the parent's vertex table so indices stay valid.
EmbeddedComplex star(const EmbeddedComplex& x, int v);

// True when the points fail the relative Gram determinant floor that the
// complex constructor enforces for its simplices.
bool affinely_degenerate(const std::vector<Vector>& pts);

// k-volume of a face: sqrt(Gram determinant) / k!, and 1 for vertices.
double face_volume(const EmbeddedComplex& x, const Face& f);

// Sum of face volumes over the k-skeleton.
double total_volume(const EmbeddedComplex& x, int k);

long euler_characteristic(const EmbeddedComplex& x);

// Barycentric subdivision: one vertex per simplex, one simplex per chain in
// the face order. Geometric support is unchanged.
EmbeddedComplex subdivide_barycentric(const EmbeddedComplex& x);

struct GenParams {
  int segments = 12;  // circle / disk resolution
  int dim = 2;        // simplex / point ambient dimension
};

// Named test shapes: point, segment, square, lshape, annulus, cross, disk,
// circle, cube_boundary, cube_solid, simplex, bouquet.
EmbeddedComplex generate(const std::string& shape, const GenParams& params = {});

std::vector<std::string> generator_names();

EmbeddedComplex apply_motion(const EmbeddedComplex& x, const Motion& motion);
EmbeddedComplex apply_linear(const EmbeddedComplex& x, const Matrix& map);
EmbeddedComplex translate(const EmbeddedComplex& x, const Vector& t);
EmbeddedComplex scale(const EmbeddedComplex& x, double factor);

// Both complexes must share the ambient dimension; the supports must be
// disjoint for the result to mean anything topological.
EmbeddedComplex disjoint_union(const EmbeddedComplex& a, const EmbeddedComplex& b);

Box bounding_box(const EmbeddedComplex& x);

// PLC v1 exchange format. The writer emits maximal simplices only; the
// loader closes under faces, so write/read round-trips to the same complex.
EmbeddedComplex read_plc(std::istream& in);
void write_plc(std::ostream& out, const EmbeddedComplex& x);
EmbeddedComplex read_plc_file(const std::string& path);
void write_plc_file(const std::string& path, const EmbeddedComplex& x);

}  // namespace plcurv
