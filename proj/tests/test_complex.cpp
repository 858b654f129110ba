#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "plcurv/complex.hpp"
#include "plcurv/geom.hpp"

using namespace plcurv;

TEST_CASE("closure generates all faces of the maximal simplices") {
  std::vector<Vector> verts;
  Vector v(2);
  v << 0, 0; verts.push_back(v);
  v << 1, 0; verts.push_back(v);
  v << 0, 1; verts.push_back(v);
  EmbeddedComplex x(2, verts, {{{0, 1, 2}}});
  CHECK(x.count(0) == 3);
  CHECK(x.count(1) == 3);
  CHECK(x.count(2) == 1);
  CHECK(x.dim() == 2);
  CHECK(x.has_simplex({0, 2}));
  CHECK_FALSE(x.has_simplex({1, 1}));
}

TEST_CASE("empty complex has dimension -1") {
  EmbeddedComplex x(2);
  CHECK(x.empty());
  CHECK(x.dim() == -1);
  CHECK(x.count(0) == 0);
}

TEST_CASE("constructor rejects duplicate vertices and degenerate simplices") {
  std::vector<Vector> dup;
  Vector v(2);
  v << 0, 0; dup.push_back(v);
  v << 1e-12, 0; dup.push_back(v);
  CHECK_THROWS(EmbeddedComplex(2, dup, {{{0, 1}}}));

  std::vector<Vector> flat3;
  v << 0, 0; flat3.push_back(v);
  v << 1, 0; flat3.push_back(v);
  v << 2, 0; flat3.push_back(v);
  CHECK_THROWS(EmbeddedComplex(2, flat3, {{{0, 1, 2}}}));
}

TEST_CASE("generator census: vertex, edge, and face counts plus Euler characteristic") {
  auto chi = [](const EmbeddedComplex& x) { return euler_characteristic(x); };

  EmbeddedComplex sq = generate("square", {});
  CHECK(sq.count(0) == 4);
  CHECK(sq.count(1) == 5);
  CHECK(sq.count(2) == 2);
  CHECK(chi(sq) == 1);

  EmbeddedComplex an = generate("annulus", {});
  CHECK(an.count(0) == 8);
  CHECK(an.count(1) == 16);
  CHECK(an.count(2) == 8);
  CHECK(chi(an) == 0);

  EmbeddedComplex cr = generate("cross", {});
  CHECK(cr.count(0) == 5);
  CHECK(cr.count(1) == 4);
  CHECK(chi(cr) == 1);

  EmbeddedComplex cb = generate("cube_boundary", {});
  CHECK(cb.count(0) == 8);
  CHECK(cb.count(1) == 18);
  CHECK(cb.count(2) == 12);
  CHECK(chi(cb) == 2);

  EmbeddedComplex cs = generate("cube_solid", {});
  CHECK(cs.count(3) == 6);
  CHECK(chi(cs) == 1);

  EmbeddedComplex bq = generate("bouquet", {});
  CHECK(chi(bq) == -1);

  GenParams p;
  p.segments = 10;
  EmbeddedComplex ci = generate("circle", p);
  CHECK(ci.count(0) == 10);
  CHECK(ci.count(1) == 10);
  CHECK(chi(ci) == 0);

  EmbeddedComplex dk = generate("disk", p);
  CHECK(chi(dk) == 1);

  EmbeddedComplex ls = generate("lshape", {});
  CHECK(chi(ls) == 1);

  CHECK_THROWS(generate("no_such_shape", {}));
}

TEST_CASE("generator list names every shape") {
  auto names = generator_names();
  CHECK(names.size() >= 10);
  bool has_square = false;
  for (const auto& n : names)
    if (n == "square") has_square = true;
  CHECK(has_square);
}

TEST_CASE("star keeps exactly the simplices containing the vertex, closed") {
  EmbeddedComplex sq = generate("square", {});
  // vertex 0 = (0,0) belongs to both triangles
  EmbeddedComplex st = star(sq, 0);
  CHECK(st.count(2) == 2);
  CHECK(st.count(0) == 4);
  for (const auto& f : st.simplices(2)) {
    bool contains = false;
    for (int i : f)
      if (i == 0) contains = true;
    CHECK(contains);
  }
  // a vertex of the cross has only its own edges
  EmbeddedComplex cr = generate("cross", {});
  EmbeddedComplex tip = star(cr, 1);
  CHECK(tip.count(1) == 1);
}

TEST_CASE("face volumes: length, area, and simplex content") {
  EmbeddedComplex sq = generate("square", {});
  CHECK(face_volume(sq, Face{{0}}) == doctest::Approx(1.0));
  // diagonal edge of the unit square
  CHECK(face_volume(sq, Face{{0, 2}}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(face_volume(sq, Face{{0, 1, 2}}) == doctest::Approx(0.5));
  CHECK(total_volume(sq, 2) == doctest::Approx(1.0));
  CHECK(total_volume(sq, 1) == doctest::Approx(4.0 + std::sqrt(2.0)));
  CHECK(total_volume(sq, 0) == doctest::Approx(4.0));

  EmbeddedComplex cs = generate("cube_solid", {});
  CHECK(total_volume(cs, 3) == doctest::Approx(1.0));

  EmbeddedComplex s3 = generate("simplex", GenParams{12, 3});
  CHECK(total_volume(s3, 3) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("barycentric subdivision: counts and Euler invariance") {
  EmbeddedComplex seg = generate("segment", {});
  EmbeddedComplex seg2 = subdivide_barycentric(seg);
  CHECK(seg2.count(0) == 3);
  CHECK(seg2.count(1) == 2);
  CHECK(total_volume(seg2, 1) == doctest::Approx(total_volume(seg, 1)));

  EmbeddedComplex tri = generate("simplex", GenParams{12, 2});
  EmbeddedComplex tri2 = subdivide_barycentric(tri);
  CHECK(tri2.count(2) == 6);
  CHECK(tri2.count(0) == 7);
  CHECK(euler_characteristic(tri2) == euler_characteristic(tri));
  CHECK(total_volume(tri2, 2) == doctest::Approx(total_volume(tri, 2)));

  EmbeddedComplex an = generate("annulus", {});
  EmbeddedComplex an2 = subdivide_barycentric(an);
  CHECK(euler_characteristic(an2) == 0);
  CHECK(total_volume(an2, 2) == doctest::Approx(total_volume(an, 2)));
  CHECK(an2.count(2) == 6 * an.count(2));
}

TEST_CASE("file format round trip preserves the complex") {
  EmbeddedComplex an = generate("annulus", {});
  std::ostringstream out;
  write_plc(out, an);
  std::istringstream in(out.str());
  EmbeddedComplex back = read_plc(in);
  CHECK(back == an);

  EmbeddedComplex pt = generate("point", {});
  std::ostringstream out2;
  write_plc(out2, pt);
  std::istringstream in2(out2.str());
  CHECK(read_plc(in2) == pt);
}

TEST_CASE("file reader rejects malformed input") {
  std::istringstream bad1("PLX 1 2\n");
  CHECK_THROWS(read_plc(bad1));
  std::istringstream bad2("PLC 1 2\nVERTICES 1\n0 0\nSIMPLICES 1\n1 0 5\n");
  CHECK_THROWS(read_plc(bad2));
}

TEST_CASE("rigid motions preserve volumes, scaling is homogeneous") {
  EmbeddedComplex sq = generate("square", {});
  RngStream rng(17);
  Motion m = random_rotation(2, rng);
  m.translation = Vector::Constant(2, 3.5);
  EmbeddedComplex moved = apply_motion(sq, m);
  CHECK(total_volume(moved, 2) == doctest::Approx(1.0));
  CHECK(total_volume(moved, 1) == doctest::Approx(total_volume(sq, 1)));

  EmbeddedComplex big = scale(sq, 3.0);
  CHECK(total_volume(big, 2) == doctest::Approx(9.0));
  CHECK(total_volume(big, 1) == doctest::Approx(3.0 * total_volume(sq, 1)));

  Vector shift(2);
  shift << -1, 2;
  EmbeddedComplex tr = translate(sq, shift);
  CHECK(tr.vertex(0)(1) == doctest::Approx(2.0));
}

TEST_CASE("disjoint union concatenates pieces") {
  EmbeddedComplex sq = generate("square", {});
  Vector far = Vector::Constant(2, 10.0);
  EmbeddedComplex two = disjoint_union(sq, translate(sq, far));
  CHECK(two.count(0) == 8);
  CHECK(two.count(2) == 4);
  CHECK(euler_characteristic(two) == 2);
}

TEST_CASE("validate flags nothing on generated complexes") {
  for (const auto& name : generator_names()) {
    EmbeddedComplex x = generate(name, {});
    CHECK(validate(x).empty());
  }
}

TEST_CASE("bounding box covers all vertices tightly") {
  EmbeddedComplex an = generate("annulus", {});
  Box b = bounding_box(an);
  CHECK(b.lo(0) == doctest::Approx(0.0));
  CHECK(b.hi(0) == doctest::Approx(1.0));
  CHECK(b.volume() == doctest::Approx(1.0));
}

TEST_CASE("skeleton lists the faces of one dimension") {
  EmbeddedComplex cs = generate("cube_solid", {});
  std::vector<Face> edges = skeleton(cs, 1);
  CHECK(static_cast<long>(edges.size()) == cs.count(1));
  for (const auto& f : edges) CHECK(f.dim() == 1);
  CHECK(skeleton(cs, 7).empty());
}
