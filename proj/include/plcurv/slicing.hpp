#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "plcurv/complex.hpp"
#include "plcurv/geom.hpp"

namespace plcurv {

// The input sits in an exactly non-generic position for the requested cut:
// for example the cutting plane contains a whole edge, or a link direction
// grazes a star vertex. The data has to change, not the tolerances.
struct DegeneracyError : std::runtime_error {
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// The configuration falls inside the ambiguity band between clearly feasible
// and clearly infeasible. Randomized callers discard the sample and redraw;
// deterministic callers perturb their data.
struct NearDegeneracyError : std::runtime_error {
  explicit NearDegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// Section of x by the hyperplane through p with normal u, triangulated, in
// the same ambient space. Vertices of x on the plane (within tolerance)
// become section vertices; a positive-dimensional simplex lying entirely in
// the plane raises DegeneracyError. Cells that collapse within tolerance
// raise NearDegeneracyError.
EmbeddedComplex hyperplane_section(const EmbeddedComplex& x, const Vector& p,
                                   const Vector& u);

// Section of x by a flat, as iterated hyperplane sections, re-expressed in
// the flat's intrinsic coordinates (ambient dimension = flat.dim()).
EmbeddedComplex flat_section(const EmbeddedComplex& x, const Flat& flat);

// Link of vertex v in unit direction a: the star of v cut at height
// delta = delta_scale/2 times the least positive star vertex height along a.
// Empty when no star vertex lies strictly on the positive side. Raises
// DegeneracyError when some star vertex height vanishes within tolerance.
// Any delta_scale in (0,2) yields the same complex combinatorially.
EmbeddedComplex directional_link(const EmbeddedComplex& x, int v,
                                 const Vector& a, double delta_scale = 1.0);

// Extreme points of the intersection of two closed simplices, given by their
// affinely independent vertex lists. Empty when the hulls are disjoint;
// touching configurations count as meeting. Predicates that land in the band
// between the feasible and infeasible thresholds raise NearDegeneracyError.
std::vector<Vector> convex_intersection(const std::vector<Vector>& s1,
                                        const std::vector<Vector>& s2);

// The intersection of the supports of two complexes, triangulated. Handles
// overlaps of any dimension, shared faces, and isolated touching points
// (closed-set convention). Raises NearDegeneracyError on configurations too
// close to non-generic to triangulate reliably.
EmbeddedComplex complex_intersection(const EmbeddedComplex& x1,
                                     const EmbeddedComplex& x2);

}  // namespace plcurv
