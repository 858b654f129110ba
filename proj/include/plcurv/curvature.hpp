#pragma once

#include <string>

#include "plcurv/complex.hpp"
#include "plcurv/geom.hpp"
#include "plcurv/homology.hpp"
#include "plcurv/report.hpp"

namespace plcurv {

// The three curvature maps, as functions of the link of a vertex in a
// direction: Euler = alternating sum of the pair Betti numbers (equivalently
// one minus the link Euler number), Absolute = their total sum, Components =
// the degree zero entry (one exactly when the link is empty).
enum class CurvatureMap { Euler, Absolute, Components };

// Names used on the command line: sigma, tau, b0.
CurvatureMap curvature_map_from_string(const std::string& name);
std::string to_string(CurvatureMap map);

long index_from_pair_betti(const BettiVector& pb, CurvatureMap map);

// Index of a vertex with the given directional link, computed directly:
// Euler needs only face counts, Absolute one Betti vector, Components an
// emptiness test. Agrees with index_from_pair_betti over pair_betti_from_link.
long link_index(const EmbeddedComplex& link, CurvatureMap map);

// Sum of vertex indices over all vertices for one direction. Integer valued;
// for the Euler map it equals the Euler characteristic of the complex for
// every generic direction. Throws DegeneracyError on non-generic directions.
long direction_census(const EmbeddedComplex& x, const Vector& a, CurvatureMap map);

// Reference implementation of the census through explicit link complexes and
// homology; direction_census dispatches to a faster combinatorial engine in
// ambient dimension <= 2, and the two must agree on every generic direction.
long direction_census_links(const EmbeddedComplex& x, const Vector& a,
                            CurvatureMap map);

// Curvature measure of a single vertex: the average of its index over the
// unit sphere of directions. Monte Carlo version resamples degenerate
// directions; the exact version integrates over the angular subdivision cut
// out by the star (ambient dimension <= 2 only).
MeasureEstimate vertex_measure(const EmbeddedComplex& x, int v, CurvatureMap map,
                               long samples, RngStream rng);
double vertex_measure_exact(const EmbeddedComplex& x, int v, CurvatureMap map);

// Curvature measure of a face: cut by the orthogonal complement flat through
// an interior point and measure the meeting vertex of the section. Top
// dimensional faces have measure exactly one. Persistent degeneracy is
// retried with up to max_perturbations interior points before giving up.
MeasureEstimate face_measure(const EmbeddedComplex& x, const Face& f,
                             CurvatureMap map, long samples, RngStream rng);
// Exact version; requires ambient_dim - f.dim() <= 2.
double face_measure_exact(const EmbeddedComplex& x, const Face& f, CurvatureMap map);

// Total curvature: the direction census averaged over the sphere. For the
// Euler map every sample equals the Euler characteristic.
MeasureEstimate total_curvature(const EmbeddedComplex& x, CurvatureMap map,
                                long samples, RngStream rng, int threads = 1);

// Intrinsic invariant of degree k: the face measures of the k-faces weighted
// by their volumes. k = ambient dimension gives the total volume exactly.
MeasureEstimate wk(const EmbeddedComplex& x, int k, CurvatureMap map,
                   long samples, RngStream rng, int threads = 1);
// Exact version for ambient dimension <= 2.
double wk_exact(const EmbeddedComplex& x, int k, CurvatureMap map);

}  // namespace plcurv
