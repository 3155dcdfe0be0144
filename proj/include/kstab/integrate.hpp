/**
 * Exact integration of polynomials against the lattice measures.
 *
 * Everything reduces to the closed form for monomials on the standard
 * k-simplex, int t^a dt = prod(a_i!) / (k + |a|)!, pulled back through
 * the affine parametrization of each simplex. A simplex carries its own
 * measure normalization (dmu or dsigma) in lattice_normalized_volume,
 * so one routine serves interior and facet integrals alike.
 */

#ifndef KSTAB_INTEGRATE_HPP
#define KSTAB_INTEGRATE_HPP

#include "kstab/polytope.hpp"

namespace kstab {

/// Integral of p over a simplex against the measure recorded in
/// s.lattice_normalized_volume.
Rational integrate_over_simplex(const MultiPoly& p, const Simplex& s);

/// Simplex from raw vertices with its dmu volume (full-dimensional).
Simplex make_simplex(const std::vector<Vec>& vertices, const LatticeChart& chart);

/// int_poly p dmu over the polytope's stellar triangulation.
Rational integrate_polytope(const MultiPoly& p, const LatticePolytope& poly);

/// int_f p dsigma over one facet.
Rational integrate_facet(const MultiPoly& p, const Facet& f);

/// Sum of facet integrals: int_boundary p dsigma.
Rational integrate_boundary(const MultiPoly& p, const LatticePolytope& poly);

/// Number of lattice points of M in the k-th dilate of the polytope
/// (brute-force enumeration over the bounding box in M-coordinates).
Int lattice_point_count(const LatticePolytope& poly, int dilate);

}  // namespace kstab

#endif  // KSTAB_INTEGRATE_HPP
