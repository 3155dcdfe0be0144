/**
 * Exact convex polytope geometry over the rationals.
 *
 * A LatticePolytope is built from a half-space representation in an
 * ambient chart; construction eagerly computes the vertex set, the face
 * lattice, facet data (primitive lattice normals, lattice-normalized
 * facet measures) and deterministic stellar triangulations.
 *
 * Measures follow the lattice conventions: the volume form dmu gives a
 * fundamental cell of the lattice M volume 1 (so Lebesgue divided by
 * |det basis|), and each facet carries the (r-1)-dimensional measure
 * dsigma normalized by the rank-(r-1) lattice M intersected with the
 * linear hyperplane of the facet normal. For rank-1 polytopes facets
 * are points and dsigma is the counting measure.
 */

#ifndef KSTAB_POLYTOPE_HPP
#define KSTAB_POLYTOPE_HPP

#include <optional>
#include <vector>

#include "kstab/multipoly.hpp"

namespace kstab {

/// Chart fixing the lattice M inside the ambient coordinate space.
class LatticeChart {
  public:
    /// basis columns are the M-basis vectors in ambient coordinates.
    explicit LatticeChart(Mat basis);
    static LatticeChart standard(int dim);

    int dim() const { return static_cast<int>(basis_.cols()); }
    const Mat& basis() const { return basis_; }

    /// M-coordinates of an ambient point.
    Vec to_lattice(const Vec& ambient) const { return basis_inv_ * ambient; }
    Vec to_ambient(const Vec& lattice) const { return basis_ * lattice; }

    /// N-coordinates (dual basis) of an ambient functional.
    Vec functional_ncoords(const Vec& ambient_functional) const {
        return basis_.transpose() * ambient_functional;
    }
    /// Ambient functional realizing given N-coordinates.
    Vec ncoords_to_functional(const Vec& ncoords) const {
        return basis_inv_.transpose() * ncoords;
    }

    /// dmu = mu_factor * (ambient Lebesgue measure).
    const Rational& mu_factor() const { return mu_factor_; }

  private:
    Mat basis_;
    Mat basis_inv_;
    Rational mu_factor_;
};

/// normal . x <= offset in ambient coordinates.
struct HalfSpace {
    Vec normal;
    Rational offset;
};

/// Affinely independent vertex tuple with a precomputed volume in the
/// measure relevant to its role (dmu for full-dimensional simplices,
/// dsigma for facet simplices).
struct Simplex {
    std::vector<Vec> vertices;
    Rational lattice_normalized_volume;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

struct Facet {
    int index;                         // index of the defining inequality
    IVec normal;                       // outward primitive normal, N-coords
    Rational offset;                   // n_i for the primitive normal
    std::vector<int> vertex_ids;       // into LatticePolytope::vertices()
    std::vector<Simplex> triangulation;  // (r-1)-simplices, dsigma volumes
    Rational sigma_volume;             // total dsigma mass of the facet
    std::vector<IVec> kernel_basis;    // Z-basis of M on the normal's kernel
    Vec base_point;                    // lex-min facet vertex (t-frame origin)
    Mat frame;                         // ambient images of kernel basis (r x (r-1))
};

class LatticePolytope {
  public:
    /// Throws std::invalid_argument when the system is unbounded, empty
    /// or not full-dimensional.
    LatticePolytope(LatticeChart chart, std::vector<HalfSpace> inequalities);

    /// As the constructor, but reports empty/lower-dimensional input as
    /// std::nullopt instead of throwing (unbounded still throws).
    static std::optional<LatticePolytope> try_build(LatticeChart chart,
                                                    std::vector<HalfSpace> inequalities);

    const LatticeChart& chart() const { return chart_; }
    int dim() const { return chart_.dim(); }
    const std::vector<HalfSpace>& inequalities() const { return inequalities_; }

    /// Vertex set, lexicographically sorted.
    const std::vector<Vec>& vertices() const { return vertices_; }
    const Vec& vertex(int id) const { return vertices_[id]; }

    const std::vector<Facet>& facets() const { return facets_; }
    /// Facet defined by inequality index i, if that inequality supports one.
    const Facet* facet_for_inequality(int i) const;

    /// Deterministic stellar triangulation into full-dimensional
    /// simplices carrying dmu volumes.
    const std::vector<Simplex>& triangulation() const { return triangulation_; }
    /// Total dmu volume.
    const Rational& volume() const { return volume_; }
    /// Total dsigma mass of the boundary.
    Rational boundary_measure() const;

    bool contains(const Vec& point) const;
    bool origin_interior() const;

    /// Pyramids over the facets with apex the origin, one entry per
    /// facet, each a list of full-dimensional simplices (dmu volumes).
    /// Requires the origin strictly interior.
    std::vector<std::pair<int, std::vector<Simplex>>> pyramid_decomposition() const;

  private:
    LatticePolytope() = default;
    static std::optional<LatticePolytope> build(LatticeChart chart,
                                                std::vector<HalfSpace> inequalities,
                                                bool throw_on_degenerate);
    int affine_dims_check() const;
    void finish_construction();

    std::vector<int> active_inequalities(int vertex_id) const;
    int affine_dim(const std::vector<int>& ids) const;
    std::vector<std::vector<int>> subfaces(const std::vector<int>& face_ids, int face_dim) const;
    std::vector<std::vector<int>> triangulate_face(const std::vector<int>& face_ids,
                                                   int face_dim) const;

    LatticeChart chart_ = LatticeChart::standard(1);
    std::vector<HalfSpace> inequalities_;
    std::vector<Vec> vertices_;
    std::vector<std::vector<int>> vertex_active_;  // inequality ids per vertex
    std::vector<Facet> facets_;
    std::vector<Simplex> triangulation_;
    Rational volume_;
};

/// Halfspace representation of a full-dimensional simplex.
std::vector<HalfSpace> simplex_halfspaces(const std::vector<Vec>& vertices);

/// One affine piece of a piecewise linear function, in ambient form.
struct AffinePiece {
    Vec slope;         // ambient functional
    Rational constant;
};

/// Regions of p on which a given affine piece is the pointwise minimum.
/// Only full-dimensional regions are returned (lower-dimensional ties
/// carry no measure and are dropped); pieces that are nowhere strictly
/// minimal contribute nothing. Regions partition p up to measure zero.
std::vector<std::pair<int, LatticePolytope>> linearity_subdivision(
    const LatticePolytope& p, const std::vector<AffinePiece>& pieces);

}  // namespace kstab

#endif  // KSTAB_POLYTOPE_HPP
