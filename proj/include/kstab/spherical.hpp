/**
 * Combinatorial datum of a polarized spherical variety and the
 * polynomials derived from it.
 *
 * A datum consists of a lattice chart, the translated polytope (origin
 * interior), the root pairing table, and the valuation cone. All root
 * and weight pairings are explicit inputs; nothing is derived from a
 * root-system library, which keeps the datum self-contained and every
 * normalization auditable.
 */

#ifndef KSTAB_SPHERICAL_HPP
#define KSTAB_SPHERICAL_HPP

#include <map>
#include <optional>
#include <vector>

#include "kstab/integrate.hpp"

namespace kstab {

struct RootEntry {
    Vec pairing;              // x -> <alpha, x> as ambient functional
    Rational chi_pairing;     // <alpha, chi>
    Rational weyl_pairing;    // <varpi, alpha>, must be > 0
    Rational two_varpi_pairing;  // <alpha, 2 varpi>
    std::optional<Rational> two_varpi_x_pairing;  // <alpha, 2 varpi_X>
};

struct ValuationCone {
    std::vector<IVec> lin_basis;  // basis of the linear part, N-coordinates
    std::vector<IVec> ray_gens;   // generators modulo the linear part
};

/// Density pieces attached to the pyramid over each facet; entries are
/// aligned with the facet list of the polytope.
struct PiecewisePoly {
    std::vector<std::pair<int, MultiPoly>> pieces;  // (facet index, polynomial)
};

class SphericalDatum {
  public:
    /// Validates and caches everything derived from the inputs.
    /// inv_offset_overrides maps facet indices to a replacement value of
    /// 1/n_i (0 encodes n_i = +infinity); only facets on which the
    /// Duistermaat-Heckman polynomial vanishes identically may carry one.
    SphericalDatum(LatticeChart chart, LatticePolytope delta, std::vector<RootEntry> roots,
                   ValuationCone cone, std::map<int, Rational> inv_offset_overrides = {},
                   bool fano_flag = false);

    int rank() const { return chart_.dim(); }
    const LatticeChart& chart() const { return chart_; }
    const LatticePolytope& delta() const { return delta_; }
    const std::vector<RootEntry>& roots() const { return roots_; }
    const ValuationCone& cone() const { return cone_; }
    bool fano_flag() const { return fano_flag_; }
    const std::map<int, Rational>& overrides() const { return inv_offset_overrides_; }

    /// Effective 1/n_i for the facet with the given inequality index.
    Rational inv_offset(int facet_index) const;

    /// Duistermaat-Heckman polynomial P (empty root set gives 1).
    const MultiPoly& dh_polynomial() const { return p_; }
    /// The degree-(|roots|-1) companion Q (empty root set gives 0).
    const MultiPoly& q_polynomial() const { return q_; }

    /// V = int P dmu and the constant 2a = (int_bd P dsigma + 2 int Q dmu)/V.
    const Rational& volume() const { return volume_; }
    const Rational& two_a() const { return two_a_; }

    /// K and J densities of the pyramid decomposition.
    const PiecewisePoly& density_k() const { return k_; }
    const PiecewisePoly& density_j() const { return j_; }

    /// The function L_m (m = rank or rank+1) on each pyramid. Requires a
    /// nonempty root set. With use_two_varpi_x, <alpha, 2 varpi> is
    /// replaced by <alpha, 2 varpi_X> (every root must carry it).
    PiecewisePoly l_m_polynomial(int m, bool use_two_varpi_x = false) const;

    /// Pyramid simplices, cached (one entry per facet).
    const std::vector<std::pair<int, std::vector<Simplex>>>& pyramids() const { return pyramids_; }

    /// True when P vanishes identically on the facet.
    bool dh_vanishes_on_facet(const Facet& f) const;

  private:
    LatticeChart chart_;
    LatticePolytope delta_;
    std::vector<RootEntry> roots_;
    ValuationCone cone_;
    std::map<int, Rational> inv_offset_overrides_;
    bool fano_flag_ = false;

    MultiPoly p_, q_;
    Rational volume_, two_a_;
    PiecewisePoly k_, j_;
    std::vector<std::pair<int, std::vector<Simplex>>> pyramids_;
};

}  // namespace kstab

#endif  // KSTAB_SPHERICAL_HPP
