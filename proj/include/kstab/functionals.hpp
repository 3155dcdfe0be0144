/**
 * Piecewise linear concave test functions and the functionals attached
 * to a spherical datum.
 *
 * The two functionals
 *
 *     L(g) = int 2 g (a P - Q) dmu - int_bd g P dsigma
 *     J(g) = int (max g - g) P dmu
 *
 * are evaluated exactly on the common refinement of the linearity
 * subdivision of g with the polytope's triangulations. L_s, the
 * divergence-theorem form int (g K + d_xg(x) J) dmu over the pyramid
 * decomposition, agrees with L on every piecewise linear function and
 * serves as the library's central cross-check.
 */

#ifndef KSTAB_FUNCTIONALS_HPP
#define KSTAB_FUNCTIONALS_HPP

#include <array>

#include "kstab/spherical.hpp"

namespace kstab {

struct PLPiece {
    Vec slope;          // N-coordinates
    Rational constant;
};

/// Finite min of rational affine functions; slopes live in N-coordinates.
class PLConcave {
  public:
    explicit PLConcave(std::vector<PLPiece> pieces);
    static PLConcave constant_function(int rank, const Rational& c);
    static PLConcave linear(const Vec& slope_ncoords, const Rational& c = Rational(0));

    const std::vector<PLPiece>& pieces() const { return pieces_; }
    Rational value(const LatticeChart& chart, const Vec& ambient) const;
    /// Lowest index attaining the min at the point.
    int active_piece(const LatticeChart& chart, const Vec& ambient) const;
    std::vector<AffinePiece> ambient_pieces(const LatticeChart& chart) const;

  private:
    std::vector<PLPiece> pieces_;
};

/// Membership of an N-coordinate vector in V = Lin(V) + cone(rays).
bool slope_in_cone(const ValuationCone& cone, const Vec& ncoords);
/// Membership in the linear part alone.
bool in_linear_part(const ValuationCone& cone, const Vec& ncoords);

/// Test-configuration validity: all slopes in V and min over the
/// polytope >= 0 (the min of a concave PL function is attained at a
/// vertex).
bool is_test_config(const SphericalDatum& d, const PLConcave& g);

Rational functional_L(const SphericalDatum& d, const PLConcave& g);
Rational functional_J(const SphericalDatum& d, const PLConcave& g);
/// The same value as functional_L through the K/J densities.
Rational functional_L_smooth(const SphericalDatum& d, const PLConcave& g);

/// Non-Archimedean Mabuchi and J functionals: L(g)/(2V) and J(g)/V.
Rational mabuchi_na(const SphericalDatum& d, const PLConcave& g);
Rational j_na(const SphericalDatum& d, const PLConcave& g);

struct Barycenter {
    Vec point;       // ambient coordinates
    Rational mass;   // int (K+J) dmu
};

/// Barycenter of the polytope against (K+J) dmu. Throws on zero mass.
Barycenter barycenter(const SphericalDatum& d);

/// The five-term split of the integrand of L_s around the barycenter:
///   1. (d_xg(x-b) - g(x) + g(b)) J      (concavity against J)
///   2. (g(x) - g(b) - d_bg(x-b)) (K+J)  (concavity against K+J)
///   3. d_xg(b) J                        (barycenter pairing)
///   4. g(b) K                           (zero: int K = 0)
///   5. d_bg(x-b) (K+J)                  (zero: definition of b)
/// The sum equals functional_L_smooth(g) exactly.
std::array<Rational, 5> decomposition_terms(const SphericalDatum& d, const PLConcave& g);

/// Shift every slope by l in Lin(V); constants unchanged. Throws when l
/// is outside the linear part.
PLConcave twist(const PLConcave& g, const Vec& l_ncoords, const ValuationCone& cone);

struct TwistReduction {
    Rational value;          // best JNA found
    Rational bracket_width;  // final uncertainty interval width (per axis max)
    bool converged;
    long evaluations;
};

/// Approximate inf over l in Lin(V) of JNA(g + l) by exact-arithmetic
/// section search, coordinatewise over a basis of Lin(V). The inner
/// evaluations are exact; only the location of the infimum is bracketed.
TwistReduction twist_reduced_jna(const SphericalDatum& d, const PLConcave& g, const Rational& tol);

}  // namespace kstab

#endif  // KSTAB_FUNCTIONALS_HPP
