#ifndef KSTAB_TEST_HELPERS_HPP
#define KSTAB_TEST_HELPERS_HPP

#include <random>
#include <vector>

#include "kstab/functionals.hpp"
#include "kstab/integrate.hpp"

namespace kstab::testing {

inline Vec vec(std::initializer_list<std::string> entries) {
    Vec v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (const auto& e : entries) v[i++] = parse_rational(e);
    return v;
}

inline IVec ivec(std::initializer_list<long> entries) {
    IVec v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (long e : entries) v[i++] = e;
    return v;
}

inline Rational q(const std::string& s) { return parse_rational(s); }

inline HalfSpace hs(std::initializer_list<std::string> normal, const std::string& offset) {
    return {vec(normal), q(offset)};
}

/// Uniform random rational with numerator in [-bound, bound] and
/// denominator in [1, max_den].
inline Rational random_rational(std::mt19937& rng, int bound = 10, int max_den = 8) {
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(num(rng)) / Rational(den(rng));
}

/// Centered axis box {|x_i| <= half} as a toric datum chart polytope.
inline LatticePolytope box_polytope(int dim, const std::string& half) {
    std::vector<HalfSpace> ineqs;
    for (int i = 0; i < dim; ++i) {
        Vec plus = Vec::Zero(dim), minus = Vec::Zero(dim);
        plus[i] = 1;
        minus[i] = -1;
        ineqs.push_back({plus, parse_rational(half)});
        ineqs.push_back({minus, parse_rational(half)});
    }
    return LatticePolytope(LatticeChart::standard(dim), ineqs);
}

/// Toric datum (no roots) over an arbitrary polytope with the full
/// lattice as linear part of the valuation cone.
inline SphericalDatum toric_datum(LatticePolytope delta) {
    const int r = delta.dim();
    ValuationCone cone;
    for (int i = 0; i < r; ++i) {
        IVec e = IVec::Zero(r);
        e[i] = 1;
        cone.lin_basis.push_back(e);
    }
    LatticeChart chart = delta.chart();
    return SphericalDatum(chart, std::move(delta), {}, cone);
}

/// The rank-2 quadric-blowup datum at parameter s with chi = (s/2) alpha
/// (ambient coordinates (x, y) for the point x*alpha + y*f, M-basis
/// {alpha, (alpha+f)/2}, one root with pairing 2x).
inline SphericalDatum quadric_blowup_datum(const Rational& s) {
    Mat basis(2, 2);
    basis << Rational(1), Rational(1, 2), Rational(0), Rational(1, 2);
    LatticeChart chart(basis);
    std::vector<HalfSpace> ineqs = {
        {vec({"-2", "0"}), s},
        {vec({"1", "1"}), s / 2},
        {vec({"2", "0"}), Rational(3) - s},
        {vec({"1", "-1"}), s / 2},
    };
    LatticePolytope delta(chart, ineqs);
    RootEntry root;
    root.pairing = vec({"2", "0"});
    root.chi_pairing = s;
    root.weyl_pairing = 1;
    root.two_varpi_pairing = 2;
    root.two_varpi_x_pairing = 2;
    ValuationCone cone;
    cone.lin_basis.push_back(ivec({0, 1}));   // f-dual direction
    cone.ray_gens.push_back(ivec({2, 1}));    // alpha-coroot direction
    std::map<int, Rational> overrides;
    overrides[0] = 2 / s;  // P vanishes on facet 0; use n_0 = s/2
    return SphericalDatum(chart, std::move(delta), {root}, cone, overrides, true);
}

/// Random concave PL function with `pieces` pieces, slopes and
/// constants bounded by 10 in each N-coordinate.
inline PLConcave random_pl(std::mt19937& rng, int rank, int pieces) {
    std::vector<PLPiece> out;
    for (int p = 0; p < pieces; ++p) {
        Vec slope(rank);
        for (int i = 0; i < rank; ++i) slope[i] = random_rational(rng);
        out.push_back({slope, random_rational(rng)});
    }
    return PLConcave(std::move(out));
}

}  // namespace kstab::testing

#endif
