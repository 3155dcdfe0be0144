/**
 * The sufficient stability criterion as an executable decision
 * procedure with certificates.
 *
 * The criterion has two halves: a nonnegativity certificate for the
 * density -(K+J) over the pyramid decomposition, and exact sign checks
 * of the functional L on the generators of the valuation cone (linear
 * part annihilated, rays strictly positive). Outcomes carry exact
 * witnesses: a counterexample is a rational point with a negative
 * rational value, a polystability failure is a generator slope with its
 * exact L-value.
 */

#ifndef KSTAB_VERDICT_HPP
#define KSTAB_VERDICT_HPP

#include <functional>
#include <string>

#include "kstab/bernstein.hpp"
#include "kstab/functionals.hpp"

namespace kstab {

enum class VerdictKind { UniformlyKStable, KSemistableOnly, NotStcPolystable, Inconclusive };

std::string to_string(VerdictKind kind);

/// Nonnegativity of -(K+J) over every pyramid simplex.
PositivityCertificate nonneg_certificate(const SphericalDatum& d, int max_depth);

struct ConeCheck {
    bool lin_annihilated = false;  // u(b) = 0 for the linear part basis
    bool rays_strict = false;      // u(b) < 0 for every ray generator
    std::vector<Rational> lin_values;
    std::vector<Rational> ray_values;
};

/// Exact evaluation of the cone generators against the barycenter.
ConeCheck barycenter_cone_check(const Barycenter& b, const ValuationCone& cone,
                                const LatticeChart& chart);

struct GeneratorL {
    IVec slope;  // N-coordinates
    bool is_ray;
    Rational l_value;
};

struct StcResult {
    bool passes = false;
    std::vector<GeneratorL> values;
    std::optional<IVec> witness;  // slope with L < 0, or L = 0 outside Lin(V)
    std::optional<Rational> witness_value;
};

/// Polystability against special test configurations: L vanishes on the
/// linear part and is strictly positive on the ray generators.
StcResult stc_polystability(const SphericalDatum& d);

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::string reason;
    Rational volume, two_a, mass;
    Vec barycenter_point;
    PositivityCertificate certificate;
    ConeCheck cone_check;
    StcResult stc;
};

Verdict full_criterion(const SphericalDatum& d, int max_depth = 12);

struct FanoReport {
    Rational two_a;
    Rational expected_two_a;  // rank + number of roots
    bool two_a_matches = false;
    bool identity_holds = false;  // L_{r+1} proportional to prod <alpha, x+chi> (toric: -(K+J) == 1)
    std::string detail;
};

/// Verification mode for anticanonically polarized data: requires all
/// effective 1/n_i equal to 1 and chi pairings equal to <alpha, 2 varpi_X>.
FanoReport fano_check(const SphericalDatum& d);

using DatumFamily = std::function<SphericalDatum(const Rational&)>;

/// Verdicts at the given parameter values. Samples are independent and
/// may be evaluated concurrently (jobs > 1); the result order follows
/// the input order regardless of scheduling.
std::vector<std::pair<Rational, Verdict>> scan_samples(const DatumFamily& family,
                                                       const std::vector<Rational>& samples,
                                                       int max_depth, int jobs = 1);

struct BisectResult {
    Rational lo, hi;  // bracket of requested width around the flip
    Verdict at_lo, at_hi;
    long certificate_runs = 0;
};

/// Bracket the smallest parameter where the nonnegativity certificate
/// flips from failing to holding. Assumes (and checks at the endpoints)
/// a single flip in the range.
BisectResult scan_bisect(const DatumFamily& family, const Rational& lo, const Rational& hi,
                         const Rational& width, int max_depth);

}  // namespace kstab

#endif  // KSTAB_VERDICT_HPP
