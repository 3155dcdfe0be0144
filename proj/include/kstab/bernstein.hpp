/**
 * Bernstein-form nonnegativity certificates on simplices.
 *
 * A polynomial written in the degree-d Bernstein basis of a simplex has
 * all its values bounded below by the minimal coefficient, so all
 * coefficients >= 0 certifies nonnegativity. The converse fails, but
 * subdividing along the longest edge shrinks the gap; the procedure is
 * complete in the limit. Coefficients at the multi-indices d*e_i are
 * the exact vertex values.
 */

#ifndef KSTAB_BERNSTEIN_HPP
#define KSTAB_BERNSTEIN_HPP

#include <map>
#include <optional>

#include "kstab/polytope.hpp"

namespace kstab {

/// Coefficients of p in the degree-d Bernstein basis of the simplex,
/// keyed by barycentric multi-index (|index| = d, one entry per vertex
/// ordering position). Requires d >= deg(p) and a full-dimensional
/// simplex of the polynomial's arity.
std::map<std::vector<int>, Rational> bernstein_coefficients(const MultiPoly& p,
                                                            const std::vector<Vec>& simplex,
                                                            unsigned degree);

/// Flattened coefficient list in deterministic (lexicographic
/// multi-index) order.
std::vector<Rational> bernstein_coefficient_list(const MultiPoly& p,
                                                 const std::vector<Vec>& simplex,
                                                 unsigned degree);

enum class PositivityOutcome { Nonnegative, Counterexample, Inconclusive };

struct PositivityCertificate {
    PositivityOutcome outcome = PositivityOutcome::Inconclusive;
    int depth_used = 0;       // deepest subdivision level reached
    long simplices_checked = 0;
    std::optional<Vec> counterexample_point;    // exact rational point
    std::optional<Rational> counterexample_value;  // exact negative value
};

/// Sound decision procedure for p >= 0 on the simplex:
///   - "Nonnegative" only when every leaf simplex carries a complete
///     Bernstein certificate,
///   - "Counterexample" only with an exact rational point where p < 0,
///   - "Inconclusive" when the depth budget runs out.
PositivityCertificate certify_nonnegative(const MultiPoly& p, const std::vector<Vec>& simplex,
                                          int max_depth);

}  // namespace kstab

#endif  // KSTAB_BERNSTEIN_HPP
