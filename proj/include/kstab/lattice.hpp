/**
 * Exact rational/integer linear algebra and integer-lattice normal forms.
 *
 * Conventions:
 *   - Vec/Mat hold rationals; IVec/IMat hold arbitrary-precision integers.
 *   - Points of M (x) R are column vectors in "ambient" chart coordinates.
 *   - Functionals (elements of N (x) R) act by the standard dot product.
 */

#ifndef KSTAB_LATTICE_HPP
#define KSTAB_LATTICE_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <optional>
#include <vector>

#include "kstab/rational.hpp"

namespace kstab {

using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using IMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;

/// Strict lexicographic order on rational vectors (used wherever a
/// deterministic choice of vertex or ordering is required).
bool lex_less(const Vec& a, const Vec& b);

Vec ivec_to_vec(const IVec& v);

/// Row Hermite normal form. Returns (h, u) with h = u * m, u unimodular
/// (|det u| = 1). Pivots are positive, entries above a pivot are reduced
/// into [0, pivot), zero rows are swept to the bottom.
struct HnfResult {
    IMat h;
    IMat u;
};
HnfResult hnf(const IMat& m);

/// Z-basis of { v integral : u . v = 0 } for a nonzero integer vector u.
/// Returns dim(u) - 1 vectors. Throws std::invalid_argument on zero input.
std::vector<IVec> kernel_lattice_basis(const IVec& u);

/// The primitive integer vector on the ray R_{>0} v of a nonzero rational
/// vector (clear denominators, divide by the gcd; direction preserved).
IVec primitive_part(const Vec& v);

/// Rank of a rational matrix by fraction-free Gaussian elimination.
int rank_of(const Mat& m);

/// Solve a (must be square, nonsingular) a x = b exactly.
/// Returns false if a is singular.
bool solve_linear(const Mat& a, const Vec& b, Vec& x);

/// One nonzero kernel vector of a rational matrix (rows = equations),
/// or an empty vector if the kernel is trivial.
Vec kernel_vector(const Mat& m);

/// Solve a x = b for a possibly non-square a (least constraints first);
/// returns one exact solution if the system is consistent.
std::optional<Vec> solve_consistent(const Mat& a, const Vec& b);

/// Exact determinant via Bareiss-style elimination over the rationals.
Rational determinant(const Mat& m);

}  // namespace kstab

#endif  // KSTAB_LATTICE_HPP
