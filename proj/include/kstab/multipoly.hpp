/**
 * Sparse multivariate polynomials over exact rationals.
 *
 * Terms are kept in a std::map keyed by exponent vector, so iteration
 * order (and hence any serialization) is deterministic. Zero
 * coefficients are never stored.
 */

#ifndef KSTAB_MULTIPOLY_HPP
#define KSTAB_MULTIPOLY_HPP

#include <map>
#include <string>
#include <vector>

#include "kstab/lattice.hpp"

namespace kstab {

/// Affine map t -> matrix * t + translation between coordinate spaces.
struct AffineMap {
    Mat matrix;       // rows: output dimension, cols: input dimension
    Vec translation;  // output dimension

    Eigen::Index domain_dim() const { return matrix.cols(); }
    Eigen::Index codomain_dim() const { return matrix.rows(); }
    Vec apply(const Vec& t) const { return matrix * t + translation; }
};

class MultiPoly {
  public:
    using Exponents = std::vector<int>;

    explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

    static MultiPoly constant(int nvars, const Rational& c);
    static MultiPoly variable(int nvars, int index);
    /// c * x^e
    static MultiPoly monomial(int nvars, const Exponents& e, const Rational& c);
    /// The affine function coeffs . x + constant.
    static MultiPoly affine(const Vec& coeffs, const Rational& constant);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    void add_term(const Exponents& e, const Rational& c);

    MultiPoly operator+(const MultiPoly& other) const;
    MultiPoly operator-(const MultiPoly& other) const;
    MultiPoly operator*(const MultiPoly& other) const;
    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& other);
    MultiPoly& operator-=(const MultiPoly& other);
    MultiPoly scale(const Rational& c) const;
    MultiPoly pow(unsigned n) const;

    bool operator==(const MultiPoly& other) const {
        return nvars_ == other.nvars_ && terms_ == other.terms_;
    }

    Rational evaluate(const Vec& point) const;

    /// Exact substitution: result(t) = this(map(t)).
    MultiPoly compose_affine(const AffineMap& map) const;

    /// Partial derivatives, one polynomial per variable.
    std::vector<MultiPoly> gradient() const;

    /// sum_k x_k dP/dx_k: the derivative at x applied to the position
    /// vector x itself (the radial derivative).
    MultiPoly radial_derivative() const;

    std::string to_string() const;

  private:
    int nvars_;
    std::map<Exponents, Rational> terms_;
};

}  // namespace kstab

#endif  // KSTAB_MULTIPOLY_HPP
