#include "kstab/multipoly.hpp"

#include <numeric>
#include <sstream>

namespace kstab {

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
    MultiPoly p(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.add_term(e, Rational(1));
    return p;
}

MultiPoly MultiPoly::monomial(int nvars, const Exponents& e, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(e, c);
    return p;
}

MultiPoly MultiPoly::affine(const Vec& coeffs, const Rational& constant) {
    MultiPoly p(static_cast<int>(coeffs.size()));
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        Exponents e(coeffs.size(), 0);
        e[i] = 1;
        p.add_term(e, coeffs[i]);
    }
    p.add_term(Exponents(coeffs.size(), 0), constant);
    return p;
}

int MultiPoly::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars_)
        throw std::invalid_argument("MultiPoly: exponent arity mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
    MultiPoly r = *this;
    r += other;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
    if (nvars_ != other.nvars_) throw std::invalid_argument("MultiPoly: arity mismatch");
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const {
    MultiPoly r = *this;
    r -= other;
    return r;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
    if (nvars_ != other.nvars_) throw std::invalid_argument("MultiPoly: arity mismatch");
    for (const auto& [e, c] : other.terms_) add_term(e, Rational(-c));
    return *this;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, Rational(-c));
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
    if (nvars_ != other.nvars_) throw std::invalid_argument("MultiPoly: arity mismatch");
    MultiPoly r(nvars_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : other.terms_) {
            Exponents e(nvars_);
            for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, Rational(c1 * c2));
        }
    }
    return r;
}

MultiPoly MultiPoly::scale(const Rational& c) const {
    MultiPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, coef] : terms_) r.add_term(e, Rational(coef * c));
    return r;
}

MultiPoly MultiPoly::pow(unsigned n) const {
    MultiPoly r = constant(nvars_, Rational(1));
    for (unsigned i = 0; i < n; ++i) r = r * (*this);
    return r;
}

Rational MultiPoly::evaluate(const Vec& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("MultiPoly::evaluate: arity mismatch");
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (int i = 0; i < nvars_; ++i) {
            for (int k = 0; k < e[i]; ++k) term *= point[i];
        }
        total += term;
    }
    return total;
}

MultiPoly MultiPoly::compose_affine(const AffineMap& map) const {
    if (map.codomain_dim() != nvars_)
        throw std::invalid_argument("compose_affine: map codomain does not match polynomial arity");
    const int tn = static_cast<int>(map.domain_dim());

    // Affine image of each variable, with powers memoized up to the
    // maximal exponent in which the variable occurs.
    std::vector<std::vector<MultiPoly>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        int max_e = 0;
        for (const auto& [e, c] : terms_) max_e = std::max(max_e, e[i]);
        Vec row(tn);
        for (int j = 0; j < tn; ++j) row[j] = map.matrix(i, j);
        MultiPoly xi = MultiPoly::affine(row, map.translation[i]);
        powers[i].push_back(MultiPoly::constant(tn, Rational(1)));
        for (int k = 1; k <= max_e; ++k) powers[i].push_back(powers[i].back() * xi);
    }

    MultiPoly result(tn);
    for (const auto& [e, c] : terms_) {
        MultiPoly term = MultiPoly::constant(tn, c);
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] > 0) term = term * powers[i][e[i]];
        }
        result += term;
    }
    return result;
}

std::vector<MultiPoly> MultiPoly::gradient() const {
    std::vector<MultiPoly> grads;
    for (int i = 0; i < nvars_; ++i) {
        MultiPoly g(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents d = e;
            d[i] -= 1;
            g.add_term(d, Rational(c * e[i]));
        }
        grads.push_back(std::move(g));
    }
    return grads;
}

MultiPoly MultiPoly::radial_derivative() const {
    MultiPoly r(nvars_);
    std::vector<MultiPoly> grads = gradient();
    for (int i = 0; i < nvars_; ++i) r += grads[i] * MultiPoly::variable(nvars_, i);
    return r;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << format_rational(c);
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] > 0) {
                out << "*x" << i;
                if (e[i] > 1) out << "^" << e[i];
            }
        }
    }
    return out.str();
}

}  // namespace kstab
