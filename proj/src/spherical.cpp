#include "kstab/spherical.hpp"

#include <algorithm>

namespace kstab {

namespace {

Rational dot(const Vec& a, const Vec& b) {
    Rational s = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

SphericalDatum::SphericalDatum(LatticeChart chart, LatticePolytope delta,
                               std::vector<RootEntry> roots, ValuationCone cone,
                               std::map<int, Rational> inv_offset_overrides, bool fano_flag)
    : chart_(std::move(chart)),
      delta_(std::move(delta)),
      roots_(std::move(roots)),
      cone_(std::move(cone)),
      inv_offset_overrides_(std::move(inv_offset_overrides)),
      fano_flag_(fano_flag) {
    const int r = chart_.dim();
    if (delta_.dim() != r) throw std::invalid_argument("SphericalDatum: rank mismatch");
    if (!delta_.origin_interior())
        throw std::invalid_argument("SphericalDatum: origin must be interior to the polytope");
    for (const auto& f : delta_.facets()) {
        if (!(f.offset > 0)) throw std::invalid_argument("SphericalDatum: facet offset must be positive");
    }

    for (const auto& root : roots_) {
        if (root.pairing.size() != r)
            throw std::invalid_argument("SphericalDatum: root pairing dimension mismatch");
        if (!(root.weyl_pairing > 0))
            throw std::invalid_argument("SphericalDatum: Weyl pairing must be positive");
    }

    // The valuation cone must be full-dimensional, with ray generators
    // independent of the linear part.
    {
        const size_t nlin = cone_.lin_basis.size();
        Mat span(nlin + cone_.ray_gens.size(), r);
        Eigen::Index row = 0;
        for (const auto& v : cone_.lin_basis) span.row(row++) = ivec_to_vec(v).transpose();
        for (const auto& v : cone_.ray_gens) span.row(row++) = ivec_to_vec(v).transpose();
        if (nlin > 0) {
            Mat lin(nlin, r);
            for (size_t i = 0; i < nlin; ++i) lin.row(i) = ivec_to_vec(cone_.lin_basis[i]).transpose();
            if (rank_of(lin) != static_cast<int>(nlin))
                throw std::invalid_argument("SphericalDatum: lin_basis is linearly dependent");
            for (const auto& ray : cone_.ray_gens) {
                Mat with_ray(nlin + 1, r);
                with_ray.topRows(nlin) = lin;
                with_ray.row(nlin) = ivec_to_vec(ray).transpose();
                if (rank_of(with_ray) == static_cast<int>(nlin))
                    throw std::invalid_argument(
                        "SphericalDatum: ray generator lies in the linear part");
            }
        }
        if (row > 0 && rank_of(span) != r)
            throw std::invalid_argument("SphericalDatum: valuation cone is not full-dimensional");
        if (row == 0) throw std::invalid_argument("SphericalDatum: valuation cone is empty");
    }

    // P and Q. The common denominator prod <varpi, alpha> is applied once.
    p_ = MultiPoly::constant(r, Rational(1));
    q_ = MultiPoly(r);
    Rational weyl_product = 1;
    std::vector<MultiPoly> factors;
    for (const auto& root : roots_) {
        factors.push_back(MultiPoly::affine(root.pairing, root.chi_pairing));
        weyl_product *= root.weyl_pairing;
    }
    for (const auto& f : factors) p_ = p_ * f;
    for (size_t a = 0; a < roots_.size(); ++a) {
        MultiPoly term = MultiPoly::constant(r, roots_[a].weyl_pairing);
        for (size_t b = 0; b < roots_.size(); ++b) {
            if (b != a) term = term * factors[b];
        }
        q_ += term;
    }
    if (!roots_.empty()) {
        p_ = p_.scale(1 / weyl_product);
        q_ = q_.scale(1 / weyl_product);
    }

    // P must be nonnegative at the vertices and positive somewhere
    // inside; the vertex centroid is a convenient interior point.
    {
        Vec centroid = Vec::Zero(r);
        for (const auto& v : delta_.vertices()) {
            if (p_.evaluate(v) < 0)
                throw std::invalid_argument(
                    "SphericalDatum: Duistermaat-Heckman polynomial negative at a vertex");
            centroid += v;
        }
        centroid /= Rational(static_cast<int>(delta_.vertices().size()));
        if (!(p_.evaluate(centroid) > 0))
            throw std::invalid_argument(
                "SphericalDatum: Duistermaat-Heckman polynomial not positive inside");
    }

    for (const auto& [idx, value] : inv_offset_overrides_) {
        const Facet* f = delta_.facet_for_inequality(idx);
        if (f == nullptr)
            throw std::invalid_argument("SphericalDatum: override on unknown facet index");
        if (value < 0)
            throw std::invalid_argument("SphericalDatum: override must be nonnegative");
        if (!dh_vanishes_on_facet(*f))
            throw std::invalid_argument(
                "SphericalDatum: override allowed only where the DH polynomial vanishes");
    }

    volume_ = integrate_polytope(p_, delta_);
    if (volume_ == 0) throw std::invalid_argument("SphericalDatum: degenerate datum (V = 0)");
    two_a_ = (integrate_boundary(p_, delta_) + 2 * integrate_polytope(q_, delta_)) / volume_;

    pyramids_ = delta_.pyramid_decomposition();

    // K = 2aP - 2Q - (1/n_i)(d_xP)(x) - (r/n_i) P and J = -P/n_i on the
    // pyramid over facet i; overridden facets use the replacement 1/n_i.
    MultiPoly radial = p_.radial_derivative();
    for (const auto& f : delta_.facets()) {
        Rational nu = inv_offset(f.index);
        MultiPoly ki = p_.scale(two_a_) - q_.scale(Rational(2)) -
                       (radial + p_.scale(Rational(r))).scale(nu);
        MultiPoly ji = p_.scale(-nu);
        k_.pieces.emplace_back(f.index, std::move(ki));
        j_.pieces.emplace_back(f.index, std::move(ji));
    }
}

Rational SphericalDatum::inv_offset(int facet_index) const {
    auto it = inv_offset_overrides_.find(facet_index);
    if (it != inv_offset_overrides_.end()) return it->second;
    const Facet* f = delta_.facet_for_inequality(facet_index);
    if (f == nullptr) throw std::invalid_argument("inv_offset: unknown facet index");
    return 1 / f->offset;
}

bool SphericalDatum::dh_vanishes_on_facet(const Facet& f) const {
    if (roots_.empty()) return false;  // P == 1
    // P is a product of affine forms; it vanishes identically on the
    // facet iff one factor vanishes at every facet vertex.
    for (const auto& root : roots_) {
        bool vanishes = true;
        for (int id : f.vertex_ids) {
            if (dot(root.pairing, delta_.vertex(id)) + root.chi_pairing != 0) {
                vanishes = false;
                break;
            }
        }
        if (vanishes) return true;
    }
    return false;
}

PiecewisePoly SphericalDatum::l_m_polynomial(int m, bool use_two_varpi_x) const {
    if (roots_.empty())
        throw std::invalid_argument(
            "l_m_polynomial: empty root set (use the K and J densities instead)");
    const int r = rank();
    const Rational card(static_cast<int>(roots_.size()));

    std::vector<MultiPoly> factors;
    std::vector<Rational> tv;
    for (const auto& root : roots_) {
        factors.push_back(MultiPoly::affine(root.pairing, root.chi_pairing));
        if (use_two_varpi_x) {
            if (!root.two_varpi_x_pairing)
                throw std::invalid_argument("l_m_polynomial: missing <alpha, 2 varpi_X> pairing");
            tv.push_back(*root.two_varpi_x_pairing);
        } else {
            tv.push_back(root.two_varpi_pairing);
        }
    }

    PiecewisePoly result;
    for (const auto& f : delta_.facets()) {
        Rational nu = inv_offset(f.index);
        MultiPoly total(r);
        for (size_t a = 0; a < roots_.size(); ++a) {
            // <alpha, (m/n_i - 2a)(x+chi) + Card(R+)(x/n_i + 2 varpi)>
            MultiPoly head = factors[a].scale(Rational(m) * nu - two_a_) +
                             MultiPoly::affine(roots_[a].pairing, Rational(0)).scale(card * nu) +
                             MultiPoly::constant(r, card * tv[a]);
            for (size_t b = 0; b < roots_.size(); ++b) {
                if (b != a) head = head * factors[b];
            }
            total += head;
        }
        result.pieces.emplace_back(f.index, std::move(total));
    }
    return result;
}

}  // namespace kstab
