#include "kstab/functionals.hpp"

#include <algorithm>

namespace kstab {

namespace {

Rational dot(const Vec& a, const Vec& b) {
    Rational s = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

PLConcave::PLConcave(std::vector<PLPiece> pieces) {
    if (pieces.empty()) throw std::invalid_argument("PLConcave: no pieces");
    for (const auto& piece : pieces) {
        bool dup = false;
        for (const auto& kept : pieces_) {
            if (kept.slope == piece.slope && kept.constant == piece.constant) {
                dup = true;
                break;
            }
        }
        if (!dup) pieces_.push_back(piece);
    }
}

PLConcave PLConcave::constant_function(int rank, const Rational& c) {
    return PLConcave({PLPiece{Vec::Zero(rank), c}});
}

PLConcave PLConcave::linear(const Vec& slope_ncoords, const Rational& c) {
    return PLConcave({PLPiece{slope_ncoords, c}});
}

Rational PLConcave::value(const LatticeChart& chart, const Vec& ambient) const {
    Vec lattice = chart.to_lattice(ambient);
    Rational best;
    bool first = true;
    for (const auto& piece : pieces_) {
        Rational v = dot(piece.slope, lattice) + piece.constant;
        if (first || v < best) {
            best = v;
            first = false;
        }
    }
    return best;
}

int PLConcave::active_piece(const LatticeChart& chart, const Vec& ambient) const {
    Vec lattice = chart.to_lattice(ambient);
    int best_idx = 0;
    Rational best;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        Rational v = dot(pieces_[i].slope, lattice) + pieces_[i].constant;
        if (i == 0 || v < best) {
            best = v;
            best_idx = static_cast<int>(i);
        }
    }
    return best_idx;
}

std::vector<AffinePiece> PLConcave::ambient_pieces(const LatticeChart& chart) const {
    std::vector<AffinePiece> out;
    for (const auto& piece : pieces_) {
        out.push_back({chart.ncoords_to_functional(piece.slope), piece.constant});
    }
    return out;
}

bool in_linear_part(const ValuationCone& cone, const Vec& ncoords) {
    const Eigen::Index r = ncoords.size();
    Mat lin(cone.lin_basis.size(), r);
    for (size_t i = 0; i < cone.lin_basis.size(); ++i)
        lin.row(i) = ivec_to_vec(cone.lin_basis[i]).transpose();
    if (cone.lin_basis.empty()) {
        for (Eigen::Index i = 0; i < r; ++i)
            if (ncoords[i] != 0) return false;
        return true;
    }
    Mat with(cone.lin_basis.size() + 1, r);
    with.topRows(lin.rows()) = lin;
    with.row(lin.rows()) = ncoords.transpose();
    return rank_of(with) == rank_of(lin);
}

bool slope_in_cone(const ValuationCone& cone, const Vec& ncoords) {
    const Eigen::Index r = ncoords.size();
    const int nlin = static_cast<int>(cone.lin_basis.size());
    const int nray = static_cast<int>(cone.ray_gens.size());
    // u lies in Lin + cone(rays) iff it is a linear combination with
    // nonnegative coefficients on some subset of rays that is
    // independent modulo Lin (Caratheodory on the quotient).
    std::vector<std::vector<int>> subsets{{}};
    for (int i = 0; i < nray; ++i) {
        size_t n = subsets.size();
        for (size_t s = 0; s < n; ++s) {
            auto extended = subsets[s];
            extended.push_back(i);
            subsets.push_back(std::move(extended));
        }
    }
    for (const auto& subset : subsets) {
        Mat a(r, nlin + subset.size());
        for (int i = 0; i < nlin; ++i) a.col(i) = ivec_to_vec(cone.lin_basis[i]);
        for (size_t j = 0; j < subset.size(); ++j)
            a.col(nlin + j) = ivec_to_vec(cone.ray_gens[subset[j]]);
        auto sol = solve_consistent(a, ncoords);
        if (!sol) continue;
        // Consistency of the representation requires nonnegative ray
        // coefficients; any free choice made by the solver is fine as
        // long as the residual representation stays in the cone.
        bool ok = true;
        for (size_t j = 0; j < subset.size(); ++j)
            if ((*sol)[nlin + j] < 0) ok = false;
        if (ok) return true;
    }
    return false;
}

bool is_test_config(const SphericalDatum& d, const PLConcave& g) {
    for (const auto& piece : g.pieces()) {
        if (!slope_in_cone(d.cone(), piece.slope)) return false;
    }
    for (const auto& v : d.delta().vertices()) {
        if (g.value(d.chart(), v) < 0) return false;
    }
    return true;
}

namespace {

// Piece-vs-piece constraints selecting the region where piece j is the
// pointwise minimum.
std::vector<HalfSpace> piece_constraints(const std::vector<AffinePiece>& pieces, size_t j) {
    std::vector<HalfSpace> out;
    for (size_t k = 0; k < pieces.size(); ++k) {
        if (k == j) continue;
        Vec n = pieces[j].slope - pieces[k].slope;
        bool zero = true;
        for (Eigen::Index i = 0; i < n.size(); ++i)
            if (n[i] != 0) zero = false;
        if (zero) continue;  // distinct pieces with equal slopes: constant order decides globally
        out.push_back({n, pieces[k].constant - pieces[j].constant});
    }
    return out;
}

// Refinement cells: pyramid simplex intersected with a linearity region.
struct Cell {
    int facet_index;
    int piece;
    LatticePolytope body;
};

std::vector<Cell> refinement_cells(const SphericalDatum& d, const std::vector<AffinePiece>& pieces) {
    std::vector<Cell> cells;
    for (const auto& [facet_index, simplices] : d.pyramids()) {
        for (const auto& simplex : simplices) {
            auto base = simplex_halfspaces(simplex.vertices);
            for (size_t j = 0; j < pieces.size(); ++j) {
                // A piece dominated by an equal-slope earlier piece never wins.
                bool dominated = false;
                for (size_t k = 0; k < pieces.size() && !dominated; ++k) {
                    if (k == j) continue;
                    if (pieces[j].slope == pieces[k].slope &&
                        (pieces[k].constant < pieces[j].constant ||
                         (pieces[k].constant == pieces[j].constant && k < j)))
                        dominated = true;
                }
                if (dominated) continue;
                auto system = base;
                auto extra = piece_constraints(pieces, j);
                system.insert(system.end(), extra.begin(), extra.end());
                auto body = LatticePolytope::try_build(d.chart(), std::move(system));
                if (body) cells.push_back({facet_index, static_cast<int>(j), std::move(*body)});
            }
        }
    }
    return cells;
}

MultiPoly piece_poly(const AffinePiece& piece) {
    return MultiPoly::affine(piece.slope, piece.constant);
}

const MultiPoly& density_for(const PiecewisePoly& density, int facet_index) {
    for (const auto& [idx, poly] : density.pieces) {
        if (idx == facet_index) return poly;
    }
    throw std::logic_error("density_for: unknown facet index");
}

}  // namespace

Rational functional_L(const SphericalDatum& d, const PLConcave& g) {
    const auto pieces = g.ambient_pieces(d.chart());
    const auto regions = linearity_subdivision(d.delta(), pieces);
    const int num_delta_ineqs = static_cast<int>(d.delta().inequalities().size());

    // 2 (a P - Q) with 2a carried exactly.
    MultiPoly weight = d.dh_polynomial().scale(d.two_a()) - d.q_polynomial().scale(Rational(2));

    Rational interior = 0, boundary = 0;
    for (const auto& [j, region] : regions) {
        MultiPoly gj = piece_poly(pieces[j]);
        interior += integrate_polytope(gj * weight, region);
        // Faces of the region lying on facets of the original polytope
        // carry the boundary term; regions partition each facet up to
        // measure zero.
        MultiPoly integrand = gj * d.dh_polynomial();
        for (const auto& face : region.facets()) {
            if (face.index >= num_delta_ineqs) continue;
            boundary += integrate_facet(integrand, face);
        }
    }
    return interior - boundary;
}

Rational functional_J(const SphericalDatum& d, const PLConcave& g) {
    const auto pieces = g.ambient_pieces(d.chart());
    const auto regions = linearity_subdivision(d.delta(), pieces);

    // max over the polytope = max over vertices of the subdivision.
    bool first = true;
    Rational max_g;
    for (const auto& [j, region] : regions) {
        for (const auto& v : region.vertices()) {
            Rational val = g.value(d.chart(), v);
            if (first || val > max_g) {
                max_g = val;
                first = false;
            }
        }
    }

    Rational integral = 0;
    for (const auto& [j, region] : regions) {
        integral += integrate_polytope(piece_poly(pieces[j]) * d.dh_polynomial(), region);
    }
    return max_g * d.volume() - integral;
}

Rational functional_L_smooth(const SphericalDatum& d, const PLConcave& g) {
    const auto pieces = g.ambient_pieces(d.chart());
    Rational total = 0;
    for (const auto& cell : refinement_cells(d, pieces)) {
        const MultiPoly& ki = density_for(d.density_k(), cell.facet_index);
        const MultiPoly& ji = density_for(d.density_j(), cell.facet_index);
        MultiPoly gj = piece_poly(pieces[cell.piece]);
        // d_xg(x) on the region is the piece's linear part evaluated at x.
        MultiPoly dxg = MultiPoly::affine(pieces[cell.piece].slope, Rational(0));
        total += integrate_polytope(gj * ki + dxg * ji, cell.body);
    }
    return total;
}

Rational mabuchi_na(const SphericalDatum& d, const PLConcave& g) {
    return functional_L(d, g) / (2 * d.volume());
}

Rational j_na(const SphericalDatum& d, const PLConcave& g) {
    return functional_J(d, g) / d.volume();
}

Barycenter barycenter(const SphericalDatum& d) {
    const int r = d.rank();
    Rational mass = 0;
    Vec moment = Vec::Zero(r);
    for (const auto& [facet_index, simplices] : d.pyramids()) {
        MultiPoly kj = density_for(d.density_k(), facet_index) + density_for(d.density_j(), facet_index);
        for (const auto& s : simplices) {
            mass += integrate_over_simplex(kj, s);
            for (int i = 0; i < r; ++i)
                moment[i] += integrate_over_simplex(kj * MultiPoly::variable(r, i), s);
        }
    }
    if (mass == 0) throw std::invalid_argument("barycenter: zero (K+J) mass");
    Barycenter b;
    b.mass = mass;
    b.point = moment / mass;
    return b;
}

std::array<Rational, 5> decomposition_terms(const SphericalDatum& d, const PLConcave& g) {
    const auto pieces = g.ambient_pieces(d.chart());
    const Barycenter bary = barycenter(d);
    const Vec& b = bary.point;
    const int r = d.rank();

    const Rational g_at_b = g.value(d.chart(), b);
    const int piece_at_b = g.active_piece(d.chart(), b);
    const Vec slope_b = pieces[piece_at_b].slope;  // ambient form of d_b g
    const Rational slope_b_dot_b = dot(slope_b, b);

    std::array<Rational, 5> terms{Rational(0), Rational(0), Rational(0), Rational(0), Rational(0)};
    for (const auto& cell : refinement_cells(d, pieces)) {
        const MultiPoly& ki = density_for(d.density_k(), cell.facet_index);
        const MultiPoly& ji = density_for(d.density_j(), cell.facet_index);
        MultiPoly kji = ki + ji;
        const Vec& aj = pieces[cell.piece].slope;
        MultiPoly gj = piece_poly(pieces[cell.piece]);

        // d_xg(x - b) = a_j . (x - b) on the cell.
        MultiPoly dxg_shift = MultiPoly::affine(aj, -dot(aj, b));
        // d_bg(x - b) = slope_b . (x - b).
        MultiPoly dbg_shift = MultiPoly::affine(slope_b, -slope_b_dot_b);

        MultiPoly t1 = (dxg_shift - gj + MultiPoly::constant(r, g_at_b)) * ji;
        MultiPoly t2 = (gj - MultiPoly::constant(r, g_at_b) - dbg_shift) * kji;
        MultiPoly t3 = ji.scale(dot(aj, b));
        MultiPoly t4 = ki.scale(g_at_b);
        MultiPoly t5 = dbg_shift * kji;

        terms[0] += integrate_polytope(t1, cell.body);
        terms[1] += integrate_polytope(t2, cell.body);
        terms[2] += integrate_polytope(t3, cell.body);
        terms[3] += integrate_polytope(t4, cell.body);
        terms[4] += integrate_polytope(t5, cell.body);
    }
    return terms;
}

PLConcave twist(const PLConcave& g, const Vec& l_ncoords, const ValuationCone& cone) {
    if (!in_linear_part(cone, l_ncoords))
        throw std::invalid_argument("twist: direction outside the linear part of the cone");
    std::vector<PLPiece> pieces;
    for (const auto& piece : g.pieces()) {
        pieces.push_back({piece.slope + l_ncoords, piece.constant});
    }
    return PLConcave(std::move(pieces));
}

namespace {

struct SectionResult {
    Rational best_value;
    Rational width;
    long evaluations = 0;
    bool bracketed = true;
};

// Exact-arithmetic section search for a convex function of one rational
// variable. Returns the best sampled value and the width of the final
// interval of uncertainty around the minimizer.
SectionResult section_minimize(const std::function<Rational(const Rational&)>& f,
                               const Rational& tol, Rational& argmin) {
    SectionResult res;
    Rational lo = argmin - 1, hi = argmin + 1;
    Rational f_lo = f(lo), f_hi = f(hi), f_mid = f(argmin);
    res.evaluations = 3;
    // Expand until the midpoint is no worse than both endpoints.
    int expansions = 0;
    Rational mid = argmin;
    while ((f_lo < f_mid || f_hi < f_mid) && expansions < 64) {
        Rational width = hi - lo;
        if (f_lo < f_hi) {
            hi = mid;
            f_hi = f_mid;
            mid = lo;
            f_mid = f_lo;
            lo = lo - width;
            f_lo = f(lo);
        } else {
            lo = mid;
            f_lo = f_mid;
            mid = hi;
            f_mid = f_hi;
            hi = hi + width;
            f_hi = f(hi);
        }
        ++res.evaluations;
        ++expansions;
    }
    if (expansions >= 64) {
        res.bracketed = false;
        res.best_value = std::min(f_mid, std::min(f_lo, f_hi));
        res.width = hi - lo;
        return res;
    }
    // Ternary shrink: convexity keeps the minimizer inside [lo, hi].
    Rational best = f_mid;
    Rational best_arg = mid;
    while (hi - lo > tol) {
        Rational third = (hi - lo) / 3;
        Rational m1 = lo + third, m2 = hi - third;
        Rational f1 = f(m1), f2 = f(m2);
        res.evaluations += 2;
        if (f1 < best) {
            best = f1;
            best_arg = m1;
        }
        if (f2 < best) {
            best = f2;
            best_arg = m2;
        }
        if (f1 <= f2)
            hi = m2;
        else
            lo = m1;
    }
    res.best_value = best;
    res.width = hi - lo;
    argmin = best_arg;
    return res;
}

}  // namespace

TwistReduction twist_reduced_jna(const SphericalDatum& d, const PLConcave& g, const Rational& tol) {
    if (!(tol > 0)) throw std::invalid_argument("twist_reduced_jna: tolerance must be positive");
    const auto& lin = d.cone().lin_basis;
    TwistReduction out;
    out.evaluations = 0;
    if (lin.empty()) {
        out.value = j_na(d, g);
        out.bracket_width = 0;
        out.converged = true;
        out.evaluations = 1;
        return out;
    }

    const int q = static_cast<int>(lin.size());
    std::vector<Rational> coeff(q, Rational(0));
    auto eval = [&](const std::vector<Rational>& c) {
        Vec l = Vec::Zero(d.rank());
        for (int k = 0; k < q; ++k) l += c[k] * ivec_to_vec(lin[k]);
        return j_na(d, twist(g, l, d.cone()));
    };

    Rational current = eval(coeff);
    ++out.evaluations;
    Rational width = 0;
    bool all_bracketed = true;
    const int max_passes = q == 1 ? 1 : 40;
    for (int pass = 0; pass < max_passes; ++pass) {
        Rational before = current;
        width = 0;
        for (int k = 0; k < q; ++k) {
            auto f1d = [&](const Rational& t) {
                auto c = coeff;
                c[k] = t;
                return eval(c);
            };
            SectionResult res = section_minimize(f1d, tol, coeff[k]);
            out.evaluations += res.evaluations;
            all_bracketed = all_bracketed && res.bracketed;
            current = std::min(current, res.best_value);
            width = std::max(width, res.width);
        }
        if (before - current == 0 && pass > 0) break;
    }
    out.value = current;
    out.bracket_width = width;
    out.converged = all_bracketed;
    return out;
}

}  // namespace kstab
