#include "kstab/integrate.hpp"

#include <numeric>

namespace kstab {

Rational integrate_over_simplex(const MultiPoly& p, const Simplex& s) {
    const int k = s.dim();
    if (p.nvars() != static_cast<int>(s.vertices[0].size()))
        throw std::invalid_argument("integrate_over_simplex: arity mismatch");
    if (s.lattice_normalized_volume <= 0)
        throw std::invalid_argument("integrate_over_simplex: degenerate simplex");

    // Pull back through t -> v0 + sum t_j (v_j - v0) and use the
    // monomial formula on the standard simplex. The stored measure of
    // the simplex absorbs every Jacobian and normalization factor:
    // int_s p dnu = nu(s) * k! * sum_a c_a * prod(a_i!) / (k + |a|)!.
    AffineMap map;
    map.translation = s.vertices[0];
    map.matrix = Mat::Zero(s.vertices[0].size(), k);
    for (int j = 0; j < k; ++j) map.matrix.col(j) = s.vertices[j + 1] - s.vertices[0];
    MultiPoly q = p.compose_affine(map);

    Rational sum = 0;
    for (const auto& [e, c] : q.terms()) {
        int total = std::accumulate(e.begin(), e.end(), 0);
        Rational factor(1);
        for (int a : e) factor *= Rational(factorial(a));
        factor /= Rational(factorial(k + total));
        sum += c * factor;
    }
    return s.lattice_normalized_volume * Rational(factorial(k)) * sum;
}

Simplex make_simplex(const std::vector<Vec>& vertices, const LatticeChart& chart) {
    const int r = static_cast<int>(vertices.size()) - 1;
    Mat edges(r, r);
    for (int j = 0; j < r; ++j) edges.col(j) = vertices[j + 1] - vertices[0];
    Simplex s;
    s.vertices = vertices;
    s.lattice_normalized_volume =
        abs_rational(determinant(edges)) / Rational(factorial(r)) * chart.mu_factor();
    return s;
}

Rational integrate_polytope(const MultiPoly& p, const LatticePolytope& poly) {
    Rational total = 0;
    for (const auto& s : poly.triangulation()) total += integrate_over_simplex(p, s);
    return total;
}

Rational integrate_facet(const MultiPoly& p, const Facet& f) {
    Rational total = 0;
    for (const auto& s : f.triangulation) total += integrate_over_simplex(p, s);
    return total;
}

Rational integrate_boundary(const MultiPoly& p, const LatticePolytope& poly) {
    Rational total = 0;
    for (const auto& f : poly.facets()) total += integrate_facet(p, f);
    return total;
}

Int lattice_point_count(const LatticePolytope& poly, int dilate) {
    const int r = poly.dim();
    // Work in M-coordinates, where the lattice is Z^r.
    std::vector<Vec> lattice_verts;
    for (const auto& v : poly.vertices()) lattice_verts.push_back(poly.chart().to_lattice(v));
    std::vector<Int> lo(r), hi(r);
    for (int i = 0; i < r; ++i) {
        Rational mn = lattice_verts[0][i], mx = lattice_verts[0][i];
        for (const auto& v : lattice_verts) {
            if (v[i] < mn) mn = v[i];
            if (v[i] > mx) mx = v[i];
        }
        lo[i] = rational_floor(mn * dilate);
        hi[i] = rational_ceil(mx * dilate);
    }
    Int count = 0;
    std::vector<Int> point(r);
    std::function<void(int)> rec = [&](int i) {
        if (i == r) {
            Vec m(r);
            for (int k = 0; k < r; ++k) m[k] = Rational(point[k]) / dilate;
            if (poly.contains(poly.chart().to_ambient(m))) ++count;
            return;
        }
        for (Int t = lo[i]; t <= hi[i]; ++t) {
            point[i] = t;
            rec(i + 1);
        }
    };
    rec(0);
    return count;
}

}  // namespace kstab
