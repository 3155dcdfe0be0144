#include "kstab/bernstein.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

namespace kstab {

namespace {

// All compositions of total into `parts` nonnegative entries.
void for_each_composition(int total, int parts,
                          const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> comp(parts, 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == parts - 1) {
            comp[pos] = remaining;
            fn(comp);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            comp[pos] = v;
            rec(pos + 1, remaining - v);
        }
    };
    if (parts == 0) return;
    rec(0, total);
}

}  // namespace

std::map<std::vector<int>, Rational> bernstein_coefficients(const MultiPoly& p,
                                                            const std::vector<Vec>& simplex,
                                                            unsigned degree) {
    const int k = static_cast<int>(simplex.size()) - 1;
    if (p.nvars() != k)
        throw std::invalid_argument("bernstein_coefficients: simplex/polynomial arity mismatch");
    if (static_cast<int>(degree) < p.degree())
        throw std::invalid_argument("bernstein_coefficients: degree below deg(p)");

    // Express p in barycentric coordinates: x = sum_i lambda_i v_i.
    AffineMap to_x;
    to_x.matrix = Mat::Zero(k, k + 1);
    for (int i = 0; i <= k; ++i) to_x.matrix.col(i) = simplex[i];
    to_x.translation = Vec::Zero(k);
    MultiPoly in_lambda = p.compose_affine(to_x);

    // Homogenize each term to degree d with powers of (sum lambda) = 1,
    // then divide by the multinomial to land in the Bernstein basis.
    std::map<std::vector<int>, Rational> monomial;
    for (const auto& [e, c] : in_lambda.terms()) {
        int total = std::accumulate(e.begin(), e.end(), 0);
        int rest = static_cast<int>(degree) - total;
        Rational coeff = c;
        for_each_composition(rest, k + 1, [&](const std::vector<int>& beta) {
            Rational multinomial(factorial(rest));
            for (int b : beta) multinomial /= Rational(factorial(b));
            std::vector<int> idx(k + 1);
            for (int i = 0; i <= k; ++i) idx[i] = e[i] + beta[i];
            monomial[idx] += coeff * multinomial;
        });
    }
    std::map<std::vector<int>, Rational> bernstein;
    for_each_composition(static_cast<int>(degree), k + 1, [&](const std::vector<int>& a) {
        Rational c = 0;
        auto it = monomial.find(a);
        if (it != monomial.end()) c = it->second;
        Rational basis_scale(factorial(static_cast<unsigned>(degree)));
        for (int ai : a) basis_scale /= Rational(factorial(ai));
        bernstein[a] = c / basis_scale;
    });
    return bernstein;
}

std::vector<Rational> bernstein_coefficient_list(const MultiPoly& p,
                                                 const std::vector<Vec>& simplex,
                                                 unsigned degree) {
    std::vector<Rational> out;
    for (const auto& [a, c] : bernstein_coefficients(p, simplex, degree)) out.push_back(c);
    return out;
}

PositivityCertificate certify_nonnegative(const MultiPoly& p, const std::vector<Vec>& simplex,
                                          int max_depth) {
    PositivityCertificate cert;
    const int k = static_cast<int>(simplex.size()) - 1;
    const unsigned degree = static_cast<unsigned>(std::max(1, p.degree()));

    bool inconclusive = false;
    std::deque<std::pair<std::vector<Vec>, int>> work;
    work.emplace_back(simplex, 0);
    while (!work.empty()) {
        auto [verts, depth] = work.front();
        work.pop_front();
        ++cert.simplices_checked;
        cert.depth_used = std::max(cert.depth_used, depth);

        auto coeffs = bernstein_coefficients(p, verts, degree);
        bool all_nonneg = true;
        for (const auto& [a, c] : coeffs) {
            if (c >= 0) continue;
            all_nonneg = false;
            // Bernstein control point of the offending coefficient: an
            // exact negative evaluation there is a counterexample.
            Vec point = Vec::Zero(k);
            for (int i = 0; i <= k; ++i)
                point += (Rational(a[i]) / Rational(static_cast<int>(degree))) * verts[i];
            Rational value = p.evaluate(point);
            if (value < 0) {
                cert.outcome = PositivityOutcome::Counterexample;
                cert.counterexample_point = point;
                cert.counterexample_value = value;
                return cert;
            }
        }
        if (all_nonneg) continue;
        if (depth >= max_depth) {
            inconclusive = true;
            continue;
        }
        // Bisect the longest edge (ties broken by vertex order).
        int best_i = 0, best_j = 1;
        Rational best_len = -1;
        for (int i = 0; i <= k; ++i) {
            for (int j = i + 1; j <= k; ++j) {
                Vec d = verts[i] - verts[j];
                Rational len = 0;
                for (Eigen::Index t = 0; t < d.size(); ++t) len += d[t] * d[t];
                if (len > best_len) {
                    best_len = len;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        Vec mid = (verts[best_i] + verts[best_j]) / Rational(2);
        std::vector<Vec> left = verts, right = verts;
        left[best_j] = mid;
        right[best_i] = mid;
        work.emplace_back(std::move(left), depth + 1);
        work.emplace_back(std::move(right), depth + 1);
    }
    cert.outcome = inconclusive ? PositivityOutcome::Inconclusive : PositivityOutcome::Nonnegative;
    return cert;
}

}  // namespace kstab
