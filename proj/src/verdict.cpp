#include "kstab/verdict.hpp"

#include <algorithm>
#include <thread>

namespace kstab {

std::string to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::UniformlyKStable: return "UniformlyKStable";
        case VerdictKind::KSemistableOnly: return "KSemistableOnly";
        case VerdictKind::NotStcPolystable: return "NotStcPolystable";
        case VerdictKind::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

PositivityCertificate nonneg_certificate(const SphericalDatum& d, int max_depth) {
    PositivityCertificate total;
    total.outcome = PositivityOutcome::Nonnegative;
    for (const auto& [facet_index, simplices] : d.pyramids()) {
        MultiPoly target(d.rank());
        for (const auto& [idx, poly] : d.density_k().pieces)
            if (idx == facet_index) target = -poly;
        for (const auto& [idx, poly] : d.density_j().pieces)
            if (idx == facet_index) target -= poly;
        for (const auto& s : simplices) {
            PositivityCertificate cert = certify_nonnegative(target, s.vertices, max_depth);
            total.simplices_checked += cert.simplices_checked;
            total.depth_used = std::max(total.depth_used, cert.depth_used);
            if (cert.outcome == PositivityOutcome::Counterexample) {
                total.outcome = cert.outcome;
                total.counterexample_point = cert.counterexample_point;
                total.counterexample_value = cert.counterexample_value;
                return total;
            }
            if (cert.outcome == PositivityOutcome::Inconclusive)
                total.outcome = PositivityOutcome::Inconclusive;
        }
    }
    return total;
}

ConeCheck barycenter_cone_check(const Barycenter& b, const ValuationCone& cone,
                                const LatticeChart& chart) {
    ConeCheck check;
    Vec b_lattice = chart.to_lattice(b.point);
    auto pair_with_b = [&](const IVec& u) {
        Rational s = 0;
        for (Eigen::Index i = 0; i < u.size(); ++i) s += Rational(u[i]) * b_lattice[i];
        return s;
    };
    check.lin_annihilated = true;
    for (const auto& u : cone.lin_basis) {
        Rational v = pair_with_b(u);
        check.lin_values.push_back(v);
        if (v != 0) check.lin_annihilated = false;
    }
    check.rays_strict = true;
    for (const auto& u : cone.ray_gens) {
        Rational v = pair_with_b(u);
        check.ray_values.push_back(v);
        if (!(v < 0)) check.rays_strict = false;
    }
    return check;
}

StcResult stc_polystability(const SphericalDatum& d) {
    StcResult res;
    res.passes = true;
    auto l_of = [&](const IVec& slope) {
        return functional_L(d, PLConcave::linear(ivec_to_vec(slope)));
    };
    for (const auto& u : d.cone().lin_basis) {
        Rational value = l_of(u);
        res.values.push_back({u, false, value});
        if (value != 0) {
            res.passes = false;
            if (!res.witness) {
                // L is linear on linear test functions, so one sign of u
                // gives a strictly negative value.
                res.witness = value < 0 ? u : IVec(-u);
                res.witness_value = value < 0 ? value : Rational(-value);
            }
        }
    }
    for (const auto& u : d.cone().ray_gens) {
        Rational value = l_of(u);
        res.values.push_back({u, true, value});
        if (!(value > 0)) {
            res.passes = false;
            if (!res.witness) {
                // value < 0 is an outright witness; value = 0 witnesses a
                // nonproduct special degeneration with vanishing invariant
                // (the ray is not in the linear part by datum validity).
                res.witness = u;
                res.witness_value = value;
            }
        }
    }
    return res;
}

Verdict full_criterion(const SphericalDatum& d, int max_depth) {
    Verdict v;
    v.volume = d.volume();
    v.two_a = d.two_a();
    Barycenter b = barycenter(d);
    v.mass = b.mass;
    v.barycenter_point = b.point;
    v.certificate = nonneg_certificate(d, max_depth);
    v.cone_check = barycenter_cone_check(b, d.cone(), d.chart());
    v.stc = stc_polystability(d);

    if (v.certificate.outcome == PositivityOutcome::Nonnegative) {
        bool rays_nonneg = true;
        for (const auto& gen : v.stc.values) {
            if (gen.is_ray && gen.l_value < 0) rays_nonneg = false;
        }
        bool lin_zero = v.cone_check.lin_annihilated;
        if (lin_zero && v.cone_check.rays_strict) {
            v.kind = VerdictKind::UniformlyKStable;
        } else if (lin_zero && rays_nonneg) {
            v.kind = VerdictKind::KSemistableOnly;
            v.reason = "barycenter on the boundary of the dual cone";
        } else {
            v.kind = VerdictKind::NotStcPolystable;
        }
    } else if (!v.stc.passes) {
        v.kind = VerdictKind::NotStcPolystable;
    } else {
        v.kind = VerdictKind::Inconclusive;
        v.reason = v.certificate.outcome == PositivityOutcome::Counterexample
                       ? "density -(K+J) is negative somewhere: the sufficient criterion does not apply"
                       : "nonnegativity certificate exhausted its subdivision depth";
    }
    return v;
}

FanoReport fano_check(const SphericalDatum& d) {
    for (const auto& f : d.delta().facets()) {
        if (d.inv_offset(f.index) != 1)
            throw std::invalid_argument("fano_check: effective facet offsets must all equal 1");
    }
    for (const auto& root : d.roots()) {
        if (!root.two_varpi_x_pairing)
            throw std::invalid_argument("fano_check: missing <alpha, 2 varpi_X> pairing");
        if (root.chi_pairing != *root.two_varpi_x_pairing)
            throw std::invalid_argument("fano_check: chi pairings must equal <alpha, 2 varpi_X>");
    }

    FanoReport report;
    report.two_a = d.two_a();
    report.expected_two_a = Rational(d.rank()) + Rational(static_cast<int>(d.roots().size()));
    report.two_a_matches = report.two_a == report.expected_two_a;

    if (d.roots().empty()) {
        // Toric: the criterion density -(K+J) must be identically 1.
        report.identity_holds = true;
        MultiPoly one = MultiPoly::constant(d.rank(), Rational(1));
        for (const auto& [idx, kpoly] : d.density_k().pieces) {
            MultiPoly target = -kpoly;
            for (const auto& [jdx, jpoly] : d.density_j().pieces)
                if (jdx == idx) target -= jpoly;
            if (!(target == one)) report.identity_holds = false;
        }
        report.detail = "toric reflexive identity -(K+J) == 1";
    } else {
        // L_{r+1} must equal (r+1-2a+Card) * prod <alpha, x+chi> on each
        // pyramid; the scalar is 1 exactly when 2a matches.
        MultiPoly prod = MultiPoly::constant(d.rank(), Rational(1));
        for (const auto& root : d.roots())
            prod = prod * MultiPoly::affine(root.pairing, root.chi_pairing);
        Rational scalar = Rational(d.rank() + 1) - d.two_a() +
                          Rational(static_cast<int>(d.roots().size()));
        PiecewisePoly lr1 = d.l_m_polynomial(d.rank() + 1, true);
        report.identity_holds = true;
        for (const auto& [idx, poly] : lr1.pieces) {
            if (!((poly - prod.scale(scalar)).is_zero())) report.identity_holds = false;
        }
        report.detail = "identity L_{r+1} == (r+1-2a+Card) * prod <alpha, x+chi>";
    }
    return report;
}

std::vector<std::pair<Rational, Verdict>> scan_samples(const DatumFamily& family,
                                                       const std::vector<Rational>& samples,
                                                       int max_depth, int jobs) {
    std::vector<std::pair<Rational, Verdict>> out(samples.size());
    if (jobs < 1) jobs = 1;
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= samples.size()) break;
            SphericalDatum d = family(samples[i]);
            out[i] = {samples[i], full_criterion(d, max_depth)};
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

BisectResult scan_bisect(const DatumFamily& family, const Rational& lo, const Rational& hi,
                         const Rational& width, int max_depth) {
    if (!(lo < hi)) throw std::invalid_argument("scan_bisect: empty range");
    if (!(width > 0)) throw std::invalid_argument("scan_bisect: width must be positive");
    auto certified = [&](const Rational& s) {
        SphericalDatum d = family(s);
        return nonneg_certificate(d, max_depth).outcome == PositivityOutcome::Nonnegative;
    };
    BisectResult res;
    res.certificate_runs = 2;
    bool at_lo = certified(lo), at_hi = certified(hi);
    if (at_lo || !at_hi)
        throw std::invalid_argument(
            "scan_bisect: expected the certificate to fail at the lower endpoint and hold at the "
            "upper endpoint (no single flip in range)");
    Rational a = lo, b = hi;
    while (b - a > width) {
        Rational mid = (a + b) / 2;
        ++res.certificate_runs;
        if (certified(mid))
            b = mid;
        else
            a = mid;
    }
    res.lo = a;
    res.hi = b;
    res.at_lo = full_criterion(family(a), max_depth);
    res.at_hi = full_criterion(family(b), max_depth);
    return res;
}

}  // namespace kstab
