#include "kstab/report.hpp"

#include <sstream>

namespace kstab {

using nlohmann::ordered_json;

namespace {

ordered_json rational_entry(const Rational& value) {
    return format_rational(value);
}

ordered_json vec_entry(const Vec& v) {
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(format_rational(v[i]));
    return arr;
}

ordered_json ivec_entry(const IVec& v) {
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i].str());
    return arr;
}

ordered_json header(const InputFile& input, const RunOptions& opts, const std::string& command) {
    ordered_json j;
    j["command"] = command;
    j["name"] = input.name;
    j["input_hash"] = input_hash(input, input.resolve_param(opts.param), opts.chi_index);
    if (input.has_parameter()) {
        auto s = input.resolve_param(opts.param);
        j["parameter"] = ordered_json{{"name", *input.param_name}, {"value", format_rational(*s)}};
    }
    if (opts.chi_index) j["chi_candidate"] = *opts.chi_index;
    return j;
}

ordered_json facet_table(const SphericalDatum& d) {
    ordered_json facets = ordered_json::array();
    for (const auto& f : d.delta().facets()) {
        ordered_json row;
        row["index"] = f.index;
        row["normal"] = ivec_entry(f.normal);
        row["offset"] = rational_entry(f.offset);
        Rational inv = d.inv_offset(f.index);
        if (inv != 1 / f.offset) row["override_inv_offset"] = rational_entry(inv);
        row["sigma_volume"] = rational_entry(f.sigma_volume);
        facets.push_back(row);
    }
    return facets;
}

ordered_json certificate_entry(const PositivityCertificate& cert) {
    ordered_json j;
    switch (cert.outcome) {
        case PositivityOutcome::Nonnegative: j["outcome"] = "nonnegative"; break;
        case PositivityOutcome::Counterexample: j["outcome"] = "counterexample"; break;
        case PositivityOutcome::Inconclusive: j["outcome"] = "inconclusive"; break;
    }
    j["depth_used"] = cert.depth_used;
    j["simplices_checked"] = cert.simplices_checked;
    if (cert.counterexample_point) {
        j["counterexample"] = ordered_json{{"point", vec_entry(*cert.counterexample_point)},
                                           {"value", rational_entry(*cert.counterexample_value)}};
    }
    return j;
}

ordered_json verdict_entry(const Verdict& v) {
    ordered_json j;
    j["verdict"] = to_string(v.kind);
    if (!v.reason.empty()) j["reason"] = v.reason;
    j["volume"] = rational_entry(v.volume);
    j["two_a"] = rational_entry(v.two_a);
    j["mass"] = rational_entry(v.mass);
    j["barycenter"] = vec_entry(v.barycenter_point);
    j["certificate"] = certificate_entry(v.certificate);
    ordered_json cone;
    cone["lin_annihilated"] = v.cone_check.lin_annihilated;
    cone["rays_strict"] = v.cone_check.rays_strict;
    ordered_json gens = ordered_json::array();
    for (const auto& gen : v.stc.values) {
        ordered_json row;
        row["slope"] = ivec_entry(gen.slope);
        row["type"] = gen.is_ray ? "ray" : "lin";
        row["L"] = rational_entry(gen.l_value);
        gens.push_back(row);
    }
    cone["generator_L_values"] = gens;
    j["cone_check"] = cone;
    if (v.stc.witness) {
        j["stc_witness"] = ordered_json{{"slope", ivec_entry(*v.stc.witness)},
                                        {"L", rational_entry(*v.stc.witness_value)}};
    }
    return j;
}

ordered_json fano_entry(const SphericalDatum& d) {
    ordered_json j;
    if (!d.fano_flag()) return j;
    try {
        FanoReport fano = fano_check(d);
        j["two_a"] = rational_entry(fano.two_a);
        j["expected_two_a"] = rational_entry(fano.expected_two_a);
        j["two_a_matches"] = fano.two_a_matches;
        j["identity_holds"] = fano.identity_holds;
        j["detail"] = fano.detail;
    } catch (const std::invalid_argument& e) {
        j["inactive"] = e.what();
    }
    return j;
}

}  // namespace

ordered_json info_report(const InputFile& input, const RunOptions& opts) {
    SphericalDatum d = input.instantiate(opts.param, opts.chi_index);
    ordered_json j = header(input, opts, "info");
    j["rank"] = d.rank();
    j["volume"] = rational_entry(d.volume());
    j["two_a"] = rational_entry(d.two_a());
    j["dh_degree"] = d.dh_polynomial().degree();
    j["q_degree"] = d.q_polynomial().is_zero() ? 0 : d.q_polynomial().degree();
    j["dh_polynomial"] = d.dh_polynomial().to_string();
    j["q_polynomial"] = d.q_polynomial().to_string();
    j["vertex_count"] = d.delta().vertices().size();
    j["facets"] = facet_table(d);
    ordered_json fano = fano_entry(d);
    if (!fano.is_null() && !fano.empty()) j["fano"] = fano;
    return j;
}

ordered_json check_report(const InputFile& input, const RunOptions& opts) {
    SphericalDatum d = input.instantiate(opts.param, opts.chi_index);
    Verdict v = full_criterion(d, opts.depth);
    ordered_json j = header(input, opts, "check");
    ordered_json body = verdict_entry(v);
    j.insert(body.begin(), body.end());
    ordered_json fano = fano_entry(d);
    if (!fano.is_null() && !fano.empty()) j["fano"] = fano;
    return j;
}

ordered_json eval_report(const InputFile& input, const PLConcave& g, const RunOptions& opts) {
    SphericalDatum d = input.instantiate(opts.param, opts.chi_index);
    Rational l = functional_L(d, g);
    Rational ls = functional_L_smooth(d, g);
    if (l != ls)
        throw std::logic_error("internal invariant violated: functional_L != functional_L_smooth");
    Rational jv = functional_J(d, g);
    ordered_json j = header(input, opts, "eval");
    j["pl"] = serialize_pl(g);
    j["test_config"] = is_test_config(d, g);
    j["L"] = rational_entry(l);
    j["L_smooth"] = rational_entry(ls);
    j["J"] = rational_entry(jv);
    j["MNA"] = rational_entry(l / (2 * d.volume()));
    j["JNA"] = rational_entry(jv / d.volume());
    return j;
}

ordered_json scan_report(const InputFile& input, const RunOptions& opts, const ScanOptions& scan) {
    if (!input.has_parameter()) throw SchemaError("scan requires a parametric input file");
    if (!(scan.lo < scan.hi)) throw SchemaError("scan range is empty");
    DatumFamily family = [&](const Rational& s) { return input.instantiate(s, opts.chi_index); };

    ordered_json j = header(input, opts, "scan");
    j["range"] = ordered_json::array({format_rational(scan.lo), format_rational(scan.hi)});
    if (scan.bisect) {
        BisectResult res = scan_bisect(family, scan.lo, scan.hi, scan.width, opts.depth);
        ordered_json b;
        b["width"] = format_rational(scan.width);
        b["bracket"] = ordered_json::array({format_rational(res.lo), format_rational(res.hi)});
        Rational mid = (res.lo + res.hi) / 2;
        b["midpoint"] = format_rational(mid);
        b["midpoint_decimal"] = decimal_string(mid, 6);
        b["certificate_runs"] = res.certificate_runs;
        b["at_lo"] = verdict_entry(res.at_lo);
        b["at_hi"] = verdict_entry(res.at_hi);
        j["bisect"] = b;
    } else {
        int steps = scan.steps;
        if (steps < 2) throw SchemaError("scan --steps must be at least 2");
        std::vector<Rational> samples;
        for (int k = 0; k < steps; ++k)
            samples.push_back(scan.lo + (scan.hi - scan.lo) * Rational(k) / Rational(steps - 1));
        auto results = scan_samples(family, samples, opts.depth, opts.jobs);
        ordered_json rows = ordered_json::array();
        for (const auto& [s, verdict] : results) {
            ordered_json row;
            row["s"] = format_rational(s);
            row["verdict"] = to_string(verdict.kind);
            row["two_a"] = rational_entry(verdict.two_a);
            row["mass"] = rational_entry(verdict.mass);
            row["barycenter"] = vec_entry(verdict.barycenter_point);
            row["certificate"] = certificate_entry(verdict.certificate);
            rows.push_back(row);
        }
        j["samples"] = rows;
    }
    return j;
}

namespace {

void render_value(std::ostringstream& out, const ordered_json& value, int indent) {
    const std::string pad(indent, ' ');
    if (value.is_object()) {
        out << "\n";
        for (auto it = value.begin(); it != value.end(); ++it) {
            out << pad << it.key() << ":";
            render_value(out, it.value(), indent + 2);
        }
    } else if (value.is_array()) {
        bool scalar = true;
        for (const auto& el : value)
            if (el.is_object() || el.is_array()) scalar = false;
        if (scalar) {
            out << " [";
            for (size_t i = 0; i < value.size(); ++i) {
                if (i) out << ", ";
                out << (value.at(i).is_string() ? value.at(i).get<std::string>()
                                                : value.at(i).dump());
            }
            out << "]\n";
        } else {
            out << "\n";
            for (size_t i = 0; i < value.size(); ++i) {
                out << pad << "- ";
                std::ostringstream sub;
                render_value(sub, value.at(i), indent + 2);
                std::string text = sub.str();
                if (!text.empty() && text[0] == '\n') text.erase(0, 1);
                // First line inline after the dash.
                size_t first_end = text.find('\n');
                std::string first = text.substr(0, first_end);
                size_t skip = first.find_first_not_of(' ');
                out << (skip == std::string::npos ? first : first.substr(skip)) << "\n";
                if (first_end != std::string::npos && first_end + 1 < text.size())
                    out << text.substr(first_end + 1);
            }
        }
    } else if (value.is_string()) {
        out << " " << value.get<std::string>() << "\n";
    } else {
        out << " " << value.dump() << "\n";
    }
}

}  // namespace

std::string render_text(const ordered_json& report) {
    std::ostringstream out;
    for (auto it = report.begin(); it != report.end(); ++it) {
        out << it.key() << ":";
        render_value(out, it.value(), 2);
    }
    return out.str();
}

std::string gallery_report(const std::vector<std::string>& paths, int jobs) {
    std::ostringstream out;
    for (const auto& path : paths) {
        InputFile input = load_input_file(path);
        RunOptions opts;
        opts.jobs = jobs;
        out << info_report(input, opts).dump(2) << "\n";
        out << check_report(input, opts).dump(2) << "\n";
        if (input.has_parameter() && input.param_range) {
            ScanOptions scan;
            scan.lo = input.param_range->first;
            scan.hi = input.param_range->second;
            scan.steps = 5;
            out << scan_report(input, opts, scan).dump(2) << "\n";
        }
    }
    return out.str();
}

}  // namespace kstab
