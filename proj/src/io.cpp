#include "kstab/io.hpp"

#include <fstream>
#include <sstream>

namespace kstab {

using nlohmann::json;
using nlohmann::ordered_json;

Rational AffineRational::eval(const std::optional<Rational>& s) const {
    if (!depends_on_param()) return constant;
    if (!s) throw SchemaError("parameter value required but not provided");
    return constant + param_coeff * (*s);
}

namespace {

Rational field_rational(const json& j, const std::string& field) {
    if (!j.is_string()) throw SchemaError("field '" + field + "': expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError("field '" + field + "': " + e.what());
    }
}

AffineRational field_affine(const json& j, const std::string& field) {
    AffineRational a{Rational(0), Rational(0)};
    if (j.is_string()) {
        a.constant = field_rational(j, field);
        return a;
    }
    if (j.is_object()) {
        if (j.contains("const")) a.constant = field_rational(j.at("const"), field + ".const");
        if (j.contains("param_coeff"))
            a.param_coeff = field_rational(j.at("param_coeff"), field + ".param_coeff");
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key() != "const" && it.key() != "param_coeff")
                throw SchemaError("field '" + field + "': unknown key '" + it.key() + "'");
        }
        return a;
    }
    throw SchemaError("field '" + field + "': expected rational string or affine record");
}

Vec field_vector(const json& j, int dim, const std::string& field) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw SchemaError("field '" + field + "': expected an array of length " + std::to_string(dim));
    Vec v(dim);
    for (int i = 0; i < dim; ++i)
        v[i] = field_rational(j.at(i), field + "[" + std::to_string(i) + "]");
    return v;
}

IVec field_ivector(const json& j, int dim, const std::string& field) {
    Vec v = field_vector(j, dim, field);
    IVec out(dim);
    for (int i = 0; i < dim; ++i) {
        if (denominator(v[i]) != 1)
            throw SchemaError("field '" + field + "': expected integer entries");
        out[i] = numerator(v[i]);
    }
    return out;
}

ordered_json serialize_affine(const AffineRational& a) {
    if (!a.depends_on_param()) return format_rational(a.constant);
    ordered_json j;
    j["const"] = format_rational(a.constant);
    j["param_coeff"] = format_rational(a.param_coeff);
    return j;
}

ordered_json serialize_vec(const Vec& v) {
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(format_rational(v[i]));
    return arr;
}

ordered_json serialize_ivec(const IVec& v) {
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i].str());
    return arr;
}

}  // namespace

InputFile parse_input(const json& j) {
    InputFile in;
    if (!j.is_object()) throw SchemaError("input: expected a JSON object");
    in.name = j.value("name", std::string("unnamed"));
    if (!j.contains("rank")) throw SchemaError("field 'rank' is required");
    if (!j.at("rank").is_number_integer()) throw SchemaError("field 'rank': expected an integer");
    in.rank = j.at("rank").get<int>();
    if (in.rank < 1 || in.rank > 8) throw SchemaError("field 'rank': supported range is 1..8");
    if (j.contains("ambient_dim") && j.at("ambient_dim").get<int>() != in.rank)
        throw SchemaError("field 'ambient_dim': must equal rank");

    if (!j.contains("lattice_basis")) throw SchemaError("field 'lattice_basis' is required");
    const json& basis = j.at("lattice_basis");
    if (!basis.is_array() || static_cast<int>(basis.size()) != in.rank)
        throw SchemaError("field 'lattice_basis': expected rank-many basis vectors");
    in.lattice_basis = Mat(in.rank, in.rank);
    for (int i = 0; i < in.rank; ++i)
        in.lattice_basis.col(i) =
            field_vector(basis.at(i), in.rank, "lattice_basis[" + std::to_string(i) + "]");

    if (!j.contains("polytope") || !j.at("polytope").is_object() ||
        !j.at("polytope").contains("inequalities"))
        throw SchemaError("field 'polytope.inequalities' is required");
    const json& ineqs = j.at("polytope").at("inequalities");
    if (!ineqs.is_array() || ineqs.empty())
        throw SchemaError("field 'polytope.inequalities': expected a nonempty array");
    for (size_t i = 0; i < ineqs.size(); ++i) {
        const std::string path = "polytope.inequalities[" + std::to_string(i) + "]";
        const json& row = ineqs.at(i);
        if (!row.is_object() || !row.contains("normal") || !row.contains("offset"))
            throw SchemaError("field '" + path + "': expected {normal, offset}");
        in.inequalities.emplace_back(field_vector(row.at("normal"), in.rank, path + ".normal"),
                                     field_affine(row.at("offset"), path + ".offset"));
    }

    if (j.contains("roots")) {
        const json& roots = j.at("roots");
        if (!roots.is_array()) throw SchemaError("field 'roots': expected an array");
        for (size_t i = 0; i < roots.size(); ++i) {
            const std::string path = "roots[" + std::to_string(i) + "]";
            const json& row = roots.at(i);
            InputRoot root;
            if (!row.contains("pairing") || !row.contains("weyl_pairing") ||
                !row.contains("chi_pairing") || !row.contains("two_varpi_pairing"))
                throw SchemaError("field '" + path +
                                  "': expected pairing, chi_pairing, weyl_pairing, two_varpi_pairing");
            root.pairing = field_vector(row.at("pairing"), in.rank, path + ".pairing");
            root.chi_pairing = field_affine(row.at("chi_pairing"), path + ".chi_pairing");
            root.weyl_pairing = field_rational(row.at("weyl_pairing"), path + ".weyl_pairing");
            root.two_varpi_pairing =
                field_rational(row.at("two_varpi_pairing"), path + ".two_varpi_pairing");
            if (row.contains("two_varpi_x_pairing"))
                root.two_varpi_x_pairing =
                    field_rational(row.at("two_varpi_x_pairing"), path + ".two_varpi_x_pairing");
            in.roots.push_back(std::move(root));
        }
    }

    if (!j.contains("valuation_cone") || !j.at("valuation_cone").is_object())
        throw SchemaError("field 'valuation_cone' is required");
    const json& cone = j.at("valuation_cone");
    if (cone.contains("lin_basis")) {
        for (size_t i = 0; i < cone.at("lin_basis").size(); ++i)
            in.lin_basis.push_back(field_ivector(cone.at("lin_basis").at(i), in.rank,
                                                 "valuation_cone.lin_basis[" + std::to_string(i) + "]"));
    }
    if (cone.contains("rays")) {
        for (size_t i = 0; i < cone.at("rays").size(); ++i)
            in.rays.push_back(field_ivector(cone.at("rays").at(i), in.rank,
                                            "valuation_cone.rays[" + std::to_string(i) + "]"));
    }

    if (j.contains("parameter")) {
        const json& p = j.at("parameter");
        if (!p.is_object() || !p.contains("name"))
            throw SchemaError("field 'parameter': expected {name, range?, default?}");
        in.param_name = p.at("name").get<std::string>();
        if (p.contains("range")) {
            const json& range = p.at("range");
            if (!range.is_array() || range.size() != 2)
                throw SchemaError("field 'parameter.range': expected [lo, hi]");
            Rational lo = field_rational(range.at(0), "parameter.range[0]");
            Rational hi = field_rational(range.at(1), "parameter.range[1]");
            if (!(lo < hi)) throw SchemaError("field 'parameter.range': lo must be < hi");
            in.param_range = {lo, hi};
        }
        if (p.contains("default"))
            in.param_default = field_rational(p.at("default"), "parameter.default");
    } else {
        for (size_t i = 0; i < in.inequalities.size(); ++i) {
            if (in.inequalities[i].second.depends_on_param())
                throw SchemaError("field 'polytope.inequalities[" + std::to_string(i) +
                                  "].offset': parameter used but none declared");
        }
        for (size_t i = 0; i < in.roots.size(); ++i) {
            if (in.roots[i].chi_pairing.depends_on_param())
                throw SchemaError("field 'roots[" + std::to_string(i) +
                                  "].chi_pairing': parameter used but none declared");
        }
    }

    in.fano_mode = j.value("fano_mode", false);

    if (j.contains("facet_overrides")) {
        const json& ov = j.at("facet_overrides");
        if (!ov.is_object()) throw SchemaError("field 'facet_overrides': expected an object");
        for (auto it = ov.begin(); it != ov.end(); ++it) {
            int idx;
            try {
                idx = std::stoi(it.key());
            } catch (...) {
                throw SchemaError("field 'facet_overrides': keys must be facet indices");
            }
            OverrideValue value;
            if (it.value().is_string() && it.value().get<std::string>() == "inf") {
                value.infinite = true;
            } else {
                value.offset = field_affine(it.value(), "facet_overrides." + it.key());
            }
            in.facet_overrides[idx] = value;
        }
    }

    if (j.contains("chi_candidates")) {
        const json& cands = j.at("chi_candidates");
        if (!cands.is_array()) throw SchemaError("field 'chi_candidates': expected an array");
        for (size_t i = 0; i < cands.size(); ++i)
            in.chi_candidates.push_back(
                field_vector(cands.at(i), in.rank, "chi_candidates[" + std::to_string(i) + "]"));
    }
    return in;
}

InputFile load_input_file(const std::string& path) {
    std::ifstream stream(path);
    if (!stream) throw SchemaError("cannot open input file '" + path + "'");
    json j;
    try {
        stream >> j;
    } catch (const std::exception& e) {
        throw SchemaError("invalid JSON in '" + path + "': " + e.what());
    }
    return parse_input(j);
}

std::optional<Rational> InputFile::resolve_param(const std::optional<Rational>& param) const {
    if (!has_parameter()) {
        if (param) throw SchemaError("file declares no parameter");
        return std::nullopt;
    }
    std::optional<Rational> s = param ? param : param_default;
    if (!s) throw SchemaError("parameter '" + *param_name + "' required (no default in file)");
    if (param_range && (*s < param_range->first || *s > param_range->second))
        throw SchemaError("parameter '" + *param_name + "' outside the declared range");
    return s;
}

SphericalDatum InputFile::instantiate(std::optional<Rational> param,
                                      std::optional<int> chi_index) const {
    std::optional<Rational> s = resolve_param(param);

    Vec chi_shift = Vec::Zero(rank);
    if (chi_index) {
        if (*chi_index < 0 || *chi_index >= static_cast<int>(chi_candidates.size()))
            throw SchemaError("chi candidate index out of range");
        chi_shift = chi_candidates[*chi_index];
    }

    LatticeChart chart(lattice_basis);
    std::vector<HalfSpace> halfspaces;
    for (const auto& [normal, offset] : inequalities) {
        Rational off = offset.eval(s);
        Rational shift = 0;
        for (int i = 0; i < rank; ++i) shift += normal[i] * chi_shift[i];
        halfspaces.push_back({normal, off - shift});
    }
    LatticePolytope delta(chart, halfspaces);
    for (size_t i = 0; i < halfspaces.size(); ++i) {
        if (delta.facet_for_inequality(static_cast<int>(i)) == nullptr)
            throw SchemaError("polytope.inequalities[" + std::to_string(i) +
                              "] is redundant or duplicates another facet");
    }

    std::vector<RootEntry> entries;
    for (const auto& root : roots) {
        RootEntry e;
        e.pairing = root.pairing;
        Rational shift = 0;
        for (int i = 0; i < rank; ++i) shift += root.pairing[i] * chi_shift[i];
        e.chi_pairing = root.chi_pairing.eval(s) + shift;
        e.weyl_pairing = root.weyl_pairing;
        e.two_varpi_pairing = root.two_varpi_pairing;
        e.two_varpi_x_pairing = root.two_varpi_x_pairing;
        entries.push_back(std::move(e));
    }

    std::map<int, Rational> overrides;
    for (const auto& [idx, value] : facet_overrides) {
        if (value.infinite) {
            overrides[idx] = Rational(0);
        } else {
            Rational n = value.offset.eval(s);
            if (!(n > 0))
                throw SchemaError("facet_overrides." + std::to_string(idx) +
                                  ": replacement offset must be positive (or \"inf\")");
            overrides[idx] = 1 / n;
        }
    }

    ValuationCone cone{lin_basis, rays};
    try {
        return SphericalDatum(chart, std::move(delta), std::move(entries), std::move(cone),
                              std::move(overrides), fano_mode);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("invalid datum: ") + e.what());
    }
}

ordered_json serialize_input(const InputFile& in) {
    ordered_json j;
    j["name"] = in.name;
    j["rank"] = in.rank;
    ordered_json basis = ordered_json::array();
    for (int i = 0; i < in.rank; ++i) basis.push_back(serialize_vec(in.lattice_basis.col(i)));
    j["lattice_basis"] = basis;
    ordered_json ineqs = ordered_json::array();
    for (const auto& [normal, offset] : in.inequalities) {
        ordered_json row;
        row["normal"] = serialize_vec(normal);
        row["offset"] = serialize_affine(offset);
        ineqs.push_back(row);
    }
    j["polytope"] = ordered_json{{"inequalities", ineqs}};
    ordered_json roots = ordered_json::array();
    for (const auto& root : in.roots) {
        ordered_json row;
        row["pairing"] = serialize_vec(root.pairing);
        row["chi_pairing"] = serialize_affine(root.chi_pairing);
        row["weyl_pairing"] = format_rational(root.weyl_pairing);
        row["two_varpi_pairing"] = format_rational(root.two_varpi_pairing);
        if (root.two_varpi_x_pairing)
            row["two_varpi_x_pairing"] = format_rational(*root.two_varpi_x_pairing);
        roots.push_back(row);
    }
    j["roots"] = roots;
    ordered_json cone;
    ordered_json lin = ordered_json::array(), rays = ordered_json::array();
    for (const auto& v : in.lin_basis) lin.push_back(serialize_ivec(v));
    for (const auto& v : in.rays) rays.push_back(serialize_ivec(v));
    cone["lin_basis"] = lin;
    cone["rays"] = rays;
    j["valuation_cone"] = cone;
    if (in.param_name) {
        ordered_json p;
        p["name"] = *in.param_name;
        if (in.param_range)
            p["range"] = ordered_json::array(
                {format_rational(in.param_range->first), format_rational(in.param_range->second)});
        if (in.param_default) p["default"] = format_rational(*in.param_default);
        j["parameter"] = p;
    }
    j["fano_mode"] = in.fano_mode;
    if (!in.facet_overrides.empty()) {
        ordered_json ov;
        for (const auto& [idx, value] : in.facet_overrides) {
            if (value.infinite)
                ov[std::to_string(idx)] = "inf";
            else
                ov[std::to_string(idx)] = serialize_affine(value.offset);
        }
        j["facet_overrides"] = ov;
    }
    if (!in.chi_candidates.empty()) {
        ordered_json cands = ordered_json::array();
        for (const auto& v : in.chi_candidates) cands.push_back(serialize_vec(v));
        j["chi_candidates"] = cands;
    }
    return j;
}

PLConcave parse_pl(const json& j, int rank) {
    const json* pieces = nullptr;
    if (j.is_array())
        pieces = &j;
    else if (j.is_object() && j.contains("pieces"))
        pieces = &j.at("pieces");
    else
        throw SchemaError("pl: expected an array of pieces or {pieces: [...]}");
    if (pieces->empty()) throw SchemaError("pl.pieces: at least one piece required");
    std::vector<PLPiece> out;
    for (size_t i = 0; i < pieces->size(); ++i) {
        const std::string path = "pl.pieces[" + std::to_string(i) + "]";
        const json& row = pieces->at(i);
        if (!row.is_object() || !row.contains("slope") || !row.contains("constant"))
            throw SchemaError("field '" + path + "': expected {slope, constant}");
        out.push_back({field_vector(row.at("slope"), rank, path + ".slope"),
                       field_rational(row.at("constant"), path + ".constant")});
    }
    return PLConcave(std::move(out));
}

PLConcave load_pl_file(const std::string& path, int rank) {
    std::ifstream stream(path);
    if (!stream) throw SchemaError("cannot open pl file '" + path + "'");
    json j;
    try {
        stream >> j;
    } catch (const std::exception& e) {
        throw SchemaError("invalid JSON in '" + path + "': " + e.what());
    }
    return parse_pl(j, rank);
}

ordered_json serialize_pl(const PLConcave& g) {
    ordered_json pieces = ordered_json::array();
    for (const auto& piece : g.pieces()) {
        ordered_json row;
        row["slope"] = serialize_vec(piece.slope);
        row["constant"] = format_rational(piece.constant);
        pieces.push_back(row);
    }
    return ordered_json{{"pieces", pieces}};
}

std::string input_hash(const InputFile& input, const std::optional<Rational>& param,
                       const std::optional<int>& chi_index) {
    std::string payload = serialize_input(input).dump();
    if (param) payload += "|param=" + format_rational(*param);
    if (chi_index) payload += "|chi=" + std::to_string(*chi_index);
    uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : payload) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << hash;
    return out.str();
}

}  // namespace kstab
