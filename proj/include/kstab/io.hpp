/**
 * Input schema, parsing and serialization.
 *
 * Input files are JSON; every rational is the string "p/q" (or "p").
 * Quantities that may depend on the file's single rational parameter
 * (facet offsets, chi pairings, facet overrides) accept either a plain
 * rational string or an affine record {"const": "c", "param_coeff": "m"}
 * meaning c + m*s.
 */

#ifndef KSTAB_IO_HPP
#define KSTAB_IO_HPP

#include <json.hpp>
#include <optional>
#include <string>

#include "kstab/functionals.hpp"
#include "kstab/spherical.hpp"

namespace kstab {

/// Input-data problem; the message names the offending field.
struct SchemaError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// c + m*s, with m = 0 for plain rationals.
struct AffineRational {
    Rational constant;
    Rational param_coeff;
    bool depends_on_param() const { return param_coeff != 0; }
    Rational eval(const std::optional<Rational>& s) const;
};

struct InputRoot {
    Vec pairing;
    AffineRational chi_pairing;
    Rational weyl_pairing;
    Rational two_varpi_pairing;
    std::optional<Rational> two_varpi_x_pairing;
};

/// Facet override: replacement for n_i, or "inf" (meaning 1/n_i = 0).
struct OverrideValue {
    bool infinite = false;
    AffineRational offset;  // replacement n_i when finite
};

struct InputFile {
    std::string name;
    int rank = 0;
    Mat lattice_basis;  // columns are the M-basis vectors
    std::vector<std::pair<Vec, AffineRational>> inequalities;
    std::vector<InputRoot> roots;
    std::vector<IVec> lin_basis, rays;
    std::optional<std::string> param_name;
    std::optional<std::pair<Rational, Rational>> param_range;
    std::optional<Rational> param_default;
    bool fano_mode = false;
    std::map<int, OverrideValue> facet_overrides;
    std::vector<Vec> chi_candidates;  // ambient shifts of chi

    bool has_parameter() const { return param_name.has_value(); }

    /// Build the exact datum at a parameter value (defaulted from the
    /// file when omitted) and optional chi candidate. Validates that
    /// every inequality supports its own facet.
    SphericalDatum instantiate(std::optional<Rational> param = std::nullopt,
                               std::optional<int> chi_index = std::nullopt) const;

    /// Resolve the parameter value the same way instantiate() does.
    std::optional<Rational> resolve_param(const std::optional<Rational>& param) const;
};

InputFile parse_input(const nlohmann::json& j);
InputFile load_input_file(const std::string& path);

/// Canonical serialized form; parse(serialize(x)) == x field by field.
nlohmann::ordered_json serialize_input(const InputFile& input);

PLConcave parse_pl(const nlohmann::json& j, int rank);
PLConcave load_pl_file(const std::string& path, int rank);
nlohmann::ordered_json serialize_pl(const PLConcave& g);

/// FNV-1a 64-bit hash of the canonical input form plus instantiation
/// choices; echoed in every report.
std::string input_hash(const InputFile& input, const std::optional<Rational>& param,
                       const std::optional<int>& chi_index);

}  // namespace kstab

#endif  // KSTAB_IO_HPP
