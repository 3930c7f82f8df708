#pragma once

#include "umbra/noperator.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace umbra {

using Json = nlohmann::ordered_json;

/// Canonical JSON forms. LaurentPoly:
///   {"dim": n, "terms": [{"exp": [e1..en],
///                         "coef": [{"apow": j, "num": "...", "den": "..."}]}]}
/// terms sorted lexicographically by exponent, coef terms by a-power.
/// Multi-symbol spacing exponents widen "apow" to an array; a nonzero
/// imaginary part adds "inum"/"iden".
Json to_json(const GaussRat& v);
Json to_json(const SpacingScalar& s);
Json to_json(const LaurentPoly& p);

SpacingScalar spacing_from_json(const Json& j);
LaurentPoly poly_from_json(const Json& j);

/// Series serialization: label, truncation order and the 1-axis
/// coefficient list.
Json series_to_json(const ShiftInvariantOp& op, int order, int axis = 0);

/// Human form of a 1-axis series, as a D-polynomial up to the order.
std::string render_series(const ShiftInvariantOp& op, int order, int axis = 0);

/// When the series is a finite combination of shifts sum_s w_s e^{s a D}
/// (weights found by a Vandermonde solve and verified beyond the stencil),
/// renders it in shift form, e.g. "1/(2a) S^1 - 1/(2a) S^-1".
std::optional<std::string> render_shift_stencil(const ShiftInvariantOp& op, int axis = 0,
                                                int max_half_width = 4, int verify_order = 16);

/// Run manifest: schema, subcommand, parameters, tolerances, residuals and
/// produced files; written next to the data outputs.
class ManifestWriter {
public:
    ManifestWriter(std::string subcommand, std::filesystem::path out_dir);

    void set_param(const std::string& key, const Json& value);
    void set_tolerance(const std::string& key, double value);
    void set_residual(const std::string& key, const Json& value);
    void add_output(const std::filesystem::path& file);

    Json manifest() const;
    std::filesystem::path write() const;  // <out_dir>/manifest.json

private:
    std::string subcommand_;
    std::filesystem::path out_dir_;
    Json params_ = Json::object();
    Json tolerances_ = Json::object();
    Json residuals_ = Json::object();
    std::vector<std::string> outputs_;
};

void write_text_file(const std::filesystem::path& path, const std::string& content);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace umbra
