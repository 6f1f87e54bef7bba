#ifndef VIXBOND_MODEL_IO_HPP_
#define VIXBOND_MODEL_IO_HPP_

#include <string>
#include <variant>

#include "vixbond/models.hpp"

namespace vixbond {

using AnyModel = std::variant<VixModelParams, SpreadModelParams, ReturnsModelParams>;

inline constexpr int kModelSchemaVersion = 1;

/// JSON text with fields {schema_version, model_kind, params, fit,
/// residuals, window, series_names, fitted_at}. Doubles are written with
/// round-trip precision; non-finite values as "inf"/"-inf"/"nan".
std::string model_to_json(const AnyModel& model);

/// Throws ParseError on malformed or truncated input and SchemaVersionError
/// on an unknown schema version or model kind.
AnyModel model_from_json(const std::string& text);

/// Writes via a temporary file and rename, so readers never see a partial file.
void save_model(const AnyModel& model, const std::string& path);
AnyModel load_model(const std::string& path);

}  // namespace vixbond

#endif  // VIXBOND_MODEL_IO_HPP_
