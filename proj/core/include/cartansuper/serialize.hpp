#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cartansuper/derivations.hpp"
#include "cartansuper/localcert.hpp"
#include "cartansuper/superalgebra.hpp"

namespace cartansuper {

inline constexpr int kSchemaVersion = 1;

/// {schema_version, family, n, grading_modulus, basis, bracket, parity,
/// degree, weight, cartan, cartan_elements}. Rationals are "num/den" strings;
/// bracket entries are [i, j, [[k, "num/den"], ...]] for nonzero [e_i, e_j].
[[nodiscard]] nlohmann::json model_to_json(const AlgebraModel& a);
/// Inverse of model_to_json. Throws ParseError on malformed or inconsistent input.
[[nodiscard]] AlgebraModel model_from_json(const nlohmann::json& j);

/// Text form with one basis descriptor and one bracket entry per line.
[[nodiscard]] std::string dump_model(const AlgebraModel& a);
[[nodiscard]] AlgebraModel parse_model(std::string_view text);

/// Rebuilds a basis descriptor ("x1x2.d3", "H(x1x2)", "C", or a W-expansion).
[[nodiscard]] BasisDesc parse_descriptor(const std::string& text, int n);

[[nodiscard]] nlohmann::json derivation_report_to_json(const DerivationReport& r);
/// elapsed_ms is written only when `timings` is set (null otherwise), so
/// reports are byte-identical across runs with the same configuration.
[[nodiscard]] nlohmann::json certificate_to_json(const Certificate& c, bool timings);

}  // namespace cartansuper
