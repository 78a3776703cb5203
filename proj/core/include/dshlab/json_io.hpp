#pragma once

// JSON encodings for matrices, models, elements, substitutions, tower
// models and pipeline certificates. Doubles round-trip exactly.

#include <nlohmann/json.hpp>

#include "dshlab/dsh_model.hpp"
#include "dshlab/dynamics.hpp"
#include "dshlab/matrix.hpp"
#include "dshlab/pipeline.hpp"

namespace dshlab {

using Json = nlohmann::json;

/// {"n": n, "entries": [[[re, im], ...], ...]} in row-major order.
Json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const Json& j);

/// {"levels": [{"dim": n, "points": [{"id", "glued", "gluing": [{"level", "point"}]}]}]}
Json model_to_json(const FiniteDshModel& m);
FiniteDshModel model_from_json(const Json& j);

/// Object keyed by "level/point" for every free point.
Json element_to_json(const Element& e);
Element element_from_json(const Json& j, ModelPtr model);

/// {"alphabet": [...], "rules": {"0": "01", ...}, "seed": "0"}
Json substitution_to_json(const Substitution& s);
Substitution substitution_from_json(const Json& j);

/// Model JSON plus a "dynamics" block with base word, return words and horizon.
Json tower_to_json(const TowerModel& t);

Json return_words_to_json(const ReturnWords& rw);

/// Stage array and summary; `include_timing` controls the runtime field.
Json certificate_to_json(const PipelineCertificate& c, bool include_timing = true);

}  // namespace dshlab
