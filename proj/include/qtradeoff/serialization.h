// Copyright 2026 The qtradeoff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QTRADEOFF_SERIALIZATION_H
#define QTRADEOFF_SERIALIZATION_H

#include <string>
#include <variant>

#include "json.hpp"
#include "qtradeoff/channels.h"

namespace qtradeoff {

// Scenario schema:
//   {"dim": d, "kind": "kraus" | "povm" (optional, default "kraus"),
//    "elements": [{"r": int, "mu": int, "re": [[...]], "im": [[...]]}, ...]}
// "mu" and "im" are optional (default 0). POVM files take one element per r.

nlohmann::json to_json(const Povm &povm);
nlohmann::json to_json(const KrausOperation &op);

/// The raw element list of a scenario, checked for shape but not for
/// completeness. Throws Error(Schema) on any structural problem.
struct ScenarioElements {
    bool is_povm = false;
    std::size_t dim = 0;
    std::vector<KrausElement> elements;
};
ScenarioElements parse_scenario(const nlohmann::json &doc);

using Scenario = std::variant<Povm, KrausOperation>;

/// parse_scenario followed by validation; completeness or positivity
/// failures surface as CompletenessViolated / NotPsd with tolerance tol.
Scenario scenario_from_json(const nlohmann::json &doc, double tol = 1e-8);

Povm povm_from_json(const nlohmann::json &doc, double tol = kDefaultTol);
KrausOperation operation_from_json(const nlohmann::json &doc, double tol = kDefaultTol);

}  // namespace qtradeoff

#endif
