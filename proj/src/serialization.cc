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

#include "qtradeoff/serialization.h"

#include <algorithm>
#include <set>

namespace qtradeoff {

using nlohmann::json;

namespace {

json matrix_part(const ComplexMatrix &m, bool imaginary) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); i++) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); j++) {
            row.push_back(imaginary ? m(i, j).imag() : m(i, j).real());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json element_json(std::size_t r, std::size_t mu, const ComplexMatrix &m) {
    return json{{"r", r}, {"mu", mu}, {"re", matrix_part(m, false)}, {"im", matrix_part(m, true)}};
}

[[noreturn]] void schema_error(const std::string &what) {
    throw Error(ErrorKind::Schema, what);
}

std::size_t read_index(const json &obj, const char *key, bool required) {
    if (!obj.contains(key)) {
        if (required) {
            schema_error(std::string("element is missing \"") + key + "\"");
        }
        return 0;
    }
    const json &v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        schema_error(std::string("\"") + key + "\" must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

void read_part(const json &obj, const char *key, std::size_t dim, bool imaginary, ComplexMatrix &m) {
    if (!obj.contains(key)) {
        if (imaginary) {
            return;
        }
        schema_error(std::string("element is missing \"") + key + "\"");
    }
    const json &rows = obj.at(key);
    if (!rows.is_array() || rows.size() != dim) {
        schema_error(std::string("\"") + key + "\" must be a " + std::to_string(dim) + "x" + std::to_string(dim) +
                     " array");
    }
    for (std::size_t i = 0; i < dim; i++) {
        const json &row = rows[i];
        if (!row.is_array() || row.size() != dim) {
            schema_error(std::string("row ") + std::to_string(i) + " of \"" + key + "\" has the wrong length");
        }
        for (std::size_t j = 0; j < dim; j++) {
            if (!row[j].is_number()) {
                schema_error(std::string("\"") + key + "\" entries must be numbers");
            }
            double v = row[j].get<double>();
            if (imaginary) {
                m(i, j) = Complex(m(i, j).real(), v);
            } else {
                m(i, j) = Complex(v, m(i, j).imag());
            }
        }
    }
}

}  // namespace

json to_json(const Povm &povm) {
    json elements = json::array();
    for (std::size_t r = 0; r < povm.size(); r++) {
        elements.push_back(element_json(r, 0, povm[r]));
    }
    return json{{"dim", povm.dim()}, {"kind", "povm"}, {"elements", std::move(elements)}};
}

json to_json(const KrausOperation &op) {
    json elements = json::array();
    for (const auto &e : op.elements()) {
        elements.push_back(element_json(e.r, e.mu, e.a));
    }
    return json{{"dim", op.dim()}, {"kind", "kraus"}, {"elements", std::move(elements)}};
}

ScenarioElements parse_scenario(const json &doc) {
    if (!doc.is_object()) {
        schema_error("scenario must be a JSON object");
    }
    static const std::set<std::string> top_keys{"dim", "kind", "elements"};
    for (const auto &item : doc.items()) {
        if (!top_keys.contains(item.key())) {
            schema_error("unknown key \"" + item.key() + "\"");
        }
    }
    ScenarioElements out;
    if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
        schema_error("\"dim\" must be a positive integer");
    }
    out.dim = doc["dim"].get<std::size_t>();
    if (doc.contains("kind")) {
        if (!doc["kind"].is_string()) {
            schema_error("\"kind\" must be a string");
        }
        std::string kind = doc["kind"].get<std::string>();
        if (kind == "povm") {
            out.is_povm = true;
        } else if (kind != "kraus") {
            schema_error("\"kind\" must be \"kraus\" or \"povm\"");
        }
    }
    if (!doc.contains("elements") || !doc["elements"].is_array() || doc["elements"].empty()) {
        schema_error("\"elements\" must be a non-empty array");
    }
    static const std::set<std::string> element_keys{"r", "mu", "re", "im"};
    for (const auto &e : doc["elements"]) {
        if (!e.is_object()) {
            schema_error("each element must be an object");
        }
        for (const auto &item : e.items()) {
            if (!element_keys.contains(item.key())) {
                schema_error("unknown element key \"" + item.key() + "\"");
            }
        }
        KrausElement k;
        k.r = read_index(e, "r", true);
        k.mu = read_index(e, "mu", false);
        k.a = ComplexMatrix(out.dim);
        read_part(e, "re", out.dim, false, k.a);
        read_part(e, "im", out.dim, true, k.a);
        out.elements.push_back(std::move(k));
    }
    if (out.is_povm) {
        std::set<std::size_t> seen;
        for (const auto &k : out.elements) {
            if (!seen.insert(k.r).second) {
                schema_error("POVM scenario repeats outcome " + std::to_string(k.r));
            }
        }
        std::sort(out.elements.begin(), out.elements.end(),
                  [](const KrausElement &a, const KrausElement &b) { return a.r < b.r; });
        for (std::size_t i = 0; i < out.elements.size(); i++) {
            if (out.elements[i].r != i) {
                schema_error("POVM outcomes must be labeled 0..n-1");
            }
        }
    }
    return out;
}

Scenario scenario_from_json(const json &doc, double tol) {
    ScenarioElements parsed = parse_scenario(doc);
    if (parsed.is_povm) {
        std::vector<ComplexMatrix> m;
        for (auto &k : parsed.elements) {
            m.push_back(std::move(k.a));
        }
        return Povm(std::move(m), tol);
    }
    return KrausOperation(std::move(parsed.elements), tol);
}

Povm povm_from_json(const json &doc, double tol) {
    auto s = scenario_from_json(doc, tol);
    if (auto *p = std::get_if<Povm>(&s)) {
        return std::move(*p);
    }
    schema_error("expected a POVM scenario");
}

KrausOperation operation_from_json(const json &doc, double tol) {
    auto s = scenario_from_json(doc, tol);
    if (auto *k = std::get_if<KrausOperation>(&s)) {
        return std::move(*k);
    }
    schema_error("expected a Kraus operation scenario");
}

}  // namespace qtradeoff
