#pragma once

#include "json.hpp"
#include "z2s/decide.hpp"
#include "z2s/gmforms.hpp"
#include "z2s/invariants.hpp"
#include "z2s/linkforms.hpp"

namespace z2s {

using Json = nlohmann::ordered_json;

// Integers are JSON numbers when they fit in 64 bits, decimal strings otherwise.
Json to_json(const Int& x);
Int int_from_json(const Json& j);
Json to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const Json& j);

// {"factors": [...], "denominator": N, "numerators": [[...]], "nu_generators": ["a/b", ...]}
Json to_json(const FinQuadLinkForm& L);
FinQuadLinkForm linkform_from_json(const Json& j);

Json to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

Json to_json(const BAutResult& r);
Json to_json(const Ell5Result& r);
Json to_json(const NikulinResult& r);
Json to_json(const HomologyTable& t);
Json to_json(const AppendixReport& r);

Theorem theorem_from_string(const std::string& s);
Route route_from_string(const std::string& s);

}  // namespace z2s
