#pragma once

#include "hdjac/decide.hpp"
#include "hdjac/higher.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace hdjac {

// Explicit spec document:
// { "p": int, "vars": [names], "trunc": int,
//   "images": { var: [poly-string per t-power] },
//   "F": [poly-strings]              (optional, for the Jacobian-type report)
//   "samples": [[str, str], ...]     (optional, product-rule sample pairs) }
struct SpecDocument {
    HDSpec spec;
    std::vector<std::string> vars;
    std::vector<PolyMod> F;
    std::vector<std::pair<PolyMod, PolyMod>> samples;
};

SpecDocument load_spec_document(const nlohmann::json& j);
SpecDocument load_spec_file(const std::string& path);

nlohmann::json verdict_to_json(const Verdict& v, const std::vector<std::string>& vars,
                               std::uint32_t p);

// Fresh symbol names for certificate expressions: F (or F1..Fk) and S.
std::vector<std::string> certificate_symbols(std::size_t tuple_size);

}  // namespace hdjac
