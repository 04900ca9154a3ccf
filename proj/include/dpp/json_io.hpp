#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "dpp/environment.hpp"
#include "dpp/features.hpp"
#include "dpp/relation.hpp"

namespace dpp {

// Ordered documents everywhere so emitted reports are byte-stable.
using Json = nlohmann::ordered_json;

// A parsed problem definition document.
struct DppFile {
  Interface iface;
  Environment env;
  std::string preference_kind;                // "" when no preference was given
  std::optional<TrajRelation> relation;
  std::optional<FreqRelation> circ_relation;  // inner relation when embedded
  std::optional<FeatureMap> feature_map;
  std::optional<GammaWeights> gamma;
};

// Parses and validates a definition document. Every rejection is a ParseError
// whose pointer is a JSON-pointer-style path to the offending field.
DppFile parse_dpp(const Json& doc);

// Reads and parses a definition file; IO and JSON syntax failures are
// ParseErrors with an empty pointer.
DppFile load_dpp(const std::string& path);

// Feature-action wire form: "<feature>|<action>". The action is the segment
// after the final '|'; feature names may themselves contain pipes.
std::string fa_key(const FAKey& key, const FeatureMap& phi, const Interface& iface);
FAKey parse_fa_key(const std::string& text, const FeatureMap& phi,
                   const Interface& iface, const std::string& where);

}  // namespace dpp
