#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "phiset/phiset.hpp"

namespace phiset::cli {

using Json = nlohmann::ordered_json;

// Parsers take the JSON value and its dotted path inside the instance
// document; every failure is an InputError naming that path.

const Json& require(const Json& obj, const std::string& key, const std::string& path);
std::size_t parse_count(const Json& j, const std::string& path);

SubsetMask parse_set(const Json& j, std::size_t universe, const std::string& path);
/// {"n":3,"subbasis":[[0,1]]}, {"n":2,"opens":[...]} or {"n":3,"kind":"discrete"}.
FinSpace parse_space(const Json& j, const std::string& path, const Limits& limits);
EvalMode parse_mode(const Json& j, const std::string& path);
/// {"alphabet":2,"branches":[[0,0],[1]],"mode":"prefix"} or a canonical
/// {"kind":"union","arity":2} / {"kind":"intersection","arity":2} /
/// {"kind":"a_operation","alphabet":2,"depth":2}.
Base parse_base(const Json& j, const std::string& path, const Limits& limits);
/// {"universe":3,"assign":{"0.0":[1,2]},"default":[]}. Keys are dotted words
/// for prefix families and decimal symbols for range families.
IndexedFamily parse_family(const Json& j, EvalMode kind, const std::string& path);
/// {"universe":3,"members":[[0],[1]]} or {"space":<space>,"derive":"opens"|"closeds"|"zero_sets"}.
SetClass parse_class(const Json& j, const std::string& path, const Limits& limits);
PointMap parse_map(const Json& j, const std::string& path, const Limits& limits);
/// {"size":3,"le":[[0,2],[1,2]]}
IndexOrder parse_order(const Json& j, const std::string& path);

Json to_json(const SubsetMask& m);
Json to_json(const SetClass& c);
Json to_json(const FinSpace& s);
Json to_json(const Base& b);
Json to_json(const IndexedFamily& f);
Json to_json(const PointMap& f);
Json to_json(const IndexOrder& o);
Json to_json(const Partition& p);

}  // namespace phiset::cli
