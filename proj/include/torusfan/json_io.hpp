#ifndef TORUSFAN_JSON_IO_HPP
#define TORUSFAN_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "torusfan/characteristic_map.hpp"
#include "torusfan/homology.hpp"
#include "torusfan/poset.hpp"

namespace torusfan {

using Json = nlohmann::ordered_json;

/// Parses text as JSON; InputError messages carry the byte offset of the failure.
Json parseJson(const std::string& text, const std::string& source = "input");
std::string readTextFile(const std::string& path);

/// {"rank": n, "cells": [{"id", "rank", "covers", "label"?}]}.  Schema errors
/// name the offending path, e.g. cells[3].covers.
RawPoset rawPosetFromJson(const Json& j);
/// Canonical form: cells by (rank, id), covers ascending, label omitted when empty.
Json posetToJson(const SimplicialPoset& poset);
Json rawPosetToJson(const RawPoset& raw);

/// {"id": [ints]}, keys are decimal element ids.
CharacteristicMap lambdaFromJson(const Json& j);
Json lambdaToJson(const CharacteristicMap& lambda);

Json homologyToJson(const HomologyGroups& h);

/// Reads and validates a poset file; violations become an InputError listing them.
SimplicialPoset loadPoset(const std::string& path, const PosetLimits& limits);
CharacteristicMap loadLambda(const std::string& path);

}  // namespace torusfan

#endif
