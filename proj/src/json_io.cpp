#include "torusfan/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "torusfan/error.hpp"

namespace torusfan {

Json parseJson(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

std::string readTextFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

int intField(const Json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(where + ": missing field \"" + key + "\"");
    if (!it->is_number_integer()) throw InputError(where + "." + key + ": expected an integer");
    const auto v = it->get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw InputError(where + "." + key + ": integer out of range");
    return static_cast<int>(v);
}

}  // namespace

RawPoset rawPosetFromJson(const Json& j) {
    if (!j.is_object()) throw InputError("poset: expected a JSON object");
    RawPoset raw;
    raw.rank = intField(j, "rank", "poset");
    auto cells = j.find("cells");
    if (cells == j.end() || !cells->is_array()) throw InputError("poset.cells: expected an array");
    for (std::size_t i = 0; i < cells->size(); ++i) {
        const Json& c = (*cells)[i];
        const std::string where = "cells[" + std::to_string(i) + "]";
        if (!c.is_object()) throw InputError(where + ": expected an object");
        RawCell cell;
        cell.id = intField(c, "id", where);
        cell.rank = intField(c, "rank", where);
        auto covers = c.find("covers");
        if (covers == c.end() || !covers->is_array()) throw InputError(where + ".covers: expected an array");
        for (std::size_t k = 0; k < covers->size(); ++k) {
            const Json& v = (*covers)[k];
            if (!v.is_number_integer())
                throw InputError(where + ".covers[" + std::to_string(k) + "]: expected an integer");
            cell.covers.push_back(v.get<int>());
        }
        if (auto label = c.find("label"); label != c.end()) {
            if (!label->is_string()) throw InputError(where + ".label: expected a string");
            cell.label = label->get<std::string>();
        }
        raw.cells.push_back(std::move(cell));
    }
    return raw;
}

Json rawPosetToJson(const RawPoset& raw) {
    Json cells = Json::array();
    for (const auto& c : raw.cells) {
        Json cell;
        cell["id"] = c.id;
        cell["rank"] = c.rank;
        cell["covers"] = c.covers;
        if (!c.label.empty()) cell["label"] = c.label;
        cells.push_back(std::move(cell));
    }
    Json j;
    j["rank"] = raw.rank;
    j["cells"] = std::move(cells);
    return j;
}

Json posetToJson(const SimplicialPoset& poset) { return rawPosetToJson(poset.toRaw()); }

CharacteristicMap lambdaFromJson(const Json& j) {
    if (!j.is_object()) throw InputError("characteristic map: expected a JSON object");
    CharacteristicMap out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int id = 0;
        try {
            std::size_t used = 0;
            id = std::stoi(it.key(), &used);
            if (used != it.key().size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw InputError("characteristic map: key \"" + it.key() + "\" is not an integer id");
        }
        if (!it.value().is_array()) throw InputError("characteristic map[" + it.key() + "]: expected an array");
        std::vector<long long> vec;
        for (const auto& v : it.value()) {
            if (!v.is_number_integer())
                throw InputError("characteristic map[" + it.key() + "]: expected integers");
            vec.push_back(v.get<long long>());
        }
        out[id] = std::move(vec);
    }
    return out;
}

Json lambdaToJson(const CharacteristicMap& lambda) {
    Json j = Json::object();
    for (const auto& [id, vec] : lambda) j[std::to_string(id)] = vec;
    return j;
}

Json homologyToJson(const HomologyGroups& h) {
    Json out = Json::array();
    for (const auto& d : h.dims) {
        Json t = Json::array();
        for (const auto& x : d.torsion) t.push_back(x.get_si());
        out.push_back(Json{{"dim", d.dim}, {"betti", d.betti}, {"torsion", t}});
    }
    return out;
}

SimplicialPoset loadPoset(const std::string& path, const PosetLimits& limits) {
    return SimplicialPoset::fromRaw(rawPosetFromJson(parseJson(readTextFile(path), path)), limits);
}

CharacteristicMap loadLambda(const std::string& path) { return lambdaFromJson(parseJson(readTextFile(path), path)); }

}  // namespace torusfan
