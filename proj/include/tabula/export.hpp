#pragma once

#include <string>

#include <json.hpp>

#include "tabula/trace.hpp"

namespace tabula {

// Serializations of both tree forms. JSON objects carry `rule`, `used`
// (null at leaves), `content` or `explicit`, and `children`, in that key
// order. DOT output lists children left to right and annotates leaves:
// closed ones with a cross, open completed ones with their model.

nlohmann::ordered_json to_json(const TreeOfLists& tree);
nlohmann::ordered_json to_json(const Tableau& t);

std::string to_dot(const TreeOfLists& tree);
std::string to_dot(const Tableau& t);

std::string to_ascii(const TreeOfLists& tree);
std::string to_ascii(const Tableau& t);

} // namespace tabula
