#pragma once

#include <string>

#include "folim/interp.hpp"
#include "folim/structure.hpp"
#include "folim/tree.hpp"
#include "folim/treestat.hpp"

namespace folim {

/// Edge list: first line "n m", then m lines "u v" (0-based). Optional color
/// file: n lines of integers.
Structure readEdgeList(const std::string& path, const std::string& colorPath = "");

/// {"signature":{"relations":[{"name":..,"arity":..}],"colors":c},
///  "size":n,"tables":{name:[[..],..]}}
Structure readStructureJson(const std::string& path);
std::string structureToJson(const Structure& s);

/// {"n":n,"parent":[..] (root points to itself),"color":[..],"h":h}
RootedTree readTreeJson(const std::string& path);
std::string treeToJson(const RootedTree& t);

/// {"h":..,"r":..,"types":[{"color":..,"children":[{"type":id,"count":k}]}],
///  "tuples":[{"path":[typeId..],"mass":"p/q"}],
///  "w":[{"from":tupleIdx,"to":tupleIdx,"count":k}]}
TreeStatistic readStatisticJson(const std::string& path);
std::string statisticToJson(const TreeStatistic& stat);

/// {source:{...}, target:{...}, exponent:k, defs:{relName: formulaString}}
BasicScheme readSchemeJson(const std::string& path);

} // namespace folim
