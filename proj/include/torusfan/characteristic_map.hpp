#ifndef TORUSFAN_CHARACTERISTIC_MAP_HPP
#define TORUSFAN_CHARACTERISTIC_MAP_HPP

#include <map>
#include <vector>

namespace torusfan {

/// Integer n-vector attached to each rank-1 element, keyed by element id.
using CharacteristicMap = std::map<int, std::vector<long long>>;

}  // namespace torusfan

#endif
