#ifndef TORUSFAN_REALIZE_HPP
#define TORUSFAN_REALIZE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "torusfan/characteristic_map.hpp"
#include "torusfan/poset.hpp"

namespace torusfan {

enum class Admissibility {
    OddRank,               // n odd
    EvenMiddle,            // n even, h_{n/2} even
    OddMiddlePositive,     // n even, h_{n/2} odd, every h_i > 0
    Inadmissible,          // n even, h_{n/2} odd, some h_i = 0
    Malformed,             // not a palindromic non-negative vector with h_0 = h_n = 1, n >= 1
};

/// "case1-odd-n", "case2-even-middle", "case3-odd-middle-positive", "inadmissible", "malformed".
std::string admissibilityName(Admissibility a);

struct AdmissibilityResult {
    Admissibility verdict = Admissibility::Malformed;
    std::string reason;  // set for malformed targets
};

AdmissibilityResult admissible(const std::vector<std::int64_t>& h);

struct Block {
    enum class Kind { CPn, Sphere, SphereProduct };
    Kind kind = Kind::CPn;
    int n = 0;
    int k = 0;  // SphereProduct(k, n - k)
    bool operator==(const Block&) const = default;
};

std::string blockName(const Block& b);
HVector blockHVector(const Block& b);
SimplicialPoset buildBlock(const Block& b);

struct BlockDecomposition {
    int n = 0;
    /// Blocks with multiplicities, in connected-sum order.
    std::vector<std::pair<Block, int>> blocks;

    int blockCount() const;
    /// h-vector of the connected sum of all blocks.
    HVector target() const;
};

/// CPn first (odd middle), then sphere products ascending in k.  nullopt unless admissible.
std::optional<BlockDecomposition> decompose(const std::vector<std::int64_t>& h);

struct Realization {
    SimplicialPoset poset;
    CharacteristicMap lambda;
};

/// Folds connected sums of the blocks left to right at their first top cells and
/// checks h, Gorenstein* and the existence of a characteristic map with bound 2.
/// Any failed postcondition throws CheckFailure.
Realization realizeBlocks(const BlockDecomposition& d);
SimplicialPoset realizePoset(const BlockDecomposition& d);

struct Refusal {
    std::string stage;  // "malformed", "inadmissible" or "search-bound-exhausted"
    std::string reason;
};

std::variant<Realization, Refusal> realizeWithLambda(const std::vector<std::int64_t>& h);

}  // namespace torusfan

#endif
