#ifndef TORUSFAN_POSET_HPP
#define TORUSFAN_POSET_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace torusfan {

/// Dense position of an element inside a validated poset.  Elements are
/// stored sorted by (rank, id), so index 0 is always the root.
using Index = std::int32_t;

struct RawCell {
    int id = 0;
    int rank = 0;
    std::vector<int> covers;
    std::string label;
};

/// Unvalidated cell table, as read from the poset JSON format.
struct RawPoset {
    int rank = 0;
    std::vector<RawCell> cells;
};

struct Violation {
    int id = -1;  // offending element, -1 for whole-poset problems
    std::string check;
    std::string detail;
};

struct PosetLimits {
    int maxRank = 8;
    int maxBarycentricRank = 6;

    /// Defaults, with TORUSFAN_MAX_RANK overriding maxRank when set.
    static PosetLimits fromEnvironment();
};

/// f_i counts elements of rank i+1, i = 0..n-1.
struct FVector {
    std::vector<std::int64_t> entries;
    bool operator==(const FVector&) const = default;
};

struct HVector {
    std::vector<std::int64_t> entries;
    bool operator==(const HVector&) const = default;
};

struct ValidationResult;

/// A finite poset with a minimum in which every lower segment [0, x] is a
/// boolean lattice.  Immutable once constructed.
class SimplicialPoset {
public:
    static ValidationResult validate(const RawPoset& raw, const PosetLimits& limits = {});
    /// Throws InputError listing the violations when `raw` is not simplicial.
    static SimplicialPoset fromRaw(const RawPoset& raw, const PosetLimits& limits = {});

    int rank() const noexcept { return rank_; }
    Index size() const noexcept { return static_cast<Index>(ids_.size()); }
    Index root() const noexcept { return 0; }

    int id(Index x) const { return ids_[x]; }
    int rankOf(Index x) const { return ranks_[x]; }
    const std::string& label(Index x) const { return labels_[x]; }

    std::span<const Index> covers(Index x) const { return covers_[x]; }
    std::span<const Index> coveredBy(Index x) const { return coveredBy_[x]; }
    /// Rank-1 elements below x, ascending.
    std::span<const Index> vertices(Index x) const { return vertices_[x]; }
    /// Elements >= x, ascending.
    std::span<const Index> upSet(Index x) const { return up_[x]; }
    std::span<const Index> ofRank(int k) const;

    std::optional<Index> find(int id) const;
    /// Throws InputError for unknown ids.
    Index at(int id) const;

    bool leq(Index x, Index y) const;
    /// The element of [0, top] whose vertices are the subset of vertices(top) selected by mask.
    Index face(Index top, std::uint32_t mask) const { return faces_[top][mask]; }
    /// Mask of vertices(x) inside vertices(top); nullopt when some vertex of x is not below top.
    std::optional<std::uint32_t> vertexMask(Index top, Index x) const;
    std::vector<Index> downSet(Index x) const;

    std::vector<Index> maximalElements() const;
    /// Every maximal element has rank rank().
    bool isPure() const;

    /// Canonical cell table: cells sorted by (rank, id), covers sorted by id.
    RawPoset toRaw() const;

private:
    SimplicialPoset() = default;
    friend struct PosetBuilder;

    int rank_ = 0;
    std::vector<int> ids_;
    std::vector<int> ranks_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Index>> covers_;
    std::vector<std::vector<Index>> coveredBy_;
    std::vector<std::vector<Index>> vertices_;
    std::vector<std::vector<Index>> up_;
    std::vector<std::vector<Index>> faces_;
    std::vector<Index> rankStart_;
    std::vector<Index> indices_;  // 0..size-1, backs ofRank spans
    std::unordered_map<int, Index> byId_;
};

struct ValidationResult {
    std::optional<SimplicialPoset> poset;
    std::vector<Violation> violations;

    bool ok() const noexcept { return poset.has_value(); }
};

/// All least common upper bounds of x and y.
std::vector<Index> joinSet(const SimplicialPoset& poset, Index x, Index y);
/// The greatest common lower bound, when it is unique.  Always defined when
/// joinSet(x, y) is non-empty.
std::optional<Index> meet(const SimplicialPoset& poset, Index x, Index y);

FVector fVector(const SimplicialPoset& poset);
HVector hVector(const SimplicialPoset& poset);
/// Reads h off (t-1)^n + f_0 (t-1)^{n-1} + ... + f_{n-1}.
HVector hVectorFromF(const FVector& f);
std::int64_t eulerCharacteristic(const SimplicialPoset& poset);

/// Cells are determined by their vertex sets.
bool isSimplicialComplex(const SimplicialPoset& poset);
bool isomorphic(const SimplicialPoset& a, const SimplicialPoset& b);

}  // namespace torusfan

#endif
