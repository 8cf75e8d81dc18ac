#include "torusfan/transform.hpp"

#include <algorithm>
#include <bit>
#include <tuple>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "torusfan/error.hpp"

namespace torusfan {

namespace {

constexpr PosetLimits kBuilderLimits{20, 20};

std::string setLabel(const std::vector<int>& vs) {
    std::string s = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
    return s + "}";
}

/// Raw poset whose cells are all subsets of {1..vertexCount} of size <= maxSize,
/// with ids assigned in (size, mask) order.  Returns the id of each mask.
RawPoset subsetPoset(int vertexCount, int maxSize, int rank, std::map<std::uint32_t, int>& idOf) {
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 0; m < (1u << vertexCount); ++m)
        if (std::popcount(m) <= maxSize) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    RawPoset raw;
    raw.rank = rank;
    int next = 0;
    for (std::uint32_t m : masks) {
        idOf[m] = next;
        RawCell cell;
        cell.id = next++;
        cell.rank = std::popcount(m);
        std::vector<int> vs;
        for (int i = 0; i < vertexCount; ++i) {
            if (m & (1u << i)) {
                vs.push_back(i + 1);
                cell.covers.push_back(idOf.at(m & ~(1u << i)));
            }
        }
        cell.label = setLabel(vs);
        raw.cells.push_back(std::move(cell));
    }
    return raw;
}

int maxId(const SimplicialPoset& p) {
    int m = std::numeric_limits<int>::min();
    for (Index x = 0; x < p.size(); ++x) m = std::max(m, p.id(x));
    return m;
}

}  // namespace

SimplicialPoset barycentricSubdivision(const SimplicialPoset& poset, const PosetLimits& limits, bool force) {
    if (poset.rank() > limits.maxBarycentricRank && !force)
        throw InputError("barycentric subdivision refused for rank " + std::to_string(poset.rank()) +
                         " (limit " + std::to_string(limits.maxBarycentricRank) + "); force to override");

    std::map<std::vector<Index>, int> idOf;
    RawPoset raw;
    raw.rank = poset.rank();
    raw.cells.push_back({0, 0, {}, ""});
    idOf[{}] = 0;

    // Chains are generated in order of increasing length, so every face of a
    // chain already has an id when the chain itself is emitted.
    std::vector<std::vector<Index>> layer;
    for (Index x = 1; x < poset.size(); ++x) layer.push_back({x});
    int next = 1;
    while (!layer.empty()) {
        std::sort(layer.begin(), layer.end());
        std::vector<std::vector<Index>> longer;
        for (const auto& chain : layer) {
            RawCell cell;
            cell.id = next;
            cell.rank = static_cast<int>(chain.size());
            std::string label;
            for (std::size_t i = 0; i < chain.size(); ++i) {
                label += (i ? "<" : "") + std::to_string(poset.id(chain[i]));
                auto face = chain;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                cell.covers.push_back(idOf.at(face));
            }
            cell.label = std::move(label);
            idOf[chain] = next++;
            raw.cells.push_back(std::move(cell));
            for (Index y : poset.upSet(chain.back())) {
                if (y == chain.back()) continue;
                auto ext = chain;
                ext.push_back(y);
                longer.push_back(std::move(ext));
            }
        }
        layer.swap(longer);
    }
    PosetLimits relaxed = limits;
    relaxed.maxRank = std::max(limits.maxRank, poset.rank());
    return SimplicialPoset::fromRaw(raw, relaxed);
}

SimplicialPoset stellarSubdivision(const SimplicialPoset& poset, Index x, const PosetLimits& limits) {
    if (x == poset.root()) throw InputError("stellar subdivision at the root is undefined");
    if (x < 0 || x >= poset.size()) throw InputError("stellar subdivision at an unknown element");

    const auto star = poset.upSet(x);
    auto inStar = [&](Index y) { return std::binary_search(star.begin(), star.end(), y); };

    RawPoset raw;
    raw.rank = poset.rank();
    for (Index y = 0; y < poset.size(); ++y) {
        if (inStar(y)) continue;
        RawCell cell{poset.id(y), poset.rankOf(y), {}, poset.label(y)};
        for (Index c : poset.covers(y)) cell.covers.push_back(poset.id(c));
        raw.cells.push_back(std::move(cell));
    }

    // Cone cells are indexed by (w, z): z >= x and w a face of z missing some
    // vertex of x with vertices(w) + vertices(x) = vertices(z).
    std::map<std::pair<Index, Index>, int> coneId;
    int next = maxId(poset) + 1;
    std::vector<std::pair<Index, Index>> cones;
    for (Index z : star) {
        const std::uint32_t mx = *poset.vertexMask(z, x);
        const std::uint32_t full = (1u << poset.rankOf(z)) - 1;
        for (std::uint32_t m = 0; m <= full; ++m) {
            if ((m | mx) != full || (m & mx) == mx) continue;
            cones.emplace_back(poset.face(z, m), z);
        }
    }
    std::sort(cones.begin(), cones.end(), [&](const auto& a, const auto& b) {
        return std::tuple(poset.rankOf(a.first), a.first, a.second) <
               std::tuple(poset.rankOf(b.first), b.first, b.second);
    });
    for (const auto& key : cones) coneId[key] = next++;
    for (const auto& [w, z] : cones) {
        RawCell cell;
        cell.id = coneId.at({w, z});
        cell.rank = poset.rankOf(w) + 1;
        cell.covers.push_back(poset.id(w));
        const std::uint32_t mx = *poset.vertexMask(z, x);
        for (Index c : poset.covers(w)) {
            const Index zc = poset.face(z, *poset.vertexMask(z, c) | mx);
            cell.covers.push_back(coneId.at({c, zc}));
        }
        cell.label = w == poset.root() ? "b" : "b*" + std::to_string(poset.id(w));
        raw.cells.push_back(std::move(cell));
    }
    auto result = SimplicialPoset::fromRaw(raw, limits);
    if (eulerCharacteristic(result) != eulerCharacteristic(poset))
        throw CheckFailure("stellar subdivision changed the Euler characteristic");
    return result;
}

SimplicialPoset join(const SimplicialPoset& a, const SimplicialPoset& b, const PosetLimits& limits) {
    RawPoset raw;
    raw.rank = a.rank() + b.rank();
    const auto bs = static_cast<int>(b.size());
    auto idOf = [&](Index x, Index y) { return static_cast<int>(x) * bs + static_cast<int>(y); };
    for (Index x = 0; x < a.size(); ++x) {
        for (Index y = 0; y < b.size(); ++y) {
            RawCell cell{idOf(x, y), a.rankOf(x) + b.rankOf(y), {}, ""};
            for (Index c : a.covers(x)) cell.covers.push_back(idOf(c, y));
            for (Index c : b.covers(y)) cell.covers.push_back(idOf(x, c));
            if (x != a.root() || y != b.root())
                cell.label = std::to_string(a.id(x)) + "*" + std::to_string(b.id(y));
            raw.cells.push_back(std::move(cell));
        }
    }
    return SimplicialPoset::fromRaw(raw, limits);
}

SimplicialPoset connectedSum(const SimplicialPoset& a, Index first, const SimplicialPoset& b, Index second,
                             const VertexMatching& matching, const PosetLimits& limits) {
    const int n = a.rank();
    if (b.rank() != n) throw InputError("connected sum of posets of different rank");
    if (n < 1) throw InputError("connected sum needs rank >= 1");
    if (a.rankOf(first) != n || b.rankOf(second) != n)
        throw InputError("connected sum needs top-rank cells in both posets");

    // Translate the matching into positions inside the two vertex lists.
    const auto va = a.vertices(first);
    const auto vb = b.vertices(second);
    if (matching.size() != static_cast<std::size_t>(n))
        throw InputError("vertex matching must pair all " + std::to_string(n) + " vertices");
    std::vector<int> posInB(n, -1);
    std::vector<bool> hitB(n, false);
    for (const auto& [ia, ib] : matching) {
        auto xa = a.find(ia);
        auto xb = b.find(ib);
        auto pa = xa ? std::find(va.begin(), va.end(), *xa) - va.begin() : n;
        auto pb = xb ? std::find(vb.begin(), vb.end(), *xb) - vb.begin() : n;
        if (pa == n || pb == n)
            throw InputError("matching pair (" + std::to_string(ia) + ", " + std::to_string(ib) +
                             ") is not a pair of vertices of the chosen cells");
        if (posInB[pa] != -1 || hitB[pb]) throw InputError("vertex matching is not a bijection");
        posInB[pa] = static_cast<int>(pb);
        hitB[pb] = true;
    }

    // Proper faces of `second` map onto proper faces of `first`.
    const std::uint32_t full = (1u << n) - 1;
    std::map<Index, Index> glued;
    for (std::uint32_t ma = 0; ma < full; ++ma) {
        std::uint32_t mb = 0;
        for (int i = 0; i < n; ++i)
            if (ma & (1u << i)) mb |= 1u << posInB[i];
        glued[b.face(second, mb)] = a.face(first, ma);
    }

    const long long offset = static_cast<long long>(maxId(a)) + 1 - [&] {
        int m = std::numeric_limits<int>::max();
        for (Index y = 0; y < b.size(); ++y) m = std::min(m, b.id(y));
        return m;
    }();
    auto newIdB = [&](Index y) -> int {
        auto it = glued.find(y);
        if (it != glued.end()) return a.id(it->second);
        return static_cast<int>(b.id(y) + offset);
    };

    RawPoset raw;
    raw.rank = n;
    for (Index x = 0; x < a.size(); ++x) {
        if (x == first) continue;
        RawCell cell{a.id(x), a.rankOf(x), {}, a.label(x)};
        for (Index c : a.covers(x)) cell.covers.push_back(a.id(c));
        raw.cells.push_back(std::move(cell));
    }
    for (Index y = 0; y < b.size(); ++y) {
        if (y == second || glued.count(y)) continue;
        RawCell cell{newIdB(y), b.rankOf(y), {}, b.label(y)};
        for (Index c : b.covers(y)) cell.covers.push_back(newIdB(c));
        raw.cells.push_back(std::move(cell));
    }

    auto validated = SimplicialPoset::validate(raw, limits);
    if (!validated.ok()) {
        std::vector<std::string> witnesses;
        for (const auto& v : validated.violations)
            witnesses.push_back((v.id >= 0 ? "element " + std::to_string(v.id) + ": " : std::string()) + v.check +
                                ": " + v.detail);
        throw CheckFailure("connected sum produced a non-simplicial poset", witnesses);
    }
    SimplicialPoset result = std::move(*validated.poset);

    const auto ha = hVector(a).entries;
    const auto hb = hVector(b).entries;
    const auto hr = hVector(result).entries;
    std::vector<std::string> bad;
    for (int i = 1; i < n; ++i)
        if (hr[i] != ha[i] + hb[i]) bad.push_back("h_" + std::to_string(i));
    if (hr[0] != 1) bad.push_back("h_0");
    if (hr[n] != ha[n] + hb[n] - 1) bad.push_back("h_" + std::to_string(n));
    if (!bad.empty()) throw CheckFailure("connected sum broke h-vector additivity", bad);
    return result;
}

SimplicialPoset connectedSum(const SimplicialPoset& a, Index first, const SimplicialPoset& b, Index second,
                             const PosetLimits& limits) {
    if (a.rankOf(first) != b.rankOf(second))
        throw InputError("connected sum needs cells of equal rank");
    VertexMatching matching;
    const auto va = a.vertices(first);
    const auto vb = b.vertices(second);
    for (std::size_t i = 0; i < va.size(); ++i) matching.emplace_back(a.id(va[i]), b.id(vb[i]));
    return connectedSum(a, first, b, second, matching, limits);
}

SimplicialPoset simplexBoundary(int n) {
    if (n < 1 || n > kBuilderLimits.maxRank) throw InputError("simplexBoundary needs n >= 1");
    std::map<std::uint32_t, int> ids;
    return SimplicialPoset::fromRaw(subsetPoset(n + 1, n, n, ids), kBuilderLimits);
}

SimplicialPoset spherePoset(int n) {
    if (n < 1 || n > kBuilderLimits.maxRank) throw InputError("spherePoset needs n >= 1");
    std::map<std::uint32_t, int> ids;
    RawPoset raw = subsetPoset(n, n - 1, n, ids);
    int next = static_cast<int>(raw.cells.size());
    for (const char* name : {"top_a", "top_b"}) {
        RawCell cell{next++, n, {}, name};
        for (int i = 0; i < n; ++i) cell.covers.push_back(ids.at(((1u << n) - 1) & ~(1u << i)));
        raw.cells.push_back(std::move(cell));
    }
    return SimplicialPoset::fromRaw(raw, kBuilderLimits);
}

SimplicialPoset sphereProductPoset(int k, int m) {
    if (k < 1 || m < 1) throw InputError("sphereProductPoset needs both factors of rank >= 1");
    return join(spherePoset(k), spherePoset(m), kBuilderLimits);
}

SimplicialPoset simplexPoset(int n) {
    if (n < 1 || n > kBuilderLimits.maxRank) throw InputError("simplexPoset needs n >= 1");
    std::map<std::uint32_t, int> ids;
    return SimplicialPoset::fromRaw(subsetPoset(n, n, n, ids), kBuilderLimits);
}

SimplicialPoset pointPoset() {
    RawPoset raw;
    raw.cells.push_back({0, 0, {}, ""});
    return SimplicialPoset::fromRaw(raw);
}

}  // namespace torusfan
