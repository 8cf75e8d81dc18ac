#include "torusfan/poset.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "torusfan/error.hpp"

namespace torusfan {

namespace {

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

PosetLimits PosetLimits::fromEnvironment() {
    PosetLimits limits;
    if (const char* env = std::getenv("TORUSFAN_MAX_RANK")) {
        char* end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || value < 0 || value > 20)
            throw InputError("TORUSFAN_MAX_RANK must be an integer in [0, 20]");
        limits.maxRank = static_cast<int>(value);
    }
    return limits;
}

struct PosetBuilder {
    static ValidationResult build(const RawPoset& raw, const PosetLimits& limits);
};

ValidationResult PosetBuilder::build(const RawPoset& raw, const PosetLimits& limits) {
    ValidationResult result;
    auto& out = result.violations;
    auto report = [&](int id, std::string check, std::string detail) {
        out.push_back({id, std::move(check), std::move(detail)});
    };

    if (raw.rank < 0 || raw.rank > limits.maxRank) {
        report(-1, "rank-bound",
               "poset rank " + std::to_string(raw.rank) + " outside [0, " +
                   std::to_string(limits.maxRank) + "]");
        return result;
    }

    std::map<int, const RawCell*> byId;
    for (const auto& cell : raw.cells) {
        if (!byId.emplace(cell.id, &cell).second)
            report(cell.id, "duplicate-id", "id " + std::to_string(cell.id) + " appears more than once");
    }

    int roots = 0;
    int maxRank = 0;
    for (const auto& cell : raw.cells) {
        if (cell.rank < 0 || cell.rank > raw.rank) {
            report(cell.id, "rank-range",
                   "rank " + std::to_string(cell.rank) + " outside [0, " + std::to_string(raw.rank) + "]");
            continue;
        }
        maxRank = std::max(maxRank, cell.rank);
        if (cell.rank == 0) ++roots;
        std::set<int> distinct(cell.covers.begin(), cell.covers.end());
        if (static_cast<int>(distinct.size()) != cell.rank || distinct.size() != cell.covers.size()) {
            report(cell.id, "cover-count",
                   "rank-" + std::to_string(cell.rank) + " element lists " +
                       std::to_string(cell.covers.size()) + " covers (" + std::to_string(distinct.size()) +
                       " distinct), expected " + std::to_string(cell.rank));
        }
        for (int c : cell.covers) {
            auto it = byId.find(c);
            if (it == byId.end()) {
                report(cell.id, "unknown-cover", "covers unknown id " + std::to_string(c));
            } else if (it->second->rank != cell.rank - 1) {
                report(cell.id, "cover-rank",
                       "covers id " + std::to_string(c) + " of rank " + std::to_string(it->second->rank) +
                           ", expected rank " + std::to_string(cell.rank - 1));
            }
        }
    }
    if (roots != 1)
        report(-1, "root", "expected exactly one rank-0 element, found " + std::to_string(roots));
    if (!raw.cells.empty() && maxRank != raw.rank)
        report(-1, "rank-mismatch",
               "declared rank " + std::to_string(raw.rank) + " but the largest cell rank is " +
                   std::to_string(maxRank));
    if (!out.empty()) return result;

    SimplicialPoset p;
    p.rank_ = raw.rank;
    std::vector<const RawCell*> order;
    order.reserve(raw.cells.size());
    for (const auto& cell : raw.cells) order.push_back(&cell);
    std::sort(order.begin(), order.end(), [](const RawCell* a, const RawCell* b) {
        return std::pair(a->rank, a->id) < std::pair(b->rank, b->id);
    });

    const auto size = static_cast<Index>(order.size());
    p.ids_.resize(size);
    p.ranks_.resize(size);
    p.labels_.resize(size);
    p.covers_.resize(size);
    p.coveredBy_.resize(size);
    p.vertices_.resize(size);
    p.faces_.resize(size);
    p.up_.resize(size);
    p.rankStart_.assign(raw.rank + 2, size);
    for (Index i = 0; i < size; ++i) {
        p.ids_[i] = order[i]->id;
        p.ranks_[i] = order[i]->rank;
        p.labels_[i] = order[i]->label;
        p.byId_.emplace(order[i]->id, i);
    }
    p.indices_.resize(size);
    std::iota(p.indices_.begin(), p.indices_.end(), Index{0});
    for (Index i = size - 1; i >= 0; --i) p.rankStart_[p.ranks_[i]] = i;
    for (int k = raw.rank; k >= 0; --k)
        p.rankStart_[k] = std::min(p.rankStart_[k], p.rankStart_[k + 1]);
    for (Index i = 0; i < size; ++i) {
        for (int c : order[i]->covers) p.covers_[i].push_back(p.byId_.at(c));
        std::sort(p.covers_[i].begin(), p.covers_[i].end());
        for (Index c : p.covers_[i]) p.coveredBy_[c].push_back(i);
    }

    // Boolean lower segments, by induction on rank: the covers of x must omit
    // distinct vertices of x and agree on every common face.
    std::vector<bool> bad(size, false);
    p.faces_[0] = {0};
    for (Index x = 1; x < size; ++x) {
        const int k = p.ranks_[x];
        if (std::any_of(p.covers_[x].begin(), p.covers_[x].end(), [&](Index c) { return bad[c]; })) {
            bad[x] = true;
            continue;
        }
        std::vector<Index> verts;
        if (k == 1) {
            verts = {x};
        } else {
            for (Index c : p.covers_[x])
                verts.insert(verts.end(), p.vertices_[c].begin(), p.vertices_[c].end());
            std::sort(verts.begin(), verts.end());
            verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        }

        // Binomial census of [0, x].
        std::set<Index> segment{x};
        for (Index c : p.covers_[x]) {
            const auto& cf = p.faces_[c];
            segment.insert(cf.begin(), cf.end());
        }
        std::vector<std::int64_t> census(k + 1, 0);
        for (Index z : segment) ++census[p.ranks_[z]];
        std::string censusFailure;
        for (int j = 0; j <= k; ++j) {
            if (census[j] != binomial(k, j)) {
                censusFailure = "lower segment has " + std::to_string(census[j]) + " elements of rank " +
                                std::to_string(j) + ", expected " + std::to_string(binomial(k, j));
                break;
            }
        }

        std::vector<Index> table;
        std::string tableFailure;
        if (censusFailure.empty() && static_cast<int>(verts.size()) == k) {
            table.assign(std::size_t{1} << k, -1);
            table.back() = x;
            for (Index c : p.covers_[x]) {
                const auto& cv = p.vertices_[c];
                // position in verts of each vertex of c
                std::vector<int> pos(cv.size());
                for (std::size_t j = 0; j < cv.size(); ++j)
                    pos[j] = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), cv[j]) - verts.begin());
                const std::uint32_t sub = std::uint32_t{1} << cv.size();
                for (std::uint32_t m = 0; m < sub; ++m) {
                    std::uint32_t big = 0;
                    for (std::size_t j = 0; j < cv.size(); ++j)
                        if (m & (1u << j)) big |= 1u << pos[j];
                    Index f = p.faces_[c][m];
                    if (table[big] == -1) {
                        table[big] = f;
                    } else if (table[big] != f && tableFailure.empty()) {
                        tableFailure = "elements " + std::to_string(p.ids_[table[big]]) + " and " +
                                       std::to_string(p.ids_[f]) + " share a vertex set below it";
                    }
                }
            }
            if (tableFailure.empty() && std::find(table.begin(), table.end(), -1) != table.end())
                tableFailure = "some vertex subset has no face below it";
        } else if (censusFailure.empty()) {
            tableFailure = "lower segment has " + std::to_string(verts.size()) + " vertices, expected " +
                           std::to_string(k);
        }

        if (!censusFailure.empty() || !tableFailure.empty()) {
            bad[x] = true;
            report(p.ids_[x], "boolean-segment", censusFailure.empty() ? tableFailure : censusFailure);
            continue;
        }
        p.vertices_[x] = std::move(verts);
        p.faces_[x] = std::move(table);
    }
    if (!out.empty()) return result;

    for (Index x = size - 1; x >= 0; --x) {
        std::vector<Index> up{x};
        for (Index y : p.coveredBy_[x]) up.insert(up.end(), p.up_[y].begin(), p.up_[y].end());
        std::sort(up.begin(), up.end());
        up.erase(std::unique(up.begin(), up.end()), up.end());
        p.up_[x] = std::move(up);
    }
    result.poset = std::move(p);
    return result;
}

ValidationResult SimplicialPoset::validate(const RawPoset& raw, const PosetLimits& limits) {
    return PosetBuilder::build(raw, limits);
}

SimplicialPoset SimplicialPoset::fromRaw(const RawPoset& raw, const PosetLimits& limits) {
    auto result = validate(raw, limits);
    if (!result.ok()) {
        std::ostringstream msg;
        msg << "not a simplicial poset:";
        for (const auto& v : result.violations)
        {
            msg << "\n  [" << v.check << "] ";
            if (v.id >= 0) msg << "element " << v.id << ": ";
            msg << v.detail;
        }
        throw InputError(msg.str());
    }
    return std::move(*result.poset);
}

std::span<const Index> SimplicialPoset::ofRank(int k) const {
    if (k < 0 || k > rank_) return {};
    return std::span<const Index>(indices_).subspan(rankStart_[k], rankStart_[k + 1] - rankStart_[k]);
}

std::optional<Index> SimplicialPoset::find(int id) const {
    auto it = byId_.find(id);
    if (it == byId_.end()) return std::nullopt;
    return it->second;
}

Index SimplicialPoset::at(int id) const {
    auto it = byId_.find(id);
    if (it == byId_.end()) throw InputError("unknown element id " + std::to_string(id));
    return it->second;
}

std::optional<std::uint32_t> SimplicialPoset::vertexMask(Index top, Index x) const {
    const auto& tv = vertices_[top];
    std::uint32_t mask = 0;
    for (Index v : vertices_[x]) {
        auto it = std::lower_bound(tv.begin(), tv.end(), v);
        if (it == tv.end() || *it != v) return std::nullopt;
        mask |= 1u << (it - tv.begin());
    }
    return mask;
}

bool SimplicialPoset::leq(Index x, Index y) const {
    if (ranks_[x] > ranks_[y]) return false;
    auto mask = vertexMask(y, x);
    return mask && faces_[y][*mask] == x;
}

std::vector<Index> SimplicialPoset::downSet(Index x) const {
    std::vector<Index> out(faces_[x].begin(), faces_[x].end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Index> SimplicialPoset::maximalElements() const {
    std::vector<Index> out;
    for (Index x = 0; x < size(); ++x)
        if (coveredBy_[x].empty()) out.push_back(x);
    return out;
}

bool SimplicialPoset::isPure() const {
    for (Index x = 0; x < size(); ++x)
        if (coveredBy_[x].empty() && ranks_[x] != rank_) return false;
    return true;
}

RawPoset SimplicialPoset::toRaw() const {
    RawPoset raw;
    raw.rank = rank_;
    raw.cells.reserve(size());
    for (Index x = 0; x < size(); ++x) {
        RawCell cell{ids_[x], ranks_[x], {}, labels_[x]};
        for (Index c : covers_[x]) cell.covers.push_back(ids_[c]);
        std::sort(cell.covers.begin(), cell.covers.end());
        raw.cells.push_back(std::move(cell));
    }
    return raw;
}

std::vector<Index> joinSet(const SimplicialPoset& poset, Index x, Index y) {
    auto ux = poset.upSet(x);
    auto uy = poset.upSet(y);
    std::vector<Index> common;
    std::set_intersection(ux.begin(), ux.end(), uy.begin(), uy.end(), std::back_inserter(common));
    // c is minimal iff none of its lower covers is a common upper bound
    std::vector<Index> minimal;
    for (Index c : common) {
        bool isMin = true;
        for (Index d : poset.covers(c)) {
            if (std::binary_search(common.begin(), common.end(), d)) {
                isMin = false;
                break;
            }
        }
        if (isMin) minimal.push_back(c);
    }
    return minimal;
}

std::optional<Index> meet(const SimplicialPoset& poset, Index x, Index y) {
    auto join = joinSet(poset, x, y);
    if (!join.empty()) {
        const Index z = join.front();
        const std::uint32_t mask = *poset.vertexMask(z, x) & *poset.vertexMask(z, y);
        return poset.face(z, mask);
    }
    auto dx = poset.downSet(x);
    auto dy = poset.downSet(y);
    std::vector<Index> common;
    std::set_intersection(dx.begin(), dx.end(), dy.begin(), dy.end(), std::back_inserter(common));
    std::vector<Index> maximal;
    for (Index c : common) {
        bool isMax = std::none_of(poset.coveredBy(c).begin(), poset.coveredBy(c).end(),
                                  [&](Index d) { return std::binary_search(common.begin(), common.end(), d); });
        if (isMax) maximal.push_back(c);
    }
    if (maximal.size() != 1) return std::nullopt;
    return maximal.front();
}

FVector fVector(const SimplicialPoset& poset) {
    FVector f;
    for (int i = 0; i < poset.rank(); ++i)
        f.entries.push_back(static_cast<std::int64_t>(poset.ofRank(i + 1).size()));
    return f;
}

HVector hVectorFromF(const FVector& f) {
    const int n = static_cast<int>(f.entries.size());
    // coefficients of t^0..t^n of sum_{i=0}^{n} f_{i-1} (t-1)^{n-i}, with f_{-1} = 1
    std::vector<std::int64_t> poly(n + 1, 0);
    for (int i = 0; i <= n; ++i) {
        const std::int64_t fi = i == 0 ? 1 : f.entries[i - 1];
        const int power = n - i;
        for (int j = 0; j <= power; ++j) {
            const std::int64_t sign = ((power - j) % 2 == 0) ? 1 : -1;
            poly[j] += fi * sign * binomial(power, j);
        }
    }
    HVector h;
    h.entries.resize(n + 1);
    for (int j = 0; j <= n; ++j) h.entries[j] = poly[n - j];
    return h;
}

HVector hVector(const SimplicialPoset& poset) { return hVectorFromF(fVector(poset)); }

std::int64_t eulerCharacteristic(const SimplicialPoset& poset) {
    std::int64_t chi = 0;
    const auto f = fVector(poset);
    for (std::size_t i = 0; i < f.entries.size(); ++i) chi += (i % 2 == 0 ? 1 : -1) * f.entries[i];
    return chi;
}

bool isSimplicialComplex(const SimplicialPoset& poset) {
    std::set<std::vector<Index>> seen;
    for (Index x = 0; x < poset.size(); ++x) {
        auto v = poset.vertices(x);
        if (!seen.emplace(v.begin(), v.end()).second) return false;
    }
    return true;
}

namespace {

/// Rank plus the number of elements of each rank above x.
std::vector<int> signature(const SimplicialPoset& p, Index x) {
    std::vector<int> sig(p.rank() + 2, 0);
    sig[0] = p.rankOf(x);
    for (Index y : p.upSet(x)) ++sig[p.rankOf(y) + 1];
    return sig;
}

}  // namespace

bool isomorphic(const SimplicialPoset& a, const SimplicialPoset& b) {
    if (a.rank() != b.rank() || a.size() != b.size() || fVector(a) != fVector(b)) return false;
    const Index n = a.size();
    std::vector<std::vector<int>> sigA(n), sigB(n);
    for (Index x = 0; x < n; ++x) {
        sigA[x] = signature(a, x);
        sigB[x] = signature(b, x);
    }
    {
        auto sa = sigA, sb = sigB;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }

    // Order a's elements so every element follows its covers and vertices are
    // visited along the 1-skeleton; conflicts then surface early.
    std::vector<Index> order{a.root()};
    std::vector<bool> placed(n, false), vertexPlaced(n, false);
    placed[a.root()] = true;
    const auto verts = a.ofRank(1);
    std::vector<Index> pending;
    for (Index x = 1; x < n; ++x)
        if (a.rankOf(x) >= 2) pending.push_back(x);
    std::size_t placedVertices = 0;
    while (placedVertices < verts.size()) {
        Index next = -1;
        for (Index v : verts) {
            if (vertexPlaced[v]) continue;
            if (next == -1) next = v;
            bool adjacent = false;
            for (Index e : a.coveredBy(v)) {
                for (Index w : a.vertices(e))
                    if (w != v && vertexPlaced[w]) adjacent = true;
            }
            if (adjacent) {
                next = v;
                break;
            }
        }
        vertexPlaced[next] = placed[next] = true;
        order.push_back(next);
        ++placedVertices;
        std::vector<Index> still;
        for (Index x : pending) {
            auto vs = a.vertices(x);
            if (std::all_of(vs.begin(), vs.end(), [&](Index v) { return vertexPlaced[v]; })) {
                order.push_back(x);
                placed[x] = true;
            } else {
                still.push_back(x);
            }
        }
        pending.swap(still);
    }
    if (order.size() != static_cast<std::size_t>(n)) return false;

    std::vector<Index> image(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> extend = [&](std::size_t pos) -> bool {
        if (pos == order.size()) return true;
        const Index x = order[pos];
        std::vector<Index> candidates;
        if (a.rankOf(x) == 0) {
            candidates = {b.root()};
        } else if (a.rankOf(x) == 1) {
            for (Index y : b.ofRank(1)) candidates.push_back(y);
        } else {
            std::vector<Index> want;
            for (Index c : a.covers(x)) want.push_back(image[c]);
            std::sort(want.begin(), want.end());
            for (Index y : b.coveredBy(want.front())) {
                auto cy = b.covers(y);
                if (std::vector<Index>(cy.begin(), cy.end()) == want) candidates.push_back(y);
            }
        }
        for (Index y : candidates) {
            if (used[y] || sigA[x] != sigB[y]) continue;
            image[x] = y;
            used[y] = true;
            if (extend(pos + 1)) return true;
            used[y] = false;
            image[x] = -1;
        }
        return false;
    };
    return extend(0);
}

}  // namespace torusfan
