#include "torusfan/realize.hpp"

#include "torusfan/charfun.hpp"
#include "torusfan/error.hpp"
#include "torusfan/homology.hpp"
#include "torusfan/transform.hpp"

namespace torusfan {

std::string admissibilityName(Admissibility a) {
    switch (a) {
        case Admissibility::OddRank: return "case1-odd-n";
        case Admissibility::EvenMiddle: return "case2-even-middle";
        case Admissibility::OddMiddlePositive: return "case3-odd-middle-positive";
        case Admissibility::Inadmissible: return "inadmissible";
        case Admissibility::Malformed: return "malformed";
    }
    return "malformed";
}

AdmissibilityResult admissible(const std::vector<std::int64_t>& h) {
    const int n = static_cast<int>(h.size()) - 1;
    if (n < 1) return {Admissibility::Malformed, "need at least two entries"};
    if (h.front() != 1 || h.back() != 1) return {Admissibility::Malformed, "h_0 and h_n must equal 1"};
    for (int i = 0; i <= n; ++i) {
        if (h[i] < 0) return {Admissibility::Malformed, "negative entry h_" + std::to_string(i)};
        if (h[i] != h[n - i]) return {Admissibility::Malformed, "not palindromic at h_" + std::to_string(i)};
    }
    if (n % 2 == 1) return {Admissibility::OddRank, {}};
    if (h[n / 2] % 2 == 0) return {Admissibility::EvenMiddle, {}};
    for (int i = 0; i <= n; ++i)
        if (h[i] == 0) return {Admissibility::Inadmissible, {}};
    return {Admissibility::OddMiddlePositive, {}};
}

std::string blockName(const Block& b) {
    switch (b.kind) {
        case Block::Kind::CPn: return "CP" + std::to_string(b.n);
        case Block::Kind::Sphere: return "Sphere(" + std::to_string(b.n) + ")";
        case Block::Kind::SphereProduct:
            return "SphereProduct(" + std::to_string(b.k) + "," + std::to_string(b.n - b.k) + ")";
    }
    return "?";
}

HVector blockHVector(const Block& b) {
    HVector h{std::vector<std::int64_t>(b.n + 1, 0)};
    h.entries.front() = h.entries.back() = 1;
    switch (b.kind) {
        case Block::Kind::CPn:
            for (auto& x : h.entries) x = 1;
            break;
        case Block::Kind::Sphere: break;
        case Block::Kind::SphereProduct:
            h.entries[b.k] += 1;
            h.entries[b.n - b.k] += 1;
            break;
    }
    return h;
}

SimplicialPoset buildBlock(const Block& b) {
    switch (b.kind) {
        case Block::Kind::CPn: return simplexBoundary(b.n);
        case Block::Kind::Sphere: return spherePoset(b.n);
        case Block::Kind::SphereProduct: return sphereProductPoset(b.k, b.n - b.k);
    }
    throw InputError("unknown block");
}

int BlockDecomposition::blockCount() const {
    int c = 0;
    for (const auto& [b, m] : blocks) c += m;
    return c;
}

HVector BlockDecomposition::target() const {
    HVector h{std::vector<std::int64_t>(n + 1, 0)};
    for (const auto& [b, m] : blocks) {
        const HVector hb = blockHVector(b);
        for (int i = 1; i < n; ++i) h.entries[i] += m * hb.entries[i];
    }
    h.entries.front() = h.entries.back() = 1;
    return h;
}

std::optional<BlockDecomposition> decompose(const std::vector<std::int64_t>& h) {
    const auto verdict = admissible(h).verdict;
    if (verdict == Admissibility::Malformed || verdict == Admissibility::Inadmissible) return std::nullopt;
    const int n = static_cast<int>(h.size()) - 1;
    BlockDecomposition d;
    d.n = n;
    std::vector<std::int64_t> rest = h;
    bool interiorZero = true;
    for (int i = 1; i < n; ++i) interiorZero = interiorZero && rest[i] == 0;
    if (interiorZero) {
        d.blocks.push_back({Block{Block::Kind::Sphere, n, 0}, 1});
        return d;
    }
    if (verdict == Admissibility::OddMiddlePositive) {
        d.blocks.push_back({Block{Block::Kind::CPn, n, 0}, 1});
        for (int i = 1; i < n; ++i) rest[i] -= 1;
    }
    for (int i = 1; 2 * i < n; ++i)
        if (rest[i] > 0) d.blocks.push_back({Block{Block::Kind::SphereProduct, n, i}, static_cast<int>(rest[i])});
    if (n % 2 == 0 && rest[n / 2] > 0)
        d.blocks.push_back({Block{Block::Kind::SphereProduct, n, n / 2}, static_cast<int>(rest[n / 2] / 2)});
    if (d.target().entries != h) throw CheckFailure("block decomposition does not reproduce the target");
    return d;
}

namespace {

SimplicialPoset foldBlocks(const BlockDecomposition& d) {
    std::optional<SimplicialPoset> acc;
    for (const auto& [block, count] : d.blocks)
        for (int c = 0; c < count; ++c) {
            SimplicialPoset next = buildBlock(block);
            if (!acc) {
                acc = std::move(next);
                continue;
            }
            const Index first = acc->ofRank(d.n).front();
            const Index second = next.ofRank(d.n).front();
            acc = connectedSum(*acc, first, next, second);
        }
    if (!acc) throw InputError("empty block decomposition");
    return std::move(*acc);
}

void checkShape(const BlockDecomposition& d, const SimplicialPoset& poset) {
    const HVector want = d.target();
    const HVector got = hVector(poset);
    if (got != want) throw CheckFailure("realized h-vector differs from the target");
    const auto gor = gorensteinStar(poset);
    if (!gor.gorenstein) {
        std::vector<std::string> witnesses;
        for (const auto& f : gor.failures) witnesses.push_back(std::to_string(f.id) + ": " + f.reason);
        throw CheckFailure("realized poset is not Gorenstein*", witnesses);
    }
}

}  // namespace

Realization realizeBlocks(const BlockDecomposition& d) {
    SimplicialPoset poset = foldBlocks(d);
    checkShape(d, poset);
    auto lambda = findCharacteristicMap(poset, 2);
    if (!lambda) throw CheckFailure("no characteristic map with entries bounded by 2");
    return {std::move(poset), std::move(*lambda)};
}

SimplicialPoset realizePoset(const BlockDecomposition& d) { return realizeBlocks(d).poset; }

std::variant<Realization, Refusal> realizeWithLambda(const std::vector<std::int64_t>& h) {
    const auto verdict = admissible(h);
    if (verdict.verdict == Admissibility::Malformed) return Refusal{"malformed", verdict.reason};
    if (verdict.verdict == Admissibility::Inadmissible)
        return Refusal{"inadmissible", "n is even, the middle entry is odd and some entry vanishes"};
    const auto d = decompose(h);
    SimplicialPoset poset = foldBlocks(*d);
    checkShape(*d, poset);
    auto lambda = findCharacteristicMap(poset, 2);
    if (!lambda) return Refusal{"search-bound-exhausted", "no characteristic map with entries bounded by 2"};
    return Realization{std::move(poset), std::move(*lambda)};
}

}  // namespace torusfan
