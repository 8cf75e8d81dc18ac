#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "torusfan/error.hpp"
#include "torusfan/homology.hpp"
#include "torusfan/poset.hpp"
#include "torusfan/transform.hpp"

using namespace torusfan;

namespace {

RawPoset booleanRank2() {
    return RawPoset{2, {{0, 0, {}, {}}, {1, 1, {0}, {}}, {2, 1, {0}, {}}, {3, 2, {1, 2}, {}}}};
}

bool hasCheck(const ValidationResult& v, const std::string& check) {
    for (const auto& x : v.violations)
        if (x.check == check) return true;
    return false;
}

std::vector<std::int64_t> polyProduct(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::vector<std::int64_t> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

}  // namespace

TEST_CASE("validate: boolean lattice, cover count, two cells on one vertex set") {
    CHECK(SimplicialPoset::validate(booleanRank2()).ok());

    RawPoset bad = booleanRank2();
    bad.cells[3].covers = {1};
    const auto v = SimplicialPoset::validate(bad);
    CHECK_FALSE(v.ok());
    CHECK(hasCheck(v, "cover-count"));
    CHECK(v.violations.front().id == 3);

    RawPoset s4{2, {{0, 0, {}, {}}, {1, 1, {0}, {}}, {2, 1, {0}, {}}, {3, 2, {1, 2}, {}}, {4, 2, {1, 2}, {}}}};
    CHECK(SimplicialPoset::validate(s4).ok());
}

TEST_CASE("validate rejects duplicate ids and multiple minima") {
    RawPoset dup = booleanRank2();
    dup.cells.push_back({2, 1, {0}, {}});
    CHECK(hasCheck(SimplicialPoset::validate(dup), "duplicate-id"));

    RawPoset roots = booleanRank2();
    roots.cells.push_back({9, 0, {}, {}});
    CHECK(hasCheck(SimplicialPoset::validate(roots), "root"));
    CHECK_THROWS_AS(SimplicialPoset::fromRaw(roots), InputError);
}

TEST_CASE("validate rejects a segment that passes the rank counts but is not boolean") {
    // Two edges on {a,b} plus an edge on {a,c}: counts (1,3,3,1) but b and c share no edge.
    RawPoset raw{3,
                 {{0, 0, {}, {}},
                  {1, 1, {0}, {}},
                  {2, 1, {0}, {}},
                  {3, 1, {0}, {}},
                  {4, 2, {1, 2}, {}},
                  {5, 2, {1, 2}, {}},
                  {6, 2, {1, 3}, {}},
                  {7, 3, {4, 5, 6}, {}}}};
    CHECK(oracle::rawBinomialCounts(raw));
    CHECK_FALSE(oracle::rawBooleanSegments(raw));
    CHECK_FALSE(SimplicialPoset::validate(raw).ok());
}

TEST_CASE("rank bound is enforced") {
    CHECK_FALSE(SimplicialPoset::validate(simplexBoundary(4).toRaw(), PosetLimits{3, 3}).ok());
    CHECK(SimplicialPoset::validate(simplexBoundary(4).toRaw(), PosetLimits{4, 4}).ok());
    CHECK_THROWS_AS(barycentricSubdivision(simplexBoundary(7)), InputError);
    CHECK(barycentricSubdivision(simplexBoundary(2), PosetLimits{8, 1}, true).rank() == 2);
}

TEST_CASE("meet and join") {
    const auto s = spherePoset(2);
    const Index G = s.at(1), H = s.at(2), p = s.at(3), q = s.at(4);
    CHECK(joinSet(s, G, H) == std::vector<Index>{p, q});
    CHECK(meet(s, G, H) == s.root());
    CHECK(joinSet(s, p, q).empty());
    CHECK(meet(s, p, q) == std::optional<Index>(std::nullopt));

    const auto t = simplexBoundary(2);
    const auto v = t.ofRank(1);
    const auto j = joinSet(t, v[0], v[1]);
    REQUIRE(j.size() == 1);
    CHECK(t.rankOf(j[0]) == 2);
    CHECK(meet(t, v[0], v[1]) == t.root());
    for (Index x = 0; x < t.size(); ++x) {
        CHECK(joinSet(t, x, x) == std::vector<Index>{x});
        CHECK(meet(t, x, x) == x);
    }
}

TEST_CASE("f- and h-vectors") {
    CHECK(fVector(spherePoset(2)).entries == std::vector<std::int64_t>{2, 2});
    CHECK(hVector(spherePoset(2)).entries == std::vector<std::int64_t>{1, 0, 1});
    CHECK(fVector(simplexBoundary(2)).entries == std::vector<std::int64_t>{3, 3});
    CHECK(hVector(simplexBoundary(2)).entries == std::vector<std::int64_t>{1, 1, 1});
    CHECK(hVector(pointPoset()).entries == std::vector<std::int64_t>{1});
    CHECK(hVectorFromF(FVector{{4, 6, 4}}).entries == std::vector<std::int64_t>{1, 1, 1, 1});
}

TEST_CASE("barycentric subdivision examples") {
    const auto d1 = barycentricSubdivision(simplexBoundary(1));
    CHECK(isomorphic(d1, simplexBoundary(1)));

    const auto c4 = barycentricSubdivision(spherePoset(2));
    CHECK(fVector(c4).entries == std::vector<std::int64_t>{4, 4});
    CHECK(isomorphic(c4, sphereProductPoset(1, 1)));
    CHECK(isSimplicialComplex(c4));

    const auto hex = barycentricSubdivision(simplexBoundary(2));
    CHECK(fVector(hex).entries == std::vector<std::int64_t>{6, 6});
}

TEST_CASE("stellar subdivision examples") {
    const auto t = simplexBoundary(2);
    CHECK(isomorphic(stellarSubdivision(t, t.ofRank(1)[0]), t));
    const auto square = stellarSubdivision(t, t.ofRank(2)[0]);
    CHECK(fVector(square).entries == std::vector<std::int64_t>{4, 4});
    CHECK(isomorphic(square, sphereProductPoset(1, 1)));
    CHECK_THROWS_AS(stellarSubdivision(t, t.root()), InputError);
}

TEST_CASE("stellar subdivisions in decreasing rank order give the barycentric subdivision") {
    for (const auto& ex : oracle::builderFamily(3)) {
        SimplicialPoset cur = ex.poset;
        std::vector<int> order;
        for (int k = ex.poset.rank(); k >= 2; --k)
            for (Index x : ex.poset.ofRank(k)) order.push_back(ex.poset.id(x));
        for (int id : order) cur = stellarSubdivision(cur, cur.at(id));
        INFO(ex.name);
        CHECK(isomorphic(cur, barycentricSubdivision(ex.poset)));
    }
}

TEST_CASE("join examples") {
    const auto c4 = join(simplexBoundary(1), simplexBoundary(1));
    CHECK(hVector(c4).entries == std::vector<std::int64_t>{1, 2, 1});
    CHECK(fVector(c4).entries == std::vector<std::int64_t>{4, 4});
    CHECK(isomorphic(join(simplexBoundary(2), pointPoset()), simplexBoundary(2)));
    CHECK(hVector(join(spherePoset(2), simplexBoundary(1))).entries == std::vector<std::int64_t>{1, 1, 1, 1});
}

TEST_CASE("connected sum examples") {
    const auto a = simplexBoundary(2);
    CHECK(hVector(connectedSum(a, a.ofRank(2)[0], a, a.ofRank(2)[0])).entries ==
          std::vector<std::int64_t>{1, 2, 1});
    const auto s = spherePoset(2);
    CHECK(hVector(connectedSum(a, a.ofRank(2)[0], s, s.ofRank(2)[0])).entries == hVector(a).entries);
    CHECK(hVector(connectedSum(s, s.ofRank(2)[0], s, s.ofRank(2)[0])).entries ==
          std::vector<std::int64_t>{1, 0, 1});

    // Explicit matchings, valid and invalid.
    const auto sum = connectedSum(a, a.ofRank(2)[0], s, s.ofRank(2)[0], VertexMatching{{1, 2}, {2, 1}});
    CHECK(hVector(sum).entries == std::vector<std::int64_t>{1, 1, 1});
    CHECK_THROWS_AS(connectedSum(a, a.ofRank(2)[0], s, s.ofRank(2)[0], VertexMatching{{1, 1}, {2, 1}}),
                    InputError);
    CHECK_THROWS_AS(connectedSum(a, a.ofRank(2)[0], s, s.ofRank(2)[0], VertexMatching{{1, 1}}), InputError);
    const auto t3 = simplexBoundary(3);
    CHECK_THROWS_AS(connectedSum(a, a.ofRank(2)[0], t3, t3.ofRank(3)[0]), InputError);
}

TEST_CASE("builders") {
    CHECK(simplexBoundary(2).size() == 7);
    CHECK(hVector(spherePoset(2)).entries == std::vector<std::int64_t>{1, 0, 1});
    CHECK(hVector(sphereProductPoset(1, 1)).entries == std::vector<std::int64_t>{1, 2, 1});
    CHECK_THROWS_AS(simplexBoundary(0), InputError);
    CHECK_THROWS_AS(spherePoset(0), InputError);
    CHECK_THROWS_AS(sphereProductPoset(0, 2), InputError);
}

TEST_CASE("Euler characteristic") {
    CHECK(eulerCharacteristic(simplexBoundary(2)) == 0);
    CHECK(eulerCharacteristic(spherePoset(3)) == 2);
    CHECK(eulerCharacteristic(simplexPoset(1)) == 1);
}

TEST_CASE("property: random complexes validate and agree with the boolean oracle") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 150; ++t) {
        const RawPoset raw = oracle::randomComplex(rng, 4, t % 2 == 0);
        const auto v = SimplicialPoset::validate(raw);
        REQUIRE(v.ok());
        CHECK(oracle::rawBooleanSegments(raw));
        const auto& p = *v.poset;
        const auto h = hVector(p).entries;
        CHECK(h == oracle::bruteH(p));
        CHECK(h.front() == 1);
        if (eulerCharacteristic(p) == (p.rank() % 2 ? 2 : 0)) CHECK(h.back() == 1);
        CHECK(isomorphic(p, SimplicialPoset::fromRaw(oracle::relabelIds(raw, rng))));
    }
}

TEST_CASE("property: corruptions are reported with the right check") {
    std::mt19937_64 rng(12);
    const oracle::Corruption kinds[] = {oracle::Corruption::DropCover, oracle::Corruption::DuplicateId,
                                        oracle::Corruption::ExtraRoot, oracle::Corruption::WrongRankCover};
    for (int t = 0; t < 120; ++t) {
        RawPoset raw = oracle::randomComplex(rng, 4, false);
        const std::string expected = oracle::corrupt(raw, kinds[t % 4], rng);
        const auto v = SimplicialPoset::validate(raw);
        CHECK_FALSE(v.ok());
        CHECK(hasCheck(v, expected));
    }
}

TEST_CASE("property: subdivisions keep Euler characteristic and homology") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 40; ++t) {
        const auto p = SimplicialPoset::fromRaw(oracle::randomComplex(rng, 3, t % 2 == 0));
        const auto b = barycentricSubdivision(p);
        CHECK(isSimplicialComplex(b));
        CHECK(eulerCharacteristic(b) == eulerCharacteristic(p));
        CHECK(reducedHomology(b) == reducedHomology(p));
        std::vector<Index> nonRoot;
        for (Index x = 1; x < p.size(); ++x) nonRoot.push_back(x);
        const Index x = nonRoot[std::uniform_int_distribution<std::size_t>(0, nonRoot.size() - 1)(rng)];
        const auto s = stellarSubdivision(p, x);
        CHECK(s.rank() == p.rank());
        CHECK(eulerCharacteristic(s) == eulerCharacteristic(p));
        CHECK(reducedHomology(s) == reducedHomology(p));
    }
}

TEST_CASE("property: h-polynomial of a join is the product") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 40; ++t) {
        const auto a = SimplicialPoset::fromRaw(oracle::randomComplex(rng, 3, false));
        const auto b = SimplicialPoset::fromRaw(oracle::randomComplex(rng, 3, false));
        const auto j = join(a, b, PosetLimits{8, 6});
        CHECK(oracle::bruteH(j) == polyProduct(hVector(a).entries, hVector(b).entries));
        CHECK(hVector(j).entries == oracle::bruteH(j));
    }
}

TEST_CASE("property: connected sums add interior h entries") {
    std::mt19937_64 rng(15);
    const auto family = oracle::builderFamily(4);
    for (int t = 0; t < 40; ++t) {
        const auto& a = family[std::uniform_int_distribution<std::size_t>(0, family.size() - 1)(rng)].poset;
        std::vector<const SimplicialPoset*> same;
        for (const auto& e : family)
            if (e.poset.rank() == a.rank()) same.push_back(&e.poset);
        const auto& b = *same[std::uniform_int_distribution<std::size_t>(0, same.size() - 1)(rng)];
        const auto ta = a.ofRank(a.rank()), tb = b.ofRank(b.rank());
        const Index sa = ta[std::uniform_int_distribution<std::size_t>(0, ta.size() - 1)(rng)];
        const Index sb = tb[std::uniform_int_distribution<std::size_t>(0, tb.size() - 1)(rng)];
        if (a.rank() == 1) {
            CHECK_NOTHROW(connectedSum(a, sa, b, sb));
            continue;
        }
        const auto h = hVector(connectedSum(a, sa, b, sb)).entries;
        const auto ha = hVector(a).entries, hb = hVector(b).entries;
        for (int i = 1; i < a.rank(); ++i) CHECK(h[i] == ha[i] + hb[i]);
        CHECK(h.front() == 1);
        CHECK(h.back() == 1);
    }
}
