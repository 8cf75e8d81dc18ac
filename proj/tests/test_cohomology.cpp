#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "torusfan/charfun.hpp"
#include "torusfan/cohomology.hpp"
#include "torusfan/error.hpp"
#include "torusfan/homology.hpp"

using namespace torusfan;

namespace {

const CharacteristicMap kCP2{{1, {1, 0}}, {2, {0, 1}}, {3, {-1, -1}}};
const CharacteristicMap kS4{{1, {1, 0}}, {2, {0, 1}}};
const CoefficientDomain Q = CoefficientDomain::rationals();

std::vector<CoefficientDomain> fields() {
    return {Q, CoefficientDomain::modP(2), CoefficientDomain::modP(3), CoefficientDomain::modP(5)};
}

}  // namespace

TEST_CASE("Betti numbers of the quotient") {
    CHECK(bettiNumbers(spherePoset(2), kS4, Q).betti == std::vector<std::int64_t>{1, 0, 1});
    CHECK(bettiNumbers(simplexBoundary(2), kCP2, Q).betti == std::vector<std::int64_t>{1, 1, 1});
    const auto sp = sphereProductPoset(1, 1);
    const auto r = bettiNumbers(sp, *findCharacteristicMap(sp, 1), Q);
    CHECK(r.betti == std::vector<std::int64_t>{1, 2, 1});
    CHECK(r.matchesH);
    CHECK(r.beyondTop == 0);
    CHECK(r.field == "Q");
    CHECK_THROWS_AS(bettiNumbers(spherePoset(2), CharacteristicMap{{1, {1, 0}}, {2, {1, 0}}}, Q), InputError);
    CHECK(quotientBasis(simplexBoundary(2), kCP2, Q, 1).size() == 1);
    CHECK(quotientBasis(simplexBoundary(2), kCP2, Q, 3).empty());
}

TEST_CASE("ring presentation") {
    const auto pres = presentCohomologyRing(spherePoset(2), kS4);
    CHECK(pres.generators == std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {3, 4}, {4, 4}});
    CHECK(pres.straightening == std::vector<std::string>{"1 * v1 * v2 - 1 * v3 - 1 * v4", "1 * v3 * v4"});
    CHECK(pres.linear == std::vector<std::string>{"1 * v1", "1 * v2"});

    const auto line = presentCohomologyRing(simplexBoundary(1), CharacteristicMap{{1, {1}}, {2, {-1}}});
    CHECK(line.straightening == std::vector<std::string>{"1 * v1 * v2"});
    CHECK(line.linear == std::vector<std::string>{"1 * v1 - 1 * v2"});

    const auto trivial = presentCohomologyRing(pointPoset(), {});
    CHECK(trivial.generators.empty());
    CHECK(trivial.straightening.empty());
    CHECK(trivial.linear.empty());
}

TEST_CASE("Dehn-Sommerville") {
    CHECK(dehnSommervilleCheck(HVector{{1, 0, 1}}));
    CHECK(dehnSommervilleCheck(HVector{{1, 2, 1}}));
    CHECK_FALSE(dehnSommervilleCheck(HVector{{1, 2, 0}}));
}

TEST_CASE("Stiefel-Whitney parity examples") {
    const auto cp2 = swParity(simplexBoundary(2), kCP2);
    CHECK(cp2.applicable);
    CHECK(cp2.eulerCharacteristic == 3);
    CHECK(cp2.pairing == 1);
    CHECK(cp2.consistent);

    const auto s4 = swParity(spherePoset(2), kS4);
    CHECK(s4.eulerCharacteristic == 2);
    CHECK(s4.pairing == 0);
    CHECK(s4.consistent);

    const auto cp1 = swParity(simplexBoundary(1), CharacteristicMap{{1, {1}}, {2, {-1}}});
    CHECK(cp1.eulerCharacteristic == 2);
    CHECK(cp1.pairing == 0);
    CHECK(cp1.consistent);

    // Without a map one is searched for.
    CHECK(swParity(simplexBoundary(3), std::nullopt).consistent);
}

TEST_CASE("equivariant series") {
    CHECK(equivariantSeriesCheck(spherePoset(2), 6));
    CHECK(equivariantSeriesCheck(simplexBoundary(3), 6));
    CHECK(equivariantSeriesCheck(pointPoset(), 6));
}

TEST_CASE("property: Betti numbers equal h on Gorenstein* examples over every field") {
    for (const auto& ex : oracle::builderFamily(3)) {
        INFO(ex.name);
        const auto& p = ex.poset;
        REQUIRE(gorensteinStar(p).gorenstein);
        const auto lambda = findCharacteristicMap(p, 2);
        REQUIRE(lambda);
        const auto h = hVector(p).entries;
        for (const auto& f : fields()) {
            const auto r = bettiNumbers(p, *lambda, f);
            CHECK(r.betti == h);
            CHECK(r.matchesH);
            CHECK(r.beyondTop == 0);
            CHECK(dehnSommervilleCheck(HVector{r.betti}) == dehnSommervilleCheck(hVector(p)));
            for (int k = 0; k <= p.rank(); ++k)
                CHECK(static_cast<std::int64_t>(quotientBasis(p, *lambda, f, k).size()) == r.betti[k]);
        }
        const auto sw = swParity(p, lambda);
        CHECK(sw.applicable);
        CHECK(sw.consistent);
    }
}

TEST_CASE("property: Betti numbers on random Cohen-Macaulay complexes with a map") {
    std::mt19937_64 rng(51);
    int used = 0;
    for (int t = 0; t < 60 && used < 12; ++t) {
        const auto p = SimplicialPoset::fromRaw(oracle::randomComplex(rng, 3, true));
        if (!cohenMacaulay(p, {Q})[0].cohenMacaulay) continue;
        const auto lambda = findCharacteristicMap(p, 1);
        if (!lambda) continue;
        ++used;
        const auto r = bettiNumbers(p, *lambda, Q);
        CHECK(r.betti == hVector(p).entries);
        CHECK(r.beyondTop == 0);
        CHECK(dehnSommervilleCheck(HVector{r.betti}) == dehnSommervilleCheck(hVector(p)));
    }
    CHECK(used > 0);
}
