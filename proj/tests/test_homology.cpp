#include <doctest.h>

#include <bit>
#include <map>
#include <random>

#include "oracles.hpp"
#include "torusfan/cohomology.hpp"
#include "torusfan/error.hpp"
#include "torusfan/homology.hpp"
#include "torusfan/smith.hpp"

using namespace torusfan;

namespace {

std::vector<long> factors(const SmithResult& r) {
    std::vector<long> out;
    for (const auto& f : r.factors) out.push_back(f.get_si());
    return out;
}

IntMatrix toMatrix(const std::vector<std::vector<long>>& rows) {
    IntMatrix m;
    for (const auto& r : rows) {
        m.emplace_back();
        for (long v : r) m.back().push_back(v);
    }
    return m;
}

SparseIntMatrix toSparse(const IntMatrix& m) {
    SparseIntMatrix s;
    s.rows = static_cast<int>(m.size());
    s.cols = m.empty() ? 0 : static_cast<int>(m[0].size());
    s.entries.resize(s.rows);
    for (int i = 0; i < s.rows; ++i)
        for (int j = 0; j < s.cols; ++j)
            if (m[i][j] != 0) s.entries[i].emplace_back(j, m[i][j].get_si());
    return s;
}

// Determinantal divisors by brute force on small matrices: d_k = gcd of k x k minors.
mpz_class det(IntMatrix m) {
    const std::size_t n = m.size();
    mpz_class d = 1;
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    mpq_class result = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            result = -result;
        }
        result *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const mpq_class f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    d = result.get_num();
    return d;
}

std::vector<mpz_class> determinantalDivisors(const IntMatrix& m) {
    const int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
    std::vector<mpz_class> out;
    for (int k = 1; k <= std::min(rows, cols); ++k) {
        mpz_class g = 0;
        for (std::uint32_t rm = 0; rm < (1u << rows); ++rm) {
            if (std::popcount(rm) != k) continue;
            for (std::uint32_t cm = 0; cm < (1u << cols); ++cm) {
                if (std::popcount(cm) != k) continue;
                IntMatrix sub;
                for (int i = 0; i < rows; ++i) {
                    if (!(rm >> i & 1u)) continue;
                    sub.emplace_back();
                    for (int j = 0; j < cols; ++j)
                        if (cm >> j & 1u) sub.back().push_back(m[i][j]);
                }
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det(sub).get_mpz_t());
            }
        }
        if (g == 0) break;
        out.push_back(g);
    }
    return out;
}

// The real projective plane as a 6-vertex simplicial complex.
SimplicialPoset rp2() {
    const int tri[10][3] = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                            {2, 3, 5}, {3, 4, 6}, {4, 5, 2}, {5, 6, 3}, {6, 2, 4}};
    RawPoset raw{3, {{0, 0, {}, {}}}};
    for (int v = 1; v <= 6; ++v) raw.cells.push_back({v, 1, {0}, {}});
    std::map<std::pair<int, int>, int> edge;
    int next = 10;
    for (const auto& t : tri)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const auto e = std::minmax(t[i], t[j]);
                if (!edge.count(e)) {
                    edge[e] = next;
                    raw.cells.push_back({next++, 2, {e.first, e.second}, {}});
                }
            }
    for (const auto& t : tri) {
        std::vector<int> covers;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) covers.push_back(edge.at(std::minmax(t[i], t[j])));
        raw.cells.push_back({next++, 3, covers, {}});
    }
    return SimplicialPoset::fromRaw(raw);
}

}  // namespace

TEST_CASE("Smith normal form examples") {
    CHECK(factors(smithNormalForm(toMatrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}))) == std::vector<long>{1, 1, 1});
    CHECK(factors(smithNormalForm(toMatrix({{2, 0}, {0, 4}}))) == std::vector<long>{2, 4});
    CHECK(factors(smithNormalForm(toMatrix({{2, 0}, {0, 3}}))) == std::vector<long>{1, 6});
    CHECK(smithNormalForm(toMatrix({{0, 0}, {0, 0}})).rank == 0);
}

TEST_CASE("property: Smith factors equal the determinantal divisor quotients") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
        const int rows = std::uniform_int_distribution<int>(1, 4)(rng);
        const int cols = std::uniform_int_distribution<int>(1, 4)(rng);
        IntMatrix m(rows, std::vector<mpz_class>(cols));
        for (auto& r : m)
            for (auto& v : r) v = std::uniform_int_distribution<int>(-6, 6)(rng) * (rng() % 3 == 0 ? 0 : 1);
        const auto dd = determinantalDivisors(m);
        const auto snf = smithNormalForm(m);
        REQUIRE(snf.factors.size() == dd.size());
        for (std::size_t k = 0; k < dd.size(); ++k) {
            const mpz_class expected = k == 0 ? dd[0] : mpz_class(dd[k] / dd[k - 1]);
            CHECK(snf.factors[k] == expected);
            if (k) CHECK(snf.factors[k] % snf.factors[k - 1] == 0);
        }
        CHECK(factors(smithNormalForm(toSparse(m))) == factors(snf));
    }
}

TEST_CASE("large entries fall back to exact arithmetic") {
    const long big = 3037000499L;  // squares overflow int64
    const IntMatrix m = toMatrix({{big, big - 1}, {big + 1, big}});
    CHECK(factors(smithNormalForm(toSparse(m))) == factors(smithNormalForm(m)));
    CHECK(factors(smithNormalForm(m)) == std::vector<long>{1, 1});
}

TEST_CASE("reduced homology examples") {
    const auto c = reducedHomology(simplexBoundary(2));
    CHECK(c.at(0).betti == 0);
    CHECK(c.at(1).betti == 1);
    CHECK(c.isSphere(1));
    CHECK(reducedHomology(spherePoset(2)).isSphere(1));
    const auto s3 = reducedHomology(spherePoset(3));
    CHECK(s3.at(2).betti == 1);
    CHECK(s3.at(1).betti == 0);
    CHECK(s3.isSphere(2));

    RawPoset twoPoints{1, {{0, 0, {}, {}}, {1, 1, {0}, {}}, {2, 1, {0}, {}}}};
    CHECK(reducedHomology(SimplicialPoset::fromRaw(twoPoints)).at(0).betti == 1);
    CHECK(reducedHomology(pointPoset()).isSphere(-1));
}

TEST_CASE("torsion and coefficient fields") {
    const auto p = rp2();
    const auto hz = reducedHomology(p);
    CHECK(hz.at(1).betti == 0);
    REQUIRE(hz.at(1).torsion.size() == 1);
    CHECK(hz.at(1).torsion[0] == 2);
    CHECK(hz.at(2).betti == 0);
    const auto h2 = reducedHomology(p, CoefficientDomain::modP(2));
    CHECK(h2.at(1).betti == 1);
    CHECK(h2.at(2).betti == 1);
    CHECK(reducedHomology(p, CoefficientDomain::modP(3)).at(1).betti == 0);
    CHECK(reducedHomology(p, CoefficientDomain::rationals()).at(2).betti == 0);

    const auto cm = cohenMacaulay(p, {CoefficientDomain::rationals(), CoefficientDomain::modP(2)});
    CHECK(cm[0].cohenMacaulay);
    CHECK_FALSE(cm[1].cohenMacaulay);
    CHECK_FALSE(gorensteinStar(p).gorenstein);
    CHECK(pseudomanifold(p));
}

TEST_CASE("boundaries compose to zero") {
    for (const auto& ex : oracle::builderFamily(4)) {
        const ChainComplex cx(ex.poset);
        for (int d = 1; d <= cx.topDimension(); ++d) {
            const auto a = cx.boundary(d).dense();      // d-cells x (d-1)-cells
            const auto b = cx.boundary(d - 1).dense();  // (d-1)-cells x (d-2)-cells
            if (b.empty() || b[0].empty()) continue;
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t k = 0; k < b[0].size(); ++k) {
                    mpz_class s = 0;
                    for (std::size_t j = 0; j < b.size(); ++j) s += a[i][j] * b[j][k];
                    CHECK(s == 0);
                }
        }
    }
}

TEST_CASE("links") {
    const auto s = spherePoset(2);
    CHECK(isomorphic(link(s, s.root()), s));
    const auto lp = link(s, s.at(1));
    CHECK(lp.rank() == 1);
    CHECK(lp.ofRank(1).size() == 2);
    const auto t = simplexBoundary(2);
    CHECK(link(t, t.ofRank(1)[0]).ofRank(1).size() == 2);
    CHECK(link(t, t.ofRank(2)[0]).rank() == 0);
}

TEST_CASE("Cohen-Macaulay verdicts") {
    const auto q = CoefficientDomain::rationals();
    CHECK(cohenMacaulay(simplexBoundary(2), {q})[0].cohenMacaulay);

    RawPoset twoEdges{2, {{0, 0, {}, {}}, {1, 1, {0}, {}}, {2, 1, {0}, {}}, {3, 1, {0}, {}}, {4, 1, {0}, {}},
                          {5, 2, {1, 2}, {}}, {6, 2, {3, 4}, {}}}};
    const auto v = cohenMacaulay(SimplicialPoset::fromRaw(twoEdges), {q});
    CHECK_FALSE(v[0].cohenMacaulay);
    REQUIRE_FALSE(v[0].failures.empty());
    CHECK(v[0].failures[0].id == 0);

    for (int n = 1; n <= 4; ++n) {
        const auto r = cohenMacaulay(spherePoset(n), {q, CoefficientDomain::modP(2)});
        CHECK(r[0].cohenMacaulay);
        CHECK(r[1].cohenMacaulay);
    }
    CHECK_THROWS_AS(cohenMacaulay(spherePoset(2), {CoefficientDomain::integers()}), InputError);
}

TEST_CASE("Gorenstein* and the manifold predicates") {
    for (int n = 1; n <= 4; ++n) {
        CHECK(gorensteinStar(simplexBoundary(n)).gorenstein);
        CHECK(gorensteinStar(spherePoset(n)).gorenstein);
    }
    const auto disc = simplexPoset(2);
    CHECK_FALSE(gorensteinStar(disc).gorenstein);
    CHECK_FALSE(pseudomanifold(disc));
    CHECK_FALSE(eulerSphereCheck(disc));
    CHECK(pseudomanifold(spherePoset(2)));
    CHECK(eulerSphereCheck(spherePoset(2)));
    CHECK(pseudomanifold(simplexBoundary(3)));
    CHECK(eulerSphereCheck(simplexBoundary(3)));
    CHECK_THROWS_AS(gorensteinStar(simplexBoundary(4), PosetLimits{3, 3}), InputError);
}

TEST_CASE("property: link-based Gorenstein* agrees with the literal barycentric test") {
    std::mt19937_64 rng(32);
    std::vector<SimplicialPoset> cases;
    for (const auto& ex : oracle::builderFamily(3)) cases.push_back(ex.poset);
    cases.push_back(simplexPoset(2));
    cases.push_back(rp2());
    for (int t = 0; t < 30; ++t) cases.push_back(SimplicialPoset::fromRaw(oracle::randomComplex(rng, 3, true)));
    for (const auto& p : cases) {
        const bool g = gorensteinStar(p).gorenstein;
        CHECK(g == oracle::literalGorensteinStar(p));
        if (g) {
            CHECK(dehnSommervilleCheck(hVector(p)));
            CHECK(pseudomanifold(p));
            CHECK(eulerSphereCheck(p));
        }
    }
}

TEST_CASE("property: homology agrees with the subdivision and universal coefficients") {
    std::mt19937_64 rng(33);
    std::vector<SimplicialPoset> cases;
    for (const auto& ex : oracle::builderFamily(4)) cases.push_back(ex.poset);
    cases.push_back(rp2());
    for (int t = 0; t < 30; ++t) cases.push_back(SimplicialPoset::fromRaw(oracle::randomComplex(rng, 3, false)));
    for (const auto& p : cases) {
        const auto hz = reducedHomology(p);
        CHECK(hz == reducedHomologyViaSubdivision(p));
        const auto hq = reducedHomology(p, CoefficientDomain::rationals());
        for (std::uint64_t prime : {2u, 3u, 5u}) {
            const auto hp = reducedHomology(p, CoefficientDomain::modP(prime));
            for (std::size_t d = 0; d < hz.dims.size(); ++d) {
                CHECK(hp.dims[d].betti >= hq.dims[d].betti);
                bool pTorsion = false;
                for (std::size_t e = (d ? d - 1 : 0); e <= d; ++e)
                    for (const auto& t : hz.dims[e].torsion) pTorsion = pTorsion || t % prime == 0;
                if (!pTorsion) CHECK(hp.dims[d].betti == hq.dims[d].betti);
            }
        }
    }
}
