#include "torusfan/cohomology.hpp"

#include <algorithm>
#include <map>

#include "torusfan/charfun.hpp"
#include "torusfan/error.hpp"
#include "torusfan/linalg.hpp"

namespace torusfan {

namespace {

template <class Field>
struct DegreeSlice {
    std::vector<ChainMonomial> basis;
    std::map<ChainMonomial, int> column;
    RowEchelon<Field> image;

    explicit DegreeSlice(Field f) : image(std::move(f)) {}

    typename RowEchelon<Field>::Row toRow(const MonomialSum& sum) const {
        const Field& f = image.field();
        std::map<int, typename Field::Value> acc;
        for (const auto& [m, c] : sum) {
            auto& slot = acc[column.at(m)];
            slot = f.add(slot, f.fromRational(mpq_class(c)));
        }
        typename RowEchelon<Field>::Row row;
        for (const auto& [col, v] : acc)
            if (!f.isZero(v)) row.emplace_back(col, v);
        return row;
    }
};

// Degree-2k piece of k[P] together with the span of theta_j * (degree 2k-2).
template <class Field>
DegreeSlice<Field> buildSlice(const FaceRing& ring, const CharacteristicMap& lambda, const Field& field, int k) {
    const auto& poset = ring.poset();
    DegreeSlice<Field> slice(field);
    slice.basis = chainMonomialBasis(poset, k);
    for (std::size_t i = 0; i < slice.basis.size(); ++i) slice.column.emplace(slice.basis[i], static_cast<int>(i));
    if (k == 0) return slice;
    const int n = poset.rank();
    auto verts = poset.ofRank(1);
    for (const auto& m : chainMonomialBasis(poset, k - 1)) {
        std::vector<MonomialSum> products;
        for (Index v : verts) products.push_back(straightenProduct(ring, m, ChainMonomial{{{v, 1}}}));
        for (int j = 0; j < n; ++j) {
            MonomialSum theta;
            for (std::size_t i = 0; i < verts.size(); ++i) {
                const long long c = lambda.at(poset.id(verts[i]))[j];
                if (c == 0) continue;
                for (const auto& [mono, coef] : products[i]) theta[mono] += coef * static_cast<long>(c);
            }
            slice.image.insert(slice.toRow(theta));
        }
    }
    return slice;
}

void requireUnimodular(const SimplicialPoset& poset, const CharacteristicMap& lambda) {
    const auto report = checkUnimodular(poset, lambda);
    if (!report.ok) {
        std::string what = "characteristic map is not unimodular at element " +
                           std::to_string(report.violations.front().first);
        throw InputError(what);
    }
}

template <class Field>
BettiReport bettiOver(const SimplicialPoset& poset, const CharacteristicMap& lambda, const Field& field) {
    const FaceRing ring(poset);
    BettiReport report;
    const int n = poset.rank();
    for (int k = 0; k <= n + 1; ++k) {
        const auto slice = buildSlice(ring, lambda, field, k);
        const long long dim = static_cast<long long>(slice.basis.size()) - slice.image.rank();
        if (k <= n)
            report.betti.push_back(dim);
        else
            report.beyondTop = dim;
    }
    report.matchesH = report.betti == hVector(poset).entries;
    return report;
}

template <class Field>
std::vector<ChainMonomial> quotientBasisOver(const SimplicialPoset& poset, const CharacteristicMap& lambda,
                                             const Field& field, int k) {
    const FaceRing ring(poset);
    const auto slice = buildSlice(ring, lambda, field, k);
    std::vector<ChainMonomial> out;
    for (std::size_t i = 0; i < slice.basis.size(); ++i)
        if (!slice.image.isPivot(static_cast<int>(i))) out.push_back(slice.basis[i]);
    return out;
}

std::string termString(const SimplicialPoset& poset, const std::vector<Index>& gens) {
    std::string s;
    for (Index g : gens) {
        if (g == poset.root()) continue;
        s += (s.empty() ? "" : " * ") + ("v" + std::to_string(poset.id(g)));
    }
    return s.empty() ? "1" : s;
}

}  // namespace

BettiReport bettiNumbers(const SimplicialPoset& poset, const CharacteristicMap& lambda,
                         const CoefficientDomain& field) {
    requireUnimodular(poset, lambda);
    BettiReport r;
    switch (field.kind()) {
        case CoefficientDomain::Kind::Rationals: r = bettiOver(poset, lambda, RationalField{}); break;
        case CoefficientDomain::Kind::ModP: r = bettiOver(poset, lambda, PrimeField{field.prime()}); break;
        case CoefficientDomain::Kind::Integers:
            // Ranks over Z agree with ranks over Q.
            r = bettiOver(poset, lambda, RationalField{});
            break;
    }
    r.field = field.name();
    return r;
}

std::vector<ChainMonomial> quotientBasis(const SimplicialPoset& poset, const CharacteristicMap& lambda,
                                         const CoefficientDomain& field, int k) {
    requireUnimodular(poset, lambda);
    if (field.kind() == CoefficientDomain::Kind::ModP)
        return quotientBasisOver(poset, lambda, PrimeField{field.prime()}, k);
    return quotientBasisOver(poset, lambda, RationalField{}, k);
}

RingPresentation presentCohomologyRing(const SimplicialPoset& poset, const CharacteristicMap& lambda) {
    RingPresentation pres;
    for (Index x = 1; x < poset.size(); ++x) pres.generators.emplace_back(poset.id(x), 2 * poset.rankOf(x));
    for (Index x = 1; x < poset.size(); ++x)
        for (Index y = x + 1; y < poset.size(); ++y) {
            if (poset.leq(x, y) || poset.leq(y, x)) continue;
            std::string rel = "1 * " + termString(poset, {x, y});
            const auto join = joinSet(poset, x, y);
            if (!join.empty()) {
                const Index m = *meet(poset, x, y);
                for (Index z : join) rel += " - 1 * " + termString(poset, {m, z});
            }
            pres.straightening.push_back(std::move(rel));
        }
    if (poset.rank() > 0) {
        const auto ring = makeFaceRing(poset);
        for (const auto& theta : lsopFromLambda(ring, CoefficientDomain::integers(), lambda))
            pres.linear.push_back(theta.toString());
    }
    return pres;
}

bool dehnSommervilleCheck(const HVector& h) {
    const auto& e = h.entries;
    return std::equal(e.begin(), e.end(), e.rbegin());
}

SWParity swParity(const SimplicialPoset& poset, const std::optional<CharacteristicMap>& lambda, int bound) {
    SWParity out;
    std::int64_t hsum = 0;
    for (auto h : hVector(poset).entries) hsum += h;
    out.eulerCharacteristic = hsum;
    out.euler = static_cast<int>(((hsum % 2) + 2) % 2);

    std::optional<CharacteristicMap> map = lambda;
    if (!map) map = findCharacteristicMap(poset, bound);
    if (!map) {
        out.applicable = false;
        out.reason = "no characteristic map with entries bounded by " + std::to_string(bound);
        return out;
    }
    // A unimodular integral map stays a linear system of parameters mod 2.
    const auto report = checkUnimodular(poset, *map);
    if (!report.ok) {
        out.applicable = false;
        out.reason = "characteristic map is not unimodular";
        return out;
    }
    const int n = poset.rank();
    const PrimeField f2{2};
    const FaceRing ring(poset);
    const auto slice = buildSlice(ring, *map, f2, n);
    const long long dim = static_cast<long long>(slice.basis.size()) - slice.image.rank();
    if (dim != 1) throw CheckFailure("degree " + std::to_string(2 * n) + " of the mod-2 quotient has dimension " +
                                     std::to_string(dim));

    auto tops = poset.ofRank(n);
    std::optional<RowEchelon<PrimeField>::Row> socle;
    for (Index p : tops) {
        const ChainMonomial cell = n == 0 ? ChainMonomial{} : ChainMonomial{{{p, 1}}};
        const auto reduced = slice.image.reduce(slice.toRow(MonomialSum{{cell, 1}}));
        if (reduced.empty())
            throw CheckFailure("top cell class vanishes mod 2", {"element " + std::to_string(poset.id(p))});
        if (socle && *socle != reduced)
            throw CheckFailure("top cell classes differ mod 2", {"element " + std::to_string(poset.id(p))});
        socle = reduced;
    }

    // e_n(v_1, ..., v_m): the degree-2n part of prod (1 + v_i).
    auto verts = poset.ofRank(1);
    const int m = static_cast<int>(verts.size());
    MonomialSum top;
    std::vector<Index> chosen;
    auto choose = [&](auto&& self, int start) -> void {
        if (static_cast<int>(chosen.size()) == n) {
            for (const auto& [mono, c] : straightenGenerators(ring, chosen)) top[mono] += c;
            return;
        }
        for (int i = start; i < m; ++i) {
            chosen.push_back(verts[i]);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    if (n == 0)
        top[ChainMonomial{}] = 1;
    else
        choose(choose, 0);
    for (auto it = top.begin(); it != top.end();) it = (it->second % 2 == 0) ? top.erase(it) : std::next(it);

    const auto reduced = slice.image.reduce(slice.toRow(top));
    if (reduced.empty())
        out.pairing = 0;
    else if (socle && reduced == *socle)
        out.pairing = 1;
    else
        throw CheckFailure("top Stiefel-Whitney class is not a multiple of the top cell class");
    out.consistent = out.pairing == out.euler;
    return out;
}

bool equivariantSeriesCheck(const SimplicialPoset& poset, int dmax) { return hilbertCheck(poset, dmax).ok; }

}  // namespace torusfan
