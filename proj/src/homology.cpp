#include "torusfan/homology.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "torusfan/error.hpp"
#include "torusfan/linalg.hpp"
#include "torusfan/transform.hpp"

namespace torusfan {

ChainComplex::ChainComplex(const SimplicialPoset& poset) {
    const int n = poset.rank();
    cells_.resize(n + 1);
    for (int r = 0; r <= n; ++r) {
        auto span = poset.ofRank(r);
        cells_[r].assign(span.begin(), span.end());
    }
    std::vector<int> position(poset.size());
    for (const auto& layer : cells_)
        for (std::size_t i = 0; i < layer.size(); ++i) position[layer[i]] = static_cast<int>(i);

    boundaries_.resize(n + 1);
    boundaries_[0].rows = static_cast<int>(cells_[0].size());
    boundaries_[0].entries.resize(cells_[0].size());
    for (int r = 1; r <= n; ++r) {
        SparseIntMatrix m;
        m.rows = static_cast<int>(cells_[r].size());
        m.cols = static_cast<int>(cells_[r - 1].size());
        m.entries.resize(m.rows);
        for (int i = 0; i < m.rows; ++i) {
            const Index x = cells_[r][i];
            const std::uint32_t full = (std::uint32_t{1} << r) - 1;
            for (int j = 0; j < r; ++j) {
                const Index f = poset.face(x, full & ~(std::uint32_t{1} << j));
                m.entries[i].emplace_back(position[f], j % 2 == 0 ? 1 : -1);
            }
            std::sort(m.entries[i].begin(), m.entries[i].end());
        }
        boundaries_[r] = std::move(m);
    }

    for (int r = 2; r <= n; ++r) {
        const auto& upper = boundaries_[r];
        const auto& lower = boundaries_[r - 1];
        for (int i = 0; i < upper.rows; ++i) {
            std::map<int, long long> acc;
            for (const auto& [k, v] : upper.entries[i])
                for (const auto& [c, w] : lower.entries[k]) acc[c] += v * w;
            for (const auto& [c, v] : acc)
                if (v != 0)
                    throw CheckFailure("boundary of boundary is non-zero",
                                       {"cell " + std::to_string(poset.id(cells_[r][i]))});
        }
    }
}

ChainComplex cellChainComplex(const SimplicialPoset& poset) { return ChainComplex(poset); }

bool HomologyGroups::isSphere(int k) const {
    for (const auto& d : dims) {
        if (!d.torsion.empty()) return false;
        if (d.betti != (d.dim == k ? 1 : 0)) return false;
    }
    return k >= -1 && k + 1 < static_cast<int>(dims.size());
}

namespace {

int rankOver(const SparseIntMatrix& m, const CoefficientDomain& coeffs) {
    if (coeffs.kind() == CoefficientDomain::Kind::ModP) {
        const PrimeField field{coeffs.prime()};
        RowEchelon<PrimeField> ech(field);
        const long long p = static_cast<long long>(coeffs.prime());
        for (const auto& row : m.entries) {
            RowEchelon<PrimeField>::Row r;
            for (const auto& [c, v] : row) {
                const long long red = ((v % p) + p) % p;
                if (red) r.emplace_back(c, static_cast<std::uint64_t>(red));
            }
            ech.insert(r);
        }
        return ech.rank();
    }
    return smithNormalForm(m).rank;
}

}  // namespace

HomologyGroups reducedHomology(const SimplicialPoset& poset, const CoefficientDomain& coeffs) {
    const ChainComplex complex(poset);
    const int top = complex.topDimension();
    std::vector<int> ranks(top + 3, 0);  // ranks[d + 1] = rank of boundary(d)
    std::vector<std::vector<mpz_class>> factors(top + 3);
    for (int d = 0; d <= top; ++d) {
        if (coeffs.kind() == CoefficientDomain::Kind::Integers) {
            SmithResult s = smithNormalForm(complex.boundary(d));
            ranks[d + 1] = s.rank;
            factors[d + 1] = std::move(s.factors);
        } else {
            ranks[d + 1] = rankOver(complex.boundary(d), coeffs);
        }
    }
    HomologyGroups out;
    for (int d = -1; d <= top; ++d) {
        HomologyDimension h;
        h.dim = d;
        h.betti = complex.cellCount(d) - ranks[d + 1] - ranks[d + 2];
        for (const auto& f : factors[d + 2])
            if (f > 1) h.torsion.push_back(f);
        out.dims.push_back(std::move(h));
    }
    return out;
}

HomologyGroups reducedHomologyViaSubdivision(const SimplicialPoset& poset, const CoefficientDomain& coeffs) {
    return reducedHomology(barycentricSubdivision(poset, PosetLimits{64, 64}, true), coeffs);
}

SimplicialPoset link(const SimplicialPoset& poset, Index x) {
    if (x < 0 || x >= poset.size()) throw InputError("link: element out of range");
    if (x == poset.root()) return poset;
    const int base = poset.rankOf(x);
    RawPoset raw;
    for (Index y : poset.upSet(x)) {
        RawCell cell{poset.id(y), poset.rankOf(y) - base, {}, poset.label(y)};
        for (Index c : poset.covers(y))
            if (poset.leq(x, c)) cell.covers.push_back(poset.id(c));
        raw.rank = std::max(raw.rank, cell.rank);
        raw.cells.push_back(std::move(cell));
    }
    return SimplicialPoset::fromRaw(raw, PosetLimits{64, 64});
}

std::vector<CMVerdict> cohenMacaulay(const SimplicialPoset& poset, const std::vector<CoefficientDomain>& fields) {
    std::vector<CMVerdict> out;
    for (const auto& field : fields) {
        if (!field.isField()) throw InputError("Cohen-Macaulay test needs a field, got " + field.name());
        out.push_back(CMVerdict{field.name(), true, {}});
    }
    const int n = poset.rank();
    for (Index x = 0; x < poset.size(); ++x) {
        const SimplicialPoset lk = link(poset, x);
        const int dimLink = n - poset.rankOf(x) - 1;
        for (std::size_t f = 0; f < fields.size(); ++f) {
            const HomologyGroups h = reducedHomology(lk, fields[f]);
            for (const auto& d : h.dims) {
                if (d.dim >= dimLink) break;
                if (d.betti != 0) {
                    out[f].cohenMacaulay = false;
                    out[f].failures.push_back(
                        {poset.id(x), "H~_" + std::to_string(d.dim) + " of link has rank " + std::to_string(d.betti)});
                    break;
                }
            }
        }
    }
    return out;
}

GorensteinVerdict gorensteinStar(const SimplicialPoset& poset, const PosetLimits& limits) {
    if (poset.rank() > limits.maxRank)
        throw InputError("rank " + std::to_string(poset.rank()) + " exceeds the configured bound " +
                         std::to_string(limits.maxRank));
    GorensteinVerdict verdict;
    const int n = poset.rank();
    for (Index x = 0; x < poset.size(); ++x) {
        const int want = n - poset.rankOf(x) - 1;
        const HomologyGroups h = reducedHomology(link(poset, x));
        if (h.isSphere(want)) continue;
        verdict.gorenstein = false;
        std::string reason = "link is not a homology " + std::to_string(want) + "-sphere:";
        for (const auto& d : h.dims) {
            if (d.betti == 0 && d.torsion.empty()) continue;
            reason += " H~_" + std::to_string(d.dim) + "=Z^" + std::to_string(d.betti);
            for (const auto& t : d.torsion) reason += "+Z/" + t.get_str();
        }
        if (reason.back() == ':') reason += " acyclic";
        verdict.failures.push_back({poset.id(x), reason});
    }
    return verdict;
}

bool pseudomanifold(const SimplicialPoset& poset) {
    if (!poset.isPure()) return false;
    const int n = poset.rank();
    if (n == 0) return true;
    for (Index e : poset.ofRank(n - 1)) {
        int tops = 0;
        for (Index c : poset.coveredBy(e))
            if (poset.rankOf(c) == n) ++tops;
        if (tops != 2) return false;
    }
    return true;
}

bool eulerSphereCheck(const SimplicialPoset& poset) {
    const int n = poset.rank();
    const std::int64_t sphere = n == 0 ? 0 : 1 + ((n - 1) % 2 == 0 ? 1 : -1);
    return eulerCharacteristic(poset) == sphere;
}

}  // namespace torusfan
