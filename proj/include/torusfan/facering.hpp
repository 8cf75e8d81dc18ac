#ifndef TORUSFAN_FACERING_HPP
#define TORUSFAN_FACERING_HPP

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "torusfan/characteristic_map.hpp"
#include "torusfan/coefficients.hpp"
#include "torusfan/polynomial.hpp"
#include "torusfan/poset.hpp"

namespace torusfan {

/// v_{x_1}^{a_1} ... v_{x_q}^{a_q} over a strictly increasing chain x_1 < ... < x_q
/// of non-root elements.  The empty chain is the unit.
struct ChainMonomial {
    std::vector<std::pair<Index, int>> factors;

    auto operator<=>(const ChainMonomial&) const = default;
    bool isUnit() const noexcept { return factors.empty(); }
};

/// Polynomial degree; v_x has degree 2 rk x.
int monomialDegree(const SimplicialPoset& poset, const ChainMonomial& m);

/// A poset together with cached straightening data.  Shared by all ring elements over it.
class FaceRing {
public:
    explicit FaceRing(SimplicialPoset poset) : poset_(std::move(poset)) {}

    const SimplicialPoset& poset() const noexcept { return poset_; }

    struct Relation {
        Index meet = 0;
        std::vector<Index> join;
    };
    /// v_x v_y = v_{meet} * sum over join of v_z; an empty join means the product vanishes.
    const Relation& relation(Index x, Index y) const;

private:
    SimplicialPoset poset_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::uint64_t, Relation> cache_;
};

using FaceRingPtr = std::shared_ptr<const FaceRing>;
FaceRingPtr makeFaceRing(SimplicialPoset poset);

/// Integer combination of chain monomials, as produced by straightening.
using MonomialSum = std::map<ChainMonomial, mpz_class>;

/// Normal form of m1 * m2: the generators of m2 are inserted into m1 in
/// decreasing rank order.
MonomialSum straightenProduct(const FaceRing& ring, const ChainMonomial& m1, const ChainMonomial& m2);
/// Normal form of the product of the given generators folded from 1 in the given order.
MonomialSum straightenGenerators(const FaceRing& ring, const std::vector<Index>& generators);
/// Generators of m, with multiplicity, in chain order.
std::vector<Index> expandGenerators(const ChainMonomial& m);

/// Element of k[P] in chain-monomial normal form.  Immutable value semantics.
class RingElement {
public:
    RingElement(FaceRingPtr ring, CoefficientDomain domain) : ring_(std::move(ring)), domain_(domain) {}

    static RingElement zero(FaceRingPtr ring, CoefficientDomain domain) { return {std::move(ring), domain}; }
    static RingElement one(FaceRingPtr ring, CoefficientDomain domain);
    static RingElement generator(FaceRingPtr ring, CoefficientDomain domain, Index x);
    static RingElement monomial(FaceRingPtr ring, CoefficientDomain domain, ChainMonomial m,
                                const mpq_class& coefficient = 1);
    static RingElement fromSum(FaceRingPtr ring, CoefficientDomain domain, const MonomialSum& sum);
    /// Parses "c * v{id}^a * v{id} + ...", straightening each product.
    static RingElement parse(FaceRingPtr ring, CoefficientDomain domain, std::string_view text);

    const FaceRingPtr& ring() const noexcept { return ring_; }
    const SimplicialPoset& poset() const noexcept { return ring_->poset(); }
    const CoefficientDomain& domain() const noexcept { return domain_; }
    const std::map<ChainMonomial, mpq_class>& terms() const noexcept { return terms_; }
    bool isZero() const noexcept { return terms_.empty(); }
    mpq_class coefficient(const ChainMonomial& m) const;

    /// Degrees (2 sum a_i rk x_i) of the non-zero homogeneous components, ascending.
    std::vector<int> degrees() const;
    RingElement homogeneousComponent(int degree) const;

    RingElement operator+(const RingElement& other) const;
    RingElement operator-(const RingElement& other) const;
    RingElement operator*(const RingElement& other) const;
    RingElement scaled(const mpq_class& c) const;
    bool operator==(const RingElement& other) const;

    /// Canonical text: terms ordered by degree, then by (id, exponent) sequence.
    std::string toString() const;

private:
    void addTerm(const ChainMonomial& m, const mpq_class& c);
    void requireCompatible(const RingElement& other) const;

    FaceRingPtr ring_;
    CoefficientDomain domain_;
    std::map<ChainMonomial, mpq_class> terms_;
};

RingElement multiply(const RingElement& a, const RingElement& b);
RingElement add(const RingElement& a, const RingElement& b);
RingElement scale(const RingElement& a, const mpq_class& c);

/// Canonical text for a single chain monomial ("1" for the unit).
std::string monomialToString(const SimplicialPoset& poset, const ChainMonomial& m);

/// Image in k[t_1..t_r], r = rk p, for a maximal element p.  Variables follow
/// the sorted vertices of p.  Throws InputError unless p is maximal.
Polynomial restrictionAtVertex(const RingElement& a, Index p);
/// Restrictions at every maximal element, in ascending (rank, id) order.
std::vector<Polynomial> totalRestriction(const RingElement& a);
/// Restriction of a single chain monomial (the coefficient is 1).
Polynomial restrictMonomial(const SimplicialPoset& poset, const ChainMonomial& m, Index p);

/// Number of chain monomials of degree 2k.
mpz_class gradedDimension(const SimplicialPoset& poset, int k);
/// Chain monomials of degree 2k in a fixed deterministic order.
std::vector<ChainMonomial> chainMonomialBasis(const SimplicialPoset& poset, int k);
/// Degree-2k coefficient of (h_0 + h_1 t^2 + ... + h_n t^{2n}) / (1 - t^2)^n.
mpz_class hilbertCoefficient(const HVector& h, int k);

struct HilbertRow {
    int k = 0;
    mpz_class count;
    mpz_class expected;
};

struct HilbertReport {
    std::vector<HilbertRow> rows;
    bool ok = true;
};

HilbertReport hilbertCheck(const SimplicialPoset& poset, int dmax);

/// theta_j = sum_i Lambda(i)[j] v_i for j = 1..n.  Throws InputError when
/// Lambda misses a rank-1 element, names an unknown one, or has a wrong length.
std::vector<RingElement> lsopFromLambda(const FaceRingPtr& ring, const CoefficientDomain& domain,
                                        const CharacteristicMap& lambda);

/// Random element with at most `terms` monomials of degree <= 2*maxHalfDegree and
/// coefficients in [-3, 3].
RingElement randomElement(const FaceRingPtr& ring, const CoefficientDomain& domain, std::mt19937_64& rng,
                          int maxHalfDegree, int terms);

}  // namespace torusfan

#endif
