#ifndef TORUSFAN_COHOMOLOGY_HPP
#define TORUSFAN_COHOMOLOGY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torusfan/characteristic_map.hpp"
#include "torusfan/coefficients.hpp"
#include "torusfan/facering.hpp"
#include "torusfan/poset.hpp"

namespace torusfan {

struct BettiReport {
    std::string field;
    /// b_0..b_n: dimensions of the degree-2k pieces of k[P]/(theta).
    std::vector<std::int64_t> betti;
    /// Dimension in degree 2(n+1); zero whenever theta is a regular sequence.
    long long beyondTop = 0;
    bool matchesH = false;
};

/// Throws InputError when lambda is not unimodular or the domain is not a field.
BettiReport bettiNumbers(const SimplicialPoset& poset, const CharacteristicMap& lambda,
                         const CoefficientDomain& field);

/// Standard monomials spanning (k[P]/(theta))_{2k}: the chain monomials whose
/// columns are not pivots once the image of theta is in echelon form.
std::vector<ChainMonomial> quotientBasis(const SimplicialPoset& poset, const CharacteristicMap& lambda,
                                         const CoefficientDomain& field, int k);

struct RingPresentation {
    /// (element id, degree) for every non-root element.
    std::vector<std::pair<int, int>> generators;
    /// v_x v_y - v_{x meet y} sum v_z over incomparable pairs.
    std::vector<std::string> straightening;
    /// theta_1..theta_n.
    std::vector<std::string> linear;
};

RingPresentation presentCohomologyRing(const SimplicialPoset& poset, const CharacteristicMap& lambda);

bool dehnSommervilleCheck(const HVector& h);

struct SWParity {
    bool applicable = true;
    std::string reason;
    int pairing = 0;
    std::int64_t eulerCharacteristic = 0;
    int euler = 0;
    bool consistent = false;
};

/// Degree-2n part of prod (1 + v_i) in the mod-2 quotient, compared with the
/// top-cell class.  Without lambda a mod-2 map is searched with the given bound;
/// if none exists the verdict is inapplicable.  Throws CheckFailure when the
/// degree-2n piece is not spanned by a common top-cell class.
SWParity swParity(const SimplicialPoset& poset, const std::optional<CharacteristicMap>& lambda, int bound = 2);

/// The chain-monomial counts match the h-vector series for k <= dmax.
bool equivariantSeriesCheck(const SimplicialPoset& poset, int dmax);

}  // namespace torusfan

#endif
