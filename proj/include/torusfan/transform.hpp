#ifndef TORUSFAN_TRANSFORM_HPP
#define TORUSFAN_TRANSFORM_HPP

#include <utility>
#include <vector>

#include "torusfan/poset.hpp"

namespace torusfan {

/// Order complex of P minus its root: one vertex per element, one k-cell per
/// chain of length k+1.  Refused above limits.maxBarycentricRank unless forced.
SimplicialPoset barycentricSubdivision(const SimplicialPoset& poset, const PosetLimits& limits = {},
                                       bool force = false);

/// Removes every element >= x and cones the boundary of the closed star of x
/// from a new vertex.  Subdividing at a vertex returns an isomorphic poset.
/// Throws InputError when x is the root and CheckFailure if the Euler
/// characteristic changes.
SimplicialPoset stellarSubdivision(const SimplicialPoset& poset, Index x, const PosetLimits& limits = {});

/// Simplicial join; its h-polynomial is the product of the factors'.
SimplicialPoset join(const SimplicialPoset& a, const SimplicialPoset& b, const PosetLimits& limits = {});

/// Pairs (vertex id below the first top cell, vertex id below the second).
using VertexMatching = std::vector<std::pair<int, int>>;

/// Removes the top cells `first` and `second` and glues their boundaries along
/// the boolean isomorphism induced by `matching`.  Elements of `a` keep their
/// ids; surviving elements of `b` are shifted past them.
SimplicialPoset connectedSum(const SimplicialPoset& a, Index first, const SimplicialPoset& b, Index second,
                             const VertexMatching& matching, const PosetLimits& limits = {});
/// Same, matching the sorted vertex lists of the two cells position by position.
SimplicialPoset connectedSum(const SimplicialPoset& a, Index first, const SimplicialPoset& b, Index second,
                             const PosetLimits& limits = {});

/// Face poset of the boundary of the n-simplex (n+1 vertices, rank n).
SimplicialPoset simplexBoundary(int n);
/// Two (n-1)-simplices glued along their whole boundary (n vertices, rank n).
SimplicialPoset spherePoset(int n);
/// join(spherePoset(k), spherePoset(m)).
SimplicialPoset sphereProductPoset(int k, int m);
/// Face poset of a single (n-1)-simplex, a disc of rank n.
SimplicialPoset simplexPoset(int n);
/// The rank-0 poset consisting of the root alone.
SimplicialPoset pointPoset();

}  // namespace torusfan

#endif
