#pragma once

#include <cstdint>
#include <vector>

#include "fqgeom/field.hpp"
#include "fqgeom/linalg.hpp"

namespace fqgeom {

/// Labeled vertices V_0, ..., V_k of one configuration.
using VertexList = std::vector<Point>;

/// x -> O x + T with O^t O = I over F_q; applying it preserves every
/// pairwise norm. Exact residue arithmetic throughout.
struct AffineIsometry {
    Residue q = 0;
    std::uint32_t d = 0;
    MatF matrix;        // d x d, row-major
    Point translation;  // d residues

    Point apply(const Point& x) const;
    VertexList apply(const VertexList& vs) const;

    /// Recomputes O^t O and compares with I.
    bool orthogonal() const;

    /// The group inverse: O^{-1} = O^t, translation -O^t T.
    AffineIsometry inverse() const;
};

/// True iff ||V_i - V_j|| = ||V'_i - V'_j|| for all i < j.
bool check_congruent(const VertexList& p, const VertexList& p2, Residue q);

/// Constructs U with U(V_i) = V'_i, per the complement-matching
/// recipe: solve for the map on span{V_i - V_0}, then pair orthogonal
/// complement bases with equal Gram matrices. Throws NotCongruent,
/// NotGeneralPosition, or DegenerateSpan (Gram of the span singular).
AffineIsometry build_isometry(const VertexList& p, const VertexList& p2, Residue q,
                              std::uint32_t d);

/// Product of 2d reflections in random non-isotropic vectors plus a
/// random translation. A seeded test-vector generator; no uniformity
/// claim over O(d, F_q).
AffineIsometry random_orthogonal(Residue q, std::uint32_t d, std::uint64_t seed);

}  // namespace fqgeom
