#pragma once

#include <cstdint>

#include "fqgeom/field.hpp"
#include "fqgeom/fourier.hpp"

namespace fqgeom {

/// The sphere S_t = { x in F_q^d : ||x|| = t }.
/// t = 0 (the isotropic cone) is enumerable, but every operation tied
/// to the decay theory requires t != 0.
struct SphereSpec {
    Residue q = 0;
    std::uint32_t d = 0;
    Residue t = 0;
};

/// 0/1 indicator of S_t on the shared grid layout.
GridFunction sphere_indicator(const SphereSpec& spec);

/// |S_t| by enumeration. Requires t != 0; also checks the cardinality
/// window |S_t| = q^(d-1) (1 + eps), |eps| <= 2 q^{-(d-1)/2}.
std::int64_t sphere_size(const SphereSpec& spec);

/// Closed-form transform value
///   q^{-1} delta(m) + Q^d q^{-(d+2)/2} sum_{j != 0} chi(||m|| (4j)^{-1} + j t) eta^d(-j)
/// evaluated by direct O(q) summation. Requires t != 0.
Cplx sphere_ft_closed(const SphereSpec& spec, const Point& m);

struct DecayReport {
    double max_normalized = 0.0;  // max over m != 0 of |Shat_t(m)| q^{(d+1)/2}
    std::size_t frequencies = 0;  // number of nonzero m scanned
    bool pass = false;            // max_normalized <= 2 + 1e-6
};

/// Scans every m != 0. The closed form depends on m only through ||m||,
/// so the j-sum is evaluated once per norm value; the max reduction is
/// order-independent and safe to split across threads.
DecayReport sphere_decay_scan(const SphereSpec& spec, unsigned threads = 1);

}  // namespace fqgeom
