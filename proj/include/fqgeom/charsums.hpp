#pragma once

#include <cstdint>

#include "fqgeom/field.hpp"

namespace fqgeom {

/// Multiplicative character on F_q*: either the trivial character or the
/// quadratic character (Legendre symbol). The quadratic character is 0 at 0
/// by convention; the trivial one is only ever evaluated on F_q*.
class MultCharacter {
public:
    enum class Kind { trivial, quadratic };

    static MultCharacter trivial() { return MultCharacter(Kind::trivial); }
    static MultCharacter quadratic() { return MultCharacter(Kind::quadratic); }

    Kind kind() const noexcept { return kind_; }
    const char* name() const noexcept {
        return kind_ == Kind::trivial ? "trivial" : "quadratic";
    }

    int eval(const FieldCtx& ctx, Residue a) const {
        if (kind_ == Kind::trivial) return a == 0 ? 0 : 1;
        return ctx.legendre(a);
    }

private:
    explicit MultCharacter(Kind k) : kind_(k) {}
    Kind kind_;
};

/// The unit Q with sum_c eta(c) chi(c) = Q * sqrt(q).
/// Q is +-1 when q = 1 mod 4 and +-i when q = 3 mod 4.
struct GaussConstant {
    Cplx value;
    Residue q;
};

/// Computes Q from the eta-chi sum and checks it lands on {+-1, +-i} in the
/// class determined by q mod 4, within 1e-6. Throws std::runtime_error if
/// the check fails (would indicate a character-table bug).
GaussConstant gauss_constant(const FieldCtx& ctx);

/// sum_{c in F_q} chi(j c^2) by direct summation. Rejects j = 0 (the sum
/// degenerates to q there; a zero j signals a caller bug).
Cplx gauss_sum(const FieldCtx& ctx, Residue j);

/// K(a) = sum_{s != 0} chi(a s + s^{-1}) psi(s), direct q-1 term summation.
Cplx kloosterman(const FieldCtx& ctx, Residue a, const MultCharacter& psi);

struct WeilScanReport {
    double max_abs = 0.0;     // max |K(a)| over a in F_q*
    double bound = 0.0;       // 2 sqrt(q)
    bool pass = false;        // max_abs <= bound + 1e-9
    std::uint32_t sums = 0;   // number of Kloosterman sums evaluated
};

/// Evaluates K(a) for every a in F_q* and checks the 2*sqrt(q) bound.
WeilScanReport weil_scan(const FieldCtx& ctx, const MultCharacter& psi);

}  // namespace fqgeom
