#include "fqgeom/charsums.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fqgeom {

GaussConstant gauss_constant(const FieldCtx& ctx) {
    const Residue q = ctx.q();
    Cplx sum = 0.0;
    for (Residue c = 1; c < q; ++c) {
        sum += static_cast<double>(ctx.legendre(c)) * ctx.add_char(c);
    }
    const Cplx value = sum / std::sqrt(static_cast<double>(q));
    const Cplx expected = (q % 4 == 1) ? Cplx(value.real() < 0 ? -1.0 : 1.0, 0.0)
                                       : Cplx(0.0, value.imag() < 0 ? -1.0 : 1.0);
    if (std::abs(value - expected) > 1e-6) {
        throw std::runtime_error("gauss_constant: Q did not land on a fourth root "
                                 "of unity for q=" + std::to_string(q));
    }
    return GaussConstant{expected, q};
}

Cplx gauss_sum(const FieldCtx& ctx, Residue j) {
    if (j == 0) {
        throw std::invalid_argument("gauss_sum: j must be nonzero");
    }
    const Residue q = ctx.q();
    Cplx sum = 0.0;
    for (Residue c = 0; c < q; ++c) {
        sum += ctx.add_char(ctx.mul(j, ctx.mul(c, c)));
    }
    return sum;
}

Cplx kloosterman(const FieldCtx& ctx, Residue a, const MultCharacter& psi) {
    const Residue q = ctx.q();
    Cplx sum = 0.0;
    for (Residue s = 1; s < q; ++s) {
        const int w = psi.eval(ctx, s);
        if (w == 0) continue;
        const Residue arg = ctx.add(ctx.mul(a, s), ctx.inv(s));
        sum += static_cast<double>(w) * ctx.add_char(arg);
    }
    return sum;
}

WeilScanReport weil_scan(const FieldCtx& ctx, const MultCharacter& psi) {
    const Residue q = ctx.q();
    WeilScanReport report;
    report.bound = 2.0 * std::sqrt(static_cast<double>(q));
    for (Residue a = 1; a < q; ++a) {
        const double mag = std::abs(kloosterman(ctx, a, psi));
        if (mag > report.max_abs) report.max_abs = mag;
        ++report.sums;
    }
    report.pass = report.max_abs <= report.bound + 1e-9;
    return report;
}

}  // namespace fqgeom
