#include "fqgeom/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fqgeom/charsums.hpp"
#include "fqgeom/detail/parallel.hpp"

namespace fqgeom {

namespace {

void validate(const SphereSpec& spec, bool need_nonzero_t) {
    if (!is_odd_prime(spec.q)) {
        throw std::invalid_argument("SphereSpec: q must be an odd prime");
    }
    if (spec.d == 0) throw std::invalid_argument("SphereSpec: d must be positive");
    if (spec.t >= spec.q) throw std::invalid_argument("SphereSpec: t must be reduced mod q");
    if (need_nonzero_t && spec.t == 0) {
        throw std::invalid_argument("SphereSpec: t = 0 not supported here");
    }
}

// Walks the grid in index order, keeping coords and their norm current.
template <typename Fn>
void for_each_point(Residue q, std::uint32_t d, Fn&& fn) {
    std::vector<Residue> coords(d, 0);
    const std::size_t n = grid_size(q, d);
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::uint64_t norm = 0;
        for (Residue c : coords) norm += static_cast<std::uint64_t>(c) * c;
        fn(idx, coords, static_cast<Residue>(norm % q));
        for (std::uint32_t i = d; i-- > 0;) {
            if (++coords[i] < q) break;
            coords[i] = 0;
        }
    }
}

// |sum_{j != 0} chi(u (4j)^{-1} + j t) eta^d(-j)| for each norm u; the
// only part of the closed form that varies with m.
std::vector<Cplx> norm_sums(const FieldCtx& ctx, const SphereSpec& spec) {
    const Residue q = ctx.q();
    const Residue inv4 = ctx.inv(4 % q);
    const bool odd_d = spec.d % 2 == 1;
    std::vector<Cplx> sums(q, Cplx(0.0));
    for (Residue u = 0; u < q; ++u) {
        Cplx acc = 0.0;
        for (Residue j = 1; j < q; ++j) {
            const Residue arg = ctx.add(ctx.mul(u, ctx.mul(inv4, ctx.inv(j))),
                                        ctx.mul(j, spec.t));
            Cplx term = ctx.add_char(arg);
            if (odd_d && ctx.legendre(ctx.neg(j)) < 0) term = -term;
            acc += term;
        }
        sums[u] = acc;
    }
    return sums;
}

}  // namespace

GridFunction sphere_indicator(const SphereSpec& spec) {
    validate(spec, false);
    GridFunction f(spec.q, spec.d);
    for_each_point(spec.q, spec.d, [&](std::size_t idx, const std::vector<Residue>&, Residue nrm) {
        if (nrm == spec.t) f[idx] = 1.0;
    });
    return f;
}

std::int64_t sphere_size(const SphereSpec& spec) {
    validate(spec, true);
    std::int64_t count = 0;
    for_each_point(spec.q, spec.d, [&](std::size_t, const std::vector<Residue>&, Residue nrm) {
        if (nrm == spec.t) ++count;
    });
    double expected = 1.0;
    for (std::uint32_t i = 1; i < spec.d; ++i) expected *= static_cast<double>(spec.q);
    const double eps = static_cast<double>(count) / expected - 1.0;
    const double window = 2.0 / std::sqrt(expected);
    if (std::abs(eps) > window + 1e-12) {
        throw std::logic_error("sphere_size: cardinality outside the q^{d-1} window");
    }
    return count;
}

Cplx sphere_ft_closed(const SphereSpec& spec, const Point& m) {
    validate(spec, true);
    if (m.dim() != spec.d) {
        throw std::invalid_argument("sphere_ft_closed: frequency dimension mismatch");
    }
    FieldCtx ctx(spec.q);
    const Residue q = spec.q;
    const Residue u = norm(m, q);
    const Residue inv4 = ctx.inv(4 % q);
    const bool odd_d = spec.d % 2 == 1;

    Cplx jsum = 0.0;
    for (Residue j = 1; j < q; ++j) {
        const Residue arg = ctx.add(ctx.mul(u, ctx.mul(inv4, ctx.inv(j))),
                                    ctx.mul(j, spec.t));
        Cplx term = ctx.add_char(arg);
        if (odd_d && ctx.legendre(ctx.neg(j)) < 0) term = -term;
        jsum += term;
    }

    Cplx qd_pow = 1.0;
    const Cplx gc = gauss_constant(ctx).value;
    for (std::uint32_t i = 0; i < spec.d; ++i) qd_pow *= gc;
    const double scale = std::pow(static_cast<double>(q),
                                  -(static_cast<double>(spec.d) + 2.0) / 2.0);
    Cplx result = qd_pow * scale * jsum;

    bool m_zero = true;
    for (Residue c : m.coords) {
        if (c % q != 0) { m_zero = false; break; }
    }
    if (m_zero) result += 1.0 / static_cast<double>(q);
    return result;
}

DecayReport sphere_decay_scan(const SphereSpec& spec, unsigned threads) {
    validate(spec, true);
    FieldCtx ctx(spec.q);
    const auto sums = norm_sums(ctx, spec);
    const Residue q = spec.q;

    // |Shat(m)| = q^{-(d+2)/2} |jsum(||m||)| for m != 0, so the
    // normalized value is q^{-1/2} |jsum(||m||)|.
    std::vector<double> per_norm(q);
    for (Residue u = 0; u < q; ++u) {
        per_norm[u] = std::abs(sums[u]) / std::sqrt(static_cast<double>(q));
    }

    const std::size_t n = grid_size(q, spec.d);
    std::vector<double> chunk_max(std::max(1u, threads), 0.0);
    std::vector<std::size_t> chunk_cnt(std::max(1u, threads), 0);

    detail::parallel_chunks(n - 1, threads, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
        double local = 0.0;
        GridFunction shape(q, spec.d);  // for index decoding only
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const Point m = shape.point_at(idx + 1);  // skip m = 0
            local = std::max(local, per_norm[norm(m, q)]);
        }
        chunk_max[chunk] = local;
        chunk_cnt[chunk] = hi - lo;
    });

    DecayReport rep;
    for (double v : chunk_max) rep.max_normalized = std::max(rep.max_normalized, v);
    for (std::size_t c : chunk_cnt) rep.frequencies += c;
    rep.pass = rep.max_normalized <= 2.0 + 1e-6;
    return rep;
}

}  // namespace fqgeom
