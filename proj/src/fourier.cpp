#include "fqgeom/fourier.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fqgeom/detail/parallel.hpp"
#include "fqgeom/errors.hpp"

namespace fqgeom {

namespace {

constexpr std::size_t kMaxGridEntries = std::size_t{1} << 26;

// chi(-r)/q for r in [0, q); one factor 1/q per axis pass gives the
// q^{-d} normalization of the forward transform.
std::vector<Cplx> forward_twiddles(const FieldCtx& ctx) {
    const Residue q = ctx.q();
    std::vector<Cplx> w(q);
    const double scale = 1.0 / static_cast<double>(q);
    for (Residue r = 0; r < q; ++r) {
        w[r] = ctx.add_char(r == 0 ? 0 : q - r) * scale;
    }
    return w;
}

std::vector<Cplx> inverse_twiddles(const FieldCtx& ctx) {
    const Residue q = ctx.q();
    std::vector<Cplx> w(q);
    for (Residue r = 0; r < q; ++r) w[r] = ctx.add_char(r);
    return w;
}

// One length-q pass along `axis`, all lines, out-of-place.
void axis_pass(const std::vector<Cplx>& in, std::vector<Cplx>& out, Residue q,
               std::size_t stride, const std::vector<Cplx>& w, unsigned threads) {
    const std::size_t nlines = in.size() / q;
    detail::parallel_chunks(nlines, threads, [&](std::size_t, std::size_t lo_line, std::size_t hi_line) {
        std::vector<Cplx> line(q);
        for (std::size_t ln = lo_line; ln < hi_line; ++ln) {
            const std::size_t hi = ln / stride;
            const std::size_t rem = ln % stride;
            const std::size_t base = hi * (static_cast<std::size_t>(q) * stride) + rem;
            for (Residue x = 0; x < q; ++x) line[x] = in[base + x * stride];
            for (Residue m = 0; m < q; ++m) {
                Cplx acc = 0.0;
                for (Residue x = 0; x < q; ++x) {
                    acc += line[x] * w[(static_cast<std::uint32_t>(m) * x) % q];
                }
                out[base + m * stride] = acc;
            }
        }
    });
}

GridFunction transform_factorized(const GridFunction& f, const std::vector<Cplx>& w,
                                  unsigned threads) {
    const Residue q = f.q();
    const std::uint32_t d = f.dim();
    std::vector<Cplx> cur = f.values();
    std::vector<Cplx> nxt(cur.size());
    std::size_t stride = f.size() / q;  // axis 0 is most significant
    for (std::uint32_t axis = 0; axis < d; ++axis) {
        axis_pass(cur, nxt, q, stride, w, threads);
        cur.swap(nxt);
        stride /= q;
    }
    GridFunction out(q, d);
    out.values() = std::move(cur);
    return out;
}

GridFunction transform_naive(const GridFunction& f, const std::vector<Cplx>& w,
                             unsigned threads) {
    const Residue q = f.q();
    const std::uint32_t d = f.dim();
    const std::size_t n = f.size();
    // coords[i*d + axis] = coordinate of grid index i along axis
    std::vector<Residue> coords(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rest = i;
        for (std::uint32_t axis = d; axis-- > 0;) {
            coords[i * d + axis] = static_cast<Residue>(rest % q);
            rest /= q;
        }
    }
    GridFunction out(q, d);
    // w carries one 1/q factor; the naive double loop needs q^{-d} total.
    double extra = 1.0;
    for (std::uint32_t i = 1; i < d; ++i) extra /= static_cast<double>(q);
    detail::parallel_chunks(n, threads, [&](std::size_t, std::size_t mlo, std::size_t mhi) {
        for (std::size_t mi = mlo; mi < mhi; ++mi) {
            const Residue* mc = &coords[mi * d];
            Cplx acc = 0.0;
            for (std::size_t xi = 0; xi < n; ++xi) {
                const Residue* xc = &coords[xi * d];
                std::uint64_t dot = 0;
                for (std::uint32_t a = 0; a < d; ++a) {
                    dot += static_cast<std::uint64_t>(mc[a]) * xc[a];
                }
                acc += f[xi] * w[dot % q];
            }
            out[mi] = acc * extra;
        }
    });
    return out;
}

}  // namespace

std::size_t grid_size(Residue q, std::uint32_t d) {
    if (q < 2) throw std::invalid_argument("grid_size: q must be at least 2");
    if (d == 0) throw std::invalid_argument("grid_size: dimension must be positive");
    std::size_t n = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        if (n > kMaxGridEntries / q) {
            throw std::invalid_argument("grid_size: q^d exceeds the dense grid budget");
        }
        n *= q;
    }
    return n;
}

std::size_t GridFunction::index_of(std::span<const Residue> coords) const {
    assert(coords.size() == d_);
    std::size_t idx = 0;
    for (std::uint32_t i = 0; i < d_; ++i) {
        assert(coords[i] < q_);
        idx = idx * q_ + coords[i];
    }
    return idx;
}

Point GridFunction::point_at(std::size_t index) const {
    assert(index < values_.size());
    Point p;
    p.coords.resize(d_);
    for (std::uint32_t i = d_; i-- > 0;) {
        p.coords[i] = static_cast<Residue>(index % q_);
        index /= q_;
    }
    return p;
}

GridFunction dft(const GridFunction& f, DftStrategy strategy, unsigned threads) {
    FieldCtx ctx(f.q());
    const auto w = forward_twiddles(ctx);
    return strategy == DftStrategy::naive ? transform_naive(f, w, threads)
                                          : transform_factorized(f, w, threads);
}

GridFunction inverse_dft(const GridFunction& g, unsigned threads) {
    FieldCtx ctx(g.q());
    const auto w = inverse_twiddles(ctx);
    return transform_factorized(g, w, threads);
}

double plancherel_gap(const GridFunction& f, const GridFunction& g) {
    if (!f.same_shape(g)) throw std::invalid_argument("plancherel_gap: shape mismatch");
    Cplx side = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) side += f[i] * std::conj(g[i]);
    double qd = 1.0;
    for (std::uint32_t i = 0; i < f.dim(); ++i) qd *= static_cast<double>(f.q());
    side /= qd;
    const GridFunction fh = dft(f);
    const GridFunction gh = dft(g);
    Cplx spec = 0.0;
    for (std::size_t i = 0; i < fh.size(); ++i) spec += fh[i] * std::conj(gh[i]);
    return std::abs(side - spec);
}

std::int64_t correlate_count(const GridFunction& e_ind, const GridFunction& s_ind) {
    if (!e_ind.same_shape(s_ind)) {
        throw std::invalid_argument("correlate_count: shape mismatch");
    }
    for (std::size_t i = 0; i < e_ind.size(); ++i) {
        const Cplx v = e_ind[i];
        const Cplx s = s_ind[i];
        if ((v != Cplx(0.0) && v != Cplx(1.0)) || (s != Cplx(0.0) && s != Cplx(1.0))) {
            throw std::invalid_argument("correlate_count: inputs must be 0/1 indicators");
        }
    }
    const GridFunction eh = dft(e_ind);
    const GridFunction sh = dft(s_ind);
    Cplx acc = 0.0;
    for (std::size_t i = 0; i < eh.size(); ++i) acc += std::norm(eh[i]) * sh[i];
    double q2d = 1.0;
    for (std::uint32_t i = 0; i < 2 * e_ind.dim(); ++i) {
        q2d *= static_cast<double>(e_ind.q());
    }
    const Cplx total = acc * q2d;
    const auto rounded = static_cast<std::int64_t>(std::llround(total.real()));
    const double residual = std::abs(total - Cplx(static_cast<double>(rounded)));
    if (residual > 1e-3) {
        throw ResidualTooLarge("correlate_count: spectral sum residual " +
                               std::to_string(residual) + " exceeds 1e-3");
    }
    return rounded;
}

}  // namespace fqgeom
