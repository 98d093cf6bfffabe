#include "fqgeom/simplex.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cassert>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "fqgeom/detail/parallel.hpp"
#include "fqgeom/errors.hpp"
#include "fqgeom/linalg.hpp"
#include "fqgeom/sphere.hpp"

namespace fqgeom {

namespace {

std::int64_t checked_scale(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0 ||
        (a != 0 && b != 0 &&
         static_cast<double>(a) * static_cast<double>(b) > 9.0e18)) {
        throw InstanceTooLarge("count_simplices: count exceeds the 64-bit range");
    }
    return a * b;
}

// ||x|| for every grid index, odometer walk in index order.
std::vector<Residue> grid_norms(Residue q, std::uint32_t d) {
    const std::size_t n = grid_size(q, d);
    std::vector<Residue> norms(n);
    std::vector<Residue> coords(d, 0);
    std::uint64_t acc = 0;  // running sum of squares, reduced lazily
    for (std::size_t idx = 0; idx < n; ++idx) {
        norms[idx] = static_cast<Residue>(acc % q);
        for (std::uint32_t i = d; i-- > 0;) {
            const Residue old = coords[i];
            acc -= static_cast<std::uint64_t>(old) * old;
            if (++coords[i] < q) {
                acc += static_cast<std::uint64_t>(coords[i]) * coords[i];
                break;
            }
            coords[i] = 0;
        }
    }
    return norms;
}

// h_{b,c}(u) = #{z : ||z|| = b, ||u - z|| = c}, as an integer grid,
// computed through the transform-side product (a convolution of two
// sphere indicators). Entries are exact integers; rounding is guarded.
std::vector<std::int64_t> sphere_pair_profile(Residue q, std::uint32_t d, Residue b,
                                              Residue c) {
    const GridFunction sb = sphere_indicator({q, d, b});
    const GridFunction sc = sphere_indicator({q, d, c});
    const GridFunction bh = dft(sb);
    const GridFunction ch = dft(sc);
    double qd = 1.0;
    for (std::uint32_t i = 0; i < d; ++i) qd *= static_cast<double>(q);
    GridFunction prod(q, d);
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = bh[i] * ch[i] * qd;
    const GridFunction h = inverse_dft(prod);
    std::vector<std::int64_t> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto r = static_cast<std::int64_t>(std::llround(h[i].real()));
        if (std::abs(h[i] - Cplx(static_cast<double>(r))) > 1e-3) {
            throw ResidualTooLarge("count_simplices: convolution entry failed to round");
        }
        out[i] = r;
    }
    return out;
}

// Expected word-op count of the depth-first extension, used for the
// work-budget check before any allocation happens.
double dfs_projection(double n, std::uint32_t k, Residue q, double words,
                      double outer, bool with_index) {
    double proj = with_index ? n * n : 0.0;
    double partial = outer;
    for (std::uint32_t j = 1; j <= k; ++j) {
        proj += partial * static_cast<double>(j) * words;
        partial = partial * n / static_cast<double>(q);
    }
    return proj;
}

void enforce_budget(double projected, double budget) {
    if (projected > budget) {
        throw InstanceTooLarge("count_simplices: projected work " +
                               std::to_string(projected) + " exceeds budget " +
                               std::to_string(budget));
    }
}

struct DfsJob {
    const PairDistanceIndex* idx = nullptr;
    const SimplexSpec* spec = nullptr;
    const std::vector<Point>* pts = nullptr;
    const FieldCtx* ctx = nullptr;  // set only when filtering degenerates
    bool nondeg = false;
    std::size_t words = 0;
    std::vector<std::vector<std::uint64_t>> cand;
    std::vector<std::size_t> chosen;
    MatF gp_mat;
    std::int64_t count = 0;

    DfsJob(const PairDistanceIndex& index, const SimplexSpec& s, const std::vector<Point>& p,
           const FieldCtx* field, bool nondegenerate)
        : idx(&index),
          spec(&s),
          pts(&p),
          ctx(field),
          nondeg(nondegenerate),
          words(index.words_per_row()),
          cand(s.k + 1, std::vector<std::uint64_t>(index.words_per_row())),
          chosen(s.k + 1, 0),
          gp_mat(s.k, p.empty() ? 0 : p.front().dim()) {}

    void run_from(std::size_t x0) {
        chosen[0] = x0;
        level(1);
    }

    bool general_position_ok() {
        const std::uint32_t k = spec->k;
        const Point& base = (*pts)[chosen[0]];
        for (std::uint32_t r = 0; r < k; ++r) {
            const Point& p = (*pts)[chosen[r + 1]];
            for (std::uint32_t c = 0; c < gp_mat.cols; ++c) {
                gp_mat.at(r, c) = ctx->sub(p.coords[c], base.coords[c]);
            }
        }
        return rank(*ctx, gp_mat) == k;
    }

    void level(std::uint32_t j) {
        const std::uint32_t k = spec->k;
        auto& buf = cand[j];
        const std::uint64_t* first = idx->row(spec->t(0, j), chosen[0]);
        std::copy(first, first + words, buf.begin());
        for (std::uint32_t i = 1; i < j; ++i) {
            const std::uint64_t* r = idx->row(spec->t(i, j), chosen[i]);
            for (std::size_t w = 0; w < words; ++w) buf[w] &= r[w];
        }
        if (j == k && !nondeg) {
            for (std::size_t w = 0; w < words; ++w) count += std::popcount(buf[w]);
            return;
        }
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t word = buf[w];
            while (word != 0) {
                const auto bitpos = static_cast<std::size_t>(std::countr_zero(word));
                word &= word - 1;
                chosen[j] = w * 64 + bitpos;
                if (j == k) {
                    if (general_position_ok()) ++count;
                } else {
                    level(j + 1);
                }
            }
        }
    }
};

std::int64_t dfs_count_all(const PointSet& e, const SimplexSpec& spec,
                           const PairDistanceIndex& idx, bool nondeg, unsigned threads) {
    const std::size_t n = e.size();
    std::optional<FieldCtx> ctx;
    if (nondeg) ctx.emplace(e.q());
    std::vector<std::int64_t> partial(std::max(1u, threads), 0);
    detail::parallel_chunks(n, threads, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
        DfsJob job(idx, spec, e.points(), ctx ? &*ctx : nullptr, nondeg);
        for (std::size_t x0 = lo; x0 < hi; ++x0) job.run_from(x0);
        partial[chunk] = job.count;
    });
    std::int64_t total = 0;
    for (std::int64_t c : partial) total += c;
    return total;
}

// Dense k = 2 sets: count through the complement.  With N_S the number
// of triples whose vertices at positions S are confined to the
// complement Ebar (others free in F_q^d), inclusion-exclusion gives
//   |T| = N_0 - sum_1 N_{i} + sum_2 N_{i,j} - N_{0,1,2}.
// Free-position counts reduce to the sphere-pair profiles above.
std::int64_t count_k2_complement(const PointSet& e, const SimplexSpec& spec,
                                 const CountOptions& opts) {
    const Residue q = e.q();
    const std::uint32_t d = e.dim();
    const std::size_t ngrid = grid_size(q, d);
    const Residue a = spec.t(0, 1);
    const Residue b = spec.t(0, 2);
    const Residue c = spec.t(1, 2);

    std::vector<char> in_e(ngrid, 0);
    for (std::size_t idx : e.grid_indices()) in_e[idx] = 1;
    std::vector<std::size_t> comp;
    comp.reserve(ngrid - e.size());
    for (std::size_t i = 0; i < ngrid; ++i) {
        if (!in_e[i]) comp.push_back(i);
    }
    const std::size_t nbar = comp.size();

    std::map<std::pair<Residue, Residue>, std::vector<std::int64_t>> profiles;
    auto profile = [&](Residue s, Residue t) -> const std::vector<std::int64_t>& {
        const auto key = std::minmax(s, t);
        auto it = profiles.find(key);
        if (it == profiles.end()) {
            it = profiles.emplace(key, sphere_pair_profile(q, d, key.first, key.second)).first;
        }
        return it->second;
    };
    const auto& h_bc = profile(b, c);
    const auto& h_ac = profile(a, c);
    const auto& h_ab = profile(a, b);

    const std::vector<Residue> norms = grid_norms(q, d);
    std::int64_t trip = 0;  // triangles anchored at the origin; symmetric in (a,b,c)
    for (std::size_t i = 0; i < ngrid; ++i) {
        if (norms[i] == a) trip += h_bc[i];
    }
    const std::int64_t full = checked_scale(trip, static_cast<std::int64_t>(ngrid));
    const std::int64_t one_bar = 3 * static_cast<std::int64_t>(nbar) * trip;

    // coordinates of the complement points, flattened
    std::vector<Residue> coords(nbar * d);
    for (std::size_t i = 0; i < nbar; ++i) {
        std::size_t rest = comp[i];
        for (std::uint32_t ax = d; ax-- > 0;) {
            coords[i * d + ax] = static_cast<Residue>(rest % q);
            rest /= q;
        }
    }

    // ordered pairs in Ebar x Ebar; (i, j) and (j, i) contribute equally
    std::vector<std::int64_t> partial(std::max(1u, opts.threads), 0);
    detail::parallel_chunks(nbar, opts.threads, [&](std::size_t chunk, std::size_t lo,
                                                    std::size_t hi) {
        std::int64_t s2 = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            const Residue* yi = &coords[i * d];
            for (std::size_t j = i + 1; j < nbar; ++j) {
                const Residue* yj = &coords[j * d];
                std::size_t uidx = 0;
                std::uint64_t nrm = 0;
                for (std::uint32_t ax = 0; ax < d; ++ax) {
                    const Residue uc =
                        yj[ax] >= yi[ax] ? yj[ax] - yi[ax] : yj[ax] + q - yi[ax];
                    uidx = uidx * q + uc;
                    nrm += static_cast<std::uint64_t>(uc) * uc;
                }
                const auto un = static_cast<Residue>(nrm % q);
                if (un == a) s2 += 2 * h_bc[uidx];
                if (un == b) s2 += 2 * h_ac[uidx];
                if (un == c) s2 += 2 * h_ab[uidx];
            }
        }
        partial[chunk] = s2;
    });
    std::int64_t two_bar = 0;
    for (std::int64_t s : partial) two_bar += s;

    std::int64_t three_bar = 0;
    if (nbar > 0) {
        const PointSet ebar = PointSet::from_indices(q, d, comp);
        const PairDistanceIndex idx(ebar);
        three_bar = dfs_count_all(ebar, spec, idx, false, opts.threads);
    }
    return full - one_bar + two_bar - three_bar;
}

void warn_small_dimension(std::uint32_t d, std::uint32_t k) {
    static std::atomic<bool> warned{false};
    if (d <= static_cast<std::uint32_t>(k) * (k + 1) / 2 && !warned.exchange(true)) {
        std::cerr << "count_simplices: warning: d <= k(k+1)/2, outside the concentration"
                     " regime; counts are exact but the main-term comparison is weak\n";
    }
}

}  // namespace

SimplexSpec SimplexSpec::prefix() const {
    if (k == 0) throw std::invalid_argument("SimplexSpec: no prefix of order -1");
    SimplexSpec p;
    p.k = k - 1;
    p.distances.assign(distances.begin(),
                       distances.begin() + static_cast<std::ptrdiff_t>(p.expected_entries()));
    return p;
}

void SimplexSpec::validate(Residue q) const {
    if (k < 1) throw std::invalid_argument("SimplexSpec: k must be at least 1");
    if (distances.size() != expected_entries()) {
        throw std::invalid_argument("SimplexSpec: expected " +
                                    std::to_string(expected_entries()) + " distances, got " +
                                    std::to_string(distances.size()));
    }
    for (Residue t : distances) {
        if (t == 0 || t >= q) {
            throw std::invalid_argument("SimplexSpec: distances must lie in F_q*");
        }
    }
}

PointSet::PointSet(Residue q, std::uint32_t d, std::vector<Point> pts)
    : q_(q), d_(d), points_(std::move(pts)) {
    if (!is_odd_prime(q)) throw std::invalid_argument("PointSet: q must be an odd prime");
    if (d == 0) throw std::invalid_argument("PointSet: d must be positive");
    grid_size(q, d);  // enforces the dense-grid budget
    indices_.reserve(points_.size());
    for (const Point& p : points_) {
        if (p.dim() != d) throw std::invalid_argument("PointSet: point dimension mismatch");
        std::size_t idx = 0;
        for (Residue c : p.coords) {
            if (c >= q) throw std::invalid_argument("PointSet: coordinate not reduced mod q");
            idx = idx * q + c;
        }
        indices_.push_back(idx);
    }
    std::vector<std::size_t> sorted = indices_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("PointSet: points must be distinct");
    }
}

PointSet PointSet::full_space(Residue q, std::uint32_t d) {
    std::vector<std::size_t> idx(grid_size(q, d));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return from_indices(q, d, idx);
}

PointSet PointSet::from_indices(Residue q, std::uint32_t d,
                                const std::vector<std::size_t>& grid_indices) {
    const std::size_t n = grid_size(q, d);
    std::vector<Point> pts;
    pts.reserve(grid_indices.size());
    for (std::size_t idx : grid_indices) {
        if (idx >= n) throw std::invalid_argument("PointSet: grid index out of range");
        Point p;
        p.coords.resize(d);
        std::size_t rest = idx;
        for (std::uint32_t i = d; i-- > 0;) {
            p.coords[i] = static_cast<Residue>(rest % q);
            rest /= q;
        }
        pts.push_back(std::move(p));
    }
    return PointSet(q, d, std::move(pts));
}

const GridFunction& PointSet::indicator() const {
    if (!indicator_) {
        auto g = std::make_unique<GridFunction>(q_, d_);
        for (std::size_t idx : indices_) (*g)[idx] = 1.0;
        indicator_ = std::move(g);
    }
    return *indicator_;
}

std::int64_t count_pairs(const PointSet& e, Residue t, PairStrategy strategy) {
    if (t == 0 || t >= e.q()) throw std::invalid_argument("count_pairs: t must lie in F_q*");
    if (strategy == PairStrategy::spectral) {
        return correlate_count(e.indicator(), sphere_indicator({e.q(), e.dim(), t}));
    }
    const auto& pts = e.points();
    std::int64_t count = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (dist_norm(pts[i], pts[j], e.q()) == t) count += 2;
        }
    }
    return count;
}

PairDistanceIndex::PairDistanceIndex(const PointSet& e)
    : n_(e.size()), words_((e.size() + 63) / 64), q_(e.q()) {
    const double bytes = static_cast<double>(q_ - 1) * n_ * words_ * 8.0;
    if (bytes > 2.0e9) {
        throw InstanceTooLarge("PairDistanceIndex: adjacency storage exceeds 2 GB");
    }
    rows_.assign(static_cast<std::size_t>(q_ - 1) * n_ * words_, 0);
    const std::uint32_t d = e.dim();
    std::vector<Residue> coords(n_ * d);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::uint32_t ax = 0; ax < d; ++ax) coords[i * d + ax] = e.points()[i].coords[ax];
    }
    auto set_bit = [&](Residue t, std::size_t i, std::size_t j) {
        rows_[(static_cast<std::size_t>(t - 1) * n_ + i) * words_ + j / 64] |=
            std::uint64_t{1} << (j % 64);
    };
    for (std::size_t i = 0; i < n_; ++i) {
        const Residue* xi = &coords[i * d];
        for (std::size_t j = i + 1; j < n_; ++j) {
            const Residue* xj = &coords[j * d];
            std::uint64_t nrm = 0;
            for (std::uint32_t ax = 0; ax < d; ++ax) {
                const Residue diff = xi[ax] >= xj[ax] ? xi[ax] - xj[ax] : xi[ax] + q_ - xj[ax];
                nrm += static_cast<std::uint64_t>(diff) * diff;
            }
            const auto t = static_cast<Residue>(nrm % q_);
            if (t != 0) {
                set_bit(t, i, j);
                set_bit(t, j, i);
            }
        }
    }
}

std::int64_t count_simplices(const PointSet& e, const SimplexSpec& spec,
                             const CountOptions& opts) {
    return count_simplices(e, spec, opts, nullptr);
}

std::int64_t count_simplices(const PointSet& e, const SimplexSpec& spec,
                             const CountOptions& opts, const PairDistanceIndex* prebuilt) {
    spec.validate(e.q());
    warn_small_dimension(e.dim(), spec.k);
    if (e.size() == 0) return 0;
    if (prebuilt != nullptr && prebuilt->points() != e.size()) {
        throw std::invalid_argument("count_simplices: prebuilt index does not match E");
    }
    const Residue q = e.q();
    const std::uint32_t d = e.dim();
    const auto n = static_cast<double>(e.size());
    const double words = (n + 63.0) / 64.0;

    if (!opts.nondegenerate_only && e.is_full_space()) {
        const auto ngrid = static_cast<std::int64_t>(e.size());
        if (spec.k == 1) {
            return checked_scale(sphere_size({q, d, spec.t(0, 1)}), ngrid);
        }
        if (spec.k == 2) {
            const auto h = sphere_pair_profile(q, d, spec.t(0, 2), spec.t(1, 2));
            const auto norms = grid_norms(q, d);
            std::int64_t trip = 0;
            for (std::size_t i = 0; i < h.size(); ++i) {
                if (norms[i] == spec.t(0, 1)) trip += h[i];
            }
            return checked_scale(trip, ngrid);
        }
        enforce_budget(dfs_projection(n, spec.k, q, words, 1.0, prebuilt == nullptr),
                       opts.work_budget);
        const PairDistanceIndex* idx = prebuilt;
        std::optional<PairDistanceIndex> own;
        if (idx == nullptr) {
            own.emplace(e);
            idx = &*own;
        }
        const auto origin =
            std::find(e.grid_indices().begin(), e.grid_indices().end(), std::size_t{0});
        DfsJob job(*idx, spec, e.points(), nullptr, false);
        job.run_from(static_cast<std::size_t>(origin - e.grid_indices().begin()));
        return checked_scale(job.count, ngrid);
    }

    // complement route wins as soon as Ebar is the smaller side
    const std::size_t nbar = grid_size(q, d) - e.size();
    if (!opts.nondegenerate_only && spec.k == 2 && nbar <= e.size()) {
        const double nb = static_cast<double>(nbar);
        const double grid = static_cast<double>(grid_size(q, d));
        const double proj = 2.0 * nb * nb + 9.0 * d * grid * q + 2.0 * grid +
                            dfs_projection(nb, 2, q, (nb + 63.0) / 64.0, nb, true);
        enforce_budget(proj, opts.work_budget);
        return count_k2_complement(e, spec, opts);
    }

    enforce_budget(dfs_projection(n, spec.k, q, words, n, prebuilt == nullptr),
                   opts.work_budget);
    const PairDistanceIndex* idx = prebuilt;
    std::optional<PairDistanceIndex> own;
    if (idx == nullptr) {
        own.emplace(e);
        idx = &*own;
    }
    return dfs_count_all(e, spec, *idx, opts.nondegenerate_only, opts.threads);
}

bool is_general_position(const std::vector<Point>& points, Residue q) {
    if (points.size() <= 1) return true;
    FieldCtx ctx(q);
    const auto k = static_cast<std::uint32_t>(points.size() - 1);
    const std::uint32_t d = points[0].dim();
    MatF m(k, d);
    for (std::uint32_t r = 0; r < k; ++r) {
        if (points[r + 1].dim() != d) {
            throw std::invalid_argument("is_general_position: dimension mismatch");
        }
        for (std::uint32_t c = 0; c < d; ++c) {
            m.at(r, c) = ctx.sub(points[r + 1].coords[c], points[0].coords[c]);
        }
    }
    return rank(ctx, m) == k;
}

Rational main_term(std::int64_t prev_count, std::int64_t e_size,
                   const std::vector<std::int64_t>& sphere_sizes, Residue q,
                   std::uint32_t d) {
    using boost::multiprecision::cpp_int;
    cpp_int num = cpp_int(prev_count) * e_size;
    cpp_int den = 1;
    const cpp_int qd = boost::multiprecision::pow(cpp_int(q), d);
    for (std::int64_t s : sphere_sizes) {
        num *= s;
        den *= qd;
    }
    return Rational(num, den);
}

CountReport concentration_report(const PointSet& e, const SimplexSpec& spec,
                                 const CountOptions& opts, double c_test) {
    using boost::multiprecision::cpp_int;
    spec.validate(e.q());
    CountReport rep;
    rep.c_test = c_test;
    rep.exact_count = count_simplices(e, spec, opts);

    const auto n = static_cast<std::int64_t>(e.size());
    const std::uint32_t k = spec.k;
    const cpp_int num = boost::multiprecision::pow(cpp_int(n), k + 1);
    const cpp_int den =
        boost::multiprecision::pow(cpp_int(e.q()), k * (k + 1) / 2);
    rep.main_global = Rational(num, den);

    std::int64_t prev = 0;
    if (k == 1) {
        prev = n;
    } else if (k == 2) {
        prev = count_pairs(e, spec.t(0, 1), PairStrategy::spectral);
    } else {
        prev = count_simplices(e, spec.prefix(), opts);
    }
    std::vector<std::int64_t> sizes;
    for (std::uint32_t i = 0; i < k; ++i) {
        sizes.push_back(sphere_size({e.q(), e.dim(), spec.t(i, k)}));
    }
    rep.main_stepwise = main_term(prev, n, sizes, e.q(), e.dim());

    rep.residual = Rational(rep.exact_count) - rep.main_global;
    rep.residual_bound =
        std::pow(static_cast<double>(e.q()),
                 0.5 * k * e.dim() - 0.25 * k * (k + 1)) *
        std::pow(static_cast<double>(n), 0.5 * (k + 1));
    const double residual_abs =
        std::abs(rep.residual.convert_to<double>());
    rep.pass = residual_abs <= c_test * rep.residual_bound;
    return rep;
}

double threshold(Residue q, std::uint32_t d, std::uint32_t k) {
    if (d < 1 || k < 1) throw std::invalid_argument("threshold: need d >= 1, k >= 1");
    const double exp =
        (static_cast<double>(k) / (k + 1.0)) * d + static_cast<double>(k) / 2.0;
    return std::pow(static_cast<double>(q), exp);
}

}  // namespace fqgeom
