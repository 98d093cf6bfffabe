#include "fqgeom/isometry.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

#include "fqgeom/errors.hpp"
#include "fqgeom/rng.hpp"

namespace fqgeom {

namespace {

using Vec = std::vector<Residue>;

Residue norm_of(const FieldCtx& ctx, const Vec& v) { return dot(ctx, v, v); }

std::optional<Residue> sqrt_mod(const FieldCtx& ctx, Residue a) {
    for (Residue s = 0; s < ctx.q(); ++s) {
        if (ctx.mul(s, s) == a) return s;
    }
    return std::nullopt;
}

Vec scaled(const FieldCtx& ctx, const Vec& v, Residue f) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = ctx.mul(v[i], f);
    return out;
}

Vec sub_vec(const FieldCtx& ctx, const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = ctx.sub(a[i], b[i]);
    return out;
}

bool is_zero(const Vec& v) {
    for (Residue c : v) {
        if (c != 0) return false;
    }
    return true;
}

// v - (<v,w>/||w||) w, the component of v orthogonal to non-isotropic w.
Vec project_off(const FieldCtx& ctx, const Vec& v, const Vec& w, Residue w_norm) {
    const Residue f = ctx.mul(dot(ctx, v, w), ctx.inv(w_norm));
    return sub_vec(ctx, v, scaled(ctx, w, f));
}

// Orthogonal basis of non-isotropic vectors for the span of `vecs`,
// assuming the bilinear form is non-degenerate there.  Zero and
// dependent inputs are tolerated (they project away).
std::vector<Vec> orthogonalize(const FieldCtx& ctx, std::vector<Vec> vecs) {
    std::vector<Vec> out;
    while (true) {
        vecs.erase(std::remove_if(vecs.begin(), vecs.end(), is_zero), vecs.end());
        if (vecs.empty()) break;
        std::size_t pick = vecs.size();
        for (std::size_t i = 0; i < vecs.size(); ++i) {
            if (norm_of(ctx, vecs[i]) != 0) { pick = i; break; }
        }
        if (pick == vecs.size()) {
            // all isotropic; some pair has a nonzero product, and their
            // sum has norm 2<b_i, b_j> != 0
            bool fixed = false;
            for (std::size_t i = 0; i < vecs.size() && !fixed; ++i) {
                for (std::size_t j = i + 1; j < vecs.size() && !fixed; ++j) {
                    if (dot(ctx, vecs[i], vecs[j]) != 0) {
                        for (std::size_t c = 0; c < vecs[i].size(); ++c) {
                            vecs[i][c] = ctx.add(vecs[i][c], vecs[j][c]);
                        }
                        pick = i;
                        fixed = true;
                    }
                }
            }
            if (!fixed) {
                throw DegenerateSpan("build_isometry: bilinear form degenerate on complement");
            }
        }
        Vec v = std::move(vecs[pick]);
        vecs.erase(vecs.begin() + static_cast<std::ptrdiff_t>(pick));
        const Residue nv = norm_of(ctx, v);
        for (Vec& b : vecs) b = project_off(ctx, b, v, nv);
        out.push_back(std::move(v));
    }
    return out;
}

// Rebuilds the target orthogonal basis so its diagonal Gram matrix
// equals that of src. Witt cancellation guarantees the two complement
// forms are equivalent, so each step is solvable.
std::vector<Vec> match_bases(const FieldCtx& ctx, const std::vector<Vec>& src,
                             std::vector<Vec> tgt) {
    std::vector<Vec> out;
    for (const Vec& v : src) {
        if (tgt.empty()) {
            throw std::logic_error("build_isometry: complement dimensions disagree");
        }
        const Residue a = norm_of(ctx, v);
        Vec y;
        if (tgt.size() == 1) {
            const Residue b = norm_of(ctx, tgt[0]);
            const auto s = sqrt_mod(ctx, ctx.mul(a, ctx.inv(b)));
            if (!s) {
                throw std::logic_error("build_isometry: complement forms not equivalent");
            }
            y = scaled(ctx, tgt[0], *s);
        } else {
            // a1 x^2 + a2 s^2 = a is always solvable for a != 0
            const Residue a1 = norm_of(ctx, tgt[0]);
            const Residue a2 = norm_of(ctx, tgt[1]);
            bool found = false;
            for (Residue x = 0; x < ctx.q() && !found; ++x) {
                const Residue rem = ctx.sub(a, ctx.mul(a1, ctx.mul(x, x)));
                const auto s = sqrt_mod(ctx, ctx.mul(rem, ctx.inv(a2)));
                if (s) {
                    y = scaled(ctx, tgt[0], x);
                    const Vec y2 = scaled(ctx, tgt[1], *s);
                    for (std::size_t c = 0; c < y.size(); ++c) y[c] = ctx.add(y[c], y2[c]);
                    found = true;
                }
            }
            if (!found) {
                throw std::logic_error("build_isometry: binary form failed to represent");
            }
        }
        const Residue ny = norm_of(ctx, y);  // equals a by construction
        for (Vec& b : tgt) b = project_off(ctx, b, y, ny);
        tgt = orthogonalize(ctx, std::move(tgt));
        out.push_back(std::move(y));
    }
    return out;
}

void validate_vertices(const VertexList& p, Residue q, std::uint32_t d, const char* who) {
    for (const Point& v : p) {
        if (v.dim() != d) {
            throw std::invalid_argument(std::string(who) + ": vertex dimension mismatch");
        }
        for (Residue c : v.coords) {
            if (c >= q) {
                throw std::invalid_argument(std::string(who) +
                                            ": coordinate not reduced mod q");
            }
        }
    }
}

}  // namespace

Point AffineIsometry::apply(const Point& x) const {
    FieldCtx ctx(q);
    Vec img = mat_vec(ctx, matrix, x.coords);
    Point out;
    out.coords.resize(d);
    for (std::uint32_t i = 0; i < d; ++i) {
        out.coords[i] = ctx.add(img[i], translation.coords[i]);
    }
    return out;
}

VertexList AffineIsometry::apply(const VertexList& vs) const {
    VertexList out;
    out.reserve(vs.size());
    for (const Point& v : vs) out.push_back(apply(v));
    return out;
}

bool AffineIsometry::orthogonal() const {
    FieldCtx ctx(q);
    return mat_mul(ctx, transpose(matrix), matrix) == MatF::identity(d);
}

AffineIsometry AffineIsometry::inverse() const {
    FieldCtx ctx(q);
    AffineIsometry inv;
    inv.q = q;
    inv.d = d;
    inv.matrix = transpose(matrix);
    const Vec back = mat_vec(ctx, inv.matrix, translation.coords);
    inv.translation.coords.resize(d);
    for (std::uint32_t i = 0; i < d; ++i) inv.translation.coords[i] = ctx.neg(back[i]);
    return inv;
}

bool check_congruent(const VertexList& p, const VertexList& p2, Residue q) {
    if (p.size() != p2.size()) {
        throw std::invalid_argument("check_congruent: vertex counts differ");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            if (dist_norm(p[i], p[j], q) != dist_norm(p2[i], p2[j], q)) return false;
        }
    }
    return true;
}

AffineIsometry build_isometry(const VertexList& p, const VertexList& p2, Residue q,
                              std::uint32_t d) {
    if (p.empty() || p.size() != p2.size()) {
        throw std::invalid_argument("build_isometry: need equal, nonempty vertex lists");
    }
    FieldCtx ctx(q);
    validate_vertices(p, q, d, "build_isometry");
    validate_vertices(p2, q, d, "build_isometry");
    if (!check_congruent(p, p2, q)) {
        throw NotCongruent("build_isometry: pairwise norms do not match");
    }
    const auto k = static_cast<std::uint32_t>(p.size() - 1);

    MatF u(k, d), u2(k, d);
    for (std::uint32_t i = 0; i < k; ++i) {
        for (std::uint32_t c = 0; c < d; ++c) {
            u.at(i, c) = ctx.sub(p[i + 1].coords[c], p[0].coords[c]);
            u2.at(i, c) = ctx.sub(p2[i + 1].coords[c], p2[0].coords[c]);
        }
    }
    if (rank(ctx, u) != k) {
        throw NotGeneralPosition("build_isometry: difference vectors are dependent");
    }
    if (k > 0) {
        MatF gram(k, k);
        for (std::uint32_t i = 0; i < k; ++i) {
            for (std::uint32_t j = 0; j < k; ++j) {
                Residue acc = 0;
                for (std::uint32_t c = 0; c < d; ++c) {
                    acc = ctx.add(acc, ctx.mul(u.at(i, c), u.at(j, c)));
                }
                gram.at(i, j) = acc;
            }
        }
        if (!inverse(ctx, gram)) {
            throw DegenerateSpan("build_isometry: Gram matrix singular mod q");
        }
    }

    std::vector<Vec> src_rows, tgt_rows;
    for (std::uint32_t i = 0; i < k; ++i) {
        src_rows.emplace_back(u.a.begin() + static_cast<std::ptrdiff_t>(i) * d,
                              u.a.begin() + static_cast<std::ptrdiff_t>(i + 1) * d);
        tgt_rows.emplace_back(u2.a.begin() + static_cast<std::ptrdiff_t>(i) * d,
                              u2.a.begin() + static_cast<std::ptrdiff_t>(i + 1) * d);
    }
    const auto comp_src = orthogonalize(ctx, null_space(ctx, u));
    const auto comp_tgt_raw = orthogonalize(ctx, null_space(ctx, u2));
    if (comp_src.size() != d - k || comp_tgt_raw.size() != d - k) {
        throw DegenerateSpan("build_isometry: complement basis incomplete");
    }
    const auto comp_tgt = match_bases(ctx, comp_src, comp_tgt_raw);

    MatF b(d, d), b2(d, d);
    for (std::uint32_t col = 0; col < d; ++col) {
        const Vec& s = col < k ? src_rows[col] : comp_src[col - k];
        const Vec& t = col < k ? tgt_rows[col] : comp_tgt[col - k];
        for (std::uint32_t r = 0; r < d; ++r) {
            b.at(r, col) = s[r];
            b2.at(r, col) = t[r];
        }
    }
    const auto b_inv = inverse(ctx, b);
    if (!b_inv) {
        throw std::logic_error("build_isometry: basis matrix singular");
    }

    AffineIsometry out;
    out.q = q;
    out.d = d;
    out.matrix = mat_mul(ctx, b2, *b_inv);
    const Vec image0 = mat_vec(ctx, out.matrix, p[0].coords);
    out.translation.coords.resize(d);
    for (std::uint32_t i = 0; i < d; ++i) {
        out.translation.coords[i] = ctx.sub(p2[0].coords[i], image0[i]);
    }
    if (!out.orthogonal()) {
        throw std::logic_error("build_isometry: produced matrix is not orthogonal");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(out.apply(p[i]) == p2[i])) {
            throw std::logic_error("build_isometry: vertex mapping verification failed");
        }
    }
    return out;
}

AffineIsometry random_orthogonal(Residue q, std::uint32_t d, std::uint64_t seed) {
    FieldCtx ctx(q);
    if (d == 0) throw std::invalid_argument("random_orthogonal: d must be positive");
    SplitMix64 rng(seed);
    MatF o = MatF::identity(d);
    for (std::uint32_t r = 0; r < 2 * d; ++r) {
        Vec v(d);
        Residue nv = 0;
        do {
            for (std::uint32_t i = 0; i < d; ++i) {
                v[i] = static_cast<Residue>(rng.next_below(q));
            }
            nv = norm_of(ctx, v);
        } while (nv == 0);
        const Residue f = ctx.mul(2 % q, ctx.inv(nv));
        MatF refl(d, d);
        for (std::uint32_t i = 0; i < d; ++i) {
            for (std::uint32_t j = 0; j < d; ++j) {
                const Residue outer = ctx.mul(f, ctx.mul(v[i], v[j]));
                refl.at(i, j) = ctx.sub(i == j ? 1 : 0, outer);
            }
        }
        o = mat_mul(ctx, refl, o);
    }
    AffineIsometry out;
    out.q = q;
    out.d = d;
    out.matrix = std::move(o);
    out.translation.coords.resize(d);
    for (std::uint32_t i = 0; i < d; ++i) {
        out.translation.coords[i] = static_cast<Residue>(rng.next_below(q));
    }
    if (!out.orthogonal()) {
        throw std::logic_error("random_orthogonal: reflection product not orthogonal");
    }
    return out;
}

}  // namespace fqgeom
