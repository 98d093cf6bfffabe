#include "fqgeom/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace fqgeom {

MatF MatF::identity(std::uint32_t n) {
    MatF m(n, n);
    for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::uint32_t rank(const FieldCtx& ctx, MatF m) {
    std::uint32_t r = 0;
    for (std::uint32_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::uint32_t pivot = r;
        while (pivot < m.rows && m.at(pivot, c) == 0) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != r) {
            for (std::uint32_t j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(r, j));
        }
        const Residue inv_p = ctx.inv(m.at(r, c));
        for (std::uint32_t j = c; j < m.cols; ++j) m.at(r, j) = ctx.mul(m.at(r, j), inv_p);
        for (std::uint32_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            const Residue f = m.at(i, c);
            for (std::uint32_t j = c; j < m.cols; ++j) {
                m.at(i, j) = ctx.sub(m.at(i, j), ctx.mul(f, m.at(r, j)));
            }
        }
        ++r;
    }
    return r;
}

MatF mat_mul(const FieldCtx& ctx, const MatF& a, const MatF& b) {
    if (a.cols != b.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    MatF out(a.rows, b.cols);
    for (std::uint32_t i = 0; i < a.rows; ++i) {
        for (std::uint32_t k = 0; k < a.cols; ++k) {
            const Residue f = a.at(i, k);
            if (f == 0) continue;
            for (std::uint32_t j = 0; j < b.cols; ++j) {
                out.at(i, j) = ctx.add(out.at(i, j), ctx.mul(f, b.at(k, j)));
            }
        }
    }
    return out;
}

std::vector<Residue> mat_vec(const FieldCtx& ctx, const MatF& a, const std::vector<Residue>& v) {
    if (a.cols != v.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    std::vector<Residue> out(a.rows, 0);
    for (std::uint32_t i = 0; i < a.rows; ++i) {
        Residue acc = 0;
        for (std::uint32_t j = 0; j < a.cols; ++j) acc = ctx.add(acc, ctx.mul(a.at(i, j), v[j]));
        out[i] = acc;
    }
    return out;
}

MatF transpose(const MatF& m) {
    MatF out(m.cols, m.rows);
    for (std::uint32_t i = 0; i < m.rows; ++i) {
        for (std::uint32_t j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    }
    return out;
}

std::optional<MatF> inverse(const FieldCtx& ctx, const MatF& m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse: matrix not square");
    const std::uint32_t n = m.rows;
    MatF work = m;
    MatF inv = MatF::identity(n);
    for (std::uint32_t c = 0; c < n; ++c) {
        std::uint32_t pivot = c;
        while (pivot < n && work.at(pivot, c) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != c) {
            for (std::uint32_t j = 0; j < n; ++j) {
                std::swap(work.at(pivot, j), work.at(c, j));
                std::swap(inv.at(pivot, j), inv.at(c, j));
            }
        }
        const Residue inv_p = ctx.inv(work.at(c, c));
        for (std::uint32_t j = 0; j < n; ++j) {
            work.at(c, j) = ctx.mul(work.at(c, j), inv_p);
            inv.at(c, j) = ctx.mul(inv.at(c, j), inv_p);
        }
        for (std::uint32_t i = 0; i < n; ++i) {
            if (i == c || work.at(i, c) == 0) continue;
            const Residue f = work.at(i, c);
            for (std::uint32_t j = 0; j < n; ++j) {
                work.at(i, j) = ctx.sub(work.at(i, j), ctx.mul(f, work.at(c, j)));
                inv.at(i, j) = ctx.sub(inv.at(i, j), ctx.mul(f, inv.at(c, j)));
            }
        }
    }
    return inv;
}

std::vector<std::vector<Residue>> null_space(const FieldCtx& ctx, const MatF& m) {
    // reduced row echelon form, then one basis vector per free column
    MatF r = m;
    std::vector<std::uint32_t> pivot_col;
    std::uint32_t row = 0;
    for (std::uint32_t c = 0; c < r.cols && row < r.rows; ++c) {
        std::uint32_t p = row;
        while (p < r.rows && r.at(p, c) == 0) ++p;
        if (p == r.rows) continue;
        if (p != row) {
            for (std::uint32_t j = 0; j < r.cols; ++j) std::swap(r.at(p, j), r.at(row, j));
        }
        const Residue inv_p = ctx.inv(r.at(row, c));
        for (std::uint32_t j = 0; j < r.cols; ++j) r.at(row, j) = ctx.mul(r.at(row, j), inv_p);
        for (std::uint32_t i = 0; i < r.rows; ++i) {
            if (i == row || r.at(i, c) == 0) continue;
            const Residue f = r.at(i, c);
            for (std::uint32_t j = 0; j < r.cols; ++j) {
                r.at(i, j) = ctx.sub(r.at(i, j), ctx.mul(f, r.at(row, j)));
            }
        }
        pivot_col.push_back(c);
        ++row;
    }
    std::vector<bool> is_pivot(r.cols, false);
    for (std::uint32_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Residue>> basis;
    for (std::uint32_t free = 0; free < r.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Residue> v(r.cols, 0);
        v[free] = 1;
        for (std::uint32_t i = 0; i < pivot_col.size(); ++i) {
            v[pivot_col[i]] = ctx.neg(r.at(i, free));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

Residue dot(const FieldCtx& ctx, const std::vector<Residue>& u, const std::vector<Residue>& v) {
    assert(u.size() == v.size());
    Residue acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) acc = ctx.add(acc, ctx.mul(u[i], v[i]));
    return acc;
}

}  // namespace fqgeom
