#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fqgeom/field.hpp"

namespace fqgeom {

/// Dense row-major matrix of reduced residues.
struct MatF {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<Residue> a;

    MatF() = default;
    MatF(std::uint32_t r, std::uint32_t c) : rows(r), cols(c), a(std::size_t{r} * c, 0) {}

    Residue& at(std::uint32_t r, std::uint32_t c) { return a[std::size_t{r} * cols + c]; }
    Residue at(std::uint32_t r, std::uint32_t c) const { return a[std::size_t{r} * cols + c]; }

    static MatF identity(std::uint32_t n);
    bool operator==(const MatF&) const = default;
};

/// Rank over F_q by Gaussian elimination. Destroys nothing (works on a copy).
std::uint32_t rank(const FieldCtx& ctx, MatF m);

MatF mat_mul(const FieldCtx& ctx, const MatF& a, const MatF& b);
std::vector<Residue> mat_vec(const FieldCtx& ctx, const MatF& a, const std::vector<Residue>& v);
MatF transpose(const MatF& m);

/// Gauss-Jordan inverse; nullopt when singular.
std::optional<MatF> inverse(const FieldCtx& ctx, const MatF& m);

/// Basis of { v : m v = 0 }, one vector per row of the result.
std::vector<std::vector<Residue>> null_space(const FieldCtx& ctx, const MatF& m);

/// The bilinear form sum_i u_i v_i mod q attached to the norm.
Residue dot(const FieldCtx& ctx, const std::vector<Residue>& u, const std::vector<Residue>& v);

}  // namespace fqgeom
