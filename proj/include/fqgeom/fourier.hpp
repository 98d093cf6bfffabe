#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fqgeom/field.hpp"

namespace fqgeom {

/// Number of points of F_q^d, with an overflow/size guard.
/// Throws std::invalid_argument when q^d exceeds the dense-grid budget.
std::size_t grid_size(Residue q, std::uint32_t d);

/// A complex-valued function on F_q^d stored densely in row-major
/// mixed-radix order: ind(x) = sum_i x_i * q^(d-1-i), most significant
/// coordinate first. Every module shares this indexing.
class GridFunction {
public:
    GridFunction(Residue q, std::uint32_t d)
        : q_(q), d_(d), values_(grid_size(q, d)) {}

    Residue q() const noexcept { return q_; }
    std::uint32_t dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return values_.size(); }

    Cplx& operator[](std::size_t i) { return values_[i]; }
    const Cplx& operator[](std::size_t i) const { return values_[i]; }

    std::vector<Cplx>& values() noexcept { return values_; }
    const std::vector<Cplx>& values() const noexcept { return values_; }

    std::size_t index_of(std::span<const Residue> coords) const;
    Point point_at(std::size_t index) const;

    Cplx at(const Point& p) const { return values_[index_of(p.coords)]; }

    bool same_shape(const GridFunction& other) const noexcept {
        return q_ == other.q_ && d_ == other.d_;
    }

private:
    Residue q_;
    std::uint32_t d_;
    std::vector<Cplx> values_;
};

enum class DftStrategy {
    naive,       // double loop over (m, x), O(q^{2d})
    factorized,  // d one-dimensional length-q passes, O(d q^{d+1})
};

/// Forward transform with the q^{-d} normalization:
///   fhat(m) = q^{-d} sum_x f(x) chi(-x.m).
/// Both strategies produce the same values; the factorized path is the
/// performance path and is bit-identical for any thread count (the
/// summation order within each line is fixed).
GridFunction dft(const GridFunction& f, DftStrategy strategy = DftStrategy::factorized,
                 unsigned threads = 1);

/// Inversion: f(x) = sum_m g(m) chi(x.m) (no normalization factor).
GridFunction inverse_dft(const GridFunction& g, unsigned threads = 1);

/// | q^{-d} sum_x f conj(g)  -  sum_m fhat conj(ghat) |.
double plancherel_gap(const GridFunction& f, const GridFunction& g);

/// Exact integer sum_{x0,x1} E(x0) E(x1) S(x0-x1) evaluated through the
/// spectral identity q^{2d} sum_m |Ehat(m)|^2 Shat(m) and rounded.
/// Throws ResidualTooLarge if the rounding residual exceeds 1e-3.
std::int64_t correlate_count(const GridFunction& e_ind, const GridFunction& s_ind);

}  // namespace fqgeom
