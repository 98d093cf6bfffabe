#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <vector>

#include "fqgeom/field.hpp"
#include "fqgeom/fourier.hpp"

namespace fqgeom {

using Rational = boost::multiprecision::cpp_rational;

/// Side-length set l_k: the C(k+1,2) prescribed nonzero distances
/// t_{i,j}, 0 <= i < j <= k. Entries are stored grouped by the larger
/// vertex, t01, t02, t12, t03, ..., so l_{k-1} is a prefix of l_k.
struct SimplexSpec {
    std::uint32_t k = 0;
    std::vector<Residue> distances;

    static std::size_t t_index(std::uint32_t i, std::uint32_t j) {
        return static_cast<std::size_t>(j) * (j - 1) / 2 + i;
    }
    Residue t(std::uint32_t i, std::uint32_t j) const { return distances[t_index(i, j)]; }

    /// Entries required: k(k+1)/2.
    std::size_t expected_entries() const {
        return static_cast<std::size_t>(k) * (k + 1) / 2;
    }

    /// The order-(k-1) prefix (drops the distances touching vertex k).
    SimplexSpec prefix() const;

    /// Checks entry count and that every t_{i,j} lies in F_q*.
    void validate(Residue q) const;
};

/// A subset E of F_q^d with distinct points; the indicator grid is
/// materialized on first use.
class PointSet {
public:
    PointSet(Residue q, std::uint32_t d, std::vector<Point> pts);
    static PointSet full_space(Residue q, std::uint32_t d);
    static PointSet from_indices(Residue q, std::uint32_t d,
                                 const std::vector<std::size_t>& grid_indices);

    Residue q() const noexcept { return q_; }
    std::uint32_t dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool is_full_space() const { return points_.size() == grid_size(q_, d_); }

    const std::vector<Point>& points() const noexcept { return points_; }
    const std::vector<std::size_t>& grid_indices() const noexcept { return indices_; }
    const GridFunction& indicator() const;

private:
    Residue q_ = 0;
    std::uint32_t d_ = 0;
    std::vector<Point> points_;
    std::vector<std::size_t> indices_;
    mutable std::unique_ptr<GridFunction> indicator_;
};

enum class PairStrategy { direct, spectral };

/// |{(x0, x1) in E x E : ||x0 - x1|| = t}|, t != 0. The direct strategy
/// is the O(|E|^2) loop; spectral goes through correlate_count.
std::int64_t count_pairs(const PointSet& e, Residue t, PairStrategy strategy);

/// Per-distance adjacency bitsets over the points of one set:
/// row(t, i) has bit j set iff ||x_i - x_j|| = t. Reusable across
/// different side-length sets on the same E.
class PairDistanceIndex {
public:
    explicit PairDistanceIndex(const PointSet& e);

    std::size_t points() const noexcept { return n_; }
    std::size_t words_per_row() const noexcept { return words_; }
    const std::uint64_t* row(Residue t, std::size_t i) const {
        return rows_.data() + (static_cast<std::size_t>(t - 1) * n_ + i) * words_;
    }

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    Residue q_ = 0;
    std::vector<std::uint64_t> rows_;
};

struct CountOptions {
    bool nondegenerate_only = false;
    double work_budget = 1e8;  // elementary word-op estimate
    unsigned threads = 1;
};

/// Exact |T_{l_k}|: ordered (k+1)-tuples from E realizing every
/// prescribed distance. Depth-first extension over adjacency bitsets;
/// two exact shortcuts (full-space translation reduction, complement
/// inclusion-exclusion for dense k=2 sets) kick in when cheaper and are
/// cross-checked against the DFS in the test suite.
std::int64_t count_simplices(const PointSet& e, const SimplexSpec& spec,
                             const CountOptions& opts = {});
std::int64_t count_simplices(const PointSet& e, const SimplexSpec& spec,
                             const CountOptions& opts, const PairDistanceIndex* prebuilt);

/// Affine general position: the k difference vectors x_i - x_0 have
/// rank k over F_q.
bool is_general_position(const std::vector<Point>& points, Residue q);

/// |T_{l_{k-1}}| * |E| * prod_i (|S_{t_{i,k}}| / q^d) as an exact rational.
Rational main_term(std::int64_t prev_count, std::int64_t e_size,
                   const std::vector<std::int64_t>& sphere_sizes, Residue q,
                   std::uint32_t d);

struct CountReport {
    std::int64_t exact_count = 0;
    Rational main_global;     // |E|^{k+1} q^{-C(k+1,2)}
    Rational main_stepwise;   // recursion step form via main_term
    Rational residual;        // exact - main_global
    double residual_bound = 0.0;
    double c_test = 4.0;
    bool pass = false;        // |residual| <= c_test * residual_bound
};

CountReport concentration_report(const PointSet& e, const SimplexSpec& spec,
                                 const CountOptions& opts = {}, double c_test = 4.0);

/// The reference threshold q^{(k/(k+1)) d + k/2} (C = 1).
double threshold(Residue q, std::uint32_t d, std::uint32_t k);

}  // namespace fqgeom
