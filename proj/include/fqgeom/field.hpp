#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace fqgeom {

using Residue = std::uint32_t;  // canonical representative in [0, q)
using Cplx = std::complex<double>;

bool is_odd_prime(std::uint64_t n);

/// Arithmetic context for the prime field F_q, q an odd prime.
///
/// Holds the modulus, the additive character table chi(a) = exp(2*pi*i*a/q),
/// and (for q <= 2^16) a precomputed inverse table. Immutable after
/// construction; all member functions are const and thread-safe.
class FieldCtx {
public:
    /// Validates q by trial division; throws std::invalid_argument unless
    /// q is an odd prime >= 3.
    explicit FieldCtx(Residue q);

    Residue q() const noexcept { return q_; }

    /// chi(a) = exp(2*pi*i*a/q). Requires 0 <= a < q.
    Cplx add_char(Residue a) const { return char_table_[a]; }

    /// Legendre symbol via Euler's criterion a^{(q-1)/2} mod q.
    /// Returns 0 iff a = 0, +1 on nonzero squares, -1 otherwise.
    int legendre(Residue a) const;

    /// Multiplicative inverse of a in F_q*. Table lookup when q <= 2^16,
    /// Fermat a^{q-2} otherwise; both paths produce identical results.
    /// Throws std::invalid_argument on a = 0.
    Residue inv(Residue a) const;

    /// Fermat-only inversion path, exposed so tests can compare it against
    /// the table path.
    Residue inv_fermat(Residue a) const;

    bool has_inv_table() const noexcept { return !inv_table_.empty(); }

    Residue reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(q_);
        if (r < 0) r += q_;
        return static_cast<Residue>(r);
    }

    Residue add(Residue a, Residue b) const {
        Residue s = a + b;
        return s >= q_ ? s - q_ : s;
    }

    Residue sub(Residue a, Residue b) const {
        return a >= b ? a - b : a + q_ - b;
    }

    Residue neg(Residue a) const { return a == 0 ? 0 : q_ - a; }

    Residue mul(Residue a, Residue b) const {
        return static_cast<Residue>(
            (static_cast<std::uint64_t>(a) * b) % q_);
    }

    Residue pow(Residue base, std::uint64_t exp) const;

private:
    Residue q_;
    std::vector<Cplx> char_table_;
    std::vector<Residue> inv_table_;  // nonempty iff q <= 2^16
};

/// A point of F_q^d; coordinates are canonical representatives in [0, q).
struct Point {
    std::vector<Residue> coords;

    Point() = default;
    explicit Point(std::vector<Residue> c) : coords(std::move(c)) {}

    std::size_t dim() const noexcept { return coords.size(); }
    bool operator==(const Point&) const = default;
};

/// ||x|| = x_1^2 + ... + x_d^2 mod q.
Residue norm(const Point& p, Residue q);

/// ||x - y|| mod q; the "distance" between x and y.
Residue dist_norm(const Point& x, const Point& y, Residue q);

Point point_add(const Point& x, const Point& y, Residue q);
Point point_sub(const Point& x, const Point& y, Residue q);

}  // namespace fqgeom
