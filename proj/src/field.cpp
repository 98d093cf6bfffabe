#include "fqgeom/field.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fqgeom {

bool is_odd_prime(std::uint64_t n) {
    if (n < 3 || n % 2 == 0) return false;
    for (std::uint64_t p = 3; p * p <= n; p += 2) {
        if (n % p == 0) return false;
    }
    return true;
}

FieldCtx::FieldCtx(Residue q) : q_(q) {
    if (!is_odd_prime(q)) {
        throw std::invalid_argument("FieldCtx: q must be an odd prime >= 3, got " +
                                    std::to_string(q));
    }
    char_table_.resize(q);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(q);
    for (Residue a = 0; a < q; ++a) {
        char_table_[a] = std::polar(1.0, step * static_cast<double>(a));
    }
    if (q <= (1u << 16)) {
        // Linear-time table: inv[a] = -(q/a) * inv[q mod a]. Independent of
        // the Fermat path, which the tests compare against.
        inv_table_.assign(q, 0);
        inv_table_[1] = 1;
        for (Residue a = 2; a < q; ++a) {
            const Residue m = q % a;
            inv_table_[a] =
                static_cast<Residue>((static_cast<std::uint64_t>(q - q / a) *
                                      inv_table_[m]) % q);
        }
    }
}

Residue FieldCtx::pow(Residue base, std::uint64_t exp) const {
    std::uint64_t result = 1;
    std::uint64_t b = base % q_;
    while (exp > 0) {
        if (exp & 1) result = (result * b) % q_;
        b = (b * b) % q_;
        exp >>= 1;
    }
    return static_cast<Residue>(result);
}

int FieldCtx::legendre(Residue a) const {
    if (a == 0) return 0;
    const Residue e = pow(a, (q_ - 1) / 2);
    return e == 1 ? 1 : -1;  // e is 1 or q-1 for prime q
}

Residue FieldCtx::inv_fermat(Residue a) const {
    if (a == 0) throw std::invalid_argument("inv: 0 has no inverse");
    return pow(a, q_ - 2);
}

Residue FieldCtx::inv(Residue a) const {
    if (a == 0) throw std::invalid_argument("inv: 0 has no inverse");
    if (!inv_table_.empty()) return inv_table_[a];
    return inv_fermat(a);
}

Residue norm(const Point& p, Residue q) {
    std::uint64_t acc = 0;
    for (Residue c : p.coords) {
        acc += static_cast<std::uint64_t>(c) * c % q;
    }
    return static_cast<Residue>(acc % q);
}

Residue dist_norm(const Point& x, const Point& y, Residue q) {
    assert(x.dim() == y.dim());
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        const Residue d = x.coords[i] >= y.coords[i]
                              ? x.coords[i] - y.coords[i]
                              : x.coords[i] + q - y.coords[i];
        acc += static_cast<std::uint64_t>(d) * d % q;
    }
    return static_cast<Residue>(acc % q);
}

Point point_add(const Point& x, const Point& y, Residue q) {
    assert(x.dim() == y.dim());
    Point r = x;
    for (std::size_t i = 0; i < r.coords.size(); ++i) {
        r.coords[i] += y.coords[i];
        if (r.coords[i] >= q) r.coords[i] -= q;
    }
    return r;
}

Point point_sub(const Point& x, const Point& y, Residue q) {
    assert(x.dim() == y.dim());
    Point r = x;
    for (std::size_t i = 0; i < r.coords.size(); ++i) {
        r.coords[i] = r.coords[i] >= y.coords[i] ? r.coords[i] - y.coords[i]
                                                 : r.coords[i] + q - y.coords[i];
    }
    return r;
}

}  // namespace fqgeom
