#include <doctest.h>

#include <fqgeom/linalg.hpp>
#include <fqgeom/rng.hpp>

using namespace fqgeom;

namespace {

MatF random_mat(const FieldCtx& F, std::uint32_t r, std::uint32_t c,
                std::uint64_t seed) {
    MatF m(r, c);
    SplitMix64 rng(seed);
    for (std::uint32_t i = 0; i < r; ++i)
        for (std::uint32_t j = 0; j < c; ++j)
            m.at(i, j) = static_cast<Residue>(rng.next_below(F.q()));
    return m;
}

bool is_zero_vec(const std::vector<Residue>& v) {
    for (Residue x : v)
        if (x) return false;
    return true;
}

}  // namespace

TEST_CASE("identity, transpose, multiply") {
    FieldCtx F(7);
    MatF id = MatF::identity(3);
    MatF m = random_mat(F, 3, 3, 11);
    CHECK(mat_mul(F, id, m) == m);
    CHECK(mat_mul(F, m, id) == m);
    CHECK(transpose(transpose(m)) == m);

    MatF a(2, 3), b(3, 2);
    a.at(0, 0) = 1; a.at(0, 1) = 2; a.at(0, 2) = 3;
    a.at(1, 0) = 4; a.at(1, 1) = 5; a.at(1, 2) = 6;
    b.at(0, 0) = 1; b.at(1, 0) = 2; b.at(2, 0) = 3;
    b.at(0, 1) = 4; b.at(1, 1) = 5; b.at(2, 1) = 6;
    MatF p = mat_mul(F, a, b);
    CHECK(p.rows == 2);
    CHECK(p.cols == 2);
    CHECK(p.at(0, 0) == 0);  // 14 mod 7
    CHECK(p.at(0, 1) == 4);  // 32 mod 7
    CHECK(p.at(1, 0) == 4);  // 32 mod 7
    CHECK(p.at(1, 1) == 0);  // 77 mod 7
}

TEST_CASE("mat_vec is matrix-vector product mod q") {
    FieldCtx F(5);
    MatF m(2, 3);
    m.at(0, 0) = 1; m.at(0, 1) = 2; m.at(0, 2) = 3;
    m.at(1, 0) = 4; m.at(1, 1) = 0; m.at(1, 2) = 1;
    std::vector<Residue> v{1, 1, 2};
    auto w = mat_vec(F, m, v);
    CHECK(w == std::vector<Residue>{4, 1});  // (9, 6) mod 5
}

TEST_CASE("rank") {
    FieldCtx F(5);
    CHECK(rank(F, MatF::identity(4)) == 4);
    MatF z(3, 3);
    CHECK(rank(F, z) == 0);

    MatF m(3, 3);  // row2 = row0 + row1
    m.at(0, 0) = 1; m.at(0, 1) = 2; m.at(0, 2) = 3;
    m.at(1, 0) = 2; m.at(1, 1) = 0; m.at(1, 2) = 1;
    m.at(2, 0) = 3; m.at(2, 1) = 2; m.at(2, 2) = 4;
    CHECK(rank(F, m) == 2);

    MatF tall(4, 2);
    tall.at(0, 0) = 1;
    tall.at(1, 1) = 1;
    tall.at(2, 0) = 2; tall.at(2, 1) = 3;
    CHECK(rank(F, tall) == 2);
}

TEST_CASE("inverse round-trips and rejects singular input") {
    FieldCtx F(11);
    for (std::uint64_t s = 0; s < 40; ++s) {
        MatF m = random_mat(F, 4, 4, derive_seed(97, s));
        auto inv = inverse(F, m);
        if (rank(F, m) < 4) {
            CHECK(!inv.has_value());
            continue;
        }
        REQUIRE(inv.has_value());
        CHECK(mat_mul(F, m, *inv) == MatF::identity(4));
        CHECK(mat_mul(F, *inv, m) == MatF::identity(4));
    }

    MatF sing(2, 2);
    sing.at(0, 0) = 1; sing.at(0, 1) = 2;
    sing.at(1, 0) = 2; sing.at(1, 1) = 4;
    CHECK(!inverse(F, sing).has_value());
}

TEST_CASE("null space vectors are independent solutions") {
    FieldCtx F(7);
    for (std::uint64_t s = 0; s < 30; ++s) {
        std::uint32_t r = 1 + s % 3, c = 3 + s % 3;
        MatF m = random_mat(F, r, c, derive_seed(101, s));
        auto basis = null_space(F, m);
        CHECK(basis.size() == c - rank(F, m));
        for (const auto& v : basis) {
            CHECK(!is_zero_vec(v));
            for (std::uint32_t i = 0; i < r; ++i) {
                Residue acc = 0;
                for (std::uint32_t j = 0; j < c; ++j)
                    acc = F.add(acc, F.mul(m.at(i, j), v[j]));
                CHECK(acc == 0);
            }
        }
        if (basis.size() > 1) {  // independence via rank of stacked basis
            MatF stacked(static_cast<std::uint32_t>(basis.size()), c);
            for (std::uint32_t i = 0; i < basis.size(); ++i)
                for (std::uint32_t j = 0; j < c; ++j)
                    stacked.at(i, j) = basis[i][j];
            CHECK(rank(F, stacked) == basis.size());
        }
    }
}

TEST_CASE("null space of identity is empty, of zero map is everything") {
    FieldCtx F(3);
    CHECK(null_space(F, MatF::identity(3)).empty());
    MatF z(2, 3);
    CHECK(null_space(F, z).size() == 3);
}

TEST_CASE("dot is the symmetric bilinear form") {
    FieldCtx F(5);
    std::vector<Residue> u{1, 2, 3}, v{4, 0, 2};
    CHECK(dot(F, u, v) == 0);  // 4 + 0 + 6 = 10
    CHECK(dot(F, u, u) == 4);  // 1 + 4 + 9 = 14
    CHECK(dot(F, u, v) == dot(F, v, u));
}
