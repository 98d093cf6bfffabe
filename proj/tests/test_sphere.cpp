#include <doctest.h>

#include <fqgeom/sphere.hpp>

#include <cmath>
#include <set>
#include <stdexcept>

using namespace fqgeom;

TEST_CASE("unit sphere of F_3^2 is the four axis points") {
    GridFunction ind = sphere_indicator({3, 2, 1});
    std::set<std::size_t> on;
    for (std::size_t i = 0; i < ind.size(); ++i)
        if (ind[i].real() == 1.0) on.insert(i);
    // (0,1), (0,2), (1,0), (2,0) in row-major index
    CHECK(on == std::set<std::size_t>{1, 2, 3, 6});
    CHECK(sphere_size({3, 2, 1}) == 4);
}

TEST_CASE("sphere sizes for the worked grids") {
    CHECK(sphere_size({5, 2, 1}) == 4);
    CHECK(sphere_size({3, 3, 1}) == 6);  // exactly one nonzero coordinate
    CHECK(sphere_size({5, 1, 4}) == 2);  // {2, 3}
    CHECK(sphere_size({7, 2, 3}) == 8);
}

TEST_CASE("d=1 sphere is the pair of square roots") {
    GridFunction ind = sphere_indicator({5, 1, 4});
    CHECK(ind[2].real() == 1.0);
    CHECK(ind[3].real() == 1.0);
    CHECK(ind[0].real() == 0.0);
    CHECK(ind[1].real() == 0.0);
    CHECK(ind[4].real() == 0.0);
    CHECK(sphere_size({5, 1, 1}) == 2);   // 1, 4
    GridFunction none = sphere_indicator({5, 1, 2});  // 2 is a nonsquare
    for (std::size_t i = 0; i < 5; ++i) CHECK(none[i].real() == 0.0);
}

TEST_CASE("indicator counts match size over many spheres") {
    for (Residue q : {3u, 5u, 7u, 11u}) {
        for (std::uint32_t d : {2u, 3u}) {
            for (Residue t = 1; t < q; ++t) {
                GridFunction ind = sphere_indicator({q, d, t});
                std::int64_t n = 0;
                for (std::size_t i = 0; i < ind.size(); ++i)
                    n += ind[i].real() == 1.0;
                CHECK(n == sphere_size({q, d, t}));
            }
        }
    }
}

TEST_CASE("isotropic cone t=0 is enumerable but size-guarded calls reject it") {
    SphereSpec cone_spec{5, 2, 0};
    GridFunction cone = sphere_indicator(cone_spec);
    std::int64_t n = 0;
    for (std::size_t i = 0; i < cone.size(); ++i) n += cone[i].real() == 1.0;
    CHECK(n == 9);  // origin plus the two isotropic lines minus overlap
    Point zero({0, 0});
    CHECK_THROWS_AS(sphere_size(cone_spec), std::invalid_argument);
    CHECK_THROWS_AS(sphere_ft_closed(cone_spec, zero), std::invalid_argument);
    CHECK_THROWS_AS(sphere_decay_scan(cone_spec), std::invalid_argument);
}

TEST_CASE("worked transform values on F_3^2, t=1") {
    CHECK(std::abs(sphere_ft_closed({3, 2, 1}, Point({1, 0})) -
                   Cplx(1.0 / 9.0, 0.0)) < 1e-12);
    CHECK(std::abs(sphere_ft_closed({3, 2, 1}, Point({0, 0})) -
                   Cplx(4.0 / 9.0, 0.0)) < 1e-12);
}

TEST_CASE("closed form equals the transform of the indicator") {
    for (Residue q : {3u, 5u, 7u}) {
        for (std::uint32_t d : {2u, 3u}) {
            for (Residue t = 1; t < q; ++t) {
                SphereSpec spec{q, d, t};
                GridFunction hat = dft(sphere_indicator(spec));
                for (std::size_t i = 0; i < hat.size(); ++i)
                    CHECK(std::abs(hat[i] - sphere_ft_closed(spec, hat.point_at(i))) <
                          1e-9);
            }
        }
    }
}

TEST_CASE("transform value depends on m only through its norm") {
    SphereSpec spec{7, 3, 2};
    GridFunction probe(7, 3);
    std::vector<Cplx> by_norm(7, Cplx(0, 0));
    std::vector<bool> seen(7, false);
    for (std::size_t i = 1; i < probe.size(); ++i) {
        Point m = probe.point_at(i);
        Residue nm = norm(m, 7);
        Cplx v = sphere_ft_closed(spec, m);
        if (!seen[nm]) {
            by_norm[nm] = v;
            seen[nm] = true;
        } else {
            CHECK(std::abs(v - by_norm[nm]) < 1e-10);
        }
    }
}

TEST_CASE("spectral mass equals q^{-d} |S_t|") {
    for (Residue q : {3u, 5u, 7u}) {
        for (std::uint32_t d : {2u, 3u}) {
            SphereSpec spec{q, d, 1};
            GridFunction ind = sphere_indicator(spec);
            GridFunction hat = dft(ind);
            double mass = 0;
            for (std::size_t i = 0; i < hat.size(); ++i) mass += std::norm(hat[i]);
            double expected = static_cast<double>(sphere_size(spec)) /
                              static_cast<double>(ind.size());
            CHECK(std::abs(mass - expected) < 1e-10);
        }
    }
}

TEST_CASE("decay scan on F_3^2, t=1") {
    DecayReport r = sphere_decay_scan({3, 2, 1});
    CHECK(r.frequencies == 8);
    CHECK(r.pass);
    CHECK(r.max_normalized == doctest::Approx(1.1547005384).epsilon(1e-9));
}

TEST_CASE("decay bound holds on a grid sweep") {
    for (Residue q : {3u, 5u, 7u, 11u, 13u}) {
        for (std::uint32_t d : {2u, 3u, 4u}) {
            for (Residue t = 1; t < q; ++t) {
                DecayReport r = sphere_decay_scan({q, d, t});
                CHECK(r.pass);
                CHECK(r.max_normalized <= 2.0 + 1e-6);
                CHECK(r.frequencies == grid_size(q, d) - 1);
            }
        }
    }
}

TEST_CASE("decay scan is thread-count independent") {
    SphereSpec spec{7, 3, 4};
    DecayReport a = sphere_decay_scan(spec, 1);
    DecayReport b = sphere_decay_scan(spec, 2);
    DecayReport c = sphere_decay_scan(spec, 8);
    CHECK(a.max_normalized == b.max_normalized);
    CHECK(a.max_normalized == c.max_normalized);
}

TEST_CASE("sphere sizes sit inside the cardinality window") {
    for (Residue q : {3u, 5u, 7u, 11u, 13u, 17u, 19u}) {
        for (std::uint32_t d : {2u, 3u, 4u}) {
            for (Residue t = 1; t < q; ++t) {
                double n = static_cast<double>(sphere_size({q, d, t}));
                double main = std::pow(static_cast<double>(q), d - 1.0);
                double eps = n / main - 1.0;
                CHECK(std::abs(eps) <=
                      2.0 * std::pow(static_cast<double>(q), -(d - 1.0) / 2.0));
            }
        }
    }
}

TEST_CASE("invalid spheres are rejected") {
    SphereSpec not_prime{4, 2, 1};
    SphereSpec no_dims{5, 0, 1};
    SphereSpec unit{5, 2, 1};
    Point wrong_dim({1, 2, 3});
    CHECK_THROWS_AS(sphere_indicator(not_prime), std::invalid_argument);
    CHECK_THROWS_AS(sphere_indicator(no_dims), std::invalid_argument);
    CHECK_THROWS_AS(sphere_ft_closed(unit, wrong_dim), std::invalid_argument);
}
