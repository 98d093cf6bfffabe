#include <doctest.h>

#include <fqgeom/errors.hpp>
#include <fqgeom/harness.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace fqgeom;

namespace {

int count_rows(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    int rows = 0;
    while (std::getline(in, line))  // data rows start with the q value
        if (!line.empty() && line[0] >= '0' && line[0] <= '9') ++rows;
    return rows;
}

}  // namespace

TEST_CASE("sample_set is deterministic and density-monotone in expectation") {
    PointSet a = sample_set(5, 3, 0.5, 42);
    PointSet b = sample_set(5, 3, 0.5, 42);
    CHECK(a.grid_indices() == b.grid_indices());
    PointSet c = sample_set(5, 3, 0.5, 43);
    CHECK(a.grid_indices() != c.grid_indices());

    CHECK(sample_set(5, 3, 1.0, 7).size() == 125);
    CHECK_THROWS_AS(sample_set(5, 3, 0.0, 7), std::invalid_argument);
    CHECK_THROWS_AS(sample_set(5, 3, 1.5, 7), std::invalid_argument);

    // mean occupancy over many seeds concentrates near the density
    std::int64_t total = 0;
    for (std::uint64_t s = 0; s < 400; ++s)
        total += static_cast<std::int64_t>(sample_set(5, 3, 0.5, s).size());
    double mean = static_cast<double>(total) / (400.0 * 125.0);
    CHECK(mean > 0.47);
    CHECK(mean < 0.53);
}

TEST_CASE("raising the density only adds points") {
    // one uniform draw per index: the low-density set is a subset
    PointSet lo = sample_set(7, 2, 0.3, 99);
    PointSet hi = sample_set(7, 2, 0.7, 99);
    std::size_t j = 0;
    for (std::size_t idx : lo.grid_indices()) {
        while (j < hi.grid_indices().size() && hi.grid_indices()[j] < idx) ++j;
        REQUIRE(j < hi.grid_indices().size());
        CHECK(hi.grid_indices()[j] == idx);
    }
}

TEST_CASE("point set files round-trip") {
    PointSet e = sample_set(7, 3, 0.4, 1234);
    std::ostringstream out;
    write_point_set(out, e);
    std::istringstream in(out.str());
    PointSet back = read_point_set(in);
    CHECK(back.q() == 7);
    CHECK(back.dim() == 3);
    CHECK(back.grid_indices() == e.grid_indices());
}

TEST_CASE("point set parser accepts comments and blank lines") {
    std::istringstream in(
        "# sample configuration\n"
        "\n"
        "5 2\n"
        "0 1  # axis point\n"
        "3 4\n");
    PointSet e = read_point_set(in);
    CHECK(e.size() == 2);
    CHECK(e.points()[0] == Point({0, 1}));
    CHECK(e.points()[1] == Point({3, 4}));
}

TEST_CASE("point set parser reports the offending line") {
    auto expect_parse_error = [](const std::string& text, const std::string& frag) {
        std::istringstream in(text);
        try {
            read_point_set(in);
            FAIL_CHECK("expected ParseError for: " << text);
        } catch (const DomainError& e) {
            CHECK(std::string(e.kind()) == "ParseError");
            CHECK(std::string(e.what()).find(frag) != std::string::npos);
        }
    };
    expect_parse_error("5 2\n0 1\n0 x\n", "line 3");
    expect_parse_error("5 2\n0 1 2\n", "line 2");     // wrong arity
    expect_parse_error("5 2\n0 7\n", "line 2");       // out of range
    expect_parse_error("5 2\n0 1\n0 1\n", "line 3");  // duplicate
    expect_parse_error("4 2\n0 1\n", "line 1");       // q not prime
    expect_parse_error("", "header");
}

TEST_CASE("experiment CSV shape and determinism") {
    ExperimentConfig cfg;
    cfg.q = 5;
    cfg.d = 2;
    cfg.k = 2;
    cfg.sweep = SweepMode::random_n;
    cfg.random_count = 4;
    cfg.densities = {0.6, 0.9};
    cfg.trials = 2;
    cfg.seed = 31337;

    std::ostringstream a, b;
    run_threshold_experiment(cfg, a);
    run_threshold_experiment(cfg, b);
    CHECK(a.str() == b.str());

    cfg.threads = 8;
    std::ostringstream c;
    run_threshold_experiment(cfg, c);
    CHECK(a.str() == c.str());

    const std::string& csv = a.str();
    CHECK(csv.rfind("# fqgeom-experiment-csv v1", 0) == 0);
    CHECK(csv.find("# seed=31337") != std::string::npos);
    CHECK(csv.find("q,d,k,lk,density,trial,set_size,threshold,exact,main_term,"
                   "residual,residual_bound,ratio_dev,realized,error") !=
          std::string::npos);
    CHECK(count_rows(csv) == 2 * 2 * 4);  // densities x trials x l_k draws
    CHECK(csv.find("# summary") != std::string::npos);
}

TEST_CASE("explicit sweep produces a single row per cell") {
    ExperimentConfig cfg;
    cfg.q = 3;
    cfg.d = 2;
    cfg.k = 2;
    cfg.sweep = SweepMode::explicit_one;
    cfg.explicit_distances = {1, 1, 1};
    cfg.densities = {1.0};
    cfg.trials = 1;
    cfg.seed = 5;

    std::ostringstream out;
    run_threshold_experiment(cfg, out);
    CHECK(count_rows(out.str()) == 1);
    // density 1.0 with the all-ones triangle: 36 ordered simplices
    CHECK(out.str().find(",36,") != std::string::npos);
}

TEST_CASE("all-mode sweep enumerates (q-1)^3 cells for k=2") {
    ExperimentConfig cfg;
    cfg.q = 3;
    cfg.d = 2;
    cfg.k = 2;
    cfg.sweep = SweepMode::all;
    cfg.densities = {1.0};
    cfg.trials = 1;
    cfg.seed = 0;

    std::ostringstream out;
    run_threshold_experiment(cfg, out);
    CHECK(count_rows(out.str()) == 8);  // (3-1)^3
}

TEST_CASE("domain errors land in the row instead of aborting") {
    ExperimentConfig cfg;
    cfg.q = 7;
    cfg.d = 2;
    cfg.k = 2;
    cfg.sweep = SweepMode::explicit_one;
    cfg.explicit_distances = {1, 2, 3};
    cfg.densities = {0.5};
    cfg.trials = 1;
    cfg.seed = 11;
    cfg.budget = 1.0;  // force InstanceTooLarge inside the cell

    std::ostringstream out;
    run_threshold_experiment(cfg, out);
    CHECK(count_rows(out.str()) == 1);
    CHECK(out.str().find("InstanceTooLarge") != std::string::npos);
}

TEST_CASE("densities are sorted and deduplicated") {
    ExperimentConfig cfg;
    cfg.q = 3;
    cfg.d = 2;
    cfg.k = 1;
    cfg.sweep = SweepMode::explicit_one;
    cfg.explicit_distances = {1};
    cfg.densities = {0.9, 0.4, 0.9};
    cfg.trials = 1;
    cfg.seed = 3;

    std::ostringstream out;
    run_threshold_experiment(cfg, out);
    const std::string& csv = out.str();
    CHECK(count_rows(csv) == 2);
    CHECK(csv.find(",0.4,") < csv.find(",0.9,"));
}

TEST_CASE("experiment rejects bad configs") {
    ExperimentConfig cfg;
    cfg.q = 4;
    cfg.d = 2;
    cfg.densities = {0.5};
    std::ostringstream out;
    CHECK_THROWS_AS(run_threshold_experiment(cfg, out), std::invalid_argument);

    cfg.q = 5;
    cfg.densities.clear();
    CHECK_THROWS_AS(run_threshold_experiment(cfg, out), std::invalid_argument);

    cfg.densities = {1.5};
    CHECK_THROWS_AS(run_threshold_experiment(cfg, out), std::invalid_argument);
}

TEST_CASE("bench_dft reports consistent transforms") {
    BenchReport r = bench_dft(5, 2, 2);
    CHECK(r.naive_ns > 0.0);
    CHECK(r.factorized_ns > 0.0);
    CHECK(r.max_abs_diff < 1e-9);
}
