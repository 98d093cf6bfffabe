#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fqgeom/field.hpp"
#include "fqgeom/simplex.hpp"

namespace fqgeom {

/// Seeded random subset of F_q^d: each point included independently
/// with the given probability, one PRNG draw per grid index in index
/// order, so output is identical across platforms and runs.
PointSet sample_set(Residue q, std::uint32_t d, double density, std::uint64_t seed);

/// Text format: first data line "q d", then one point per line
/// (d residues, space separated). '#' starts a comment. Throws
/// ParseError with a line number on malformed or duplicate input.
PointSet read_point_set(std::istream& in);
void write_point_set(std::ostream& out, const PointSet& e);

enum class SweepMode {
    all,        // every l_k in (F_q*)^{k(k+1)/2}
    random_n,   // random_count seeded draws
    explicit_one,
};

struct ExperimentConfig {
    Residue q = 0;
    std::uint32_t d = 0;
    std::uint32_t k = 1;
    SweepMode sweep = SweepMode::all;
    std::uint32_t random_count = 20;          // for SweepMode::random_n
    std::vector<Residue> explicit_distances;  // for SweepMode::explicit_one
    std::vector<double> densities;
    std::uint32_t trials = 1;
    std::uint64_t seed = 0;
    double c_test = 4.0;
    double budget = 1e10;
    unsigned threads = 1;
};

/// Sweeps (density x trial x l_k), one concentration report per cell,
/// and writes versioned CSV: rows sorted by (density, trial, l_k),
/// then per-density summary comment lines. A cell that trips a domain
/// error is recorded in its row; the sweep never aborts. Output is
/// byte-identical for identical configs regardless of thread count.
void run_threshold_experiment(const ExperimentConfig& cfg, std::ostream& out);

struct BenchReport {
    double naive_ns = 0.0;        // best-of-repeats wall time
    double factorized_ns = 0.0;
    double max_abs_diff = 0.0;    // between the two transforms
};

/// Times both transform strategies on a seeded random grid function.
BenchReport bench_dft(Residue q, std::uint32_t d, std::uint32_t repeats);

}  // namespace fqgeom
