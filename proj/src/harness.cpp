#include "fqgeom/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fqgeom/errors.hpp"
#include "fqgeom/fourier.hpp"
#include "fqgeom/rng.hpp"

namespace fqgeom {

namespace {

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string lk_label(const std::vector<Residue>& distances) {
    std::string s;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (i > 0) s += '-';
        s += std::to_string(distances[i]);
    }
    return s;
}

struct Cell {
    double density = 0.0;
    std::uint32_t trial = 0;
    std::vector<Residue> lk;
    std::size_t set_size = 0;
    std::int64_t exact = 0;
    double main_term = 0.0;
    double residual = 0.0;
    double residual_bound = 0.0;
    double ratio_dev = 0.0;
    bool has_ratio = false;
    bool realized = false;
    std::string error;  // DomainError kind, empty on success
};

std::vector<std::vector<Residue>> sweep_specs(const ExperimentConfig& cfg) {
    const std::size_t entries = static_cast<std::size_t>(cfg.k) * (cfg.k + 1) / 2;
    std::vector<std::vector<Residue>> out;
    switch (cfg.sweep) {
        case SweepMode::all: {
            double total = 1.0;
            for (std::size_t i = 0; i < entries; ++i) total *= cfg.q - 1;
            if (total > 2e5) {
                throw InstanceTooLarge("experiment: full l_k sweep has " + fmt_g(total) +
                                       " cells; use a random or explicit sweep");
            }
            std::vector<Residue> cur(entries, 1);
            while (true) {
                out.push_back(cur);
                std::size_t i = entries;
                while (i-- > 0) {
                    if (++cur[i] < cfg.q) break;
                    cur[i] = 1;
                    if (i == 0) return out;
                }
            }
        }
        case SweepMode::random_n: {
            SplitMix64 rng(derive_seed(cfg.seed, 0x6C6B, entries));
            for (std::uint32_t n = 0; n < cfg.random_count; ++n) {
                std::vector<Residue> spec(entries);
                for (auto& t : spec) {
                    t = static_cast<Residue>(1 + rng.next_below(cfg.q - 1));
                }
                out.push_back(std::move(spec));
            }
            return out;
        }
        case SweepMode::explicit_one: {
            SimplexSpec s{cfg.k, cfg.explicit_distances};
            s.validate(cfg.q);
            out.push_back(cfg.explicit_distances);
            return out;
        }
    }
    throw std::invalid_argument("experiment: unknown sweep mode");
}

}  // namespace

PointSet sample_set(Residue q, std::uint32_t d, double density, std::uint64_t seed) {
    if (!(density > 0.0 && density <= 1.0)) {
        throw std::invalid_argument("sample_set: density must lie in (0, 1]");
    }
    const std::size_t n = grid_size(q, d);
    SplitMix64 rng(seed);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.next_double() < density) idx.push_back(i);
    }
    return PointSet::from_indices(q, d, idx);
}

PointSet read_point_set(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    Residue q = 0;
    std::uint32_t d = 0;
    bool have_header = false;
    std::vector<Point> pts;
    std::vector<std::pair<std::size_t, std::size_t>> seen;  // grid index, line

    auto fail = [&](const std::string& what) -> void {
        throw ParseError("line " + std::to_string(lineno) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<long long> nums;
        long long v = 0;
        while (ls >> v) nums.push_back(v);
        if (!ls.eof()) fail("malformed number");
        if (nums.empty()) continue;
        if (!have_header) {
            if (nums.size() != 2) fail("expected header 'q d'");
            if (nums[0] < 3 || !is_odd_prime(static_cast<std::uint64_t>(nums[0]))) {
                fail("q must be an odd prime");
            }
            if (nums[1] < 1) fail("d must be positive");
            q = static_cast<Residue>(nums[0]);
            d = static_cast<std::uint32_t>(nums[1]);
            grid_size(q, d);
            have_header = true;
            continue;
        }
        if (nums.size() != d) {
            fail("expected " + std::to_string(d) + " coordinates");
        }
        Point p;
        p.coords.reserve(d);
        std::size_t idx = 0;
        for (long long c : nums) {
            if (c < 0 || c >= static_cast<long long>(q)) fail("coordinate out of [0, q)");
            p.coords.push_back(static_cast<Residue>(c));
            idx = idx * q + static_cast<std::size_t>(c);
        }
        for (const auto& [prev_idx, prev_line] : seen) {
            if (prev_idx == idx) {
                fail("duplicate of the point on line " + std::to_string(prev_line));
            }
        }
        seen.emplace_back(idx, lineno);
        pts.push_back(std::move(p));
    }
    if (!have_header) throw ParseError("missing 'q d' header line");
    return PointSet(q, d, std::move(pts));
}

void write_point_set(std::ostream& out, const PointSet& e) {
    out << e.q() << ' ' << e.dim() << '\n';
    for (const Point& p : e.points()) {
        for (std::uint32_t i = 0; i < e.dim(); ++i) {
            if (i > 0) out << ' ';
            out << p.coords[i];
        }
        out << '\n';
    }
}

void run_threshold_experiment(const ExperimentConfig& cfg, std::ostream& out) {
    if (!is_odd_prime(cfg.q)) throw std::invalid_argument("experiment: q must be an odd prime");
    if (cfg.d < 1 || cfg.k < 1) throw std::invalid_argument("experiment: need d >= 1, k >= 1");
    if (cfg.densities.empty()) throw std::invalid_argument("experiment: no densities given");
    for (double p : cfg.densities) {
        if (!(p > 0.0 && p <= 1.0)) {
            throw std::invalid_argument("experiment: density must lie in (0, 1]");
        }
    }
    if (cfg.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");

    const auto lks = sweep_specs(cfg);
    std::vector<double> densities = cfg.densities;
    std::sort(densities.begin(), densities.end());
    densities.erase(std::unique(densities.begin(), densities.end()), densities.end());

    CountOptions opts;
    opts.work_budget = cfg.budget;
    opts.threads = cfg.threads;

    std::vector<Cell> cells;
    for (std::size_t di = 0; di < densities.size(); ++di) {
        for (std::uint32_t trial = 0; trial < cfg.trials; ++trial) {
            const std::uint64_t set_seed = derive_seed(cfg.seed, di, trial);
            const PointSet e = sample_set(cfg.q, cfg.d, densities[di], set_seed);
            for (const auto& lk : lks) {
                Cell cell;
                cell.density = densities[di];
                cell.trial = trial;
                cell.lk = lk;
                cell.set_size = e.size();
                try {
                    const SimplexSpec spec{cfg.k, lk};
                    const CountReport rep = concentration_report(e, spec, opts, cfg.c_test);
                    cell.exact = rep.exact_count;
                    cell.main_term = rep.main_global.convert_to<double>();
                    cell.residual = rep.residual.convert_to<double>();
                    cell.residual_bound = rep.residual_bound;
                    if (cell.main_term != 0.0) {
                        cell.ratio_dev =
                            std::abs(static_cast<double>(cell.exact) / cell.main_term - 1.0);
                        cell.has_ratio = true;
                    }
                    cell.realized = cell.exact > 0;
                } catch (const DomainError& err) {
                    cell.error = err.kind();
                }
                cells.push_back(std::move(cell));
            }
        }
    }

    std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.density != b.density) return a.density < b.density;
        if (a.trial != b.trial) return a.trial < b.trial;
        return a.lk < b.lk;
    });

    const double thr = threshold(cfg.q, cfg.d, cfg.k);
    out << "# fqgeom-experiment-csv v1\n";
    out << "# seed=" << cfg.seed << " c_test=" << fmt_g(cfg.c_test) << "\n";
    out << "q,d,k,lk,density,trial,set_size,threshold,exact,main_term,residual,"
           "residual_bound,ratio_dev,realized,error\n";
    for (const Cell& c : cells) {
        out << cfg.q << ',' << cfg.d << ',' << cfg.k << ',' << lk_label(c.lk) << ','
            << fmt_g(c.density) << ',' << c.trial << ',' << c.set_size << ',' << fmt_g(thr)
            << ',';
        if (c.error.empty()) {
            out << c.exact << ',' << fmt_g(c.main_term) << ',' << fmt_g(c.residual) << ','
                << fmt_g(c.residual_bound) << ',' << (c.has_ratio ? fmt_g(c.ratio_dev) : "")
                << ',' << (c.realized ? '1' : '0') << ',';
        } else {
            out << ",,,,,," << c.error;
        }
        out << '\n';
    }

    for (double density : densities) {
        std::size_t total = 0;
        std::size_t realized = 0;
        std::vector<double> devs;
        for (const Cell& c : cells) {
            if (c.density != density) continue;
            ++total;
            if (c.error.empty() && c.realized) ++realized;
            if (c.error.empty() && c.has_ratio) devs.push_back(c.ratio_dev);
        }
        out << "# summary density=" << fmt_g(density) << " cells=" << total
            << " realized_fraction="
            << fmt_g(total == 0 ? 0.0 : static_cast<double>(realized) / total)
            << " median_ratio_dev=";
        if (!devs.empty()) {
            std::sort(devs.begin(), devs.end());
            const std::size_t mid = devs.size() / 2;
            const double median =
                devs.size() % 2 == 1 ? devs[mid] : 0.5 * (devs[mid - 1] + devs[mid]);
            out << fmt_g(median);
        }
        out << '\n';
    }
}

BenchReport bench_dft(Residue q, std::uint32_t d, std::uint32_t repeats) {
    if (repeats < 1) throw std::invalid_argument("bench_dft: repeats must be >= 1");
    GridFunction f(q, d);
    SplitMix64 rng(derive_seed(0xB43C, q, d));
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = Cplx(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
    }
    using clock = std::chrono::steady_clock;
    BenchReport rep;
    GridFunction naive(q, d);
    GridFunction fact(q, d);
    double best_naive = 0.0;
    double best_fact = 0.0;
    for (std::uint32_t r = 0; r < repeats; ++r) {
        auto t0 = clock::now();
        naive = dft(f, DftStrategy::naive);
        auto t1 = clock::now();
        fact = dft(f, DftStrategy::factorized);
        auto t2 = clock::now();
        const auto ns1 = std::chrono::duration<double, std::nano>(t1 - t0).count();
        const auto ns2 = std::chrono::duration<double, std::nano>(t2 - t1).count();
        if (r == 0 || ns1 < best_naive) best_naive = ns1;
        if (r == 0 || ns2 < best_fact) best_fact = ns2;
    }
    rep.naive_ns = best_naive;
    rep.factorized_ns = best_fact;
    for (std::size_t i = 0; i < naive.size(); ++i) {
        rep.max_abs_diff = std::max(rep.max_abs_diff, std::abs(naive[i] - fact[i]));
    }
    return rep;
}

}  // namespace fqgeom
