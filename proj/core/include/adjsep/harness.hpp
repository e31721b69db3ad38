#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adjsep/graph.hpp"

namespace adjsep {

// xoshiro256** seeded through splitmix64. Fully specified so that seeded runs
// agree across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    // independent stream for instance `index` of a run seeded with `master`
    static Rng for_instance(std::uint64_t master, std::uint64_t index);

    std::uint64_t next();
    // uniform in [0, 1)
    double uniform();
    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t s_[4];
};

// nodes v1..vn; each i -> j with i < j present with probability min(l/(n-1), 1)
MixedGraph random_dag(std::size_t n, double l, Rng& rng);

struct Roles {
    NodeSet X, Y, R;
};

// Sweeps the nodes in order and hides each with probability p while more than
// 2k stay observed, then draws disjoint X and Y of size k from the observed.
Roles mark_roles(const MixedGraph& g, std::size_t k, double p_unobserved, Rng& rng);

enum class Mode { dag_ident, mag_ident, basis_sets };
const char* mode_name(Mode m);

struct ExperimentConfig {
    std::size_t n = 10;
    double l = 2;
    std::size_t k = 1;
    double p_unobserved = 0;
    std::size_t instances = 1000;
    std::uint64_t seed = 1;
    Mode mode = Mode::dag_ident;
    unsigned threads = 1;
    // off: timing columns are written as 0 so output is reproducible byte for byte
    bool timing = true;
    // count parent adjustment and the partition case as an extra label
    bool extended = false;
    // MAG conversion skipped above this node count (0: never skipped)
    std::size_t mag_latent_max_n = 0;
};

void validate(const ExperimentConfig& cfg);

struct ExperimentRow {
    ExperimentConfig config;
    std::size_t bc = 0, cbc = 0, cbc_plus = 0, extended = 0;
    std::size_t mag_ee = 0, mag_el = 0;
    bool mag_el_skipped = false;
    std::size_t parental_total = 0, sparse_total = 0, sparse_le_parental = 0;
    double mean_reduction = 0;
    double t_mean_us = 0, t_p99_us = 0;
};

ExperimentRow run_experiment(const ExperimentConfig& cfg);

std::string csv_header(const ExperimentConfig& cfg);
std::string csv_row(const ExperimentRow& row);

}  // namespace adjsep
