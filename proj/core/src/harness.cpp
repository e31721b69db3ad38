#include "adjsep/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "adjsep/basis.hpp"
#include "adjsep/identification.hpp"
#include "adjsep/mag.hpp"

namespace adjsep {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
    for (auto& w : s_) w = splitmix64(seed);
}

Rng Rng::for_instance(std::uint64_t master, std::uint64_t index) {
    std::uint64_t x = master;
    std::uint64_t a = splitmix64(x);
    x = index ^ 0x6a09e667f3bcc909ull;
    return Rng(a ^ splitmix64(x));
}

std::uint64_t Rng::next() {
    const std::uint64_t out = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return out;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) return 0;
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

MixedGraph random_dag(std::size_t n, double l, Rng& rng) {
    GraphBuilder b;
    for (std::size_t i = 1; i <= n; ++i) b.add_node("v" + std::to_string(i));
    if (n < 2 || !(l > 0)) return std::move(b).build();
    const double p = std::min(l / static_cast<double>(n - 1), 1.0);
    auto add = [&](std::size_t i, std::size_t j) {
        b.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j), Mark::tail, Mark::arrow);
    };
    if (p >= 1) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) add(i, j);
        return std::move(b).build();
    }
    // geometric skips over the pairs (i, j), i < j, in row order
    const double log_q = std::log1p(-p);
    std::size_t i = 0, j = 0;
    for (;;) {
        const double u = 1.0 - rng.uniform();
        double skip = std::floor(std::log(u) / log_q);
        std::size_t step = skip > 1e18 ? static_cast<std::size_t>(-1) / 2 : static_cast<std::size_t>(skip) + 1;
        // j is the last visited column of row i (i itself before the first pair)
        while (step > 0 && i + 1 < n) {
            std::size_t left = n - 1 - j;
            if (step <= left) {
                j += step;
                step = 0;
            } else {
                step -= left;
                ++i;
                j = i;
            }
        }
        if (i + 1 >= n) break;
        add(i, j);
    }
    return std::move(b).build();
}

Roles mark_roles(const MixedGraph& g, std::size_t k, double p_unobserved, Rng& rng) {
    const std::size_t n = g.node_count();
    if (k == 0) throw InvalidConfig("k must be positive");
    if (n < 2 * k) throw InvalidConfig("need n >= 2k");
    Roles r{g.empty_set(), g.empty_set(), g.all_nodes()};
    std::size_t observed = n;
    for (NodeId v = 0; v < n && observed > 2 * k; ++v) {
        if (rng.uniform() < p_unobserved) {
            r.R.erase(v);
            --observed;
        }
    }
    std::vector<NodeId> pool = r.R.to_vector();
    for (std::size_t t = 0; t < 2 * k; ++t) {
        std::size_t pick = t + static_cast<std::size_t>(rng.below(pool.size() - t));
        std::swap(pool[t], pool[pick]);
        (t < k ? r.X : r.Y).insert(pool[t]);
    }
    return r;
}

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::dag_ident: return "dag";
        case Mode::mag_ident: return "mag";
        case Mode::basis_sets: return "basis";
    }
    return "dag";
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.instances == 0) throw InvalidConfig("instances must be at least 1");
    if (!(cfg.l > 0)) throw InvalidConfig("l must be positive");
    if (cfg.n < 2) throw InvalidConfig("n must be at least 2");
    if (cfg.mode != Mode::basis_sets) {
        if (cfg.k == 0) throw InvalidConfig("k must be positive");
        if (cfg.n < 2 * cfg.k) throw InvalidConfig("need n >= 2k");
        if (!(cfg.p_unobserved >= 0 && cfg.p_unobserved <= 1)) throw InvalidConfig("p_unobserved must lie in [0, 1]");
    }
    if (cfg.threads == 0) throw InvalidConfig("threads must be at least 1");
}

namespace {

struct Outcome {
    Label label = Label::undecided;
    bool mag_ee = false, mag_el = false;
    std::size_t parental = 0, sparse = 0;
    double micros = 0;
};

Outcome run_instance(const ExperimentConfig& cfg, std::size_t index) {
    Rng rng = Rng::for_instance(cfg.seed, index);
    const MixedGraph g = random_dag(cfg.n, cfg.l, rng);
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    if (cfg.mode == Mode::basis_sets) {
        o.parental = total_conditioning(parental_basis(g));
        o.sparse = total_conditioning(sparse_basis(g));
    } else {
        const Roles roles = mark_roles(g, cfg.k, cfg.p_unobserved, rng);
        o.label = classify(g, roles.X, roles.Y, roles.R, cfg.extended).label;
        if (cfg.mode == Mode::mag_ident) {
            SepQuery q{roles.X, roles.Y, g.empty_set(), roles.R};
            o.mag_ee = MagAdjustment(g, roles.X, roles.Y, false).find(q.I, q.R).has_value();
            if (cfg.mag_latent_max_n == 0 || cfg.n <= cfg.mag_latent_max_n) {
                const MixedGraph m = dag_to_mag(g, g.all_nodes() - roles.R);
                std::vector<std::string> xs, ys;
                for (NodeId v : roles.X) xs.push_back(g.name(v));
                for (NodeId v : roles.Y) ys.push_back(g.name(v));
                MagAdjustment adj(m, m.set_of(xs), m.set_of(ys), false);
                o.mag_el = adj.find(m.empty_set(), m.all_nodes()).has_value();
            }
        }
    }
    o.micros = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
    return o;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

ExperimentRow run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    std::vector<Outcome> out(cfg.instances);
    const unsigned workers = std::min<std::size_t>(cfg.threads, cfg.instances);
    if (workers <= 1) {
        for (std::size_t i = 0; i < cfg.instances; ++i) out[i] = run_instance(cfg, i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < cfg.instances; i += workers) out[i] = run_instance(cfg, i);
            });
        for (auto& t : pool) t.join();
    }

    ExperimentRow row;
    row.config = cfg;
    row.mag_el_skipped = cfg.mode == Mode::mag_ident && cfg.mag_latent_max_n != 0 && cfg.n > cfg.mag_latent_max_n;
    std::size_t reduced = 0;
    double reduction = 0;
    std::vector<double> times;
    for (const auto& o : out) {
        switch (o.label) {
            case Label::bc: ++row.bc; [[fallthrough]];
            case Label::cbc: ++row.cbc; [[fallthrough]];
            case Label::cbc_plus: ++row.cbc_plus; break;
            case Label::extended: ++row.extended; break;
            case Label::undecided: break;
        }
        row.mag_ee += o.mag_ee;
        row.mag_el += o.mag_el;
        row.parental_total += o.parental;
        row.sparse_total += o.sparse;
        row.sparse_le_parental += o.sparse <= o.parental;
        if (o.parental > 0) {
            reduction += 1.0 - static_cast<double>(o.sparse) / static_cast<double>(o.parental);
            ++reduced;
        }
        times.push_back(o.micros);
    }
    if (reduced) row.mean_reduction = reduction / static_cast<double>(reduced);
    if (cfg.timing) {
        double sum = 0;
        for (double t : times) sum += t;
        row.t_mean_us = sum / static_cast<double>(times.size());
        std::sort(times.begin(), times.end());
        std::size_t rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(times.size())));
        row.t_p99_us = times[std::max<std::size_t>(rank, 1) - 1];
    }
    return row;
}

std::string csv_header(const ExperimentConfig& cfg) {
    if (cfg.mode == Mode::basis_sets)
        return "n,l,instances,seed,parental_total,sparse_total,mean_reduction,sparse_le_parental,t_mean_us,t_p99_us";
    std::string h = "n,l,k,p_unobserved,instances,seed,bc,cbc,cbc_plus";
    if (cfg.extended) h += ",extended";
    if (cfg.mode == Mode::mag_ident) h += ",mag_ee,mag_el";
    return h + ",t_mean_us,t_p99_us";
}

std::string csv_row(const ExperimentRow& r) {
    const auto& c = r.config;
    auto u = [](std::size_t v) { return std::to_string(v); };
    std::string s = u(c.n) + "," + num(c.l) + ",";
    if (c.mode == Mode::basis_sets) {
        s += u(c.instances) + "," + std::to_string(c.seed) + "," + u(r.parental_total) + "," + u(r.sparse_total) + "," +
             num(r.mean_reduction) + "," + u(r.sparse_le_parental);
    } else {
        s += u(c.k) + "," + num(c.p_unobserved) + "," + u(c.instances) + "," + std::to_string(c.seed) + "," + u(r.bc) +
             "," + u(r.cbc) + "," + u(r.cbc_plus);
        if (c.extended) s += "," + u(r.extended);
        if (c.mode == Mode::mag_ident) s += "," + u(r.mag_ee) + "," + (r.mag_el_skipped ? std::string() : u(r.mag_el));
    }
    return s + "," + num(r.t_mean_us) + "," + num(r.t_p99_us);
}

}  // namespace adjsep
