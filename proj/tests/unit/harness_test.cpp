#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "adjsep/harness.hpp"

using namespace adjsep;

TEST_SUITE("harness") {

TEST_CASE("rng is reproducible") {
    Rng a(42), b(42), c(43);
    std::vector<std::uint64_t> va, vb, vc;
    for (int i = 0; i < 8; ++i) {
        va.push_back(a.next());
        vb.push_back(b.next());
        vc.push_back(c.next());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(Rng::for_instance(1, 5).next() == Rng::for_instance(1, 5).next());
    CHECK(Rng::for_instance(1, 5).next() != Rng::for_instance(1, 6).next());
    Rng r(9);
    for (int i = 0; i < 1000; ++i) {
        double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(r.below(7) < 7);
    }
}

TEST_CASE("random_dag examples") {
    Rng rng(1);
    auto complete = random_dag(10, 10, rng);
    CHECK(complete.edge_count() == 45);
    CHECK(complete.name(0) == "v1");
    CHECK(complete.name(9) == "v10");
    auto sparse = random_dag(50, 1e-9, rng);
    CHECK(sparse.edge_count() == 0);
    auto clamp = random_dag(8, 7, rng);
    CHECK(clamp.edge_count() == 28);
    for (const auto& e : clamp.edges()) CHECK(e.a < e.b);

    Rng big(2024);
    auto g = random_dag(1000, 2, big);
    const double pairs = 1000.0 * 999.0 / 2.0, p = 2.0 / 999.0;
    const double sigma = std::sqrt(pairs * p * (1 - p));
    CHECK(std::abs(static_cast<double>(g.edge_count()) - 1000.0) < 5 * sigma);
    CHECK(validate(g, GraphClass::dag).ok());
}

TEST_CASE("random_dag edge frequency is uniform over pairs") {
    // each pair should appear with probability p, including the first and last
    std::vector<int> hits(10 * 9 / 2, 0);
    const int runs = 4000;
    for (int r = 0; r < runs; ++r) {
        auto rng = Rng::for_instance(77, static_cast<std::uint64_t>(r));
        auto g = random_dag(10, 3, rng);
        std::size_t k = 0;
        for (NodeId i = 0; i < 10; ++i)
            for (NodeId j = i + 1; j < 10; ++j, ++k)
                if (g.adjacent(i, j)) ++hits[k];
    }
    const double p = 3.0 / 9.0, sigma = std::sqrt(runs * p * (1 - p));
    for (int h : hits) CHECK(std::abs(h - runs * p) < 5 * sigma);
}

TEST_CASE("mark_roles examples") {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        auto g = random_dag(10, 2, rng);
        auto all = mark_roles(g, 5, rng.uniform(), rng);
        CHECK(all.R == g.all_nodes());
        CHECK((all.X | all.Y) == g.all_nodes());
        auto none = mark_roles(g, 1, 0, rng);
        CHECK(none.R == g.all_nodes());
        auto hidden = mark_roles(g, 2, 1, rng);
        CHECK(hidden.R.size() == 4);
        CHECK(hidden.X.size() == 2);
        CHECK(hidden.Y.size() == 2);
        CHECK((hidden.X | hidden.Y) == hidden.R);
        CHECK_FALSE(hidden.X.intersects(hidden.Y));
    }
    auto g = random_dag(3, 1, rng);
    CHECK_THROWS_AS(mark_roles(g, 2, 0, rng), InvalidConfig);
}

TEST_CASE("config validation") {
    ExperimentConfig c;
    c.n = 3;
    c.k = 2;
    CHECK_THROWS_AS(validate(c), InvalidConfig);
    c = ExperimentConfig{};
    c.instances = 0;
    CHECK_THROWS_AS(validate(c), InvalidConfig);
    c = ExperimentConfig{};
    c.p_unobserved = 1.5;
    CHECK_THROWS_AS(validate(c), InvalidConfig);
    c = ExperimentConfig{};
    c.l = 0;
    CHECK_THROWS_AS(validate(c), InvalidConfig);
    CHECK_NOTHROW(validate(ExperimentConfig{}));
}

TEST_CASE("dag experiment invariants") {
    for (std::size_t k : {1, 2, 3}) {
        ExperimentConfig c;
        c.n = 10;
        c.k = k;
        c.l = 2;
        c.instances = 300;
        c.p_unobserved = k == 1 ? 0.75 : 0.25;
        c.seed = 11 + k;
        auto row = run_experiment(c);
        CHECK(row.bc <= row.cbc);
        CHECK(row.cbc <= row.cbc_plus);
        CHECK(row.cbc_plus <= c.instances);
        if (k == 1) CHECK(row.bc == row.cbc);
    }
    ExperimentConfig full;
    full.n = 10;
    full.k = 5;
    full.instances = 200;
    full.extended = true;
    auto row = run_experiment(full);
    CHECK(row.cbc_plus + row.extended == full.instances);
}

TEST_CASE("mag experiment invariants") {
    ExperimentConfig c;
    c.mode = Mode::mag_ident;
    c.n = 15;
    c.l = 3;
    c.instances = 300;
    auto row = run_experiment(c);
    CHECK(row.mag_el <= row.mag_ee);
    CHECK(row.mag_ee <= row.cbc);
    c.n = 10;
    c.l = 10;
    auto complete = run_experiment(c);
    CHECK(complete.mag_ee == 0);
    CHECK(complete.mag_el == 0);
    c.n = 15;
    c.l = 3;
    c.mag_latent_max_n = 10;
    auto skipped = run_experiment(c);
    CHECK(skipped.mag_el_skipped);
    CHECK(skipped.mag_ee == row.mag_ee);
}

TEST_CASE("seeded runs are byte identical") {
    ExperimentConfig c;
    c.instances = 200;
    c.k = 2;
    c.p_unobserved = 0.3;
    c.timing = false;
    auto one = csv_header(c) + csv_row(run_experiment(c));
    c.threads = 3;
    auto two = csv_header(c) + csv_row(run_experiment(c));
    CHECK(one == two);
    c.seed = 2;
    CHECK(csv_row(run_experiment(c)) != csv_row(run_experiment(ExperimentConfig{c.n, c.l, c.k, c.p_unobserved,
                                                                                c.instances, 1, c.mode, 1, false})));
    CHECK(csv_header(c).rfind("n,l,k,p_unobserved,instances,seed,bc,cbc,cbc_plus,t_mean_us,t_p99_us", 0) == 0);
    c.mode = Mode::mag_ident;
    CHECK(csv_header(c).rfind("n,l,k,p_unobserved,instances,seed,bc,cbc,cbc_plus,mag_ee,mag_el,t_mean_us,t_p99_us",
                              0) == 0);
}

TEST_CASE("basis experiment") {
    ExperimentConfig c;
    c.mode = Mode::basis_sets;
    c.n = 25;
    c.l = 5;
    c.instances = 40;
    auto row = run_experiment(c);
    CHECK(row.sparse_total <= row.parental_total);
    CHECK(row.sparse_le_parental >= 39);
    CHECK(row.mean_reduction > 0.1);
    CHECK(row.mean_reduction < 0.5);
}

}
