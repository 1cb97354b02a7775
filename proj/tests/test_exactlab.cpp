#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "gsu/exactlab.hpp"

using namespace gsu;

namespace {

BinaryMatrix from_rows(const std::vector<std::string>& rows) {
    BinaryMatrix a(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            a.set(i, j, rows[i][j] == '1' ? 1 : 0);
    return a;
}

const DegreeSequence k2222{GraphKind::Bipartite, {2, 2, 2, 2}, {2, 2, 2, 2}};

void check_stochastic(const TransitionMatrix& p) {
    for (std::size_t i = 0; i < p.dim; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < p.dim; ++j) {
            CHECK(p.at(i, j) >= 0.0);
            s += p.at(i, j);
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
}

} // namespace

TEST_CASE("binomial") {
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(10, 5) == 252);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(3, 5) == 0);
}

TEST_CASE("enumerate_states: counts and order") {
    auto s = enumerate_states(k2222);
    CHECK(s.size() == 90);
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        CHECK(s.states[i].bit_string() < s.states[i + 1].bit_string());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.index_of(s.states[i]) == i);

    CHECK(enumerate_states(family_double_star(2)).size() == 6);
    CHECK(enumerate_states(family_double_star(3)).size() == 20);

    auto u = enumerate_states({GraphKind::UndirectedSimple, {2, 2, 3, 2, 1}, {}});
    for (const auto& g : u.states) {
        CHECK(g.row_sums() == std::vector<int>{2, 2, 3, 2, 1});
        for (std::size_t i = 0; i < 5; ++i) CHECK(g.get(i, i) == 0);
    }
    CHECK(u.size() > 0);

    auto d = enumerate_states({GraphKind::DirectedSimple, {1, 1, 1}, {1, 1, 1}});
    CHECK(d.size() == 2);

    CHECK_THROWS_AS(enumerate_states({GraphKind::Bipartite, {3}, {1, 1}}), Error);
    CHECK_THROWS_AS(enumerate_states(k2222, 10), Error);
}

TEST_CASE("enumerate_states matches brute force on small shapes") {
    // oracle: filter all 0/1 matrices of the shape by margins
    DegreeSequence k{GraphKind::Bipartite, {2, 1, 2}, {2, 1, 2}};
    std::vector<BinaryMatrix> expect;
    for (unsigned mask = 0; mask < (1u << 9); ++mask) {
        BinaryMatrix a(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (mask & (1u << (i * 3 + j))) a.set(i, j, 1);
        if (a.row_sums() == k.rows && a.col_sums() == k.cols) expect.push_back(a);
    }
    std::sort(expect.begin(), expect.end(), [](const BinaryMatrix& a, const BinaryMatrix& b) {
        return a.bit_string() < b.bit_string();
    });
    auto s = enumerate_states(k);
    REQUIRE(s.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(s.states[i] == expect[i]);
}

TEST_CASE("switch matrix: structure and exact counts") {
    auto s = enumerate_states(k2222);
    auto p = switch_matrix(s, GraphKind::Bipartite);
    check_stochastic(p);
    // symmetric kernel
    for (std::size_t i = 0; i < p.dim; ++i)
        for (std::size_t j = 0; j < p.dim; ++j)
            CHECK(p.at(i, j) == doctest::Approx(p.at(j, i)).epsilon(1e-15));

    auto c = switch_counts(s, GraphKind::Bipartite);
    CHECK(c.denominator == binomial(8, 2));
    for (std::size_t i = 0; i < p.dim; ++i)
        for (std::size_t j = 0; j < p.dim; ++j)
            CHECK(p.at(i, j) ==
                  doctest::Approx(static_cast<double>(c.at(i, j)) / c.denominator)
                      .epsilon(1e-15));
}

TEST_CASE("hub-pair family degenerates to one class at n = 2") {
    // all four secondary degrees coincide, so the two classes merge
    auto s = enumerate_states(family_hub_pair(2));
    CHECK(s.size() == 6);
    auto part = iso_partition(s, GraphKind::Bipartite);
    CHECK(part.num_classes() == 1);
    CHECK(part.class_sizes == std::vector<std::size_t>{6});
}

TEST_CASE("switch counts on the hub-pair family match closed forms") {
    for (int n = 3; n <= 6; ++n) {
        auto k = family_hub_pair(n);
        auto s = enumerate_states(k);
        CHECK(s.size() == static_cast<std::size_t>(n * (2 * n - 1)));
        auto part = iso_partition(s, GraphKind::Bipartite);
        REQUIRE(part.num_classes() == 2);
        std::vector<std::size_t> sizes = part.class_sizes;
        std::sort(sizes.begin(), sizes.end());
        CHECK(sizes[0] == static_cast<std::size_t>(n));
        CHECK(sizes[1] == static_cast<std::size_t>(2 * n * (n - 1)));

        auto c = switch_counts(s, GraphKind::Bipartite);
        CHECK(c.denominator == binomial(2 * n, 2));
        // from a small-class state, 4(n-1) moves reach the big class;
        // from a big-class state, exactly 2 moves reach the small class
        std::size_t small_cls = part.class_sizes[part.class_of[0]] ==
                                        static_cast<std::size_t>(n)
                                    ? part.class_of[0]
                                    : 1 - part.class_of[0];
        for (std::size_t x = 0; x < s.size(); ++x) {
            std::int64_t cross = 0;
            for (std::size_t y = 0; y < s.size(); ++y)
                if (part.class_of[y] != part.class_of[x]) cross += c.at(x, y);
            if (part.class_of[x] == small_cls)
                CHECK(cross == 4 * (n - 1));
            else
                CHECK(cross == 2);
        }
    }
}

TEST_CASE("curveball matrix: double-star rows are uniform") {
    for (int l = 1; l <= 4; ++l) {
        auto s = enumerate_states(family_double_star(l));
        const auto omega = static_cast<std::size_t>(binomial(2 * l, l));
        REQUIRE(s.size() == omega);
        auto p = curveball_matrix(s, GraphKind::Bipartite);
        check_stochastic(p);
        for (std::size_t i = 0; i < p.dim; ++i)
            for (std::size_t j = 0; j < p.dim; ++j)
                CHECK(p.at(i, j) == doctest::Approx(1.0 / omega).epsilon(1e-12));
    }
}

TEST_CASE("curveball moves decompose into switch moves") {
    // every positive curveball transition stays within switch reachability
    auto s = enumerate_states(k2222);
    auto psw = switch_matrix(s, GraphKind::Bipartite);
    auto pcb = curveball_matrix(s, GraphKind::Bipartite);
    check_stochastic(pcb);
    // BFS over switch edges from each state would be quadratic; the switch
    // chain on this space is irreducible, so check instead that curveball
    // support is contained in the set reachable from state 0
    std::vector<char> reach(s.size(), 0);
    std::deque<std::size_t> q{0};
    reach[0] = 1;
    while (!q.empty()) {
        auto x = q.front();
        q.pop_front();
        for (std::size_t y = 0; y < s.size(); ++y)
            if (!reach[y] && psw.at(x, y) > 0) {
                reach[y] = 1;
                q.push_back(y);
            }
    }
    for (std::size_t x = 0; x < s.size(); ++x) {
        CHECK(reach[x] == 1);
        for (std::size_t y = 0; y < s.size(); ++y)
            if (pcb.at(x, y) > 0) CHECK(reach[y] == 1);
    }
}

TEST_CASE("single-state space gives the identity chain") {
    DegreeSequence k{GraphKind::Bipartite, {2, 2}, {2, 2}};
    auto s = enumerate_states(k);
    REQUIRE(s.size() == 1);
    auto p = switch_matrix(s, GraphKind::Bipartite);
    CHECK(p.at(0, 0) == 1.0);
    auto part = iso_partition(s, GraphKind::Bipartite);
    CHECK(part.num_classes() == 1);
    CHECK(mixing_time(p, stationary(p), 0.001).tau == 0);
}

TEST_CASE("iso_partition: 90-state space splits 18/72") {
    auto s = enumerate_states(k2222);
    auto part = iso_partition(s, GraphKind::Bipartite);
    REQUIRE(part.num_classes() == 2);
    std::vector<std::size_t> sizes = part.class_sizes;
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{18, 72});
    // representatives carry their own class
    for (std::size_t c = 0; c < part.num_classes(); ++c)
        CHECK(part.class_of[part.representatives[c]] == c);
    std::size_t total = 0;
    for (auto sz : part.class_sizes) total += sz;
    CHECK(total == 90);
}

TEST_CASE("lumpability and projection on the 90-state switch chain") {
    auto s = enumerate_states(k2222);
    auto p = switch_matrix(s, GraphKind::Bipartite);
    auto part = iso_partition(s, GraphKind::Bipartite);
    CHECK(check_lumpability(p, part) <= 1e-12);

    auto pbar = project(p, part);
    REQUIRE(pbar.dim == 2);
    check_stochastic(pbar);
    // identify the class of size 18
    std::size_t a = part.class_sizes[0] == 18 ? 0 : 1, b = 1 - a;
    CHECK(pbar.at(a, a) == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
    CHECK(pbar.at(a, b) == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
    CHECK(pbar.at(b, a) == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
    CHECK(pbar.at(b, b) == doctest::Approx(6.0 / 7.0).epsilon(1e-12));

    auto pi_bar = stationary_projected(pbar, part);
    CHECK(pi_bar[a] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(pi_bar[b] == doctest::Approx(0.8).epsilon(1e-12));

    // singleton partition projects to the chain itself
    IsoPartition singletons;
    singletons.class_of.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        singletons.class_of[i] = i;
        singletons.class_sizes.push_back(1);
        singletons.representatives.push_back(i);
    }
    CHECK(check_lumpability(p, singletons) == 0.0);
    auto same = project(p, singletons);
    for (std::size_t i = 0; i < p.dim; ++i)
        for (std::size_t j = 0; j < p.dim; ++j) CHECK(same.at(i, j) == p.at(i, j));
}

TEST_CASE("project rejects a non-lumpable partition") {
    auto s = enumerate_states(k2222);
    auto p = switch_matrix(s, GraphKind::Bipartite);
    IsoPartition bad;
    bad.class_of.assign(s.size(), 1);
    bad.class_of[0] = 0;
    bad.class_sizes = {1, s.size() - 1};
    bad.representatives = {0, 1};
    CHECK(check_lumpability(p, bad) > 1e-6);
    CHECK_THROWS_AS(project(p, bad), Error);
}

TEST_CASE("stationary distributions") {
    auto s = enumerate_states(k2222);
    auto p = switch_matrix(s, GraphKind::Bipartite);
    auto pi = stationary(p);
    for (double v : pi) CHECK(v == doctest::Approx(1.0 / 90.0).epsilon(1e-12));

    TransitionMatrix not_ds(2);
    not_ds.at(0, 0) = 1.0;
    not_ds.at(1, 0) = 0.5;
    not_ds.at(1, 1) = 0.5;
    CHECK_THROWS_AS(stationary(not_ds), Error);
}

TEST_CASE("variation_distance") {
    CHECK(variation_distance({1, 0}, {0, 1}) == doctest::Approx(1.0));
    CHECK(variation_distance({0.5, 0.5}, {0.5, 0.5}) == doctest::Approx(0.0));
    CHECK(variation_distance({0.7, 0.3}, {0.5, 0.5}) == doctest::Approx(0.2));
    CHECK_THROWS_AS(variation_distance({1.0}, {0.5, 0.5}), Error);
}

TEST_CASE("project/lift distributions") {
    auto s = enumerate_states(k2222);
    auto part = iso_partition(s, GraphKind::Bipartite);
    Distribution one_point(s.size(), 0.0);
    one_point[0] = 1.0;
    auto bar = project_distribution(one_point, part);
    CHECK(bar[part.class_of[0]] == doctest::Approx(1.0));

    Distribution mu_bar(part.num_classes(), 0.0);
    mu_bar[0] = 1.0;
    auto lifted = lift_distribution(mu_bar, part);
    double total = 0.0;
    for (std::size_t x = 0; x < s.size(); ++x) {
        if (part.class_of[x] == 0)
            CHECK(lifted[x] == doctest::Approx(1.0 / part.class_sizes[0]).epsilon(1e-12));
        else
            CHECK(lifted[x] == 0.0);
        total += lifted[x];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    // lift then project is the identity on class distributions
    auto round = project_distribution(lifted, part);
    CHECK(round[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mixing times on the 90-state space") {
    auto s = enumerate_states(k2222);
    auto p = switch_matrix(s, GraphKind::Bipartite);
    auto part = iso_partition(s, GraphKind::Bipartite);
    auto pi = stationary(p);

    auto rep = mixing_time(p, pi, 0.001);
    CHECK(rep.tau == 28);
    CHECK(rep.per_start.size() == 90);
    for (auto t : rep.per_start) CHECK(t <= 28);
    // the trace is non-increasing and crosses eps exactly at tau
    CHECK(rep.distances[27] > 0.001);
    CHECK(rep.distances[28] <= 0.001);

    auto pbar = project(p, part);
    auto pi_bar = stationary_projected(pbar, part);
    auto rep_bar = mixing_time(pbar, pi_bar, 0.001);
    CHECK(rep_bar.tau == 6);

    auto rep_hat = mixing_time_lifted(p, part, pi, 0.001);
    CHECK(rep_hat.tau == 6);

    // lifted trace equals the projected trace step for step
    for (std::size_t t = 0; t <= 50 && t < rep_hat.distances.size() &&
                            t < rep_bar.distances.size();
         ++t)
        CHECK(std::abs(rep_hat.distances[t] - rep_bar.distances[t]) <= 1e-12);
}

TEST_CASE("mixing_time_lifted requires a uniform stationary distribution") {
    auto s = enumerate_states(k2222);
    auto p = switch_matrix(s, GraphKind::Bipartite);
    auto part = iso_partition(s, GraphKind::Bipartite);
    Distribution skew(s.size(), 1.0 / 90.0);
    skew[0] += 0.01;
    skew[1] -= 0.01;
    CHECK_THROWS_AS(mixing_time_lifted(p, part, skew, 0.001), Error);
}

TEST_CASE("spectral: hub-pair projected gap is 2/n") {
    for (int n = 2; n <= 8; ++n) {
        auto s = enumerate_states(family_hub_pair(n));
        auto p = switch_matrix(s, GraphKind::Bipartite);
        auto part = iso_partition(s, GraphKind::Bipartite);
        auto pbar = project(p, part);
        auto pi_bar = stationary_projected(pbar, part);
        auto spec = spectral(pbar, pi_bar);
        if (n == 2) {
            // merged single class: the 1 - 2/n = 0 eigenvalue is lumped away
            REQUIRE(spec.eigenvalues.size() == 1);
            CHECK(spec.gap == doctest::Approx(1.0).epsilon(1e-12));
            continue;
        }
        REQUIRE(spec.eigenvalues.size() == 2);
        CHECK(spec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(spec.eigenvalues[0] ==
              doctest::Approx(1.0 - 2.0 / n).epsilon(1e-10));
        CHECK(spec.gap == doctest::Approx(2.0 / n).epsilon(1e-10));
    }
}

TEST_CASE("spectral: identity chain and interlacing with the projection") {
    TransitionMatrix id(3);
    for (std::size_t i = 0; i < 3; ++i) id.at(i, i) = 1.0;
    auto spec = spectral(id, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(spec.lambda_star == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spec.gap == doctest::Approx(0.0).epsilon(1e-12));

    // projected eigenvalues are a subset of the original spectrum
    auto s = enumerate_states(k2222);
    auto p = switch_matrix(s, GraphKind::Bipartite);
    auto part = iso_partition(s, GraphKind::Bipartite);
    auto orig = spectral(p, stationary(p));
    auto pbar = project(p, part);
    auto proj = spectral(pbar, stationary_projected(pbar, part));
    for (double lam : proj.eigenvalues) {
        double best = 1e9;
        for (double mu : orig.eigenvalues) best = std::min(best, std::abs(lam - mu));
        CHECK(best <= 1e-8);
    }
    CHECK(orig.gap <= proj.gap + 1e-10);
}

TEST_CASE("state_graph_distance") {
    for (int l = 1; l <= 5; ++l) {
        auto k = family_double_star(l);
        auto s = enumerate_states(k);
        auto p = switch_matrix(s, GraphKind::Bipartite);
        // extreme states: first row takes the first l columns vs the last l
        BinaryMatrix g(2, 2 * l), h(2, 2 * l);
        for (int j = 0; j < l; ++j) {
            g.set(0, j, 1);
            g.set(1, l + j, 1);
            h.set(0, l + j, 1);
            h.set(1, j, 1);
        }
        CHECK(state_graph_distance(p, s.index_of(g), s.index_of(h)) ==
              static_cast<std::size_t>(l));
        CHECK(state_graph_distance(p, s.index_of(g), s.index_of(g)) == 0);
        // one curveball trade covers the whole space
        auto pcb = curveball_matrix(s, GraphKind::Bipartite);
        CHECK(state_graph_distance(pcb, s.index_of(g), s.index_of(h)) == 1);
    }

    // directed 3-cycles cannot reach each other under switches
    auto d = enumerate_states({GraphKind::DirectedSimple, {1, 1, 1}, {1, 1, 1}});
    REQUIRE(d.size() == 2);
    auto pd = switch_matrix(d, GraphKind::DirectedSimple);
    CHECK(state_graph_distance(pd, 0, 1) == kUnreachable);
    CHECK(pd.at(0, 0) == 1.0);
    CHECK(pd.at(1, 1) == 1.0);
}

TEST_CASE("families") {
    auto f1 = family_hub_pair(3);
    CHECK(f1.kind == GraphKind::Bipartite);
    CHECK(f1.rows == std::vector<int>{2, 2, 2});
    CHECK(f1.cols == std::vector<int>{2, 2, 1, 1});
    CHECK_THROWS_AS(family_hub_pair(1), Error);

    auto f2 = family_double_star(3);
    CHECK(f2.rows == std::vector<int>{3, 3});
    CHECK(f2.cols == std::vector<int>(6, 1));
    CHECK_THROWS_AS(family_double_star(0), Error);
}

TEST_CASE("verify_space passes on the 90-state space") {
    for (const auto& chk : verify_space(k2222, 20'000, 1'000'000, 3)) {
        INFO(chk.name, " deviation=", chk.deviation, " bound=", chk.bound);
        CHECK(chk.pass);
    }
}

TEST_CASE("verify_space passes on undirected and directed spaces") {
    for (const auto& chk :
         verify_space({GraphKind::UndirectedSimple, {2, 2, 3, 2, 1}, {}}, 10'000))
        CHECK(chk.pass);
    for (const auto& chk :
         verify_space({GraphKind::DirectedSimple, {1, 1, 1}, {1, 1, 1}}, 10'000))
        CHECK(chk.pass);
}
