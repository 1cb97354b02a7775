#include "gsu/chains.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace gsu {

std::string to_string(ChainKind chain) {
    return chain == ChainKind::Switch ? "switch" : "curveball";
}

ChainKind chain_kind_from_string(const std::string& name) {
    if (name == "switch") return ChainKind::Switch;
    if (name == "curveball") return ChainKind::Curveball;
    throw Error(ErrorCode::InvalidArgument, "unknown chain: " + name);
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "uniform_below(0)");
    // rejection sampling; unbiased and generator-portable
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t replica) {
    // splitmix64 finalizer over the combined value
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (replica + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

#ifndef NDEBUG
bool valid_state(const BinaryMatrix& a, GraphKind kind) {
    if (kind == GraphKind::Bipartite) return true;
    if (a.n_rows() != a.n_cols()) return false;
    for (std::size_t i = 0; i < a.n_rows(); ++i) {
        if (a.get(i, i)) return false;
        if (kind == GraphKind::UndirectedSimple)
            for (std::size_t j = 0; j < a.n_cols(); ++j)
                if (a.get(i, j) != a.get(j, i)) return false;
    }
    return true;
}
#endif

std::vector<std::pair<std::size_t, std::size_t>> one_positions(const BinaryMatrix& a) {
    std::vector<std::pair<std::size_t, std::size_t>> ones;
    for (std::size_t i = 0; i < a.n_rows(); ++i)
        for (std::size_t j = 0; j < a.n_cols(); ++j)
            if (a.get(i, j)) ones.emplace_back(i, j);
    return ones;
}

// unordered pair {p, q}, p != q, uniform over C(n,2) pairs
std::pair<std::size_t, std::size_t> draw_pair(Rng& rng, std::size_t n) {
    std::size_t p = static_cast<std::size_t>(uniform_below(rng, n));
    std::size_t q = static_cast<std::size_t>(uniform_below(rng, n - 1));
    if (q >= p) ++q;
    if (p > q) std::swap(p, q);
    return {p, q};
}

BinaryMatrix switch_step_entries(const BinaryMatrix& a, GraphKind kind, Rng& rng) {
    auto ones = one_positions(a);
    if (ones.size() < 2) return a;
    auto [p, q] = draw_pair(rng, ones.size());
    auto [r1, c1] = ones[p];
    auto [r2, c2] = ones[q];
    if (r1 == r2 || c1 == c2) return a;
    if (a.get(r1, c2) || a.get(r2, c1)) return a;
    if (kind == GraphKind::DirectedSimple && (r1 == c2 || r2 == c1)) return a;
    BinaryMatrix b = a;
    b.set(r1, c1, 0);
    b.set(r2, c2, 0);
    b.set(r1, c2, 1);
    b.set(r2, c1, 1);
    return b;
}

BinaryMatrix switch_step_undirected(const BinaryMatrix& a, Rng& rng) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < a.n_rows(); ++i)
        for (std::size_t j = i + 1; j < a.n_cols(); ++j)
            if (a.get(i, j)) edges.emplace_back(i, j);
    if (edges.size() < 2) return a;
    auto [p, q] = draw_pair(rng, edges.size());
    auto [u, v] = edges[p];
    auto [x, y] = edges[q];
    // one of the two rewirings {u,x},{v,y} / {u,y},{v,x}
    if (uniform_below(rng, 2) == 1) std::swap(x, y);
    if (u == x || u == y || v == x || v == y) return a;
    if (a.get(u, x) || a.get(v, y)) return a;
    BinaryMatrix b = a;
    b.set(u, v, 0); b.set(v, u, 0);
    b.set(x, y, 0); b.set(y, x, 0);
    b.set(u, x, 1); b.set(x, u, 1);
    b.set(v, y, 1); b.set(y, v, 1);
    return b;
}

} // namespace

BinaryMatrix switch_step(const BinaryMatrix& a, GraphKind kind, Rng& rng) {
    assert(valid_state(a, kind));
    BinaryMatrix b = (kind == GraphKind::UndirectedSimple)
                         ? switch_step_undirected(a, rng)
                         : switch_step_entries(a, kind, rng);
    assert(b.row_sums() == a.row_sums() && b.col_sums() == a.col_sums());
    assert(valid_state(b, kind));
    return b;
}

TradeContext trade_context(const BinaryMatrix& a, std::size_t i, std::size_t j,
                           GraphKind kind) {
    TradeContext ctx;
    ctx.row_i = i;
    ctx.row_j = j;
    bool exclude_own = kind != GraphKind::Bipartite;
    for (std::size_t c = 0; c < a.n_cols(); ++c) {
        if (exclude_own && (c == i || c == j)) continue;
        int bi = a.get(i, c), bj = a.get(j, c);
        if (bi == 1 && bj == 0) ctx.only_i.push_back(c);
        if (bi == 0 && bj == 1) ctx.only_j.push_back(c);
    }
    return ctx;
}

namespace {

// Apply a trade outcome: row i receives ones exactly on `to_i` within the
// tradeable union, row j the complement. Mirrored for square symmetric
// states.
BinaryMatrix apply_trade(const BinaryMatrix& a, const TradeContext& ctx,
                         const std::vector<std::size_t>& to_i, GraphKind kind) {
    BinaryMatrix b = a;
    std::vector<std::size_t> pool = ctx.only_i;
    pool.insert(pool.end(), ctx.only_j.begin(), ctx.only_j.end());
    for (std::size_t c : pool) {
        bool give_i = std::find(to_i.begin(), to_i.end(), c) != to_i.end();
        b.set(ctx.row_i, c, give_i ? 1 : 0);
        b.set(ctx.row_j, c, give_i ? 0 : 1);
        if (kind == GraphKind::UndirectedSimple) {
            b.set(c, ctx.row_i, give_i ? 1 : 0);
            b.set(c, ctx.row_j, give_i ? 0 : 1);
        }
    }
    return b;
}

} // namespace

BinaryMatrix curveball_step(const BinaryMatrix& a, GraphKind kind, Rng& rng) {
    assert(valid_state(a, kind));
    if (a.n_rows() < 2)
        throw Error(ErrorCode::InvalidArgument, "curveball_step needs at least two rows");
    auto [i, j] = draw_pair(rng, a.n_rows());
    TradeContext ctx = trade_context(a, i, j, kind);
    std::size_t si = ctx.only_i.size(), sj = ctx.only_j.size();
    if (si + sj == 0) return a;
    // partial Fisher-Yates: uniform s_i-subset of the tradeable union
    std::vector<std::size_t> pool = ctx.only_i;
    pool.insert(pool.end(), ctx.only_j.begin(), ctx.only_j.end());
    for (std::size_t t = 0; t < si; ++t) {
        std::size_t r = t + static_cast<std::size_t>(uniform_below(rng, pool.size() - t));
        std::swap(pool[t], pool[r]);
    }
    std::vector<std::size_t> to_i(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(si));
    BinaryMatrix b = apply_trade(a, ctx, to_i, kind);
    assert(b.row_sums() == a.row_sums() && b.col_sums() == a.col_sums());
    assert(valid_state(b, kind));
    return b;
}

namespace {

// Fisher-Yates shuffle of each group, written into an identity permutation.
std::vector<std::size_t> shuffled_within_groups(const NodePartition& part,
                                                std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (const auto& g : part.groups) {
        std::vector<std::size_t> order = g;
        for (std::size_t t = order.size(); t > 1; --t) {
            std::size_t r = static_cast<std::size_t>(uniform_below(rng, t));
            std::swap(order[t - 1], order[r]);
        }
        for (std::size_t t = 0; t < g.size(); ++t) perm[g[t]] = order[t];
    }
    return perm;
}

} // namespace

BinaryMatrix preprocess_bipartite(const BinaryMatrix& a, Rng& rng) {
    auto [row_part, col_part] = degree_groups(degrees_of(a, GraphKind::Bipartite));
    auto rho = shuffled_within_groups(row_part, a.n_rows(), rng);
    auto sigma = shuffled_within_groups(col_part, a.n_cols(), rng);
    return apply_relabelling(a, rho, sigma);
}

BinaryMatrix preprocess_graph(const BinaryMatrix& a, GraphKind kind, Rng& rng) {
    if (kind == GraphKind::Bipartite)
        throw Error(ErrorCode::InvalidArgument, "preprocess_graph requires a square state");
    auto [node_part, unused] = degree_groups(degrees_of(a, kind));
    (void)unused;
    auto rho = shuffled_within_groups(node_part, a.n_rows(), rng);
    return apply_relabelling(a, rho, rho);
}

BinaryMatrix preprocess_state(const BinaryMatrix& a, GraphKind kind, Rng& rng) {
    return kind == GraphKind::Bipartite ? preprocess_bipartite(a, rng)
                                        : preprocess_graph(a, kind, rng);
}

BinaryMatrix run_chain(const BinaryMatrix& start, const ChainConfig& cfg, GraphKind kind) {
    Rng rng(cfg.seed);
    BinaryMatrix state = start;
    if (cfg.preprocess) state = preprocess_state(state, kind, rng);
    for (std::uint64_t t = 0; t < cfg.steps; ++t)
        state = cfg.chain == ChainKind::Switch ? switch_step(state, kind, rng)
                                               : curveball_step(state, kind, rng);
    return state;
}

std::vector<BinaryMatrix> sample(const DegreeSequence& k, std::uint64_t count,
                                 const ChainConfig& cfg) {
    BinaryMatrix start = realize(k);
    std::vector<BinaryMatrix> out;
    out.reserve(count);
    for (std::uint64_t r = 0; r < count; ++r) {
        ChainConfig replica = cfg;
        replica.seed = split_seed(cfg.seed, r);
        out.push_back(run_chain(start, replica, k.kind));
    }
    return out;
}

} // namespace gsu
