#include "gsu/exactlab.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <numeric>

namespace gsu {

std::int64_t binomial(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    std::int64_t acc = 1;
    for (std::int64_t i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
    return acc;
}

std::size_t StateSpace::index_of(const BinaryMatrix& a) const {
    auto it = index.find(a.key());
    if (it == index.end())
        throw Error(ErrorCode::InvalidArgument, "state not in space");
    return it->second;
}

namespace {

bool gale_ryser_residual(std::vector<int> rows, const std::vector<int>& cols) {
    std::sort(rows.begin(), rows.end(), std::greater<>());
    long long lhs = 0;
    for (std::size_t t = 1; t <= rows.size(); ++t) {
        lhs += rows[t - 1];
        long long rhs = 0;
        for (int c : cols) rhs += std::min<long long>(c, static_cast<long long>(t));
        if (lhs > rhs) return false;
    }
    return true;
}

class BipartiteEnumerator {
public:
    BipartiteEnumerator(const DegreeSequence& k, std::size_t cap, std::vector<BinaryMatrix>& out)
        : k_(k), cap_(cap), out_(out),
          a_(k.rows.size(), k.cols.size()), resid_(k.cols) {}

    void run() { row(0); }

private:
    void row(std::size_t i) {
        if (i == k_.rows.size()) {
            if (out_.size() >= cap_)
                throw Error(ErrorCode::CapExceeded, "state space exceeds cap");
            out_.push_back(a_);
            return;
        }
        std::vector<int> rest(k_.rows.begin() + static_cast<std::ptrdiff_t>(i) + 1, k_.rows.end());
        cell(i, 0, k_.rows[i], rest);
    }

    void cell(std::size_t i, std::size_t j, int need, const std::vector<int>& rest) {
        std::size_t m = k_.cols.size();
        if (j == m) {
            if (need != 0) return;
            if (!gale_ryser_residual(rest, resid_)) return;
            row(i + 1);
            return;
        }
        // 0-first keeps enumeration in lexicographic bit-string order
        if (static_cast<int>(m - j) > need) cell(i, j + 1, need, rest);
        if (need > 0 && resid_[j] > 0) {
            a_.set(i, j, 1);
            --resid_[j];
            cell(i, j + 1, need - 1, rest);
            ++resid_[j];
            a_.set(i, j, 0);
        }
    }

    const DegreeSequence& k_;
    std::size_t cap_;
    std::vector<BinaryMatrix>& out_;
    BinaryMatrix a_;
    std::vector<int> resid_;
};

class UndirectedEnumerator {
public:
    UndirectedEnumerator(const DegreeSequence& k, std::size_t cap, std::vector<BinaryMatrix>& out)
        : cap_(cap), out_(out), n_(k.rows.size()),
          a_(k.rows.size(), k.rows.size()), resid_(k.rows) {}

    void run() { cell(0, 1); }

private:
    void cell(std::size_t i, std::size_t j) {
        if (j == n_) {
            if (resid_[i] != 0) return; // all of row i's edges are decided
            if (i + 2 >= n_) {
                for (std::size_t v = i + 1; v < n_; ++v)
                    if (resid_[v] != 0) return;
                if (out_.size() >= cap_)
                    throw Error(ErrorCode::CapExceeded, "state space exceeds cap");
                out_.push_back(a_);
                return;
            }
            cell(i + 1, i + 2);
            return;
        }
        if (static_cast<int>(n_ - j) > resid_[i]) cell(i, j + 1);
        if (resid_[i] > 0 && resid_[j] > 0) {
            a_.set(i, j, 1);
            a_.set(j, i, 1);
            --resid_[i];
            --resid_[j];
            cell(i, j + 1);
            ++resid_[i];
            ++resid_[j];
            a_.set(i, j, 0);
            a_.set(j, i, 0);
        }
    }

    std::size_t cap_;
    std::vector<BinaryMatrix>& out_;
    std::size_t n_;
    BinaryMatrix a_;
    std::vector<int> resid_;
};

class DirectedEnumerator {
public:
    DirectedEnumerator(const DegreeSequence& k, std::size_t cap, std::vector<BinaryMatrix>& out)
        : cap_(cap), out_(out), n_(k.rows.size()),
          a_(k.rows.size(), k.rows.size()), out_resid_(k.rows), in_resid_(k.cols) {}

    void run() { cell(0, 0); }

private:
    bool columns_feasible(std::size_t next_row) const {
        for (std::size_t j = 0; j < n_; ++j) {
            int avail = static_cast<int>(n_ - next_row) - (j >= next_row ? 1 : 0);
            if (in_resid_[j] > avail) return false;
        }
        return true;
    }

    void cell(std::size_t i, std::size_t j) {
        if (j == n_) {
            if (out_resid_[i] != 0) return;
            if (i + 1 == n_) {
                for (std::size_t v = 0; v < n_; ++v)
                    if (in_resid_[v] != 0) return;
                if (out_.size() >= cap_)
                    throw Error(ErrorCode::CapExceeded, "state space exceeds cap");
                out_.push_back(a_);
                return;
            }
            if (!columns_feasible(i + 1)) return;
            cell(i + 1, 0);
            return;
        }
        if (j == i) {
            cell(i, j + 1);
            return;
        }
        // cells still open after j in this row, never counting the diagonal
        int avail_after = static_cast<int>(n_ - j) - 1 - (i > j ? 1 : 0);
        if (avail_after >= out_resid_[i]) cell(i, j + 1);
        if (out_resid_[i] > 0 && in_resid_[j] > 0) {
            a_.set(i, j, 1);
            --out_resid_[i];
            --in_resid_[j];
            cell(i, j + 1);
            ++out_resid_[i];
            ++in_resid_[j];
            a_.set(i, j, 0);
        }
    }

    std::size_t cap_;
    std::vector<BinaryMatrix>& out_;
    std::size_t n_;
    BinaryMatrix a_;
    std::vector<int> out_resid_;
    std::vector<int> in_resid_;
};

} // namespace

StateSpace enumerate_states(const DegreeSequence& k, std::size_t cap) {
    auto report = validate(k);
    if (!report.ok) throw Error(ErrorCode::Infeasible, report.violation);
    StateSpace space;
    space.k = k;
    switch (k.kind) {
        case GraphKind::Bipartite:
            BipartiteEnumerator(k, cap, space.states).run();
            break;
        case GraphKind::UndirectedSimple:
            UndirectedEnumerator(k, cap, space.states).run();
            break;
        case GraphKind::DirectedSimple:
            DirectedEnumerator(k, cap, space.states).run();
            break;
    }
    for (std::size_t s = 0; s < space.states.size(); ++s) {
        auto [it, fresh] = space.index.emplace(space.states[s].key(), s);
        (void)it;
        assert(fresh);
    }
    return space;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> ones_of(const BinaryMatrix& a) {
    std::vector<std::pair<std::size_t, std::size_t>> ones;
    for (std::size_t i = 0; i < a.n_rows(); ++i)
        for (std::size_t j = 0; j < a.n_cols(); ++j)
            if (a.get(i, j)) ones.emplace_back(i, j);
    return ones;
}

std::vector<std::pair<std::size_t, std::size_t>> edges_of(const BinaryMatrix& a) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < a.n_rows(); ++i)
        for (std::size_t j = i + 1; j < a.n_cols(); ++j)
            if (a.get(i, j)) edges.emplace_back(i, j);
    return edges;
}

// target of one switch selection, or the state itself on a hold
std::size_t switch_target_entries(const StateSpace& space, const BinaryMatrix& a,
                                  std::size_t self, GraphKind kind,
                                  std::pair<std::size_t, std::size_t> e1,
                                  std::pair<std::size_t, std::size_t> e2) {
    auto [r1, c1] = e1;
    auto [r2, c2] = e2;
    if (r1 == r2 || c1 == c2) return self;
    if (a.get(r1, c2) || a.get(r2, c1)) return self;
    if (kind == GraphKind::DirectedSimple && (r1 == c2 || r2 == c1)) return self;
    BinaryMatrix b = a;
    b.set(r1, c1, 0);
    b.set(r2, c2, 0);
    b.set(r1, c2, 1);
    b.set(r2, c1, 1);
    return space.index_of(b);
}

std::size_t switch_target_undirected(const StateSpace& space, const BinaryMatrix& a,
                                     std::size_t self,
                                     std::pair<std::size_t, std::size_t> e1,
                                     std::pair<std::size_t, std::size_t> e2,
                                     bool crossed) {
    auto [u, v] = e1;
    auto [x, y] = e2;
    if (crossed) std::swap(x, y);
    if (u == x || u == y || v == x || v == y) return self;
    if (a.get(u, x) || a.get(v, y)) return self;
    BinaryMatrix b = a;
    b.set(u, v, 0); b.set(v, u, 0);
    b.set(x, y, 0); b.set(y, x, 0);
    b.set(u, x, 1); b.set(x, u, 1);
    b.set(v, y, 1); b.set(y, v, 1);
    return space.index_of(b);
}

} // namespace

TransitionCounts switch_counts(const StateSpace& space, GraphKind kind) {
    if (space.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty state space");
    TransitionCounts tc;
    tc.dim = space.size();
    tc.counts.assign(tc.dim * tc.dim, 0);
    if (kind == GraphKind::UndirectedSimple) {
        std::int64_t m = static_cast<std::int64_t>(edges_of(space.states[0]).size());
        tc.denominator = std::max<std::int64_t>(2 * binomial(m, 2), 1);
        for (std::size_t s = 0; s < tc.dim; ++s) {
            const auto& a = space.states[s];
            auto edges = edges_of(a);
            if (edges.size() < 2) {
                tc.counts[s * tc.dim + s] = tc.denominator;
                continue;
            }
            for (std::size_t p = 0; p < edges.size(); ++p)
                for (std::size_t q = p + 1; q < edges.size(); ++q)
                    for (bool crossed : {false, true}) {
                        std::size_t t = switch_target_undirected(space, a, s, edges[p], edges[q], crossed);
                        ++tc.counts[s * tc.dim + t];
                    }
        }
    } else {
        std::int64_t m = static_cast<std::int64_t>(ones_of(space.states[0]).size());
        tc.denominator = std::max<std::int64_t>(binomial(m, 2), 1);
        for (std::size_t s = 0; s < tc.dim; ++s) {
            const auto& a = space.states[s];
            auto ones = ones_of(a);
            if (ones.size() < 2) {
                tc.counts[s * tc.dim + s] = tc.denominator;
                continue;
            }
            for (std::size_t p = 0; p < ones.size(); ++p)
                for (std::size_t q = p + 1; q < ones.size(); ++q) {
                    std::size_t t = switch_target_entries(space, a, s, kind, ones[p], ones[q]);
                    ++tc.counts[s * tc.dim + t];
                }
        }
    }
    return tc;
}

TransitionMatrix switch_matrix(const StateSpace& space, GraphKind kind) {
    TransitionCounts tc = switch_counts(space, kind);
    TransitionMatrix p(tc.dim);
    for (std::size_t i = 0; i < tc.dim * tc.dim; ++i)
        p.entries[i] = static_cast<double>(tc.counts[i]) / static_cast<double>(tc.denominator);
    return p;
}

namespace {

// enumerate all s_i-subsets of the tradeable pool and accumulate targets
void accumulate_trades(const StateSpace& space, const BinaryMatrix& a, std::size_t self,
                       GraphKind kind, const TradeContext& ctx, double pair_weight,
                       TransitionMatrix& p) {
    std::size_t si = ctx.only_i.size(), sj = ctx.only_j.size();
    std::vector<std::size_t> pool = ctx.only_i;
    pool.insert(pool.end(), ctx.only_j.begin(), ctx.only_j.end());
    std::int64_t total = binomial(static_cast<std::int64_t>(si + sj), static_cast<std::int64_t>(si));
    double w = pair_weight / static_cast<double>(total);
    if (si + sj == 0 || si == 0 || sj == 0) {
        // single allocation: only the identity trade (or a forced full swap
        // when one side is empty, which is again the identity pool-wise)
        p.at(self, self) += pair_weight;
        return;
    }
    // lexicographic combinations over pool positions
    std::vector<std::size_t> comb(si);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    for (;;) {
        BinaryMatrix b = a;
        for (std::size_t c : pool) {
            b.set(ctx.row_i, c, 0);
            b.set(ctx.row_j, c, 1);
            if (kind == GraphKind::UndirectedSimple) {
                b.set(c, ctx.row_i, 0);
                b.set(c, ctx.row_j, 1);
            }
        }
        for (std::size_t t : comb) {
            std::size_t c = pool[t];
            b.set(ctx.row_i, c, 1);
            b.set(ctx.row_j, c, 0);
            if (kind == GraphKind::UndirectedSimple) {
                b.set(c, ctx.row_i, 1);
                b.set(c, ctx.row_j, 0);
            }
        }
        p.at(self, space.index_of(b)) += w;
        // advance combination
        std::size_t k = si;
        while (k > 0 && comb[k - 1] == pool.size() - si + (k - 1)) --k;
        if (k == 0) break;
        ++comb[k - 1];
        for (std::size_t t = k; t < si; ++t) comb[t] = comb[t - 1] + 1;
    }
}

} // namespace

TransitionMatrix curveball_matrix(const StateSpace& space, GraphKind kind) {
    if (space.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty state space");
    std::size_t n = space.states[0].n_rows();
    TransitionMatrix p(space.size());
    if (n < 2) {
        for (std::size_t s = 0; s < p.dim; ++s) p.at(s, s) = 1.0;
        return p;
    }
    double pair_weight = 1.0 / static_cast<double>(binomial(static_cast<std::int64_t>(n), 2));
    for (std::size_t s = 0; s < space.size(); ++s) {
        const auto& a = space.states[s];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                TradeContext ctx = trade_context(a, i, j, kind);
                accumulate_trades(space, a, s, kind, ctx, pair_weight, p);
            }
    }
    return p;
}

IsoPartition iso_partition(const StateSpace& space, GraphKind kind) {
    IsoPartition part;
    part.class_of.resize(space.size());
    std::unordered_map<std::string, std::size_t> classes;
    for (std::size_t s = 0; s < space.size(); ++s) {
        std::string key = canonical_form(space.states[s], kind).key();
        auto [it, fresh] = classes.emplace(key, classes.size());
        if (fresh) {
            part.class_sizes.push_back(0);
            part.representatives.push_back(s);
        }
        part.class_of[s] = it->second;
        ++part.class_sizes[it->second];
    }
    return part;
}

double check_lumpability(const TransitionMatrix& p, const IsoPartition& part) {
    std::size_t n = p.dim, c = part.num_classes();
    // per-state mass into each class
    std::vector<double> mass(n * c, 0.0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z)
            mass[x * c + part.class_of[z]] += p.at(x, z);
    double dev = 0.0;
    for (std::size_t cls = 0; cls < c; ++cls) {
        std::vector<double> lo(c, 2.0), hi(c, -1.0);
        for (std::size_t x = 0; x < n; ++x) {
            if (part.class_of[x] != cls) continue;
            for (std::size_t y = 0; y < c; ++y) {
                lo[y] = std::min(lo[y], mass[x * c + y]);
                hi[y] = std::max(hi[y], mass[x * c + y]);
            }
        }
        for (std::size_t y = 0; y < c; ++y)
            if (hi[y] >= 0.0) dev = std::max(dev, hi[y] - lo[y]);
    }
    return dev;
}

TransitionMatrix project(const TransitionMatrix& p, const IsoPartition& part, double tol) {
    double dev = check_lumpability(p, part);
    if (dev > tol)
        throw Error(ErrorCode::NotLumpable, "chain is not lumpable to the partition");
    std::size_t c = part.num_classes();
    TransitionMatrix pbar(c);
    for (std::size_t a = 0; a < c; ++a) {
        std::size_t rep = part.representatives[a];
        for (std::size_t z = 0; z < p.dim; ++z)
            pbar.at(a, part.class_of[z]) += p.at(rep, z);
    }
    return pbar;
}

Distribution stationary(const TransitionMatrix& p) {
    for (std::size_t i = 0; i < p.dim; ++i) {
        double rsum = 0.0, csum = 0.0;
        for (std::size_t j = 0; j < p.dim; ++j) {
            rsum += p.at(i, j);
            csum += p.at(j, i);
        }
        if (std::abs(rsum - 1.0) > 1e-12 || std::abs(csum - 1.0) > 1e-12)
            throw Error(ErrorCode::VerificationFailed, "transition matrix is not doubly stochastic");
    }
    return Distribution(p.dim, 1.0 / static_cast<double>(p.dim));
}

Distribution stationary_projected(const TransitionMatrix& pbar, const IsoPartition& part) {
    if (pbar.dim != part.num_classes())
        throw Error(ErrorCode::DimensionMismatch, "partition does not match projected matrix");
    std::size_t total = std::accumulate(part.class_sizes.begin(), part.class_sizes.end(), std::size_t{0});
    Distribution pi(pbar.dim);
    for (std::size_t a = 0; a < pbar.dim; ++a)
        pi[a] = static_cast<double>(part.class_sizes[a]) / static_cast<double>(total);
    for (std::size_t a = 0; a < pbar.dim; ++a)
        for (std::size_t b = 0; b < pbar.dim; ++b)
            if (std::abs(pi[a] * pbar.at(a, b) - pi[b] * pbar.at(b, a)) > 1e-12)
                throw Error(ErrorCode::VerificationFailed, "projected chain violates detailed balance");
    return pi;
}

double variation_distance(const Distribution& mu, const Distribution& nu) {
    if (mu.size() != nu.size())
        throw Error(ErrorCode::DimensionMismatch, "distributions differ in dimension");
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) acc += std::abs(mu[i] - nu[i]);
    return acc / 2.0;
}

Distribution project_distribution(const Distribution& mu, const IsoPartition& part) {
    if (mu.size() != part.class_of.size())
        throw Error(ErrorCode::DimensionMismatch, "distribution does not match partition");
    Distribution out(part.num_classes(), 0.0);
    for (std::size_t x = 0; x < mu.size(); ++x) out[part.class_of[x]] += mu[x];
    return out;
}

Distribution lift_distribution(const Distribution& mu_bar, const IsoPartition& part) {
    if (mu_bar.size() != part.num_classes())
        throw Error(ErrorCode::DimensionMismatch, "distribution does not match partition");
    Distribution out(part.class_of.size(), 0.0);
    for (std::size_t x = 0; x < out.size(); ++x)
        out[x] = mu_bar[part.class_of[x]] / static_cast<double>(part.class_sizes[part.class_of[x]]);
    return out;
}

namespace {

Distribution step(const Distribution& mu, const TransitionMatrix& p) {
    Distribution out(p.dim, 0.0);
    for (std::size_t x = 0; x < p.dim; ++x) {
        double w = mu[x];
        if (w == 0.0) continue;
        const double* row = &p.entries[x * p.dim];
        for (std::size_t y = 0; y < p.dim; ++y) out[y] += w * row[y];
    }
    return out;
}

MixingReport mixing_core(const TransitionMatrix& p, const Distribution& pi, double eps,
                         const std::vector<Distribution>& starts, std::size_t iter_cap) {
    MixingReport report;
    report.epsilon = eps;
    std::vector<std::vector<double>> traces(starts.size());
    for (std::size_t s = 0; s < starts.size(); ++s) {
        Distribution mu = starts[s];
        double d = variation_distance(mu, pi);
        traces[s].push_back(d);
        std::size_t t = 0;
        while (d > eps) {
            if (t >= iter_cap)
                throw Error(ErrorCode::NoConvergence, "mixing iteration cap exceeded");
            mu = step(mu, p);
            ++t;
            double dn = variation_distance(mu, pi);
            if (dn > d + 1e-13)
                throw Error(ErrorCode::VerificationFailed, "variation distance trace increased");
            d = dn;
            traces[s].push_back(d);
        }
        report.per_start.push_back(t);
    }
    report.tau = report.per_start.empty()
                     ? 0
                     : *std::max_element(report.per_start.begin(), report.per_start.end());
    // max-over-starts trace; a start that already hit eps keeps decaying, so
    // extend it past its own first hit where needed
    report.distances.assign(report.tau + 1, 0.0);
    for (std::size_t s = 0; s < starts.size(); ++s) {
        Distribution mu;
        for (std::size_t t = 0; t <= report.tau; ++t) {
            double d;
            if (t < traces[s].size()) {
                d = traces[s][t];
            } else {
                if (mu.empty()) {
                    mu = starts[s];
                    for (std::size_t u = 0; u < t; ++u) mu = step(mu, p);
                } else {
                    mu = step(mu, p);
                }
                d = variation_distance(mu, pi);
            }
            report.distances[t] = std::max(report.distances[t], d);
        }
    }
    return report;
}

} // namespace

MixingReport mixing_time(const TransitionMatrix& p, const Distribution& pi, double eps,
                         std::size_t iter_cap) {
    std::vector<Distribution> starts(p.dim);
    for (std::size_t x = 0; x < p.dim; ++x) {
        starts[x].assign(p.dim, 0.0);
        starts[x][x] = 1.0;
    }
    return mixing_core(p, pi, eps, starts, iter_cap);
}

MixingReport mixing_time_lifted(const TransitionMatrix& p, const IsoPartition& part,
                                const Distribution& pi, double eps, std::size_t iter_cap) {
    for (double w : pi)
        if (std::abs(w - 1.0 / static_cast<double>(pi.size())) > 1e-12)
            throw Error(ErrorCode::NonUniformPi, "lifted mixing time requires uniform pi");
    std::vector<Distribution> starts;
    for (std::size_t c = 0; c < part.num_classes(); ++c) {
        Distribution one(part.num_classes(), 0.0);
        one[c] = 1.0;
        starts.push_back(lift_distribution(one, part));
    }
    return mixing_core(p, pi, eps, starts, iter_cap);
}

namespace {

// cyclic Jacobi sweeps on a symmetric matrix; returns eigenvalues ascending
std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
    auto off_norm = [&a, n]() {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) acc += 2.0 * a[i * n + j] * a[i * n + j];
        return std::sqrt(acc);
    };
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_norm() < 1e-12) break;
        if (sweep == max_sweeps - 1)
            throw Error(ErrorCode::NoConvergence, "Jacobi eigensolver did not converge");
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                double tau = s / (1.0 + c);
                double app = a[p * n + p], aqq = a[q * n + q];
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    double arp = a[r * n + p], arq = a[r * n + q];
                    a[r * n + p] = arp - s * (arq + tau * arp);
                    a[p * n + r] = a[r * n + p];
                    a[r * n + q] = arq + s * (arp - tau * arq);
                    a[q * n + r] = a[r * n + q];
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i * n + i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace

SpectralSummary spectral(const TransitionMatrix& p, const Distribution& pi) {
    if (p.dim != pi.size())
        throw Error(ErrorCode::DimensionMismatch, "pi does not match matrix dimension");
    if (p.dim > 2000)
        throw Error(ErrorCode::SizeLimitExceeded, "spectral limited to dim <= 2000");
    for (std::size_t i = 0; i < p.dim; ++i)
        for (std::size_t j = 0; j < p.dim; ++j)
            if (std::abs(pi[i] * p.at(i, j) - pi[j] * p.at(j, i)) > 1e-10)
                throw Error(ErrorCode::NotReversible, "chain is not reversible w.r.t. pi");
    // similarity transform D^{1/2} P D^{-1/2} is symmetric for reversible P
    std::vector<double> sym(p.dim * p.dim);
    for (std::size_t i = 0; i < p.dim; ++i)
        for (std::size_t j = 0; j < p.dim; ++j)
            sym[i * p.dim + j] = std::sqrt(pi[i] / pi[j]) * p.at(i, j);
    for (std::size_t i = 0; i < p.dim; ++i)
        for (std::size_t j = i + 1; j < p.dim; ++j) {
            double avg = (sym[i * p.dim + j] + sym[j * p.dim + i]) / 2.0;
            sym[i * p.dim + j] = avg;
            sym[j * p.dim + i] = avg;
        }
    SpectralSummary summary;
    summary.eigenvalues = jacobi_eigenvalues(std::move(sym), p.dim);
    for (double ev : summary.eigenvalues)
        if (std::abs(ev) > 1.0 + 1e-10)
            throw Error(ErrorCode::VerificationFailed, "eigenvalue outside [-1, 1]");
    summary.lambda_star = 0.0;
    // one top eigenvalue excluded; a single-state chain has lambda* = 0
    for (std::size_t i = 0; i + 1 < summary.eigenvalues.size(); ++i)
        summary.lambda_star = std::max(summary.lambda_star, std::abs(summary.eigenvalues[i]));
    summary.gap = 1.0 - summary.lambda_star;
    return summary;
}

std::size_t state_graph_distance(const TransitionMatrix& p, std::size_t a, std::size_t b) {
    if (a >= p.dim || b >= p.dim)
        throw Error(ErrorCode::InvalidArgument, "state index out of range");
    std::vector<std::size_t> dist(p.dim, kUnreachable);
    std::deque<std::size_t> queue{a};
    dist[a] = 0;
    while (!queue.empty()) {
        std::size_t x = queue.front();
        queue.pop_front();
        if (x == b) return dist[x];
        for (std::size_t y = 0; y < p.dim; ++y)
            if (y != x && p.at(x, y) > 0.0 && dist[y] == kUnreachable) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
    }
    return dist[b];
}

DegreeSequence family_hub_pair(int n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "family parameter must be >= 2");
    DegreeSequence k;
    k.kind = GraphKind::Bipartite;
    k.rows.assign(static_cast<std::size_t>(n), 2);
    k.cols = {n - 1, n - 1, 1, 1};
    return k;
}

DegreeSequence family_double_star(int l) {
    if (l < 1) throw Error(ErrorCode::InvalidArgument, "family parameter must be >= 1");
    DegreeSequence k;
    k.kind = GraphKind::Bipartite;
    k.rows = {l, l};
    k.cols.assign(static_cast<std::size_t>(2 * l), 1);
    return k;
}

namespace {

double matrix_symmetry_deviation(const TransitionMatrix& p) {
    double dev = 0.0;
    for (std::size_t i = 0; i < p.dim; ++i)
        for (std::size_t j = i + 1; j < p.dim; ++j)
            dev = std::max(dev, std::abs(p.at(i, j) - p.at(j, i)));
    return dev;
}

double detailed_balance_deviation(const TransitionMatrix& pbar, const Distribution& pi) {
    double dev = 0.0;
    for (std::size_t a = 0; a < pbar.dim; ++a)
        for (std::size_t b = 0; b < pbar.dim; ++b)
            dev = std::max(dev, std::abs(pi[a] * pbar.at(a, b) - pi[b] * pbar.at(b, a)));
    return dev;
}

// min over t of (max_x d_V(P^t_x, pi) - max_c d_V(Pbar^t_c, pibar));
// Lemma-style dominance holds when this is >= 0
double dominance_margin(const TransitionMatrix& p, const TransitionMatrix& pbar,
                        const IsoPartition& part, std::size_t t_max) {
    std::size_t n = p.dim, c = pbar.dim;
    Distribution pi(n, 1.0 / static_cast<double>(n));
    std::size_t total = std::accumulate(part.class_sizes.begin(), part.class_sizes.end(), std::size_t{0});
    Distribution pibar(c);
    for (std::size_t a = 0; a < c; ++a)
        pibar[a] = static_cast<double>(part.class_sizes[a]) / static_cast<double>(total);
    // iterate full matrix powers so every start is tracked at once
    std::vector<double> pow_p(n * n, 0.0), pow_pb(c * c, 0.0);
    for (std::size_t i = 0; i < n; ++i) pow_p[i * n + i] = 1.0;
    for (std::size_t i = 0; i < c; ++i) pow_pb[i * c + i] = 1.0;
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t <= t_max; ++t) {
        double maxd = 0.0, maxdbar = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            double acc = 0.0;
            for (std::size_t y = 0; y < n; ++y) acc += std::abs(pow_p[x * n + y] - pi[y]);
            maxd = std::max(maxd, acc / 2.0);
        }
        for (std::size_t x = 0; x < c; ++x) {
            double acc = 0.0;
            for (std::size_t y = 0; y < c; ++y) acc += std::abs(pow_pb[x * c + y] - pibar[y]);
            maxdbar = std::max(maxdbar, acc / 2.0);
        }
        margin = std::min(margin, maxd - maxdbar);
        if (maxd < 1e-13) break; // both traces are inside tolerance from here on
        if (t == t_max) break;
        std::vector<double> next(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k2 = 0; k2 < n; ++k2) {
                double w = pow_p[i * n + k2];
                if (w == 0.0) continue;
                for (std::size_t j = 0; j < n; ++j) next[i * n + j] += w * p.at(k2, j);
            }
        pow_p.swap(next);
        std::vector<double> nextb(c * c, 0.0);
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t k2 = 0; k2 < c; ++k2)
                for (std::size_t j = 0; j < c; ++j)
                    nextb[i * c + j] += pow_pb[i * c + k2] * pbar.at(k2, j);
        pow_pb.swap(nextb);
    }
    return margin;
}

double monte_carlo_deviation(const StateSpace& space, const TransitionMatrix& p,
                             ChainKind chain, GraphKind kind, std::size_t trials,
                             std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::size_t> hits(space.size(), 0);
    const BinaryMatrix& start = space.states[0];
    for (std::size_t t = 0; t < trials; ++t) {
        BinaryMatrix next = chain == ChainKind::Switch ? switch_step(start, kind, rng)
                                                       : curveball_step(start, kind, rng);
        ++hits[space.index_of(next)];
    }
    // worst excess over the 3-sigma multinomial band
    double dev = -std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < space.size(); ++y) {
        double prob = p.at(0, y);
        double freq = static_cast<double>(hits[y]) / static_cast<double>(trials);
        double sigma = std::sqrt(prob * (1.0 - prob) / static_cast<double>(trials));
        dev = std::max(dev, std::abs(freq - prob) - 3.0 * sigma);
    }
    return dev;
}

Rng::result_type mix_for(std::uint64_t seed, std::uint64_t salt) {
    return split_seed(seed, salt);
}

} // namespace

std::vector<VerifyCheck> verify_space(const DegreeSequence& k, std::size_t mc_trials,
                                      std::size_t cap, std::uint64_t seed) {
    StateSpace space = enumerate_states(k, cap);
    GraphKind kind = k.kind;
    IsoPartition part = iso_partition(space, kind);
    std::vector<VerifyCheck> checks;
    auto add = [&checks](std::string name, double dev, double bound) {
        checks.push_back({std::move(name), dev, bound, dev <= bound});
    };

    for (ChainKind chain : {ChainKind::Switch, ChainKind::Curveball}) {
        std::string tag = to_string(chain);
        TransitionMatrix p = chain == ChainKind::Switch ? switch_matrix(space, kind)
                                                        : curveball_matrix(space, kind);
        add(tag + " lumpability", check_lumpability(p, part), 1e-12);
        add(tag + " reversibility (symmetry)", matrix_symmetry_deviation(p), 1e-12);
        TransitionMatrix pbar = project(p, part);
        std::size_t total = space.size();
        Distribution pibar(part.num_classes());
        for (std::size_t a = 0; a < pibar.size(); ++a)
            pibar[a] = static_cast<double>(part.class_sizes[a]) / static_cast<double>(total);
        add(tag + " projected detailed balance", detailed_balance_deviation(pbar, pibar), 1e-12);

        std::size_t t_max = space.size() <= 300 ? 200 : 50;
        double margin = dominance_margin(p, pbar, part, t_max);
        add(tag + " projected distance dominance", -margin, 1e-12);

        // random-mu projection identity: project(mu P) == project(mu) Pbar
        Rng rng(mix_for(seed, chain == ChainKind::Switch ? 11 : 13));
        Distribution mu(space.size());
        double norm = 0.0;
        for (double& w : mu) {
            w = 1.0 + static_cast<double>(uniform_below(rng, 1000));
            norm += w;
        }
        for (double& w : mu) w /= norm;
        Distribution lhs = project_distribution(step(mu, p), part);
        Distribution rhs = step(project_distribution(mu, part), pbar);
        double dev = 0.0;
        for (std::size_t i = 0; i < lhs.size(); ++i) dev = std::max(dev, std::abs(lhs[i] - rhs[i]));
        add(tag + " projection identity", dev, 1e-12);

        // lift identity: lift(mubar) P == lift(mubar Pbar)  (uniform pi)
        Distribution mubar(part.num_classes());
        norm = 0.0;
        for (double& w : mubar) {
            w = 1.0 + static_cast<double>(uniform_below(rng, 1000));
            norm += w;
        }
        for (double& w : mubar) w /= norm;
        Distribution lhs2 = step(lift_distribution(mubar, part), p);
        Distribution rhs2 = lift_distribution(step(mubar, pbar), part);
        dev = 0.0;
        for (std::size_t i = 0; i < lhs2.size(); ++i) dev = std::max(dev, std::abs(lhs2[i] - rhs2[i]));
        add(tag + " lift identity", dev, 1e-12);

        if (mc_trials > 0)
            add(tag + " one-step Monte Carlo (3 sigma)",
                monte_carlo_deviation(space, p, chain, kind, mc_trials,
                                      mix_for(seed, chain == ChainKind::Switch ? 17 : 19)),
                1e-9);
    }
    return checks;
}

} // namespace gsu
