#include "gsu/graphcore.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gsu {

std::string to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::Bipartite: return "bipartite";
        case GraphKind::UndirectedSimple: return "undirected";
        case GraphKind::DirectedSimple: return "directed";
    }
    return "bipartite";
}

GraphKind graph_kind_from_string(const std::string& name) {
    if (name == "bipartite") return GraphKind::Bipartite;
    if (name == "undirected" || name == "undirected-simple") return GraphKind::UndirectedSimple;
    if (name == "directed" || name == "directed-simple") return GraphKind::DirectedSimple;
    throw Error(ErrorCode::InvalidArgument, "unknown graph kind: " + name);
}

std::vector<int> BinaryMatrix::row_sums() const {
    std::vector<int> r(n_rows_, 0);
    for (std::size_t i = 0; i < n_rows_; ++i)
        for (std::size_t j = 0; j < n_cols_; ++j) r[i] += get(i, j);
    return r;
}

std::vector<int> BinaryMatrix::col_sums() const {
    std::vector<int> c(n_cols_, 0);
    for (std::size_t i = 0; i < n_rows_; ++i)
        for (std::size_t j = 0; j < n_cols_; ++j) c[j] += get(i, j);
    return c;
}

std::string BinaryMatrix::key() const {
    std::string out;
    out.reserve(8 + bits_.size() / 8 + 1);
    auto push_u32 = [&out](std::uint32_t v) {
        for (int s = 0; s < 32; s += 8) out.push_back(static_cast<char>((v >> s) & 0xff));
    };
    push_u32(static_cast<std::uint32_t>(n_rows_));
    push_u32(static_cast<std::uint32_t>(n_cols_));
    std::uint8_t acc = 0;
    int nbits = 0;
    for (std::uint8_t b : bits_) {
        acc = static_cast<std::uint8_t>((acc << 1) | (b & 1));
        if (++nbits == 8) {
            out.push_back(static_cast<char>(acc));
            acc = 0;
            nbits = 0;
        }
    }
    if (nbits > 0) out.push_back(static_cast<char>(acc << (8 - nbits)));
    return out;
}

std::string BinaryMatrix::bit_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) s[i] = '1';
    return s;
}

namespace {

// Gale-Ryser: rows (sorted descending) realizable against cols iff
// sum(rows) == sum(cols) and for every t:
//   sum of t largest rows <= sum_j min(cols_j, t).
bool gale_ryser_feasible(std::vector<int> rows, const std::vector<int>& cols) {
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

// Erdos-Gallai for undirected simple graphs.
bool erdos_gallai_feasible(std::vector<int> deg) {
    std::sort(deg.begin(), deg.end(), std::greater<>());
    long long total = std::accumulate(deg.begin(), deg.end(), 0LL);
    if (total % 2 != 0) return false;
    long long lhs = 0;
    for (std::size_t t = 1; t <= deg.size(); ++t) {
        lhs += deg[t - 1];
        long long rhs = static_cast<long long>(t) * (t - 1);
        for (std::size_t j = t; j < deg.size(); ++j)
            rhs += std::min<long long>(deg[j], static_cast<long long>(t));
        if (lhs > rhs) return false;
    }
    return true;
}

// Fulkerson-Chen-Anstee for simple directed graphs (zero diagonal).
// Pairs (out_i, in_i) sorted lexicographically non-increasing; realizable
// iff sums match and for every t:
//   sum_{i<=t} out_i <= sum_{i<=t} min(in_i, t-1) + sum_{i>t} min(in_i, t).
bool fulkerson_feasible(const std::vector<int>& out, const std::vector<int>& in) {
    std::size_t n = out.size();
    std::vector<std::pair<int, int>> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = {out[i], in[i]};
    std::sort(p.begin(), p.end(), std::greater<>());
    long long lhs = 0;
    for (std::size_t t = 1; t <= n; ++t) {
        lhs += p[t - 1].first;
        long long rhs = 0;
        for (std::size_t i = 0; i < n; ++i)
            rhs += std::min<long long>(p[i].second,
                                       static_cast<long long>(i < t ? t - 1 : t));
        if (lhs > rhs) return false;
    }
    return true;
}

} // namespace

ValidationReport validate(const DegreeSequence& k) {
    auto fail = [](std::string why) { return ValidationReport{false, std::move(why)}; };
    for (int r : k.rows)
        if (r < 0) return fail("negative row degree");
    for (int c : k.cols)
        if (c < 0) return fail("negative column degree");
    long long rsum = std::accumulate(k.rows.begin(), k.rows.end(), 0LL);
    long long csum = std::accumulate(k.cols.begin(), k.cols.end(), 0LL);
    switch (k.kind) {
        case GraphKind::Bipartite: {
            if (rsum != csum) return fail("row sum != column sum");
            for (int r : k.rows)
                if (r > static_cast<int>(k.cols.size())) return fail("row degree exceeds number of columns");
            for (int c : k.cols)
                if (c > static_cast<int>(k.rows.size())) return fail("column degree exceeds number of rows");
            if (!gale_ryser_feasible(k.rows, k.cols)) return fail("Gale-Ryser condition violated");
            return {};
        }
        case GraphKind::UndirectedSimple: {
            if (!k.cols.empty()) return fail("undirected sequence must have empty cols");
            if (rsum % 2 != 0) return fail("degree sum is odd");
            for (int r : k.rows)
                if (r > static_cast<int>(k.rows.size()) - 1) return fail("degree exceeds n-1");
            if (!erdos_gallai_feasible(k.rows)) return fail("Erdos-Gallai condition violated");
            return {};
        }
        case GraphKind::DirectedSimple: {
            if (k.rows.size() != k.cols.size()) return fail("out/in sequences differ in length");
            if (rsum != csum) return fail("out-degree sum != in-degree sum");
            int n = static_cast<int>(k.rows.size());
            for (int r : k.rows)
                if (r > n - 1) return fail("out-degree exceeds n-1");
            for (int c : k.cols)
                if (c > n - 1) return fail("in-degree exceeds n-1");
            if (!fulkerson_feasible(k.rows, k.cols)) return fail("Fulkerson-Chen-Anstee condition violated");
            return {};
        }
    }
    return fail("unknown kind");
}

namespace {

BinaryMatrix realize_bipartite(const DegreeSequence& k) {
    std::size_t n = k.rows.size(), m = k.cols.size();
    BinaryMatrix a(n, m);
    std::vector<int> resid = k.cols;
    for (std::size_t i = 0; i < n; ++i) {
        // place this row's ones in the columns with largest residual demand
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&resid](std::size_t a_, std::size_t b_) { return resid[a_] > resid[b_]; });
        for (int t = 0; t < k.rows[i]; ++t) {
            std::size_t j = order[t];
            if (resid[j] <= 0) throw Error(ErrorCode::Infeasible, "greedy realization failed");
            a.set(i, j, 1);
            --resid[j];
        }
    }
    return a;
}

BinaryMatrix realize_undirected(const DegreeSequence& k) {
    std::size_t n = k.rows.size();
    BinaryMatrix a(n, n);
    std::vector<int> resid = k.rows;
    for (std::size_t round = 0; round < n; ++round) {
        auto it = std::max_element(resid.begin(), resid.end());
        if (*it == 0) break;
        std::size_t v = static_cast<std::size_t>(it - resid.begin());
        int need = resid[v];
        resid[v] = 0;
        std::vector<std::size_t> order;
        for (std::size_t u = 0; u < n; ++u)
            if (u != v && !a.get(v, u)) order.push_back(u);
        std::stable_sort(order.begin(), order.end(),
                         [&resid](std::size_t a_, std::size_t b_) { return resid[a_] > resid[b_]; });
        if (static_cast<int>(order.size()) < need || resid[order[need - 1]] <= 0)
            throw Error(ErrorCode::Infeasible, "Havel-Hakimi realization failed");
        for (int t = 0; t < need; ++t) {
            std::size_t u = order[t];
            a.set(v, u, 1);
            a.set(u, v, 1);
            --resid[u];
        }
    }
    for (int r : resid)
        if (r != 0) throw Error(ErrorCode::Infeasible, "Havel-Hakimi realization failed");
    return a;
}

BinaryMatrix realize_directed(const DegreeSequence& k) {
    std::size_t n = k.rows.size();
    BinaryMatrix a(n, n);
    std::vector<int> out = k.rows, in = k.cols;
    for (;;) {
        // node with largest remaining out-degree
        auto it = std::max_element(out.begin(), out.end());
        if (*it == 0) break;
        std::size_t v = static_cast<std::size_t>(it - out.begin());
        int need = out[v];
        out[v] = 0;
        std::vector<std::size_t> order;
        for (std::size_t u = 0; u < n; ++u)
            if (u != v) order.push_back(u);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a_, std::size_t b_) {
            return std::pair(in[a_], out[a_]) > std::pair(in[b_], out[b_]);
        });
        if (static_cast<int>(order.size()) < need || in[order[need - 1]] <= 0)
            throw Error(ErrorCode::Infeasible, "Kleitman-Wang realization failed");
        for (int t = 0; t < need; ++t) {
            std::size_t u = order[t];
            if (a.get(v, u)) throw Error(ErrorCode::Infeasible, "Kleitman-Wang realization failed");
            a.set(v, u, 1);
            --in[u];
        }
    }
    for (int c : in)
        if (c != 0) throw Error(ErrorCode::Infeasible, "Kleitman-Wang realization failed");
    return a;
}

} // namespace

BinaryMatrix realize(const DegreeSequence& k) {
    auto report = validate(k);
    if (!report.ok) throw Error(ErrorCode::Infeasible, report.violation);
    switch (k.kind) {
        case GraphKind::Bipartite: return realize_bipartite(k);
        case GraphKind::UndirectedSimple: return realize_undirected(k);
        case GraphKind::DirectedSimple: return realize_directed(k);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown kind");
}

namespace {

NodePartition group_by_key(const std::vector<std::pair<int, int>>& keys) {
    NodePartition part;
    std::vector<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        auto it = std::find(seen.begin(), seen.end(), keys[i]);
        if (it == seen.end()) {
            seen.push_back(keys[i]);
            part.groups.emplace_back();
            it = seen.end() - 1;
        }
        part.groups[static_cast<std::size_t>(it - seen.begin())].push_back(i);
    }
    return part;
}

} // namespace

std::pair<NodePartition, NodePartition> degree_groups(const DegreeSequence& k) {
    std::vector<std::pair<int, int>> row_keys, col_keys;
    switch (k.kind) {
        case GraphKind::Bipartite:
            for (int r : k.rows) row_keys.emplace_back(r, 0);
            for (int c : k.cols) col_keys.emplace_back(c, 0);
            break;
        case GraphKind::UndirectedSimple:
            for (int r : k.rows) row_keys.emplace_back(r, 0);
            break;
        case GraphKind::DirectedSimple:
            for (std::size_t i = 0; i < k.rows.size(); ++i)
                row_keys.emplace_back(k.rows[i], k.cols[i]);
            break;
    }
    return {group_by_key(row_keys), group_by_key(col_keys)};
}

BinaryMatrix apply_relabelling(const BinaryMatrix& a,
                               const std::vector<std::size_t>& rho,
                               const std::vector<std::size_t>& sigma) {
    if (rho.size() != a.n_rows() || sigma.size() != a.n_cols())
        throw Error(ErrorCode::DimensionMismatch, "permutation length mismatch");
    BinaryMatrix b(a.n_rows(), a.n_cols());
    for (std::size_t i = 0; i < a.n_rows(); ++i)
        for (std::size_t j = 0; j < a.n_cols(); ++j)
            b.set(i, j, a.get(rho[i], sigma[j]));
    return b;
}

namespace {

// Odometer over the product of within-group permutations. Each group's
// index list starts sorted; advance() steps to the next arrangement in
// lexicographic product order.
class GroupPermutations {
public:
    explicit GroupPermutations(const NodePartition& part, std::size_t n) : identity_(n) {
        std::iota(identity_.begin(), identity_.end(), std::size_t{0});
        for (const auto& g : part.groups)
            if (g.size() > 1) slots_.push_back(g);
        arrangement_ = slots_;
    }

    std::vector<std::size_t> current() const {
        std::vector<std::size_t> perm = identity_;
        for (std::size_t g = 0; g < slots_.size(); ++g)
            for (std::size_t t = 0; t < slots_[g].size(); ++t)
                perm[slots_[g][t]] = arrangement_[g][t];
        return perm;
    }

    bool advance() {
        for (std::size_t g = slots_.size(); g-- > 0;) {
            if (std::next_permutation(arrangement_[g].begin(), arrangement_[g].end()))
                return true;
            // wrapped; reset and carry
        }
        return false;
    }

private:
    std::vector<std::size_t> identity_;
    std::vector<std::vector<std::size_t>> slots_;
    std::vector<std::vector<std::size_t>> arrangement_;
};

// Given a fixed row order, the minimal row-major bit string over all
// within-group column arrangements sorts each group's columns by their
// column vector (read in row order), ascending.
BinaryMatrix best_under_row_order(const BinaryMatrix& a,
                                  const std::vector<std::size_t>& rho,
                                  const NodePartition& col_part) {
    std::size_t n = a.n_rows(), m = a.n_cols();
    std::vector<std::vector<std::uint8_t>> colvec(m, std::vector<std::uint8_t>(n));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i)
            colvec[j][i] = static_cast<std::uint8_t>(a.get(rho[i], j));
    std::vector<std::size_t> sigma(m);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    for (const auto& g : col_part.groups) {
        std::vector<std::size_t> cols = g;
        std::sort(cols.begin(), cols.end(),
                  [&colvec](std::size_t x, std::size_t y) { return colvec[x] < colvec[y]; });
        for (std::size_t t = 0; t < g.size(); ++t) sigma[g[t]] = cols[t];
    }
    BinaryMatrix b(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            b.set(i, j, colvec[sigma[j]][i]);
    return b;
}

BinaryMatrix canonical_bipartite(const BinaryMatrix& a, std::uint64_t cap) {
    DegreeSequence k{GraphKind::Bipartite, a.row_sums(), a.col_sums()};
    auto [row_part, col_part] = degree_groups(k);
    GroupPermutations rows(row_part, a.n_rows());
    BinaryMatrix best;
    std::uint64_t visited = 0;
    bool first = true;
    do {
        if (++visited > cap)
            throw Error(ErrorCode::SizeLimitExceeded, "canonical form search cap exceeded");
        BinaryMatrix cand = best_under_row_order(a, rows.current(), col_part);
        if (first || cand.bits() < best.bits()) {
            best = std::move(cand);
            first = false;
        }
    } while (rows.advance());
    return best;
}

BinaryMatrix canonical_square(const BinaryMatrix& a, GraphKind kind, std::uint64_t cap) {
    DegreeSequence k{kind, a.row_sums(), {}};
    if (kind == GraphKind::DirectedSimple) k.cols = a.col_sums();
    auto [node_part, unused] = degree_groups(k);
    (void)unused;
    GroupPermutations nodes(node_part, a.n_rows());
    BinaryMatrix best;
    std::uint64_t visited = 0;
    bool first = true;
    do {
        if (++visited > cap)
            throw Error(ErrorCode::SizeLimitExceeded, "canonical form search cap exceeded");
        auto perm = nodes.current();
        BinaryMatrix cand = apply_relabelling(a, perm, perm);
        if (first || cand.bits() < best.bits()) {
            best = std::move(cand);
            first = false;
        }
    } while (nodes.advance());
    return best;
}

} // namespace

BinaryMatrix canonical_form(const BinaryMatrix& a, GraphKind kind, std::uint64_t cap) {
    if (kind == GraphKind::Bipartite) return canonical_bipartite(a, cap);
    return canonical_square(a, kind, cap);
}

bool is_connected(const BinaryMatrix& a, GraphKind kind) {
    std::size_t n = a.n_rows(), m = a.n_cols();
    std::size_t total = (kind == GraphKind::Bipartite) ? n + m : n;
    if (total == 0) return true;
    std::vector<std::vector<std::size_t>> adj(total);
    if (kind == GraphKind::Bipartite) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (a.get(i, j)) {
                    adj[i].push_back(n + j);
                    adj[n + j].push_back(i);
                }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (a.get(i, j)) {
                    adj[i].push_back(j);
                    adj[j].push_back(i);
                }
    }
    std::vector<char> seen(total, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 0;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        ++count;
        for (std::size_t w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return count == total;
}

std::int64_t triangle_count(const BinaryMatrix& a, GraphKind kind) {
    if (kind != GraphKind::UndirectedSimple)
        throw Error(ErrorCode::InvalidArgument, "triangle_count requires an undirected state");
    std::size_t n = a.n_rows();
    std::int64_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!a.get(i, j)) continue;
            for (std::size_t k = j + 1; k < n; ++k)
                if (a.get(i, k) && a.get(j, k)) ++count;
        }
    return count;
}

std::string matrix_to_text(const BinaryMatrix& a, GraphKind kind) {
    std::ostringstream os;
    os << a.n_rows() << ' ' << a.n_cols() << ' ' << to_string(kind) << '\n';
    for (std::size_t i = 0; i < a.n_rows(); ++i) {
        for (std::size_t j = 0; j < a.n_cols(); ++j) {
            if (j) os << ' ';
            os << a.get(i, j);
        }
        os << '\n';
    }
    return os.str();
}

std::pair<BinaryMatrix, GraphKind> matrix_from_text(const std::string& text) {
    std::istringstream is(text);
    std::size_t n = 0, m = 0;
    std::string kind_name;
    if (!(is >> n >> m >> kind_name))
        throw Error(ErrorCode::Io, "bad matrix header; expected: n n' kind");
    GraphKind kind = graph_kind_from_string(kind_name);
    BinaryMatrix a(n, m);
    // rows may be spelled "1 0 1" or compactly "101"
    std::string tok;
    std::size_t filled = 0;
    const std::size_t total = n * m;
    while (filled < total) {
        if (!(is >> tok)) throw Error(ErrorCode::Io, "truncated matrix body");
        for (char ch : tok) {
            if (ch != '0' && ch != '1')
                throw Error(ErrorCode::Io, "bad matrix entry; expected 0 or 1");
            if (filled >= total) throw Error(ErrorCode::Io, "too many matrix entries");
            a.set(filled / m, filled % m, ch == '1' ? 1 : 0);
            ++filled;
        }
    }
    if (kind == GraphKind::UndirectedSimple || kind == GraphKind::DirectedSimple) {
        if (n != m) throw Error(ErrorCode::Io, "adjacency matrix must be square");
        for (std::size_t i = 0; i < n; ++i)
            if (a.get(i, i)) throw Error(ErrorCode::Io, "adjacency matrix must have zero diagonal");
    }
    if (kind == GraphKind::UndirectedSimple)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (a.get(i, j) != a.get(j, i))
                    throw Error(ErrorCode::Io, "undirected adjacency matrix must be symmetric");
    return {a, kind};
}

std::string degree_sequence_to_json(const DegreeSequence& k) {
    nlohmann::json j;
    j["kind"] = to_string(k.kind);
    j["rows"] = k.rows;
    j["cols"] = k.cols;
    return j.dump();
}

DegreeSequence degree_sequence_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Io, std::string("bad degree-sequence JSON: ") + e.what());
    }
    DegreeSequence k;
    try {
        k.kind = graph_kind_from_string(j.at("kind").get<std::string>());
        k.rows = j.at("rows").get<std::vector<int>>();
        if (j.contains("cols")) k.cols = j.at("cols").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Io, std::string("bad degree-sequence JSON: ") + e.what());
    }
    return k;
}

DegreeSequence degrees_of(const BinaryMatrix& a, GraphKind kind) {
    DegreeSequence k;
    k.kind = kind;
    k.rows = a.row_sums();
    if (kind != GraphKind::UndirectedSimple) k.cols = a.col_sums();
    return k;
}

} // namespace gsu
