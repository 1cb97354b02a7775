#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gsu/error.hpp"

namespace gsu {

enum class GraphKind {
    Bipartite,        // n x n' bi-adjacency matrix
    UndirectedSimple, // symmetric adjacency matrix, zero diagonal
    DirectedSimple,   // adjacency matrix, zero diagonal
};

std::string to_string(GraphKind kind);
GraphKind graph_kind_from_string(const std::string& name);

/// Dense 0/1 matrix, row-major. Represents a bi-adjacency or adjacency
/// matrix depending on the GraphKind it is used with.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t n_rows, std::size_t n_cols)
        : n_rows_(n_rows), n_cols_(n_cols), bits_(n_rows * n_cols, 0) {}

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return n_cols_; }

    int get(std::size_t i, std::size_t j) const { return bits_[i * n_cols_ + j]; }
    void set(std::size_t i, std::size_t j, int v) { bits_[i * n_cols_ + j] = static_cast<std::uint8_t>(v); }

    const std::vector<std::uint8_t>& bits() const { return bits_; }

    std::vector<int> row_sums() const;
    std::vector<int> col_sums() const;

    /// Canonical byte encoding: (n_rows, n_cols, packed bits), used as a
    /// stable index key for state spaces.
    std::string key() const;

    /// Row-major bit string, e.g. "0110...". Also the sort order used for
    /// state enumeration.
    std::string bit_string() const;

    friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;
    friend auto operator<=>(const BinaryMatrix& a, const BinaryMatrix& b) {
        if (auto c = a.n_rows_ <=> b.n_rows_; c != 0) return c;
        if (auto c = a.n_cols_ <=> b.n_cols_; c != 0) return c;
        return a.bits_ <=> b.bits_;
    }

private:
    std::size_t n_rows_ = 0;
    std::size_t n_cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Typed degree sequence. For bipartite graphs rows/cols are the two
/// margins; for undirected graphs cols is empty; for directed graphs
/// rows are out-degrees and cols are in-degrees (same length).
struct DegreeSequence {
    GraphKind kind = GraphKind::Bipartite;
    std::vector<int> rows;
    std::vector<int> cols;
};

struct ValidationReport {
    bool ok = true;
    std::string violation; // empty iff ok
};

/// Partition of one side's indices into groups of equal degree.
struct NodePartition {
    std::vector<std::vector<std::size_t>> groups;
};

ValidationReport validate(const DegreeSequence& k);

/// Build one realization of the degree sequence. Greedy constructions:
/// Gale-Ryser for bipartite, Havel-Hakimi for undirected, Kleitman-Wang
/// for directed. Throws Infeasible when validate() fails.
BinaryMatrix realize(const DegreeSequence& k);

/// Groups of equal degree, in order of first occurrence of the degree
/// value. Directed nodes group by (out, in) pair; undirected sequences
/// get an empty column partition.
std::pair<NodePartition, NodePartition> degree_groups(const DegreeSequence& k);

/// B[i][j] = A[rho[i]][sigma[j]].
BinaryMatrix apply_relabelling(const BinaryMatrix& a,
                               const std::vector<std::size_t>& rho,
                               const std::vector<std::size_t>& sigma);

/// Lexicographically smallest row-major bit string over all
/// degree-preserving relabellings: equal canonical forms iff the states
/// are isomorphic (per-side permutations for bipartite, a single node
/// permutation otherwise). Search is limited to permutations within
/// equal-degree groups; throws SizeLimitExceeded past `cap` visited
/// arrangements.
BinaryMatrix canonical_form(const BinaryMatrix& a, GraphKind kind,
                            std::uint64_t cap = 10'000'000);

/// Single connected component in the undirected view; isolated nodes
/// count as separate components.
bool is_connected(const BinaryMatrix& a, GraphKind kind);

/// Number of node triples with all three edges present. Undirected only.
std::int64_t triangle_count(const BinaryMatrix& a, GraphKind kind);

// --- external text formats ---

/// "n n' kind" header line followed by n rows of 0/1 digits.
std::string matrix_to_text(const BinaryMatrix& a, GraphKind kind);
std::pair<BinaryMatrix, GraphKind> matrix_from_text(const std::string& text);

std::string degree_sequence_to_json(const DegreeSequence& k);
DegreeSequence degree_sequence_from_json(const std::string& text);

/// Margins of a state interpreted under `kind`.
DegreeSequence degrees_of(const BinaryMatrix& a, GraphKind kind);

} // namespace gsu
