#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gsu/graphcore.hpp"

namespace gsu {

enum class ChainKind { Switch, Curveball };

std::string to_string(ChainKind chain);
ChainKind chain_kind_from_string(const std::string& name);

/// Pinned generator: std::mt19937_64 with rejection-sampled bounded draws,
/// so trajectories are bit-exact across platforms for a fixed seed.
using Rng = std::mt19937_64;

/// Uniform draw from {0, ..., n-1} by rejection.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

/// Per-replica stream split: mixes (master seed, replica index) through
/// splitmix64 so replicas are decorrelated and reproducible.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t replica);

struct ChainConfig {
    ChainKind chain = ChainKind::Switch;
    std::uint64_t steps = 0;
    bool preprocess = false;
    std::uint64_t seed = 0;
};

/// Tradeable ones of a row pair: only_i holds the columns where
/// (row_i, row_j) = (1, 0), only_j the columns where it is (0, 1).
/// For directed states, columns row_i and row_j are excluded so trades
/// never touch the diagonal.
struct TradeContext {
    std::size_t row_i = 0;
    std::size_t row_j = 0;
    std::vector<std::size_t> only_i;
    std::vector<std::size_t> only_j;
};

TradeContext trade_context(const BinaryMatrix& a, std::size_t i, std::size_t j,
                           GraphKind kind);

/// One step of the switch chain. Draws an unordered pair of 1-entries
/// (bipartite/directed) or an unordered edge pair plus a rewiring
/// (undirected) uniformly; applies the switch when legal, otherwise
/// holds.
BinaryMatrix switch_step(const BinaryMatrix& a, GraphKind kind, Rng& rng);

/// One step of the Curveball chain: uniform row pair, then a uniform
/// reallocation of the tradeable ones (identity allocation included).
/// Undirected trades exclude columns i, j and are mirrored to keep the
/// matrix symmetric.
BinaryMatrix curveball_step(const BinaryMatrix& a, GraphKind kind, Rng& rng);

/// Uniform relabelling within equal-row-sum and equal-column-sum groups.
BinaryMatrix preprocess_bipartite(const BinaryMatrix& a, Rng& rng);

/// Uniform node relabelling within equal-degree classes, applied to rows
/// and columns simultaneously.
BinaryMatrix preprocess_graph(const BinaryMatrix& a, GraphKind kind, Rng& rng);

/// Kind dispatch for the two preprocessing variants.
BinaryMatrix preprocess_state(const BinaryMatrix& a, GraphKind kind, Rng& rng);

/// Optional preprocessing followed by cfg.steps kernel steps; the seed
/// fully determines the trajectory.
BinaryMatrix run_chain(const BinaryMatrix& start, const ChainConfig& cfg,
                       GraphKind kind);

/// `count` independent replicas from one realization of k; replica r uses
/// seed split_seed(cfg.seed, r).
std::vector<BinaryMatrix> sample(const DegreeSequence& k, std::uint64_t count,
                                 const ChainConfig& cfg);

} // namespace gsu
