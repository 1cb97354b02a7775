#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "gsu/chains.hpp"
#include "gsu/graphcore.hpp"

namespace gsu {

/// All states with the given margins, in lexicographic row-major
/// bit-string order, with an index keyed by the canonical byte encoding.
struct StateSpace {
    DegreeSequence k;
    std::vector<BinaryMatrix> states;
    std::unordered_map<std::string, std::size_t> index;

    std::size_t size() const { return states.size(); }
    std::size_t index_of(const BinaryMatrix& a) const;
};

StateSpace enumerate_states(const DegreeSequence& k, std::size_t cap = 1'000'000);

/// Dense row-stochastic matrix over a StateSpace or over classes.
struct TransitionMatrix {
    std::size_t dim = 0;
    std::vector<double> entries; // row-major

    TransitionMatrix() = default;
    explicit TransitionMatrix(std::size_t d) : dim(d), entries(d * d, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
    double at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
};

/// Integer transition counts for the switch chain: every row shares the
/// common denominator C(m,2) (undirected: 2*C(m,2)), so probabilities can
/// be cross-checked in exact arithmetic.
struct TransitionCounts {
    std::size_t dim = 0;
    std::int64_t denominator = 1;
    std::vector<std::int64_t> counts; // row-major

    std::int64_t at(std::size_t i, std::size_t j) const { return counts[i * dim + j]; }
};

TransitionCounts switch_counts(const StateSpace& space, GraphKind kind);
TransitionMatrix switch_matrix(const StateSpace& space, GraphKind kind);
TransitionMatrix curveball_matrix(const StateSpace& space, GraphKind kind);

/// Quotient of a state space by degree-preserving isomorphism. Classes
/// are numbered by first occurrence in enumeration order.
struct IsoPartition {
    std::vector<std::size_t> class_of;
    std::vector<std::size_t> class_sizes;
    std::vector<std::size_t> representatives; // lowest state index per class

    std::size_t num_classes() const { return class_sizes.size(); }
};

IsoPartition iso_partition(const StateSpace& space, GraphKind kind);

/// Max over classes [y] and pairs x ~ x' of |P_{x[y]} - P_{x'[y]}|. The
/// chain is lumpable to the partition iff this is ~0.
double check_lumpability(const TransitionMatrix& p, const IsoPartition& part);

/// Projected chain Pbar[[x]][[y]] = P_{rep([x])[y]}. Throws NotLumpable
/// when check_lumpability exceeds `tol`.
TransitionMatrix project(const TransitionMatrix& p, const IsoPartition& part,
                         double tol = 1e-9);

using Distribution = std::vector<double>;

/// Stationary distribution of an original chain: verifies that P is
/// doubly stochastic (within 1e-12) and returns uniform.
Distribution stationary(const TransitionMatrix& p);

/// Stationary distribution of a projected chain: class sizes / |Omega|,
/// verified against detailed balance within 1e-12.
Distribution stationary_projected(const TransitionMatrix& pbar,
                                  const IsoPartition& part);

double variation_distance(const Distribution& mu, const Distribution& nu);

Distribution project_distribution(const Distribution& mu, const IsoPartition& part);
Distribution lift_distribution(const Distribution& mu_bar, const IsoPartition& part);

struct MixingReport {
    double epsilon = 0.0;
    std::size_t tau = 0;
    std::vector<std::size_t> per_start; // first-hit time per start
    std::vector<double> distances;      // max-over-starts d_V at t = 0, 1, ...
};

/// Exact mixing time: iterates mu <- mu P from every one-point start,
/// asserting the distance trace is non-increasing, and reports the max
/// first-hit time of d_V(mu, pi) <= eps.
MixingReport mixing_time(const TransitionMatrix& p, const Distribution& pi,
                         double eps, std::size_t iter_cap = 1'000'000);

/// Mixing time with class-uniform starts (the lift of each one-point
/// class distribution). Requires pi uniform; throws NonUniformPi
/// otherwise.
MixingReport mixing_time_lifted(const TransitionMatrix& p, const IsoPartition& part,
                                const Distribution& pi, double eps,
                                std::size_t iter_cap = 1'000'000);

struct SpectralSummary {
    std::vector<double> eigenvalues; // ascending
    double lambda_star = 0.0;        // max |lambda_i| below the top one
    double gap = 0.0;                // 1 - lambda_star
};

/// Eigenvalues of D^{1/2} P D^{-1/2} (D = diag(pi)) via cyclic Jacobi
/// rotations. Requires reversibility w.r.t. pi within 1e-10 and
/// dim <= 2000.
SpectralSummary spectral(const TransitionMatrix& p, const Distribution& pi);

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// BFS distance in the directed graph of off-diagonal positive entries;
/// kUnreachable when no path exists.
std::size_t state_graph_distance(const TransitionMatrix& p, std::size_t a,
                                 std::size_t b);

/// Bipartite family: n primary nodes of degree 2 against secondary
/// degrees (n-1, n-1, 1, 1). |Omega| = n(2n-1), two classes of sizes
/// n and 2n(n-1), projected switch gap 2/n.
DegreeSequence family_hub_pair(int n);

/// Bipartite family: two primary nodes of degree l against 2l secondary
/// nodes of degree 1. |Omega| = C(2l, l), a single isomorphism class.
DegreeSequence family_double_star(int l);

/// Structural self-checks for one degree sequence: lumpability,
/// reversibility, detailed balance, projection/lift identities, distance
/// dominance of the projected chain, and Monte Carlo one-step frequencies
/// against the exact matrices.
struct VerifyCheck {
    std::string name;
    double deviation = 0.0;
    double bound = 0.0;
    bool pass = false;
};

std::vector<VerifyCheck> verify_space(const DegreeSequence& k,
                                      std::size_t mc_trials = 1'000'000,
                                      std::size_t cap = 1'000'000,
                                      std::uint64_t seed = 1);

std::int64_t binomial(std::int64_t n, std::int64_t r);

} // namespace gsu
