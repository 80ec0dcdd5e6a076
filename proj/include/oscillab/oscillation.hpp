#pragma once

#include <complex>
#include <limits>
#include <span>
#include <vector>

namespace oscillab {

using cplx = std::complex<double>;

/// Finite ordered list of complex scalars, the argument of every oscillation
/// statistic. Optional labels are strictly increasing integer indices; they
/// only matter for partition bookkeeping, the statistics are label-blind.
struct ComplexSequence {
    std::vector<cplx> values;
    std::vector<long> labels; // empty means 0..n-1

    ComplexSequence() = default;
    explicit ComplexSequence(std::vector<cplx> v) : values(std::move(v)) {}
    ComplexSequence(std::vector<cplx> v, std::vector<long> lab);

    std::size_t size() const { return values.size(); }
    long label(std::size_t i) const { return labels.empty() ? static_cast<long>(i) : labels[i]; }
};

/// Disjoint contiguous index intervals [lo, hi] (inclusive, label space)
/// covering the full index range of a sequence, in increasing order.
struct ScalePartition {
    struct Block {
        long lo = 0;
        long hi = 0;
    };
    std::vector<Block> blocks;

    /// Throws std::domain_error unless blocks are contiguous, increasing and
    /// exactly cover [first, last].
    void validate(long first, long last) const;
};

constexpr double variation_infinity = std::numeric_limits<double>::infinity();

/// Maximum number M of lambda-exceeding increments along any increasing
/// subsequence: strict "> lambda" comparisons, quadratic-time DP.
int jump_count(const ComplexSequence& seq, double lambda);
int jump_count(std::span<const cplx> values, double lambda);

/// r-variation for r in [1, inf]: sup over increasing subsequences of the
/// l^r norm of consecutive increments; r = variation_infinity gives the
/// diameter sup_{n != m} |a_n - a_m|.
double r_variation(const ComplexSequence& seq, double r);
double r_variation(std::span<const cplx> values, double r);

/// Dyadic block bound dominating the 2-variation: 2 * sum over block sizes
/// 2^m of the l^2 norm of the coarse-scale increments. Accepts lengths 2^n
/// and 2^n + 1; for length 2^n the top index is clamped to the last element
/// (equivalent to extending the sequence by its final value, which leaves
/// the 2-variation unchanged). Returns the bound; contract: >= r_variation(seq, 2).
double block_v2_bound(const ComplexSequence& seq);

struct SplitJumpBound {
    double lhs = 0.0; // lambda * N_lambda(full)^{1/2}
    double rhs = 0.0; // block term + endpoint term at altitude lambda/10
};

/// Both sides of the jump-count splitting bound for a partition of the index
/// range; the implicit constant is left to empirical fitting.
SplitJumpBound split_jump_bound(const ComplexSequence& seq, const ScalePartition& part,
                                double lambda);

} // namespace oscillab
