#include "oscillab/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oscillab {

ComplexSequence::ComplexSequence(std::vector<cplx> v, std::vector<long> lab)
    : values(std::move(v)), labels(std::move(lab)) {
    if (!labels.empty()) {
        if (labels.size() != values.size())
            throw std::domain_error("label/value length mismatch");
        for (std::size_t i = 1; i < labels.size(); ++i)
            if (labels[i] <= labels[i - 1])
                throw std::domain_error("labels must be strictly increasing");
    }
}

void ScalePartition::validate(long first, long last) const {
    if (blocks.empty()) throw std::domain_error("empty partition");
    if (blocks.front().lo != first || blocks.back().hi != last)
        throw std::domain_error("partition does not cover index range");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].lo > blocks[i].hi)
            throw std::domain_error("degenerate partition block");
        if (i > 0 && blocks[i].lo != blocks[i - 1].hi + 1)
            throw std::domain_error("partition blocks must be contiguous");
    }
}

namespace {

// Cheap O(n) upper bound for the diameter; lets us skip the quadratic DP
// when no pair of entries can possibly differ by more than lambda.
double bounding_span(std::span<const cplx> v) {
    double re_lo = v[0].real(), re_hi = v[0].real();
    double im_lo = v[0].imag(), im_hi = v[0].imag();
    for (const auto& z : v) {
        re_lo = std::min(re_lo, z.real());
        re_hi = std::max(re_hi, z.real());
        im_lo = std::min(im_lo, z.imag());
        im_hi = std::max(im_hi, z.imag());
    }
    return std::hypot(re_hi - re_lo, im_hi - im_lo);
}

} // namespace

int jump_count(std::span<const cplx> v, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("jump_count: lambda must be positive");
    const std::size_t n = v.size();
    if (n < 2) return 0;
    if (bounding_span(v) <= lambda) return 0;

    // chain[i] = most lambda-exceeding increments along any increasing
    // subsequence ending at i with *every* consecutive gap > lambda.
    // Greedy from the left is wrong ([5,0,10] at lambda=5 needs the 0->10 hop).
    std::vector<int> chain(n, 0);
    int best = 0;
    const double l2 = lambda * lambda;
    for (std::size_t i = 1; i < n; ++i) {
        int b = 0;
        for (std::size_t j = 0; j < i; ++j) {
            const cplx d = v[i] - v[j];
            if (d.real() * d.real() + d.imag() * d.imag() > l2)
                b = std::max(b, chain[j] + 1);
        }
        chain[i] = b;
        best = std::max(best, b);
    }
    return best;
}

int jump_count(const ComplexSequence& seq, double lambda) {
    return jump_count(std::span<const cplx>(seq.values), lambda);
}

double r_variation(std::span<const cplx> v, double r) {
    const bool inf = std::isinf(r);
    if (!inf && !(r >= 1.0)) throw std::domain_error("r_variation: need r >= 1");
    const std::size_t n = v.size();
    if (n < 2) return 0.0;

    if (inf) {
        // sup over pairs = diameter; every increment is itself a pair.
        double d2 = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const cplx d = v[j] - v[i];
                d2 = std::max(d2, d.real() * d.real() + d.imag() * d.imag());
            }
        return std::sqrt(d2);
    }

    // acc[i] = sup over increasing subsequences ending at i of sum |inc|^r;
    // r-th powers add over concatenation, so plain DP is exact.
    std::vector<double> acc(n, 0.0);
    double best = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        double b = 0.0;
        for (std::size_t j = 0; j < i; ++j)
            b = std::max(b, acc[j] + std::pow(std::abs(v[i] - v[j]), r));
        acc[i] = b;
        best = std::max(best, b);
    }
    return std::pow(best, 1.0 / r);
}

double r_variation(const ComplexSequence& seq, double r) {
    return r_variation(std::span<const cplx>(seq.values), r);
}

double block_v2_bound(const ComplexSequence& seq) {
    const std::size_t n = seq.size();
    if (n < 2) return 0.0;
    // Accept lengths 2^b + 1 (indices 0..2^b, the natural grid) and 2^b
    // (top index clamped onto the final element).
    std::size_t pts = 0;
    if (((n - 1) & (n - 2)) == 0 && n >= 3)
        pts = n - 1; // length 2^b + 1
    else if ((n & (n - 1)) == 0)
        pts = n; // length 2^b, clamp
    else
        throw std::domain_error("block_v2_bound: length must be 2^b or 2^b + 1");

    int b = 0;
    while ((std::size_t{1} << b) < pts) ++b;

    const std::size_t last = n - 1;
    double total = 0.0;
    for (int m = 0; m <= b; ++m) {
        const std::size_t step = std::size_t{1} << m;
        double sq = 0.0;
        for (std::size_t s = 0; s * step < pts; ++s) {
            const std::size_t lo = s * step;
            const std::size_t hi = std::min((s + 1) * step, last);
            const cplx d = seq.values[hi] - seq.values[lo];
            sq += d.real() * d.real() + d.imag() * d.imag();
        }
        total += std::sqrt(sq);
    }
    return 2.0 * total;
}

SplitJumpBound split_jump_bound(const ComplexSequence& seq, const ScalePartition& part,
                                double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("split_jump_bound: lambda must be positive");
    const std::size_t n = seq.size();
    if (n == 0) throw std::domain_error("split_jump_bound: empty sequence");
    part.validate(seq.label(0), seq.label(n - 1));

    SplitJumpBound out;
    out.lhs = lambda * std::sqrt(static_cast<double>(jump_count(seq, lambda)));

    const double mu = lambda / 10.0;
    double inner = 0.0;
    std::vector<cplx> endpoints;
    endpoints.reserve(part.blocks.size());
    std::size_t pos = 0;
    for (const auto& blk : part.blocks) {
        std::size_t lo = pos;
        while (pos < n && seq.label(pos) <= blk.hi) ++pos;
        // blocks may be empty in label space; skip them
        if (pos == lo) continue;
        std::span<const cplx> piece(seq.values.data() + lo, pos - lo);
        inner += lambda * lambda * static_cast<double>(jump_count(piece, mu));
        endpoints.push_back(seq.values[pos - 1]);
    }
    const double tail =
        lambda * std::sqrt(static_cast<double>(jump_count(std::span<const cplx>(endpoints), mu)));
    out.rhs = std::sqrt(inner) + tail;
    return out;
}

} // namespace oscillab
