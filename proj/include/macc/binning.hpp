#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "macc/joint.hpp"
#include "macc/rng.hpp"

namespace macc {

/// Cap on M1 * M2 * L for codebook generation.
inline constexpr std::int64_t kCodewordGuard = std::int64_t{1} << 20;

/// Cap on |X2|^n * |Y1|^n * M1 * M2 * L for exact equivocation.
inline constexpr double kEquivocationTermGuard = 1e8;

struct SimConfig {
    int n = 1;
    double rate1 = 0.0;  // R1, bits/use
    double rate2 = 0.0;  // R2, bits/use
    int trials = 1;
    double epsilon = 0.2;
    std::uint64_t seed = 1;

    void validate() const;
};

// Random binning codebook.  One u sequence shared by everyone; M1 codewords
// for user 1; M2 bins of L codewords each for user 2, indexed (w2, l) with
// messages 1-based.  L is ceil(2^(n * I(V;Y1|X1,U))) per the rate split
// R3 = R2 + I(V;Y1|X1,U).
struct Codebook {
    int n = 0;
    std::vector<int> u;
    std::vector<std::vector<int>> x1_words;  // M1 x n
    std::vector<std::vector<int>> v_words;   // (M2*L) x n, index (w2-1)*L + (l-1)
    std::int64_t m1 = 1;
    std::int64_t m2 = 1;
    std::int64_t bin_size = 1;  // L
    double rate1 = 0.0;
    double rate2 = 0.0;
    double rate3 = 0.0;
    AuxInputPolicy policy;
    std::uint64_t seed = 0;
    int u_resamples = 0;
    JointPmf decode_ref;  // p(u, x1, v, y) the decoder's typicality reference

    const std::vector<int>& x1_word(int w1) const;
    const std::vector<int>& v_word(int w2, int l) const;
};

struct SimStats {
    std::optional<double> pe_hat;
    std::optional<double> pe_std_err;
    std::optional<double> equivocation_bits;      // H(W2 | W1, Y1-block)
    std::optional<double> equivocation_per_symbol;
    int codeword_collisions = 0;  // x1 words equal to an earlier one
    int u_resamples = 0;
};

struct DecodeResult {
    bool ok = false;
    int w1 = 0;
    int w2 = 0;
};

Codebook generate_codebook(const MaccChannel& ch, const AuxInputPolicy& policy,
                           const SimConfig& cfg);

/// Deterministic encoder for user 1: plain codeword lookup.
std::span<const int> encode_user1(const Codebook& cb, int w1);

/// Stochastic encoder for user 2: uniform bin member, then per-symbol
/// channel-prefix draw p(x2|v).  Returns (l, x2 sequence).
std::pair<int, std::vector<int>> encode_user2(const Codebook& cb, int w2, SplitMix64& rng);

/// Per-symbol memoryless transmission; returns (y, y1) sequences.
std::pair<std::vector<int>, std::vector<int>> transmit(const MaccChannel& ch,
                                                       std::span<const int> x1,
                                                       std::span<const int> x2,
                                                       SplitMix64& rng);

// Strong-typicality decoder: accepts candidate (w1, w2, l) when the joint
// type of (u, x1(w1), v(w2,l), y) is within epsilon (L-inf) of the
// policy-induced joint; succeeds iff exactly one distinct (w1, w2) pair
// qualifies.
DecodeResult typicality_decode(const Codebook& cb, std::span<const int> y, double epsilon);

/// Monte Carlo error-probability run; deterministic in (cfg.seed, trials)
/// regardless of internal parallelism.
SimStats run_error_trials(const MaccChannel& ch, const AuxInputPolicy& policy,
                          const SimConfig& cfg);

/// Exact H(W2 | W1, Y1-block) by enumeration over y1 sequences (the x2-sum
/// factorizes per symbol).  Guarded by kEquivocationTermGuard on the naive
/// term count.
SimStats exact_equivocation(const Codebook& cb, const MaccChannel& ch);

/// Number of x1 codewords identical to an earlier one.
int count_x1_collisions(const Codebook& cb);

/// FNV-1a digest of (u, x1 words, v words) for determinism checks.
std::uint64_t codebook_digest(const Codebook& cb);

}  // namespace macc
