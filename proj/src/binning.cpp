#include "macc/binning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "macc/errors.hpp"
#include "macc/info.hpp"

namespace macc {

void SimConfig::validate() const {
    if (n < 1) throw std::invalid_argument("block length n must be >= 1");
    if (trials < 1) throw std::invalid_argument("trial count must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("typicality epsilon must be positive");
    if (rate1 < 0.0 || rate2 < 0.0) throw std::invalid_argument("rates must be nonnegative");
}

const std::vector<int>& Codebook::x1_word(int w1) const {
    if (w1 < 1 || w1 > m1) throw std::out_of_range("w1 out of range [1, M1]");
    return x1_words[static_cast<std::size_t>(w1 - 1)];
}

const std::vector<int>& Codebook::v_word(int w2, int l) const {
    if (w2 < 1 || w2 > m2) throw std::out_of_range("w2 out of range [1, M2]");
    if (l < 1 || l > bin_size) throw std::out_of_range("l out of range [1, L]");
    return v_words[static_cast<std::size_t>(w2 - 1) * static_cast<std::size_t>(bin_size) +
                   static_cast<std::size_t>(l - 1)];
}

namespace {

// ceil(2^e) made integral; exponents that are zero up to float noise give 1.
std::int64_t ceil_pow2(double e) {
    if (e <= 1e-12) return 1;
    return static_cast<std::int64_t>(std::ceil(std::exp2(e) - 1e-9));
}

bool type_within(std::span<const int> word, std::span<const double> pmf, double eps) {
    std::vector<int> counts(pmf.size(), 0);
    for (int s : word) ++counts[static_cast<std::size_t>(s)];
    const double n = static_cast<double>(word.size());
    for (std::size_t k = 0; k < pmf.size(); ++k)
        if (std::abs(counts[k] / n - pmf[k]) > eps + 1e-12) return false;
    return true;
}

std::vector<int> draw_word(SplitMix64& rng, const CondPmf& rows, std::span<const int> u) {
    std::vector<int> word(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        word[i] = rng.categorical(rows.row(u[i]).probs());
    return word;
}

}  // namespace

Codebook generate_codebook(const MaccChannel& ch, const AuxInputPolicy& policy,
                           const SimConfig& cfg) {
    cfg.validate();
    const JointPmf joint = build_joint(ch, policy);
    const double leak = mutual_information(joint, {Axis::V}, {Axis::Y1}, {Axis::X1, Axis::U});

    Codebook cb;
    cb.n = cfg.n;
    cb.m1 = ceil_pow2(cfg.n * cfg.rate1);
    cb.m2 = ceil_pow2(cfg.n * cfg.rate2);
    cb.bin_size = ceil_pow2(cfg.n * leak);
    cb.rate1 = cfg.rate1;
    cb.rate2 = cfg.rate2;
    cb.rate3 = cfg.rate2 + leak;
    cb.policy = policy;
    cb.seed = cfg.seed;

    const std::int64_t words = cb.m1 * cb.m2 * cb.bin_size;
    if (words > kCodewordGuard)
        throw GuardError("codebook needs M1*M2*L = " + std::to_string(words) +
                         " codewords; guard is " + std::to_string(kCodewordGuard) +
                         " (reduce n or the rates)");

    // shared typical u; bounded rejection keeps tiny-n generation terminating
    SplitMix64 urng(stream_seed(cfg.seed, rng_domain::kCodebookU, 0));
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<int> u(static_cast<std::size_t>(cfg.n));
        for (auto& s : u) s = urng.categorical(policy.pU.probs());
        cb.u = std::move(u);
        if (type_within(cb.u, policy.pU.probs(), cfg.epsilon)) break;
        ++cb.u_resamples;
    }

    cb.x1_words.reserve(static_cast<std::size_t>(cb.m1));
    for (std::int64_t w1 = 1; w1 <= cb.m1; ++w1) {
        SplitMix64 rng(stream_seed(cfg.seed, rng_domain::kCodebookX1, static_cast<std::uint64_t>(w1)));
        cb.x1_words.push_back(draw_word(rng, policy.pX1givenU, cb.u));
    }
    cb.v_words.reserve(static_cast<std::size_t>(cb.m2 * cb.bin_size));
    for (std::int64_t j = 1; j <= cb.m2 * cb.bin_size; ++j) {
        SplitMix64 rng(stream_seed(cfg.seed, rng_domain::kCodebookV, static_cast<std::uint64_t>(j)));
        cb.v_words.push_back(draw_word(rng, policy.pVgivenU, cb.u));
    }

    cb.decode_ref = joint.marginal({Axis::U, Axis::V, Axis::X1, Axis::Y});
    return cb;
}

std::span<const int> encode_user1(const Codebook& cb, int w1) { return cb.x1_word(w1); }

std::pair<int, std::vector<int>> encode_user2(const Codebook& cb, int w2, SplitMix64& rng) {
    if (w2 < 1 || w2 > cb.m2) throw std::out_of_range("w2 out of range [1, M2]");
    const int l = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(cb.bin_size)));
    const std::vector<int>& v = cb.v_word(w2, l);
    std::vector<int> x2(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        x2[i] = rng.categorical(cb.policy.pX2givenV.row(v[i]).probs());
    return {l, std::move(x2)};
}

std::pair<std::vector<int>, std::vector<int>> transmit(const MaccChannel& ch,
                                                       std::span<const int> x1,
                                                       std::span<const int> x2, SplitMix64& rng) {
    if (x1.size() != x2.size()) throw std::invalid_argument("transmit: input length mismatch");
    std::vector<int> y(x1.size()), y1(x1.size());
    for (std::size_t i = 0; i < x1.size(); ++i) {
        if (x1[i] < 0 || x1[i] >= ch.nx1() || x2[i] < 0 || x2[i] >= ch.nx2())
            throw std::invalid_argument("transmit: symbol out of range");
        const int k = rng.categorical(ch.slice(x1[i], x2[i]));
        y[i] = k / ch.ny1();
        y1[i] = k % ch.ny1();
    }
    return {std::move(y), std::move(y1)};
}

DecodeResult typicality_decode(const Codebook& cb, std::span<const int> y, double epsilon) {
    if (static_cast<int>(y.size()) != cb.n)
        throw std::invalid_argument("decode: received length differs from block length");
    const auto& ref = cb.decode_ref;  // axes [U, V, X1, Y]
    const int nv = ref.sizes()[1], nx1 = ref.sizes()[2], ny = ref.sizes()[3];
    const std::span<const double> p = ref.mass();
    const double n = static_cast<double>(cb.n);

    std::vector<int> counts(p.size(), 0);
    DecodeResult out;
    for (int w1 = 1; w1 <= cb.m1; ++w1) {
        const std::vector<int>& x1w = cb.x1_word(w1);
        for (int w2 = 1; w2 <= cb.m2; ++w2) {
            bool pair_hit = false;
            for (int l = 1; l <= cb.bin_size && !pair_hit; ++l) {
                const std::vector<int>& vw = cb.v_word(w2, l);
                std::fill(counts.begin(), counts.end(), 0);
                for (int i = 0; i < cb.n; ++i) {
                    const std::size_t cell = static_cast<std::size_t>(
                        ((cb.u[static_cast<std::size_t>(i)] * nv + vw[static_cast<std::size_t>(i)]) * nx1 +
                         x1w[static_cast<std::size_t>(i)]) * ny +
                        y[static_cast<std::size_t>(i)]);
                    ++counts[cell];
                }
                bool typical = true;
                for (std::size_t c = 0; c < p.size(); ++c) {
                    if (std::abs(counts[c] / n - p[c]) > epsilon + 1e-12) {
                        typical = false;
                        break;
                    }
                }
                pair_hit = typical;
            }
            if (pair_hit) {
                if (!out.ok) {
                    out = {true, w1, w2};
                } else if (out.w1 != w1 || out.w2 != w2) {
                    return {};  // ambiguous: more than one distinct pair
                }
            }
        }
    }
    return out;
}

int count_x1_collisions(const Codebook& cb) {
    int collisions = 0;
    for (std::size_t i = 1; i < cb.x1_words.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (cb.x1_words[i] == cb.x1_words[j]) {
                ++collisions;
                break;
            }
    return collisions;
}

std::uint64_t codebook_digest(const Codebook& cb) {
    std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a over all symbols
    auto absorb = [&h](int v) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
        h *= 0x100000001B3ULL;
    };
    for (int s : cb.u) absorb(s);
    for (const auto& w : cb.x1_words)
        for (int s : w) absorb(s);
    for (const auto& w : cb.v_words)
        for (int s : w) absorb(s);
    return h;
}

SimStats run_error_trials(const MaccChannel& ch, const AuxInputPolicy& policy,
                          const SimConfig& cfg) {
    const Codebook cb = generate_codebook(ch, policy, cfg);
    std::vector<std::uint8_t> err(static_cast<std::size_t>(cfg.trials), 0);

    auto run_range = [&](int lo, int hi) {
        for (int t = lo; t < hi; ++t) {
            SplitMix64 rng(stream_seed(cfg.seed, rng_domain::kTrial, static_cast<std::uint64_t>(t)));
            const int w1 = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(cb.m1)));
            const int w2 = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(cb.m2)));
            const auto [l, x2] = encode_user2(cb, w2, rng);
            (void)l;
            const auto [y, y1] = transmit(ch, encode_user1(cb, w1), x2, rng);
            (void)y1;  // the deterministic encoder never sees y1
            const DecodeResult dec = typicality_decode(cb, y, cfg.epsilon);
            err[static_cast<std::size_t>(t)] = !(dec.ok && dec.w1 == w1 && dec.w2 == w2);
        }
    };

    // per-trial streams make the result independent of the thread split
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int workers = std::clamp(std::min(hw, cfg.trials), 1, 16);
    if (workers <= 1) {
        run_range(0, cfg.trials);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (cfg.trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int lo = w * chunk;
            const int hi = std::min(cfg.trials, lo + chunk);
            if (lo < hi) pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::int64_t errors = 0;
    for (std::uint8_t e : err) errors += e;
    const double pe = static_cast<double>(errors) / cfg.trials;

    SimStats stats;
    stats.pe_hat = pe;
    stats.pe_std_err = std::sqrt(pe * (1.0 - pe) / cfg.trials);
    stats.codeword_collisions = count_x1_collisions(cb);
    stats.u_resamples = cb.u_resamples;
    return stats;
}

SimStats exact_equivocation(const Codebook& cb, const MaccChannel& ch) {
    const int n = cb.n;
    const double log_terms = n * std::log2(static_cast<double>(ch.nx2())) +
                             n * std::log2(static_cast<double>(ch.ny1())) +
                             std::log2(static_cast<double>(cb.m1 * cb.m2 * cb.bin_size));
    if (log_terms > std::log2(kEquivocationTermGuard))
        throw GuardError("exact equivocation would enumerate ~2^" + std::to_string(log_terms) +
                         " terms; guard is 1e8 (reduce n or the alphabets)");

    // pY1[x1][x2][y1] = sum_y p(y, y1 | x1, x2)
    const int nx1 = ch.nx1(), nx2 = ch.nx2(), ny1 = ch.ny1();
    std::vector<double> pY1(static_cast<std::size_t>(nx1) * nx2 * ny1, 0.0);
    for (int a = 0; a < nx1; ++a)
        for (int b = 0; b < nx2; ++b)
            for (int y = 0; y < ch.ny(); ++y)
                for (int e = 0; e < ny1; ++e)
                    pY1[static_cast<std::size_t>((a * nx2 + b) * ny1 + e)] += ch.at(a, b, y, e);

    const std::int64_t m2 = cb.m2, L = cb.bin_size;
    const double weight = 1.0 / (static_cast<double>(cb.m1) * static_cast<double>(m2) *
                                 static_cast<double>(L));
    double total = 0.0, comp = 0.0;
    auto accumulate = [&](double term) {  // Kahan
        const double t = term - comp;
        const double s = total + t;
        comp = (s - total) - t;
        total = s;
    };

    std::vector<double> q;  // q[(j*n + i)*ny1 + e] = P(y1_i = e | v-word j, x1-word w1)
    std::vector<double> bin_mass(static_cast<std::size_t>(m2));
    std::vector<int> y1seq(static_cast<std::size_t>(n));
    for (int w1 = 1; w1 <= cb.m1; ++w1) {
        const std::vector<int>& x1w = cb.x1_word(w1);
        // per-symbol y1 law for every v word: the x2 sum collapses symbolwise
        q.assign(static_cast<std::size_t>(m2 * L) * n * ny1, 0.0);
        for (std::int64_t j = 0; j < m2 * L; ++j) {
            const std::vector<int>& vw = cb.v_words[static_cast<std::size_t>(j)];
            for (int i = 0; i < n; ++i) {
                const auto px2 = cb.policy.pX2givenV.row(vw[static_cast<std::size_t>(i)]).probs();
                for (int b = 0; b < nx2; ++b) {
                    const double pb = px2[static_cast<std::size_t>(b)];
                    if (pb == 0.0) continue;
                    for (int e = 0; e < ny1; ++e)
                        q[(static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)) * ny1 +
                          static_cast<std::size_t>(e)] +=
                            pb * pY1[static_cast<std::size_t>(
                                     (x1w[static_cast<std::size_t>(i)] * nx2 + b) * ny1 + e)];
                }
            }
        }

        std::fill(y1seq.begin(), y1seq.end(), 0);
        while (true) {
            double seq_total = 0.0;
            for (std::int64_t w2 = 0; w2 < m2; ++w2) {
                double s = 0.0;
                for (std::int64_t l = 0; l < L; ++l) {
                    const std::int64_t j = w2 * L + l;
                    double prod = 1.0;
                    for (int i = 0; i < n; ++i)
                        prod *= q[(static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)) * ny1 +
                                  static_cast<std::size_t>(y1seq[static_cast<std::size_t>(i)])];
                    s += prod;
                }
                bin_mass[static_cast<std::size_t>(w2)] = s;
                seq_total += s;
            }
            if (seq_total > 0.0) {
                for (std::int64_t w2 = 0; w2 < m2; ++w2) {
                    const double s = bin_mass[static_cast<std::size_t>(w2)];
                    if (s > 0.0) accumulate(weight * s * std::log2(seq_total / s));
                }
            }
            int i = n - 1;
            for (; i >= 0; --i) {
                if (++y1seq[static_cast<std::size_t>(i)] < ny1) break;
                y1seq[static_cast<std::size_t>(i)] = 0;
            }
            if (i < 0) break;
        }
    }

    SimStats stats;
    stats.equivocation_bits = std::max(total, 0.0);
    stats.equivocation_per_symbol = *stats.equivocation_bits / n;
    stats.codeword_collisions = count_x1_collisions(cb);
    stats.u_resamples = cb.u_resamples;
    return stats;
}

}  // namespace macc
