#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace kakeya {

/// Exact binomial coefficient; arguments stay small enough that the
/// intermediate products fit in 64 bits.
inline long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

/// Deterministic RNG used throughout: a fixed engine plus rejection
/// sampling so that a given seed produces the same stream on every
/// platform and build.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform draw from [0, n), unbiased via rejection.
    std::uint64_t bounded(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("bounded: empty range");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = eng_();
        while (x >= limit) x = eng_();
        return x % n;
    }

private:
    std::mt19937_64 eng_;
};

/// Sorted k-subset of [0, n) drawn uniformly.
inline std::vector<int> random_combination(Rng& rng, int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("random_combination: bad k");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    // Floyd's algorithm: each accepted value is distinct by construction.
    for (int j = n - k; j < n; ++j) {
        int v = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(j) + 1));
        bool dup = false;
        for (int s : out) {
            if (s == v) { dup = true; break; }
        }
        out.push_back(dup ? j : v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Advance a sorted index combination to its lexicographic successor.
/// Returns false when c was the final combination.
inline bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[static_cast<std::size_t>(i)] < n - k + i) {
            ++c[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) {
                c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
            }
            return true;
        }
    }
    return false;
}

/// Run fn over a static partition of [0, total) into at most `workers`
/// contiguous chunks. Chunk boundaries depend only on (total, workers),
/// so any per-chunk accumulation merges deterministically.
inline void parallel_chunks(std::size_t total, int workers,
                            const std::function<void(int, std::size_t, std::size_t)>& fn) {
    if (workers < 1) workers = 1;
    const std::size_t nchunks =
        std::min<std::size_t>(static_cast<std::size_t>(workers), total == 0 ? 1 : total);
    std::vector<std::size_t> lo(nchunks + 1, 0);
    for (std::size_t c = 0; c <= nchunks; ++c) lo[c] = total * c / nchunks;
    if (nchunks == 1) {
        fn(0, 0, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nchunks);
    for (std::size_t c = 0; c < nchunks; ++c) {
        pool.emplace_back([&, c] { fn(static_cast<int>(c), lo[c], lo[c + 1]); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace kakeya
