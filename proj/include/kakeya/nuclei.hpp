#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kakeya.hpp"

namespace kakeya {

/// Internal nuclei of a (q+2)-set: the points P of the set such that every
/// line through P meets the set in exactly two points.
inline std::vector<int> internal_nuclei(const Plane& pl, const PointSet& omega) {
    if (omega.count() != pl.q() + 2)
        throw std::invalid_argument("internal_nuclei: set must have q + 2 points");
    std::vector<int> out;
    for (int p : omega.indices()) {
        bool ok = true;
        for (int l : pl.lines_through_point(p)) {
            if (count_and(pl.line_mask(l), omega) != 2) { ok = false; break; }
        }
        if (ok) out.push_back(p);
    }
    return out;
}

/// The dual (q+2)-set of a configuration: the duals of the base line and of
/// the q+1 assigned lines. The dual of the base line is always an internal
/// nucleus of the result.
inline PointSet kakeya_to_omega(const Plane& pl, const KakeyaConfig& cfg) {
    validate_config(pl, cfg);
    PointSet omega = pl.empty_set();
    omega.set(pl.dual_point_of_line(cfg.base_line));
    for (int l : cfg.assigned) {
        const int p = pl.dual_point_of_line(l);
        if (omega.test(p))
            throw std::invalid_argument("kakeya_to_omega: assigned lines repeat");
        omega.set(p);
    }
    bool nucleus = true;
    for (int l : pl.lines_through_point(pl.dual_point_of_line(cfg.base_line)))
        if (count_and(pl.line_mask(l), omega) != 2) { nucleus = false; break; }
    if (!nucleus) throw std::logic_error("kakeya_to_omega: base-line dual is not a nucleus");
    return omega;
}

/// Inverse direction: from a (q+2)-set with an internal nucleus N, rebuild
/// the configuration whose base line is the dual of N. Round-trips with
/// kakeya_to_omega exactly.
inline KakeyaConfig omega_to_kakeya(const Plane& pl, const PointSet& omega, int nucleus) {
    if (!omega.test(nucleus))
        throw std::invalid_argument("omega_to_kakeya: nucleus not in the set");
    for (int l : pl.lines_through_point(nucleus))
        if (count_and(pl.line_mask(l), omega) != 2)
            throw std::invalid_argument("omega_to_kakeya: point is not an internal nucleus");
    KakeyaConfig cfg;
    cfg.base_line = pl.dual_line_of_point(nucleus);
    for (int p : pl.points_on_line(cfg.base_line)) {
        const int g = pl.dual_line_of_point(p);  // line through the nucleus
        int other = -1;
        for (int x : pl.points_on_line(g))
            if (omega.test(x) && x != nucleus) { other = x; break; }
        cfg.assigned.push_back(pl.dual_line_of_point(other));
    }
    validate_config(pl, cfg);
    return cfg;
}

/// Lines meeting the set in at least one point. For the dual set of a
/// configuration this equals |K| + q + 1.
inline long long intersecting_line_count(const Plane& pl, const PointSet& omega) {
    long long c = 0;
    for (int l = 0; l < pl.size(); ++l)
        if (count_and(pl.line_mask(l), omega) > 0) ++c;
    return c;
}

struct NucleiSweepOptions {
    bool exhaustive = true;
    long long samples = 100000;   // random mode only
    std::uint64_t seed = 0;
    int workers = 1;
};

struct NucleiSweepReport {
    int q = 0;
    std::string mode;
    long long sets_checked = 0;
    int max_nuclei = 0;
    std::vector<int> witness;  // first set attaining the maximum
};

/// Sweep (q+2)-subsets of the plane (all of them, or a seeded sample) and
/// record the largest internal-nucleus count seen. For odd q the maximum
/// should never exceed 2.
inline NucleiSweepReport nuclei_sweep(const Plane& pl, const NucleiSweepOptions& opt = {}) {
    if (pl.q() % 2 == 0)
        throw std::invalid_argument("nuclei_sweep: q must be odd");
    const int k = pl.q() + 2;
    NucleiSweepReport rep;
    rep.q = pl.q();
    rep.mode = opt.exhaustive ? "exhaustive" : "random";

    std::vector<std::vector<int>> batch;
    if (opt.exhaustive) {
        const long long total = binomial(pl.size(), k);
        if (total > 3'000'000)
            throw std::invalid_argument("nuclei_sweep: exhaustive sweep too large");
        std::vector<int> comb(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
        do {
            batch.push_back(comb);
        } while (next_combination(comb, pl.size()));
    } else {
        Rng rng(opt.seed);
        for (long long s = 0; s < opt.samples; ++s)
            batch.push_back(random_combination(rng, pl.size(), k));
    }
    rep.sets_checked = static_cast<long long>(batch.size());

    struct Chunk { int max = -1; std::size_t first = 0; };
    std::vector<Chunk> chunks(static_cast<std::size_t>(std::max(opt.workers, 1)));
    parallel_chunks(batch.size(), opt.workers, [&](int c, std::size_t lo, std::size_t hi) {
        Chunk& ch = chunks[static_cast<std::size_t>(c)];
        PointSet mask = pl.empty_set();
        for (std::size_t i = lo; i < hi; ++i) {
            for (int p : batch[i]) mask.set(p);
            int nuclei = 0;
            for (int p : batch[i]) {
                bool ok = true;
                for (int l : pl.lines_through_point(p))
                    if (count_and(pl.line_mask(l), mask) != 2) { ok = false; break; }
                if (ok) ++nuclei;
            }
            if (nuclei > ch.max) {
                ch.max = nuclei;
                ch.first = i;
            }
            for (int p : batch[i]) mask.reset(p);
        }
    });
    int best = -1;
    std::size_t arg = 0;
    for (const Chunk& ch : chunks) {
        if (ch.max < 0) continue;
        if (ch.max > best || (ch.max == best && ch.first < arg)) {
            best = ch.max;
            arg = ch.first;
        }
    }
    rep.max_nuclei = best;
    rep.witness = batch[arg];
    return rep;
}

}  // namespace kakeya
