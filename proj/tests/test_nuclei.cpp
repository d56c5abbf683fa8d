#include <catch_amalgamated.hpp>

#include <kakeya/nuclei.hpp>

#include <algorithm>

using namespace kakeya;

namespace {

Plane make_plane(int q) {
    switch (q) {
        case 4: return Plane{Field(2, 2)};
        case 8: return Plane{Field(2, 3)};
        case 9: return Plane{Field(3, 2)};
        default: return Plane{Field(q, 1)};
    }
}

}  // namespace

TEST_CASE("every point of a hyperoval is an internal nucleus") {
    const Plane pl = make_plane(4);
    const PointSet hyper = canonical_hyperoval(pl);
    const auto nuclei = internal_nuclei(pl, hyper);
    CHECK(nuclei == hyper.indices());
}

TEST_CASE("conic plus outside point has exactly two internal nuclei") {
    for (int q : {3, 5, 7, 9}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        const PointSet omega = canonical_extremal_omega(pl);
        const auto nuclei = internal_nuclei(pl, omega);
        CHECK(nuclei.size() == 2);
        for (int n : nuclei) CHECK(omega.test(n));
    }
}

TEST_CASE("internal_nuclei rejects sets of the wrong size") {
    const Plane pl = make_plane(3);
    REQUIRE_THROWS_AS(internal_nuclei(pl, pl.empty_set()), std::invalid_argument);
}

TEST_CASE("dualizing a configuration yields a set with the base dual as nucleus") {
    for (int q : {3, 5, 7}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        const KakeyaConfig cfg = construct_oval_kakeya(pl);
        const PointSet omega = kakeya_to_omega(pl, cfg);
        REQUIRE(omega.count() == q + 2);
        const int n = pl.dual_point_of_line(cfg.base_line);
        REQUIRE(omega.test(n));
        const auto nuclei = internal_nuclei(pl, omega);
        CHECK(std::find(nuclei.begin(), nuclei.end(), n) != nuclei.end());

        // round trip back to the very same configuration
        const KakeyaConfig back = omega_to_kakeya(pl, omega, n);
        CHECK(back.base_line == cfg.base_line);
        CHECK(back.assigned == cfg.assigned);
    }
}

TEST_CASE("round trip also holds for random configurations when possible") {
    const Plane pl = make_plane(5);
    Rng rng(5150);
    for (int i = 0; i < 200; ++i) {
        const KakeyaConfig cfg = random_config(pl, rng);
        PointSet omega = pl.empty_set();
        bool repeats = false;
        omega.set(pl.dual_point_of_line(cfg.base_line));
        for (int l : cfg.assigned) {
            if (omega.test(pl.dual_point_of_line(l))) repeats = true;
            omega.set(pl.dual_point_of_line(l));
        }
        REQUIRE_FALSE(repeats);  // assigned lines of a valid config never repeat
        const PointSet viaLib = kakeya_to_omega(pl, cfg);
        CHECK(viaLib == omega);
        const KakeyaConfig back =
            omega_to_kakeya(pl, viaLib, pl.dual_point_of_line(cfg.base_line));
        CHECK(back.assigned == cfg.assigned);
    }
}

TEST_CASE("kakeya_to_omega guards repeated lines and non-nucleus duals") {
    const Plane pl = make_plane(3);
    KakeyaConfig cfg = construct_oval_kakeya(pl);
    cfg.assigned[0] = cfg.assigned[1];
    REQUIRE_THROWS(kakeya_to_omega(pl, cfg));  // rejected by validation or repeat guard

    const PointSet omega = canonical_extremal_omega(pl);
    int non_nucleus = -1;
    const auto nuclei = internal_nuclei(pl, omega);
    for (int p : omega.indices())
        if (std::find(nuclei.begin(), nuclei.end(), p) == nuclei.end()) { non_nucleus = p; break; }
    REQUIRE(non_nucleus >= 0);
    REQUIRE_THROWS_AS(omega_to_kakeya(pl, omega, non_nucleus), std::invalid_argument);
    REQUIRE_THROWS_AS(omega_to_kakeya(pl, omega, pl.size() - 1), std::invalid_argument);
}

TEST_CASE("intersecting line count equals the size plus q plus one") {
    for (int q : {3, 4, 5, 7}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        const KakeyaConfig cfg =
            q % 2 == 0 ? construct_hyperoval_kakeya(pl) : construct_oval_kakeya(pl);
        const PointSet omega = kakeya_to_omega(pl, cfg);
        const int size = realize(pl, cfg).size;
        CHECK(intersecting_line_count(pl, omega) == size + q + 1);
    }
}

TEST_CASE("exhaustive five-point sweep at q = 3 never sees three nuclei") {
    const Plane pl = make_plane(3);
    NucleiSweepOptions opt;
    opt.exhaustive = true;
    const NucleiSweepReport rep = nuclei_sweep(pl, opt);
    CHECK(rep.mode == "exhaustive");
    CHECK(rep.sets_checked == 1287);  // C(13, 5)
    CHECK(rep.max_nuclei == 2);
    CHECK(rep.witness.size() == 5);
}

TEST_CASE("sampled sweeps are deterministic and worker-count independent") {
    const Plane pl = make_plane(5);
    NucleiSweepOptions opt;
    opt.exhaustive = false;
    opt.samples = 2000;
    opt.seed = 42;
    const NucleiSweepReport a = nuclei_sweep(pl, opt);
    CHECK(a.mode == "random");
    CHECK(a.sets_checked == 2000);
    CHECK(a.max_nuclei <= 2);

    const NucleiSweepReport b = nuclei_sweep(pl, opt);
    CHECK(a.witness == b.witness);
    CHECK(a.max_nuclei == b.max_nuclei);

    opt.workers = 4;
    const NucleiSweepReport c = nuclei_sweep(pl, opt);
    CHECK(a.witness == c.witness);
    CHECK(a.max_nuclei == c.max_nuclei);
}

TEST_CASE("nuclei sweep rejects even q") {
    REQUIRE_THROWS_AS(nuclei_sweep(make_plane(4)), std::invalid_argument);
}
