// Command-line front end: reproducible experiments over the library modules
// with machine-readable JSON reports (CSV for spectrum tables only).
//
// Exit codes: 0 all checks passed, 1 a mathematical check failed,
// 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <kakeya/codes.hpp>
#include <kakeya/nuclei.hpp>
#include <kakeya/search.hpp>
#include <kakeya/segre.hpp>
#include <kakeya/serialize.hpp>
#include <kakeya/version.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;
using namespace kakeya;

struct CommonOpts {
    int q = 0;
    int p = 0;
    int t = 1;
    std::string out;
    std::string format = "json";
    int workers = 1;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--q", c.q, "field size q = p^t");
    sub->add_option("--p", c.p, "field characteristic (with --t)");
    sub->add_option("--t", c.t, "extension degree (with --p)");
    sub->add_option("--out", c.out, "write the report to this file instead of stdout");
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--workers", c.workers, "worker threads for parallel sweeps");
    sub->add_option("--seed", c.seed, "seed for randomized sweeps");
}

std::pair<int, int> factor_prime_power(int q) {
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    int p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) p = q;
    int t = 0;
    int m = q;
    while (m % p == 0) {
        m /= p;
        ++t;
    }
    if (m != 1) throw std::invalid_argument("q must be a prime power");
    return {p, t};
}

Field field_from(const CommonOpts& c) {
    if (c.q > 0) {
        const auto [p, t] = factor_prime_power(c.q);
        return Field(p, t);
    }
    if (c.p > 0) return Field(c.p, c.t);
    throw std::invalid_argument("a field is required: pass --q or --p/--t");
}

json provenance(const Field& f, std::uint64_t seed) {
    json j;
    j["p"] = f.p();
    j["t"] = f.t();
    j["q"] = f.q();
    j["version"] = kVersion;
    j["seed"] = seed;
    return j;
}

void emit(const std::string& text, const CommonOpts& c) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(c.out);
    if (!os) throw std::invalid_argument("cannot open output file: " + c.out);
    os << text;
}

void emit_json(json j, const json& prov, const CommonOpts& c) {
    if (c.format != "json")
        throw std::invalid_argument("csv output is only available for the spectrum command");
    j.update(prov);
    emit(j.dump(2) + "\n", c);
}

json read_input_json(const std::string& path) {
    if (path == "-") return json::parse(std::cin);
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open input file: " + path);
    return json::parse(is);
}

/// Loads a plane point set: the input geometry must be a plane over a
/// supported field. Returns the plane alongside the set.
std::pair<Plane, PointSet> load_plane_set(const std::string& path) {
    const PointSet s = point_set_from_json(read_input_json(path));
    if (s.geom().n != 2)
        throw std::invalid_argument("this command expects a plane point set (n = 2)");
    Plane pl{Field(s.geom().p, s.geom().t)};
    return {std::move(pl), s};
}

json config_to_json(const Plane& pl, const KakeyaConfig& cfg) {
    json j;
    j["base_line"] = cfg.base_line;
    j["assigned"] = cfg.assigned;
    j["points"] = point_set_to_json(realize(pl, cfg).points);
    return j;
}

// --- construct ---------------------------------------------------------------

int cmd_construct(const CommonOpts& c, const std::string& kind, int a_line, int apex) {
    const Field f = field_from(c);
    const Plane pl{f};
    KakeyaConfig cfg;
    if (kind == "hyperoval") {
        cfg = construct_hyperoval_kakeya(pl);
    } else if (kind == "oval") {
        cfg = a_line >= 0 ? construct_oval_kakeya(pl, a_line) : construct_oval_kakeya(pl);
    } else {
        cfg = construct_pencil_config(pl, apex >= 0 ? apex : pl.size() - 1);
    }
    const KakeyaAnalysis a = realize(pl, cfg);
    const IncidenceCheck chk = verify_incidence_formula(pl, cfg);

    json j;
    j["command"] = "construct";
    j["kind"] = kind;
    j["base_line"] = cfg.base_line;
    j["assigned"] = cfg.assigned;
    j["size"] = a.size;
    j["sigma"] = a.sigma;
    j["incidence"] = {{"holds", chk.holds},
                      {"expected", chk.expected},
                      {"mult_total", chk.mult_total}};
    j["points"] = point_set_to_json(a.points);
    emit_json(j, provenance(f, c.seed), c);
    return chk.holds ? 0 : 1;
}

// --- verify ------------------------------------------------------------------

int cmd_verify(const CommonOpts& c, const std::string& in) {
    const auto [pl, s] = load_plane_set(in);
    const auto cfg = as_kakeya_set(pl, s);
    json j;
    j["command"] = "verify";
    j["size"] = s.count();
    j["is_kakeya"] = cfg.has_value();
    if (cfg) {
        const IncidenceCheck chk = verify_incidence_formula(pl, *cfg);
        j["config"] = {{"base_line", cfg->base_line}, {"assigned", cfg->assigned}};
        j["incidence"] = {{"holds", chk.holds},
                          {"expected", chk.expected},
                          {"sigma", chk.sigma}};
    }
    emit_json(j, provenance(pl.field(), c.seed), c);
    return cfg.has_value() ? 0 : 1;
}

// --- spectrum ----------------------------------------------------------------

int cmd_spectrum(const CommonOpts& c, const std::string& in) {
    const auto [pl, s] = load_plane_set(in);
    const Spectrum sp = intersection_spectrum(pl, s);
    if (c.format == "csv") {
        std::ostringstream os;
        os << "secant_size,line_count\n";
        for (std::size_t i = 0; i < sp.a.size(); ++i) os << i << "," << sp.a[i] << "\n";
        emit(os.str(), c);
        return 0;
    }
    json j;
    j["command"] = "spectrum";
    j["size"] = s.count();
    j["spectrum"] = sp.a;
    j["lines_meeting"] = sp.lines_meeting;
    emit_json(j, provenance(pl.field(), c.seed), c);
    return 0;
}

// --- nuclei ------------------------------------------------------------------

int cmd_nuclei(const CommonOpts& c, const std::string& mode, long long samples) {
    const Field f = field_from(c);
    const Plane pl{f};
    NucleiSweepOptions opt;
    opt.exhaustive = (mode == "exhaustive");
    opt.samples = samples;
    opt.seed = c.seed;
    opt.workers = c.workers;
    const NucleiSweepReport rep = nuclei_sweep(pl, opt);
    json j;
    j["command"] = "nuclei";
    j["mode"] = rep.mode;
    j["sets_checked"] = rep.sets_checked;
    j["max_nuclei"] = rep.max_nuclei;
    j["witness"] = rep.witness;
    emit_json(j, provenance(f, c.seed), c);
    return rep.max_nuclei <= 2 ? 0 : 1;
}

// --- segre -------------------------------------------------------------------

int cmd_segre(const CommonOpts& c, const std::string& check, long long samples) {
    const Field f = field_from(c);
    const Plane pl{f};
    json j;
    j["command"] = "segre";
    j["check"] = check;
    bool all_hold = true;

    if (check == "mu-lambda") {
        const PointSet omega = canonical_extremal_omega(pl);
        json rows = json::array();
        for (const MuLambdaReport& rep : mu_lambda_survey(pl, omega)) {
            all_hold = all_hold && rep.holds;
            rows.push_back({{"u", rep.u},
                            {"lambda", rep.lambda},
                            {"mu", rep.mu},
                            {"holds", rep.holds}});
        }
        j["rows"] = rows;
    } else if (check == "conic-relation") {
        const ConicRelationReport rep = verify_conic_relation(pl, canonical_extremal_omega(pl));
        all_hold = rep.all_hold;
        json rows = json::array();
        for (const ConicRelationRow& row : rep.rows)
            rows.push_back({{"v", row.v},
                            {"a", row.a},
                            {"b", row.b},
                            {"nondegenerate", row.nondegenerate},
                            {"relation_holds", row.relation_holds},
                            {"lambda", row.lambda},
                            {"lambda_holds", row.lambda_holds},
                            {"trisecant_holds", row.trisecant_holds}});
        j["rows"] = rows;
    } else {  // triple-point
        Rng rng(c.seed);
        int max_exceptional = 0;
        for (long long trial = 0; trial < samples; ++trial) {
            const int base = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(pl.size())));
            const TriplePointReport rep = triple_point_census(pl, random_config(pl, rng, base));
            all_hold = all_hold && rep.holds;
            max_exceptional = std::max(max_exceptional, rep.exceptional);
        }
        j["samples"] = samples;
        j["max_exceptional"] = max_exceptional;
    }
    j["all_hold"] = all_hold;
    emit_json(j, provenance(f, c.seed), c);
    return all_hold ? 0 : 1;
}

// --- search-min --------------------------------------------------------------

int cmd_search_min(const CommonOpts& c, bool no_prune, bool symmetry, int incumbent,
                   int max_witnesses) {
    const Field f = field_from(c);
    const Plane pl{f};
    SearchOptions opt;
    opt.prune = !no_prune;
    opt.symmetry = symmetry;
    opt.workers = c.workers;
    if (incumbent > 0) opt.incumbent = incumbent;
    const SearchResult res = min_kakeya(pl, opt);

    json j;
    j["command"] = "search-min";
    j["k"] = res.min_size;
    j["exact"] = true;  // the bound is admissible, so pruning never loses the optimum
    j["nodes_visited"] = res.nodes;
    j["witness_count"] = res.witnesses.size();
    json ws = json::array();
    for (std::size_t i = 0; i < res.witnesses.size() && i < static_cast<std::size_t>(max_witnesses);
         ++i)
        ws.push_back(config_to_json(pl, res.witnesses[i]));
    j["witnesses"] = ws;
    j["formula"] = minimum_kakeya_size_formula(f.q());
    emit_json(j, provenance(f, c.seed), c);
    return res.min_size == minimum_kakeya_size_formula(f.q()) ? 0 : 1;
}

// --- bounds ------------------------------------------------------------------

int cmd_bounds(const CommonOpts& c, int exact) {
    const Field f = field_from(c);
    const BoundLadder lad = bound_ladder(f.q(), exact > 0 ? exact
                                                          : minimum_kakeya_size_formula(f.q()));
    json j;
    j["command"] = "bounds";
    j["base"] = lad.base;
    j["exact"] = *lad.exact;
    j["consistent"] = lad.consistent;
    json entries = json::array();
    for (const BoundEntry& e : lad.entries)
        entries.push_back({{"name", e.name},
                           {"excess_num", e.excess_num},
                           {"excess_den", e.excess_den},
                           {"effective", e.effective},
                           {"in_hypothesis", e.in_hypothesis}});
    j["entries"] = entries;
    emit_json(j, provenance(f, c.seed), c);
    return lad.consistent ? 0 : 1;
}

// --- dual-blocking -----------------------------------------------------------

int cmd_dual_blocking(const CommonOpts& c, const std::string& in) {
    if (!in.empty()) {
        const auto [pl, s] = load_plane_set(in);
        const BlockingReport rep = dual_blocking_check(pl, s);
        json j;
        j["command"] = "dual-blocking";
        j["size"] = s.count();
        j["is_blocking"] = rep.is_blocking;
        j["is_dual_blocking"] = rep.is_dual_blocking;
        j["method"] = rep.method;
        j["tag"] = to_string(rep.tag);
        if (rep.method == "exact") j["is_minimal"] = rep.is_minimal;
        emit_json(j, provenance(pl.field(), c.seed), c);
        return 0;
    }
    const Field f = field_from(c);
    const Plane pl{f};
    const DualBlockingCensus cz = minimal_dual_blocking_enumeration(pl);
    json j;
    j["command"] = "dual-blocking";
    j["blocking_count"] = cz.blocking_count;
    j["minimal_blocking_count"] = cz.minimal_blocking_count;
    j["minimal_blocking_min_size"] = cz.minimal_blocking_min_size;
    j["dual_blocking_count"] = cz.dual_blocking_count;
    j["dual_blocking_min_size"] = cz.dual_blocking_min_size;
    j["kakeya_count"] = cz.kakeya_count;
    j["two_line_count"] = cz.two_line_count;
    j["other_count"] = cz.other_count;
    j["odd_kakeya_floor"] = cz.odd_kakeya_floor;
    j["min_below_kakeya_floor"] = cz.min_below_kakeya_floor;
    json minimal = json::array();
    for (const BlockingReport& rep : cz.minimal)
        minimal.push_back({{"indices", rep.set.indices()}, {"tag", to_string(rep.tag)}});
    j["minimal"] = minimal;
    emit_json(j, provenance(f, c.seed), c);
    return (cz.kakeya_count == 0 && cz.other_count == 0) ? 0 : 1;
}

// --- rank-bound --------------------------------------------------------------

int cmd_rank_bound(const CommonOpts& c, int n) {
    const Field f = field_from(c);
    if (n < 2 || n > 4 || f.q() > 9)
        throw std::invalid_argument("rank-bound: supported range is 2 <= n <= 4, q <= 9");
    // The code carrying the Kakeya bound for AG(n,q) lives on the direction
    // space PG(n-1, q).
    const CodeDims cd = code_dims(n - 1, f);

    const AffineSpace sp(n, f);
    Rng rng(c.seed);
    std::vector<int> choice(static_cast<std::size_t>(sp.num_directions()));
    for (auto& x : choice)
        x = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(sp.lines(0).size())));
    const HighdimAudit audit = highdim_kakeya_audit(sp, choice);

    json j;
    j["command"] = "rank-bound";
    j["n"] = n;
    j["theta"] = cd.theta;
    j["dim_C"] = cd.dim_code;
    j["dim_dual"] = cd.dim_dual;
    j["bound"] = cd.lower_bound;
    j["equality"] = cd.prime_equality;
    j["dvir_bound"] = dvir_bound(n, f.q());
    j["audit"] = {{"size", audit.size},
                  {"code_bound_holds", audit.code_bound_holds},
                  {"dvir_holds", audit.dvir_holds},
                  {"rows_independent", audit.rows_independent},
                  {"holds", audit.holds}};
    emit_json(j, provenance(f, c.seed), c);
    const bool ok = cd.bound_holds && audit.holds && (!cd.q_is_prime || cd.prime_equality);
    return ok ? 0 : 1;
}

// --- audit-highdim -----------------------------------------------------------

int cmd_audit_highdim(const CommonOpts& c, int n, long long samples, bool exhaustive) {
    const Field f = field_from(c);
    if (n < 2 || n > 4 || f.q() > 9)
        throw std::invalid_argument("audit-highdim: supported range is 2 <= n <= 4, q <= 9");
    const AffineSpace sp(n, f);
    const auto lines_per_dir = static_cast<long long>(sp.lines(0).size());

    bool all_hold = true;
    long long checked = 0;
    long long min_size = sp.num_points() + 1;
    json first;

    const auto run_one = [&](const std::vector<int>& choice) {
        const HighdimAudit rep = highdim_kakeya_audit(sp, choice);
        all_hold = all_hold && rep.holds;
        min_size = std::min(min_size, rep.size);
        if (checked == 0)
            first = {{"size", rep.size},
                     {"code_bound", rep.code_bound},
                     {"dvir", rep.dvir},
                     {"independent_directions", rep.independent_directions},
                     {"rows_independent", rep.rows_independent}};
        ++checked;
    };

    if (exhaustive) {
        double total = 1;
        for (int d = 0; d < sp.num_directions(); ++d) total *= static_cast<double>(lines_per_dir);
        if (total > 20000)
            throw std::invalid_argument("audit-highdim: exhaustive mode is out of budget here");
        std::vector<int> choice(static_cast<std::size_t>(sp.num_directions()), 0);
        while (true) {
            run_one(choice);
            std::size_t i = 0;
            while (i < choice.size() && ++choice[i] == static_cast<int>(lines_per_dir))
                choice[i++] = 0;
            if (i == choice.size()) break;
        }
    } else {
        Rng rng(c.seed);
        for (long long s = 0; s < samples; ++s) {
            std::vector<int> choice(static_cast<std::size_t>(sp.num_directions()));
            for (auto& x : choice)
                x = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(lines_per_dir)));
            run_one(choice);
        }
    }

    json j;
    j["command"] = "audit-highdim";
    j["n"] = n;
    j["mode"] = exhaustive ? "exhaustive" : "sample";
    j["checked"] = checked;
    j["all_hold"] = all_hold;
    j["min_size"] = min_size;
    j["first_audit"] = first;
    emit_json(j, provenance(f, c.seed), c);
    return all_hold ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification laboratory for Kakeya sets over finite fields"};
    app.require_subcommand(1);

    CommonOpts c;

    auto* construct = app.add_subcommand("construct", "build a named configuration");
    std::string kind;
    int a_line = -1, apex = -1;
    construct->add_option("--kind", kind, "hyperoval | oval | pencil")
        ->required()
        ->check(CLI::IsMember({"hyperoval", "oval", "pencil"}));
    construct->add_option("--a-line", a_line, "oval only: line assigned to the leftover point");
    construct->add_option("--apex", apex, "pencil only: common point of the assigned lines");
    add_common(construct, c);

    auto* verify = app.add_subcommand("verify", "check whether a point set is a Kakeya set");
    std::string verify_in;
    verify->add_option("--in", verify_in, "point set JSON file, or - for stdin")->required();
    add_common(verify, c);

    auto* spectrum = app.add_subcommand("spectrum", "line-intersection spectrum of a point set");
    std::string spectrum_in;
    spectrum->add_option("--in", spectrum_in, "point set JSON file, or - for stdin")->required();
    add_common(spectrum, c);

    auto* nuclei = app.add_subcommand("nuclei", "internal-nucleus sweep over (q+2)-sets");
    std::string mode = "exhaustive";
    long long nuclei_samples = 100000;
    nuclei->add_option("--mode", mode, "exhaustive | sample")
        ->check(CLI::IsMember({"exhaustive", "sample"}));
    nuclei->add_option("--samples", nuclei_samples, "sample count in sample mode");
    add_common(nuclei, c);

    auto* segre = app.add_subcommand("segre", "tangent identities on the extremal set");
    std::string check = "mu-lambda";
    long long segre_samples = 1000;
    segre->add_option("--check", check, "mu-lambda | conic-relation | triple-point")
        ->check(CLI::IsMember({"mu-lambda", "conic-relation", "triple-point"}));
    segre->add_option("--samples", segre_samples, "sample count for triple-point");
    add_common(segre, c);

    auto* search = app.add_subcommand("search-min", "exact minimum Kakeya size");
    bool no_prune = false, symmetry = false;
    int incumbent = 0, max_witnesses = 1;
    search->add_flag("--no-prune", no_prune, "disable the admissible lower-bound cut");
    search->add_flag("--symmetry", symmetry, "fix the first two assignments (elation symmetry)");
    search->add_option("--incumbent", incumbent, "seed the best size (must be attainable)");
    search->add_option("--max-witnesses", max_witnesses, "cap on witnesses embedded in the report");
    add_common(search, c);

    auto* bounds = app.add_subcommand("bounds", "lower-bound ladder for odd q");
    int exact = 0;
    bounds->add_option("--exact", exact, "exact minimum to compare against");
    add_common(bounds, c);

    auto* dual = app.add_subcommand("dual-blocking", "dual blocking census or single-set check");
    std::string dual_in;
    dual->add_option("--in", dual_in, "check one point set instead of running the census");
    add_common(dual, c);

    auto* rank = app.add_subcommand("rank-bound", "code-dimension bound for AG(n,q)");
    int rank_n = 3;
    rank->add_option("--n", rank_n, "affine dimension n");
    add_common(rank, c);

    auto* audit = app.add_subcommand("audit-highdim", "audit per-direction line unions");
    int audit_n = 3;
    long long audit_samples = 1000;
    bool exhaustive = false;
    audit->add_option("--n", audit_n, "affine dimension n");
    audit->add_option("--samples", audit_samples, "random choice functions to audit");
    audit->add_flag("--exhaustive", exhaustive, "sweep every choice function (tiny cases only)");
    add_common(audit, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (construct->parsed()) return cmd_construct(c, kind, a_line, apex);
        if (verify->parsed()) return cmd_verify(c, verify_in);
        if (spectrum->parsed()) return cmd_spectrum(c, spectrum_in);
        if (nuclei->parsed()) return cmd_nuclei(c, mode, nuclei_samples);
        if (segre->parsed()) return cmd_segre(c, check, segre_samples);
        if (search->parsed()) return cmd_search_min(c, no_prune, symmetry, incumbent, max_witnesses);
        if (bounds->parsed()) return cmd_bounds(c, exact);
        if (dual->parsed()) return cmd_dual_blocking(c, dual_in);
        if (rank->parsed()) return cmd_rank_bound(c, rank_n);
        if (audit->parsed()) return cmd_audit_highdim(c, audit_n, audit_samples, exhaustive);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
