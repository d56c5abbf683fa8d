// Sample: exact minimum Kakeya size in a small plane, next to the oval
// construction that attains it.

#include <kakeya/kakeya.hpp>
#include <kakeya/search.hpp>

#include <iostream>

int main() {
    using namespace kakeya;

    const Plane pl{Field(5, 1)};
    std::cout << "plane of order " << pl.q() << ": " << pl.size() << " points, " << pl.size()
              << " lines\n";

    const KakeyaAnalysis oval = realize(pl, construct_oval_kakeya(pl));
    std::cout << "oval construction: size " << oval.size << " (sigma " << oval.sigma << ")\n";

    SearchOptions opt;
    opt.workers = 2;
    const SearchResult res = min_kakeya(pl, opt);
    std::cout << "exact minimum: " << res.min_size << " over " << res.nodes
              << " search nodes, attained by " << res.witnesses.size() << " assignments\n";

    const KakeyaConfig& w = res.witnesses.front();
    std::cout << "first witness: base line " << w.base_line << ", assigned lines";
    for (int l : w.assigned) std::cout << ' ' << l;
    std::cout << "\nformula value " << minimum_kakeya_size_formula(pl.q()) << ", matches: "
              << (res.min_size == minimum_kakeya_size_formula(pl.q()) ? "yes" : "no") << "\n";
    return 0;
}
