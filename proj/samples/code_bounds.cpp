// Sample: dimensions of the line codes of small planes, and the ladder of
// lower bounds on the minimum Kakeya size at q = 7.

#include <kakeya/codes.hpp>
#include <kakeya/search.hpp>

#include <iostream>

int main() {
    using namespace kakeya;

    std::cout << "plane line codes over the base prime field\n";
    std::cout << "  q   theta  dim C  dim C-dual  bound C(q+1,2)\n";
    const std::pair<int, int> fields[] = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}};
    for (const auto& [p, t] : fields) {
        const CodeDims cd = code_dims(2, Field(p, t));
        std::cout << "  " << cd.q << "   " << cd.theta << "    " << cd.dim_code << "    "
                  << cd.dim_dual << "    " << cd.lower_bound
                  << (cd.prime_equality ? "  (equality)" : "  (strict)") << "\n";
    }

    std::cout << "\nlower bounds on the minimum Kakeya size at q = 7\n";
    const BoundLadder lad = bound_ladder(7, minimum_kakeya_size_formula(7));
    for (const BoundEntry& e : lad.entries) {
        std::cout << "  " << e.name << ": " << lad.base << " + ceil(" << e.excess_num << "/"
                  << e.excess_den << ") = " << e.effective
                  << (e.in_hypothesis ? "" : "  [outside its hypothesis]") << "\n";
    }
    std::cout << "exact minimum: " << *lad.exact << ", ladder consistent: "
              << (lad.consistent ? "yes" : "no") << "\n";
    return 0;
}
