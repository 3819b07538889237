#pragma once

#include <map>
#include <string>
#include <vector>

namespace z2s {

// Z^free_rank + sum Z/d_i with d_1 | d_2 | ...
struct FinAbGroup {
    long free_rank = 0;
    std::vector<long> torsion;

    FinAbGroup() = default;
    // Normalises any list of cyclic orders into invariant factors; 1s are dropped.
    FinAbGroup(long free, const std::vector<long>& cyclic);
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const FinAbGroup& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
    std::string to_string() const;
};

FinAbGroup operator+(const FinAbGroup& x, const FinAbGroup& y);

// Z[Z/2]-modules built from Z+ (trivial action), Z- (sign action) and free summands.
struct ZZ2Module {
    long plus = 0, minus = 0, free = 0;
    bool operator==(const ZZ2Module& o) const { return plus == o.plus && minus == o.minus && free == o.free; }
    long z_rank() const { return plus + minus + 2 * free; }
    std::string to_string() const;
};

using HomologyTable = std::map<int, FinAbGroup>;

// Circle bundle over the nonorientable surface of genus h, optionally punctured.
HomologyTable homology_circle_bundle(long h, long e, bool punctured);
HomologyTable homology_exterior(long h);
std::map<int, ZZ2Module> zz2_homology_exterior(long h);
HomologyTable homology_branched_cover(long h);
// H_2 of the double branched cover as a Z[Z/2]-module.
ZZ2Module branched_cover_module(long h);
HomologyTable homology_boundary_exterior(long h);
HomologyTable boundary_universal_cover(long h, long e, const FinAbGroup& h1_sigma2k);
long euler_number_double_cover(long e);

std::string format_table(const HomologyTable& t);

}  // namespace z2s
