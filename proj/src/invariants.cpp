#include "z2s/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "z2s/errors.hpp"

namespace z2s {

namespace {

void need_genus(long h) {
    if (h < 1) throw PreconditionViolated("genus must be positive");
}

// Splits every order into prime powers, then rebuilds the divisibility chain.
std::vector<long> invariant_factors(const std::vector<long>& cyclic) {
    std::map<long, std::vector<long>> by_prime;
    for (long d : cyclic) {
        if (d <= 0) throw PreconditionViolated("cyclic orders must be positive");
        for (long p = 2; p * p <= d; ++p) {
            long q = 1;
            while (d % p == 0) {
                d /= p;
                q *= p;
            }
            if (q > 1) by_prime[p].push_back(q);
        }
        if (d > 1) by_prime[d].push_back(d);
    }
    std::size_t len = 0;
    for (auto& [p, qs] : by_prime) {
        std::sort(qs.begin(), qs.end(), std::greater<>());
        len = std::max(len, qs.size());
    }
    std::vector<long> out(len, 1);
    for (const auto& [p, qs] : by_prime)
        for (std::size_t i = 0; i < qs.size(); ++i) out[len - 1 - i] *= qs[i];
    return out;
}

}  // namespace

FinAbGroup::FinAbGroup(long free, const std::vector<long>& cyclic) : free_rank(free), torsion(invariant_factors(cyclic)) {
    if (free < 0) throw PreconditionViolated("free rank must be nonnegative");
}

FinAbGroup operator+(const FinAbGroup& x, const FinAbGroup& y) {
    std::vector<long> t = x.torsion;
    t.insert(t.end(), y.torsion.begin(), y.torsion.end());
    return FinAbGroup(x.free_rank + y.free_rank, t);
}

std::string FinAbGroup::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long d : torsion) {
        os << (first ? "" : " + ") << "Z/" << d;
        first = false;
    }
    if (free_rank > 0) {
        os << (first ? "" : " + ") << "Z";
        if (free_rank > 1) os << "^" << free_rank;
    }
    return os.str();
}

std::string ZZ2Module::to_string() const {
    std::ostringstream os;
    bool first = true;
    auto part = [&](long k, const char* name) {
        if (k == 0) return;
        os << (first ? "" : " + ") << name;
        if (k > 1) os << "^" << k;
        first = false;
    };
    part(plus, "Z+");
    part(minus, "Z-");
    part(free, "Z[Z/2]");
    return first ? "0" : os.str();
}

HomologyTable homology_circle_bundle(long h, long e, bool punctured) {
    need_genus(h);
    if (punctured) return {{0, FinAbGroup(1, {})}, {1, FinAbGroup(h, {2})}, {2, FinAbGroup(h - 1, {})}};
    HomologyTable t;
    t[0] = FinAbGroup(1, {});
    t[1] = e % 2 != 0 ? FinAbGroup(h - 1, {4}) : FinAbGroup(h - 1, {2, 2});
    t[2] = FinAbGroup(h - 1, {});
    t[3] = FinAbGroup(1, {});
    return t;
}

HomologyTable homology_exterior(long h) {
    need_genus(h);
    return {{0, FinAbGroup(1, {})}, {1, FinAbGroup(0, {2})}, {2, FinAbGroup(h - 1, {})}};
}

std::map<int, ZZ2Module> zz2_homology_exterior(long h) {
    need_genus(h);
    return {{0, ZZ2Module{1, 0, 0}}, {2, ZZ2Module{0, 1, h - 1}}};
}

HomologyTable homology_branched_cover(long h) {
    need_genus(h);
    return {{0, FinAbGroup(1, {})}, {2, FinAbGroup(h, {})}};
}

ZZ2Module branched_cover_module(long h) {
    need_genus(h);
    return ZZ2Module{0, h, 0};
}

HomologyTable homology_boundary_exterior(long h) {
    need_genus(h);
    return {{0, FinAbGroup(1, {})}, {1, FinAbGroup(h - 1, {2, 2})}, {2, FinAbGroup(h - 1, {})},
            {3, FinAbGroup(1, {})}};
}

HomologyTable boundary_universal_cover(long h, long e, const FinAbGroup& h1_sigma2k) {
    need_genus(h);
    if (e % 2 != 0) throw OddEulerNumber("normal Euler number must be even");
    const long x = e / 2;
    FinAbGroup base = x % 2 != 0 ? FinAbGroup(h - 1, {4}) : FinAbGroup(h - 1, {2, 2});
    return {{0, FinAbGroup(1, {})}, {1, base + h1_sigma2k}, {2, FinAbGroup(h - 1, {})}, {3, FinAbGroup(1, {})}};
}

long euler_number_double_cover(long e) {
    if (e % 2 != 0) throw OddEulerNumber("normal Euler number must be even");
    return e / 2;
}

std::string format_table(const HomologyTable& t) {
    std::ostringstream os;
    for (const auto& [deg, g] : t)
        if (!g.is_zero()) os << "H_" << deg << " = " << g.to_string() << "\n";
    return os.str();
}

}  // namespace z2s
