#pragma once

// Graded Ext-groups for tensor-power sources via the Kunneth product, and
// the exterior-power closed form. For finitely generated abelian groups the
// Kunneth short exact sequence splits, so the degree-k part is computed as
//   (+)_{a+b=k} G_a (x) H_b  (+)  (+)_{a+b=k+1} Tor(G_a, H_b).

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "symext/abelian_group.hpp"
#include "symext/homology.hpp"

namespace symext {

struct Composition {
    std::vector<int> parts;  // all >= 1, summing to d
};

// all C(d-1, c-1) ordered partitions of d into c positive parts, lexicographic
inline std::vector<Composition> compositions(int d, int c) {
    if (d < 1 || c < 1) throw std::invalid_argument("compositions: need d, c >= 1");
    std::vector<Composition> out;
    if (c > d) return out;
    std::vector<int> cur(static_cast<std::size_t>(c));
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == c - 1) {
            cur[static_cast<std::size_t>(pos)] = remaining;
            out.push_back({cur});
            return;
        }
        int max_here = remaining - (c - 1 - pos);
        for (int v = 1; v <= max_here; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, d);
    return out;
}

// Ext from the abelianization functor into the d-th symmetric power, as a
// graded group; d = 1 is Z in degree 0
inline GradedGroup graded_ext_a_sd(int d) {
    if (d < 1) throw std::invalid_argument("graded_ext_a_sd: need d >= 1");
    return homology_all(d);
}

inline GradedGroup kunneth_product(const GradedGroup& g, const GradedGroup& h) {
    GradedGroup out;
    for (const auto& [a, ga] : g.parts)
        for (const auto& [b, hb] : h.parts) {
            out.add(a + b, group_tensor(ga, hb));
            AbelianGroup tor = group_tor(ga, hb);
            if (!tor.is_trivial()) out.add(a + b - 1, tor);
        }
    return out;
}

// Ext from the c-th tensor power source: direct sum over compositions of
// the iterated Kunneth product of the single-factor answers
inline GradedGroup ext_tensorpower_sd(int c, int d) {
    if (c < 1 || d < 1) throw std::invalid_argument("ext_tensorpower_sd: need c, d >= 1");
    std::vector<GradedGroup> factor_cache(static_cast<std::size_t>(d) + 1);
    std::vector<bool> have(static_cast<std::size_t>(d) + 1, false);
    auto factor = [&](int i) -> const GradedGroup& {
        if (!have[static_cast<std::size_t>(i)]) {
            factor_cache[static_cast<std::size_t>(i)] = graded_ext_a_sd(i);
            have[static_cast<std::size_t>(i)] = true;
        }
        return factor_cache[static_cast<std::size_t>(i)];
    };
    GradedGroup total;
    for (const auto& comp : compositions(d, c)) {
        GradedGroup acc = factor(comp.parts[0]);
        for (std::size_t j = 1; j < comp.parts.size(); ++j)
            acc = kunneth_product(acc, factor(comp.parts[static_cast<std::size_t>(j)]));
        for (const auto& [deg, grp] : acc.parts) total.add(deg, grp);
    }
    return total;
}

// exterior-power target: free of rank C(d-1, c-1) concentrated in degree d-c
inline GradedGroup ext_tensorpower_lambda(int c, int d) {
    if (c < 1 || d < 1) throw std::invalid_argument("ext_tensorpower_lambda: need c, d >= 1");
    GradedGroup out;
    if (c > d) return out;
    Int r = binomial(d - 1, c - 1);
    out.set(d - c, AbelianGroup(static_cast<std::int64_t>(r)));
    return out;
}

}  // namespace symext
