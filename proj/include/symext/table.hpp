#pragma once

// The Ext table grid and its three renderings. Markdown and CSV use the
// divisor-chain convention (Z/10) for visual diffing against the published
// table; JSON always uses the prime-power canonical form.

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "symext/homology.hpp"

namespace symext {

struct ExtTable {
    int d_max = 0;
    int i_max = 0;
    std::map<std::pair<int, int>, AbelianGroup> cells;  // only nonzero cells stored

    AbelianGroup at(int d, int i) const {
        auto it = cells.find({d, i});
        return it == cells.end() ? AbelianGroup() : it->second;
    }
};

inline ExtTable compute_ext_table(int d_max, int i_max) {
    if (d_max < 1 || i_max < 0) throw std::invalid_argument("compute_ext_table: bad bounds");
    ExtTable t;
    t.d_max = d_max;
    t.i_max = i_max;
    for (int d = 1; d <= d_max; ++d) {
        Homology h(d);
        for (int i = 0; i <= std::min(i_max, d - 1); ++i) {
            AbelianGroup g = h.at(i);
            if (!g.is_trivial()) t.cells[{d, i}] = std::move(g);
        }
    }
    return t;
}

inline nlohmann::json group_to_json(const AbelianGroup& g) {
    nlohmann::json torsion = nlohmann::json::array();
    for (const Int& t : g.prime_power_pieces())
        torsion.push_back(static_cast<std::int64_t>(t));
    return nlohmann::json{{"rank", g.rank}, {"torsion", torsion}};
}

inline nlohmann::json graded_to_json(const GradedGroup& g) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [deg, grp] : g.parts) out[std::to_string(deg)] = group_to_json(grp);
    return out;
}

// total nonzero entries of delta^k at ambient degree d: C(d-1,k) * (d-1-k)
inline std::int64_t differential_nnz_estimate(int d, int k) {
    if (k < 0 || k > d - 1) return 0;
    Int v = binomial(d - 1, k) * (d - 1 - k);
    if (v > std::numeric_limits<std::int64_t>::max()) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(v);
}

}  // namespace symext
