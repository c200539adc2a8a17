#pragma once

// Explicit extension functor for prime-power degree d: block matrices
//   ( S^d(g)  D_d(g) )
//   (   0      I(g)  )
// on S^d(Z^r) (+) Z^r for each generator of the free PROP presentation
// (swap, multiplication, comultiplication, counit, unit, antipode), a
// mechanical enumeration of the bicommutative-Hopf relation schema checked
// as exact matrix identities, and the non-splitness obstruction of the
// induced extension.
//
// Monomial bases are ordered lexicographically by exponent vector,
// descending (e_1^d first); that order is fixed and reproducible.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symext/arith.hpp"
#include "symext/sparse_matrix.hpp"

namespace symext::hopf {

enum class Gen { tau, nabla, delta, epsilon, eta, antipode };

inline const char* gen_name(Gen g) {
    switch (g) {
        case Gen::tau: return "tau";
        case Gen::nabla: return "nabla";
        case Gen::delta: return "delta";
        case Gen::epsilon: return "epsilon";
        case Gen::eta: return "eta";
        case Gen::antipode: return "antipode";
    }
    return "?";
}

inline std::optional<Gen> gen_from_name(const std::string& s) {
    for (Gen g : {Gen::tau, Gen::nabla, Gen::delta, Gen::epsilon, Gen::eta, Gen::antipode})
        if (s == gen_name(g)) return g;
    return std::nullopt;
}

inline int gen_source(Gen g) {
    switch (g) {
        case Gen::tau: return 2;
        case Gen::nabla: return 2;
        case Gen::delta: return 1;
        case Gen::epsilon: return 1;
        case Gen::eta: return 0;
        case Gen::antipode: return 1;
    }
    return 0;
}

inline int gen_target(Gen g) {
    switch (g) {
        case Gen::tau: return 2;
        case Gen::nabla: return 1;
        case Gen::delta: return 2;
        case Gen::epsilon: return 0;
        case Gen::eta: return 1;
        case Gen::antipode: return 1;
    }
    return 0;
}

// _n[f]_m : n + source + m -> n + target + m
struct GeneratorSpec {
    Gen kind = Gen::tau;
    int n = 0;  // identity strands on the left
    int m = 0;  // identity strands on the right

    int source_rank() const { return n + gen_source(kind) + m; }
    int target_rank() const { return n + gen_target(kind) + m; }

    std::string to_string() const {
        std::ostringstream os;
        os << '_' << n << '[' << gen_name(kind) << "]_" << m;
        return os.str();
    }

    friend auto operator<=>(const GeneratorSpec&, const GeneratorSpec&) = default;
};

// underlying linear map, columns = images of source basis vectors
inline SparseIntMatrix linear_matrix(const GeneratorSpec& g) {
    const int s = g.source_rank(), t = g.target_rank(), n = g.n;
    SparseIntMatrix a(t, s);
    auto ident = [&](int lo_src, int lo_tgt, int count) {
        for (int i = 0; i < count; ++i) a.set(lo_tgt + i, lo_src + i, 1);
    };
    ident(0, 0, n);  // left pad
    switch (g.kind) {
        case Gen::tau:
            a.set(n + 1, n, 1);
            a.set(n, n + 1, 1);
            ident(n + 2, n + 2, g.m);
            break;
        case Gen::nabla:
            a.set(n, n, 1);
            a.set(n, n + 1, 1);
            ident(n + 2, n + 1, g.m);
            break;
        case Gen::delta:
            a.set(n, n, 1);
            a.set(n + 1, n, 1);
            ident(n + 1, n + 2, g.m);
            break;
        case Gen::epsilon:
            ident(n + 1, n, g.m);
            break;
        case Gen::eta:
            ident(n, n + 1, g.m);
            break;
        case Gen::antipode:
            a.set(n, n, -1);
            ident(n + 1, n + 1, g.m);
            break;
    }
    return a;
}

// exponent vectors of total degree deg on `vars` variables, lex descending
inline std::vector<std::vector<int>> monomials(int vars, int deg) {
    std::vector<std::vector<int>> out;
    if (vars == 0) {
        if (deg == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur(static_cast<std::size_t>(vars), 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == vars - 1) {
            cur[static_cast<std::size_t>(pos)] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = remaining; v >= 0; --v) {  // descending lex
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, deg);
    return out;
}

inline std::int64_t monomial_count(int vars, int deg) {
    return static_cast<std::int64_t>(binomial(vars + deg - 1, deg));
}

namespace detail {

using Poly = std::map<std::vector<int>, Int>;  // exponent vector -> coefficient

inline void poly_add(Poly& p, const std::vector<int>& mono, const Int& c) {
    if (c == 0) return;
    auto it = p.find(mono);
    if (it == p.end()) p.emplace(mono, c);
    else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

inline Poly poly_mul(const Poly& a, const Poly& b, int vars) {
    Poly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            std::vector<int> m(static_cast<std::size_t>(vars));
            for (int i = 0; i < vars; ++i)
                m[static_cast<std::size_t>(i)] =
                    ma[static_cast<std::size_t>(i)] + mb[static_cast<std::size_t>(i)];
            poly_add(out, m, ca * cb);
        }
    return out;
}

}  // namespace detail

// matrix of the d-th symmetric power of an arbitrary linear map
inline SparseIntMatrix symmetric_power_of(const SparseIntMatrix& a, int d) {
    const int s = a.cols, t = a.rows;
    auto src_basis = monomials(s, d);
    auto tgt_basis = monomials(t, d);
    std::map<std::vector<int>, int> tgt_index;
    for (std::size_t i = 0; i < tgt_basis.size(); ++i)
        tgt_index[tgt_basis[i]] = static_cast<int>(i);

    // images of the source variables as linear polynomials in t variables
    std::vector<detail::Poly> var_image(static_cast<std::size_t>(s));
    for (int i = 0; i < t; ++i)
        for (const auto& [j, v] : a.row_data[static_cast<std::size_t>(i)]) {
            std::vector<int> mono(static_cast<std::size_t>(t), 0);
            mono[static_cast<std::size_t>(i)] = 1;
            detail::poly_add(var_image[static_cast<std::size_t>(j)], mono, v);
        }

    SparseIntMatrix out(static_cast<int>(tgt_basis.size()), static_cast<int>(src_basis.size()));
    for (std::size_t col = 0; col < src_basis.size(); ++col) {
        detail::Poly acc;
        acc.emplace(std::vector<int>(static_cast<std::size_t>(t), 0), 1);
        for (int var = 0; var < s; ++var)
            for (int rep = 0; rep < src_basis[col][static_cast<std::size_t>(var)]; ++rep)
                acc = detail::poly_mul(acc, var_image[static_cast<std::size_t>(var)], t);
        for (const auto& [mono, c] : acc)
            out.set(tgt_index.at(mono), static_cast<int>(col), c);
    }
    return out;
}

inline SparseIntMatrix symmetric_power_matrix(const GeneratorSpec& g, int d) {
    return symmetric_power_of(linear_matrix(g), d);
}

// the correction block I(source) -> S^d(target); nonzero only for the
// antipode and the comultiplication
inline SparseIntMatrix d_block(const GeneratorSpec& g, int d) {
    auto pp = prime_power_decomposition(d);
    if (!pp) throw std::invalid_argument("d_block: d must be a prime power");
    const std::int64_t p = pp->p;
    const int s = g.source_rank(), t = g.target_rank(), n = g.n;
    auto tgt_basis = monomials(t, d);
    std::map<std::vector<int>, int> tgt_index;
    for (std::size_t i = 0; i < tgt_basis.size(); ++i)
        tgt_index[tgt_basis[i]] = static_cast<int>(i);
    SparseIntMatrix out(static_cast<int>(tgt_basis.size()), s);

    if (g.kind == Gen::antipode) {
        // e_{n+1} |-> ((1 + (-1)^d)/p) e_{n+1}^d
        Int num = 1 + ((d % 2 == 0) ? Int(1) : Int(-1));
        if (num != 0) {
            std::vector<int> mono(static_cast<std::size_t>(t), 0);
            mono[static_cast<std::size_t>(n)] = d;
            out.set(tgt_index.at(mono), n, num / p);
        }
    } else if (g.kind == Gen::delta) {
        // e_{n+1} |-> sum_{k=1}^{d-1} (1/p) C(d,k) e_{n+1}^k e_{n+2}^{d-k}
        for (int k = 1; k < d; ++k) {
            Int c = binomial(d, k);
            if (c % p != 0) throw std::logic_error("d_block: binomial not divisible by p");
            std::vector<int> mono(static_cast<std::size_t>(t), 0);
            mono[static_cast<std::size_t>(n)] = k;
            mono[static_cast<std::size_t>(n + 1)] = d - k;
            out.set(tgt_index.at(mono), n, c / p);
        }
    }
    return out;
}

// assembled block matrix on S^d (+) I
inline SparseIntMatrix ed_matrix(const GeneratorSpec& g, int d) {
    SparseIntMatrix sym = symmetric_power_matrix(g, d);
    SparseIntMatrix dd = d_block(g, d);
    SparseIntMatrix lin = linear_matrix(g);
    const int ts = sym.rows, ss = sym.cols, ti = lin.rows, si = lin.cols;
    SparseIntMatrix out(ts + ti, ss + si);
    for (int i = 0; i < ts; ++i) {
        for (const auto& [j, v] : sym.row_data[static_cast<std::size_t>(i)]) out.set(i, j, v);
        for (const auto& [j, v] : dd.row_data[static_cast<std::size_t>(i)]) out.set(i, ss + j, v);
    }
    for (int i = 0; i < ti; ++i)
        for (const auto& [j, v] : lin.row_data[static_cast<std::size_t>(i)])
            out.set(ts + i, ss + j, v);
    return out;
}

// ---------------------------------------------------------------------------
// relation schema

// words compose right-to-left: word[0] is applied last
using Word = std::vector<GeneratorSpec>;

struct RelationInstance {
    std::string family;
    Word lhs;
    Word rhs;  // empty = identity on the lhs source object

    std::string to_string() const {
        auto side = [](const Word& w) {
            if (w.empty()) return std::string("id");
            std::string s;
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (i) s += " o ";
                s += w[i].to_string();
            }
            return s;
        };
        return family + ": " + side(lhs) + " ~ " + side(rhs);
    }
};

inline bool word_composable(const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i].source_rank() != w[i + 1].target_rank()) return false;
    return true;
}

inline int word_source(const Word& w) { return w.back().source_rank(); }
inline int word_target(const Word& w) { return w.front().target_rank(); }

inline int word_max_rank(const Word& w) {
    int r = word_source(w);
    for (const auto& g : w) r = std::max(r, g.target_rank());
    return r;
}

namespace detail {

class EdCache {
public:
    explicit EdCache(int d) : d_(d) {}
    const SparseIntMatrix& get(const GeneratorSpec& g) {
        auto it = cache_.find(g);
        if (it == cache_.end()) it = cache_.emplace(g, ed_matrix(g, d_)).first;
        return it->second;
    }

private:
    int d_;
    std::map<GeneratorSpec, SparseIntMatrix> cache_;
};

inline SparseIntMatrix eval_word(EdCache& cache, const Word& w, int source_rank, int d) {
    if (w.empty()) {
        int dim = static_cast<int>(monomial_count(source_rank, d)) + source_rank;
        return SparseIntMatrix::identity(dim);
    }
    SparseIntMatrix acc = cache.get(w.back());
    for (std::size_t i = w.size() - 1; i-- > 0;) acc = cache.get(w[i]).multiply(acc);
    return acc;
}

}  // namespace detail

// true iff both sides evaluate to the same matrix; non-composable or
// incompatible sides are rejected
inline bool check_relation(int d, const RelationInstance& inst, detail::EdCache* cache = nullptr) {
    if (inst.lhs.empty()) throw std::invalid_argument("check_relation: empty left side");
    if (!word_composable(inst.lhs) || (!inst.rhs.empty() && !word_composable(inst.rhs)))
        throw std::invalid_argument("check_relation: non-composable word in " + inst.to_string());
    int src = word_source(inst.lhs), tgt = word_target(inst.lhs);
    if (inst.rhs.empty()) {
        if (src != tgt)
            throw std::invalid_argument("check_relation: identity side needs equal ranks");
    } else if (word_source(inst.rhs) != src || word_target(inst.rhs) != tgt) {
        throw std::invalid_argument("check_relation: sides have different end objects in " +
                                    inst.to_string());
    }
    detail::EdCache local(d);
    detail::EdCache& c = cache ? *cache : local;
    return detail::eval_word(c, inst.lhs, src, d) == detail::eval_word(c, inst.rhs, src, d);
}

namespace detail {

// crossing word moving the strand at position n+s+1 leftwards across s
// strands (ambient n+s+1+m); empty when s = 0
inline Word crossing_left(int n, int s, int m) {
    Word w;
    for (int i = 0; i < s; ++i) w.push_back({Gen::tau, n + i, s + m - 1 - i});
    return w;
}

// crossing word moving the strand at position n+1 rightwards across s strands
inline Word crossing_right(int n, int s, int m) {
    Word w = crossing_left(n, s, m);
    std::reverse(w.begin(), w.end());
    return w;
}

inline Word cat(std::initializer_list<Word> parts) {
    Word out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

}  // namespace detail

// every relation family instantiated over paddings <= pad_bound, filtered by
// the ambient rank cap (the largest object appearing in either word)
inline std::vector<RelationInstance> relation_instances(int pad_bound, int rank_cap) {
    using detail::cat;
    std::vector<RelationInstance> out;
    auto emit = [&](const std::string& family, Word lhs, Word rhs) {
        if (!word_composable(lhs) || (!rhs.empty() && !word_composable(rhs))) return;
        int r = word_max_rank(lhs);
        if (!rhs.empty()) r = std::max(r, word_max_rank(rhs));
        if (r > rank_cap) return;
        out.push_back({family, std::move(lhs), std::move(rhs)});
    };
    const std::vector<Gen> gens = {Gen::tau,     Gen::nabla, Gen::delta,
                                   Gen::epsilon, Gen::eta,   Gen::antipode};

    for (int n = 0; n <= pad_bound; ++n)
        for (int m = 0; m <= pad_bound; ++m) {
            // monoidality: disjoint blocks commute
            for (Gen f1 : gens)
                for (Gen f2 : gens)
                    for (int a = 0; a <= pad_bound; ++a) {
                        int s1 = gen_source(f1), t1 = gen_target(f1);
                        int s2 = gen_source(f2), t2 = gen_target(f2);
                        emit("monoidality",
                             {{f1, n, a + t2 + m}, {f2, n + s1 + a, m}},
                             {{f2, n + t1 + a, m}, {f1, n, a + s2 + m}});
                    }

            // symmetry
            emit("tau_involution", {{Gen::tau, n, m}, {Gen::tau, n, m}}, {});
            emit("braid",
                 {{Gen::tau, n, m + 1}, {Gen::tau, n + 1, m}, {Gen::tau, n, m + 1}},
                 {{Gen::tau, n + 1, m}, {Gen::tau, n, m + 1}, {Gen::tau, n + 1, m}});

            // naturality of the symmetry, both crossing directions
            for (Gen f : gens) {
                int s = gen_source(f), t = gen_target(f);
                emit("naturality_left",
                     cat({{{f, n + 1, m}}, detail::crossing_left(n, s, m)}),
                     cat({detail::crossing_left(n, t, m), {{f, n, m + 1}}}));
                emit("naturality_right",
                     cat({{{f, n, m + 1}}, detail::crossing_right(n, s, m)}),
                     cat({detail::crossing_right(n, t, m), {{f, n + 1, m}}}));
            }

            // commutative algebra axioms
            emit("nabla_assoc",
                 {{Gen::nabla, n, m}, {Gen::nabla, n, m + 1}},
                 {{Gen::nabla, n, m}, {Gen::nabla, n + 1, m}});
            emit("nabla_comm", {{Gen::nabla, n, m}, {Gen::tau, n, m}}, {{Gen::nabla, n, m}});
            emit("unit_left", {{Gen::nabla, n, m}, {Gen::eta, n, m + 1}}, {});
            emit("unit_right", {{Gen::nabla, n, m}, {Gen::eta, n + 1, m}}, {});

            // cocommutative coalgebra axioms
            emit("delta_coassoc",
                 {{Gen::delta, n, m + 1}, {Gen::delta, n, m}},
                 {{Gen::delta, n + 1, m}, {Gen::delta, n, m}});
            emit("delta_cocomm", {{Gen::tau, n, m}, {Gen::delta, n, m}}, {{Gen::delta, n, m}});
            emit("counit_left", {{Gen::epsilon, n, m + 1}, {Gen::delta, n, m}}, {});
            emit("counit_right", {{Gen::epsilon, n + 1, m}, {Gen::delta, n, m}}, {});

            // antipode axiom, both versions, against eta o epsilon
            emit("antipode_left",
                 {{Gen::nabla, n, m}, {Gen::antipode, n, m + 1}, {Gen::delta, n, m}},
                 {{Gen::eta, n, m}, {Gen::epsilon, n, m}});
            emit("antipode_right",
                 {{Gen::nabla, n, m}, {Gen::antipode, n + 1, m}, {Gen::delta, n, m}},
                 {{Gen::eta, n, m}, {Gen::epsilon, n, m}});

            // bialgebra compatibility, listed representative
            emit("bialgebra",
                 {{Gen::delta, n, m}, {Gen::nabla, n, m}},
                 {{Gen::nabla, n + 1, m},
                  {Gen::nabla, n, m + 2},
                  {Gen::tau, n + 1, m + 1},
                  {Gen::delta, n + 2, m},
                  {Gen::delta, n, m + 1}});
            // sanity case: alternate association of the two multiplications
            emit("bialgebra_alt",
                 {{Gen::delta, n, m}, {Gen::nabla, n, m}},
                 {{Gen::nabla, n, m + 1},
                  {Gen::nabla, n + 2, m},
                  {Gen::tau, n + 1, m + 1},
                  {Gen::delta, n + 2, m},
                  {Gen::delta, n, m + 1}});

            // remaining unit/counit compatibilities
            emit("counit_nabla",
                 {{Gen::epsilon, n, m}, {Gen::nabla, n, m}},
                 {{Gen::epsilon, n, m}, {Gen::epsilon, n, m + 1}});
            emit("delta_eta",
                 {{Gen::delta, n, m}, {Gen::eta, n, m}},
                 {{Gen::eta, n, m + 1}, {Gen::eta, n, m}});
            emit("epsilon_eta", {{Gen::epsilon, n, m}, {Gen::eta, n, m}}, {});
        }
    return out;
}

struct RelationReport {
    int d = 0;
    int checked = 0;
    bool pass = true;
    std::string first_failure;
};

inline RelationReport check_all_relations(int d, int pad_bound, int rank_cap = 4) {
    if (!prime_power_decomposition(d))
        throw std::invalid_argument("check_all_relations: d must be a prime power");
    RelationReport rep;
    rep.d = d;
    detail::EdCache cache(d);
    for (const auto& inst : relation_instances(pad_bound, rank_cap)) {
        ++rep.checked;
        if (!check_relation(d, inst, &cache)) {
            rep.pass = false;
            rep.first_failure = inst.to_string();
            return rep;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// non-splitness obstruction

struct SectionObstruction {
    PrimePower pp;
    // unique rational lambda with E(reduced comultiplication) o s = 0 for the
    // candidate section s(e_1) = (lambda e_1^d, e_1); non-integral certifies
    // that no section exists
    Int lambda_num = 0, lambda_den = 1;
    bool lambda_integral = true;
    // the antipode-equivariance variant pins v = -1/2 when p = 2
    bool equivariant_applicable = false;
    Int equiv_num = 0, equiv_den = 1;
    bool equiv_integral = true;

    bool certified_nonsplit() const {
        return !lambda_integral && (!equivariant_applicable || !equiv_integral);
    }
};

inline SectionObstruction section_obstruction(int d) {
    auto pp = prime_power_decomposition(d);
    if (!pp) throw std::invalid_argument("section_obstruction: d must be a prime power");
    SectionObstruction out;
    out.pp = *pp;

    // reduced comultiplication on E_d(1): Delta - (id (+) eta) - (eta (+) id)
    SparseIntMatrix e_delta = ed_matrix({Gen::delta, 0, 0}, d);
    SparseIntMatrix e_eta_r = ed_matrix({Gen::eta, 1, 0}, d);
    SparseIntMatrix e_eta_l = ed_matrix({Gen::eta, 0, 1}, d);
    const int rows = e_delta.rows;
    // columns of E_d(1): index 0 = e_1^d in the S^d block, index 1 = e_1
    std::vector<Int> u(static_cast<std::size_t>(rows), 0), v(static_cast<std::size_t>(rows), 0);
    for (int i = 0; i < rows; ++i) {
        u[static_cast<std::size_t>(i)] =
            e_delta.get(i, 0) - e_eta_r.get(i, 0) - e_eta_l.get(i, 0);
        v[static_cast<std::size_t>(i)] =
            e_delta.get(i, 1) - e_eta_r.get(i, 1) - e_eta_l.get(i, 1);
    }
    // solve u * lambda + v = 0 over Q; the solution must be unique
    bool have = false;
    Int num = 0, den = 1;
    for (int i = 0; i < rows; ++i) {
        const Int& ui = u[static_cast<std::size_t>(i)];
        const Int& vi = v[static_cast<std::size_t>(i)];
        if (ui == 0) {
            if (vi != 0) throw std::logic_error("section_obstruction: no rational solution");
            continue;
        }
        Int n2 = -vi, d2 = ui;
        Int g = gcd(abs(n2), abs(d2));
        if (g != 0) { n2 /= g; d2 /= g; }
        if (d2 < 0) { n2 = -n2; d2 = -d2; }
        if (!have) { num = n2; den = d2; have = true; }
        else if (num != n2 || den != d2)
            throw std::logic_error("section_obstruction: constraint system inconsistent");
    }
    if (!have) throw std::logic_error("section_obstruction: unconstrained system");
    out.lambda_num = num;
    out.lambda_den = den;
    out.lambda_integral = (den == 1);

    // antipode-equivariance variant at rank 1, constraining s(e_1) = (v e_1^d, e_1):
    // ((-1)^d + 1) v = -(1 + (-1)^d)/p, binding exactly when d is even (p = 2)
    SparseIntMatrix e_s = ed_matrix({Gen::antipode, 0, 0}, d);
    Int a00 = e_s.get(0, 0), a01 = e_s.get(0, 1);
    Int coef = a00 + 1;
    if (coef != 0) {
        out.equivariant_applicable = true;
        Int n2 = -a01, d2 = coef;
        Int g = gcd(abs(n2), abs(d2));
        if (g != 0 && g != 1) { n2 /= g; d2 /= g; }
        if (d2 < 0) { n2 = -n2; d2 = -d2; }
        out.equiv_num = n2;
        out.equiv_den = d2;
        out.equiv_integral = (d2 == 1);
    }
    return out;
}

}  // namespace symext::hopf
