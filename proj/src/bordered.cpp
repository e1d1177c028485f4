#include "kfc/bordered.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "kfc/bits.hpp"
#include "kfc/f2u.hpp"

namespace kfc {

namespace {
// Reeb chords as arcs (a -> b) on points 1..4; idempotent of a point is its parity.
struct Arc {
    int a, b;
};
Arc arc_of(Rho r) {
    switch (r) {
        case Rho::R1: return {1, 2};
        case Rho::R2: return {2, 3};
        case Rho::R3: return {3, 4};
        case Rho::R12: return {1, 3};
        case Rho::R23: return {2, 4};
        case Rho::R123: return {1, 4};
    }
    return {0, 0};
}
std::optional<Rho> rho_of_arc(int a, int b) {
    for (Rho r : {Rho::R1, Rho::R2, Rho::R3, Rho::R12, Rho::R23, Rho::R123}) {
        Arc x = arc_of(r);
        if (x.a == a && x.b == b) return r;
    }
    return std::nullopt;
}
Idem idem_of_point(int p) { return (p % 2 == 1) ? Idem::I0 : Idem::I1; }
}  // namespace

Idem rho_start(Rho r) { return idem_of_point(arc_of(r).a); }
Idem rho_end(Rho r) { return idem_of_point(arc_of(r).b); }

std::optional<Rho> rho_mul(Rho a, Rho b) {
    Arc x = arc_of(a), y = arc_of(b);
    if (x.b != y.a) return std::nullopt;
    return rho_of_arc(x.a, y.b);
}

std::string rho_name(Rho r) {
    switch (r) {
        case Rho::R1: return "rho1";
        case Rho::R2: return "rho2";
        case Rho::R3: return "rho3";
        case Rho::R12: return "rho12";
        case Rho::R23: return "rho23";
        case Rho::R123: return "rho123";
    }
    return "?";
}

std::optional<Rho> rho_parse(const std::string& s) {
    for (Rho r : {Rho::R1, Rho::R2, Rho::R3, Rho::R12, Rho::R23, Rho::R123})
        if (rho_name(r) == s) return r;
    return std::nullopt;
}

int TypeD::index_of(const std::string& label) const {
    for (int i = 0; i < rank(); ++i)
        if (gens[i].label == label) return i;
    return -1;
}

int TypeA::index_of(const std::string& label) const {
    for (int i = 0; i < rank(); ++i)
        if (gens[i].label == label) return i;
    return -1;
}

int TypeA::max_word_len() const {
    int m = 0;
    for (const auto& op : ops) m = std::max(m, int(op.word.size()));
    return m;
}

ValidationReport check_typeD(const TypeD& m) {
    ValidationReport rep;
    for (int i = 0; i < m.rank(); ++i) {
        for (const auto& [r, j] : m.arrows[i]) {
            if (rho_start(r) != m.gens[i].idem || rho_end(r) != m.gens[j].idem)
                rep.errors.push_back("idempotent mismatch on arrow " + m.gens[i].label + " -> " +
                                     m.gens[j].label);
        }
    }
    // structure equation: sum over two-step paths of (rho_a rho_b) z vanishes
    for (int i = 0; i < m.rank(); ++i) {
        std::map<std::pair<int, int>, int> cnt;  // (rho index, target) -> parity
        for (const auto& [r1, j] : m.arrows[i])
            for (const auto& [r2, k] : m.arrows[j]) {
                auto pr = rho_mul(r1, r2);
                if (pr) cnt[{int(*pr), k}] ^= 1;
            }
        for (const auto& [key, parity] : cnt)
            if (parity)
                rep.errors.push_back("d^2 residual at " + m.gens[i].label + " -> " +
                                     m.gens[key.second].label);
    }
    return rep;
}

ValidationReport check_typeA(const TypeA& m, int max_len) {
    ValidationReport rep;
    if (max_len < 0) max_len = m.max_word_len() + 1;
    // idempotent compatibility of every operation
    for (const auto& op : m.ops) {
        Idem cur = m.gens[op.from].idem;
        for (Rho r : op.word) {
            if (rho_start(r) != cur) {
                rep.errors.push_back("idempotent mismatch in operation from " + m.gens[op.from].label);
                break;
            }
            cur = rho_end(r);
        }
        if (m.gens[op.to].idem != cur)
            rep.errors.push_back("output idempotent mismatch in operation from " + m.gens[op.from].label);
    }
    // A-infinity relations up to the declared length. The torus algebra has no differential,
    // so the relation for (x, a_1..a_k) is:
    //   sum_i m(m(x, a_1..a_i), a_{i+1}..a_k) + sum_i m(x, a_1.., a_i a_{i+1}, .., a_k) = 0.
    // operations from x consuming exactly w, as (target, U-power) parities
    auto op_lookup = [&](int x, const std::vector<Rho>& w) {
        std::map<std::pair<int, int>, int> acc;
        for (const auto& op : m.ops)
            if (op.from == x && op.word == w) acc[{op.to, op.upow}] ^= 1;
        return acc;
    };
    std::vector<Rho> all = {Rho::R1, Rho::R2, Rho::R3, Rho::R12, Rho::R23, Rho::R123};
    // enumerate words up to max_len that are idempotent-composable chains
    std::function<void(int, std::vector<Rho>&)> rec = [&](int x, std::vector<Rho>& w) {
        if (!w.empty()) {
            std::map<std::pair<int, int>, int> total;
            for (size_t i = 0; i <= w.size(); ++i) {
                std::vector<Rho> w1(w.begin(), w.begin() + i), w2(w.begin() + i, w.end());
                for (const auto& [ty, par] : op_lookup(x, w1)) {
                    if (!par) continue;
                    for (const auto& [tz, par2] : op_lookup(ty.first, w2))
                        if (par2) total[{tz.first, ty.second + tz.second}] ^= 1;
                }
            }
            for (size_t i = 0; i + 1 < w.size(); ++i) {
                auto pr = rho_mul(w[i], w[i + 1]);
                if (!pr) continue;
                std::vector<Rho> wm(w.begin(), w.end());
                wm.erase(wm.begin() + i);
                wm[i] = *pr;
                for (const auto& [t, par] : op_lookup(x, wm))
                    if (par) total[t] ^= 1;
            }
            for (const auto& [t, par] : total)
                if (par)
                    rep.errors.push_back("A-infinity relation fails at " + m.gens[x].label);
        }
        if (int(w.size()) >= max_len) return;
        Idem cur = m.gens[x].idem;
        for (Rho r : w) cur = rho_end(r);
        for (Rho r : all) {
            if (rho_start(r) != cur) continue;
            w.push_back(r);
            rec(x, w);
            w.pop_back();
        }
    };
    for (int x = 0; x < m.rank(); ++x) {
        std::vector<Rho> w;
        rec(x, w);
    }
    return rep;
}

bool is_chain_typeD_morphism(const TypeDMorphism& f) {
    // residual(x) = sum over (f then dst-arrows) + (src-arrows then f), algebra-multiplied
    std::map<std::tuple<int, int, int>, int> cnt;  // (from, rho(-1 idem), to) parity
    auto addterm = [&](int from, std::optional<Rho> r, int to) {
        cnt[{from, r ? int(*r) : -1, to}] ^= 1;
    };
    for (const auto& e : f.entries) {
        for (const auto& [r2, k] : f.dst->arrows[e.to]) {
            if (!e.rho) addterm(e.from, r2, k);
            else {
                auto pr = rho_mul(*e.rho, r2);
                if (pr) addterm(e.from, pr, k);
            }
        }
    }
    for (int i = 0; i < f.src->rank(); ++i)
        for (const auto& [r1, j] : f.src->arrows[i])
            for (const auto& e : f.entries) {
                if (e.from != j) continue;
                if (!e.rho) addterm(i, r1, e.to);
                else {
                    auto pr = rho_mul(r1, *e.rho);
                    if (pr) addterm(i, pr, e.to);
                }
            }
    for (const auto& [k, par] : cnt)
        if (par) return false;
    return true;
}

TypeDMorphism identity_morphism(TypeDPtr m) {
    TypeDMorphism f;
    f.src = m;
    f.dst = m;
    for (int i = 0; i < m->rank(); ++i) f.entries.push_back({i, std::nullopt, i});
    return f;
}

TypeDMorphism compose_typeD(const TypeDMorphism& g, const TypeDMorphism& f) {
    TypeDMorphism h;
    h.src = f.src;
    h.dst = g.dst;
    std::map<std::tuple<int, int, int>, int> cnt;
    for (const auto& e1 : f.entries)
        for (const auto& e2 : g.entries) {
            if (e2.from != e1.to) continue;
            std::optional<Rho> r;
            if (!e1.rho) r = e2.rho;
            else if (!e2.rho) r = e1.rho;
            else {
                auto pr = rho_mul(*e1.rho, *e2.rho);
                if (!pr) continue;
                r = pr;
            }
            cnt[{e1.from, r ? int(*r) : -1, e2.to}] ^= 1;
        }
    for (const auto& [k, par] : cnt)
        if (par)
            h.entries.push_back({std::get<0>(k),
                                 std::get<1>(k) < 0 ? std::nullopt : std::optional<Rho>(Rho(std::get<1>(k))),
                                 std::get<2>(k)});
    return h;
}

// ---- cfd_from_cfk

namespace {

struct Simplified {
    Complex cx;  // simultaneously simplified model
    std::vector<StdPair> upairs, vpairs;
    int ufree = -1, vfree = -1;
};

bool matching_clean(const Complex& c, bool var_u, const std::vector<StdPair>& pairs) {
    // the var-part of the differential must consist exactly of the pair entries
    std::set<std::pair<int, int>> expect;
    for (const auto& p : pairs) expect.insert({p.head, p.tail});
    for (int i = 0; i < c.rank(); ++i)
        for (const auto& [j, p] : c.dif(i))
            for (Mono m : p.m) {
                bool upart = m.v == 0 && m.u > 0, vpart = m.u == 0 && m.v > 0;
                if ((var_u && upart) || (!var_u && vpart))
                    if (!expect.count({i, j})) return false;
            }
    return true;
}

Simplified simultaneous_simplify(const Complex& in) {
    Complex cur = in;
    for (int iter = 0; iter < 12; ++iter) {
        StandardForm sv = standardize_var(cur, false);
        cur = *sv.std_cx;
        StandardForm su = standardize_var(cur, true);
        cur = *su.std_cx;
        // recompute pair data on the final model
        StandardForm cv = standardize_var(cur, false);
        bool vok = cv.std_cx->operator==(cur);
        StandardForm cu = standardize_var(cur, true);
        bool uok = cu.std_cx->operator==(cur);
        if (vok && uok && matching_clean(cur, true, cu.pairs) && matching_clean(cur, false, cv.pairs)) {
            Simplified s{cur, cu.pairs, cv.pairs, -1, -1};
            if (cu.free_gens.size() != 1 || cv.free_gens.size() != 1)
                throw std::invalid_argument("cfd_from_cfk: vertical/horizontal homology rank != 1");
            s.ufree = cu.free_gens[0];
            s.vfree = cv.free_gens[0];
            return s;
        }
    }
    throw std::runtime_error("cfd_from_cfk: simultaneous simplification did not stabilize");
}

}  // namespace

int compute_tau(const Complex& cfk_r) {
    if (cfk_r.ring() != Ring::R) throw std::invalid_argument("compute_tau: R-coefficient complex required");
    StandardForm sv = standardize_var(cfk_r, false);
    if (sv.free_gens.size() != 1)
        throw std::invalid_argument("compute_tau: vertical homology rank != 1");
    return alexander(sv.std_cx->gen(sv.free_gens[0]).gr);
}

TypeD cfd_from_cfk(const Complex& cfk_r) {
    if (cfk_r.ring() != Ring::R) throw std::invalid_argument("cfd_from_cfk: R-coefficient complex required");
    for (int i = 0; i < cfk_r.rank(); ++i)
        for (const auto& [j, p] : cfk_r.dif(i))
            if (p.is_unit()) throw std::invalid_argument("cfd_from_cfk: input not reduced");
    ValidationReport vr = validate(cfk_r);
    if (!vr.ok()) throw std::invalid_argument("cfd_from_cfk: invalid complex");
    if (compute_tau(cfk_r) != 0) throw std::invalid_argument("cfd_from_cfk: tau != 0 rejected");
    Simplified s = simultaneous_simplify(cfk_r);
    const Complex& c = s.cx;
    TypeD d;
    for (int i = 0; i < c.rank(); ++i) d.gens.push_back({c.gen(i).label, Idem::I0, c.gen(i).gr});
    d.arrows.assign(c.rank(), {});
    auto add_gen = [&](const std::string& label) {
        d.gens.push_back({label, Idem::I1, std::nullopt});
        d.arrows.push_back({});
        return int(d.gens.size()) - 1;
    };
    // vertical chains: head --rho1--> k1 <--rho23-- k2 ... <--rho123-- tail
    for (const auto& p : s.vpairs) {
        int len = p.order;
        std::vector<int> ks;
        for (int j = 1; j <= len; ++j)
            ks.push_back(add_gen("v." + c.gen(p.head).label + "." + c.gen(p.tail).label + "." +
                                 std::to_string(j)));
        d.arrows[p.head].push_back({Rho::R1, ks[0]});
        for (int j = 1; j < len; ++j) d.arrows[ks[j]].push_back({Rho::R23, ks[j - 1]});
        d.arrows[p.tail].push_back({Rho::R123, ks[len - 1]});
    }
    // horizontal chains: head --rho3--> l1 --rho23--> l2 ... ; l_len --rho2--> tail
    for (const auto& p : s.upairs) {
        int len = p.order;
        std::vector<int> ls;
        for (int j = 1; j <= len; ++j)
            ls.push_back(add_gen("h." + c.gen(p.head).label + "." + c.gen(p.tail).label + "." +
                                 std::to_string(j)));
        d.arrows[p.head].push_back({Rho::R3, ls[0]});
        for (int j = 0; j + 1 < len; ++j) d.arrows[ls[j]].push_back({Rho::R23, ls[j + 1]});
        d.arrows[ls[len - 1]].push_back({Rho::R2, p.tail});
    }
    // unstable chain (0-framed, tau = 0): a single rho12 arrow xi0 -> eta0
    d.arrows[s.vfree].push_back({Rho::R12, s.ufree});
    return d;
}

// ---- patterns

TypeA cfa_nu(int kmax) {
    TypeA a;
    a.gens.push_back({"s", Idem::I0});
    for (int k = 0; k < kmax; ++k) {
        TypeA::Op op;
        op.from = 0;
        op.word.push_back(Rho::R3);
        for (int i = 0; i < k; ++i) op.word.push_back(Rho::R23);
        op.word.push_back(Rho::R2);
        op.upow = k + 1;
        op.to = 0;
        a.ops.push_back(op);
    }
    return a;
}

int nu_cap_for(const TypeD& d) {
    int run = 0;
    // longest directed rho23 path
    int n = d.rank();
    std::vector<int> memo(n, -1);
    std::function<int(int)> longest = [&](int i) -> int {
        if (memo[i] >= 0) return memo[i];
        memo[i] = 0;
        int best = 0;
        for (const auto& [r, j] : d.arrows[i])
            if (r == Rho::R23) best = std::max(best, 1 + longest(j));
        return memo[i] = best;
    };
    for (int i = 0; i < n; ++i) run = std::max(run, longest(i));
    return run + 2;
}

TypeA cfa_cable(int n) {
    if (n < 1) throw std::invalid_argument("cfa_cable: n >= 1 required");
    // The diagram's arrows m(a_i; r2,r1) = a_{i+1}, m(b_i; r2,r1) = U b_{i+1},
    // m(a_{2n+1}; r2) = z, m(z; r3) = b_{2n+1}, m1(a_i) = U^i b_i are not A-infinity-closed
    // on their own; composability forces the r12-absorbing words and the two merge
    // operations below (the unique minimal closure).
    TypeA a;
    int N = 2 * n + 1;
    a.gens.push_back({"z", Idem::I0});
    std::vector<int> ai(N + 1), bi(N + 1);
    for (int i = 1; i <= N; ++i) {
        a.gens.push_back({"a" + std::to_string(i), Idem::I1});
        ai[i] = int(a.gens.size()) - 1;
    }
    for (int i = 1; i <= N; ++i) {
        a.gens.push_back({"b" + std::to_string(i), Idem::I1});
        bi[i] = int(a.gens.size()) - 1;
    }
    auto word_r2_r12s = [&](int k) {
        std::vector<Rho> w{Rho::R2};
        for (int j = 0; j < k; ++j) w.push_back(Rho::R12);
        return w;
    };
    for (int i = 1; i <= N; ++i) a.ops.push_back({ai[i], {}, i, bi[i]});  // m1(a_i) = U^i b_i
    for (int i = 1; i <= N; ++i) {
        for (int k = 0; i + k + 1 <= N; ++k) {
            std::vector<Rho> w = word_r2_r12s(k);
            w.push_back(Rho::R1);
            a.ops.push_back({ai[i], w, 0, ai[i + k + 1]});        // a_i -> a_{i+k+1}
            a.ops.push_back({bi[i], w, k + 1, bi[i + k + 1]});    // b_i -> U^{k+1} b_{i+k+1}
        }
        a.ops.push_back({ai[i], word_r2_r12s(N - i), 0, 0});      // a_i -> z
        if (i < N) {
            std::vector<Rho> w = word_r2_r12s(N - i - 1);
            w.push_back(Rho::R123);
            a.ops.push_back({ai[i], w, 0, bi[N]});                // merged z -> b_{2n+1} step
        }
    }
    a.ops.push_back({ai[N], {Rho::R23}, 0, bi[N]});               // merged r2.r3 at a_{2n+1}
    a.ops.push_back({0, {Rho::R3}, 0, bi[N]});                    // m2(z, rho3) = b_{2n+1}
    return a;
}

// ---- box tensor

namespace {

struct OpTrie {
    // word -> list of (upow, to); also prefix set
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> terminal;
    std::set<std::vector<int>> prefixes;
    void add(const TypeA::Op& op) {
        std::vector<int> w;
        w.reserve(op.word.size());
        for (Rho r : op.word) w.push_back(int(r));
        terminal[w].push_back({op.upow, op.to});
        std::vector<int> p;
        prefixes.insert(p);
        for (int r : w) {
            p.push_back(r);
            prefixes.insert(p);
        }
    }
};

}  // namespace

BoxResult box_tensor(const TypeA& a, const TypeD& d, bool use_d_gradings) {
    // generators: idempotent-matched pairs
    std::vector<std::pair<int, int>> gens;
    std::map<std::pair<int, int>, int> gidx;
    for (int x = 0; x < a.rank(); ++x)
        for (int y = 0; y < d.rank(); ++y)
            if (a.gens[x].idem == d.gens[y].idem) {
                gidx[{x, y}] = int(gens.size());
                gens.push_back({x, y});
            }
    std::vector<OpTrie> tries(a.rank());
    for (const auto& op : a.ops) tries[op.from].add(op);
    // differential entries
    std::map<std::pair<int, int>, Poly> entries;
    for (int g = 0; g < int(gens.size()); ++g) {
        auto [x, y0] = gens[g];
        const OpTrie& tr = tries[x];
        // DFS over D-paths whose label word stays a prefix of some operation
        std::function<void(int, std::vector<int>&)> dfs = [&](int y, std::vector<int>& w) {
            auto it = tr.terminal.find(w);
            if (it != tr.terminal.end()) {
                for (auto [upow, to] : it->second) {
                    auto tgt = gidx.find({to, y});
                    if (tgt == gidx.end())
                        throw std::logic_error("box_tensor: operation output breaks idempotents");
                    auto key = std::make_pair(g, tgt->second);
                    entries[key] = add(entries[key], Poly{Mono{upow, 0}});
                }
            }
            for (const auto& [r, y2] : d.arrows[y]) {
                w.push_back(int(r));
                if (tr.prefixes.count(w)) dfs(y2, w);
                w.pop_back();
            }
        };
        std::vector<int> w;
        dfs(y0, w);
    }
    // gradings: per-component homogeneity solve, or stored D gradings for the nu pairing
    int n = int(gens.size());
    std::vector<Generator> cgens(n);
    std::vector<int> comp(n, -1);
    std::vector<std::vector<std::pair<int, Grading>>> adj(n);
    for (const auto& [key, p] : entries) {
        if (p.is_zero()) continue;
        if (p.m.size() != 1) throw std::logic_error("box_tensor: non-monomial differential entry");
        int k = p.m[0].u;
        Grading delta{2 * k - 1, -1};  // gr(to) = gr(from) + (2k-1, -1)
        adj[key.first].push_back({key.second, delta});
        adj[key.second].push_back({key.first, Grading{-delta.u, -delta.v}});
    }
    std::vector<Grading> gr(n, Grading{0, 0});
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = ncomp;
        gr[s] = {0, 0};
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (auto& [j, delta] : adj[i]) {
                Grading want = gr[i] + delta;
                if (comp[j] < 0) {
                    comp[j] = ncomp;
                    gr[j] = want;
                    stack.push_back(j);
                } else if (!(gr[j] == want)) {
                    throw std::logic_error("box_tensor: inconsistent grading constraints");
                }
            }
        }
        ++ncomp;
    }
    if (use_d_gradings) {
        for (int g = 0; g < n; ++g) {
            auto [x, y] = gens[g];
            if (!d.gens[y].gr)
                throw std::invalid_argument("box_tensor: D side carries no stored gradings");
            gr[g] = *d.gens[y].gr;
        }
    }
    for (int g = 0; g < n; ++g)
        cgens[g] = {tensor_label(a.gens[gens[g].first].label, d.gens[gens[g].second].label), gr[g]};
    Complex cx(Ring::F2U, std::move(cgens));
    for (const auto& [key, p] : entries)
        if (!p.is_zero()) cx.set_entry(key.first, key.second, p);
    // anchor the free component at (0,0)
    BoxResult out;
    {
        ValidationReport v = validate(cx);
        if (!v.ok()) throw std::logic_error("box_tensor: output failed validation: " + v.errors[0]);
    }
    F2UHomology h = homology_over_f2u(cx);
    if (h.free_rank == 1 && !use_d_gradings) {
        // shift the free component so the representative sits at (0,0)
        int rep_gen = -1;
        for (int i = 0; i < cx.rank(); ++i)
            if (!h.free_rep[i].is_zero()) { rep_gen = i; break; }
        Grading offset = h.free_rep_grading;
        std::vector<Generator> shifted = cx.gens();
        for (int i = 0; i < n; ++i)
            if (comp[i] == comp[rep_gen]) shifted[i].gr = shifted[i].gr - offset;
        Complex cx2(Ring::F2U, std::move(shifted));
        for (int i = 0; i < n; ++i)
            for (const auto& [j, p] : cx.dif(i)) cx2.set_entry(i, j, p);
        out.cx = std::make_shared<Complex>(std::move(cx2));
        out.anchored_component = comp[rep_gen];
    } else {
        out.cx = std::make_shared<Complex>(std::move(cx));
        if (h.free_rank == 1) {
            for (int i = 0; i < out.cx->rank(); ++i)
                if (!h.free_rep[i].is_zero()) { out.anchored_component = comp[i]; break; }
        }
    }
    out.component = comp;
    out.gen_pair = gens;
    return out;
}

GMap box_tensor_morphism(const TypeA& a, const TypeDMorphism& f, const BoxResult& src,
                         const BoxResult& dst) {
    std::vector<OpTrie> tries(a.rank());
    for (const auto& op : a.ops) tries[op.from].add(op);
    std::map<std::pair<int, int>, int> sidx, didx;
    for (int g = 0; g < int(src.gen_pair.size()); ++g) sidx[src.gen_pair[g]] = g;
    for (int g = 0; g < int(dst.gen_pair.size()); ++g) didx[dst.gen_pair[g]] = g;
    GMap out = GMap::zero(src.cx, dst.cx, Grading{0, 0}, false);
    // identity-coefficient entries contribute x (x) y -> x (x) z directly
    for (int g = 0; g < int(src.gen_pair.size()); ++g) {
        auto [x, y0] = src.gen_pair[g];
        const OpTrie& tr = tries[x];
        // phase 1: D-arrows of src; then one f-entry; phase 2: D-arrows of dst
        std::function<void(int, std::vector<int>&)> dfs2;
        std::function<void(int, std::vector<int>&)> dfs1 = [&](int y, std::vector<int>& w) {
            for (const auto& e : f.entries) {
                if (e.from != y) continue;
                if (!e.rho) {
                    if (w.empty()) {
                        // strict unitality: idempotent entries only pair with the trivial word
                        auto tgt = didx.find({x, e.to});
                        if (tgt != didx.end()) out.add_entry(g, tgt->second, Poly::unit());
                        // and continue phase-2 exploration from e.to with empty word? No:
                        // m(x; idempotent-containing word) vanishes unless the word is trivial.
                    }
                    continue;
                }
                w.push_back(int(*e.rho));
                if (tr.prefixes.count(w)) dfs2(e.to, w);
                w.pop_back();
            }
            for (const auto& [r, y2] : f.src->arrows[y]) {
                w.push_back(int(r));
                if (tr.prefixes.count(w)) dfs1(y2, w);
                w.pop_back();
            }
        };
        dfs2 = [&](int y, std::vector<int>& w) {
            auto it = tr.terminal.find(w);
            if (it != tr.terminal.end()) {
                for (auto [upow, to] : it->second) {
                    auto tgt = didx.find({to, y});
                    if (tgt == didx.end()) throw std::logic_error("box_tensor_morphism: idempotent break");
                    out.add_entry(g, tgt->second, Poly{Mono{upow, 0}});
                }
            }
            for (const auto& [r, y2] : f.dst->arrows[y]) {
                w.push_back(int(r));
                if (tr.prefixes.count(w)) dfs2(y2, w);
                w.pop_back();
            }
        };
        std::vector<int> w;
        dfs1(y0, w);
    }
    return out;
}

bool is_local_typeD(const TypeDMorphism& f) {
    // U = 1 hat pairing: generators = i0-matched pairs; differential counts rho3-rho23^k-rho2
    // chains (every weight 1). Build both complexes and the induced map over F2.
    auto hat_complex = [&](const TypeD& d, std::vector<int>& gens_out) {
        TypeA nu = cfa_nu(nu_cap_for(d));
        BoxResult b = box_tensor(nu, d, /*use_d_gradings=*/false);
        // set U = 1
        gens_out.clear();
        for (int i = 0; i < b.cx->rank(); ++i) gens_out.push_back(i);
        return b;
    };
    std::vector<int> gs, gd;
    BoxResult bs = hat_complex(*f.src, gs), bd = hat_complex(*f.dst, gd);
    auto u1_matrix = [&](const BoxResult& b) {
        int n = b.cx->rank();
        F2Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (const auto& [j, p] : b.cx->dif(i))
                if (!p.is_zero()) m.set(j, i, m.get(j, i) ^ (p.m.size() & 1));
        return m;
    };
    F2Matrix ds = u1_matrix(bs), dd = u1_matrix(bd);
    auto rank = [](F2Matrix m) {
        int r = 0;
        for (int c = 0; c < m.cols; ++c) {
            int p = -1;
            for (int i = r; i < m.rows; ++i)
                if (m.get(i, c)) { p = i; break; }
            if (p < 0) continue;
            std::swap(m.row[p], m.row[r]);
            for (int i = 0; i < m.rows; ++i)
                if (i != r && m.get(i, c)) m.row[i].xor_with(m.row[r]);
            ++r;
        }
        return r;
    };
    int hs = bs.cx->rank() - 2 * rank(ds);
    int hd = bd.cx->rank() - 2 * rank(dd);
    if (hs != 1 || hd != 1) throw std::invalid_argument("is_local_typeD: hat homology rank != 1");
    GMap fm = box_tensor_morphism(cfa_nu(std::max(nu_cap_for(*f.src), nu_cap_for(*f.dst))), f, bs, bd);
    // induced map at U = 1 on homology: pick a cycle generating H(src), check image not a boundary
    AffineResult kz = solve_affine_f2(ds, BitVec(bs.cx->rank()));
    F2Matrix fmat(bd.cx->rank(), bs.cx->rank());
    for (int i = 0; i < bs.cx->rank(); ++i)
        for (const auto& [j, p] : fm.e[i])
            if (!p.is_zero()) fmat.set(j, i, fmat.get(j, i) ^ (p.m.size() & 1));
    // homology generator of src: a cycle independent from boundaries
    std::map<int, BitVec> span;
    auto insert = [&](BitVec v) {
        while (true) {
            int l = v.lowest_set();
            if (l < 0) return false;
            auto it = span.find(l);
            if (it == span.end()) { span.emplace(l, v); return true; }
            v.xor_with(it->second);
        }
    };
    for (int i = 0; i < bs.cx->rank(); ++i) {
        BitVec col(bs.cx->rank());
        for (int j = 0; j < bs.cx->rank(); ++j)
            if (ds.get(j, i)) col.set(j, true);
        insert(col);
    }
    BitVec cyc(bs.cx->rank());
    bool found = false;
    for (const BitVec& z : kz.sol->kernel) {
        BitVec t = z;
        if (insert(t)) { cyc = z; found = true; break; }
    }
    if (!found) throw std::logic_error("is_local_typeD: no homology generator found");
    BitVec img = fmat.mul(cyc);
    // nonzero in homology iff img not in the boundary span of dst
    std::map<int, BitVec> spand;
    auto insertd = [&](BitVec v) {
        while (true) {
            int l = v.lowest_set();
            if (l < 0) return false;
            auto it = spand.find(l);
            if (it == spand.end()) { spand.emplace(l, v); return true; }
            v.xor_with(it->second);
        }
    };
    for (int i = 0; i < bd.cx->rank(); ++i) {
        BitVec col(bd.cx->rank());
        for (int j = 0; j < bd.cx->rank(); ++j)
            if (dd.get(j, i)) col.set(j, true);
        insertd(col);
    }
    return insertd(img);
}

bool typeD_isomorphic(const TypeD& a, const TypeD& b) {
    if (a.rank() != b.rank()) return false;
    // backtracking search for an idempotent- and arrow-preserving bijection
    int n = a.rank();
    std::vector<int> assign(n, -1), used(n, 0);
    auto arrows_of = [](const TypeD& m, int i) {
        std::vector<std::pair<int, int>> out;  // (rho, to)
        for (const auto& [r, j] : m.arrows[i]) out.push_back({int(r), j});
        std::sort(out.begin(), out.end());
        return out;
    };
    std::function<bool(int)> rec = [&](int i) -> bool {
        if (i == n) {
            for (int x = 0; x < n; ++x) {
                auto ar = arrows_of(a, x);
                std::vector<std::pair<int, int>> mapped;
                for (auto [r, j] : ar) mapped.push_back({r, assign[j]});
                std::sort(mapped.begin(), mapped.end());
                if (mapped != arrows_of(b, assign[x])) return false;
            }
            return true;
        }
        for (int y = 0; y < n; ++y) {
            if (used[y] || a.gens[i].idem != b.gens[y].idem) continue;
            if (a.arrows[i].size() != b.arrows[y].size()) continue;
            assign[i] = y;
            used[y] = 1;
            if (rec(i + 1)) return true;
            used[y] = 0;
            assign[i] = -1;
        }
        return false;
    };
    return rec(0);
}

}  // namespace kfc
