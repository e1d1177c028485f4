#include "kfc/f2u.hpp"

#include <algorithm>
#include <stdexcept>

namespace kfc {

namespace {

// A single basis change g_a := g_a + mono * g_b applied to a differential matrix and to the
// running coordinate isos. Row a gains mono*row b; column b gains mono*column a.
struct Changer {
    Complex cx;        // current differential (matrix holder)
    GMap to_std;       // original -> current coordinates
    GMap from_std;     // current -> original
    explicit Changer(const Complex& c, ComplexPtr orig)
        : cx(c), to_std(GMap::identity(orig)), from_std(GMap::identity(orig)) {}

    void add_multiple(int a, int b, Mono mono) {
        if (a == b) throw std::logic_error("add_multiple: a == b");
        Ring ring = cx.ring();
        Poly pm{mono};
        // row a += mono * row b
        std::vector<std::pair<int, Poly>> rowb = cx.dif(b);
        for (const auto& [j, p] : rowb) cx.add_entry(a, j, mul_ring(pm, p, ring));
        // column b += mono * column a
        for (int w = 0; w < cx.rank(); ++w) {
            const Poly& cwa = cx.entry(w, a);
            if (!cwa.is_zero()) cx.add_entry(w, b, mul_ring(pm, cwa, ring));
        }
        // coordinates: old g_a expressed in new basis picks up mono * g_b^new;
        // to_std: x'_b += mono x_a  <=>  (as generator images) g_a -> g_a + mono g_b.
        // Compose with the existing maps.
        for (int i = 0; i < to_std.src->rank(); ++i) {
            Poly ca = to_std.entry(i, a);
            if (!ca.is_zero()) to_std.add_entry(i, b, mul_ring(pm, ca, ring));
        }
        // from_std: new g_a = old-expression(g_a) + mono * old-expression(g_b).
        std::vector<std::pair<int, Poly>> fb = from_std.e[b];
        for (const auto& [j, p] : fb) from_std.add_entry(a, j, mul_ring(pm, p, ring));
    }
};

bool pure_power(const Poly& p, bool var_u, int* k) {
    if (p.m.size() != 1) return false;
    Mono t = p.m[0];
    if (var_u ? t.v != 0 : t.u != 0) return false;
    *k = var_u ? t.u : t.v;
    return true;
}

}  // namespace

StandardForm standardize_var(const Complex& c, bool var_u) {
    ComplexPtr orig = std::make_shared<Complex>(c);
    Changer ch(c, orig);
    std::vector<bool> active(c.rank(), true);
    std::vector<StdPair> pairs;

    auto find_pivot = [&]() -> StdPair {
        StdPair best;
        int bestk = -1;
        for (int i = 0; i < ch.cx.rank(); ++i) {
            if (!active[i]) continue;
            for (const auto& [j, p] : ch.cx.dif(i)) {
                if (!active[j]) continue;
                int k;
                if (pure_power(p, var_u, &k) && (bestk < 0 || k < bestk)) {
                    best = {i, j, k};
                    bestk = k;
                }
            }
        }
        return best;
    };

    while (true) {
        StdPair piv = find_pivot();
        if (piv.head < 0) break;
        int x = piv.head, y = piv.tail, k = piv.order;
        // clear other entries into y
        while (true) {
            int w = -1, m = 0;
            for (int i = 0; i < ch.cx.rank(); ++i) {
                if (i == x || !active[i]) continue;
                int mm;
                if (pure_power(ch.cx.entry(i, y), var_u, &mm)) { w = i; m = mm; break; }
            }
            if (w < 0) break;
            if (m < k) throw std::logic_error("standardize_var: pivot not minimal");
            ch.add_multiple(w, x, var_u ? Mono{m - k, 0} : Mono{0, m - k});
            if (!ch.cx.entry(w, y).is_zero())
                throw std::logic_error("standardize_var: clearing into tail failed");
        }
        // clear other entries out of x
        while (true) {
            int z = -1, l = 0;
            for (const auto& [j, p] : ch.cx.dif(x)) {
                if (j == y || !active[j]) continue;
                int ll;
                if (pure_power(p, var_u, &ll)) { z = j; l = ll; break; }
            }
            if (z < 0) break;
            if (l < k) throw std::logic_error("standardize_var: pivot not minimal");
            ch.add_multiple(y, z, var_u ? Mono{l - k, 0} : Mono{0, l - k});
            if (!ch.cx.entry(x, z).is_zero())
                throw std::logic_error("standardize_var: clearing out of head failed");
        }
        active[x] = active[y] = false;
        pairs.push_back(piv);
    }

    StandardForm sf;
    sf.domain = orig;
    sf.std_cx = std::make_shared<Complex>(ch.cx);
    sf.to_std = ch.to_std;
    sf.to_std.dst = sf.std_cx;
    sf.from_std = ch.from_std;
    sf.from_std.src = sf.std_cx;
    sf.pairs = std::move(pairs);
    for (int i = 0; i < c.rank(); ++i)
        if (active[i]) sf.free_gens.push_back(i);
    return sf;
}

F2UHomology homology_over_f2u(const Complex& c) {
    if (c.ring() != Ring::F2U)
        throw std::invalid_argument("homology_over_f2u: ring must be F2[U]");
    F2UHomology h;
    h.sf = standardize_f2u(c);
    h.free_rank = int(h.sf.free_gens.size());
    for (const auto& p : h.sf.pairs)
        if (p.order >= 1) h.torsion_orders.push_back(p.order);
    std::sort(h.torsion_orders.begin(), h.torsion_orders.end());
    if (h.free_rank == 1) {
        int f = h.sf.free_gens[0];
        std::vector<Poly> e(h.sf.std_cx->rank());
        e[f] = Poly::unit();
        h.free_rep = apply_map(h.sf.from_std, e);
        h.free_rep_grading = h.sf.std_cx->gen(f).gr;
    }
    return h;
}

std::vector<Poly> std_coords(const StandardForm& sf, const std::vector<Poly>& v) {
    return apply_map(sf.to_std, v);
}

Poly free_class_coefficient(const F2UHomology& h, const std::vector<Poly>& cycle) {
    if (h.free_rank != 1) throw std::invalid_argument("free_class_coefficient: free rank != 1");
    std::vector<Poly> sc = std_coords(h.sf, cycle);
    return sc[h.sf.free_gens[0]];
}

F2UInvariants f2u_invariants(const Complex& c) {
    StandardForm sf = standardize_var(c, true);
    F2UInvariants inv;
    for (int i : sf.free_gens) inv.free_gradings.push_back(sf.std_cx->gen(i).gr);
    std::sort(inv.free_gradings.begin(), inv.free_gradings.end());
    for (const auto& p : sf.pairs)
        inv.pair_data.push_back({sf.std_cx->gen(p.head).gr, p.order});
    std::sort(inv.pair_data.begin(), inv.pair_data.end(),
              [](const auto& a, const auto& b) {
                  return a.first < b.first || (a.first == b.first && a.second < b.second);
              });
    return inv;
}

bool graded_isomorphic_f2u(const Complex& a, const Complex& b) {
    return f2u_invariants(a) == f2u_invariants(b);
}

}  // namespace kfc
