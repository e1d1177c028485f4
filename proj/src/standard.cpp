#include "kfc/standard.hpp"

#include <stdexcept>

namespace kfc {

namespace {

GMap iota_from_table(ComplexPtr hat_cx,
                     const std::vector<std::pair<std::string, std::vector<std::string>>>& table) {
    GMap f = GMap::zero(hat_cx, hat_cx, Grading{0, 0}, true);
    for (const auto& [from, tos] : table) {
        int i = hat_cx->index_of(from);
        for (const auto& t : tos) f.add_entry(i, hat_cx->index_of(t), Poly::unit());
    }
    return f;
}

Poly upow(int k) { return Poly{Mono{k, 0}}; }
Poly vpow(int k) { return Poly{Mono{0, k}}; }

}  // namespace

IotaComplex make_CO() {
    Complex c(Ring::F2U, {{"1", {0, 0}}});
    ComplexPtr cp = std::make_shared<Complex>(std::move(c));
    ComplexPtr hp = std::make_shared<Complex>(hat(*cp));
    GMap iota = GMap::identity(hp);
    iota.skew = true;
    GMap lift = GMap::zero(cp, cp, Grading{-1, 1});
    return make_iota_complex(cp, Flavor::Horizontal, iota, std::nullopt, lift);
}

IotaComplex make_CE() {
    Complex c(Ring::F2U, {{"a", from_am(0, 0)},
                          {"b", from_am(1, 1)},
                          {"c", from_am(-1, -1)},
                          {"d", from_am(0, 0)},
                          {"x", from_am(0, 0)}});
    c.set_entry(0, 1, upow(1));  // da = Ub
    c.set_entry(2, 3, upow(1));  // dc = Ud
    ComplexPtr cp = std::make_shared<Complex>(std::move(c));
    ComplexPtr hp = std::make_shared<Complex>(hat(*cp));
    GMap iota = iota_from_table(hp, {{"a", {"a", "x"}}, {"b", {"c"}}, {"c", {"b"}}, {"d", {"d"}}, {"x", {"x", "d"}}});
    // psi-lift: a -> c, b -> d is a chain map with hat equal to iota Phi iota.
    GMap lift = GMap::zero(cp, cp, Grading{-1, 1});
    lift.set_entry(0, 2, Poly::unit());
    lift.set_entry(1, 3, Poly::unit());
    return make_iota_complex(cp, Flavor::Horizontal, iota, std::nullopt, lift);
}

IotaComplex make_Cn(int n) {
    if (n < 1) throw std::invalid_argument("make_Cn: n >= 1 required");
    std::string s = std::to_string(n);
    Complex c(Ring::F2U, {{"a" + s, from_am(0, 0)},
                          {"b" + s, from_am(n, 2 * n - 1)},
                          {"c" + s, from_am(-n, -1)},
                          {"d" + s, from_am(0, 2 * n - 2)},
                          {"x" + s, from_am(0, 0)}});
    c.set_entry(0, 1, upow(n));
    c.set_entry(2, 3, upow(n));
    ComplexPtr cp = std::make_shared<Complex>(std::move(c));
    ComplexPtr hp = std::make_shared<Complex>(hat(*cp));
    GMap iota = iota_from_table(hp, {{"a" + s, {"a" + s, "x" + s}},
                                     {"b" + s, {"c" + s}},
                                     {"c" + s, {"b" + s}},
                                     {"d" + s, {"d" + s}},
                                     {"x" + s, {"x" + s}}});
    GMap lift = GMap::zero(cp, cp, Grading{-1, 1});
    if (n == 1) {
        lift.set_entry(0, 2, Poly::unit());
        lift.set_entry(1, 3, Poly::unit());
    }
    return make_iota_complex(cp, Flavor::Horizontal, iota, std::nullopt, lift);
}

IotaComplex make_CFK_UV_E() {
    Complex c(Ring::F2UV, {{"x", {0, 0}}, {"h", {0, 0}}, {"s", {1, -1}}, {"t", {-1, 1}}, {"z", {0, 0}}});
    int x = 0, h = 1, s = 2, t = 3, z = 4;
    c.set_entry(h, s, upow(1));
    c.set_entry(h, t, vpow(1));
    c.set_entry(s, z, vpow(1));
    c.set_entry(t, z, upow(1));
    (void)x;
    ComplexPtr cp = std::make_shared<Complex>(std::move(c));
    GMap full = GMap::zero(cp, cp, Grading{0, 0}, true);
    full.set_entry(1, 1, Poly::unit());  // h -> h + x
    full.set_entry(1, 0, Poly::unit());
    full.set_entry(0, 0, Poly::unit());  // x -> x + z
    full.set_entry(0, 4, Poly::unit());
    full.set_entry(2, 3, Poly::unit());  // s -> t
    full.set_entry(3, 2, Poly::unit());  // t -> s
    full.set_entry(4, 4, Poly::unit());  // z -> z
    ComplexPtr hp = std::make_shared<Complex>(hat(*cp));
    GMap iota = hat_map(full, hp, hp);
    return make_iota_complex(cp, Flavor::FullUV, iota, full);
}

IotaComplex make_cable_summand(int n) {
    if (n < 1) throw std::invalid_argument("make_cable_summand: n >= 1 required");
    // Gradings are forced by homogeneity of the differential and involution,
    // anchored at a = (0,0); derive and verify rather than hard-code blindly.
    Grading gb{0, 0};
    Grading ga = gb;                                  // iota(b) = b + a forces gr a = swap gr b = gr b
    Grading gc{gb.u + 2 * n - 1, gb.v - 1};           // db ~ U^n c
    Grading ge{gb.u - 1, gb.v + 2 * n - 1};           // db ~ V^n e
    Grading gd{gb.u + 1, gb.v + 1};                   // db ~ UV d
    Grading gf{gc.u - 1, gc.v + 1};                   // dc = V f
    Grading gg{ge.u + 1, ge.v - 1};                   // de = U g
    Complex c(Ring::F2UV, {{"a", ga}, {"b", gb}, {"c", gc}, {"d", gd}, {"e", ge}, {"f", gf}, {"g", gg}});
    int a = 0, b = 1, cc = 2, d = 3, e = 4, f = 5, g = 6;
    c.set_entry(b, cc, upow(n));
    c.set_entry(b, d, Poly{Mono{1, 1}});
    c.set_entry(b, e, vpow(n));
    c.set_entry(cc, f, vpow(1));
    c.set_entry(e, g, upow(1));
    c.set_entry(d, f, upow(n - 1));
    c.set_entry(d, g, vpow(n - 1));
    ComplexPtr cp = std::make_shared<Complex>(std::move(c));
    {
        ValidationReport vr = validate(*cp);
        if (!vr.ok()) throw std::logic_error("make_cable_summand: derived gradings inconsistent");
    }
    GMap full = GMap::zero(cp, cp, Grading{0, 0}, true);
    full.set_entry(a, a, Poly::unit());
    full.set_entry(a, f, upow(n - 1));  // a -> a + U^{n-1} f
    full.set_entry(b, b, Poly::unit());
    full.set_entry(b, a, Poly::unit());  // b -> b + a
    full.set_entry(cc, e, Poly::unit());
    full.set_entry(e, cc, Poly::unit());
    full.set_entry(f, g, Poly::unit());
    full.set_entry(g, f, Poly::unit());
    full.set_entry(d, d, Poly::unit());
    if (!is_homogeneous(full) || !is_chain_map(full))
        throw std::logic_error("make_cable_summand: involution fails verification");
    ComplexPtr hp = std::make_shared<Complex>(hat(*cp));
    GMap iota = hat_map(full, hp, hp);
    return make_iota_complex(cp, Flavor::FullUV, iota, full);
}

CableFig8Map cable_fig8_map(int n) {
    if (n < 1) throw std::invalid_argument("cable_fig8_map: n >= 1 required");
    CableFig8Map out;
    out.source = make_CFK_UV_E();
    out.target = make_cable_summand(n);
    ComplexPtr S = out.source.cx, T = out.target.cx;
    GMap f = GMap::zero(S, T, Grading{0, 0}, false);
    int x = S->index_of("x"), h = S->index_of("h"), s = S->index_of("s"), t = S->index_of("t"),
        z = S->index_of("z");
    int a = T->index_of("a"), b = T->index_of("b"), c = T->index_of("c"), d = T->index_of("d"),
        e = T->index_of("e"), g = T->index_of("g");
    f.set_entry(x, a, Poly::unit());
    f.set_entry(h, b, Poly::unit());
    f.set_entry(s, c, upow(n - 1));  // f(s) = U^{n-1} c + V d
    f.set_entry(s, d, vpow(1));
    f.set_entry(t, e, vpow(n - 1));  // f(t) = V^{n-1} e
    f.set_entry(z, g, vpow(n - 1));  // f(z) = V^{n-1} g
    GMap H = GMap::zero(S, T, Grading{1, 1}, true);
    H.set_entry(z, d, Poly::unit());
    H.set_entry(x, d, Poly::unit());
    out.f = f;
    out.H = H;
    return out;
}

LadderMap cn_ladder_map(int n) {
    if (n < 1) throw std::invalid_argument("cn_ladder_map: n >= 1 required");
    LadderMap out;
    out.source = make_Cn(n);
    out.target = make_Cn(n + 1);
    std::string s = std::to_string(n), s1 = std::to_string(n + 1);
    GMap f = GMap::zero(out.source.cx, out.target.cx, Grading{0, 0}, false);
    f.set_entry(out.source.cx->index_of("a" + s), out.target.cx->index_of("a" + s1), Poly::unit());
    f.set_entry(out.source.cx->index_of("b" + s), out.target.cx->index_of("b" + s1), upow(1));
    f.set_entry(out.source.cx->index_of("x" + s), out.target.cx->index_of("x" + s1), Poly::unit());
    out.f = f;
    return out;
}

}  // namespace kfc
