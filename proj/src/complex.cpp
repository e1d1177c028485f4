#include "kfc/complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace kfc {

static const Poly kZero{};

Complex::Complex(Ring ring, std::vector<Generator> gens) : ring_(ring), gens_(std::move(gens)) {
    for (int i = 0; i < int(gens_.size()); ++i) {
        if (!index_.emplace(gens_[i].label, i).second)
            throw std::invalid_argument("Complex: duplicate generator label " + gens_[i].label);
    }
    d_.assign(gens_.size(), {});
}

int Complex::index_of(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? -1 : it->second;
}

const Poly& Complex::entry(int from, int to) const {
    const auto& row = d_[from];
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](const auto& p, int t) { return p.first < t; });
    if (it != row.end() && it->first == to) return it->second;
    return kZero;
}

void Complex::set_entry(int from, int to, const Poly& p) {
    Poly q = reduce_ring(p, ring_);
    auto& row = d_[from];
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](const auto& a, int t) { return a.first < t; });
    if (it != row.end() && it->first == to) {
        if (q.is_zero()) row.erase(it); else it->second = q;
    } else if (!q.is_zero()) {
        row.insert(it, {to, q});
    }
}

void Complex::add_entry(int from, int to, const Poly& p) {
    set_entry(from, to, add(entry(from, to), p));
}

std::vector<Poly> Complex::apply_d(const std::vector<Poly>& x) const {
    std::vector<Poly> y(rank());
    for (int i = 0; i < rank(); ++i) {
        if (x[i].is_zero()) continue;
        for (const auto& [j, c] : d_[i]) y[j] = add(y[j], mul_ring(x[i], c, ring_));
    }
    return y;
}

bool Complex::operator==(const Complex& o) const {
    if (ring_ != o.ring_ || gens_.size() != o.gens_.size()) return false;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].label != o.gens_[i].label || gens_[i].gr != o.gens_[i].gr) return false;
    return d_ == o.d_;
}

// ---- maps

GMap GMap::zero(ComplexPtr s, ComplexPtr t, Grading shift, bool skew) {
    GMap f;
    f.src = std::move(s);
    f.dst = std::move(t);
    f.shift = shift;
    f.skew = skew;
    f.e.assign(f.src->rank(), {});
    return f;
}

GMap GMap::identity(ComplexPtr c) {
    GMap f = zero(c, c);
    for (int i = 0; i < c->rank(); ++i) f.e[i].push_back({i, Poly::unit()});
    return f;
}

const Poly& GMap::entry(int from, int to) const {
    const auto& row = e[from];
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](const auto& p, int t) { return p.first < t; });
    if (it != row.end() && it->first == to) return it->second;
    return kZero;
}

void GMap::set_entry(int from, int to, const Poly& p) {
    Poly q = reduce_ring(p, dst->ring());
    auto& row = e[from];
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](const auto& a, int t) { return a.first < t; });
    if (it != row.end() && it->first == to) {
        if (q.is_zero()) row.erase(it); else it->second = q;
    } else if (!q.is_zero()) {
        row.insert(it, {to, q});
    }
}

void GMap::add_entry(int from, int to, const Poly& p) { set_entry(from, to, add(entry(from, to), p)); }

bool GMap::is_zero() const {
    for (const auto& row : e)
        if (!row.empty()) return false;
    return true;
}

bool GMap::operator==(const GMap& o) const {
    return shift == o.shift && skew == o.skew && e == o.e;
}

std::vector<Poly> apply_map(const GMap& f, const std::vector<Poly>& x) {
    std::vector<Poly> y(f.dst->rank());
    Ring ring = f.dst->ring();
    for (int i = 0; i < f.src->rank(); ++i) {
        if (x[i].is_zero()) continue;
        Poly c = f.skew ? conj_uv(x[i]) : x[i];
        for (const auto& [j, v] : f.e[i]) y[j] = add(y[j], mul_ring(c, v, ring));
    }
    return y;
}

GMap compose(const GMap& g, const GMap& f) {
    if (f.dst->rank() != g.src->rank())
        throw std::invalid_argument("compose: shape mismatch");
    Grading s = g.skew ? swap_gr(f.shift) + g.shift : f.shift + g.shift;
    GMap h = GMap::zero(f.src, g.dst, s, f.skew != g.skew);
    Ring ring = g.dst->ring();
    for (int i = 0; i < f.src->rank(); ++i) {
        for (const auto& [j, c] : f.e[i]) {
            Poly cc = g.skew ? conj_uv(c) : c;
            for (const auto& [k, d] : g.e[j]) h.add_entry(i, k, mul_ring(cc, d, ring));
        }
    }
    return h;
}

GMap add(const GMap& f, const GMap& g) {
    if (f.shift != g.shift || f.skew != g.skew || f.src->rank() != g.src->rank() ||
        f.dst->rank() != g.dst->rank())
        throw std::invalid_argument("add(GMap): shape mismatch");
    GMap h = f;
    for (int i = 0; i < g.src->rank(); ++i)
        for (const auto& [j, c] : g.e[i]) h.add_entry(i, j, c);
    return h;
}

GMap differential_map(ComplexPtr c) {
    GMap f = GMap::zero(c, c, Grading{-1, -1});
    for (int i = 0; i < c->rank(); ++i)
        for (const auto& [j, p] : c->dif(i)) f.e[i].push_back({j, p});
    return f;
}

std::optional<Mono> admissible_mono(Ring ring, Grading gx, Grading gy, Grading shift, bool skew) {
    Grading from = skew ? swap_gr(gx) : gx;
    // gr(U^a V^b y) = gy + (-2a, -2b) must equal from + shift
    int du = gy.u - from.u - shift.u;
    int dv = gy.v - from.v - shift.v;
    if (du % 2 != 0 || dv % 2 != 0) return std::nullopt;
    Mono t{du / 2, dv / 2};
    if (t.u < 0 || t.v < 0) return std::nullopt;
    if (!ring_admits(ring, t)) return std::nullopt;
    return t;
}

bool is_chain_map(const GMap& f) {
    GMap lhs = compose(differential_map(f.dst), f);
    GMap rhs = compose(f, differential_map(f.src));
    return add(lhs, rhs).is_zero();
}

bool is_homogeneous(const GMap& f) {
    for (int i = 0; i < f.src->rank(); ++i) {
        for (const auto& [j, p] : f.e[i]) {
            auto t = admissible_mono(f.dst->ring(), f.src->gen(i).gr, f.dst->gen(j).gr, f.shift, f.skew);
            for (Mono q : p.m)
                if (!t || !(q == *t)) return false;
        }
    }
    return true;
}

// ---- validation

ValidationReport validate(const Complex& c) {
    ValidationReport rep;
    for (const auto& g : c.gens()) {
        if ((g.gr.u - g.gr.v) % 2 != 0)
            rep.errors.push_back("generator " + g.label + ": Alexander grading not integral");
    }
    // homogeneity: each entry must be the single admissible monomial
    for (int i = 0; i < c.rank(); ++i) {
        for (const auto& [j, p] : c.dif(i)) {
            auto t = admissible_mono(c.ring(), c.gen(i).gr, c.gen(j).gr, Grading{-1, -1}, false);
            bool ok = true;
            for (Mono q : p.m)
                if (!t || !(q == *t)) ok = false;
            if (!ok)
                rep.errors.push_back("inhomogeneous differential entry (" + c.gen(i).label + " -> " +
                                     c.gen(j).label + ")");
        }
    }
    // d^2 = 0
    for (int i = 0; i < c.rank(); ++i) {
        std::vector<Poly> x(c.rank());
        x[i] = Poly::unit();
        std::vector<Poly> y = c.apply_d(c.apply_d(x));
        for (int j = 0; j < c.rank(); ++j)
            if (!y[j].is_zero())
                rep.errors.push_back("d^2 != 0 at (" + c.gen(i).label + " -> " + c.gen(j).label + ")");
    }
    return rep;
}

// ---- truncation

Complex truncate(const Complex& c, TruncMode mode) {
    Ring in = c.ring();
    bool uv_family = (in == Ring::R || in == Ring::F2UV);
    Ring out = Ring::F2;
    bool swap_roles = false;
    switch (mode) {
        case TruncMode::SetV0:
            if (!uv_family) throw std::invalid_argument("truncate: V=0 requires a V in the ring");
            out = Ring::F2U;
            break;
        case TruncMode::SetU0:
            if (in == Ring::F2U) out = Ring::F2;
            else if (uv_family) { out = Ring::F2U; swap_roles = true; }
            else throw std::invalid_argument("truncate: U=0 requires a U in the ring");
            break;
        case TruncMode::SetUV0:
            if (in == Ring::F2) throw std::invalid_argument("truncate: ring is already F2");
            out = Ring::F2;
            break;
        case TruncMode::ModUV:
            if (in != Ring::F2UV) throw std::invalid_argument("truncate: mod UV requires F2[U,V]");
            out = Ring::R;
            break;
    }
    std::vector<Generator> gens = c.gens();
    if (swap_roles)
        for (auto& g : gens) g.gr = swap_gr(g.gr);
    Complex t(out, std::move(gens));
    for (int i = 0; i < c.rank(); ++i) {
        for (const auto& [j, p] : c.dif(i)) {
            Poly q = swap_roles ? conj_uv(p) : p;
            Poly kept;
            for (Mono m : q.m) {
                bool kill = false;
                switch (mode) {
                    case TruncMode::SetV0: kill = m.v > 0; break;
                    case TruncMode::SetU0: kill = swap_roles ? m.v > 0 : m.u > 0; break;
                    case TruncMode::SetUV0: kill = m.u > 0 || m.v > 0; break;
                    case TruncMode::ModUV: kill = m.mixed(); break;
                }
                if (!kill) kept.m.push_back(m);
            }
            std::sort(kept.m.begin(), kept.m.end());
            if (!kept.is_zero()) t.set_entry(i, j, kept);
        }
    }
    return t;
}

Complex hat(const Complex& c) {
    switch (c.ring()) {
        case Ring::F2: return c;
        case Ring::F2U: return truncate(c, TruncMode::SetU0);
        default: return truncate(c, TruncMode::SetUV0);
    }
}

GMap hat_map(const GMap& f, ComplexPtr hat_src, ComplexPtr hat_dst) {
    GMap h = GMap::zero(std::move(hat_src), std::move(hat_dst), f.shift, f.skew);
    for (int i = 0; i < f.src->rank(); ++i)
        for (const auto& [j, p] : f.e[i])
            for (Mono m : p.m)
                if (m.u == 0 && m.v == 0) h.add_entry(i, j, Poly::unit());
    return h;
}

// ---- tensor & dual

std::string tensor_label(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

Complex tensor(const Complex& a, const Complex& b) {
    if (a.ring() != b.ring()) throw std::invalid_argument("tensor: ring mismatch");
    std::vector<Generator> gens;
    gens.reserve(size_t(a.rank()) * size_t(b.rank()));
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j)
            gens.push_back({tensor_label(a.gen(i).label, b.gen(j).label), a.gen(i).gr + b.gen(j).gr});
    Complex t(a.ring(), std::move(gens));
    auto idx = [&](int i, int j) { return i * b.rank() + j; };
    for (int i = 0; i < a.rank(); ++i) {
        for (int j = 0; j < b.rank(); ++j) {
            for (const auto& [k, p] : a.dif(i)) t.add_entry(idx(i, j), idx(k, j), p);
            for (const auto& [k, p] : b.dif(j)) t.add_entry(idx(i, j), idx(i, k), p);
        }
    }
    return t;
}

GMap tensor_map(const GMap& f, const GMap& g, ComplexPtr src, ComplexPtr dst) {
    if (f.skew != g.skew) throw std::invalid_argument("tensor_map: mixed skewness");
    GMap h = GMap::zero(std::move(src), std::move(dst), f.shift + g.shift, f.skew);
    int bn = g.src->rank(), dn = g.dst->rank();
    Ring ring = h.dst->ring();
    for (int i = 0; i < f.src->rank(); ++i)
        for (int j = 0; j < bn; ++j)
            for (const auto& [k, p] : f.e[i])
                for (const auto& [l, q] : g.e[j])
                    h.add_entry(i * bn + j, k * dn + l, mul_ring(p, q, ring));
    return h;
}

std::string dual_label(const std::string& a) { return a + "'"; }

Complex dualize(const Complex& c) {
    std::vector<Generator> gens;
    gens.reserve(c.rank());
    for (const auto& g : c.gens()) gens.push_back({dual_label(g.label), Grading{-g.gr.u, -g.gr.v}});
    Complex t(c.ring(), std::move(gens));
    for (int i = 0; i < c.rank(); ++i)
        for (const auto& [j, p] : c.dif(i)) t.set_entry(j, i, p);
    return t;
}

// ---- reduction (Gaussian elimination of unit differential entries)

Reduction reduce(const Complex& c) {
    // Work on a mutable copy with alive flags; maintain to/from/homotopy as dense steps.
    ComplexPtr orig = std::make_shared<Complex>(c);
    Complex cur = c;
    GMap to = GMap::identity(orig);       // will become C -> reduced (dst fixed later)
    GMap from = GMap::identity(orig);     // reduced -> C
    GMap h = GMap::zero(orig, orig, Grading{1, 1});
    std::vector<bool> alive(c.rank(), true);

    // Pivots must have coefficient exactly 1 (the only unit of these rings); homogeneous
    // complexes have single-monomial entries, so this finds every cancellable pair.
    auto find_unit = [&]() -> std::pair<int, int> {
        for (int i = 0; i < cur.rank(); ++i) {
            if (!alive[i]) continue;
            for (const auto& [j, p] : cur.dif(i))
                if (alive[j] && p.is_unit()) return {i, j};
        }
        return {-1, -1};
    };

    while (true) {
        auto [x, y] = find_unit();
        if (x < 0) break;
        // d x = y + r; record r and the incoming coefficients before mutating.
        std::vector<std::pair<int, Poly>> r;  // d x minus the unit y term
        for (const auto& [j, p] : cur.dif(x)) {
            if (!alive[j] || j == y) continue;
            r.push_back({j, p});
        }
        std::vector<std::pair<int, Poly>> into_y;  // coefficient of y in d w, w != x
        for (int w = 0; w < cur.rank(); ++w) {
            if (!alive[w] || w == x) continue;
            const Poly& cw = cur.entry(w, y);
            if (!cw.is_zero()) into_y.push_back({w, cw});
        }
        // New differential: d'(w) = d(w) + c_w * (d x), restricted to survivors.
        for (const auto& [w, cw] : into_y)
            for (const auto& [j, p] : r)
                cur.add_entry(w, j, mul_ring(cw, p, cur.ring()));
        alive[x] = alive[y] = false;
        for (int w = 0; w < cur.rank(); ++w) {
            cur.set_entry(w, x, Poly::zero());
            cur.set_entry(w, y, Poly::zero());
            if (w == x || w == y)
                for (int j = 0; j < cur.rank(); ++j) cur.set_entry(w, j, Poly::zero());
        }
        // Step maps on the full index set:
        //   F(x) = 0, F(y) = r, F(w) = w.         (projection)
        //   G(w) = w + <d w, y> x, G(x) = G(y) = 0.  (inclusion of the complement)
        //   h(y) = x.
        GMap F = GMap::identity(orig);
        F.e[x].clear();
        F.e[y].clear();
        for (const auto& [j, p] : r) F.e[y].push_back({j, p});
        std::sort(F.e[y].begin(), F.e[y].end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        GMap G = GMap::identity(orig);
        G.e[x].clear();
        G.e[y].clear();
        for (const auto& [w, cw] : into_y) G.add_entry(w, x, cw);
        GMap step_h = GMap::zero(orig, orig, Grading{1, 1});
        step_h.add_entry(y, x, Poly::unit());
        // Compose: to := F to, from := from G, h := h + from step_h to   (deformation retract calculus)
        GMap new_h = add(h, compose(compose(from, step_h), to));
        to = compose(F, to);
        from = compose(from, G);
        h = new_h;
    }

    // Assemble reduced complex on surviving generators.
    std::vector<int> keep;
    for (int i = 0; i < c.rank(); ++i)
        if (alive[i]) keep.push_back(i);
    std::vector<Generator> gens;
    for (int i : keep) gens.push_back(c.gen(i));
    Complex red(c.ring(), std::move(gens));
    std::vector<int> pos(c.rank(), -1);
    for (int k = 0; k < int(keep.size()); ++k) pos[keep[k]] = k;
    for (int i : keep)
        for (const auto& [j, p] : cur.dif(i))
            if (pos[j] >= 0) red.set_entry(pos[i], pos[j], p);
    ComplexPtr redp = std::make_shared<Complex>(std::move(red));

    Reduction out;
    out.reduced = redp;
    out.to_reduced = GMap::zero(orig, redp);
    for (int i = 0; i < c.rank(); ++i)
        for (const auto& [j, p] : to.e[i])
            if (pos[j] >= 0) out.to_reduced.add_entry(i, pos[j], p);
    out.from_reduced = GMap::zero(redp, orig);
    for (int k = 0; k < int(keep.size()); ++k)
        for (const auto& [j, p] : from.e[keep[k]]) out.from_reduced.add_entry(k, j, p);
    out.homotopy = h;
    return out;
}

}  // namespace kfc
