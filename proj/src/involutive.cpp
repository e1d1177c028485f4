#include "kfc/involutive.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace kfc {

IotaComplex make_iota_complex(ComplexPtr cx, Flavor flavor, GMap iota_hat,
                              std::optional<GMap> full_iota, std::optional<GMap> psi_lift) {
    IotaComplex X;
    X.cx = std::move(cx);
    X.flavor = flavor;
    X.hat_cx = std::make_shared<Complex>(hat(*X.cx));
    X.iota = std::move(iota_hat);
    X.iota.src = X.hat_cx;
    X.iota.dst = X.hat_cx;
    X.full_iota = std::move(full_iota);
    X.psi_lift = std::move(psi_lift);
    return X;
}

GMap phi(ComplexPtr c, bool wrt_u) {
    Ring ring = c->ring();
    bool has_u = ring == Ring::F2U || ring == Ring::R || ring == Ring::F2UV;
    bool has_v = ring == Ring::R || ring == Ring::F2UV;
    if (wrt_u ? !has_u : !has_v) throw std::invalid_argument("phi: variable not in the ring");
    GMap f = GMap::zero(c, c, wrt_u ? Grading{1, -1} : Grading{-1, 1});
    for (int i = 0; i < c->rank(); ++i)
        for (const auto& [j, p] : c->dif(i)) {
            Poly q = wrt_u ? d_du(p) : d_dv(p);
            if (!q.is_zero()) f.add_entry(i, j, q);
        }
    return f;
}

GMap phi_hat(const IotaComplex& X, bool wrt_u) {
    return hat_map(phi(X.cx, wrt_u), X.hat_cx, X.hat_cx);
}

namespace {

GMap hat_identity(const IotaComplex& X) { return GMap::identity(X.hat_cx); }

bool quasi_iso_f2(const GMap& f) {
    // Chain map between F2 complexes: homotopy equivalence iff iso on homology.
    const Complex& S = *f.src;
    const Complex& D = *f.dst;
    // cycles/boundaries as bit spaces over (gen) coordinates
    auto cycles = [](const Complex& c) {
        F2Matrix d(c.rank(), c.rank());
        for (int i = 0; i < c.rank(); ++i)
            for (const auto& [j, p] : c.dif(i))
                if (!p.is_zero()) d.set(j, i, true);  // column i = d(gen i)
        return d;
    };
    F2Matrix dS = cycles(S), dD = cycles(D);
    // represent homology via rank computations: f induces iso iff
    // rank H matches and induced map injective. Compute with an augmented elimination.
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
    int rkS = rank(dS), rkD = rank(dD);
    int hS = S.rank() - 2 * rkS, hD = D.rank() - 2 * rkD;
    if (hS != hD) return false;
    // induced map on homology injective: for every cycle z with f(z) a boundary, z is a boundary.
    // Solve: columns = cycle-space basis of S plus boundary-space basis of D; require that
    // [f(z) + dD w = 0, z cycle] implies z boundary. Equivalent rank condition:
    //   rank(f(Zs) + Bd) - rank(Bd) == hS  where Zs = cycle basis of S.
    // Build cycle basis of S:
    AffineResult kz = solve_affine_f2(dS, BitVec(S.rank()));
    std::vector<BitVec> zbasis = kz.sol->kernel;
    // f as matrix
    F2Matrix fm(D.rank(), S.rank());
    for (int i = 0; i < S.rank(); ++i)
        for (const auto& [j, p] : f.e[i])
            if (!p.is_zero()) fm.set(j, i, true);
    // Gaussian span keyed by pivot position (lowest set bit strictly increases per xor).
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
    for (int i = 0; i < D.rank(); ++i) {
        BitVec col(D.rank());
        for (int j = 0; j < D.rank(); ++j)
            if (!D.entry(i, j).is_zero()) col.set(j, true);
        insert(col);
    }
    int extra = 0;
    for (const BitVec& z : zbasis)
        if (insert(fm.mul(z))) ++extra;
    // extra = dim of f(cycles) modulo boundaries; zbasis includes boundaries of S, whose
    // images are boundaries in D (f chain map), contributing nothing. Injectivity on H:
    return extra == hS;
}

}  // namespace

std::optional<GMap> find_psi_lift(const IotaComplex& X) {
    bool mo = X.flavor == Flavor::A0;
    // target hat-map: iota phi iota
    GMap ipi = compose(X.iota, compose(phi_hat(X), X.iota));
    // unknown chain map f on cx with hat(f) ~ ipi: solve jointly over f-slots and homotopy slots.
    MapSpace fs = map_space(X.cx, X.cx, ipi.shift, false, mo);
    MapSpace hs = map_space(X.hat_cx, X.hat_cx, ipi.shift + Grading{1, 1}, false, mo);
    GMap dC = differential_map(X.cx), dH = differential_map(X.hat_cx);
    std::map<std::pair<int, int>, int> rowc, rowh;
    auto row = [](std::map<std::pair<int, int>, int>& m, int a, int b) {
        auto it = m.find({a, b});
        if (it != m.end()) return it->second;
        int r = int(m.size());
        m.emplace(std::make_pair(a, b), r);
        return r;
    };
    std::vector<std::vector<std::pair<int, int>>> fcols(fs.slots.size()), hcols(hs.slots.size());
    for (size_t s = 0; s < fs.slots.size(); ++s) {
        BitVec x(int(fs.slots.size()));
        x.set(int(s), true);
        GMap e = map_from_bits(fs, x);
        GMap res = add(compose(dC, e), compose(e, dC));
        for (int i = 0; i < res.src->rank(); ++i)
            for (const auto& [j, p] : res.e[i])
                if (!p.is_zero()) fcols[s].push_back({0, row(rowc, i, j)});
        GMap eh = hat_map(e, X.hat_cx, X.hat_cx);
        for (int i = 0; i < eh.src->rank(); ++i)
            for (const auto& [j, p] : eh.e[i])
                if (!p.is_zero()) fcols[s].push_back({1, row(rowh, i, j)});
    }
    for (size_t s = 0; s < hs.slots.size(); ++s) {
        BitVec x(int(hs.slots.size()));
        x.set(int(s), true);
        GMap e = map_from_bits(hs, x);
        GMap res = add(compose(dH, e), compose(e, dH));
        for (int i = 0; i < res.src->rank(); ++i)
            for (const auto& [j, p] : res.e[i])
                if (!p.is_zero()) hcols[s].push_back({1, row(rowh, i, j)});
    }
    std::vector<std::pair<int, int>> trows;
    for (int i = 0; i < ipi.src->rank(); ++i)
        for (const auto& [j, p] : ipi.e[i])
            if (!p.is_zero()) trows.push_back({i, j});
    for (auto& t : trows) row(rowh, t.first, t.second);
    int nc = int(rowc.size()), nh = int(rowh.size());
    int nf = int(fs.slots.size()), nH = int(hs.slots.size());
    F2Matrix A(nc + nh, nf + nH);
    for (int s = 0; s < nf; ++s)
        for (auto [kind, r] : fcols[s]) A.row[kind == 0 ? r : nc + r].flip(s);
    for (int s = 0; s < nH; ++s)
        for (auto [kind, r] : hcols[s]) A.row[nc + r].flip(nf + s);
    BitVec b(nc + nh);
    for (auto& t : trows) b.flip(nc + rowh[{t.first, t.second}]);
    AffineResult r = solve_affine_f2(A, b);
    if (!r.sol) return std::nullopt;
    BitVec fx(nf);
    for (int s = 0; s < nf; ++s) fx.set(s, r.sol->particular.get(s));
    return map_from_bits(fs, fx);
}

AxiomReport check_horizontal_axioms(const IotaComplex& X) {
    AxiomReport rep;
    bool mo = X.flavor == Flavor::A0;
    if (X.flavor == Flavor::FullUV) {
        rep.failures.push_back("flavor is fullUV, not horizontal");
        return rep;
    }
    ValidationReport vr = validate(*X.cx);
    for (const auto& e : vr.errors) rep.failures.push_back("complex invalid: " + e);
    if (X.cx->ring() != Ring::F2U) {
        rep.failures.push_back("ring is not F2[U]");
        return rep;
    }
    // bullet: U^{-1} C ~ F2[U, U^{-1}]
    F2UHomology h = homology_over_f2u(*X.cx);
    if (h.free_rank != 1)
        rep.failures.push_back("localization fails: free homology rank " + std::to_string(h.free_rank));
    // bullet: iota skew-graded homotopy equivalence of the hat truncation
    if (!mo && !is_homogeneous(X.iota)) rep.failures.push_back("iota is not skew-graded");
    GMap dH = differential_map(X.hat_cx);
    if (!add(compose(dH, X.iota), compose(X.iota, dH)).is_zero())
        rep.failures.push_back("iota is not a chain map on the hat truncation");
    else if (!quasi_iso_f2(X.iota))
        rep.failures.push_back("iota is not a homotopy equivalence of the hat truncation");
    if (mo) {
        // A0 complexes carry a Maslov-preserving involution without the knot Phi-corrections;
        // the surgery-style axiom is iota^2 ~ 1 in the Maslov-graded sense.
        GMap i2a = compose(X.iota, X.iota);
        if (!are_homotopic(i2a, hat_identity(X), true))
            rep.failures.push_back("iota^2 !~ 1 (Maslov-graded homotopies)");
        return rep;
    }
    // bullets: Phi iota Phi iota ~ iota Phi iota Phi  and  iota^2 ~ 1 + Phi iota Phi iota
    GMap P = phi_hat(X);
    GMap pi = compose(P, X.iota);    // Phi iota (first iota, then Phi)
    GMap ip = compose(X.iota, P);    // iota Phi
    GMap pipi = compose(pi, pi);
    GMap ipip = compose(ip, ip);
    if (!are_homotopic(pipi, ipip, mo)) rep.failures.push_back("Phi iota Phi iota !~ iota Phi iota Phi");
    GMap i2 = compose(X.iota, X.iota);
    GMap rhs = add(hat_identity(X), pipi);
    if (!are_homotopic(i2, rhs, mo)) rep.failures.push_back("iota^2 !~ 1 + Phi iota Phi iota");
    // bullet: existence of a chain map lifting iota Phi iota
    if (X.psi_lift) {
        const GMap& f = *X.psi_lift;
        bool good = is_chain_map(f);
        if (good) {
            GMap fh = hat_map(f, X.hat_cx, X.hat_cx);
            GMap ipi = compose(X.iota, compose(P, X.iota));
            good = are_homotopic(fh, ipi, mo).has_value();
        }
        if (!good) rep.failures.push_back("stored psi-lift fails its defining property");
    } else if (!find_psi_lift(X)) {
        rep.failures.push_back("no chain map lifts iota Phi iota (psi-lift search exhausted)");
    }
    // informational: iota^4 ~ id (derived property, reported but never a failure)
    GMap i4 = compose(i2, i2);
    if (!are_homotopic(i4, hat_identity(X), mo)) rep.notes.push_back("iota^4 is not homotopic to the identity");
    // informational: entries where the swap rule differs from the literal (-A, M) reading
    for (int i = 0; i < X.hat_cx->rank(); ++i)
        if (!X.iota.e[i].empty() && alexander(X.hat_cx->gen(i).gr) != 0) {
            rep.notes.push_back("skew rule (A,M)->(-A,M-2A) in use; differs from the literal (-A,M) reading");
            break;
        }
    return rep;
}

AxiomReport check_fulluv_axioms(const IotaComplex& X) {
    AxiomReport rep;
    if (X.flavor != Flavor::FullUV) {
        rep.failures.push_back("flavor is not fullUV");
        return rep;
    }
    ValidationReport vr = validate(*X.cx);
    for (const auto& e : vr.errors) rep.failures.push_back("complex invalid: " + e);
    if (!rep.ok()) return rep;
    // localization: V=0 and U=0 truncations both have free homology rank 1
    for (bool v0 : {true, false}) {
        Complex t = truncate(*X.cx, v0 ? TruncMode::SetV0 : TruncMode::SetU0);
        F2UHomology h = homology_over_f2u(t);
        if (h.free_rank != 1)
            rep.failures.push_back(std::string(v0 ? "V=0" : "U=0") +
                                   " truncation has free homology rank " + std::to_string(h.free_rank));
    }
    if (X.full_iota) {
        const GMap& I = *X.full_iota;
        if (!I.skew || !is_homogeneous(I)) rep.failures.push_back("full iota is not skew-graded");
        GMap dC = differential_map(X.cx);
        if (!add(compose(dC, I), compose(I, dC)).is_zero())
            rep.failures.push_back("full iota is not a skew chain map");
    }
    // hat-level: iota^2 ~ 1 + Phi Psi
    GMap P = phi_hat(X, true), Q = phi_hat(X, false);
    GMap i2 = compose(X.iota, X.iota);
    GMap rhs = add(GMap::identity(X.hat_cx), compose(P, Q));
    if (!are_homotopic(i2, rhs)) rep.failures.push_back("iota^2 !~ 1 + Phi Psi on the hat truncation");
    GMap dH = differential_map(X.hat_cx);
    if (!add(compose(dH, X.iota), compose(X.iota, dH)).is_zero())
        rep.failures.push_back("hat iota is not a chain map");
    else if (!quasi_iso_f2(X.iota))
        rep.failures.push_back("hat iota is not a homotopy equivalence");
    return rep;
}

IotaComplex tensor_iota(const IotaComplex& X, const IotaComplex& Y) {
    if (X.flavor != Flavor::Horizontal || Y.flavor != Flavor::Horizontal)
        throw std::invalid_argument("tensor_iota: horizontal flavor required");
    ComplexPtr tc = std::make_shared<Complex>(tensor(*X.cx, *Y.cx));
    ComplexPtr th = std::make_shared<Complex>(hat(*tc));
    // hat(tensor) = tensor(hat): same generators/labels, so maps built on tensor(hat) carry over.
    GMap iiota = add(tensor_map(X.iota, Y.iota, th, th),
                     tensor_map(compose(phi_hat(X), X.iota), compose(Y.iota, phi_hat(Y)), th, th));
    std::optional<GMap> lift;
    std::optional<GMap> fx = X.psi_lift, fy = Y.psi_lift;
    if (fx && fy) {
        GMap l = add(tensor_map(*fx, GMap::identity(Y.cx), tc, tc),
                     tensor_map(GMap::identity(X.cx), *fy, tc, tc));
        lift = l;
    }
    return make_iota_complex(tc, Flavor::Horizontal, iiota, std::nullopt, lift);
}

IotaComplex connected_sum_iota(const IotaComplex& X, const IotaComplex& Y) {
    if (X.flavor != Flavor::FullUV || Y.flavor != Flavor::FullUV)
        throw std::invalid_argument("connected_sum_iota: fullUV flavor required");
    ComplexPtr tc = std::make_shared<Complex>(tensor(*X.cx, *Y.cx));
    ComplexPtr th = std::make_shared<Complex>(hat(*tc));
    GMap iiota = add(tensor_map(X.iota, Y.iota, th, th),
                     tensor_map(compose(phi_hat(X, true), X.iota),
                                compose(phi_hat(Y, false), Y.iota), th, th));
    std::optional<GMap> full;
    if (X.full_iota && Y.full_iota) {
        GMap f = add(tensor_map(*X.full_iota, *Y.full_iota, tc, tc),
                     tensor_map(compose(phi(X.cx, true), *X.full_iota),
                                compose(phi(Y.cx, false), *Y.full_iota), tc, tc));
        full = f;
    }
    return make_iota_complex(tc, Flavor::FullUV, iiota, full);
}

IotaComplex dual_iota(const IotaComplex& X) {
    ComplexPtr dc = std::make_shared<Complex>(dualize(*X.cx));
    ComplexPtr dh = std::make_shared<Complex>(hat(*dc));
    GMap di = GMap::zero(dh, dh, Grading{0, 0}, true);
    for (int i = 0; i < X.hat_cx->rank(); ++i)
        for (const auto& [j, p] : X.iota.e[i])
            if (!p.is_zero()) di.add_entry(j, i, p);
    std::optional<GMap> full;
    if (X.full_iota) {
        GMap f = GMap::zero(dc, dc, Grading{0, 0}, true);
        for (int i = 0; i < X.cx->rank(); ++i)
            for (const auto& [j, p] : X.full_iota->e[i])
                if (!p.is_zero()) f.add_entry(j, i, conj_uv(p));
        full = f;
    }
    std::optional<GMap> lift;
    if (X.psi_lift) {
        GMap f = GMap::zero(dc, dc, X.psi_lift->shift, false);
        for (int i = 0; i < X.cx->rank(); ++i)
            for (const auto& [j, p] : X.psi_lift->e[i])
                if (!p.is_zero()) f.add_entry(j, i, p);
        lift = f;
    }
    return make_iota_complex(dc, X.flavor, di, full, lift);
}

GMap trace_map(const IotaComplex& X, const IotaComplex& XX, ComplexPtr rank_one) {
    GMap tr = GMap::zero(XX.cx, rank_one, Grading{0, 0}, false);
    const Complex& c = *X.cx;
    int n = c.rank();
    for (int i = 0; i < n; ++i) {
        std::string lbl = tensor_label(c.gen(i).label, dual_label(c.gen(i).label));
        int k = XX.cx->index_of(lbl);
        if (k < 0) throw std::invalid_argument("trace_map: tensor complex is not X (x) X*");
        tr.set_entry(k, 0, Poly::unit());
    }
    return tr;
}

GMap cotrace_map(const IotaComplex& X, const IotaComplex& XX, ComplexPtr rank_one) {
    GMap co = GMap::zero(rank_one, XX.cx, Grading{0, 0}, false);
    const Complex& c = *X.cx;
    for (int i = 0; i < c.rank(); ++i) {
        std::string lbl = tensor_label(c.gen(i).label, dual_label(c.gen(i).label));
        int k = XX.cx->index_of(lbl);
        if (k < 0) throw std::invalid_argument("cotrace_map: tensor complex is not X (x) X*");
        co.add_entry(0, k, Poly::unit());
    }
    return co;
}

IotaComplex horizontal_from_fulluv(const IotaComplex& X) {
    if (X.flavor != Flavor::FullUV) throw std::invalid_argument("horizontal_from_fulluv: fullUV input");
    ComplexPtr v0 = std::make_shared<Complex>(truncate(*X.cx, TruncMode::SetV0));
    ComplexPtr h = std::make_shared<Complex>(hat(*v0));
    GMap ih = GMap::zero(h, h, Grading{0, 0}, true);
    // hat of the fullUV complex has the same generators as hat of the V=0 truncation.
    for (int i = 0; i < X.hat_cx->rank(); ++i)
        for (const auto& [j, p] : X.iota.e[i])
            if (!p.is_zero()) ih.add_entry(i, j, p);
    return make_iota_complex(v0, Flavor::Horizontal, ih);
}

A0Extraction a0_extract(const IotaComplex& X) {
    if (X.flavor != Flavor::FullUV || X.cx->ring() != Ring::F2UV)
        throw std::invalid_argument("a0_extract: F2[U,V] fullUV complex required");
    if (!X.full_iota) throw std::invalid_argument("a0_extract: complex-level involution required");
    const Complex& c = *X.cx;
    int n = c.rank();
    std::vector<Mono> rep(n);
    for (int i = 0; i < n; ++i) {
        int A = alexander(c.gen(i).gr);
        rep[i] = A >= 0 ? Mono{A, 0} : Mono{0, -A};
    }
    // Differential in A0 coordinates; stash (from, to, U'-power) entries.
    struct E { int i, j, k; };
    std::vector<E> entries;
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, p] : c.dif(i)) {
            for (Mono m : p.m) {
                // rep_i * m applied to gen j: rewrite U^a V^b j with a - b = A(j) offset.
                int a = rep[i].u + m.u, b = rep[i].v + m.v;
                // U^a V^b j = U'^t * rep_j * j  requires a - rep_j.u == b - rep_j.v == t >= 0.
                int t1 = a - rep[j].u, t2 = b - rep[j].v;
                if (t1 != t2 || t1 < 0)
                    throw std::logic_error("a0_extract: differential leaves A0 (grading error)");
                entries.push_back({i, j, t1});
            }
        }
    }
    // Formal Alexander gradings: A(j) = A(i) + k per entry; solve per component.
    std::vector<int> formalA(n, INT32_MIN);
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (other, delta)
    for (const E& e : entries) {
        adj[e.i].push_back({e.j, e.k});
        adj[e.j].push_back({e.i, -e.k});
    }
    for (int s = 0; s < n; ++s) {
        if (formalA[s] != INT32_MIN) continue;
        formalA[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (auto [j, dl] : adj[i]) {
                int want = formalA[i] + dl;
                if (formalA[j] == INT32_MIN) {
                    formalA[j] = want;
                    stack.push_back(j);
                } else if (formalA[j] != want) {
                    throw std::logic_error("a0_extract: inconsistent formal Alexander gradings");
                }
            }
        }
    }
    std::vector<Generator> gens;
    gens.reserve(n);
    for (int i = 0; i < n; ++i) {
        int M = c.gen(i).gr.u - 2 * rep[i].u;  // gr_U of rep_i * gen_i
        gens.push_back({c.gen(i).label, from_am(formalA[i], M)});
    }
    Complex a0(Ring::F2U, std::move(gens));
    for (const E& e : entries) a0.add_entry(e.i, e.j, Poly{Mono{e.k, 0}});
    ComplexPtr a0p = std::make_shared<Complex>(std::move(a0));
    ComplexPtr a0h = std::make_shared<Complex>(hat(*a0p));
    // induced involution on the hat: iota(rep_i * i) = conj(rep_i) * full_iota(i); keep U'^0
    // terms. A0 involutions are Maslov-preserving, not skew (the Alexander grading is formal),
    // so the map carries no skew flag.
    GMap ih = GMap::zero(a0h, a0h, Grading{0, 0}, false);
    for (int i = 0; i < n; ++i) {
        Mono ri{rep[i].v, rep[i].u};  // conjugated rep_i
        for (const auto& [j, p] : X.full_iota->e[i]) {
            for (Mono m : p.m) {
                int a = ri.u + m.u, b = ri.v + m.v;
                int t1 = a - rep[j].u, t2 = b - rep[j].v;
                if (t1 != t2 || t1 < 0)
                    throw std::logic_error("a0_extract: involution leaves A0");
                if (t1 == 0) ih.add_entry(i, j, Poly::unit());
            }
        }
    }
    A0Extraction out;
    out.a0 = make_iota_complex(a0p, Flavor::A0, ih);
    for (int i = 0; i < n; ++i) {
        out.amb_labels.push_back(c.gen(i).label);
        out.amb_mono.push_back(rep[i]);
    }
    return out;
}

std::vector<Poly> a0_extension_image(const A0Extraction& ex, const IotaComplex& ambient,
                                     const std::vector<Poly>& a0_image) {
    const Complex& c = *ambient.cx;
    std::vector<Poly> out(c.rank());
    for (size_t i = 0; i < a0_image.size(); ++i) {
        if (a0_image[i].is_zero()) continue;
        int j = c.index_of(ex.amb_labels[i]);
        // U'^k -> (UV)^k, then multiply by rep_i.
        for (Mono m : a0_image[i].m) {
            Mono t{m.u + ex.amb_mono[i].u, m.u + ex.amb_mono[i].v};
            out[j] = add(out[j], Poly{t});
        }
    }
    return out;
}

}  // namespace kfc
