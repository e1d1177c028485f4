#include "kfc/local_order.hpp"

#include <map>
#include <stdexcept>

#include "kfc/standard.hpp"

namespace kfc {

namespace {

struct System {
    MapSpace fs, hs;
    std::map<std::pair<int, int>, int> chain_rows, comm_rows;
    F2Matrix A;
    BitVec b;
    bool grading_obstructed = false;
    std::string obstruction;
    F2UHomology hX, hY;
};

// Assemble the affine system for an almost iota_K-local map X -> Y.
System build_system(const IotaComplex& X, const IotaComplex& Y) {
    bool mo = X.flavor == Flavor::A0 || Y.flavor == Flavor::A0;
    System sys{map_space(X.cx, Y.cx, Grading{0, 0}, false, mo),
               map_space(X.hat_cx, Y.hat_cx, Grading{1, 1}, !mo, mo),
               {},
               {},
               {},
               {},
               false,
               "",
               homology_over_f2u(*X.cx),
               homology_over_f2u(*Y.cx)};
    if (sys.hX.free_rank != 1 || sys.hY.free_rank != 1)
        throw std::invalid_argument("find_almost_local_map: free homology rank != 1");
    if (!mo && sys.hX.free_rep_grading != sys.hY.free_rep_grading) {
        sys.grading_obstructed = true;
        sys.obstruction = "free homology representatives sit in different gradings";
        return sys;
    }
    GMap dX = differential_map(X.cx), dY = differential_map(Y.cx);
    GMap dXh = differential_map(X.hat_cx), dYh = differential_map(Y.hat_cx);
    auto row = [](std::map<std::pair<int, int>, int>& m, int a, int b) {
        auto it = m.find({a, b});
        if (it != m.end()) return it->second;
        int r = int(m.size());
        m.emplace(std::make_pair(a, b), r);
        return r;
    };
    int nf = int(sys.fs.slots.size()), nH = int(sys.hs.slots.size());
    std::vector<std::vector<std::pair<int, int>>> fcols(nf), hcols(nH);
    for (int s = 0; s < nf; ++s) {
        BitVec x(nf);
        x.set(s, true);
        GMap e = map_from_bits(sys.fs, x);
        GMap res = add(compose(dY, e), compose(e, dX));
        for (int i = 0; i < res.src->rank(); ++i)
            for (const auto& [j, p] : res.e[i])
                if (!p.is_zero()) fcols[s].push_back({0, row(sys.chain_rows, i, j)});
        // hat part enters the commutation equations
        GMap eh = hat_map(e, X.hat_cx, Y.hat_cx);
        GMap comm = add(compose(Y.iota, eh), compose(eh, X.iota));
        for (int i = 0; i < comm.src->rank(); ++i)
            for (const auto& [j, p] : comm.e[i])
                if (!p.is_zero()) fcols[s].push_back({1, row(sys.comm_rows, i, j)});
    }
    for (int s = 0; s < nH; ++s) {
        BitVec x(nH);
        x.set(s, true);
        GMap e = map_from_bits(sys.hs, x);
        GMap res = add(compose(dYh, e), compose(e, dXh));
        for (int i = 0; i < res.src->rank(); ++i)
            for (const auto& [j, p] : res.e[i])
                if (!p.is_zero()) hcols[s].push_back({1, row(sys.comm_rows, i, j)});
    }
    // locality normalization: the free class of f(rep_X) equals 1. Gradings force the class
    // coefficient of each slot to a single monomial except on A0-style complexes, where the
    // higher U-degree contributions get their own zero rows.
    std::map<int, std::vector<int>> locality_cols;  // U-degree -> slots contributing
    for (int s = 0; s < nf; ++s) {
        BitVec x(nf);
        x.set(s, true);
        GMap e = map_from_bits(sys.fs, x);
        Poly c = free_class_coefficient(sys.hY, apply_map(e, sys.hX.free_rep));
        if (c.is_zero()) continue;
        if (!mo && !c.is_unit())
            throw std::logic_error("locality row: non-constant class coefficient for a (0,0) slot");
        for (Mono t : c.m) locality_cols[t.u].push_back(s);
    }
    std::vector<int> degs;
    for (auto& [k, v] : locality_cols) degs.push_back(k);
    if (locality_cols.find(0) == locality_cols.end()) degs.push_back(0);
    std::sort(degs.begin(), degs.end());
    int nloc = int(degs.size());
    int nc = int(sys.chain_rows.size()), ncm = int(sys.comm_rows.size());
    sys.A = F2Matrix(nc + ncm + nloc, nf + nH);
    for (int s = 0; s < nf; ++s)
        for (auto [kind, r] : fcols[s]) sys.A.row[kind == 0 ? r : nc + r].flip(s);
    for (int s = 0; s < nH; ++s)
        for (auto [kind, r] : hcols[s]) sys.A.row[nc + r].flip(nf + s);
    sys.b = BitVec(nc + ncm + nloc);
    for (int d = 0; d < nloc; ++d) {
        for (int s : locality_cols[degs[d]]) sys.A.row[nc + ncm + d].flip(s);
        if (degs[d] == 0) sys.b.set(nc + ncm + d, true);  // constant part 1, higher parts 0
    }
    return sys;
}

}  // namespace

FindResult find_almost_local_map(const IotaComplex& X, const IotaComplex& Y) {
    if (X.flavor == Flavor::FullUV || Y.flavor == Flavor::FullUV)
        throw std::invalid_argument("find_almost_local_map: horizontal complexes required");
    FindResult out;
    System sys = build_system(X, Y);
    if (sys.grading_obstructed) {
        out.certificate = AbsenceCertificate{0, BitVec(0), sys.obstruction};
        return out;
    }
    int nf = int(sys.fs.slots.size());
    auto eval = [&](const BitVec& xbits) {
        BitVec fb(nf), hb(int(sys.hs.slots.size()));
        for (int s = 0; s < nf; ++s) fb.set(s, xbits.get(s));
        for (int s = 0; s < int(sys.hs.slots.size()); ++s) hb.set(s, xbits.get(nf + s));
        GMap f = map_from_bits(sys.fs, fb);
        GMap H = map_from_bits(sys.hs, hb);
        if (!is_chain_map(f)) return false;
        GMap fh = hat_map(f, X.hat_cx, Y.hat_cx);
        GMap lhs = add(compose(Y.iota, fh), compose(fh, X.iota));
        GMap dXh = differential_map(X.hat_cx), dYh = differential_map(Y.hat_cx);
        GMap rhs = add(compose(dYh, H), compose(H, dXh));
        if (!add(lhs, rhs).is_zero()) return false;
        Poly c = free_class_coefficient(sys.hY, apply_map(f, sys.hX.free_rep));
        return c.is_unit();
    };
    AffineResult r = solve_checked(sys.A, sys.b, eval);
    if (r.sol) {
        BitVec fb(nf), hb(int(sys.hs.slots.size()));
        for (int s = 0; s < nf; ++s) fb.set(s, r.sol->particular.get(s));
        for (int s = 0; s < int(sys.hs.slots.size()); ++s) hb.set(s, r.sol->particular.get(nf + s));
        out.witness = LocalMapWitness{map_from_bits(sys.fs, fb), map_from_bits(sys.hs, hb)};
    } else {
        out.certificate = AbsenceCertificate{sys.A.cols, r.why_not->lambda,
                                             "affine system inconsistent (reduced row recorded)"};
    }
    return out;
}

ComparisonResult compare(const IotaComplex& X, const IotaComplex& Y) {
    ComparisonResult r;
    r.forward = find_almost_local_map(X, Y);
    r.backward = find_almost_local_map(Y, X);
    if (r.forward.found() && r.backward.found()) r.verdict = Verdict::Equivalent;
    else if (r.forward.found()) r.verdict = Verdict::Less;
    else if (r.backward.found()) r.verdict = Verdict::Greater;
    else r.verdict = Verdict::Incomparable;
    return r;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return "equivalent";
        case Verdict::Less: return "less";
        case Verdict::Greater: return "greater";
        case Verdict::Incomparable: return "incomparable";
    }
    return "?";
}

ClassifyResult classify_A(const IotaComplex& X) {
    ClassifyResult out;
    IotaComplex CO = make_CO(), CE = make_CE();
    out.vs_CO = compare(X, CO);
    out.vs_CE = compare(X, CE);
    if (out.vs_CO.verdict == Verdict::Equivalent) out.value = ClassifyResult::Value::Zero;
    else if (out.vs_CE.verdict == Verdict::Equivalent) out.value = ClassifyResult::Value::One;
    else if (out.vs_CO.verdict != Verdict::Incomparable && out.vs_CE.verdict != Verdict::Incomparable)
        out.value = ClassifyResult::Value::NontorsionEvidence;
    else {
        out.value = ClassifyResult::Value::Undetermined;
        out.notes.push_back("trichotomy violation suspected: incomparable to one reference without "
                            "equivalence to the other");
    }
    return out;
}

std::string classify_value_name(ClassifyResult::Value v) {
    switch (v) {
        case ClassifyResult::Value::Zero: return "0";
        case ClassifyResult::Value::One: return "1";
        case ClassifyResult::Value::NontorsionEvidence: return "nontorsion-evidence";
        case ClassifyResult::Value::Undetermined: return "undetermined";
    }
    return "?";
}

LocalMapWitness figure_eight_witness_map(const IotaComplex& X, const std::vector<Poly>& a_prime,
                                         const std::vector<Poly>& x_prime) {
    if (X.cx->ring() != Ring::F2U)
        throw std::invalid_argument("figure_eight_witness_map: horizontal complex required");
    const Complex& C = *X.cx;
    // the construction needs a reduced differential
    for (int i = 0; i < C.rank(); ++i)
        for (const auto& [j, p] : C.dif(i))
            if (p.is_unit()) throw std::invalid_argument("figure_eight_witness_map: complex not reduced");
    F2UHomology h = homology_over_f2u(C);
    if (h.free_rank != 1) throw std::invalid_argument("figure_eight_witness_map: free rank != 1");
    // x' is a generating cycle
    std::vector<Poly> dx = C.apply_d(x_prime);
    for (const Poly& p : dx)
        if (!p.is_zero()) throw std::invalid_argument("figure_eight_witness_map: x' is not a cycle");
    if (!free_class_coefficient(h, x_prime).is_unit())
        throw std::invalid_argument("figure_eight_witness_map: x' does not generate the localized homology");
    // a' + iota(a') = x' in the hat
    auto hat_vec = [&](const std::vector<Poly>& v) {
        std::vector<Poly> out(v.size());
        for (size_t i = 0; i < v.size(); ++i)
            for (Mono m : v[i].m)
                if (m.u == 0 && m.v == 0) out[i] = add(out[i], Poly::unit());
        return out;
    };
    auto add_vec = [](const std::vector<Poly>& a, const std::vector<Poly>& b) {
        std::vector<Poly> out(a.size());
        for (size_t i = 0; i < a.size(); ++i) out[i] = add(a[i], b[i]);
        return out;
    };
    std::vector<Poly> ah = hat_vec(a_prime);
    std::vector<Poly> want = hat_vec(x_prime);
    std::vector<Poly> got = add_vec(ah, apply_map(X.iota, ah));
    if (!(got == want))
        throw std::invalid_argument("figure_eight_witness_map: a' + iota(a') != x' in the hat");
    // b' := d a' / U ; c' := any lift of iota(hat b') ; d' := d c' / U
    auto div_u = [&](const std::vector<Poly>& v) {
        std::vector<Poly> out(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            for (Mono m : v[i].m) {
                if (m.u < 1) throw std::invalid_argument("figure_eight_witness_map: not divisible by U");
                out[i] = add(out[i], Poly{Mono{m.u - 1, m.v}});
            }
        }
        return out;
    };
    std::vector<Poly> b_prime = div_u(C.apply_d(a_prime));
    std::vector<Poly> c_prime = apply_map(X.iota, hat_vec(b_prime));  // lift: same coordinates
    std::vector<Poly> d_prime = div_u(C.apply_d(c_prime));
    IotaComplex CE = make_CE();
    GMap f = GMap::zero(CE.cx, X.cx, Grading{0, 0}, false);
    const std::vector<std::pair<int, const std::vector<Poly>*>> images = {
        {CE.cx->index_of("a"), &a_prime}, {CE.cx->index_of("b"), &b_prime},
        {CE.cx->index_of("c"), &c_prime}, {CE.cx->index_of("d"), &d_prime},
        {CE.cx->index_of("x"), &x_prime}};
    for (auto& [i, v] : images)
        for (int j = 0; j < C.rank(); ++j)
            if (!(*v)[j].is_zero()) f.add_entry(i, j, (*v)[j]);
    if (!is_homogeneous(f) || !is_chain_map(f))
        throw std::invalid_argument("figure_eight_witness_map: constructed map fails verification");
    // verify almost-locality (find the homotopy H)
    GMap fh = hat_map(f, CE.hat_cx, X.hat_cx);
    GMap lhs = add(compose(X.iota, fh), compose(fh, CE.iota));
    GMap zero = GMap::zero(CE.hat_cx, X.hat_cx, lhs.shift, lhs.skew);
    auto H = are_homotopic(lhs, zero);
    if (!H) throw std::logic_error("figure_eight_witness_map: commutation homotopy not found");
    if (!is_local(f)) throw std::logic_error("figure_eight_witness_map: map is not local");
    return LocalMapWitness{f, *H};
}

QuotientResult quotient_map_to_CO(const IotaComplex& X) {
    QuotientResult out;
    // reduce and transport the involution
    Reduction red = reduce(*X.cx);
    ComplexPtr rc = red.reduced;
    ComplexPtr rh = std::make_shared<Complex>(hat(*rc));
    GMap toh = hat_map(red.to_reduced, X.hat_cx, rh);
    GMap fromh = hat_map(red.from_reduced, rh, X.hat_cx);
    GMap riota = compose(toh, compose(X.iota, fromh));
    IotaComplex RX = make_iota_complex(rc, X.flavor, riota);
    StandardForm sf = standardize_f2u(*rc);
    if (sf.free_gens.size() != 1) throw std::invalid_argument("quotient_map_to_CO: free rank != 1");
    int xg = sf.free_gens[0];
    if (!(rc->gen(xg).gr == Grading{0, 0}))
        throw std::invalid_argument("quotient_map_to_CO: free generator not at (0,0)");
    // hats of the standard basis change
    ComplexPtr sh = std::make_shared<Complex>(hat(*sf.std_cx));
    GMap tosh = hat_map(sf.to_std, rh, sh);
    GMap fromsh = hat_map(sf.from_std, sh, rh);
    GMap iota_std = compose(tosh, compose(riota, fromsh));
    int n = sf.std_cx->rank();
    // Z + W in the standard hat basis
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
    auto in_span = [&](BitVec v) {
        while (true) {
            int l = v.lowest_set();
            if (l < 0) return true;
            auto it = span.find(l);
            if (it == span.end()) return false;
            v.xor_with(it->second);
        }
    };
    for (const auto& p : sf.pairs) {
        BitVec z(n);
        z.set(p.tail, true);
        insert(z);
    }
    for (int g = 0; g < n; ++g) {
        BitVec w(n);
        w.set(g, true);
        std::vector<Poly> e(n);
        e[g] = Poly::unit();
        std::vector<Poly> iw = apply_map(iota_std, e);
        for (int j = 0; j < n; ++j)
            if (!iw[j].is_zero()) w.flip(j);
        insert(w);
    }
    BitVec xv(n);
    xv.set(xg, true);
    if (!in_span(xv)) {
        // build the quotient functional on standard generators: c_x = 1, tails = 0,
        // hat functional kills omega-images; solved as one affine system.
        IotaComplex SX = make_iota_complex(sf.std_cx, X.flavor, iota_std);
        IotaComplex CO = make_CO();
        FindResult fr = find_almost_local_map(SX, CO);
        if (!fr.found())
            throw std::logic_error("quotient_map_to_CO: x avoids Z+W but the quotient system is inconsistent");
        // conjugate back to X: q = f o to_std o to_reduced
        GMap q = compose(fr.witness->f, compose(sf.to_std, red.to_reduced));
        GMap qh = hat_map(q, X.hat_cx, CO.hat_cx);
        GMap lhs = add(compose(CO.iota, qh), compose(qh, X.iota));
        GMap zero = GMap::zero(X.hat_cx, CO.hat_cx, lhs.shift, lhs.skew);
        auto H = are_homotopic(lhs, zero);
        if (!H) throw std::logic_error("quotient_map_to_CO: transported map loses commutation");
        out.map = LocalMapWitness{q, *H};
        return out;
    }
    // x in Z + W: find b with omega(b) = x + z (z in Z-span) and run the figure-eight witness.
    // unknowns: coefficients of b over the standard basis + coefficients over the tails.
    std::vector<int> tails;
    for (const auto& p : sf.pairs) tails.push_back(p.tail);
    int nb = n, nz = int(tails.size());
    F2Matrix A(n, nb + nz);
    for (int g = 0; g < n; ++g) {
        std::vector<Poly> e(n);
        e[g] = Poly::unit();
        std::vector<Poly> iw = apply_map(iota_std, e);
        for (int j = 0; j < n; ++j) {
            bool bit = !iw[j].is_zero();
            if (j == g) bit = !bit;
            if (bit) A.row[j].flip(g);  // omega(g) = g + iota(g)
        }
    }
    for (int t = 0; t < nz; ++t) A.row[tails[t]].flip(nb + t);
    BitVec rhs(n);
    rhs.set(xg, true);
    AffineResult sol = solve_affine_f2(A, rhs);
    if (!sol.sol) throw std::logic_error("quotient_map_to_CO: x in Z+W but no omega witness found");
    std::vector<Poly> b_std(n), z_std(n);
    for (int g = 0; g < n; ++g)
        if (sol.sol->particular.get(g)) b_std[g] = Poly::unit();
    for (int t = 0; t < nz; ++t)
        if (sol.sol->particular.get(nb + t)) z_std[tails[t]] = add(z_std[tails[t]], Poly::unit());
    // run the figure-eight construction on the reduced model (its differential is reduced)
    std::vector<Poly> a_prime = apply_map(sf.from_std, b_std);
    std::vector<Poly> xprime_std(n);
    xprime_std[xg] = Poly::unit();
    for (int j = 0; j < n; ++j) xprime_std[j] = add(xprime_std[j], z_std[j]);
    std::vector<Poly> x_prime = apply_map(sf.from_std, xprime_std);
    out.ce_to_x = figure_eight_witness_map(RX, a_prime, x_prime);
    return out;
}

}  // namespace kfc
