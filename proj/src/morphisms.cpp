#include "kfc/morphisms.hpp"

#include <map>
#include <stdexcept>

namespace kfc {

namespace {

// Admissibility by Maslov alone: entries of F2/F2U complexes whose Alexander grading is a
// formal bookkeeping device (A0 extraction) are graded by gr_U only.
std::optional<Mono> admissible_maslov(Ring ring, Grading gx, Grading gy, Grading shift) {
    // gr_U(U^a y) = gy.u - 2a must equal gx.u + shift.u
    int dm = gy.u - gx.u - shift.u;
    if (dm % 2 != 0) return std::nullopt;
    int a = dm / 2;
    if (a < 0) return std::nullopt;
    Mono t{a, 0};
    if (!ring_admits(ring, t)) return std::nullopt;
    return t;
}

}  // namespace

MapSpace map_space(ComplexPtr src, ComplexPtr dst, Grading shift, bool skew, bool maslov_only) {
    if (src->rank() == 0 || dst->rank() == 0)
        throw std::invalid_argument("map_space: zero complex (degenerate input rule)");
    if (src->ring() != dst->ring()) throw std::invalid_argument("map_space: ring mismatch");
    MapSpace ms;
    ms.src = src;
    ms.dst = dst;
    ms.shift = shift;
    ms.skew = skew;
    ms.maslov_only = maslov_only;
    for (int i = 0; i < src->rank(); ++i) {
        for (int j = 0; j < dst->rank(); ++j) {
            auto t = maslov_only
                         ? admissible_maslov(dst->ring(), src->gen(i).gr, dst->gen(j).gr, shift)
                         : admissible_mono(dst->ring(), src->gen(i).gr, dst->gen(j).gr, shift, skew);
            if (t) ms.slots.push_back({i, j, *t});
        }
    }
    // chain-map subspace: solutions of d f + f d = 0
    GMap dS = differential_map(src), dD = differential_map(dst);
    std::map<std::pair<int, int>, int> rowidx;
    std::vector<std::vector<int>> cols_per_slot(ms.slots.size());
    auto row_of = [&](int a, int b) {
        auto it = rowidx.find({a, b});
        if (it != rowidx.end()) return it->second;
        int r = int(rowidx.size());
        rowidx.emplace(std::make_pair(a, b), r);
        return r;
    };
    for (size_t s = 0; s < ms.slots.size(); ++s) {
        GMap e = GMap::zero(src, dst, shift, skew);
        e.set_entry(ms.slots[s].from, ms.slots[s].to, Poly{ms.slots[s].mono});
        GMap res = add(compose(dD, e), compose(e, dS));
        for (int i = 0; i < src->rank(); ++i)
            for (const auto& [j, p] : res.e[i])
                if (!p.is_zero()) cols_per_slot[s].push_back(row_of(i, j));
    }
    F2Matrix A(int(rowidx.size()), int(ms.slots.size()));
    for (size_t s = 0; s < ms.slots.size(); ++s)
        for (int r : cols_per_slot[s]) A.row[r].flip(int(s));
    AffineResult r = solve_affine_f2(A, BitVec(A.rows));
    ms.chain_basis = r.sol->kernel;
    return ms;
}

GMap map_from_bits(const MapSpace& ms, const BitVec& x) {
    GMap f = GMap::zero(ms.src, ms.dst, ms.shift, ms.skew);
    for (size_t s = 0; s < ms.slots.size(); ++s)
        if (x.get(int(s))) f.add_entry(ms.slots[s].from, ms.slots[s].to, Poly{ms.slots[s].mono});
    return f;
}

std::optional<BitVec> bits_from_map(const MapSpace& ms, const GMap& f) {
    BitVec x(int(ms.slots.size()));
    for (size_t s = 0; s < ms.slots.size(); ++s) {
        const Poly& p = f.entry(ms.slots[s].from, ms.slots[s].to);
        if (p.is_zero()) continue;
        if (p.m.size() == 1 && p.m[0] == ms.slots[s].mono) x.set(int(s), true);
        else return std::nullopt;
    }
    if (!(map_from_bits(ms, x) == f)) return std::nullopt;
    return x;
}

OracleStats& oracle() {
    static OracleStats s;
    return s;
}

AffineResult solve_checked(const F2Matrix& A, const BitVec& b,
                           const std::function<bool(const BitVec&)>& eval) {
    AffineResult r = solve_affine_f2(A, b);
    OracleStats& o = oracle();
    ++o.queries;
    if (o.enabled && A.cols <= 20 && eval) {
        ++o.checked;
        bool found = false;
        BitVec x(A.cols);
        uint32_t lim = A.cols >= 31 ? 0x7fffffffu : (uint32_t(1) << A.cols);
        for (uint32_t m = 0; m < lim; ++m) {
            for (int i = 0; i < A.cols; ++i) x.set(i, (m >> i) & 1);
            if (eval(x)) { found = true; break; }
        }
        bool solver_found = r.sol.has_value();
        if (found != solver_found) ++o.disagreements;
        if (solver_found && !eval(r.sol->particular)) ++o.disagreements;
    }
    return r;
}

std::optional<GMap> are_homotopic(const GMap& f, const GMap& g, bool maslov_only) {
    if (f.src->rank() != g.src->rank() || f.dst->rank() != g.dst->rank() || f.shift != g.shift ||
        f.skew != g.skew)
        throw std::invalid_argument("are_homotopic: shape mismatch");
    GMap target = add(f, g);
    MapSpace hs = map_space(f.src, f.dst, f.shift + Grading{1, 1}, f.skew, maslov_only);
    GMap dS = differential_map(f.src), dD = differential_map(f.dst);
    // rows: entries of target and of each slot residual
    std::map<std::pair<int, int>, int> rowidx;
    auto row_of = [&](int a, int b) {
        auto it = rowidx.find({a, b});
        if (it != rowidx.end()) return it->second;
        int r = int(rowidx.size());
        rowidx.emplace(std::make_pair(a, b), r);
        return r;
    };
    std::vector<std::vector<int>> colrows(hs.slots.size());
    for (size_t s = 0; s < hs.slots.size(); ++s) {
        GMap e = map_from_bits(hs, [&] { BitVec x(int(hs.slots.size())); x.set(int(s), true); return x; }());
        GMap res = add(compose(dD, e), compose(e, dS));
        for (int i = 0; i < res.src->rank(); ++i)
            for (const auto& [j, p] : res.e[i])
                if (!p.is_zero()) colrows[s].push_back(row_of(i, j));
    }
    std::vector<std::pair<int, int>> trows;
    for (int i = 0; i < target.src->rank(); ++i)
        for (const auto& [j, p] : target.e[i])
            if (!p.is_zero()) trows.push_back({i, j});
    for (auto& t : trows) row_of(t.first, t.second);
    F2Matrix A(int(rowidx.size()), int(hs.slots.size()));
    for (size_t s = 0; s < hs.slots.size(); ++s)
        for (int r : colrows[s]) A.row[r].flip(int(s));
    BitVec b(A.rows);
    for (auto& t : trows) b.flip(rowidx[{t.first, t.second}]);
    auto eval = [&](const BitVec& x) {
        GMap H = map_from_bits(hs, x);
        return add(add(compose(dD, H), compose(H, dS)), target).is_zero();
    };
    AffineResult r = solve_checked(A, b, eval);
    if (!r.sol) return std::nullopt;
    return map_from_bits(hs, r.sol->particular);
}

bool is_local(const GMap& f) {
    if (f.src->ring() != Ring::F2U || f.dst->ring() != Ring::F2U)
        throw std::invalid_argument("is_local: maps over F2[U] only");
    F2UHomology hs = homology_over_f2u(*f.src);
    F2UHomology hd = homology_over_f2u(*f.dst);
    if (hs.free_rank != 1 || hd.free_rank != 1)
        throw std::invalid_argument("is_local: free homology rank != 1");
    std::vector<Poly> img = apply_map(f, hs.free_rep);
    Poly c = free_class_coefficient(hd, img);
    return c.is_unit();
}

}  // namespace kfc
