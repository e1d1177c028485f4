#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kfc {

enum class Ring { F2, F2U, R, F2UV };

inline std::string ring_name(Ring r) {
    switch (r) {
        case Ring::F2: return "F2";
        case Ring::F2U: return "F2U";
        case Ring::R: return "R";
        case Ring::F2UV: return "F2UV";
    }
    return "?";
}

// Monomial U^u V^v.
struct Mono {
    int u = 0, v = 0;
    bool operator==(const Mono& o) const { return u == o.u && v == o.v; }
    bool operator<(const Mono& o) const { return u != o.u ? u < o.u : v < o.v; }
    bool mixed() const { return u > 0 && v > 0; }
};

// F2-coefficient polynomial in U, V: sorted monomial set, symmetric-difference addition.
struct Poly {
    std::vector<Mono> m;

    Poly() = default;
    explicit Poly(Mono one) : m{one} {}
    static Poly zero() { return Poly(); }
    static Poly unit() { return Poly(Mono{0, 0}); }

    bool is_zero() const { return m.empty(); }
    bool is_unit() const { return m.size() == 1 && m[0] == Mono{0, 0}; }

    bool operator==(const Poly& o) const { return m == o.m; }
};

inline Poly add(const Poly& a, const Poly& b) {
    Poly r;
    std::set_symmetric_difference(a.m.begin(), a.m.end(), b.m.begin(), b.m.end(),
                                  std::back_inserter(r.m));
    return r;
}

inline Poly mul_mono(const Poly& a, Mono s) {
    Poly r;
    r.m.reserve(a.m.size());
    for (Mono t : a.m) r.m.push_back(Mono{t.u + s.u, t.v + s.v});
    std::sort(r.m.begin(), r.m.end());
    return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
    Poly r;
    for (Mono s : b.m) r = add(r, mul_mono(a, s));
    return r;
}

// Quotient-ring reduction: drop whatever the ring kills.
inline Poly reduce_ring(const Poly& p, Ring ring) {
    Poly r;
    for (Mono t : p.m) {
        switch (ring) {
            case Ring::F2:
                if (t.u == 0 && t.v == 0) r.m.push_back(t);
                break;
            case Ring::F2U:
                if (t.v == 0) r.m.push_back(t);
                break;
            case Ring::R:
                if (!t.mixed()) r.m.push_back(t);
                break;
            case Ring::F2UV:
                r.m.push_back(t);
                break;
        }
    }
    return r;
}

inline bool ring_admits(Ring ring, Mono t) {
    switch (ring) {
        case Ring::F2: return t.u == 0 && t.v == 0;
        case Ring::F2U: return t.v == 0;
        case Ring::R: return !t.mixed();
        case Ring::F2UV: return true;
    }
    return false;
}

inline Poly mul_ring(const Poly& a, const Poly& b, Ring ring) { return reduce_ring(mul(a, b), ring); }

// Swap the roles of U and V in every monomial (coefficient conjugation for skew maps).
inline Poly conj_uv(const Poly& p) {
    Poly r;
    r.m.reserve(p.m.size());
    for (Mono t : p.m) r.m.push_back(Mono{t.v, t.u});
    std::sort(r.m.begin(), r.m.end());
    return r;
}

// Formal derivative with respect to U (mod 2): U^a V^b -> a U^{a-1} V^b.
inline Poly d_du(const Poly& p) {
    Poly r;
    for (Mono t : p.m)
        if (t.u & 1) r.m.push_back(Mono{t.u - 1, t.v});
    std::sort(r.m.begin(), r.m.end());
    return r;
}

inline Poly d_dv(const Poly& p) {
    Poly r;
    for (Mono t : p.m)
        if (t.v & 1) r.m.push_back(Mono{t.u, t.v - 1});
    std::sort(r.m.begin(), r.m.end());
    return r;
}

// ---- One-variable polynomials over F2 (exact Euclidean arithmetic in F2[U]).

struct PolyU {
    std::vector<uint32_t> exps;  // sorted U-exponents with coefficient 1

    PolyU() = default;
    static PolyU upow(uint32_t k) {
        PolyU p;
        p.exps = {k};
        return p;
    }
    bool is_zero() const { return exps.empty(); }
    int deg() const { return exps.empty() ? -1 : int(exps.back()); }
    bool operator==(const PolyU& o) const { return exps == o.exps; }
};

inline PolyU add(const PolyU& a, const PolyU& b) {
    PolyU r;
    std::set_symmetric_difference(a.exps.begin(), a.exps.end(), b.exps.begin(), b.exps.end(),
                                  std::back_inserter(r.exps));
    return r;
}

inline PolyU mul(const PolyU& a, const PolyU& b) {
    PolyU r;
    for (uint32_t e : b.exps) {
        PolyU s;
        s.exps.reserve(a.exps.size());
        for (uint32_t f : a.exps) s.exps.push_back(e + f);
        r = add(r, s);
    }
    return r;
}

inline std::pair<PolyU, PolyU> divmod(const PolyU& a, const PolyU& b) {
    if (b.is_zero()) throw std::domain_error("PolyU divmod: division by zero");
    PolyU rem = a, quo;
    while (!rem.is_zero() && rem.deg() >= b.deg()) {
        uint32_t shift = uint32_t(rem.deg() - b.deg());
        quo = add(quo, PolyU::upow(shift));
        rem = add(rem, mul(b, PolyU::upow(shift)));
    }
    return {quo, rem};
}

inline PolyU gcd(PolyU a, PolyU b) {
    while (!b.is_zero()) {
        PolyU r = divmod(a, b).second;
        a = b;
        b = r;
    }
    return a;
}

// ---- RElem enforces the UV = 0 canonical form at construction (PolyUV is Poly itself).

struct RElem {
    Poly p;
    RElem() = default;
    explicit RElem(const Poly& q) : p(q) {
        for (Mono t : p.m)
            if (t.mixed()) throw std::invalid_argument("RElem: mixed monomial (UV = 0 in R)");
    }
};

}  // namespace kfc
