#pragma once

#include <functional>
#include <optional>

#include "kfc/bits.hpp"
#include "kfc/complex.hpp"
#include "kfc/f2u.hpp"

namespace kfc {

// Finite F2-space of homogeneous maps src -> dst of one (shift, skew) type. Gradings force
// at most one admissible monomial per generator pair, so slots enumerate a basis.
struct MapSpace {
    ComplexPtr src, dst;
    Grading shift{0, 0};
    bool skew = false;
    bool maslov_only = false;  // admit entries by Maslov grading alone (A0-style complexes)
    struct Slot {
        int from, to;
        Mono mono;
    };
    std::vector<Slot> slots;
    std::vector<BitVec> chain_basis;  // basis of the chain-map subspace, slot coordinates
};

MapSpace map_space(ComplexPtr src, ComplexPtr dst, Grading shift, bool skew = false,
                   bool maslov_only = false);

GMap map_from_bits(const MapSpace& ms, const BitVec& x);
std::optional<BitVec> bits_from_map(const MapSpace& ms, const GMap& f);

// Homotopy H with f + g = dH + Hd, sought in the homogeneous (shift + (1,1)) space.
std::optional<GMap> are_homotopic(const GMap& f, const GMap& g, bool maslov_only = false);
inline bool homotopic(const GMap& f, const GMap& g, bool maslov_only = false) {
    return are_homotopic(f, g, maslov_only).has_value();
}

// f over F2[U] between complexes of free homology rank 1: true iff the class of
// f(free representative) generates the target's free part.
bool is_local(const GMap& f);

// Oracle instrumentation (acceptance: exhaustive cross-check of solver answers with <= 20
// unknowns). When enabled, affine solves routed through solve_checked also run a brute-force
// enumeration with an independent evaluator and abort on disagreement.
struct OracleStats {
    bool enabled = false;
    long queries = 0;
    long checked = 0;
    long disagreements = 0;
};
OracleStats& oracle();

// Solve Ax = b; when the oracle is on and cols <= 20, verify solvability (and the particular
// solution) against exhaustive enumeration with `eval` (independent satisfaction test).
AffineResult solve_checked(const F2Matrix& A, const BitVec& b,
                           const std::function<bool(const BitVec&)>& eval);

}  // namespace kfc
