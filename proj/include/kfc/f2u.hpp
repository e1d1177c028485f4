#pragma once

#include "kfc/complex.hpp"

namespace kfc {

// Standard form of a chain complex over F2[U] (or of the U- or V-part of an R-complex):
// after a homogeneous change of basis the chosen part of the differential is a disjoint
// matching  d(head_i) = U^{k_i} tail_i  and the remaining generators are cycles.
struct StdPair {
    int head = -1, tail = -1;
    int order = 0;  // exponent k_i
};

struct StandardForm {
    ComplexPtr domain;   // complex the form was computed from
    ComplexPtr std_cx;   // same labels/gradings, standard differential part
    GMap to_std;         // iso domain -> std (coordinates)
    GMap from_std;       // inverse iso
    std::vector<StdPair> pairs;
    std::vector<int> free_gens;  // generators in no pair (for the chosen variable)
};

// var_u = true: pivot on pure U-power entries; false: pure V-power entries.
// On an F2U complex use var_u = true (every entry is a U-power).
StandardForm standardize_var(const Complex& c, bool var_u);
inline StandardForm standardize_f2u(const Complex& c) { return standardize_var(c, true); }

// H(C) = F2[U]^free_rank  (+)  sum_i F2[U]/(U^{k_i}).
struct F2UHomology {
    int free_rank = 0;
    std::vector<int> torsion_orders;       // k_i >= 1, sorted
    std::vector<Poly> free_rep;            // original coordinates; set when free_rank == 1
    Grading free_rep_grading{0, 0};
    StandardForm sf;
};

F2UHomology homology_over_f2u(const Complex& c);

// Coordinates of a vector in the standard basis.
std::vector<Poly> std_coords(const StandardForm& sf, const std::vector<Poly>& v);

// Class data of a cycle: its coefficient on the unique free generator (free_rank 1 assumed).
Poly free_class_coefficient(const F2UHomology& h, const std::vector<Poly>& cycle);

// Graded isomorphism classification of F2U complexes: two complexes are isomorphic by a
// homogeneous F2-basis change iff their standard-form invariants agree.
struct F2UInvariants {
    std::vector<Grading> free_gradings;                 // sorted
    std::vector<std::pair<Grading, int>> pair_data;     // (head grading, order), sorted
    bool operator==(const F2UInvariants& o) const {
        return free_gradings == o.free_gradings && pair_data == o.pair_data;
    }
};
F2UInvariants f2u_invariants(const Complex& c);
bool graded_isomorphic_f2u(const Complex& a, const Complex& b);

}  // namespace kfc
