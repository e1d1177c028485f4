#pragma once

#include "kfc/involutive.hpp"

namespace kfc {

struct LocalMapWitness {
    GMap f;  // degree-(0,0) local chain map
    GMap H;  // skew homotopy on the hats: iota f + f iota = dH + Hd
};

struct AbsenceCertificate {
    int unknowns = 0;
    BitVec lambda;        // combination of system rows proving inconsistency
    std::string summary;  // human-readable reason
};

struct FindResult {
    std::optional<LocalMapWitness> witness;
    std::optional<AbsenceCertificate> certificate;
    bool found() const { return witness.has_value(); }
};

// Search for an almost iota_K-local map X -> Y: one affine F2 system over the entries of f
// (homogeneous degree-(0,0) maps) and H (skew homotopies on the hats) encoding the chain-map
// equations, the iota-commutation-up-to-H equations and the locality normalization.
FindResult find_almost_local_map(const IotaComplex& X, const IotaComplex& Y);

enum class Verdict { Equivalent, Less, Greater, Incomparable };

struct ComparisonResult {
    Verdict verdict = Verdict::Incomparable;
    FindResult forward;   // X -> Y
    FindResult backward;  // Y -> X
};

ComparisonResult compare(const IotaComplex& X, const IotaComplex& Y);
std::string verdict_name(Verdict v);

struct ClassifyResult {
    enum class Value { Zero, One, NontorsionEvidence, Undetermined };
    Value value = Value::Undetermined;
    ComparisonResult vs_CO, vs_CE;
    std::vector<std::string> notes;
};

// 0 if equivalent to C_O, 1 if to C_E, otherwise reports comparability in both directions;
// comparability to both certifies infinite order.
ClassifyResult classify_A(const IotaComplex& X);
std::string classify_value_name(ClassifyResult::Value v);

// The figure-eight witness construction: from a' and a generating cycle x' with a' + iota(a') = x'
// in the hat, build the five-generator almost local map C_E -> X and verify it.
LocalMapWitness figure_eight_witness_map(const IotaComplex& X, const std::vector<Poly>& a_prime,
                                         const std::vector<Poly>& x_prime);

// The quotient construction: either a local map X -> C_O (when the free
// representative avoids Z + W) or absent; when absent, figure_eight_witness_map data exists.
struct QuotientResult {
    std::optional<LocalMapWitness> map;      // X -> C_O
    std::optional<LocalMapWitness> ce_to_x;  // cross-check: C_E -> X when the quotient fails
};
QuotientResult quotient_map_to_CO(const IotaComplex& X);

}  // namespace kfc
