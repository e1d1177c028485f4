#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kfc/complex.hpp"

namespace kfc {

// ---- torus algebra A(T^2) = Span(i0, i1, r1, r2, r3, r12, r23, r123)

enum class Idem { I0, I1 };

enum class Rho { R1, R2, R3, R12, R23, R123 };

Idem rho_start(Rho r);
Idem rho_end(Rho r);
std::optional<Rho> rho_mul(Rho a, Rho b);  // nonzero products per the standard table
std::string rho_name(Rho r);
std::optional<Rho> rho_parse(const std::string& s);

// ---- type-D modules

struct TypeD {
    struct Gen {
        std::string label;
        Idem idem;
        std::optional<Grading> gr;  // CFK gradings for i0-generators from cfd_from_cfk
    };
    std::vector<Gen> gens;
    std::vector<std::vector<std::pair<Rho, int>>> arrows;  // arrows[i] = (rho, target)

    int index_of(const std::string& label) const;
    int rank() const { return int(gens.size()); }
};

using TypeDPtr = std::shared_ptr<const TypeD>;

// ---- type-A modules (U-weighted higher operations over F2[U])

struct TypeA {
    struct Gen {
        std::string label;
        Idem idem;
    };
    struct Op {
        int from;
        std::vector<Rho> word;  // consumed Reeb elements; empty word = m_1
        int upow;
        int to;
    };
    std::vector<Gen> gens;
    std::vector<Op> ops;

    int index_of(const std::string& label) const;
    int rank() const { return int(gens.size()); }
    int max_word_len() const;
};

// structure-equation checks
ValidationReport check_typeD(const TypeD& m);
ValidationReport check_typeA(const TypeA& m, int max_len = -1);

// type-D morphisms: entries x -> rho (or idempotent) . y
struct TypeDMorphism {
    TypeDPtr src, dst;
    struct Entry {
        int from;
        std::optional<Rho> rho;  // nullopt = idempotent coefficient
        int to;
    };
    std::vector<Entry> entries;
};

bool is_chain_typeD_morphism(const TypeDMorphism& f);
TypeDMorphism identity_morphism(TypeDPtr m);
TypeDMorphism compose_typeD(const TypeDMorphism& g, const TypeDMorphism& f);

// ---- constructions

// CFD of the 0-framed complement from a reduced R-coefficient knot Floer complex:
// vertical arrows become rho1/rho23/rho123 chains, horizontal arrows rho3/rho23/rho2 chains,
// the unstable chain is a single rho12 arrow (requires tau = 0).
TypeD cfd_from_cfk(const Complex& cfk_r);
int compute_tau(const Complex& cfk_r);

// Pattern type-A modules.
TypeA cfa_nu(int kmax);       // ops m(s; r3, r23^k, r2) = U^{k+1} s for 0 <= k < kmax
TypeA cfa_cable(int n);       // the (2n+1,-1)-cabling pattern
// cap for the nu family against a given type-D module (longest rho23 run + 1)
int nu_cap_for(const TypeD& d);

// ---- box tensor product

struct BoxResult {
    ComplexPtr cx;               // over F2[U]
    std::vector<int> component;  // connected component id per generator
    int anchored_component = -1; // component of the free-homology generator (grading (0,0))
    std::vector<std::pair<int, int>> gen_pair;  // (A index, D index) per generator
};

// use_d_gradings: take gradings from the D side's stored i0 gradings (nu pairing);
// otherwise gradings are solved from homogeneity per component and the free component
// is anchored at (0,0).
BoxResult box_tensor(const TypeA& a, const TypeD& d, bool use_d_gradings = false);

// id_A box f between two box-tensor complexes.
GMap box_tensor_morphism(const TypeA& a, const TypeDMorphism& f, const BoxResult& src,
                         const BoxResult& dst);

// locality of a type-D morphism: pairing with the U=1 truncation of the nu pattern gives
// rank-1 homology on both sides and the induced map is nonzero.
bool is_local_typeD(const TypeDMorphism& f);

bool typeD_isomorphic(const TypeD& a, const TypeD& b);

}  // namespace kfc
