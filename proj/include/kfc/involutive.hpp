#pragma once

#include <optional>

#include "kfc/morphisms.hpp"

namespace kfc {

// Flavors of involution data.
//   Horizontal: F2[U] complex, involution on its U=0 truncation (horizontal almost iota-complex).
//   FullUV:     R or F2[U,V] complex, complex-level skew involution stored when known, hat
//               involution on the U=V=0 truncation always present.
//   A0:         F2[U'] complex from A0-extraction; Alexander gradings are formal, maps are
//               graded by Maslov alone.
enum class Flavor { Horizontal, FullUV, A0 };

struct IotaComplex {
    ComplexPtr cx;
    ComplexPtr hat_cx;
    Flavor flavor = Flavor::Horizontal;
    GMap iota;                      // hat_cx -> hat_cx, skew, shift (0,0)
    std::optional<GMap> full_iota;  // cx -> cx skew chain map (FullUV models)
    std::optional<GMap> psi_lift;   // cx -> cx chain map whose hat is homotopic to iota phi iota
};

IotaComplex make_iota_complex(ComplexPtr cx, Flavor flavor, GMap iota_hat,
                              std::optional<GMap> full_iota = std::nullopt,
                              std::optional<GMap> psi_lift = std::nullopt);

// Formal derivative of the differential as a chain map (shift (1,-1) for U, (-1,1) for V).
GMap phi(ComplexPtr c, bool wrt_u = true);
// Hat truncation of phi, as a map on X.hat_cx.
GMap phi_hat(const IotaComplex& X, bool wrt_u = true);

struct AxiomReport {
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    bool ok() const { return failures.empty(); }
};

// The six bullets for horizontal almost iota-complexes; pre: flavor Horizontal (A0 accepted
// with Maslov-only grading). For FullUV inputs use check_fulluv_axioms.
AxiomReport check_horizontal_axioms(const IotaComplex& X);
// FullUV structural checks: validity, both localization ranks, skew chain involution,
// iota^2 ~ 1 + Phi Psi on the hat.
AxiomReport check_fulluv_axioms(const IotaComplex& X);

// Search for the psi-lift: a chain map f with hat(f) ~ iota phi iota.
std::optional<GMap> find_psi_lift(const IotaComplex& X);

// iota_{C(x)D} = iota(x)iota + (Phi iota)(x)(iota Phi) on hats; psi lifts combine as f(x)1 + 1(x)g.
IotaComplex tensor_iota(const IotaComplex& X, const IotaComplex& Y);
// FullUV connected sum: iota_{K1#K2} = iota1(x)iota2 + (Phi iota1)(x)(Psi iota2).
IotaComplex connected_sum_iota(const IotaComplex& X, const IotaComplex& Y);

IotaComplex dual_iota(const IotaComplex& X);
// Trace and cotrace for the duality pairing, as chain maps to/from the rank-one complex.
GMap trace_map(const IotaComplex& X, const IotaComplex& XtensorXdual, ComplexPtr rank_one);
GMap cotrace_map(const IotaComplex& X, const IotaComplex& XtensorXdual, ComplexPtr rank_one);

// V=0 truncation of a FullUV iota-complex as a horizontal almost iota-complex
// (hat involution inherited from the stored data).
IotaComplex horizontal_from_fulluv(const IotaComplex& X);

// Alexander-grading-zero subcomplex of a FullUV complex over F2[U'] with U' = UV.
// Formal Alexander gradings are solved from the differential (error on inconsistency).
struct A0Extraction {
    IotaComplex a0;                       // Flavor::A0
    std::vector<std::string> amb_labels;  // ambient generator for each A0 generator
    std::vector<Mono> amb_mono;           // b_x = amb_mono * x in the ambient complex
};
A0Extraction a0_extract(const IotaComplex& X);

// Extension of a map C_O-like -> A0(K) to F2[U,V] -> ambient along F2[UV] -> F2[U,V]:
// the image of the generator, written in ambient coordinates.
std::vector<Poly> a0_extension_image(const A0Extraction& ex, const IotaComplex& ambient,
                                     const std::vector<Poly>& a0_image);

}  // namespace kfc
