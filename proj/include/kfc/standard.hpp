#pragma once

#include "kfc/involutive.hpp"

namespace kfc {

// The named model complexes, involutions and maps used throughout.
IotaComplex make_CO();                // trivial complex F2[U], generator "1" at (0,0)
IotaComplex make_CE();                // figure-eight model: da = Ub, dc = Ud
IotaComplex make_Cn(int n);           // da_n = U^n b_n, dc_n = U^n d_n (n >= 1)
IotaComplex make_CFK_UV_E();          // dh = Us + Vt, ds = Vz, dt = Uz over F2[U,V]
IotaComplex make_cable_summand(int n);  // db = U^n c + UVd + V^n e summand of CFK_UV(E_{2n+1,-1})

// The cabled figure-eight comparison map and its (skew-linear) homotopy:
// f_n : CFK_UV(E) -> CableSummand(n), with iota f_n + f_n iota = dH + Hd.
struct CableFig8Map {
    IotaComplex source, target;
    GMap f;  // straight (0,0) chain map over F2[U,V]
    GMap H;  // skew homotopy, shift (1,1)
};
CableFig8Map cable_fig8_map(int n);

// The ladder map C_n -> C_{n+1} (meaningful for n >= 2; accepted for n >= 1).
struct LadderMap {
    IotaComplex source, target;
    GMap f;
};
LadderMap cn_ladder_map(int n);

}  // namespace kfc
