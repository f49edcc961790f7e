#pragma once

// Argument shift of an odd Hamiltonian by an even function, H'(x,p) =
// H(x, p + t dr/dx), and the (quasi-)triangular bialgebroids built from it.

#include <optional>
#include <string>
#include <vector>

#include "superbracket/geometry.hpp"
#include "superbracket/homotopy.hpp"

namespace superbracket {

struct ShiftDatum {
    MasterHamiltonian h;     // odd, on a cotangent chart
    Poly r;                  // even, momentum-free, same chart
    std::optional<Poly> t;   // even scalar: a constant or a polynomial in Parameter variables

    ShiftDatum(MasterHamiltonian h, Poly r, std::optional<Poly> t = std::nullopt);
};

/// Images of the chart variables under the shift: momenta p_a -> p_a + t dr/dx^a,
/// everything else fixed. The map preserves the canonical bracket.
std::vector<Poly> shift_images(const ShiftDatum& d);

/// F' for an arbitrary function F on the chart.
Poly shift_function(const ShiftDatum& d, const Poly& f);

/// H'.
Poly shift(const ShiftDatum& d);

/// H(x, t dr/dx), i.e. H' at p = 0.
Poly master_equation_residual(const ShiftDatum& d);

/// Every term of h has exactly two momenta.
bool momentum_quadratic(const Poly& h);

struct CoboundaryDecomposition {
    Poly h;            // H
    Poly coboundary;   // t (H, r)
    Poly curvature;    // t^2/2 {r, r}_H
    Poly sum() const { return h + coboundary + curvature; }
};

/// H' = H + (H,r) + 1/2 {r,r}_H for H quadratic in momenta.
CoboundaryDecomposition coboundary_decompose(const ShiftDatum& d);

/// (H, H(x, dr/dx)); vanishes when the shifted structure is strict.
Poly generalized_ybe_residual(const ShiftDatum& d);

enum class ShiftClass {
    Triangular,       // master equation holds
    QuasiTriangular,  // only the weaker (H, residual) = 0 holds
    Curved
};
const char* to_string(ShiftClass c);
ShiftClass classify(const ShiftDatum& d);

/// Pi E* for a chart Pi E from vector_bundle(..., shifted = true): base
/// coordinates plus fiber coordinates named like the momenta pi_xi of T*(Pi E).
SpacePtr dual_shifted_bundle(const SpacePtr& pi_e);

struct WeightReport {
    // bi-weights counted on T*(Pi E); nullopt when not homogeneous
    std::optional<Weight> h_e, r, h_estar, shifted;
};

struct QuasitriangularBialgebroid {
    MackenzieXu mx;           // T*(Pi E) -> T*(Pi E*)
    Poly h_e;                 // linear Hamiltonian of Q_E, on mx.target
    Poly r;                   // on mx.target
    Poly h_estar;             // (H_E, r)
    Poly shifted;             // H_E'
    Poly master_residual;     // H_E(x, dr/dx)
    Poly compatibility;       // (H_E, H_Estar)
    ShiftClass kind = ShiftClass::Curved;
    WeightReport weights;
};

/// q_e: homological, fiber-weight-one field on Pi E; r: even function on
/// dual_shifted_bundle(Pi E) (or any chart with matching names).
QuasitriangularBialgebroid build_quasitriangular_bialgebroid(const VectorField& q_e, const Poly& r);

}  // namespace superbracket
