#pragma once

// Forms and multivectors of a Poisson / homotopy Poisson structure: the
// alpha map into T*(Pi TM), higher Koszul brackets, the Lichnerowicz
// differential and raising of indices.
//
// Charts: P lives on anticotangent(M) (coordinates x, st_x), forms on
// antitangent(M) (x, dx), K_P on cotangent(antitangent(M)) (x, dx, p_x, pi_x).

#include <string>
#include <vector>

#include "superbracket/brackets.hpp"
#include "superbracket/graded.hpp"

namespace superbracket {

/// Base chart M of a multivector chart (anticotangent) or form chart (antitangent).
SpacePtr underlying_base(const SpacePtr& s);
SpacePtr forms_chart(const SpacePtr& multivectors);
SpacePtr koszul_phase(const SpacePtr& multivectors);

class HigherPoissonStructure {
public:
    explicit HigherPoissonStructure(Poly p);

    const Poly& value() const noexcept { return p_; }
    const Poly& self_commutator() const noexcept { return self_; }
    bool valid() const { return self_.is_zero(); }
    /// Every term has exactly two antimomenta.
    bool quadratic() const;
    const SpacePtr& multivectors() const noexcept { return p_.space(); }

private:
    Poly p_;
    Poly self_;
};

/// Symplectic identification T*(Pi T*M) -> T*(Pi TM): x, p fixed,
/// st_a -> (-1)^a pi_a, the momentum of st_a -> dx^a. It carries the Schouten
/// master Hamiltonian onto dx^a p_a.
std::vector<Poly> phase_relabeling(const SpacePtr& multivectors);

/// alpha(P) = (D,P) transported to T*(Pi TM). Odd linear map.
Poly alpha(const Poly& p);

/// Closed form of alpha(P):
///   sum_a (-1)^{a P} dP/dst_a(x, s(pi)) p_a + dx^a dP/dx^a(x, s(pi)),
/// with s(pi)_a = (-1)^a pi_a. On charts with even coordinates only this is
/// the familiar  dP/dx*_a(x,pi) p_a + dx^a dP/dx^a(x,pi).
Poly alpha_explicit(const Poly& p);

/// Same closed form with the bare substitution x*_a -> pi_a and the sign
/// (-1)^a on the p-term, as usually written; agrees with alpha() when all base
/// coordinates are even.
Poly alpha_display(const Poly& p);

/// [w_1,...,w_n]_P = (...(K_P,w_1),...,w_n) restricted to p = pi = 0.
/// Evaluates for any P; identities are only guaranteed when P is valid.
Poly higher_koszul(const HigherPoissonStructure& p, const std::vector<Poly>& forms);

/// {f_1,...,f_k}_P built from the derived Schouten bracket ((D,P),f).
/// This is the family the Koszul brackets reproduce.
Poly derived_poisson(const HigherPoissonStructure& p, const std::vector<Poly>& functions);

/// De Rham differential of a form (functions on M are embedded first).
Poly d_form(const Poly& omega, const SpacePtr& forms);

/// Embed a base function into the multivector / form chart.
Poly lift_function(const Poly& f, const SpacePtr& target);

/// P^{ab} with P = 1/2 P^{ab} x*_b x*_a + ...; i.e. d/dx*_a d/dx*_b P at x* = 0.
Poly tensor_component(const Poly& p, std::size_t a, std::size_t b);

struct NamedResidual {
    std::string name;
    Poly residual;
};

struct ClassicalKoszulReport {
    std::vector<NamedResidual> checks;
    bool ok() const;
};

/// Coordinate identities [x^a,x^b] = 0, [x^a,dx^b] = -P^{ab}, [dx^a,dx^b] = dP^{ab}
/// and the initial conditions [f,g] = 0, [f,dg] = (-1)^f {f,g},
/// [df,dg] = -(-1)^f d{f,g} for every pair from `samples` (base functions).
ClassicalKoszulReport classical_koszul_check(const HigherPoissonStructure& p, const std::vector<Poly>& samples);

/// Sign exponent of the mixed-bracket display, (l-1)f_1 + ... + f_{l-1} + l.
int display_epsilon(const std::vector<Parity>& parities);
/// Exponent actually satisfied by higher_koszul vs derived_poisson:
/// (l-1)f_1 + ... + f_{l-1} + (l-1)(l-2)/2. Equal to the above for l = 2, 3.
int observed_epsilon(const std::vector<Parity>& parities);

/// d_P X = [[P, X]].
Poly lichnerowicz(const HigherPoissonStructure& p, const Poly& x);

/// Coordinate form P^{ab}x*_b d/dx^a + 1/2 d_a P^{bc} x*_c x*_b d/dx*_a with
/// P^{ab} from tensor_component. Note: the d/dx^a part comes out with the
/// opposite sign to [[P, x^a]]; the d/dx*_a part agrees.
VectorField lichnerowicz_display(const HigherPoissonStructure& p);

/// Hamiltonian field of P for the Schouten bracket: X -> [[P, X]] as a vector field.
VectorField lichnerowicz_field(const HigherPoissonStructure& p);

/// Algebra map on forms: x -> x, dx^a -> d_P x^a = [[P, x^a]].
Poly raise_indices(const HigherPoissonStructure& p, const Poly& omega);

}  // namespace superbracket
