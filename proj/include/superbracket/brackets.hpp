#pragma once

// Canonical even Poisson bracket, canonical odd Schouten bracket, vector
// fields, and the Cartan calculus on Pi TM.

#include <vector>

#include "superbracket/graded.hpp"

namespace superbracket {

/// Canonical even bracket over the even pairs of the chart:
/// (F,G) = (-1)^{F a}((-1)^a dF/dp_a dG/dx^a - dF/dx^a dG/dp_a).
/// Arguments must be parity-homogeneous.
Poly poisson(const Poly& f, const Poly& g);

/// Bilinear extension of a homogeneous-only bracket to arbitrary arguments.
template <class Bracket>
Poly bilinear(Bracket&& br, const Poly& f, const Poly& g) {
    Poly out(f.space());
    for (const auto& a : {f.even_part(), f.odd_part()})
        for (const auto& b : {g.even_part(), g.odd_part()})
            if (!a.is_zero() && !b.is_zero()) out += br(a, b);
    return out;
}

/// Odd master Hamiltonian D = sum pi^a p_a on T* of a chart with odd pairs
/// (pi^a conjugate to the antimomentum, p_a to the coordinate).
struct SchoutenLift {
    SpacePtr phase;   // cotangent of the odd-paired chart
    Poly master;      // D
    std::vector<std::size_t> momenta;  // all momenta added by the lift
};
SchoutenLift schouten_lift(const SpacePtr& s);

enum class OddConvention {
    Antisymmetric,  // [a,b] = -(-1)^{(a+1)(b+1)}[b,a]
    Symmetric       // [a,b] = (-1)^{ab}[b,a]
};

/// The derived bracket ((D,P),Q) restricted to the zero section. It is the
/// symmetric (Lie antialgebra) form of the canonical Schouten bracket.
Poly derived_schouten(const Poly& p, const Poly& q);

/// Canonical Schouten bracket on a chart with odd pairs. The antisymmetric form
/// is (-1)^{P} ((D,P),Q); the symmetric form is the derived bracket itself.
Poly schouten(const Poly& p, const Poly& q, OddConvention conv = OddConvention::Antisymmetric);

/// Parity-homogeneous derivation X = X^a d/dz^a (left derivatives).
class VectorField {
public:
    VectorField(SpacePtr space, Parity parity);
    VectorField(SpacePtr space, Parity parity, std::vector<Poly> coefficients);
    static VectorField partial_along(SpacePtr space, std::size_t var);

    const SpacePtr& space() const noexcept { return space_; }
    Parity parity() const noexcept { return parity_; }
    const std::vector<Poly>& coefficients() const noexcept { return coeffs_; }
    const Poly& coefficient(std::size_t i) const { return coeffs_.at(i); }
    void set_coefficient(std::size_t i, Poly c);
    bool is_zero() const;

    Poly operator()(const Poly& f) const;

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(const Rational& c);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(const Rational& c, VectorField a) { return a *= c; }
    friend bool operator==(const VectorField& a, const VectorField& b);

    /// Same field with coefficients re-expressed on a chart containing this one.
    VectorField embedded(const SpacePtr& target) const;

private:
    void check(std::size_t i, const Poly& c) const;
    SpacePtr space_;
    Parity parity_;
    std::vector<Poly> coeffs_;
};

/// Graded commutator [X,Y] = XY - (-1)^{XY} YX.
VectorField commutator(const VectorField& x, const VectorField& y);

/// Field of the derivation (H, .) on a chart with even pairs.
VectorField hamiltonian_field(const Poly& h);

/// X.p = X^a p_a on cotangent(X.space()) (or on the given cotangent chart).
Poly linear_hamiltonian(const VectorField& x);
Poly linear_hamiltonian(const VectorField& x, const SpacePtr& cotangent_chart);

/// d = dx^a d/dx^a on an antitangent chart.
VectorField de_rham(const SpacePtr& antitangent_chart);

/// i_X = (-1)^X X^a d/d(dx^a), for X on the parent of the antitangent chart.
VectorField interior(const VectorField& x, const SpacePtr& antitangent_chart);

/// Parity-shifted brackets on Pi L for the Lie superalgebra of vector fields:
/// [Pi a, Pi b] := Pi [a,b] (antisymmetric) or (-1)^a Pi [a,b] (symmetric).
/// Elements of Pi L are represented by the underlying field; the parity of the
/// shifted element is flip(field parity).
VectorField shifted_bracket(const VectorField& a, const VectorField& b, OddConvention conv);

}  // namespace superbracket
