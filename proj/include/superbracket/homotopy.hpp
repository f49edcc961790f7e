#pragma once

// Higher derived brackets: homotopy Poisson / Schouten families, L-infinity
// structure constants of a homological field and the generalized Jacobi
// identities, the adjoint map, Lie algebroid anchor and bracket.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "superbracket/brackets.hpp"
#include "superbracket/graded.hpp"

namespace superbracket {

enum class MasterKind {
    EvenMaster,  // P on Pi T*M, homotopy Poisson
    OddMaster    // H on T*M, homotopy Schouten
};

class MasterHamiltonian {
public:
    MasterHamiltonian(Poly value, MasterKind kind);

    const Poly& value() const noexcept { return value_; }
    MasterKind kind() const noexcept { return kind_; }
    Parity parity() const noexcept { return kind_ == MasterKind::EvenMaster ? Parity::Even : Parity::Odd; }
    /// [[P,P]] or (H,H); computed on demand.
    Poly self_commutator() const;
    bool is_master() const { return self_commutator().is_zero(); }

private:
    Poly value_;
    MasterKind kind_;
};

/// Base coordinates of a phase chart: variables that are not momenta of the
/// given bracket kind.
std::vector<std::size_t> base_variables(const Space& s, Parity bracket);

/// {f_1,...,f_k}_P = [[...[[P,f_1]],...,f_k]] restricted to x* = 0.
Poly higher_poisson(const MasterHamiltonian& p, const std::vector<Poly>& args,
                    OddConvention conv = OddConvention::Antisymmetric);

/// {f_1,...,f_k}_H = (...(H,f_1),...,f_k) restricted to p = 0.
Poly higher_schouten(const MasterHamiltonian& h, const std::vector<Poly>& args);

/// N-ary operations read off a homological field on a linear chart. Inputs
/// are basis vectors e_i (the constant fields d/dxi^i); bracket values are
/// vectors in the same basis.
class LInftyStructure {
public:
    using Vector = std::vector<Rational>;
    using Key = std::vector<std::size_t>;  // nondecreasing generator indices

    LInftyStructure() = default;
    LInftyStructure(std::vector<Parity> generator_parities, unsigned max_arity, int field_degree);

    const std::vector<Parity>& parities() const noexcept { return parities_; }
    std::size_t dimension() const noexcept { return parities_.size(); }
    unsigned max_arity() const noexcept { return max_arity_; }
    /// Polynomial degree of the encoding field; brackets of higher arity vanish.
    int field_degree() const noexcept { return field_degree_; }
    const std::map<Key, Vector>& constants() const noexcept { return constants_; }
    void set(const Key& key, Vector value);

    /// Bracket of basis vectors in any order (graded-symmetric sign rule).
    Vector bracket_basis(const std::vector<std::size_t>& indices) const;
    /// Multilinear bracket of homogeneous vectors.
    Vector bracket(const std::vector<Vector>& args) const;
    /// Parity of a homogeneous vector (Even for zero).
    Parity parity(const Vector& v) const;

    friend bool operator==(const LInftyStructure&, const LInftyStructure&) = default;

private:
    std::vector<Parity> parities_;
    unsigned max_arity_ = 0;
    int field_degree_ = -1;
    std::map<Key, Vector> constants_;
};

/// Linear chart with coordinates xi1, xi2, ... of the given parities.
SpacePtr linear_chart(const std::vector<Parity>& coordinate_parities, const std::string& prefix = "xi");

/// i_{v_1...v_N} := [[...[Q, i_{v_1}], ...], i_{v_N}](0).
LInftyStructure extract_linfty(const VectorField& q, unsigned max_arity);

/// Inverse of extract_linfty: the field whose Taylor data are the given constants.
VectorField encode_linfty(const LInftyStructure& l, const SpacePtr& chart);

struct JacobiReport {
    struct Failure {
        unsigned arity;
        std::vector<std::size_t> inputs;
        LInftyStructure::Vector residual;
    };
    /// residual_terms[n]: number of nonzero residual components over all inputs of arity n
    std::vector<std::size_t> residual_terms;
    std::optional<Failure> first_failure;
    bool ok() const { return !first_failure.has_value(); }
};

/// Shuffle-sum identities for n = 0..max_inputs inputs.
JacobiReport verify_generalized_jacobi(const LInftyStructure& l, unsigned max_inputs);

/// eta -> Q^eta - Q - Q(eta). `eta` holds one component per coordinate, each a
/// Poly on `point_chart` (an extension of Q's chart) of the coordinate's parity.
/// The result lives on `point_chart`.
VectorField adjoint_image(const VectorField& q, const std::vector<Poly>& eta, const SpacePtr& point_chart);

/// Section of E: components u^i over the base, parity tag.
struct Section {
    Parity parity = Parity::Even;
    std::vector<Poly> components;  // on the base chart
};

struct AlgebroidData {
    Poly anchor;      // a(u) f
    Section bracket;  // [u, v]
};

/// Anchor and bracket of the Lie algebroid encoded by a weight-1 homological
/// field on Pi E (chart from vector_bundle(..., shifted = true)).
VectorField section_field(const Section& u, const SpacePtr& bundle_chart);
AlgebroidData algebroid_brackets(const VectorField& q, const Section& u, const Section& v, const Poly& f);
/// Multiplication of a section by a base function.
Section scale(const Poly& f, const Section& u);

struct Compatibility {
    Poly residual;
    bool compatible() const { return residual.is_zero(); }
};
/// (H_E, H_E*) on a common cotangent chart.
Compatibility bialgebroid_compatible(const Poly& h_e, const Poly& h_estar);

}  // namespace superbracket
