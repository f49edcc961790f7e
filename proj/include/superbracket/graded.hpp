#pragma once

// Exact graded-commutative polynomial arithmetic over Q.
//
// A Poly lives on a Space (an ordered list of graded coordinates). Monomials
// are stored in the space's declaration order; every reordering needed to
// bring a product into that order contributes the Koszul sign.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace superbracket {

using Rational = mpq_class;

enum class ErrorKind { ChartMismatch, Parity, Precondition, Parse, Internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

constexpr Parity operator+(Parity a, Parity b) noexcept {
    return static_cast<Parity>(static_cast<int>(a) ^ static_cast<int>(b));
}
constexpr Parity flip(Parity a) noexcept { return a + Parity::Odd; }
constexpr int bit(Parity a) noexcept { return static_cast<int>(a); }
/// (-1)^(a*b)
constexpr int koszul_sign(Parity a, Parity b) noexcept { return (bit(a) & bit(b)) ? -1 : 1; }
inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

struct Weight {
    int w1 = 0;
    int w2 = 0;
    friend Weight operator+(Weight a, Weight b) { return {a.w1 + b.w1, a.w2 + b.w2}; }
    friend bool operator==(Weight a, Weight b) = default;
};

enum class Role {
    Base,                 // x^a
    Momentum,             // p_a, conjugate to a coordinate in a T* construction
    Antimomentum,         // x*_a, conjugate in a Pi T* construction
    Differential,         // dx^a
    DifferentialMomentum, // pi_a, conjugate to dx^a
    Fiber,                // xi^i
    FiberMomentum,        // pi_i, conjugate to xi^i
    Parameter             // formal even scalar (never paired)
};

const char* to_string(Role r);

struct Variable {
    std::string name;
    Parity parity = Parity::Even;
    Role role = Role::Base;
    Weight weight{};
    // Name of the coordinate this variable was derived from (itself for base variables).
    std::string origin;
};

/// (coordinate, momentum) pair of a canonical bracket. Even pairs come from T*,
/// odd pairs from Pi T*.
struct ConjugatePair {
    std::size_t coordinate;
    std::size_t momentum;
    Parity bracket;
};

enum class Provenance { Base, Cotangent, Anticotangent, Antitangent, VectorBundle, MackenzieXu };
const char* to_string(Provenance p);

class Space;
using SpacePtr = std::shared_ptr<const Space>;

class Space {
public:
    /// Validates names, pair parities and the one-pair-per-kind rule.
    static SpacePtr make(std::vector<Variable> vars, std::vector<ConjugatePair> pairs,
                         Provenance provenance = Provenance::Base, SpacePtr parent = nullptr);

    std::size_t size() const noexcept { return vars_.size(); }
    const std::vector<Variable>& variables() const noexcept { return vars_; }
    const Variable& variable(std::size_t i) const { return vars_.at(i); }
    const std::vector<ConjugatePair>& pairs() const noexcept { return pairs_; }
    Provenance provenance() const noexcept { return provenance_; }
    const SpacePtr& parent() const noexcept { return parent_; }

    std::optional<std::size_t> find(const std::string& name) const;
    std::size_t index(const std::string& name) const;

    std::vector<ConjugatePair> pairs_of(Parity bracket) const;
    bool has_pairs(Parity bracket) const;
    /// Indices of every variable appearing as the momentum of a pair of the given kind.
    std::vector<std::size_t> momenta(Parity bracket) const;

    /// Structural equality: same variables (name, parity, role, weight) and pairs.
    bool same_as(const Space& other) const;

private:
    Space() = default;
    std::vector<Variable> vars_;
    std::vector<ConjugatePair> pairs_;
    Provenance provenance_ = Provenance::Base;
    SpacePtr parent_;
};

/// Exponent vector in the chart's declaration order. Odd exponents are 0 or 1.
struct Monomial {
    std::vector<std::uint16_t> exps;

    unsigned degree() const;
    bool is_one() const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical term order: total degree ascending, then larger exponents of
/// earlier variables first.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

Parity parity_of(const Monomial& m, const Space& s);
Weight weight_of(const Monomial& m, const Space& s);

struct SignedMonomial {
    int sign = 1;
    Monomial monomial;
};

/// Sort a written product of variables into canonical order. Returns nullopt
/// when an odd variable repeats.
std::optional<SignedMonomial> normalize(const Space& s, const std::vector<std::size_t>& factors);

/// Product of two canonical monomials with its Koszul sign (nullopt when zero).
std::optional<SignedMonomial> multiply(const Space& s, const Monomial& a, const Monomial& b);

enum class ParityClass { Even, Odd, Inhomogeneous, Zero };

class Poly {
public:
    using Terms = std::map<Monomial, Rational, MonomialOrder>;

    explicit Poly(SpacePtr space);
    static Poly constant(SpacePtr space, const Rational& c);
    static Poly variable(SpacePtr space, std::size_t index);
    static Poly variable(SpacePtr space, const std::string& name);
    static Poly monomial(SpacePtr space, const Monomial& m, const Rational& c = 1);

    const SpacePtr& space() const noexcept { return space_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    /// Coefficient of the constant monomial.
    Rational constant_term() const;

    ParityClass parity_class() const;
    /// Parity of a homogeneous nonzero Poly; Even for zero; throws when inhomogeneous.
    Parity parity() const;
    bool is_homogeneous() const { return parity_class() != ParityClass::Inhomogeneous; }
    Poly even_part() const;
    Poly odd_part() const;

    /// Highest total degree in the given variables (-1 for zero).
    int degree_in(const std::vector<std::size_t>& vars) const;
    int degree() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= Rational(-1); }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);

    /// Adds c * m for a canonical monomial m.
    void add_term(const Monomial& m, const Rational& c);

private:
    SpacePtr space_;
    Terms terms_;
};

void require_same_chart(const Poly& a, const Poly& b);
bool same_chart(const SpacePtr& a, const SpacePtr& b);

Poly pow(const Poly& f, unsigned n);

/// Partial derivative in the convention currently selected (left by default).
Poly partial(const Poly& f, std::size_t var);
Poly partial(const Poly& f, const std::string& var);

/// Algebra endomorphism of f's chart: listed variables go to their images,
/// the rest are fixed. Images must have the parity of the variable they replace.
Poly substitute(const Poly& f, const std::map<std::size_t, Poly>& images);

/// Algebra map into another chart: images[i] is the image of variable i of f's chart.
Poly pull(const Poly& f, const SpacePtr& target, const std::vector<Poly>& images);

/// Re-express f on another chart by variable name; only variables occurring in f
/// need a counterpart (same name and parity).
Poly embed(const Poly& f, const SpacePtr& target);

/// Sets the listed variables to zero.
Poly set_zero(const Poly& f, const std::vector<std::size_t>& vars);

/// Whether f involves only the listed variables.
bool supported_on(const Poly& f, const std::vector<std::size_t>& vars);

std::optional<Weight> weight_of(const Poly& f);

}  // namespace superbracket
