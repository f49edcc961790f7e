#include "superbracket/brackets.hpp"

#include "superbracket/conventions.hpp"
#include "superbracket/geometry.hpp"

namespace superbracket {

namespace {

// Restricts a Poly on an extension chart (whose first variables are those of
// `s`, in order) back to `s`. Every monomial must avoid the extra variables.
Poly project(const Poly& f, const SpacePtr& s) {
    Poly out(s);
    for (const auto& [m, c] : f.terms()) {
        for (std::size_t i = s->size(); i < m.exps.size(); ++i)
            if (m.exps[i]) throw Error(ErrorKind::Internal, "projection would drop a variable");
        Monomial r;
        r.exps.assign(m.exps.begin(), m.exps.begin() + static_cast<std::ptrdiff_t>(s->size()));
        out.add_term(r, c);
    }
    return out;
}

}  // namespace

Poly poisson(const Poly& f, const Poly& g) {
    require_same_chart(f, g);
    const Space& s = *f.space();
    auto pairs = s.pairs_of(Parity::Even);
    if (pairs.empty()) throw Error(ErrorKind::Precondition, "chart has no even conjugate pairs");
    Parity fp = f.parity();
    g.parity();
    Poly out(f.space());
    if (f.is_zero() || g.is_zero()) return out;
    for (const auto& pr : pairs) {
        Parity a = s.variable(pr.coordinate).parity;
        Poly dfdp = partial(f, pr.momentum);
        Poly dfdx = partial(f, pr.coordinate);
        Poly term(f.space());
        if (!dfdp.is_zero()) {
            Poly t = dfdp * partial(g, pr.coordinate);
            term += a == Parity::Odd ? -t : t;
        }
        if (!dfdx.is_zero()) term -= dfdx * partial(g, pr.momentum);
        out += koszul_sign(fp, a) < 0 ? -term : term;
    }
    return out;
}

SchoutenLift schouten_lift(const SpacePtr& s) {
    auto odd = s->pairs_of(Parity::Odd);
    if (odd.empty()) throw Error(ErrorKind::Precondition, "chart has no odd conjugate pairs");
    SchoutenLift lift{cotangent(s), Poly(s), {}};
    const Space& ph = *lift.phase;
    lift.master = Poly(lift.phase);
    // momentum in the phase chart for variable i of s
    auto momentum_of = [&](std::size_t i) {
        for (const auto& p : ph.pairs_of(Parity::Even))
            if (p.coordinate == i) return p.momentum;
        throw Error(ErrorKind::Internal, "missing momentum in lift");
    };
    for (const auto& p : odd) {
        auto pi = Poly::variable(lift.phase, momentum_of(p.momentum));
        auto pp = Poly::variable(lift.phase, momentum_of(p.coordinate));
        lift.master += pi * pp;
    }
    lift.master *= Rational(conventions().master_sign);
    lift.momenta = ph.momenta(Parity::Even);
    return lift;
}

Poly derived_schouten(const Poly& p, const Poly& q) {
    require_same_chart(p, q);
    auto lift = schouten_lift(p.space());
    Poly pe = embed(p, lift.phase), qe = embed(q, lift.phase);
    Poly r = poisson(poisson(lift.master, pe), qe);
    return project(set_zero(r, lift.momenta), p.space());
}

Poly schouten(const Poly& p, const Poly& q, OddConvention conv) {
    Poly r = derived_schouten(p, q);
    if (conv == OddConvention::Antisymmetric && p.parity() == Parity::Odd) r *= Rational(-1);
    return r;
}

// ---------------------------------------------------------------- VectorField

VectorField::VectorField(SpacePtr space, Parity parity) : space_(std::move(space)), parity_(parity) {
    coeffs_.assign(space_->size(), Poly(space_));
}

VectorField::VectorField(SpacePtr space, Parity parity, std::vector<Poly> coefficients)
    : space_(std::move(space)), parity_(parity), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != space_->size())
        throw Error(ErrorKind::ChartMismatch, "vector field needs one coefficient per variable");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) check(i, coeffs_[i]);
}

VectorField VectorField::partial_along(SpacePtr space, std::size_t var) {
    Parity p = space->variable(var).parity;
    VectorField x(space, p);
    x.set_coefficient(var, Poly::constant(space, 1));
    return x;
}

void VectorField::check(std::size_t i, const Poly& c) const {
    if (!same_chart(c.space(), space_))
        throw Error(ErrorKind::ChartMismatch, "vector field coefficient on a different chart");
    auto pc = c.parity_class();
    if (pc == ParityClass::Zero) return;
    if (pc == ParityClass::Inhomogeneous || c.parity() != parity_ + space_->variable(i).parity)
        throw Error(ErrorKind::Parity, "vector field coefficient of wrong parity for '" +
                                           space_->variable(i).name + "'");
}

void VectorField::set_coefficient(std::size_t i, Poly c) {
    check(i, c);
    coeffs_.at(i) = std::move(c);
}

bool VectorField::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

Poly VectorField::operator()(const Poly& f) const {
    if (!same_chart(f.space(), space_))
        throw Error(ErrorKind::ChartMismatch, "vector field applied to a function on another chart");
    Poly out(space_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) {
            Poly d = partial(f, i);
            if (!d.is_zero()) out += coeffs_[i] * d;
        }
    return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    if (!same_chart(space_, o.space_)) throw Error(ErrorKind::ChartMismatch, "fields on different charts");
    if (o.is_zero()) return *this;
    if (is_zero()) parity_ = o.parity_;
    if (parity_ != o.parity_) throw Error(ErrorKind::Parity, "sum of fields of different parity");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    VectorField n = o;
    n *= Rational(-1);
    return *this += n;
}

VectorField& VectorField::operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
}

bool operator==(const VectorField& a, const VectorField& b) {
    if (!same_chart(a.space_, b.space_)) return false;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.parity_ == b.parity_ && a.coeffs_ == b.coeffs_;
}

VectorField VectorField::embedded(const SpacePtr& target) const {
    VectorField out(target, parity_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        out.set_coefficient(target->index(space_->variable(i).name), embed(coeffs_[i], target));
    return out;
}

VectorField commutator(const VectorField& x, const VectorField& y) {
    if (!same_chart(x.space(), y.space()))
        throw Error(ErrorKind::ChartMismatch, "commutator of fields on different charts");
    const int s = koszul_sign(x.parity(), y.parity());
    VectorField out(x.space(), x.parity() + y.parity());
    for (std::size_t b = 0; b < x.space()->size(); ++b) {
        Poly c = x(y.coefficient(b));
        Poly d = y(x.coefficient(b));
        out.set_coefficient(b, s > 0 ? c - d : c + d);
    }
    return out;
}

VectorField hamiltonian_field(const Poly& h) {
    Parity hp = h.parity();
    VectorField out(h.space(), hp);
    for (std::size_t i = 0; i < h.space()->size(); ++i)
        out.set_coefficient(i, poisson(h, Poly::variable(h.space(), i)));
    return out;
}

Poly linear_hamiltonian(const VectorField& x) { return linear_hamiltonian(x, cotangent(x.space())); }

Poly linear_hamiltonian(const VectorField& x, const SpacePtr& t) {
    if (!t->parent() || !same_chart(t->parent(), x.space()) || t->provenance() != Provenance::Cotangent)
        throw Error(ErrorKind::ChartMismatch, "linear Hamiltonian needs the cotangent of the field's chart");
    Poly out(t);
    for (const auto& p : t->pairs_of(Parity::Even)) {
        if (p.coordinate >= x.space()->size()) continue;
        const Poly& c = x.coefficient(p.coordinate);
        if (!c.is_zero()) out += embed(c, t) * Poly::variable(t, p.momentum);
    }
    return out;
}

VectorField de_rham(const SpacePtr& s) {
    if (s->provenance() != Provenance::Antitangent)
        throw Error(ErrorKind::Precondition, "de Rham field needs an antitangent chart");
    VectorField d(s, Parity::Odd);
    for (std::size_t i = 0; i < s->size(); ++i) {
        const auto& v = s->variable(i);
        if (v.role == Role::Differential) continue;
        if (auto j = s->find("d" + v.name)) d.set_coefficient(i, Poly::variable(s, *j));
    }
    return d;
}

VectorField interior(const VectorField& x, const SpacePtr& s) {
    if (s->provenance() != Provenance::Antitangent || !same_chart(s->parent(), x.space()))
        throw Error(ErrorKind::Precondition, "interior product needs the antitangent chart of the field's chart");
    int sign = conventions().interior_sign * (x.parity() == Parity::Odd ? -1 : 1);
    VectorField out(s, flip(x.parity()));
    const Space& base = *x.space();
    for (std::size_t a = 0; a < base.size(); ++a) {
        if (x.coefficient(a).is_zero()) continue;
        auto j = s->index("d" + base.variable(a).name);
        out.set_coefficient(j, embed(x.coefficient(a), s) * Rational(sign));
    }
    return out;
}

VectorField shifted_bracket(const VectorField& a, const VectorField& b, OddConvention conv) {
    VectorField c = commutator(a, b);
    if (conv == OddConvention::Symmetric && a.parity() == Parity::Odd) c *= Rational(-1);
    return c;
}

}  // namespace superbracket
