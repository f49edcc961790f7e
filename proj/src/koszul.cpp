#include "superbracket/koszul.hpp"

#include "superbracket/conventions.hpp"
#include "superbracket/geometry.hpp"

namespace superbracket {

SpacePtr underlying_base(const SpacePtr& s) {
    if ((s->provenance() != Provenance::Anticotangent && s->provenance() != Provenance::Antitangent) || !s->parent())
        throw Error(ErrorKind::ChartMismatch, "expected a multivector (anticotangent) or form (antitangent) chart");
    return s->parent();
}

SpacePtr forms_chart(const SpacePtr& multivectors) { return antitangent(underlying_base(multivectors)); }

SpacePtr koszul_phase(const SpacePtr& multivectors) { return cotangent(forms_chart(multivectors)); }

namespace {

void require_multivectors(const Poly& p) {
    if (p.space()->provenance() != Provenance::Anticotangent)
        throw Error(ErrorKind::ChartMismatch, "expected a function on the multivector chart");
}

bool odd_base(const Space& m, const std::string& origin) { return m.variable(m.index(origin)).parity == Parity::Odd; }

std::vector<std::size_t> antimomenta(const Space& s) { return variables_with_role(s, {Role::Antimomentum}); }

// Projection of a chart onto its first n variables (the rest sent to 0).
Poly project(const Poly& f, const SpacePtr& target) {
    std::vector<Poly> img;
    for (std::size_t i = 0; i < f.space()->size(); ++i)
        img.push_back(i < target->size() ? Poly::variable(target, i) : Poly(target));
    return pull(f, target, img);
}

Rational sign(bool negative) { return negative ? Rational(-1) : Rational(1); }

}  // namespace

HigherPoissonStructure::HigherPoissonStructure(Poly p) : p_(std::move(p)), self_(p_.space()) {
    require_multivectors(p_);
    if (p_.parity_class() != ParityClass::Even && p_.parity_class() != ParityClass::Zero)
        throw Error(ErrorKind::Parity, "homotopy Poisson structure must be even");
    self_ = schouten(p_, p_);
}

bool HigherPoissonStructure::quadratic() const {
    auto st = antimomenta(*p_.space());
    for (const auto& [m, c] : p_.terms()) {
        int d = 0;
        for (auto i : st) d += m.exps[i];
        if (d != 2) return false;
    }
    return true;
}

std::vector<Poly> phase_relabeling(const SpacePtr& multivectors) {
    auto lift = schouten_lift(multivectors);
    auto k = koszul_phase(multivectors);
    const Space& m = *underlying_base(multivectors);
    const int ms = conventions().master_sign;
    std::vector<Poly> img;
    for (const auto& v : lift.phase->variables()) {
        switch (v.role) {
            case Role::Antimomentum:
                img.push_back(Poly::variable(k, "pi_" + v.origin) * sign(odd_base(m, v.origin) != (ms < 0)));
                break;
            case Role::DifferentialMomentum:
                img.push_back(Poly::variable(k, "d" + v.origin) * Rational(ms));
                break;
            default: img.push_back(Poly::variable(k, v.name));
        }
    }
    return img;
}

Poly alpha(const Poly& p) {
    require_multivectors(p);
    auto lift = schouten_lift(p.space());
    return pull(poisson(lift.master, embed(p, lift.phase)), koszul_phase(p.space()), phase_relabeling(p.space()));
}

namespace {

Poly closed_form(const Poly& p, bool display) {
    require_multivectors(p);
    const SpacePtr& s = p.space();
    const Space& m = *underlying_base(s);
    auto k = koszul_phase(s);
    std::vector<Poly> subst;  // multivector chart -> phase: x -> x, st_a -> +-pi_a
    for (const auto& v : s->variables()) {
        if (v.role == Role::Antimomentum)
            subst.push_back(Poly::variable(k, "pi_" + v.origin) * sign(!display && odd_base(m, v.origin)));
        else
            subst.push_back(Poly::variable(k, v.name));
    }
    const bool p_odd = p.parity_class() == ParityClass::Odd;
    Poly out(k);
    for (std::size_t a = 0; a < m.size(); ++a) {
        const auto& x = m.variable(a);
        bool odd = x.parity == Parity::Odd;
        Poly t = pull(partial(p, "st_" + x.name), k, subst) * Poly::variable(k, "p_" + x.name);
        out += t * sign(display ? odd : (odd && p_odd));
        out += Poly::variable(k, "d" + x.name) * pull(partial(p, x.name), k, subst);
    }
    return out;
}

}  // namespace

Poly alpha_explicit(const Poly& p) { return closed_form(p, false); }
Poly alpha_display(const Poly& p) { return closed_form(p, true); }

Poly lift_function(const Poly& f, const SpacePtr& target) { return embed(f, target); }

Poly higher_koszul(const HigherPoissonStructure& p, const std::vector<Poly>& forms) {
    auto k = koszul_phase(p.multivectors());
    auto a = forms_chart(p.multivectors());
    Poly x = alpha(p.value());
    for (const auto& w : forms) {
        if (x.is_zero()) break;
        x = bilinear([](const Poly& u, const Poly& v) { return poisson(u, v); }, x, embed(w, k));
    }
    return project(set_zero(x, k->momenta(Parity::Even)), a);
}

Poly derived_poisson(const HigherPoissonStructure& p, const std::vector<Poly>& functions) {
    const SpacePtr& s = p.multivectors();
    auto m = underlying_base(s);
    Poly x = p.value();
    for (const auto& f : functions) {
        if (x.is_zero()) break;
        Poly g = embed(f, s);
        if (!supported_on(g, variables_with_role(*s, {Role::Base})))
            throw Error(ErrorKind::Precondition, "bracket arguments must be functions on the base");
        x = bilinear([](const Poly& u, const Poly& v) { return schouten(u, v, OddConvention::Symmetric); }, x, g);
    }
    return project(set_zero(x, antimomenta(*s)), m);
}

Poly d_form(const Poly& omega, const SpacePtr& forms) { return de_rham(forms)(embed(omega, forms)); }

Poly tensor_component(const Poly& p, std::size_t a, std::size_t b) {
    require_multivectors(p);
    const Space& m = *underlying_base(p.space());
    Poly t = partial(partial(p, "st_" + m.variable(b).name), "st_" + m.variable(a).name);
    return set_zero(t, antimomenta(*p.space()));
}

bool ClassicalKoszulReport::ok() const {
    for (const auto& c : checks)
        if (!c.residual.is_zero()) return false;
    return true;
}

ClassicalKoszulReport classical_koszul_check(const HigherPoissonStructure& p, const std::vector<Poly>& samples) {
    if (!p.quadratic()) throw Error(ErrorKind::Precondition, "classical Koszul bracket needs a quadratic P");
    const SpacePtr& s = p.multivectors();
    auto m = underlying_base(s);
    auto a = forms_chart(s);
    ClassicalKoszulReport rep;
    auto add = [&](std::string name, Poly r) { rep.checks.push_back({std::move(name), std::move(r)}); };
    for (std::size_t i = 0; i < m->size(); ++i)
        for (std::size_t j = 0; j < m->size(); ++j) {
            auto xi = Poly::variable(a, m->variable(i).name), xj = Poly::variable(a, m->variable(j).name);
            auto dxi = d_form(xi, a), dxj = d_form(xj, a);
            Poly pij = embed(tensor_component(p.value(), i, j), a);
            std::string tag = "(" + m->variable(i).name + "," + m->variable(j).name + ")";
            add("[x,x]" + tag, higher_koszul(p, {xi, xj}));
            add("[x,dx]+P" + tag, higher_koszul(p, {xi, dxj}) + pij);
            add("[dx,dx]-dP" + tag, higher_koszul(p, {dxi, dxj}) - d_form(pij, a));
        }
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = 0; j < samples.size(); ++j) {
            const Poly& f = samples[i];
            const Poly& g = samples[j];
            Rational sf = sign(f.parity() == Parity::Odd);
            Poly fg = embed(derived_poisson(p, {f, g}), a);
            std::string tag = "(s" + std::to_string(i) + ",s" + std::to_string(j) + ")";
            add("[f,g]" + tag, higher_koszul(p, {embed(f, a), embed(g, a)}));
            add("[f,dg]" + tag, higher_koszul(p, {embed(f, a), d_form(g, a)}) - fg * sf);
            add("[df,dg]" + tag, higher_koszul(p, {d_form(f, a), d_form(g, a)}) + d_form(fg, a) * sf);
        }
    return rep;
}

int display_epsilon(const std::vector<Parity>& par) {
    const int l = static_cast<int>(par.size());
    int e = l;
    for (int i = 0; i + 1 < l; ++i) e += (l - 1 - i) * bit(par[static_cast<std::size_t>(i)]);
    return e;
}

int observed_epsilon(const std::vector<Parity>& par) {
    const int l = static_cast<int>(par.size());
    return display_epsilon(par) - l + (l - 1) * (l - 2) / 2;
}

Poly lichnerowicz(const HigherPoissonStructure& p, const Poly& x) { return schouten(p.value(), x); }

namespace {

VectorField display_field(const HigherPoissonStructure& p) {
    if (!p.quadratic()) throw Error(ErrorKind::Precondition, "coordinate display needs a quadratic P");
    const SpacePtr& s = p.multivectors();
    const Space& m = *underlying_base(s);
    const std::size_t n = m.size();
    auto comp = [&](std::size_t a, std::size_t b) { return tensor_component(p.value(), a, b); };
    auto st = [&](std::size_t a) { return Poly::variable(s, "st_" + m.variable(a).name); };
    VectorField d(s, Parity::Odd);
    for (std::size_t a = 0; a < n; ++a) {
        Poly base_coeff(s), fiber_coeff(s);
        for (std::size_t b = 0; b < n; ++b) {
            base_coeff += comp(a, b) * st(b);
            for (std::size_t c = 0; c < n; ++c)
                fiber_coeff += partial(comp(b, c), m.variable(a).name) * st(c) * st(b) * Rational(1, 2);
        }
        d.set_coefficient(s->index(m.variable(a).name), base_coeff);
        d.set_coefficient(s->index("st_" + m.variable(a).name), fiber_coeff);
    }
    return d;
}

}  // namespace

VectorField lichnerowicz_display(const HigherPoissonStructure& p) { return display_field(p); }

VectorField lichnerowicz_field(const HigherPoissonStructure& p) {
    const SpacePtr& s = p.multivectors();
    VectorField d(s, Parity::Odd);
    for (std::size_t i = 0; i < s->size(); ++i) d.set_coefficient(i, lichnerowicz(p, Poly::variable(s, i)));
    return d;
}

Poly raise_indices(const HigherPoissonStructure& p, const Poly& omega) {
    const SpacePtr& s = p.multivectors();
    auto a = forms_chart(s);
    Poly w = embed(omega, a);
    std::vector<Poly> img;
    for (const auto& v : a->variables()) {
        if (v.role == Role::Differential)
            img.push_back(lichnerowicz(p, Poly::variable(s, v.origin)));
        else
            img.push_back(Poly::variable(s, v.name));
    }
    return pull(w, s, img);
}

}  // namespace superbracket
