#include "superbracket/quasitriangular.hpp"

namespace superbracket {

namespace {

bool only_parameters(const Poly& t) {
    return supported_on(t, variables_with_role(*t.space(), {Role::Parameter}));
}

Poly scalar(const ShiftDatum& d) { return d.t ? *d.t : Poly::constant(d.r.space(), Rational(1)); }

std::optional<Weight> swapped(std::optional<Weight> w) {
    if (w) std::swap(w->w1, w->w2);
    return w;
}

}  // namespace

ShiftDatum::ShiftDatum(MasterHamiltonian h_, Poly r_, std::optional<Poly> t_)
    : h(std::move(h_)), r(std::move(r_)), t(std::move(t_)) {
    if (h.kind() != MasterKind::OddMaster) throw Error(ErrorKind::Precondition, "shift needs an odd Hamiltonian");
    require_same_chart(h.value(), r);
    auto pc = r.parity_class();
    if (pc != ParityClass::Even && pc != ParityClass::Zero) throw Error(ErrorKind::Parity, "shift function r must be even");
    if (!supported_on(r, base_variables(*r.space(), Parity::Even)))
        throw Error(ErrorKind::Precondition, "shift function r must not depend on momenta");
    if (t) {
        require_same_chart(r, *t);
        auto tc = t->parity_class();
        if ((tc != ParityClass::Even && tc != ParityClass::Zero) || !only_parameters(*t))
            throw Error(ErrorKind::Precondition, "shift parameter must be an even scalar");
    }
}

std::vector<Poly> shift_images(const ShiftDatum& d) {
    const SpacePtr& s = d.r.space();
    Poly t = scalar(d);
    std::vector<Poly> img;
    for (std::size_t i = 0; i < s->size(); ++i) img.push_back(Poly::variable(s, i));
    for (const auto& p : s->pairs_of(Parity::Even)) img[p.momentum] += t * partial(d.r, p.coordinate);
    return img;
}

Poly shift_function(const ShiftDatum& d, const Poly& f) {
    require_same_chart(d.r, f);
    return pull(f, f.space(), shift_images(d));
}

Poly shift(const ShiftDatum& d) { return shift_function(d, d.h.value()); }

Poly master_equation_residual(const ShiftDatum& d) {
    return set_zero(shift(d), d.r.space()->momenta(Parity::Even));
}

bool momentum_quadratic(const Poly& h) {
    auto mom = h.space()->momenta(Parity::Even);
    for (const auto& [m, c] : h.terms()) {
        int deg = 0;
        for (auto i : mom) deg += m.exps[i];
        if (deg != 2) return false;
    }
    return true;
}

CoboundaryDecomposition coboundary_decompose(const ShiftDatum& d) {
    const Poly& h = d.h.value();
    if (!momentum_quadratic(h)) throw Error(ErrorKind::Precondition, "decomposition needs H quadratic in momenta");
    Poly t = scalar(d);
    CoboundaryDecomposition out{h, poisson(h, d.r) * t, higher_schouten(d.h, {d.r, d.r}) * t * t * Rational(1, 2)};
    return out;
}

Poly generalized_ybe_residual(const ShiftDatum& d) { return poisson(d.h.value(), master_equation_residual(d)); }

const char* to_string(ShiftClass c) {
    switch (c) {
        case ShiftClass::Triangular: return "triangular";
        case ShiftClass::QuasiTriangular: return "quasi-triangular";
        case ShiftClass::Curved: return "curved";
    }
    return "?";
}

ShiftClass classify(const ShiftDatum& d) {
    Poly res = master_equation_residual(d);
    if (res.is_zero()) return ShiftClass::Triangular;
    if (poisson(d.h.value(), res).is_zero()) return ShiftClass::QuasiTriangular;
    return ShiftClass::Curved;
}

SpacePtr dual_shifted_bundle(const SpacePtr& pi_e) {
    if (pi_e->provenance() != Provenance::VectorBundle || !pi_e->parent())
        throw Error(ErrorKind::ChartMismatch, "expected a vector bundle chart");
    std::vector<Parity> par;
    std::vector<std::string> names;
    for (const auto& v : pi_e->variables())
        if (v.role == Role::Fiber) {
            par.push_back(v.parity);
            names.push_back("pi_" + v.name);
        }
    return vector_bundle(pi_e->parent(), par, false, names);
}

QuasitriangularBialgebroid build_quasitriangular_bialgebroid(const VectorField& q_e, const Poly& r) {
    if (q_e.parity() != Parity::Odd) throw Error(ErrorKind::Parity, "Q_E must be odd");
    if (!commutator(q_e, q_e).is_zero()) throw Error(ErrorKind::Precondition, "Q_E is not homological");
    auto src = cotangent(q_e.space());
    Poly h = linear_hamiltonian(q_e, src);
    auto wh = weight_of(h);
    if (!h.is_zero() && !(wh && *wh == Weight{1, 2}))
        throw Error(ErrorKind::Precondition, "Q_E is not of weight one in the fiber grading");

    QuasitriangularBialgebroid out{mx_transform(src), Poly(src), Poly(src), Poly(src), Poly(src),
                                   Poly(src), Poly(src)};
    const SpacePtr& tgt = out.mx.target;
    out.h_e = out.mx.apply(h);
    out.r = embed(r, tgt);
    ShiftDatum datum(MasterHamiltonian(out.h_e, MasterKind::OddMaster), out.r);
    out.h_estar = poisson(out.h_e, out.r);
    out.shifted = shift(datum);
    out.master_residual = master_equation_residual(datum);
    out.compatibility = poisson(out.h_e, out.h_estar);
    out.kind = classify(datum);
    // the target chart carries swapped weights; report them as counted on T*(Pi E)
    out.weights = {swapped(weight_of(out.h_e)), swapped(weight_of(out.r)), swapped(weight_of(out.h_estar)),
                   swapped(weight_of(out.shifted))};
    return out;
}

}  // namespace superbracket
