#include "superbracket/conformance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "superbracket/format.hpp"
#include "superbracket/geometry.hpp"
#include "superbracket/homotopy.hpp"
#include "superbracket/koszul.hpp"
#include "superbracket/quasitriangular.hpp"

namespace superbracket::conformance {

namespace {

// ------------------------------------------------------------------ helpers

Rational sgn(int e) { return (e & 1) ? Rational(-1) : Rational(1); }
int bitp(const Poly& f) { return f.parity() == Parity::Odd ? 1 : 0; }
int bitv(const VectorField& x) { return x.parity() == Parity::Odd ? 1 : 0; }

struct Residuals {
    std::string instance;
    std::size_t terms = 0;

    void add(const Poly& r) { terms += r.size(); }
    void add(const VectorField& x) {
        for (const auto& c : x.coefficients()) terms += c.size();
    }
    void fail(std::size_t n = 1) { terms += n; }
    void note(const std::string& s) { instance += (instance.empty() ? "" : " | ") + s; }
    void note(const char* label, const Poly& f) { note(std::string(label) + " = " + to_text(f)); }
    void note(const char* label, const VectorField& x) { note(std::string(label) + " = " + to_text(x)); }
    Trial done() const { return {instance, terms}; }
};

// x1, x2, ... even and xi1, xi2, ... odd; about half of each.
SpacePtr mixed_base(unsigned n) {
    n = std::max(1u, n);
    std::vector<std::pair<std::string, Parity>> v;
    for (unsigned i = 0; i < (n + 1) / 2; ++i) v.emplace_back("x" + std::to_string(i + 1), Parity::Even);
    for (unsigned i = 0; i < n / 2; ++i) v.emplace_back("xi" + std::to_string(i + 1), Parity::Odd);
    return base_space(v);
}

// Same shape with odd coordinates named y1, y2, ... so fibers can be xi1, xi2, ...
SpacePtr bundle_base(unsigned n) {
    n = std::max(1u, n);
    std::vector<std::pair<std::string, Parity>> v;
    for (unsigned i = 0; i < (n + 1) / 2; ++i) v.emplace_back("x" + std::to_string(i + 1), Parity::Even);
    for (unsigned i = 0; i < n / 2; ++i) v.emplace_back("y" + std::to_string(i + 1), Parity::Odd);
    return base_space(v);
}

SpacePtr even_base(unsigned n) {
    std::vector<std::pair<std::string, Parity>> v;
    for (unsigned i = 0; i < std::max(1u, n); ++i) v.emplace_back("x" + std::to_string(i + 1), Parity::Even);
    return base_space(v);
}

Poly rnd(PolyGenerator& g, const SpacePtr& s, unsigned degree, std::optional<Parity> parity,
         std::vector<std::size_t> vars = {}, unsigned terms = 3) {
    PolyGenerator::Shape sh;
    sh.max_degree = degree;
    sh.max_terms = terms;
    sh.parity = parity;
    sh.vars = std::move(vars);
    return g.poly(s, sh);
}

Poly rnd(PolyGenerator& g, const SpacePtr& s, unsigned degree) { return rnd(g, s, degree, g.parity()); }

std::vector<std::size_t> base_of(const Space& s) {
    return variables_with_role(s, {Role::Base});
}

VectorField rnd_field(PolyGenerator& g, const SpacePtr& s, unsigned degree) {
    Parity p = g.parity();
    std::vector<Poly> c;
    for (const auto& v : s->variables()) c.push_back(g.coin() ? rnd(g, s, degree, p + v.parity, {}, 2) : Poly(s));
    return VectorField(s, p, c);
}

SpacePtr koszul_chart(Size z) { return anticotangent(mixed_base(std::max(3u, z.variables))); }

// Constant-coefficient quadratic bivector (always a Poisson structure).
Poly constant_bivector(PolyGenerator& g, const SpacePtr& s) {
    auto st = variables_with_role(*s, {Role::Antimomentum});
    Poly p(s);
    for (std::size_t i = 0; i < st.size(); ++i)
        for (std::size_t j = i; j < st.size(); ++j) {
            Poly q = Poly::variable(s, st[i]) * Poly::variable(s, st[j]);
            if (!q.is_zero() && q.parity() == Parity::Even && g.coin()) p += q * g.coefficient(3);
        }
    if (p.is_zero() && st.size() >= 2) p = Poly::variable(s, st[0]) * Poly::variable(s, st[1]) * g.coefficient(3);
    return p;
}

// f(x1, x2) st_x1 st_x2 with f even in the two even coordinates.
Poly rank_two_bivector(PolyGenerator& g, const SpacePtr& s, unsigned degree) {
    std::vector<std::size_t> xs{s->index("x1"), s->index("x2")};
    Poly f = rnd(g, s, degree, Parity::Even, xs, 2);
    if (f.is_zero()) f = Poly::constant(s, 1);
    return f * Poly::variable(s, "st_x1") * Poly::variable(s, "st_x2");
}

Poly valid_bivector(PolyGenerator& g, const SpacePtr& s, unsigned degree) {
    return g.coin() ? constant_bivector(g, s) : rank_two_bivector(g, s, degree);
}

// Base function embedded in chart s.
Poly base_fn(PolyGenerator& g, const SpacePtr& s, unsigned degree, std::optional<Parity> parity = std::nullopt) {
    return rnd(g, s, degree, parity ? parity : std::optional<Parity>(g.parity()), base_of(*s), 2);
}

// ------------------------------------------------------------------ graded

Trial graded_assoc(PolyGenerator& g, Size z) {
    auto s = mixed_base(z.variables);
    Poly a = rnd(g, s, z.degree, std::nullopt), b = rnd(g, s, z.degree, std::nullopt), c = rnd(g, s, z.degree, std::nullopt);
    Residuals r;
    r.note("a", a), r.note("b", b), r.note("c", c);
    r.add((a * b) * c - a * (b * c));
    return r.done();
}

Trial graded_unit(PolyGenerator& g, Size z) {
    auto s = mixed_base(z.variables);
    Poly a = rnd(g, s, z.degree, std::nullopt), one = Poly::constant(s, 1);
    Residuals r;
    r.note("a", a);
    r.add(one * a - a);
    r.add(a * one - a);
    return r.done();
}

Trial graded_comm(PolyGenerator& g, Size z) {
    auto s = mixed_base(z.variables);
    Poly a = rnd(g, s, z.degree), b = rnd(g, s, z.degree);
    Residuals r;
    r.note("a", a), r.note("b", b);
    r.add(a * b - b * a * sgn(bitp(a) * bitp(b)));
    return r.done();
}

Trial graded_odd_square(PolyGenerator& g, Size z) {
    auto s = mixed_base(z.variables);
    Poly a = rnd(g, s, z.degree, Parity::Odd);
    Residuals r;
    r.note("a", a);
    r.add(a * a);
    return r.done();
}

Trial graded_leibniz(PolyGenerator& g, Size z) {
    auto s = mixed_base(z.variables);
    Poly a = rnd(g, s, z.degree), b = rnd(g, s, z.degree);
    auto i = static_cast<std::size_t>(g.uniform(0, static_cast<long>(s->size()) - 1));
    int vi = s->variable(i).parity == Parity::Odd ? 1 : 0;
    Residuals r;
    r.note("a", a), r.note("b", b), r.note("d/d" + s->variable(i).name);
    r.add(partial(a * b, i) - partial(a, i) * b - a * partial(b, i) * sgn(vi * bitp(a)));
    return r.done();
}

// ------------------------------------------------------------------ even bracket

SpacePtr phase(Size z) { return cotangent(mixed_base(z.variables)); }

Trial poisson_antisym(PolyGenerator& g, Size z) {
    auto t = phase(z);
    Poly f = rnd(g, t, z.degree), h = rnd(g, t, z.degree);
    Residuals r;
    r.note("F", f), r.note("G", h);
    r.add(poisson(f, h) + poisson(h, f) * sgn(bitp(f) * bitp(h)));
    return r.done();
}

Trial poisson_jacobi(PolyGenerator& g, Size z) {
    auto t = phase(z);
    Poly f = rnd(g, t, z.degree), h = rnd(g, t, z.degree), k = rnd(g, t, z.degree);
    Residuals r;
    r.note("F", f), r.note("G", h), r.note("H", k);
    r.add(poisson(f, poisson(h, k)) - poisson(poisson(f, h), k) - poisson(h, poisson(f, k)) * sgn(bitp(f) * bitp(h)));
    return r.done();
}

Trial poisson_leibniz(PolyGenerator& g, Size z) {
    auto t = phase(z);
    Poly f = rnd(g, t, z.degree), h = rnd(g, t, z.degree), k = rnd(g, t, z.degree);
    Residuals r;
    r.note("F", f), r.note("G", h), r.note("H", k);
    r.add(poisson(f, h * k) - poisson(f, h) * k - h * poisson(f, k) * sgn(bitp(f) * bitp(h)));
    return r.done();
}

Trial poisson_initial(PolyGenerator& g, Size z) {
    auto m = mixed_base(z.variables);
    auto t = cotangent(m);
    Poly f = rnd(g, m, z.degree), h = rnd(g, m, z.degree);
    VectorField x = rnd_field(g, m, z.degree), y = rnd_field(g, m, z.degree);
    Poly xp = linear_hamiltonian(x, t), yp = linear_hamiltonian(y, t);
    Residuals r;
    r.note("f", f), r.note("g", h), r.note("X", x), r.note("Y", y);
    r.add(poisson(embed(f, t), embed(h, t)));
    r.add(poisson(xp, embed(f, t)) - embed(x(f), t));
    r.add(poisson(xp, yp) - linear_hamiltonian(commutator(x, y), t));
    return r.done();
}

Trial poisson_self(PolyGenerator& g, Size z) {
    auto t = phase(z);
    Poly f = rnd(g, t, z.degree, Parity::Odd);
    Poly rhs(t);
    for (const auto& p : t->pairs_of(Parity::Even)) rhs += partial(f, p.momentum) * partial(f, p.coordinate);
    Residuals r;
    r.note("F", f);
    r.add(poisson(f, f) - rhs * Rational(2));
    return r.done();
}

Trial poisson_canonical(PolyGenerator&, Size z) {
    auto t = phase(z);
    Residuals r;
    for (const auto& p : t->pairs_of(Parity::Even))
        for (const auto& q : t->pairs_of(Parity::Even)) {
            Poly v = poisson(Poly::variable(t, p.momentum), Poly::variable(t, q.coordinate));
            r.add(v - Poly::constant(t, p.coordinate == q.coordinate ? 1 : 0));
            r.add(poisson(Poly::variable(t, p.coordinate), Poly::variable(t, q.coordinate)));
            r.add(poisson(Poly::variable(t, p.momentum), Poly::variable(t, q.momentum)));
        }
    r.note("all coordinate pairs of " + std::to_string(t->size()) + " variables");
    return r.done();
}

// ------------------------------------------------------------------ Schouten

SpacePtr multivectors(Size z) { return anticotangent(mixed_base(z.variables)); }

Trial schouten_antisym(PolyGenerator& g, Size z) {
    auto s = multivectors(z);
    Poly p = rnd(g, s, z.degree), q = rnd(g, s, z.degree);
    Residuals r;
    r.note("P", p), r.note("Q", q);
    r.add(schouten(p, q) + schouten(q, p) * sgn((bitp(p) + 1) * (bitp(q) + 1)));
    return r.done();
}

Trial schouten_jacobi(PolyGenerator& g, Size z) {
    auto s = multivectors(z);
    Poly p = rnd(g, s, z.degree), q = rnd(g, s, z.degree), k = rnd(g, s, z.degree);
    Residuals r;
    r.note("P", p), r.note("Q", q), r.note("R", k);
    r.add(schouten(p, schouten(q, k)) - schouten(schouten(p, q), k) -
          schouten(q, schouten(p, k)) * sgn((bitp(p) + 1) * (bitp(q) + 1)));
    return r.done();
}

Trial schouten_leibniz(PolyGenerator& g, Size z) {
    auto s = multivectors(z);
    Poly p = rnd(g, s, z.degree), q = rnd(g, s, z.degree), k = rnd(g, s, z.degree);
    Residuals r;
    r.note("P", p), r.note("Q", q), r.note("R", k);
    r.add(schouten(p, q * k) - schouten(p, q) * k - q * schouten(p, k) * sgn((bitp(p) + 1) * bitp(q)));
    return r.done();
}

Trial schouten_symmetric(PolyGenerator& g, Size z) {
    auto s = multivectors(z);
    Poly p = rnd(g, s, z.degree), q = rnd(g, s, z.degree), k = rnd(g, s, z.degree);
    auto sy = [](const Poly& a, const Poly& b) { return schouten(a, b, OddConvention::Symmetric); };
    const int pp = bitp(p), pq = bitp(q);
    Residuals r;
    r.note("P", p), r.note("Q", q), r.note("R", k);
    // conversion between the two conventions, and the symmetric-form axioms
    r.add(schouten(p, q) - sy(p, q) * sgn(pp));
    r.add(sy(p, q) - sy(q, p) * sgn(pp * pq));
    r.add(sy(p, sy(q, k)) - sy(sy(p, q), k) * sgn(pp + 1) - sy(q, sy(p, k)) * sgn((pp + 1) * (pq + 1)));
    return r.done();
}

Trial schouten_canonical(PolyGenerator&, Size z) {
    auto s = multivectors(z);
    Residuals r;
    for (const auto& p : s->pairs_of(Parity::Odd))
        for (const auto& q : s->pairs_of(Parity::Odd)) {
            Poly v = schouten(Poly::variable(s, p.momentum), Poly::variable(s, q.coordinate), OddConvention::Symmetric);
            r.add(v - Poly::constant(s, p.coordinate == q.coordinate ? 1 : 0));
        }
    r.note("[[x*_a, x^b]] on " + std::to_string(s->size()) + " variables");
    return r.done();
}

// ------------------------------------------------------------------ Cartan

Trial cartan_formula(PolyGenerator& g, Size z) {
    auto m = mixed_base(z.variables);
    auto a = antitangent(m);
    VectorField x = rnd_field(g, m, z.degree), y = rnd_field(g, m, z.degree);
    auto ix = interior(x, a), iy = interior(y, a);
    VectorField rhs = commutator(commutator(de_rham(a), ix), iy);
    rhs *= sgn(bitv(x));
    Residuals r;
    r.note("X", x), r.note("Y", y);
    r.add(interior(commutator(x, y), a) - rhs);
    return r.done();
}

Trial cartan_interior(PolyGenerator& g, Size z) {
    auto m = mixed_base(z.variables);
    auto a = antitangent(m);
    VectorField x = rnd_field(g, m, z.degree), y = rnd_field(g, m, z.degree);
    Residuals r;
    r.note("X", x), r.note("Y", y);
    r.add(commutator(interior(x, a), interior(y, a)));
    return r.done();
}

Trial cartan_lie(PolyGenerator& g, Size z) {
    auto m = mixed_base(z.variables);
    auto a = antitangent(m);
    VectorField x = rnd_field(g, m, z.degree);
    auto d = de_rham(a);
    Residuals r;
    r.note("X", x);
    r.add(commutator(d, d));
    r.add(commutator(d, commutator(d, interior(x, a))));
    return r.done();
}

// ------------------------------------------------------------------ L-infinity

SpacePtr linear(PolyGenerator&, Size z) {
    std::vector<Parity> par;
    for (unsigned i = 0; i < std::max(2u, z.variables); ++i) par.push_back(i % 2 ? Parity::Even : Parity::Odd);
    return linear_chart(par);
}

Trial linfty_jacobi(PolyGenerator& g, Size z) {
    auto s = linear(g, z);
    auto q = homological_field(g, s, g.coin(), std::max(1u, z.degree));
    auto rep = verify_generalized_jacobi(extract_linfty(q, 4), 4);
    Residuals r;
    r.note("Q", q);
    for (auto n : rep.residual_terms) r.fail(n);
    return r.done();
}

Trial linfty_detects(PolyGenerator& g, Size z) {
    auto s = linear(g, z);
    Residuals r;
    for (int attempt = 0; attempt < 20; ++attempt) {
        auto q = homological_field(g, s, g.coin(), std::min(2u, std::max(1u, z.degree)));
        VectorField bump(s, Parity::Odd);
        auto i = static_cast<std::size_t>(g.uniform(0, static_cast<long>(s->size()) - 1));
        bump.set_coefficient(i, rnd(g, s, std::min(2u, z.degree), s->variable(i).parity + Parity::Odd, {}, 1));
        VectorField qp = q + bump;
        if (commutator(qp, qp).is_zero()) continue;
        r.note("Q", qp);
        if (verify_generalized_jacobi(extract_linfty(qp, 4), 4).ok()) r.fail();
        return r.done();
    }
    r.note("no perturbation with [Q,Q] != 0 found");
    return r.done();
}

Trial linfty_roundtrip(PolyGenerator& g, Size z) {
    auto s = linear(g, z);
    auto q = homological_field(g, s, g.coin(), std::max(1u, z.degree));
    unsigned arity = static_cast<unsigned>(std::max(0, extract_linfty(q, 0).field_degree()));
    auto l = extract_linfty(q, arity);
    Residuals r;
    r.note("Q", q);
    r.add(encode_linfty(l, s) - q);
    return r.done();
}

// Tangent algebroid: Q = xi^a d/dx^a on Pi TM.
struct TangentAlgebroid {
    SpacePtr base, bundle;
    VectorField q;
};

TangentAlgebroid tangent_algebroid(unsigned n) {
    auto m = bundle_base(n);
    std::vector<Parity> par;
    for (const auto& v : m->variables()) par.push_back(v.parity);
    auto b = vector_bundle(m, par, true);
    VectorField q(b, Parity::Odd);
    for (std::size_t i = 0; i < m->size(); ++i)
        q.set_coefficient(i, Poly::variable(b, m->size() + i));
    return {m, b, q};
}

Section rnd_section(PolyGenerator& g, const TangentAlgebroid& t, unsigned degree) {
    Section u{g.parity(), {}};
    for (const auto& v : t.base->variables()) u.components.push_back(rnd(g, t.base, degree, u.parity + v.parity, {}, 2));
    return u;
}

Trial algebroid_leibniz(PolyGenerator& g, Size z) {
    auto t = tangent_algebroid(z.variables);
    Section u = rnd_section(g, t, z.degree), v = rnd_section(g, t, z.degree);
    Poly f = rnd(g, t.base, z.degree);
    auto uv = algebroid_brackets(t.q, u, v, f);
    auto ufv = algebroid_brackets(t.q, u, scale(f, v), f);
    Section rhs1 = scale(uv.anchor, v), rhs2 = scale(f, uv.bracket);
    Rational s = sgn((u.parity == Parity::Odd) * bitp(f));
    Residuals r;
    r.note("f", f);
    for (std::size_t i = 0; i < ufv.bracket.components.size(); ++i)
        r.add(ufv.bracket.components[i] - rhs1.components[i] - rhs2.components[i] * s);
    return r.done();
}

Trial algebroid_anchor(PolyGenerator& g, Size z) {
    auto t = tangent_algebroid(z.variables);
    Section u = rnd_section(g, t, z.degree), v = rnd_section(g, t, z.degree);
    Poly f = rnd(g, t.base, z.degree);
    auto a = [&](const Section& w, const Poly& h) { return algebroid_brackets(t.q, w, w, h).anchor; };
    Section uv = algebroid_brackets(t.q, u, v, f).bracket;
    int pu = u.parity == Parity::Odd, pv = v.parity == Parity::Odd;
    Residuals r;
    r.note("f", f);
    r.add(a(uv, f) - a(u, a(v, f)) + a(v, a(u, f)) * sgn(pu * pv));
    return r.done();
}

// ------------------------------------------------------------------ Koszul side

Trial alpha_intertwining(PolyGenerator& g, Size z) {
    auto s = multivectors(z);
    Poly p = rnd(g, s, z.degree), q = rnd(g, s, z.degree);
    Residuals r;
    r.note("P", p), r.note("Q", q);
    r.add(alpha(schouten(p, q, OddConvention::Symmetric)) - poisson(alpha(p), alpha(q)) * sgn(bitp(p) + 1));
    return r.done();
}

Trial alpha_closed_form(PolyGenerator& g, Size z) {
    auto s = multivectors(z);
    Poly p = rnd(g, s, z.degree);
    Residuals r;
    r.note("P", p);
    r.add(alpha_explicit(p) - alpha(p));
    return r.done();
}

Trial alpha_display_even(PolyGenerator& g, Size z) {
    auto s = anticotangent(even_base(z.variables));
    Poly p = rnd(g, s, z.degree);
    Residuals r;
    r.note("P", p);
    r.add(alpha_display(p) - alpha(p));
    return r.done();
}

Trial alpha_display_mixed(PolyGenerator& g, Size z) {
    auto s = anticotangent(mixed_base(std::max(3u, z.variables)));
    Poly p = rnd(g, s, z.degree);
    Residuals r;
    r.note("P", p);
    r.add(alpha_display(p) - alpha(p));
    return r.done();
}

Trial koszul_classical(PolyGenerator& g, Size z) {
    auto s = koszul_chart(z);
    auto m = underlying_base(s);
    HigherPoissonStructure p(valid_bivector(g, s, z.degree));
    std::vector<Poly> samples{rnd(g, m, z.degree), rnd(g, m, z.degree)};
    auto rep = classical_koszul_check(p, samples);
    Residuals r;
    r.note("P", p.value());
    if (!p.valid()) r.fail();
    for (const auto& c : rep.checks) {
        if (!c.residual.is_zero()) r.note(c.name + " -> " + to_text(c.residual));
        r.add(c.residual);
    }
    return r.done();
}

// [f1, df2, ..., dfl]_P and [df1, ..., dfl]_P against {f1, ..., fl}_P.
Trial koszul_epsilon(PolyGenerator& g, Size z, int (*eps)(const std::vector<Parity>&)) {
    auto s = koszul_chart(z);
    auto m = underlying_base(s);
    auto a = forms_chart(s);
    HigherPoissonStructure p(rnd(g, s, z.degree, Parity::Even));
    Residuals r;
    r.note("P", p.value());
    for (int l = 1; l <= 4; ++l) {
        std::vector<Poly> fs, mixed, exact;
        std::vector<Parity> par;
        for (int i = 0; i < l; ++i) {
            fs.push_back(rnd(g, m, 2, g.parity(), {}, 2));
            par.push_back(fs.back().parity());
            mixed.push_back(i == 0 ? embed(fs.back(), a) : d_form(fs.back(), a));
            exact.push_back(d_form(fs.back(), a));
        }
        Poly h = embed(derived_poisson(p, fs), a);
        Rational e = sgn(eps(par));
        Poly r1 = higher_koszul(p, mixed) - h * e;
        Poly r2 = higher_koszul(p, exact) + d_form(h, a) * e;
        if (!r1.is_zero() || !r2.is_zero()) r.note("l=" + std::to_string(l) + " fails");
        r.add(r1);
        r.add(r2);
        std::vector<Poly> plain;
        for (const auto& f : fs) plain.push_back(embed(f, a));
        if (l >= 2) r.add(higher_koszul(p, plain));
    }
    return r.done();
}

Trial koszul_epsilon_observed(PolyGenerator& g, Size z) { return koszul_epsilon(g, z, observed_epsilon); }
Trial koszul_epsilon_display(PolyGenerator& g, Size z) { return koszul_epsilon(g, z, display_epsilon); }

Trial lichnerowicz_square(PolyGenerator& g, Size z) {
    auto s = koszul_chart(z);
    HigherPoissonStructure p(valid_bivector(g, s, z.degree));
    Poly x = rnd(g, s, z.degree);
    Residuals r;
    r.note("P", p.value()), r.note("X", x);
    if (!p.valid()) r.fail();
    r.add(lichnerowicz(p, lichnerowicz(p, x)));
    return r.done();
}

Trial lichnerowicz_field_route(PolyGenerator& g, Size z) {
    auto s = koszul_chart(z);
    HigherPoissonStructure p(valid_bivector(g, s, z.degree));
    Poly x = rnd(g, s, z.degree);
    Residuals r;
    r.note("P", p.value()), r.note("X", x);
    r.add(lichnerowicz_field(p)(x) - lichnerowicz(p, x));
    return r.done();
}

Trial lichnerowicz_display_route(PolyGenerator& g, Size z) {
    auto s = koszul_chart(z);
    HigherPoissonStructure p(valid_bivector(g, s, z.degree));
    Poly x = rnd(g, s, z.degree);
    Residuals r;
    r.note("P", p.value()), r.note("X", x);
    r.add(lichnerowicz_display(p)(x) - lichnerowicz(p, x));
    return r.done();
}

Trial raising_diagram(PolyGenerator& g, Size z) {
    auto s = koszul_chart(z);
    auto a = forms_chart(s);
    HigherPoissonStructure p(valid_bivector(g, s, z.degree));
    Poly w = rnd(g, a, z.degree);
    Residuals r;
    r.note("P", p.value()), r.note("w", w);
    r.add(raise_indices(p, d_form(w, a)) - lichnerowicz(p, raise_indices(p, w)));
    return r.done();
}

Trial raising_bracket(PolyGenerator& g, Size z, int sign) {
    auto s = koszul_chart(z);
    auto a = forms_chart(s);
    HigherPoissonStructure p(valid_bivector(g, s, z.degree));
    Poly w = rnd(g, a, z.degree), t = rnd(g, a, z.degree);
    Residuals r;
    r.note("P", p.value()), r.note("w", w), r.note("t", t);
    Poly rhs = schouten(raise_indices(p, w), raise_indices(p, t), OddConvention::Symmetric);
    r.add(raise_indices(p, higher_koszul(p, {w, t})) - rhs * Rational(sign));
    return r.done();
}

Trial raising_bracket_observed(PolyGenerator& g, Size z) { return raising_bracket(g, z, -1); }
Trial raising_bracket_display(PolyGenerator& g, Size z) { return raising_bracket(g, z, 1); }

// ------------------------------------------------------------------ shift

ShiftDatum datum(const Poly& h, const Poly& r, std::optional<Poly> t = std::nullopt) {
    return ShiftDatum(MasterHamiltonian(h, MasterKind::OddMaster), r, std::move(t));
}

Trial shift_preservation(PolyGenerator& g, Size z) {
    auto t = phase(z);
    Poly r0 = base_fn(g, t, z.degree, Parity::Even);
    Poly f = rnd(g, t, z.degree), h = rnd(g, t, z.degree);
    auto d = datum(Poly(t), r0);
    Residuals r;
    r.note("r", r0), r.note("F", f), r.note("G", h);
    r.add(poisson(shift_function(d, f), shift_function(d, h)) - shift_function(d, poisson(f, h)));
    return r.done();
}

// Odd Hamiltonians with (H,H) = 0 from three families.
Poly master_fixture(PolyGenerator& g, Size z, int family, Poly& r0) {
    switch (family) {
        case 0: {  // homological vector field as a linear Hamiltonian
            auto s = linear(g, z);
            auto q = homological_field(g, s, g.coin(), std::max(1u, z.degree));
            auto t = cotangent(s);
            r0 = base_fn(g, t, z.degree, Parity::Even);
            return linear_hamiltonian(q, t);
        }
        case 1: {  // D on T*(Pi T*M) shifted by a Poisson bivector: D + (D,P) + 1/2 [[P,P]]
            auto s = koszul_chart(z);
            auto lift = schouten_lift(s);
            r0 = embed(valid_bivector(g, s, z.degree), lift.phase);
            return lift.master;
        }
        default: {  // constant-coefficient quadratic H
            auto t = phase(z);
            auto mom = t->momenta(Parity::Even);
            Poly h(t);
            for (std::size_t i = 0; i < mom.size(); ++i)
                for (std::size_t j = i; j < mom.size(); ++j) {
                    Poly q = Poly::variable(t, mom[i]) * Poly::variable(t, mom[j]);
                    if (!q.is_zero() && q.parity() == Parity::Odd && g.coin()) h += q * g.coefficient(3);
                }
            r0 = base_fn(g, t, z.degree, Parity::Even);
            return h;
        }
    }
}

Trial shift_master(PolyGenerator& g, Size z) {
    Residuals r;
    for (int family = 0; family < 3; ++family) {
        Poly r0(mixed_base(1));
        Poly h = master_fixture(g, z, family, r0);
        auto d = datum(h, r0);
        r.note("H", h), r.note("r", r0);
        if (!d.h.is_master()) r.fail();  // fixture broken
        Poly h2 = shift(d);
        r.add(poisson(h2, h2));
    }
    return r.done();
}

Trial shift_zero_section(PolyGenerator& g, Size z) {
    auto m = mixed_base(z.variables);
    auto t = cotangent(m);
    Poly h = rnd(g, t, z.degree, Parity::Odd);
    Poly r0 = base_fn(g, t, z.degree, Parity::Even);
    auto d = datum(h, r0);
    // H(x, dr/dx) by direct substitution
    std::vector<Poly> img;
    for (std::size_t i = 0; i < t->size(); ++i) img.push_back(Poly::variable(t, i));
    for (const auto& p : t->pairs_of(Parity::Even)) img[p.momentum] = partial(r0, p.coordinate);
    Residuals r;
    r.note("H", h), r.note("r", r0);
    Poly res = master_equation_residual(d);
    r.add(res - pull(h, t, img));
    r.add(res - set_zero(shift(d), t->momenta(Parity::Even)));
    // linear H = Q.p: the residual is Q(r)
    VectorField q = rnd_field(g, m, z.degree);
    if (q.parity() == Parity::Odd) {
        auto dq = datum(linear_hamiltonian(q, t), r0);
        r.add(master_equation_residual(dq) - q.embedded(t)(r0));
    }
    return r.done();
}

Poly quadratic_hamiltonian(PolyGenerator& g, const SpacePtr& t, unsigned degree) {
    auto mom = t->momenta(Parity::Even);
    auto base = base_variables(*t, Parity::Even);
    Poly h(t);
    for (int k = 0; k < 3; ++k) {
        Poly q = Poly::variable(t, mom[static_cast<std::size_t>(g.uniform(0, static_cast<long>(mom.size()) - 1))]) *
                 Poly::variable(t, mom[static_cast<std::size_t>(g.uniform(0, static_cast<long>(mom.size()) - 1))]);
        if (q.is_zero()) continue;
        h += rnd(g, t, degree, q.parity() + Parity::Odd, base, 1) * q;
    }
    return h;
}

Trial shift_decomposition(PolyGenerator& g, Size z) {
    auto t = phase(z);
    Poly h = quadratic_hamiltonian(g, t, z.degree);
    Poly r0 = base_fn(g, t, z.degree, Parity::Even);
    auto d = datum(h, r0);
    auto parts = coboundary_decompose(d);
    Residuals r;
    r.note("H", h), r.note("r", r0);
    r.add(parts.sum() - shift(d));
    r.add(master_equation_residual(d) - parts.curvature);
    r.add(generalized_ybe_residual(d) - poisson(h, parts.curvature));
    return r.done();
}

Trial shift_pencil(PolyGenerator& g, Size z) {
    auto t = cotangent(with_parameter(with_parameter(mixed_base(z.variables), "t"), "s"));
    Poly h = rnd(g, t, z.degree, Parity::Odd, variables_with_role(*t, {Role::Base, Role::Momentum}));
    auto coords = variables_with_role(*t, {Role::Base});
    Poly r0 = rnd(g, t, z.degree, Parity::Even, coords, 3);
    Poly pt = Poly::variable(t, "t"), ps = Poly::variable(t, "s");
    auto d1 = datum(h, r0, pt);
    auto d2 = datum(shift(d1), r0, ps);
    Residuals r;
    r.note("H", h), r.note("r", r0);
    r.add(shift(d2) - shift(datum(h, r0, pt + ps)));
    r.add(shift(datum(h, Poly(t))) - h);
    return r.done();
}

// sl2 over a point: [h,e] = 2e, [h,f] = -2f, [e,f] = h.
VectorField sl2_field() {
    auto b = vector_bundle(base_space({}), {Parity::Even, Parity::Even, Parity::Even}, true, {"h", "e", "f"});
    auto v = [&](const char* n) { return Poly::variable(b, n); };
    VectorField q(b, Parity::Odd);
    q.set_coefficient(b->index("e"), v("h") * v("e") * Rational(-2));
    q.set_coefficient(b->index("f"), v("h") * v("f") * Rational(2));
    q.set_coefficient(b->index("h"), v("e") * v("f") * Rational(-1));
    return q;
}

Trial bialgebroid_weights(PolyGenerator& g, Size z) {
    VectorField q = g.coin() ? sl2_field() : tangent_algebroid(z.variables).q;
    auto dual = dual_shifted_bundle(q.space());
    auto fib = variables_with_role(*dual, {Role::Fiber});
    // quadratic in the dual fiber coordinates, coefficients on the base
    Poly r0(dual);
    for (std::size_t i = 0; i < fib.size(); ++i)
        for (std::size_t j = i; j < fib.size(); ++j) {
            Poly m = Poly::variable(dual, fib[i]) * Poly::variable(dual, fib[j]);
            if (m.is_zero() || !g.coin()) continue;
            r0 += m * rnd(g, dual, std::min(1u, z.degree), m.parity(), base_of(*dual), 1);
        }
    auto b = build_quasitriangular_bialgebroid(q, r0);
    Residuals r;
    r.note("Q_E", q), r.note("r", r0);
    auto expect = [&](const char* what, const Poly& f, const std::optional<Weight>& w, Weight want) {
        if (f.is_zero()) return;
        if (!w || !(*w == want)) {
            r.note(std::string(what) + " weight " + (w ? to_text(*w) : std::string("inhomogeneous")));
            r.fail();
        }
    };
    expect("H_E", b.h_e, b.weights.h_e, {1, 2});
    expect("r", b.r, b.weights.r, {2, 0});
    expect("(H_E,r)", b.h_estar, b.weights.h_estar, {2, 1});
    r.add(b.compatibility);
    return r.done();
}

Trial bialgebroid_sl2(PolyGenerator&, Size) {
    VectorField q = sl2_field();
    auto dual = dual_shifted_bundle(q.space());
    auto w = [&](const char* n) { return Poly::variable(dual, n); };
    Residuals r;
    auto expect = [&](const Poly& r0, ShiftClass want) {
        auto b = build_quasitriangular_bialgebroid(q, r0);
        if (b.kind != want) {
            r.note(to_text(r0) + " is " + to_string(b.kind));
            r.fail();
        }
    };
    expect(w("pi_h") * w("pi_e"), ShiftClass::Triangular);
    expect(w("pi_h") * w("pi_f"), ShiftClass::Triangular);
    expect(w("pi_e") * w("pi_f"), ShiftClass::QuasiTriangular);
    return r.done();
}

// ------------------------------------------------------------------ Mackenzie-Xu

Trial mx_symplectic(PolyGenerator& g, Size z, bool odd) {
    auto m = bundle_base(z.variables);
    std::vector<Parity> fib{Parity::Even, Parity::Odd};
    auto e = vector_bundle(m, fib, !odd);
    auto src = odd ? anticotangent(e) : cotangent(e);
    auto mx = mx_transform(src);
    auto br = [odd](const Poly& a, const Poly& b) { return odd ? schouten(a, b) : poisson(a, b); };
    Poly f = rnd(g, src, z.degree), h = rnd(g, src, z.degree);
    Residuals r;
    r.note("F", f), r.note("G", h);
    r.add(br(mx.apply(f), mx.apply(h)) - mx.apply(br(f, h)));
    return r.done();
}

Trial mx_even(PolyGenerator& g, Size z) { return mx_symplectic(g, z, false); }
Trial mx_odd(PolyGenerator& g, Size z) { return mx_symplectic(g, z, true); }

Trial mx_weights(PolyGenerator& g, Size z) {
    auto e = vector_bundle(bundle_base(z.variables), {Parity::Even, Parity::Odd}, true);
    auto src = cotangent(e);
    auto mx = mx_transform(src);
    Poly f = rnd(g, src, z.degree);
    Residuals r;
    r.note("F", f);
    for (const auto& [mono, c] : f.terms()) {
        Weight w = weight_of(mono, *src);
        auto w2 = weight_of(mx.apply(Poly::monomial(src, mono, c)));
        if (!w2 || w2->w1 != w.w2 || w2->w2 != w.w1) r.fail();
    }
    return r.done();
}

// ------------------------------------------------------------------ registry

std::vector<IdentityCase> build() {
    std::vector<IdentityCase> v;
    auto add = [&](std::string id, std::string identity, std::vector<std::string> tags, std::string fixture,
                   unsigned samples, Size size, Trial (*fn)(PolyGenerator&, Size), bool known = false) {
        IdentityCase c;
        c.id = std::move(id);
        c.identity = std::move(identity);
        c.tags = std::move(tags);
        c.fixture = std::move(fixture);
        c.samples = samples;
        c.size = size;
        c.known_discrepancy = known;
        c.trial = fn;
        v.push_back(std::move(c));
    };
    const std::string mixed = "base x1.., xi1..";
    add("graded.associativity", "(ab)c = a(bc)", {"graded"}, mixed + " 2|2", 50, {4, 4}, graded_assoc);
    add("graded.unit", "1a = a1 = a", {"graded"}, mixed + " 2|2", 50, {4, 4}, graded_unit);
    add("graded.commutativity", "ab = (-1)^{ab} ba", {"graded"}, mixed + " 2|2", 50, {4, 4}, graded_comm);
    add("graded.odd-square", "a odd => a^2 = 0", {"graded"}, mixed + " 2|2", 50, {4, 4}, graded_odd_square);
    add("graded.leibniz", "d_i(ab) = (d_i a) b + (-1)^{i a} a d_i b  (left derivative)", {"graded", "derivative"},
        mixed + " 2|2", 50, {4, 4}, graded_leibniz);

    add("poisson.antisymmetry", "(F,G) = -(-1)^{FG} (G,F)", {"poisson"}, "T*M, M " + mixed, 30, {3, 3}, poisson_antisym);
    add("poisson.jacobi", "(F,(G,H)) = ((F,G),H) + (-1)^{FG} (G,(F,H))", {"poisson"}, "T*M", 20, {3, 3}, poisson_jacobi);
    add("poisson.leibniz", "(F,GH) = (F,G)H + (-1)^{FG} G(F,H)", {"poisson"}, "T*M", 30, {3, 3}, poisson_leibniz);
    add("poisson.initial-conditions", "(f,g) = 0, (X.p, f) = X f, (X.p, Y.p) = [X,Y].p", {"poisson"}, "T*M", 30, {3, 3},
        poisson_initial);
    add("poisson.self-bracket", "F odd => (F,F) = 2 dF/dp_a dF/dx^a", {"poisson"}, "T*M", 30, {3, 3}, poisson_self);
    add("poisson.canonical", "(p_a, x^b) = delta_a^b, (x,x) = (p,p) = 0", {"poisson"}, "T*M", 1, {0, 3},
        poisson_canonical);

    add("schouten.antisymmetry", "[[P,Q]] = -(-1)^{(P+1)(Q+1)} [[Q,P]]", {"schouten"}, "Pi T*M", 30, {3, 3},
        schouten_antisym);
    add("schouten.jacobi", "[[P,[[Q,R]]]] = [[[[P,Q]],R]] + (-1)^{(P+1)(Q+1)} [[Q,[[P,R]]]]", {"schouten"}, "Pi T*M", 20,
        {3, 3}, schouten_jacobi);
    add("schouten.leibniz", "[[P,QR]] = [[P,Q]]R + (-1)^{(P+1)Q} Q[[P,R]]", {"schouten"}, "Pi T*M", 30, {3, 3},
        schouten_leibniz);
    add("schouten.symmetric-form", "((D,P),Q) = (-1)^P [[P,Q]], symmetric under (-1)^{PQ}, with its Jacobi identity",
        {"schouten"}, "Pi T*M", 20, {3, 3}, schouten_symmetric);
    add("schouten.canonical", "((D,x*_a),x^b) = delta_a^b", {"schouten", "master-sign"}, "Pi T*M", 1, {0, 3},
        schouten_canonical);

    add("cartan.formula", "i_{[X,Y]} = (-1)^X [[d,i_X],i_Y]", {"cartan"}, "Pi TM", 30, {2, 3}, cartan_formula);
    add("cartan.interior-commute", "[i_X,i_Y] = 0", {"cartan"}, "Pi TM", 30, {2, 3}, cartan_interior);
    add("cartan.d-square", "[d,d] = 0, [d,L_X] = 0", {"cartan"}, "Pi TM", 20, {2, 3}, cartan_lie);

    add("linfty.jacobi", "Q^2 = 0 => generalized Jacobi identities up to arity 4", {"homotopy", "linfty"},
        "linear chart, conjugated linear Q", 8, {3, 3}, linfty_jacobi);
    add("linfty.detects", "Q^2 != 0 => some generalized Jacobi residual is nonzero", {"homotopy", "linfty"},
        "linear chart, perturbed Q", 8, {2, 3}, linfty_detects);
    add("linfty.roundtrip", "encode(extract(Q)) = Q", {"homotopy", "linfty"}, "linear chart", 8, {3, 3},
        linfty_roundtrip);
    add("algebroid.leibniz", "[u, f v] = (a(u) f) v + (-1)^{uf} f [u,v]", {"homotopy", "algebroid"}, "Pi TM", 20,
        {2, 3}, algebroid_leibniz);
    add("algebroid.anchor", "a([u,v]) = [a(u), a(v)]", {"homotopy", "algebroid"}, "Pi TM", 20, {2, 3}, algebroid_anchor);

    add("alpha.intertwining", "alpha(((D,P),Q)) = (-1)^{P+1} (alpha P, alpha Q)", {"koszul", "alpha"}, "Pi T*M", 20,
        {3, 3}, alpha_intertwining);
    add("alpha.closed-form",
        "alpha(P) = sum (-1)^{aP} dP/dx*_a(x, s(pi)) p_a + dx^a dP/dx^a(x, s(pi)), s(pi)_a = (-1)^a pi_a",
        {"koszul", "alpha"}, "Pi T*M", 20, {3, 3}, alpha_closed_form);
    add("alpha.display-even-base", "alpha(P) = (-1)^a dP/dx*_a(x,pi) p_a + dx^a dP/dx^a(x,pi), even base",
        {"koszul", "alpha"}, "Pi T*M, M even", 20, {3, 3}, alpha_display_even);
    add("alpha.display-odd-base", "alpha(P) = (-1)^a dP/dx*_a(x,pi) p_a + dx^a dP/dx^a(x,pi), odd base coordinates",
        {"koszul", "alpha", "discrepancy"}, "Pi T*M, M 2|1", 20, {3, 3}, alpha_display_mixed, true);
    add("koszul.classical",
        "[x^a,x^b] = 0, [x^a,dx^b] = -P^{ab}, [dx^a,dx^b] = dP^{ab}; [f,g] = 0, [f,dg] = (-1)^f {f,g}, "
        "[df,dg] = -(-1)^f d{f,g}",
        {"koszul", "classical"}, "Pi T*M, M 2|1, valid bivectors", 6, {2, 3}, koszul_classical);
    add("koszul.higher",
        "[f_1,...,f_l] = 0, [f_1,df_2,...,df_l] = (-1)^e {f_1,...,f_l}, [df_1,...,df_l] = -(-1)^e d{f_1,...,f_l}, "
        "e = (l-1)f_1 + ... + f_{l-1} + (l-1)(l-2)/2, l <= 4",
        {"koszul", "higher"}, "Pi T*M, M 2|1", 6, {2, 3}, koszul_epsilon_observed);
    add("koszul.higher-display", "same with e = (l-1)f_1 + ... + f_{l-1} + l", {"koszul", "higher", "discrepancy"},
        "Pi T*M, M 2|1", 6, {2, 3}, koszul_epsilon_display, true);
    add("lichnerowicz.square", "[[P,P]] = 0 => d_P^2 = 0", {"koszul", "lichnerowicz"}, "Pi T*M, valid bivectors", 20,
        {3, 3}, lichnerowicz_square);
    add("lichnerowicz.field", "d_P = [[P, x^i]] d/dx^i (as a vector field)", {"koszul", "lichnerowicz"}, "Pi T*M", 20,
        {3, 3}, lichnerowicz_field_route);
    add("lichnerowicz.display", "d_P = P^{ab} x*_b d/dx^a + 1/2 d_a P^{bc} x*_c x*_b d/dx*_a",
        {"koszul", "lichnerowicz", "discrepancy"}, "Pi T*M, valid bivectors", 20, {3, 3}, lichnerowicz_display_route,
        true);
    add("raising.diagram", "phi*_P o d = d_P o phi*_P", {"koszul", "raising"}, "Pi TM -> Pi T*M", 20, {2, 3},
        raising_diagram);
    add("raising.bracket", "phi*_P [w,t]_P = -((D, phi* w), phi* t)", {"koszul", "raising"}, "Pi TM -> Pi T*M", 20,
        {2, 3}, raising_bracket_observed);
    add("raising.bracket-display", "phi*_P [w,t]_P = ((D, phi* w), phi* t)", {"koszul", "raising", "discrepancy"},
        "Pi TM -> Pi T*M", 20, {2, 3}, raising_bracket_display, true);

    add("shift.preservation", "(F',G') = (F,G)'  for F' = F(x, p + dr/dx)", {"shift"}, "T*M", 30, {3, 3},
        shift_preservation);
    add("shift.master", "(H,H) = 0 => (H',H') = 0", {"shift"}, "linear Q.p; D shifted by a Poisson P; constant quadratic H", 10,
        {2, 3}, shift_master);
    add("shift.zero-section", "H'|_{p=0} = H(x, dr/dx); for H = Q.p it is Q(r)", {"shift"}, "T*M", 30, {3, 3},
        shift_zero_section);
    add("shift.decomposition", "H' = H + (H,r) + 1/2 {r,r}_H for H quadratic in p", {"shift"}, "T*M", 30, {2, 3},
        shift_decomposition);
    add("shift.pencil", "shift by t then by s = shift by t + s; r = 0 is the identity", {"shift"}, "T*M with t, s", 20,
        {3, 3}, shift_pencil);
    add("bialgebroid.weights", "w(H_E) = (1,2), w(r) = (2,0), w((H_E,r)) = (2,1); (H_E,(H_E,r)) = 0",
        {"shift", "bialgebroid", "mx"}, "Pi TM, sl2", 10, {1, 3}, bialgebroid_weights);
    add("bialgebroid.sl2", "h^e, h^f triangular; e^f quasi-triangular", {"shift", "bialgebroid"}, "sl2", 1, {0, 0},
        bialgebroid_sl2);

    add("mx.even", "Mackenzie-Xu relabeling preserves the even canonical bracket", {"mx"}, "T*(Pi E)", 30, {3, 2},
        mx_even);
    add("mx.odd", "Mackenzie-Xu relabeling preserves the odd canonical bracket", {"mx"}, "Pi T*(E)", 30, {3, 2}, mx_odd);
    add("mx.weights", "Mackenzie-Xu relabeling swaps (w1,w2)", {"mx"}, "T*(Pi E)", 20, {3, 2}, mx_weights);

    // fixtures that need a minimum number of coordinates
    for (auto& c : v) {
        auto starts = [&](const char* p) { return c.id.rfind(p, 0) == 0; };
        if (starts("koszul.") || starts("lichnerowicz.") || starts("raising.") || c.id == "alpha.display-odd-base")
            c.min_size.variables = 3;
        else if (starts("linfty."))
            c.min_size.variables = 2;
        if (c.id == "shift.master" || c.id == "linfty.jacobi" || c.id == "linfty.roundtrip") c.min_size.degree = 1;
    }
    return v;
}

std::uint64_t fnv(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

PolyGenerator sample_generator(const IdentityCase& c, std::uint64_t seed, unsigned j) {
    return PolyGenerator(fnv(c.id) ^ (seed * 0x9E3779B97F4A7C15ull) ^ (static_cast<std::uint64_t>(j) << 32));
}

Trial attempt(const IdentityCase& c, std::uint64_t seed, unsigned j, Size z) {
    auto g = sample_generator(c, seed, j);
    try {
        return c.trial(g, z);
    } catch (const std::exception& e) {
        return {std::string("exception: ") + e.what(), 1};
    }
}

// Smallest (degree, then variables) size at which some sample fails.
void shrink(const IdentityCase& c, std::uint64_t seed, unsigned samples, CaseResult& out) {
    auto first_failure = [&](Size z) -> std::optional<Trial> {
        for (unsigned j = 0; j < samples; ++j) {
            Trial t = attempt(c, seed, j, z);
            if (t.violations) return t;
        }
        return std::nullopt;
    };
    Size best = c.size;
    for (unsigned d = c.min_size.degree; d < c.size.degree; ++d)
        if (auto t = first_failure({d, c.size.variables})) {
            best.degree = d;
            break;
        }
    for (unsigned n = c.min_size.variables; n < c.size.variables; ++n)
        if (auto t = first_failure({best.degree, n})) {
            best.variables = n;
            break;
        }
    if (auto t = first_failure(best)) {
        out.counterexample = *t;
        out.counterexample_size = best;
    }
}

}  // namespace

const std::vector<IdentityCase>& registry() {
    static const std::vector<IdentityCase> cases = build();
    return cases;
}

const IdentityCase& find_case(const std::string& id) {
    for (const auto& c : registry())
        if (c.id == id) return c;
    throw Error(ErrorKind::Precondition, "no conformance case '" + id + "'");
}

CaseResult run_case(const IdentityCase& c, std::uint64_t seed, std::optional<unsigned> samples) {
    auto t0 = std::chrono::steady_clock::now();
    CaseResult r;
    r.id = c.id;
    r.known_discrepancy = c.known_discrepancy;
    r.samples = samples.value_or(c.samples);
    for (unsigned j = 0; j < r.samples; ++j) {
        Trial t = attempt(c, seed, j, c.size);
        if (t.violations) {
            ++r.failing_samples;
            r.residual_terms += t.violations;
            if (!r.counterexample) r.counterexample = t, r.counterexample_size = c.size;
        }
    }
    r.passed = r.failing_samples == 0;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::size_t SuiteReport::passed() const {
    return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](const CaseResult& r) { return r.passed; }));
}

std::size_t SuiteReport::failed() const { return failed_ids().size(); }

std::vector<std::string> SuiteReport::failed_ids() const {
    std::vector<std::string> out;
    for (const auto& r : results)
        if (!r.passed && !r.known_discrepancy) out.push_back(r.id);
    return out;
}

SuiteReport run_suite(const SuiteOptions& opt) {
    std::vector<const IdentityCase*> chosen;
    for (const auto& c : registry()) {
        bool take = opt.filter.empty() || opt.filter.count(c.id);
        for (const auto& t : c.tags) take = take || opt.filter.count(t);
        if (take) chosen.push_back(&c);
    }
    SuiteReport rep;
    rep.seed = opt.seed;
    rep.results.resize(chosen.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        ScopedConventions guard(opt.conventions);
        for (std::size_t i; (i = next++) < chosen.size();) {
            const IdentityCase& c = *chosen[i];
            CaseResult r = run_case(c, opt.seed);
            if (!r.passed && opt.shrink) shrink(c, opt.seed, r.samples, r);
            rep.results[i] = std::move(r);
        }
    };
    unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(chosen.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rep;
}

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

}  // namespace

std::string to_json(const SuiteReport& r, bool with_timing) {
    std::ostringstream o;
    o << "{\n  \"schema\": 1,\n  \"seed\": " << r.seed << ",\n  \"passed\": " << r.passed() << ",\n  \"failed\": "
      << r.failed() << ",\n  \"cases\": [";
    for (std::size_t i = 0; i < r.results.size(); ++i) {
        const auto& c = r.results[i];
        const auto& def = find_case(c.id);
        o << (i ? ",\n" : "\n") << "    {\"id\": " << quote(c.id) << ", \"identity\": " << quote(def.identity)
          << ", \"passed\": " << (c.passed ? "true" : "false")
          << ", \"known_discrepancy\": " << (c.known_discrepancy ? "true" : "false") << ", \"samples\": " << c.samples
          << ", \"failing_samples\": " << c.failing_samples << ", \"residual_terms\": " << c.residual_terms;
        if (c.counterexample) {
            o << ", \"counterexample\": {\"degree\": " << c.counterexample_size->degree
              << ", \"variables\": " << c.counterexample_size->variables
              << ", \"instance\": " << quote(c.counterexample->instance)
              << ", \"residual_terms\": " << c.counterexample->violations << "}";
        }
        if (with_timing) o << ", \"seconds\": " << c.seconds;
        o << "}";
    }
    o << "\n  ]\n}\n";
    return o.str();
}

std::string manifest() {
    std::ostringstream o;
    o << "# id | tags | identity\n";
    for (const auto& c : registry()) {
        o << c.id << " | ";
        for (std::size_t i = 0; i < c.tags.size(); ++i) o << (i ? "," : "") << c.tags[i];
        o << " | " << c.identity << (c.known_discrepancy ? "  [known discrepancy]" : "") << "\n";
    }
    return o.str();
}

std::vector<Mutation> mutations() {
    std::vector<Mutation> out;
    Conventions c;
    c.master_sign = -1;
    out.push_back({"master-sign", c});
    c = {};
    c.mx_sign = -1;
    out.push_back({"mx-sign", c});
    c = {};
    c.interior_sign = -1;
    out.push_back({"interior-sign", c});
    c = {};
    c.left_derivative = false;
    out.push_back({"left-derivative", c});
    return out;
}

}  // namespace superbracket::conformance
