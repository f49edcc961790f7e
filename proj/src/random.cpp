#include "superbracket/random.hpp"

namespace superbracket {

long PolyGenerator::uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng_() % span);
}

Rational PolyGenerator::coefficient(long range) {
    long c = uniform(1, range);
    return coin() ? Rational(-c) : Rational(c);
}

Poly PolyGenerator::poly(const SpacePtr& s, const Shape& shape) {
    std::vector<std::size_t> vars = shape.vars;
    if (vars.empty())
        for (std::size_t i = 0; i < s->size(); ++i) vars.push_back(i);
    Poly out(s);
    unsigned terms = static_cast<unsigned>(uniform(1, shape.max_terms));
    // Bounded number of attempts: a requested parity may be unreachable for short draws.
    for (unsigned attempt = 0; out.size() < terms && attempt < 40 * terms; ++attempt) {
        unsigned deg = static_cast<unsigned>(uniform(shape.allow_constant ? 0 : 1, shape.max_degree));
        std::vector<std::size_t> factors;
        for (unsigned k = 0; k < deg; ++k)
            factors.push_back(vars[static_cast<std::size_t>(uniform(0, static_cast<long>(vars.size()) - 1))]);
        auto m = normalize(*s, factors);
        if (!m) continue;
        if (shape.parity && parity_of(m->monomial, *s) != *shape.parity) continue;
        out.add_term(m->monomial, coefficient(shape.coefficient_range));
    }
    return out;
}

}  // namespace superbracket

namespace superbracket {

VectorField homological_field(PolyGenerator& gen, const SpacePtr& chart, bool curved, unsigned max_degree) {
    const std::size_t n = chart->size();
    std::vector<std::size_t> even, odd;
    for (std::size_t i = 0; i < n; ++i) (chart->variable(i).parity == Parity::Even ? even : odd).push_back(i);

    VectorField q0(chart, Parity::Odd);
    std::size_t paired = std::min(even.size(), odd.size());
    if (curved && paired == odd.size() && paired > 0) --paired;
    for (std::size_t i = 0; i < paired; ++i)
        q0.set_coefficient(even[i], Poly::variable(chart, odd[i]) * gen.coefficient(3));
    if (curved)
        for (std::size_t i = paired; i < odd.size(); ++i)
            q0.set_coefficient(odd[i], Poly::constant(chart, gen.coefficient(3)));

    // psi^* xi^k = xi^k + g^k(xi^1..xi^{k-1}); inverse by forward substitution
    std::vector<Poly> forward, inverse;
    for (std::size_t k = 0; k < n; ++k) {
        Poly xi = Poly::variable(chart, k);
        Poly g(chart);
        if (k > 0) {
            PolyGenerator::Shape shape;
            for (std::size_t j = 0; j < k; ++j) shape.vars.push_back(j);
            shape.max_degree = max_degree;
            shape.max_terms = 2;
            shape.parity = chart->variable(k).parity;
            shape.allow_constant = false;
            g = gen.poly(chart, shape);
        }
        forward.push_back(xi + g);
        std::vector<Poly> partial_inverse = inverse;
        for (std::size_t j = k; j < n; ++j) partial_inverse.push_back(Poly::variable(chart, j));
        inverse.push_back(xi - pull(g, chart, partial_inverse));
    }
    VectorField q(chart, Parity::Odd);
    for (std::size_t k = 0; k < n; ++k) q.set_coefficient(k, pull(q0(forward[k]), chart, inverse));
    return q;
}

}  // namespace superbracket
