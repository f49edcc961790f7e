#include "superbracket/homotopy.hpp"

#include <algorithm>
#include <functional>

#include "superbracket/geometry.hpp"

namespace superbracket {

MasterHamiltonian::MasterHamiltonian(Poly value, MasterKind kind) : value_(std::move(value)), kind_(kind) {
    auto pc = value_.parity_class();
    if (pc == ParityClass::Inhomogeneous || (pc != ParityClass::Zero && value_.parity() != parity()))
        throw Error(ErrorKind::Parity, kind_ == MasterKind::EvenMaster
                                           ? "homotopy Poisson master must be even"
                                           : "homotopy Schouten master must be odd");
    Parity pairs = kind_ == MasterKind::EvenMaster ? Parity::Odd : Parity::Even;
    if (!value_.space()->has_pairs(pairs))
        throw Error(ErrorKind::Precondition, kind_ == MasterKind::EvenMaster
                                                 ? "even master needs an antimomentum chart"
                                                 : "odd master needs a cotangent chart");
}

Poly MasterHamiltonian::self_commutator() const {
    return kind_ == MasterKind::EvenMaster ? schouten(value_, value_) : poisson(value_, value_);
}

std::vector<std::size_t> base_variables(const Space& s, Parity bracket) {
    auto mom = s.momenta(bracket);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (std::find(mom.begin(), mom.end(), i) == mom.end()) out.push_back(i);
    return out;
}

namespace {

void require_base_args(const Poly& master, const std::vector<Poly>& args, Parity bracket) {
    auto base = base_variables(*master.space(), bracket);
    for (const auto& f : args) {
        require_same_chart(master, f);
        if (!supported_on(f, base))
            throw Error(ErrorKind::Precondition, "bracket arguments must be functions on the base");
    }
}

}  // namespace

Poly higher_poisson(const MasterHamiltonian& p, const std::vector<Poly>& args, OddConvention conv) {
    if (p.kind() != MasterKind::EvenMaster) throw Error(ErrorKind::Precondition, "needs an even master");
    require_base_args(p.value(), args, Parity::Odd);
    Poly x = p.value();
    for (const auto& f : args) {
        if (x.is_zero()) break;
        x = bilinear([conv](const Poly& a, const Poly& b) { return schouten(a, b, conv); }, x, f);
    }
    return set_zero(x, p.value().space()->momenta(Parity::Odd));
}

Poly higher_schouten(const MasterHamiltonian& h, const std::vector<Poly>& args) {
    if (h.kind() != MasterKind::OddMaster) throw Error(ErrorKind::Precondition, "needs an odd master");
    require_base_args(h.value(), args, Parity::Even);
    Poly x = h.value();
    for (const auto& f : args) {
        if (x.is_zero()) break;
        x = bilinear([](const Poly& a, const Poly& b) { return poisson(a, b); }, x, f);
    }
    return set_zero(x, h.value().space()->momenta(Parity::Even));
}

// ---------------------------------------------------------------- L-infinity

LInftyStructure::LInftyStructure(std::vector<Parity> parities, unsigned max_arity, int field_degree)
    : parities_(std::move(parities)), max_arity_(max_arity), field_degree_(field_degree) {}

void LInftyStructure::set(const Key& key, Vector value) {
    if (!std::is_sorted(key.begin(), key.end())) throw Error(ErrorKind::Internal, "unsorted key");
    if (value.size() != dimension()) throw Error(ErrorKind::Internal, "vector of wrong dimension");
    if (std::all_of(value.begin(), value.end(), [](const Rational& c) { return c == 0; })) {
        constants_.erase(key);
        return;
    }
    constants_[key] = std::move(value);
}

Parity LInftyStructure::parity(const Vector& v) const {
    std::optional<Parity> p;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0) {
            if (p && *p != parities_[k]) throw Error(ErrorKind::Parity, "inhomogeneous vector");
            p = parities_[k];
        }
    return p.value_or(Parity::Even);
}

LInftyStructure::Vector LInftyStructure::bracket_basis(const std::vector<std::size_t>& indices) const {
    Vector zero(dimension());
    const auto n = static_cast<unsigned>(indices.size());
    if (n > max_arity_) {
        if (field_degree_ >= 0 && static_cast<int>(n) > field_degree_) return zero;
        throw Error(ErrorKind::Precondition, "bracket arity " + std::to_string(n) + " exceeds extracted arity");
    }
    // stable insertion sort with Koszul sign of the parities
    std::vector<std::size_t> key = indices;
    int sign = 1;
    for (std::size_t i = 1; i < key.size(); ++i)
        for (std::size_t j = i; j > 0 && key[j - 1] > key[j]; --j) {
            if (parities_[key[j]] == Parity::Odd && parities_[key[j - 1]] == Parity::Odd) sign = -sign;
            std::swap(key[j - 1], key[j]);
        }
    for (std::size_t i = 1; i < key.size(); ++i)
        if (key[i] == key[i - 1] && parities_[key[i]] == Parity::Odd) return zero;
    auto it = constants_.find(key);
    if (it == constants_.end()) return zero;
    Vector out = it->second;
    if (sign < 0)
        for (auto& c : out) c = -c;
    return out;
}

LInftyStructure::Vector LInftyStructure::bracket(const std::vector<Vector>& args) const {
    Vector out(dimension());
    std::vector<std::size_t> idx(args.size());
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t pos, Rational coeff) {
        if (pos == args.size()) {
            auto b = bracket_basis(idx);
            for (std::size_t k = 0; k < out.size(); ++k)
                if (b[k] != 0) out[k] += coeff * b[k];
            return;
        }
        for (std::size_t i = 0; i < args[pos].size(); ++i)
            if (args[pos][i] != 0) {
                idx[pos] = i;
                rec(pos + 1, coeff * args[pos][i]);
            }
    };
    rec(0, Rational(1));
    return out;
}

SpacePtr linear_chart(const std::vector<Parity>& parities, const std::string& prefix) {
    std::vector<std::pair<std::string, Parity>> coords;
    for (std::size_t i = 0; i < parities.size(); ++i) coords.push_back({prefix + std::to_string(i + 1), parities[i]});
    return base_space(coords);
}

namespace {

// Calls visit(key) for every nondecreasing key of length <= max_len without
// repeated odd generators, with the key built incrementally.
void for_each_key(const std::vector<Parity>& par, unsigned max_len,
                  const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> key;
    std::function<void()> rec = [&]() {
        if (!visit(key) || key.size() == max_len) return;
        std::size_t start = key.empty() ? 0 : key.back();
        for (std::size_t i = start; i < par.size(); ++i) {
            if (!key.empty() && i == key.back() && par[i] == Parity::Odd) continue;
            key.push_back(i);
            rec();
            key.pop_back();
        }
    };
    rec();
}

LInftyStructure::Vector value_at_origin(const VectorField& x) {
    LInftyStructure::Vector v;
    for (const auto& c : x.coefficients()) v.push_back(c.constant_term());
    return v;
}

}  // namespace

LInftyStructure extract_linfty(const VectorField& q, unsigned max_arity) {
    if (q.parity() != Parity::Odd && !q.is_zero())
        throw Error(ErrorKind::Parity, "L-infinity structures come from odd fields");
    const Space& s = *q.space();
    std::vector<Parity> par;
    int degree = -1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        par.push_back(s.variable(i).parity);
        degree = std::max(degree, q.coefficient(i).degree());
    }
    LInftyStructure l(par, max_arity, degree);
    // prefix commutators [..[Q, d_i1], .., d_ik]
    std::vector<VectorField> stack{q};
    std::vector<std::size_t> current;
    for_each_key(par, max_arity, [&](const std::vector<std::size_t>& key) {
        while (current.size() >= key.size() && !current.empty() &&
               !(current.size() == key.size() && current == key)) {
            current.pop_back();
            stack.pop_back();
        }
        if (current != key) {
            current = key;
            stack.push_back(commutator(stack.back(), VectorField::partial_along(q.space(), key.back())));
        }
        l.set(key, value_at_origin(stack.back()));
        return !stack.back().is_zero();
    });
    return l;
}

VectorField encode_linfty(const LInftyStructure& l, const SpacePtr& chart) {
    if (chart->size() != l.dimension()) throw Error(ErrorKind::ChartMismatch, "chart dimension mismatch");
    VectorField q(chart, Parity::Odd);
    for (const auto& [key, vec] : l.constants()) {
        auto m = normalize(*chart, key);
        if (!m) continue;
        for (std::size_t k = 0; k < vec.size(); ++k) {
            if (vec[k] == 0) continue;
            VectorField unit(chart, Parity::Odd);
            Poly mono = Poly::monomial(chart, m->monomial, m->sign);
            unit.set_coefficient(k, mono);
            VectorField x = unit;
            for (auto i : key) x = commutator(x, VectorField::partial_along(chart, i));
            Rational v = x.coefficient(k).constant_term();
            if (v == 0) throw Error(ErrorKind::Internal, "degenerate structure constant encoding");
            q.set_coefficient(k, q.coefficient(k) + mono * Rational(vec[k] / v));
        }
    }
    return q;
}

JacobiReport verify_generalized_jacobi(const LInftyStructure& l, unsigned max_inputs) {
    JacobiReport rep;
    rep.residual_terms.assign(max_inputs + 1, 0);
    const auto& par = l.parities();
    for_each_key(par, max_inputs, [&](const std::vector<std::size_t>& inputs) {
        const std::size_t n = inputs.size();
        LInftyStructure::Vector total(l.dimension());
        // (k, n-k)-shuffles in lexicographic order of the first block
        for (std::size_t k = 0; k <= n; ++k) {
            std::vector<bool> pick(n, false);
            std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
            do {
                std::vector<std::size_t> first, rest;
                int sign = 1;
                int odd_rest_before = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    bool odd = par[inputs[i]] == Parity::Odd;
                    if (pick[i]) {
                        first.push_back(inputs[i]);
                        if (odd && (odd_rest_before & 1)) sign = -sign;
                    } else {
                        rest.push_back(inputs[i]);
                        if (odd) ++odd_rest_before;
                    }
                }
                auto inner = l.bracket_basis(first);
                if (std::any_of(inner.begin(), inner.end(), [](const Rational& c) { return c != 0; })) {
                    std::vector<LInftyStructure::Vector> args{inner};
                    for (auto r : rest) {
                        LInftyStructure::Vector e(l.dimension());
                        e[r] = 1;
                        args.push_back(e);
                    }
                    auto outer = l.bracket(args);
                    for (std::size_t c = 0; c < total.size(); ++c) total[c] += sign * outer[c];
                }
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
        std::size_t nz = static_cast<std::size_t>(
            std::count_if(total.begin(), total.end(), [](const Rational& c) { return c != 0; }));
        rep.residual_terms[n] += nz;
        if (nz && !rep.first_failure) rep.first_failure = JacobiReport::Failure{static_cast<unsigned>(n), inputs, total};
        return true;
    });
    return rep;
}

VectorField adjoint_image(const VectorField& q, const std::vector<Poly>& eta, const SpacePtr& point_chart) {
    const Space& s = *q.space();
    if (eta.size() != s.size()) throw Error(ErrorKind::Precondition, "one point component per coordinate");
    std::vector<Poly> shifted, at_eta;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!same_chart(eta[i].space(), point_chart))
            throw Error(ErrorKind::ChartMismatch, "point component on a different chart");
        auto pc = eta[i].parity_class();
        if (pc == ParityClass::Inhomogeneous || (pc != ParityClass::Zero && eta[i].parity() != s.variable(i).parity))
            throw Error(ErrorKind::Parity, "point component of wrong parity for '" + s.variable(i).name + "'");
        auto xi = Poly::variable(point_chart, point_chart->index(s.variable(i).name));
        shifted.push_back(xi + eta[i]);
        at_eta.push_back(eta[i]);
    }
    VectorField out(point_chart, q.parity());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const Poly& c = q.coefficient(k);
        Poly v = pull(c, point_chart, shifted) - embed(c, point_chart) - pull(c, point_chart, at_eta);
        out.set_coefficient(point_chart->index(s.variable(k).name), v);
    }
    return out;
}

// ---------------------------------------------------------------- algebroids

namespace {

struct BundleLayout {
    std::vector<std::size_t> base;   // indices in the bundle chart
    std::vector<std::size_t> fiber;
};

BundleLayout layout(const SpacePtr& b) {
    if (b->provenance() != Provenance::VectorBundle)
        throw Error(ErrorKind::Precondition, "algebroid data live on a vector bundle chart");
    BundleLayout l;
    for (std::size_t i = 0; i < b->size(); ++i)
        (b->variable(i).role == Role::Fiber ? l.fiber : l.base).push_back(i);
    return l;
}

int fiber_degree(const Monomial& m, const BundleLayout& l) {
    int d = 0;
    for (auto i : l.fiber) d += m.exps[i];
    return d;
}

void require_weight_one(const VectorField& q, const BundleLayout& l) {
    for (std::size_t i = 0; i < q.coefficients().size(); ++i) {
        bool is_fiber = std::find(l.fiber.begin(), l.fiber.end(), i) != l.fiber.end();
        for (const auto& [m, c] : q.coefficient(i).terms())
            if (fiber_degree(m, l) != (is_fiber ? 2 : 1))
                throw Error(ErrorKind::Precondition, "field is not of weight 1 in the fiber grading");
    }
}

}  // namespace

VectorField section_field(const Section& u, const SpacePtr& b) {
    auto l = layout(b);
    if (u.components.size() != l.fiber.size()) throw Error(ErrorKind::Precondition, "section rank mismatch");
    VectorField x(b, flip(u.parity));
    Rational sign = u.parity == Parity::Odd ? -1 : 1;
    for (std::size_t i = 0; i < l.fiber.size(); ++i)
        if (!u.components[i].is_zero()) x.set_coefficient(l.fiber[i], embed(u.components[i], b) * sign);
    return x;
}

Section scale(const Poly& f, const Section& u) {
    Section out{f.parity() + u.parity, {}};
    for (const auto& c : u.components) out.components.push_back(f * c);
    return out;
}

AlgebroidData algebroid_brackets(const VectorField& q, const Section& u, const Section& v, const Poly& f) {
    const auto& b = q.space();
    auto l = layout(b);
    if (q.parity() != Parity::Odd) throw Error(ErrorKind::Parity, "algebroid field must be odd");
    require_weight_one(q, l);
    const SpacePtr& base = b->parent();
    VectorField qu = commutator(q, section_field(u, b));
    Poly anchor_b = qu(embed(f, b));
    auto back = [&](const Poly& g) {
        if (!supported_on(g, l.base)) throw Error(ErrorKind::Precondition, "result is not a base function");
        std::vector<Poly> img;
        for (std::size_t i = 0; i < b->size(); ++i)
            img.push_back(b->variable(i).role == Role::Fiber ? Poly(base) : Poly::variable(base, b->variable(i).name));
        return pull(g, base, img);
    };
    VectorField w = commutator(qu, section_field(v, b));
    if (u.parity == Parity::Odd) w *= Rational(-1);
    Section out{u.parity + v.parity, {}};
    Rational sign = out.parity == Parity::Odd ? -1 : 1;
    for (std::size_t i = 0; i < b->size(); ++i) {
        bool is_fiber = std::find(l.fiber.begin(), l.fiber.end(), i) != l.fiber.end();
        if (!is_fiber) {
            if (!w.coefficient(i).is_zero())
                throw Error(ErrorKind::Precondition, "bracket field has a base component; not a section");
            continue;
        }
        out.components.push_back(back(w.coefficient(i)) * sign);
    }
    return {back(anchor_b), out};
}

Compatibility bialgebroid_compatible(const Poly& h_e, const Poly& h_estar) {
    if (h_e.parity() != Parity::Odd || h_estar.parity() != Parity::Odd)
        if (!h_e.is_zero() && !h_estar.is_zero())
            throw Error(ErrorKind::Parity, "bialgebroid Hamiltonians must be odd");
    return {poisson(h_e, h_estar)};
}

}  // namespace superbracket
