#include "superbracket/geometry.hpp"

#include <algorithm>

#include "superbracket/brackets.hpp"
#include "superbracket/conventions.hpp"

namespace superbracket {

namespace {

std::string momentum_name(const Variable& v) {
    switch (v.role) {
        case Role::Differential:
        case Role::Antimomentum: return "pi_" + v.origin;
        case Role::Fiber: return "pi_" + v.name;
        default: return "p_" + v.name;
    }
}

Role momentum_role(const Variable& v) {
    switch (v.role) {
        case Role::Differential: return Role::DifferentialMomentum;
        case Role::Fiber: return Role::FiberMomentum;
        case Role::Antimomentum: return Role::DifferentialMomentum;
        default: return Role::Momentum;
    }
}

Weight complementary(Weight w) { return {1 - w.w1, 1 - w.w2}; }

SpacePtr add_conjugates(const SpacePtr& s, Parity bracket, Provenance prov) {
    auto vars = s->variables();
    auto pairs = s->pairs();
    const std::size_t n = vars.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Variable v = vars[i];
        if (v.role == Role::Parameter) continue;
        Variable m;
        if (bracket == Parity::Even) {
            m.name = momentum_name(v);
            m.role = momentum_role(v);
            // st_xi of a fiber xi would collide with pi_xi
            if (std::any_of(vars.begin(), vars.end(), [&](const Variable& u) { return u.name == m.name; }))
                m.name = "p_" + v.name;
        } else {
            m.name = "st_" + v.name;
            m.role = Role::Antimomentum;
        }
        m.parity = v.parity + bracket;
        m.weight = complementary(v.weight);
        m.origin = v.origin;
        pairs.push_back({i, vars.size(), bracket});
        vars.push_back(std::move(m));
    }
    return Space::make(std::move(vars), std::move(pairs), prov, s);
}

}  // namespace

SpacePtr base_space(const std::vector<std::pair<std::string, Parity>>& coordinates) {
    std::vector<Variable> vars;
    for (const auto& [name, parity] : coordinates) vars.push_back({name, parity, Role::Base, {}, name});
    return Space::make(std::move(vars), {});
}

SpacePtr cotangent(const SpacePtr& s) { return add_conjugates(s, Parity::Even, Provenance::Cotangent); }

SpacePtr anticotangent(const SpacePtr& s) {
    return add_conjugates(s, Parity::Odd, Provenance::Anticotangent);
}

SpacePtr antitangent(const SpacePtr& s) {
    auto vars = s->variables();
    const std::size_t n = vars.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Variable v = vars[i];
        if (v.role == Role::Parameter) continue;
        vars.push_back({"d" + v.name, flip(v.parity), Role::Differential, {}, v.origin});
    }
    return Space::make(std::move(vars), s->pairs(), Provenance::Antitangent, s);
}

SpacePtr vector_bundle(const SpacePtr& base, const std::vector<Parity>& fiber_parities, bool shifted,
                       const std::vector<std::string>& names) {
    if (!names.empty() && names.size() != fiber_parities.size())
        throw Error(ErrorKind::Precondition, "fiber name count does not match rank");
    auto vars = base->variables();
    for (std::size_t i = 0; i < fiber_parities.size(); ++i) {
        Parity p = shifted ? flip(fiber_parities[i]) : fiber_parities[i];
        std::string name = names.empty() ? "xi" + std::to_string(i + 1) : names[i];
        vars.push_back({name, p, Role::Fiber, {0, 1}, name});
    }
    return Space::make(std::move(vars), base->pairs(), Provenance::VectorBundle, base);
}

SpacePtr with_parameter(const SpacePtr& s, const std::string& name) {
    auto vars = s->variables();
    vars.push_back({name, Parity::Even, Role::Parameter, {}, name});
    return Space::make(std::move(vars), s->pairs(), s->provenance(), s->parent());
}

SpacePtr with_coordinates(const SpacePtr& s, const std::vector<std::pair<std::string, Parity>>& coords) {
    auto vars = s->variables();
    for (const auto& [name, parity] : coords) vars.push_back({name, parity, Role::Base, {}, name});
    return Space::make(std::move(vars), s->pairs(), s->provenance(), s->parent());
}

std::vector<std::size_t> variables_with_role(const Space& s, std::initializer_list<Role> roles) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (auto r : roles)
            if (s.variable(i).role == r) {
                out.push_back(i);
                break;
            }
    return out;
}

Poly MackenzieXu::apply(const Poly& f) const {
    if (!same_chart(f.space(), source))
        throw Error(ErrorKind::ChartMismatch, "Mackenzie-Xu relabeling applied to a foreign chart");
    return pull(f, target, images);
}

MackenzieXu mx_transform(const SpacePtr& s) {
    const bool from_bundle = s->parent() && s->parent()->provenance() == Provenance::VectorBundle &&
                             (s->provenance() == Provenance::Cotangent ||
                              s->provenance() == Provenance::Anticotangent);
    if (!from_bundle && s->provenance() != Provenance::MackenzieXu)
        throw Error(ErrorKind::Precondition,
                    "Mackenzie-Xu relabeling needs T*(Pi E), Pi T*(E) or a previous relabeling");

    MackenzieXu mx;
    mx.source = s;
    // fiber pairs: coordinate is a fiber variable
    std::vector<ConjugatePair> fiber_pairs;
    for (const auto& p : s->pairs())
        if (s->variable(p.coordinate).role == Role::Fiber) fiber_pairs.push_back(p);
    if (fiber_pairs.empty()) throw Error(ErrorKind::Precondition, "chart has no fiber pairs");
    mx.bracket = fiber_pairs.front().bracket;
    for (const auto& p : fiber_pairs)
        if (p.bracket != mx.bracket)
            throw Error(ErrorKind::Precondition, "fiber pairs of mixed bracket parity");

    auto vars = s->variables();
    for (auto& v : vars) std::swap(v.weight.w1, v.weight.w2);
    std::vector<ConjugatePair> pairs;
    for (const auto& p : s->pairs()) {
        if (s->variable(p.coordinate).role == Role::Fiber) {
            std::swap(vars[p.coordinate].role, vars[p.momentum].role);
            pairs.push_back({p.momentum, p.coordinate, p.bracket});
        } else {
            pairs.push_back(p);
        }
    }
    mx.target = Space::make(std::move(vars), std::move(pairs), Provenance::MackenzieXu, s);

    auto bracket = [&](const Poly& a, const Poly& b) {
        return mx.bracket == Parity::Even ? poisson(a, b) : schouten(a, b);
    };
    mx.signs.assign(s->size(), 1);
    for (const auto& p : fiber_pairs) {
        // sign making (pi, xi) on the source equal (pi, sign * xi) on the target
        auto src = bracket(Poly::variable(s, p.momentum), Poly::variable(s, p.coordinate));
        auto tgt = bracket(Poly::variable(mx.target, p.momentum), Poly::variable(mx.target, p.coordinate));
        Rational ratio = src.constant_term() / tgt.constant_term();
        if (ratio != 1 && ratio != -1) throw Error(ErrorKind::Internal, "non-unit Mackenzie-Xu sign");
        mx.signs[p.coordinate] = (ratio > 0 ? 1 : -1) * conventions().mx_sign;
    }
    for (std::size_t i = 0; i < s->size(); ++i)
        mx.images.push_back(Poly::variable(mx.target, i) * Rational(mx.signs[i]));
    return mx;
}

}  // namespace superbracket
