#include "superbracket/graded.hpp"

#include <algorithm>
#include <set>

#include "superbracket/conventions.hpp"

namespace superbracket {

namespace {
thread_local Conventions tls_conventions{};
}

const Conventions& conventions() { return tls_conventions; }

ScopedConventions::ScopedConventions(const Conventions& c) : saved_(tls_conventions) {
    tls_conventions = c;
}
ScopedConventions::~ScopedConventions() { tls_conventions = saved_; }

const char* to_string(Role r) {
    switch (r) {
        case Role::Base: return "base";
        case Role::Momentum: return "momentum";
        case Role::Antimomentum: return "antimomentum";
        case Role::Differential: return "differential";
        case Role::DifferentialMomentum: return "differential-momentum";
        case Role::Fiber: return "fiber";
        case Role::FiberMomentum: return "fiber-momentum";
        case Role::Parameter: return "parameter";
    }
    return "?";
}

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::Base: return "base";
        case Provenance::Cotangent: return "cotangent";
        case Provenance::Anticotangent: return "anticotangent";
        case Provenance::Antitangent: return "antitangent";
        case Provenance::VectorBundle: return "vector-bundle";
        case Provenance::MackenzieXu: return "mackenzie-xu";
    }
    return "?";
}

// ---------------------------------------------------------------- Space

SpacePtr Space::make(std::vector<Variable> vars, std::vector<ConjugatePair> pairs,
                     Provenance provenance, SpacePtr parent) {
    std::set<std::string> names;
    for (auto& v : vars) {
        if (v.name.empty()) throw Error(ErrorKind::Precondition, "empty variable name");
        if (!names.insert(v.name).second)
            throw Error(ErrorKind::Precondition, "duplicate variable name '" + v.name + "'");
        if (v.origin.empty()) v.origin = v.name;
        if (v.role == Role::Parameter && v.parity != Parity::Even)
            throw Error(ErrorKind::Parity, "parameter '" + v.name + "' must be even");
    }
    std::set<std::pair<std::size_t, int>> used;
    for (const auto& p : pairs) {
        if (p.coordinate >= vars.size() || p.momentum >= vars.size() || p.coordinate == p.momentum)
            throw Error(ErrorKind::Internal, "conjugate pair refers to unknown variable");
        Parity expect = vars[p.coordinate].parity + p.bracket;
        if (vars[p.momentum].parity != expect)
            throw Error(ErrorKind::Parity, "momentum '" + vars[p.momentum].name +
                                               "' has the wrong parity for its pair");
        for (auto idx : {p.coordinate, p.momentum})
            if (!used.insert({idx, bit(p.bracket)}).second)
                throw Error(ErrorKind::Precondition,
                            "variable '" + vars[idx].name + "' occurs in two pairs of one kind");
    }
    auto s = std::shared_ptr<Space>(new Space());
    s->vars_ = std::move(vars);
    s->pairs_ = std::move(pairs);
    s->provenance_ = provenance;
    s->parent_ = std::move(parent);
    return s;
}

std::optional<std::size_t> Space::find(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    return std::nullopt;
}

std::size_t Space::index(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw Error(ErrorKind::Precondition, "unknown variable '" + name + "'");
}

std::vector<ConjugatePair> Space::pairs_of(Parity bracket) const {
    std::vector<ConjugatePair> out;
    for (const auto& p : pairs_)
        if (p.bracket == bracket) out.push_back(p);
    return out;
}

bool Space::has_pairs(Parity bracket) const { return !pairs_of(bracket).empty(); }

std::vector<std::size_t> Space::momenta(Parity bracket) const {
    std::vector<std::size_t> out;
    for (const auto& p : pairs_of(bracket)) out.push_back(p.momentum);
    return out;
}

bool Space::same_as(const Space& o) const {
    if (vars_.size() != o.vars_.size() || pairs_.size() != o.pairs_.size()) return false;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const auto &a = vars_[i], &b = o.vars_[i];
        if (a.name != b.name || a.parity != b.parity || a.role != b.role || !(a.weight == b.weight))
            return false;
    }
    for (std::size_t i = 0; i < pairs_.size(); ++i)
        if (pairs_[i].coordinate != o.pairs_[i].coordinate ||
            pairs_[i].momentum != o.pairs_[i].momentum || pairs_[i].bracket != o.pairs_[i].bracket)
            return false;
    return true;
}

// ---------------------------------------------------------------- Monomial

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (auto e : exps) d += e;
    return d;
}

bool Monomial::is_one() const {
    return std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.exps.begin(), a.exps.end(), b.exps.begin(), b.exps.end(),
                                        [](auto x, auto y) { return x > y; });
}

Parity parity_of(const Monomial& m, const Space& s) {
    int p = 0;
    for (std::size_t i = 0; i < m.exps.size(); ++i)
        if (s.variable(i).parity == Parity::Odd) p ^= (m.exps[i] & 1);
    return static_cast<Parity>(p);
}

Weight weight_of(const Monomial& m, const Space& s) {
    Weight w;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        w.w1 += m.exps[i] * s.variable(i).weight.w1;
        w.w2 += m.exps[i] * s.variable(i).weight.w2;
    }
    return w;
}

std::optional<SignedMonomial> normalize(const Space& s, const std::vector<std::size_t>& factors) {
    SignedMonomial out;
    out.monomial.exps.assign(s.size(), 0);
    // Insertion of each factor into the canonical product: it has to travel past
    // every odd factor already present with a larger index.
    for (auto f : factors) {
        if (f >= s.size()) throw Error(ErrorKind::ChartMismatch, "factor not in chart");
        bool odd = s.variable(f).parity == Parity::Odd;
        if (odd) {
            if (out.monomial.exps[f]) return std::nullopt;
            int passed = 0;
            for (std::size_t j = f + 1; j < s.size(); ++j)
                if (s.variable(j).parity == Parity::Odd) passed += out.monomial.exps[j];
            if (passed & 1) out.sign = -out.sign;
        }
        ++out.monomial.exps[f];
    }
    return out;
}

std::optional<SignedMonomial> multiply(const Space& s, const Monomial& a, const Monomial& b) {
    SignedMonomial out;
    out.monomial.exps.resize(s.size());
    // sign: odd factors of a with index i must pass odd factors of b with index j < i
    int odd_b_before = 0;
    int swaps = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        bool odd = s.variable(i).parity == Parity::Odd;
        if (odd) {
            if (a.exps[i] && b.exps[i]) return std::nullopt;
            if (a.exps[i]) swaps += odd_b_before;
            odd_b_before += b.exps[i];
        }
        out.monomial.exps[i] = static_cast<std::uint16_t>(a.exps[i] + b.exps[i]);
    }
    if (swaps & 1) out.sign = -1;
    return out;
}

// ---------------------------------------------------------------- Poly

bool same_chart(const SpacePtr& a, const SpacePtr& b) {
    return a == b || (a && b && a->same_as(*b));
}

void require_same_chart(const Poly& a, const Poly& b) {
    if (!same_chart(a.space(), b.space()))
        throw Error(ErrorKind::ChartMismatch, "polynomials live on different charts");
}

Poly::Poly(SpacePtr space) : space_(std::move(space)) {
    if (!space_) throw Error(ErrorKind::Internal, "Poly without a chart");
}

Poly Poly::constant(SpacePtr space, const Rational& c) {
    Poly p(std::move(space));
    Monomial one;
    one.exps.assign(p.space_->size(), 0);
    p.add_term(one, c);
    return p;
}

Poly Poly::variable(SpacePtr space, std::size_t index) {
    Poly p(std::move(space));
    if (index >= p.space_->size()) throw Error(ErrorKind::ChartMismatch, "variable not in chart");
    Monomial m;
    m.exps.assign(p.space_->size(), 0);
    m.exps[index] = 1;
    p.add_term(m, 1);
    return p;
}

Poly Poly::variable(SpacePtr space, const std::string& name) {
    auto i = space->index(name);
    return variable(std::move(space), i);
}

Poly Poly::monomial(SpacePtr space, const Monomial& m, const Rational& c) {
    Poly p(std::move(space));
    if (m.exps.size() != p.space_->size()) throw Error(ErrorKind::ChartMismatch, "monomial size");
    p.add_term(m, c);
    return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational Poly::constant_term() const {
    if (terms_.empty()) return 0;
    const auto& [m, c] = *terms_.begin();
    return m.is_one() ? c : Rational(0);
}

ParityClass Poly::parity_class() const {
    if (terms_.empty()) return ParityClass::Zero;
    std::optional<Parity> p;
    for (const auto& [m, c] : terms_) {
        Parity q = parity_of(m, *space_);
        if (p && *p != q) return ParityClass::Inhomogeneous;
        p = q;
    }
    return *p == Parity::Even ? ParityClass::Even : ParityClass::Odd;
}

Parity Poly::parity() const {
    switch (parity_class()) {
        case ParityClass::Odd: return Parity::Odd;
        case ParityClass::Inhomogeneous:
            throw Error(ErrorKind::Parity, "polynomial is not parity-homogeneous");
        default: return Parity::Even;
    }
}

Poly Poly::even_part() const {
    Poly out(space_);
    for (const auto& [m, c] : terms_)
        if (parity_of(m, *space_) == Parity::Even) out.terms_.emplace(m, c);
    return out;
}

Poly Poly::odd_part() const {
    Poly out(space_);
    for (const auto& [m, c] : terms_)
        if (parity_of(m, *space_) == Parity::Odd) out.terms_.emplace(m, c);
    return out;
}

int Poly::degree_in(const std::vector<std::size_t>& vars) const {
    int best = -1;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (auto v : vars) d += m.exps[v];
        best = std::max(best, d);
    }
    return best;
}

int Poly::degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree()); }

Poly& Poly::operator+=(const Poly& o) {
    require_same_chart(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    require_same_chart(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same_chart(a, b);
    Poly out(a.space_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            auto prod = multiply(*a.space_, ma, mb);
            if (!prod) continue;
            Rational c = ca * cb;
            if (prod->sign < 0) c = -c;
            out.add_term(prod->monomial, c);
        }
    return out;
}

bool operator==(const Poly& a, const Poly& b) {
    return same_chart(a.space_, b.space_) && a.terms_ == b.terms_;
}

Poly pow(const Poly& f, unsigned n) {
    Poly out = Poly::constant(f.space(), 1);
    for (unsigned i = 0; i < n; ++i) out = out * f;
    return out;
}

Poly partial(const Poly& f, std::size_t var) {
    const Space& s = *f.space();
    if (var >= s.size()) throw Error(ErrorKind::ChartMismatch, "variable not in chart");
    const bool odd = s.variable(var).parity == Parity::Odd;
    const bool left = conventions().left_derivative;
    Poly out(f.space());
    for (const auto& [m, c] : f.terms()) {
        auto e = m.exps[var];
        if (e == 0) continue;
        Monomial r = m;
        --r.exps[var];
        Rational coeff = c * e;
        if (odd) {
            // odd factors the variable has to pass on its way to the chosen end
            int passed = 0;
            if (left) {
                for (std::size_t j = 0; j < var; ++j)
                    if (s.variable(j).parity == Parity::Odd) passed += m.exps[j];
            } else {
                for (std::size_t j = var + 1; j < s.size(); ++j)
                    if (s.variable(j).parity == Parity::Odd) passed += m.exps[j];
            }
            if (passed & 1) coeff = -coeff;
        }
        out.add_term(r, coeff);
    }
    return out;
}

Poly partial(const Poly& f, const std::string& var) { return partial(f, f.space()->index(var)); }

namespace {

void check_image_parity(const Variable& v, const Poly& img) {
    auto pc = img.parity_class();
    if (pc == ParityClass::Zero) return;
    if (pc == ParityClass::Inhomogeneous || img.parity() != v.parity)
        throw Error(ErrorKind::Parity,
                    "image of '" + v.name + "' must be " + to_string(v.parity) + " and homogeneous");
}

Poly evaluate(const Poly& f, const SpacePtr& target, const std::vector<const Poly*>& images) {
    const Space& s = *f.space();
    // powers[i][k] = images[i]^k, filled lazily
    std::vector<std::vector<Poly>> powers(s.size());
    auto power = [&](std::size_t i, unsigned k) -> const Poly& {
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(Poly::constant(target, 1));
        while (pw.size() <= k) pw.push_back(pw.back() * *images[i]);
        return pw[k];
    };
    Poly out(target);
    for (const auto& [m, c] : f.terms()) {
        Poly term = Poly::constant(target, c);
        for (std::size_t i = 0; i < s.size() && !term.is_zero(); ++i)
            if (m.exps[i]) term = term * power(i, m.exps[i]);
        out += term;
    }
    return out;
}

}  // namespace

Poly substitute(const Poly& f, const std::map<std::size_t, Poly>& images) {
    const Space& s = *f.space();
    std::vector<Poly> own;
    own.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) own.push_back(Poly::variable(f.space(), i));
    std::vector<const Poly*> ptrs(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) ptrs[i] = &own[i];
    for (const auto& [i, img] : images) {
        if (i >= s.size()) throw Error(ErrorKind::ChartMismatch, "substituted variable not in chart");
        if (!same_chart(img.space(), f.space()))
            throw Error(ErrorKind::ChartMismatch, "substitution image on a different chart");
        check_image_parity(s.variable(i), img);
        ptrs[i] = &img;
    }
    return evaluate(f, f.space(), ptrs);
}

Poly pull(const Poly& f, const SpacePtr& target, const std::vector<Poly>& images) {
    const Space& s = *f.space();
    if (images.size() != s.size()) throw Error(ErrorKind::ChartMismatch, "image count mismatch");
    std::vector<const Poly*> ptrs(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!same_chart(images[i].space(), target))
            throw Error(ErrorKind::ChartMismatch, "image not on the target chart");
        check_image_parity(s.variable(i), images[i]);
        ptrs[i] = &images[i];
    }
    return evaluate(f, target, ptrs);
}

Poly embed(const Poly& f, const SpacePtr& target) {
    if (same_chart(f.space(), target)) return f;
    const Space& s = *f.space();
    // only variables that actually occur need a counterpart
    std::vector<std::optional<std::size_t>> where(s.size());
    for (const auto& [m, c] : f.terms())
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!m.exps[i] || where[i]) continue;
            auto j = target->find(s.variable(i).name);
            if (!j || target->variable(*j).parity != s.variable(i).parity)
                throw Error(ErrorKind::ChartMismatch,
                            "variable '" + s.variable(i).name + "' has no counterpart in target chart");
            where[i] = *j;
        }
    Poly out(target);
    for (const auto& [m, c] : f.terms()) {
        std::vector<std::size_t> factors;
        for (std::size_t i = 0; i < s.size(); ++i)
            for (unsigned k = 0; k < m.exps[i]; ++k) factors.push_back(*where[i]);
        auto n = normalize(*target, factors);
        if (n) out.add_term(n->monomial, n->sign < 0 ? Rational(-c) : c);
    }
    return out;
}

Poly set_zero(const Poly& f, const std::vector<std::size_t>& vars) {
    Poly out(f.space());
    for (const auto& [m, c] : f.terms()) {
        bool keep = std::all_of(vars.begin(), vars.end(), [&](auto v) { return m.exps[v] == 0; });
        if (keep) out.add_term(m, c);
    }
    return out;
}

bool supported_on(const Poly& f, const std::vector<std::size_t>& vars) {
    std::vector<bool> allowed(f.space()->size(), false);
    for (auto v : vars) allowed[v] = true;
    for (const auto& [m, c] : f.terms())
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            if (m.exps[i] && !allowed[i]) return false;
    return true;
}

std::optional<Weight> weight_of(const Poly& f) {
    std::optional<Weight> w;
    for (const auto& [m, c] : f.terms()) {
        Weight x = weight_of(m, *f.space());
        if (w && !(*w == x)) return std::nullopt;
        w = x;
    }
    return w.value_or(Weight{});
}

}  // namespace superbracket
