#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "superbracket/chart_file.hpp"
#include "superbracket/conformance.hpp"
#include "superbracket/format.hpp"
#include "superbracket/geometry.hpp"
#include "superbracket/homotopy.hpp"
#include "superbracket/koszul.hpp"
#include "superbracket/quasitriangular.hpp"
#include "superbracket/random.hpp"

namespace superbracket::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    bool json = false;
    bool text = false;
    std::string chart;
    unsigned max_arity = 4;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

const char* parity_name(const Poly& f) {
    switch (f.parity_class()) {
        case ParityClass::Even: return "even";
        case ParityClass::Odd: return "odd";
        case ParityClass::Zero: return "zero";
        case ParityClass::Inhomogeneous: return "inhomogeneous";
    }
    return "?";
}

json poly_json(const Poly& f) {
    json terms = json::array();
    for (const auto& [m, c] : f.terms())
        terms.push_back({{"monomial", to_text(m, *f.space())}, {"coefficient", c.get_str()}});
    json w = nullptr;
    if (!f.is_zero())
        if (auto wt = weight_of(f)) w = json::array({wt->w1, wt->w2});
    return {{"text", to_text(f)}, {"terms", terms}, {"parity", parity_name(f)}, {"weight", w}};
}

// Everything a command reports, in print order.
struct Output {
    std::string command;
    std::optional<Poly> result;
    std::vector<std::pair<std::string, Poly>> values;
    std::vector<std::pair<std::string, Poly>> residuals;
    json extra = json::object();
    std::string listing;        // text mode only
    json detail;                // JSON mode only
    std::optional<bool> ok;

    void residual(std::string name, Poly p) { residuals.emplace_back(std::move(name), std::move(p)); }
};

void write_text(const Output& o, std::ostream& out) {
    if (o.result) {
        out << "result: " << to_text(*o.result) << "\n";
        out << "parity: " << parity_name(*o.result) << "\n";
        auto w = o.result->is_zero() ? std::nullopt : weight_of(*o.result);
        out << "weight: " << (w ? to_text(*w) : std::string("-")) << "\n";
    }
    for (const auto& [k, v] : o.values) out << k << ": " << to_text(v) << "\n";
    for (const auto& [k, v] : o.residuals) out << "residual " << k << ": " << to_text(v) << "\n";
    for (const auto& [k, v] : o.extra.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    out << o.listing;
    if (o.ok) out << "ok: " << (*o.ok ? "true" : "false") << "\n";
}

void write_json(const Output& o, std::ostream& out) {
    json j;
    j["schema"] = 1;
    j["command"] = o.command;
    if (o.result) j["result"] = poly_json(*o.result);
    if (!o.values.empty()) {
        json v = json::object();
        for (const auto& [k, p] : o.values) v[k] = poly_json(p);
        j["values"] = v;
    }
    if (!o.residuals.empty()) {
        json r = json::object();
        for (const auto& [k, p] : o.residuals) r[k] = poly_json(p);
        j["residuals"] = r;
    }
    for (const auto& [k, v] : o.extra.items()) j[k] = v;
    if (!o.detail.is_null()) j["report"] = o.detail;
    if (o.ok) j["ok"] = *o.ok;
    out << j.dump(2) << "\n";
}

// An argument is a file name when such a file exists, otherwise expression text.
std::string read_input(const std::string& v) {
    std::error_code ec;
    if (!v.empty() && std::filesystem::is_regular_file(v, ec)) {
        std::ifstream f(v);
        std::stringstream ss;
        ss << f.rdbuf();
        std::string s = ss.str();
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        return s;
    }
    return v;
}

// "xi1: expr; xi2: expr" -> field on `chart`. Splits on top-level ';'.
VectorField parse_field(const expr::Evaluator& ev, const SpacePtr& chart, const std::string& spec) {
    std::vector<std::string> parts{""};
    int depth = 0;
    for (char c : spec) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ';' && depth == 0)
            parts.emplace_back();
        else
            parts.back() += c;
    }
    std::vector<Poly> coeffs(chart->size(), Poly(chart));
    std::optional<Parity> parity;
    for (const auto& part : parts) {
        if (part.find_first_not_of(" \t\n") == std::string::npos) continue;
        auto colon = part.find(':');
        if (colon == std::string::npos) throw Error(ErrorKind::Parse, "field component must read '<var>: <expr>'");
        std::string name = part.substr(0, colon);
        name.erase(0, name.find_first_not_of(" \t\n"));
        name.erase(name.find_last_not_of(" \t\n") + 1);
        auto idx = chart->find(name);
        if (!idx) throw Error(ErrorKind::Parse, "unknown coordinate '" + name + "' in field");
        Poly c = ev.eval(expr::parse(part.substr(colon + 1)), chart);
        if (!same_chart(c.space(), chart)) c = embed(c, chart);
        if (c.is_zero()) continue;
        if (!c.is_homogeneous()) throw Error(ErrorKind::Parity, "field component of mixed parity");
        Parity p = c.parity() + chart->variable(*idx).parity;
        if (parity && *parity != p) throw Error(ErrorKind::Parity, "field components have inconsistent parities");
        parity = p;
        coeffs[*idx] = c;
    }
    return VectorField(chart, parity.value_or(Parity::Even), coeffs);
}

VectorField random_field(PolyGenerator& gen, const SpacePtr& chart, Parity parity) {
    std::vector<Poly> coeffs;
    for (const auto& v : chart->variables()) {
        PolyGenerator::Shape s;
        s.max_degree = 2;
        s.max_terms = 2;
        s.parity = parity + v.parity;
        coeffs.push_back(gen.coin() ? gen.poly(chart, s) : Poly(chart));
    }
    return VectorField(chart, parity, coeffs);
}

// Deterministic parallel map: results indexed by task.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& f) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex m;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(m);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

Rational sign(bool negative) { return negative ? Rational(-1) : Rational(1); }

// ------------------------------------------------------------------ commands

struct Args {
    std::string expr, lhs, rhs, kind, h, r, t, p, q, x, y, forms, functions, field, filter;
    std::vector<std::string> list;
    bool symmetric = false, explicit_form = false, manifest = false;
    unsigned samples = 20;
};

struct Context {
    const Options& opt;
    const Args& a;
    ChartDocument doc;
    expr::Evaluator ev;

    Context(const Options& o, const Args& args, ChartDocument d) : opt(o), a(args), doc(std::move(d)), ev(doc.evaluator()) {}

    Poly eval(const std::string& s) const { return ev.eval(expr::parse(read_input(s))); }
    Poly eval_on(const std::string& s, const SpacePtr& chart) const {
        Poly f = ev.eval(expr::parse(read_input(s)), chart);
        return same_chart(f.space(), chart) ? f : embed(f, chart);
    }
};

MasterHamiltonian master_of(const Poly& f) {
    const SpacePtr& s = f.space();
    if (s->has_pairs(Parity::Even) && f.parity_class() != ParityClass::Even)
        return MasterHamiltonian(f, MasterKind::OddMaster);
    if (s->has_pairs(Parity::Odd)) return MasterHamiltonian(f, MasterKind::EvenMaster);
    throw Error(ErrorKind::Precondition, "a master Hamiltonian needs a cotangent or anticotangent chart");
}

void add_class(Output& o, const ShiftDatum& d) { o.extra["class"] = to_string(classify(d)); }

Output cmd_eval(Context& c) {
    Output o{"eval"};
    o.result = c.eval(c.a.expr);
    return o;
}

Output cmd_bracket(Context& c) {
    Output o{"bracket"};
    Poly f = c.eval(c.a.lhs), g = c.eval(c.a.rhs);
    const SpacePtr& s = f.space();
    std::string kind = c.a.kind;
    if (kind.empty()) {
        bool even = s->has_pairs(Parity::Even), odd = s->has_pairs(Parity::Odd);
        if (even && odd) throw Error(ErrorKind::Parse, "chart carries both brackets; pass --kind even|odd");
        if (!even && !odd) throw Error(ErrorKind::Precondition, "chart has no canonical bracket");
        kind = even ? "even" : "odd";
    }
    const auto conv = c.a.symmetric ? OddConvention::Symmetric : OddConvention::Antisymmetric;
    o.result = kind == "even" ? bilinear([](const Poly& u, const Poly& v) { return poisson(u, v); }, f, g)
                              : bilinear([conv](const Poly& u, const Poly& v) { return schouten(u, v, conv); }, f, g);
    o.extra["kind"] = kind;
    return o;
}

Output cmd_derived(Context& c) {
    Output o{"derived"};
    auto m = master_of(c.eval(c.a.h));
    std::vector<Poly> args;
    for (const auto& s : c.a.list) args.push_back(c.eval_on(s, m.value().space()));
    o.result = m.kind() == MasterKind::OddMaster
                   ? higher_schouten(m, args)
                   : higher_poisson(m, args, c.a.symmetric ? OddConvention::Symmetric : OddConvention::Antisymmetric);
    o.residual("self", m.self_commutator());
    o.extra["arity"] = args.size();
    return o;
}

Output cmd_koszul(Context& c) {
    Output o{"koszul"};
    HigherPoissonStructure p(c.eval(c.a.p));
    auto forms_chart_ = forms_chart(p.multivectors());
    std::vector<Poly> forms;
    std::vector<expr::NodePtr> nodes;
    if (!c.a.forms.empty()) nodes = expr::parse_list(read_input(c.a.forms));
    for (const auto& text : c.a.list) nodes.push_back(expr::parse(read_input(text)));
    for (const auto& n : nodes) {
        Poly w = c.ev.eval(n, forms_chart_);
        forms.push_back(same_chart(w.space(), forms_chart_) ? w : embed(w, forms_chart_));
    }
    o.result = higher_koszul(p, forms);
    o.residual("[[P,P]]", p.self_commutator());
    return o;
}

Output cmd_alpha(Context& c) {
    Output o{"alpha"};
    Poly p = c.eval(c.a.p);
    Poly a = alpha(p);
    Poly e = alpha_explicit(p);
    o.result = c.a.explicit_form ? e : a;
    o.residual("alpha-explicit", a - e);
    return o;
}

ShiftDatum datum_of(Context& c) {
    Poly h = c.eval(c.a.h);
    Poly r = c.eval_on(c.a.r, h.space());
    std::optional<Poly> t;
    if (!c.a.t.empty()) t = c.eval_on(c.a.t, h.space());
    return ShiftDatum(MasterHamiltonian(h, MasterKind::OddMaster), r, t);
}

Output cmd_shift(Context& c) {
    Output o{"shift"};
    auto d = datum_of(c);
    Poly h2 = shift(d);
    o.result = h2;
    o.residual("(H,H)", d.h.self_commutator());
    o.residual("(H',H')", poisson(h2, h2));
    o.residual("master", master_equation_residual(d));
    add_class(o, d);
    return o;
}

Output cmd_decompose(Context& c) {
    Output o{"decompose"};
    auto d = datum_of(c);
    auto parts = coboundary_decompose(d);
    o.result = parts.sum();
    o.values = {{"H", parts.h}, {"(H,r)", parts.coboundary}, {"1/2{r,r}_H", parts.curvature}};
    o.residual("sum-shift", parts.sum() - shift(d));
    add_class(o, d);
    return o;
}

Output cmd_weights(Context& c) {
    Output o{"weights"};
    Poly f = c.eval(c.a.expr);
    o.result = f;
    json per = json::array();
    for (const auto& [m, k] : f.terms()) per.push_back(to_text(m, *f.space()) + " " + to_text(weight_of(m, *f.space())));
    o.extra["terms"] = per;
    return o;
}

Output cmd_mx(Context& c) {
    Output o{"mx"};
    Poly f = c.eval(c.a.expr);
    auto mx = mx_transform(f.space());
    o.result = mx.apply(f);
    json img = json::array();
    for (std::size_t i = 0; i < mx.images.size(); ++i)
        if (mx.signs[i] != 1) img.push_back(f.space()->variable(i).name + " -> " + to_text(mx.images[i]));
    o.extra["signed"] = img;
    return o;
}

Output cmd_verify_jacobi(Context& c) {
    Output o{"verify jacobi"};
    const SpacePtr& s = c.doc.chart;
    PolyGenerator gen(c.opt.seed);
    VectorField q = c.a.field.empty() ? homological_field(gen, s, false) : parse_field(c.ev, s, read_input(c.a.field));
    auto l = extract_linfty(q, c.opt.max_arity);
    auto rep = verify_generalized_jacobi(l, c.opt.max_arity);
    o.extra["field"] = to_text(q);
    o.extra["max_arity"] = c.opt.max_arity;
    o.extra["residual_terms"] = rep.residual_terms;
    if (rep.first_failure) {
        json in = json::array();
        for (auto i : rep.first_failure->inputs) in.push_back(s->variable(i).name);
        o.extra["first_failure"] = {{"arity", rep.first_failure->arity}, {"inputs", in}};
    }
    o.ok = rep.ok();
    return o;
}

Output cmd_verify_master(Context& c) {
    Output o{"verify master"};
    auto m = master_of(c.eval(c.a.expr));
    o.result = m.self_commutator();
    o.extra["kind"] = m.kind() == MasterKind::OddMaster ? "odd" : "even";
    o.ok = o.result->is_zero();
    return o;
}

Output cmd_verify_ybe(Context& c) {
    Output o{"verify ybe"};
    auto d = datum_of(c);
    o.result = generalized_ybe_residual(d);
    o.residual("master", master_equation_residual(d));
    add_class(o, d);
    o.ok = o.result->is_zero();
    return o;
}

Output cmd_verify_alpha(Context& c) {
    Output o{"verify alpha"};
    const SpacePtr& s = c.doc.chart;
    if (s->provenance() != Provenance::Anticotangent) throw Error(ErrorKind::Precondition, "verify alpha needs an anticotangent chart");
    std::vector<std::pair<Poly, Poly>> cases;
    if (!c.a.p.empty() || !c.a.q.empty()) {
        if (c.a.p.empty() || c.a.q.empty()) throw Error(ErrorKind::Parse, "pass both --P and --Q, or neither");
        cases.emplace_back(c.eval(c.a.p), c.eval(c.a.q));
    } else {
        PolyGenerator gen(c.opt.seed);
        for (unsigned i = 0; i < c.a.samples; ++i) {
            PolyGenerator::Shape sh;
            sh.parity = gen.parity();
            Poly p = gen.poly(s, sh);
            sh.parity = gen.parity();
            cases.emplace_back(p, gen.poly(s, sh));
        }
    }
    std::vector<Poly> intertwine(cases.size(), Poly(s)), closed(cases.size(), Poly(s));
    parallel_for(cases.size(), c.opt.jobs, [&](std::size_t i) {
        const auto& [p, q] = cases[i];
        if (!p.is_homogeneous() || !q.is_homogeneous()) throw Error(ErrorKind::Parity, "P and Q must be homogeneous");
        intertwine[i] = alpha(schouten(p, q, OddConvention::Symmetric)) -
                        poisson(alpha(p), alpha(q)) * sign(p.parity() == Parity::Even);
        closed[i] = alpha_explicit(p) - alpha(p);
    });
    std::size_t fails = 0;
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < cases.size(); ++i)
        if (!intertwine[i].is_zero() || !closed[i].is_zero()) {
            ++fails;
            if (!first) first = i;
        }
    std::size_t show = first.value_or(0);
    o.residual("intertwining", intertwine[show]);
    o.residual("closed-form", closed[show]);
    o.extra["samples"] = cases.size();
    o.extra["failures"] = fails;
    o.ok = fails == 0;
    return o;
}

Output cmd_verify_cartan(Context& c) {
    Output o{"verify cartan"};
    SpacePtr m = c.doc.chart;
    if (m->provenance() == Provenance::Antitangent) m = m->parent();
    auto a = antitangent(m);
    std::vector<std::pair<VectorField, VectorField>> cases;
    if (!c.a.x.empty() || !c.a.y.empty()) {
        if (c.a.x.empty() || c.a.y.empty()) throw Error(ErrorKind::Parse, "pass both --X and --Y, or neither");
        cases.emplace_back(parse_field(c.ev, m, read_input(c.a.x)), parse_field(c.ev, m, read_input(c.a.y)));
    } else {
        PolyGenerator gen(c.opt.seed);
        for (unsigned i = 0; i < c.a.samples; ++i) {
            Parity px = gen.parity(), py = gen.parity();
            auto x = random_field(gen, m, px);
            cases.emplace_back(std::move(x), random_field(gen, m, py));
        }
    }
    std::vector<std::optional<VectorField>> cartan(cases.size()), commute(cases.size());
    const auto d = de_rham(a);
    parallel_for(cases.size(), c.opt.jobs, [&](std::size_t i) {
        const auto& [x, y] = cases[i];
        auto ix = interior(x, a), iy = interior(y, a);
        VectorField rhs = commutator(commutator(d, ix), iy);
        rhs *= sign(x.parity() == Parity::Odd);
        cartan[i] = interior(commutator(x, y), a) - rhs;
        commute[i] = commutator(ix, iy);
    });
    std::size_t fails = 0;
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < cases.size(); ++i)
        if (!cartan[i]->is_zero() || !commute[i]->is_zero()) {
            ++fails;
            if (!first) first = i;
        }
    std::size_t show = first.value_or(0);
    o.extra["cartan_residual"] = to_text(*cartan[show]);
    o.extra["interior_commutator"] = to_text(*commute[show]);
    o.extra["samples"] = cases.size();
    o.extra["failures"] = fails;
    o.ok = fails == 0;
    return o;
}

Output cmd_verify_koszul_classical(Context& c) {
    Output o{"verify koszul-classical"};
    HigherPoissonStructure p(c.eval(c.a.p));
    auto m = underlying_base(p.multivectors());
    std::vector<Poly> samples;
    if (!c.a.functions.empty())
        for (const auto& n : expr::parse_list(read_input(c.a.functions))) {
            Poly f = c.ev.eval(n, m);
            samples.push_back(same_chart(f.space(), m) ? f : embed(f, m));
        }
    auto rep = classical_koszul_check(p, samples);
    json failed = json::array();
    for (const auto& chk : rep.checks)
        if (!chk.residual.is_zero()) failed.push_back(chk.name + ": " + to_text(chk.residual));
    o.residual("[[P,P]]", p.self_commutator());
    o.extra["checks"] = rep.checks.size();
    o.extra["failed"] = failed;
    o.ok = rep.ok();
    return o;
}

Output cmd_suite(const Options& opt, const Args& a) {
    Output o{"suite"};
    if (a.manifest) {
        o.listing = conformance::manifest();
        json cases = json::array();
        for (const auto& c : conformance::registry())
            cases.push_back({{"id", c.id}, {"tags", c.tags}, {"identity", c.identity}, {"fixture", c.fixture},
                             {"samples", c.samples}, {"known_discrepancy", c.known_discrepancy}});
        o.detail = cases;
        return o;
    }
    conformance::SuiteOptions so;
    so.seed = opt.seed;
    so.jobs = opt.jobs;
    if (!a.filter.empty()) {
        std::stringstream ss(a.filter);
        for (std::string tag; std::getline(ss, tag, ',');)
            if (!tag.empty()) so.filter.insert(tag);
    }
    auto rep = conformance::run_suite(so);
    for (const auto& r : rep.results) {
        o.listing += (r.passed ? "pass " : "FAIL ") + r.id;
        if (r.known_discrepancy) o.listing += "  (known discrepancy)";
        if (!r.passed && r.counterexample)
            o.listing += "\n    degree " + std::to_string(r.counterexample_size->degree) + ", " +
                         std::to_string(r.counterexample_size->variables) + " variables: " + r.counterexample->instance;
        o.listing += "\n";
    }
    o.detail = json::parse(conformance::to_json(rep, false));
    o.extra["passed"] = rep.passed();
    o.extra["failed"] = rep.failed();
    o.ok = rep.failed() == 0;
    return o;
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse:
        case ErrorKind::ChartMismatch: return InputError;
        case ErrorKind::Parity:
        case ErrorKind::Precondition: return MathError;
        case ErrorKind::Internal: return InternalError;
    }
    return InternalError;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact brackets of graded-commutative polynomials", "superbracket"};
    app.require_subcommand(1);
    Options opt;
    Args a;
    auto* json_flag = app.add_flag("--json", opt.json, "JSON output");
    app.add_flag("--text", opt.text, "plain text output (default)")->excludes(json_flag);
    app.add_option("--chart", opt.chart, "chart definition file");
    app.add_option("--max-arity", opt.max_arity, "largest bracket arity (verify jacobi)")->check(CLI::Range(0u, 12u));
    app.add_option("--seed", opt.seed, "seed of randomized checks (default 1)");
    app.add_option("--jobs", opt.jobs, "worker threads for sampled checks")->check(CLI::Range(1u, 256u));

    auto sub = [&](CLI::App* parent, const char* name, const char* help) {
        auto* s = parent->add_subcommand(name, help);
        s->fallthrough();
        return s;
    };
    auto* eval = sub(&app, "eval", "evaluate an expression");
    eval->add_option("expr", a.expr)->required();
    auto* bracket = sub(&app, "bracket", "canonical bracket of two expressions");
    bracket->add_option("lhs", a.lhs)->required();
    bracket->add_option("rhs", a.rhs)->required();
    bracket->add_option("--kind", a.kind)->check(CLI::IsMember({"even", "odd"}));
    bracket->add_flag("--symmetric", a.symmetric, "odd bracket in the symmetric convention");
    auto* derived = sub(&app, "derived", "higher derived bracket of a master Hamiltonian");
    derived->add_option("--H", a.h, "master Hamiltonian")->required();
    derived->add_option("args", a.list, "arguments");
    derived->add_flag("--symmetric", a.symmetric, "odd bracket in the symmetric convention");
    auto* koszul = sub(&app, "koszul", "higher Koszul bracket of forms");
    koszul->add_option("--P", a.p)->required();
    koszul->add_option("form", a.list, "forms, one per argument");
    koszul->add_option("--forms", a.forms, "comma-separated forms (alternative to positional arguments)");
    auto* alpha_cmd = sub(&app, "alpha", "K_P = alpha(P)");
    alpha_cmd->add_option("--P", a.p)->required();
    alpha_cmd->add_flag("--explicit", a.explicit_form, "print the closed form");
    auto* shift_cmd = sub(&app, "shift", "argument shift H(x, p + t dr/dx)");
    shift_cmd->add_option("--H", a.h)->required();
    shift_cmd->add_option("--r", a.r)->required();
    shift_cmd->add_option("--t", a.t, "even parameter");
    auto* decompose = sub(&app, "decompose", "H + (H,r) + 1/2{r,r}_H");
    decompose->add_option("--H", a.h)->required();
    decompose->add_option("--r", a.r)->required();
    decompose->add_option("--t", a.t, "even parameter");
    auto* weights = sub(&app, "weights", "bi-weights of an expression");
    weights->add_option("expr", a.expr)->required();
    auto* mx = sub(&app, "mx", "Mackenzie-Xu relabeling");
    mx->add_option("expr", a.expr)->required();
    auto* suite = sub(&app, "suite", "run the conformance suite");
    suite->add_option("--filter", a.filter, "comma-separated tags or case ids");
    suite->add_flag("--manifest", a.manifest, "list the registered cases instead of running them");

    auto* verify = sub(&app, "verify", "check an identity");
    verify->require_subcommand(1);
    auto* v_jacobi = sub(verify, "jacobi", "generalized Jacobi identities of a homological field");
    v_jacobi->add_option("--Q", a.field, "field 'x: expr; y: expr' (random homological field if absent)");
    auto* v_master = sub(verify, "master", "self-commutator of a master Hamiltonian");
    v_master->add_option("expr", a.expr)->required();
    auto* v_ybe = sub(verify, "ybe", "generalized Yang-Baxter residual of a shift");
    v_ybe->add_option("--H", a.h)->required();
    v_ybe->add_option("--r", a.r)->required();
    auto* v_alpha = sub(verify, "alpha", "alpha intertwines the brackets");
    v_alpha->add_option("--P", a.p);
    v_alpha->add_option("--Q", a.q);
    v_alpha->add_option("--samples", a.samples, "random pairs when --P/--Q are absent");
    auto* v_cartan = sub(verify, "cartan", "Cartan identities for interior products");
    v_cartan->add_option("--X", a.x);
    v_cartan->add_option("--Y", a.y);
    v_cartan->add_option("--samples", a.samples, "random pairs when --X/--Y are absent");
    auto* v_koszul = sub(verify, "koszul-classical", "classical Koszul bracket identities");
    v_koszul->add_option("--P", a.p)->required();
    v_koszul->add_option("--functions", a.functions, "comma-separated sample functions on the base");

    try {
        std::vector<std::string> rev(argv.rbegin(), argv.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    }

    try {
        Output o;
        if (suite->parsed()) {
            o = cmd_suite(opt, a);
        } else {
            if (opt.chart.empty()) throw Error(ErrorKind::Parse, "--chart is required");
            Context c(opt, a, load_chart_file(opt.chart));
            if (eval->parsed()) o = cmd_eval(c);
            else if (bracket->parsed()) o = cmd_bracket(c);
            else if (derived->parsed()) o = cmd_derived(c);
            else if (koszul->parsed()) o = cmd_koszul(c);
            else if (alpha_cmd->parsed()) o = cmd_alpha(c);
            else if (shift_cmd->parsed()) o = cmd_shift(c);
            else if (decompose->parsed()) o = cmd_decompose(c);
            else if (weights->parsed()) o = cmd_weights(c);
            else if (mx->parsed()) o = cmd_mx(c);
            else if (v_jacobi->parsed()) o = cmd_verify_jacobi(c);
            else if (v_master->parsed()) o = cmd_verify_master(c);
            else if (v_ybe->parsed()) o = cmd_verify_ybe(c);
            else if (v_alpha->parsed()) o = cmd_verify_alpha(c);
            else if (v_cartan->parsed()) o = cmd_verify_cartan(c);
            else if (v_koszul->parsed()) o = cmd_verify_koszul_classical(c);
            else throw Error(ErrorKind::Internal, "no command dispatched");
        }
        if (opt.json)
            write_json(o, out);
        else
            write_text(o, out);
        return o.ok.value_or(true) ? Ok : MathError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return InternalError;
    }
}

}  // namespace superbracket::cli
