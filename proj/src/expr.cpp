#include "superbracket/expr.hpp"

#include <cctype>

#include "superbracket/brackets.hpp"
#include "superbracket/geometry.hpp"
#include "superbracket/homotopy.hpp"
#include "superbracket/koszul.hpp"
#include "superbracket/quasitriangular.hpp"

namespace superbracket::expr {

ParseError::ParseError(Location loc, const std::string& msg)
    : Error(ErrorKind::Parse, "line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column) + ": " + msg),
      loc_(loc), msg_(msg) {}

namespace {

enum class Tok { Number, Ident, Partial, Op, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;  // identifier / operator / partial variable
    Rational value;
    Location loc;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
    Location loc_;
    Token cur_;

    char at(std::size_t k) const { return k < s_.size() ? s_[k] : '\0'; }

    void bump() {
        if (s_[i_] == '\n') {
            ++loc_.line;
            loc_.column = 1;
        } else {
            ++loc_.column;
        }
        ++i_;
    }

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    std::string digits() {
        std::string out;
        while (std::isdigit(static_cast<unsigned char>(at(i_)))) {
            out += at(i_);
            bump();
        }
        return out;
    }

    std::string ident() {
        std::string out;
        while (ident_char(at(i_))) {
            out += at(i_);
            bump();
        }
        return out;
    }

    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) bump();
        cur_ = Token{};
        cur_.loc = loc_;
        if (i_ >= s_.size()) return;
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            if (at(i_) == '/' && std::isdigit(static_cast<unsigned char>(at(i_ + 1)))) {
                bump();
                std::string den = digits();
                if (mpz_class(den) == 0) throw ParseError(cur_.loc, "zero denominator");
                num += "/" + den;
            }
            cur_.kind = Tok::Number;
            cur_.value = Rational(num);
            cur_.value.canonicalize();
            cur_.text = num;
            return;
        }
        if (c == 'd' && at(i_ + 1) == '/' && at(i_ + 2) == 'd' && ident_start(at(i_ + 3))) {
            bump();
            bump();
            bump();
            cur_.kind = Tok::Partial;
            cur_.text = ident();
            return;
        }
        if (ident_start(c)) {
            cur_.kind = Tok::Ident;
            cur_.text = ident();
            return;
        }
        if (std::string_view("+-*^()[],;").find(c) != std::string_view::npos) {
            cur_.kind = Tok::Op;
            cur_.text = std::string(1, c);
            bump();
            return;
        }
        throw ParseError(loc_, std::string("unexpected character '") + c + "'");
    }
};

std::shared_ptr<Node> make(NodeKind k, Location loc) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->loc = loc;
    return n;
}

bool is_function(const std::string& s) {
    return s == "pb" || s == "sb" || s == "hb" || s == "koszul" || s == "shift" || s == "alpha" || s == "d";
}

class Parser {
public:
    explicit Parser(std::string_view s) : lex_(s) {}

    NodePtr expression() {
        Location loc = lex_.peek().loc;
        std::vector<NodePtr> terms;
        std::vector<int> signs;
        int sign = 1;
        terms.push_back(term());
        signs.push_back(sign);
        while (is_op("+") || is_op("-")) {
            signs.push_back(lex_.take().text == "+" ? 1 : -1);
            terms.push_back(term());
        }
        if (terms.size() == 1) return terms.front();
        auto n = make(NodeKind::Sum, loc);
        n->children = std::move(terms);
        n->signs = std::move(signs);
        return n;
    }

    std::vector<NodePtr> list() {
        std::vector<NodePtr> out{expression()};
        while (is_op(",")) {
            lex_.take();
            out.push_back(expression());
        }
        return out;
    }

    void finish() {
        if (lex_.peek().kind != Tok::End) fail("unexpected '" + lex_.peek().text + "'");
    }

private:
    Lexer lex_;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(lex_.peek().loc, msg); }

    bool is_op(const char* op) const { return lex_.peek().kind == Tok::Op && lex_.peek().text == op; }

    void expect(const char* op) {
        if (!is_op(op)) fail(std::string("expected '") + op + "'");
        lex_.take();
    }

    NodePtr term() {
        Location loc = lex_.peek().loc;
        std::vector<NodePtr> factors{unary()};
        while (is_op("*")) {
            lex_.take();
            factors.push_back(unary());
        }
        if (factors.size() == 1) return factors.front();
        auto n = make(NodeKind::Product, loc);
        n->children = std::move(factors);
        return n;
    }

    NodePtr unary() {
        if (is_op("-")) {
            Location loc = lex_.take().loc;
            auto n = make(NodeKind::Negate, loc);
            n->children.push_back(unary());
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (!is_op("^")) return base;
        Location loc = lex_.take().loc;
        if (lex_.peek().kind != Tok::Number || !lex_.peek().value.get_den().fits_uint_p() ||
            lex_.peek().value.get_den() != 1 || !lex_.peek().value.get_num().fits_uint_p())
            fail("exponent must be a non-negative integer");
        auto n = make(NodeKind::Power, base->loc);
        (void)loc;
        n->exponent = static_cast<unsigned>(lex_.take().value.get_num().get_ui());
        n->children.push_back(base);
        return n;
    }

    NodePtr atom() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::Number: {
                auto n = make(NodeKind::Number, t.loc);
                n->number = lex_.take().value;
                return n;
            }
            case Tok::Partial: {
                auto n = make(NodeKind::Partial, t.loc);
                n->name = lex_.take().text;
                expect("(");
                n->children.push_back(expression());
                expect(")");
                return n;
            }
            case Tok::Ident: {
                Token id = lex_.take();
                if (is_function(id.text) && (is_op("(") || (id.text == "hb" && is_op("["))))
                    return call(id);
                auto n = make(NodeKind::Variable, id.loc);
                n->name = id.text;
                return n;
            }
            case Tok::Op:
                if (t.text == "(") {
                    lex_.take();
                    NodePtr e = expression();
                    expect(")");
                    return e;
                }
                fail("unexpected '" + t.text + "'");
            case Tok::End: fail("unexpected end of input");
        }
        fail("malformed expression");
    }

    NodePtr call(const Token& id) {
        auto n = make(NodeKind::Call, id.loc);
        n->name = id.text;
        if (id.text == "hb") {
            expect("[");
            if (lex_.peek().kind != Tok::Number || lex_.peek().value.get_den() != 1 ||
                !lex_.peek().value.get_num().fits_uint_p())
                fail("bracket arity must be a non-negative integer");
            n->exponent = static_cast<unsigned>(lex_.take().value.get_num().get_ui());
            expect("]");
        }
        expect("(");
        n->children.push_back(expression());
        const std::string& f = id.text;
        if (f == "pb" || f == "sb") {
            expect(",");
            n->children.push_back(expression());
        } else if (f == "hb" || f == "koszul") {
            if (is_op(";")) {
                lex_.take();
                for (auto& a : list()) n->children.push_back(a);
            } else if (!(f == "hb" && n->exponent == 0)) {
                fail("expected ';'");
            }
            if (f == "hb" && n->children.size() - 1 != n->exponent)
                throw ParseError(id.loc, "hb[" + std::to_string(n->exponent) + "] takes " +
                                             std::to_string(n->exponent) + " arguments, got " +
                                             std::to_string(n->children.size() - 1));
            if (f == "koszul" && n->children.size() < 2) throw ParseError(id.loc, "koszul needs at least one form");
        } else if (f == "shift") {
            expect(";");
            n->children.push_back(expression());
            if (is_op(";")) {
                lex_.take();
                n->children.push_back(expression());
            }
        }
        if (is_op(",")) throw ParseError(lex_.peek().loc, f + ": too many arguments");
        expect(")");
        return n;
    }
};

// ------------------------------------------------------------------ printing

bool simple_atom(const Node& n) {
    switch (n.kind) {
        case NodeKind::Number: return n.number.get_den() == 1;
        case NodeKind::Variable:
        case NodeKind::Partial:
        case NodeKind::Call: return true;
        default: return false;
    }
}

std::string print_node(const Node& n);

std::string wrapped(const Node& n, bool parens) { return parens ? "(" + print_node(n) + ")" : print_node(n); }

std::string print_node(const Node& n) {
    switch (n.kind) {
        case NodeKind::Number: return n.number.get_str();
        case NodeKind::Variable: return n.name;
        case NodeKind::Sum: {
            std::string out;
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                const Node& c = *n.children[i];
                bool par = c.kind == NodeKind::Sum;
                if (i == 0)
                    out += (n.signs[i] < 0 ? "-" : "") + wrapped(c, par || (n.signs[i] < 0 && c.kind == NodeKind::Product));
                else
                    out += (n.signs[i] < 0 ? " - " : " + ") + wrapped(c, par);
            }
            return out;
        }
        case NodeKind::Product: {
            std::string out;
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                const Node& c = *n.children[i];
                if (i) out += '*';
                bool par = c.kind == NodeKind::Sum || c.kind == NodeKind::Product || (i > 0 && c.kind == NodeKind::Negate);
                out += wrapped(c, par);
            }
            return out;
        }
        case NodeKind::Negate: {
            const Node& c = *n.children[0];
            return "-" + wrapped(c, c.kind == NodeKind::Sum || c.kind == NodeKind::Product);
        }
        case NodeKind::Power: {
            const Node& c = *n.children[0];
            return wrapped(c, !simple_atom(c)) + "^" + std::to_string(n.exponent);
        }
        case NodeKind::Partial: return "d/d" + n.name + "(" + print_node(*n.children[0]) + ")";
        case NodeKind::Call: {
            std::string out = n.name;
            if (n.name == "hb") out += "[" + std::to_string(n.exponent) + "]";
            out += "(" + print_node(*n.children[0]);
            const bool comma = n.name == "pb" || n.name == "sb";
            for (std::size_t i = 1; i < n.children.size(); ++i) {
                bool first_arg = i == 1;
                out += comma ? ", " : (first_arg || n.name == "shift" ? "; " : ", ");
                out += print_node(*n.children[i]);
            }
            return out + ")";
        }
    }
    return "?";
}

}  // namespace

NodePtr parse(std::string_view text) {
    Parser p(text);
    NodePtr e = p.expression();
    p.finish();
    return e;
}

std::vector<NodePtr> parse_list(std::string_view text) {
    Parser p(text);
    auto out = p.list();
    p.finish();
    return out;
}

std::string print(const NodePtr& e) { return print_node(*e); }

bool equal(const NodePtr& a, const NodePtr& b) {
    if (a->kind != b->kind || a->number != b->number || a->name != b->name || a->exponent != b->exponent ||
        a->signs != b->signs || a->children.size() != b->children.size())
        return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!equal(a->children[i], b->children[i])) return false;
    return true;
}

// ---------------------------------------------------------------- evaluation

namespace {

// Bring b onto a's chart, or a onto b's.
void reconcile(Poly& a, Poly& b) {
    if (same_chart(a.space(), b.space())) return;
    try {
        b = embed(b, a.space());
        return;
    } catch (const Error&) {
    }
    a = embed(a, b.space());
}

Poly on_chart(const Poly& f, const SpacePtr& s) { return same_chart(f.space(), s) ? f : embed(f, s); }

}  // namespace

Evaluator::Evaluator(SpacePtr chart, std::map<std::string, Poly> names)
    : chart_(std::move(chart)), names_(std::move(names)) {}

void Evaluator::define(const std::string& name, Poly value) { names_.insert_or_assign(name, std::move(value)); }

Poly Evaluator::eval(const NodePtr& e, const SpacePtr& ctx) const {
    auto wrap = [&](auto&& fn) -> Poly {
        try {
            return fn();
        } catch (const ParseError&) {
            throw;
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::ChartMismatch) throw ParseError(e->loc, err.what());
            throw;
        }
    };
    switch (e->kind) {
        case NodeKind::Number: return Poly::constant(ctx, e->number);
        case NodeKind::Variable: {
            if (auto it = names_.find(e->name); it != names_.end()) {
                try {
                    return on_chart(it->second, ctx);
                } catch (const Error&) {
                    return it->second;
                }
            }
            if (!ctx->find(e->name)) throw ParseError(e->loc, "unknown identifier '" + e->name + "'");
            return Poly::variable(ctx, e->name);
        }
        case NodeKind::Sum:
            return wrap([&] {
                Poly acc = eval(e->children[0], ctx) * Rational(e->signs[0]);
                for (std::size_t i = 1; i < e->children.size(); ++i) {
                    Poly t = eval(e->children[i], ctx);
                    reconcile(acc, t);
                    if (e->signs[i] < 0)
                        acc -= t;
                    else
                        acc += t;
                }
                return acc;
            });
        case NodeKind::Product:
            return wrap([&] {
                Poly acc = eval(e->children[0], ctx);
                for (std::size_t i = 1; i < e->children.size(); ++i) {
                    Poly t = eval(e->children[i], ctx);
                    reconcile(acc, t);
                    acc = acc * t;
                }
                return acc;
            });
        case NodeKind::Negate: return -eval(e->children[0], ctx);
        case NodeKind::Power: return pow(eval(e->children[0], ctx), e->exponent);
        case NodeKind::Partial: {
            Poly f = eval(e->children[0], ctx);
            if (!f.space()->find(e->name)) throw ParseError(e->loc, "unknown variable '" + e->name + "' in derivative");
            return partial(f, e->name);
        }
        case NodeKind::Call: break;
    }
    const std::string& f = e->name;
    return wrap([&]() -> Poly {
        Poly head = eval(e->children[0], ctx);
        const SpacePtr& hs = head.space();
        auto args_on = [&](const SpacePtr& s) {
            std::vector<Poly> out;
            for (std::size_t i = 1; i < e->children.size(); ++i) out.push_back(on_chart(eval(e->children[i], s), s));
            return out;
        };
        if (f == "pb" || f == "sb") {
            Poly g = eval(e->children[1], ctx);
            reconcile(head, g);
            if (f == "pb") return bilinear([](const Poly& a, const Poly& b) { return poisson(a, b); }, head, g);
            return bilinear([](const Poly& a, const Poly& b) { return schouten(a, b); }, head, g);
        }
        if (f == "alpha") return alpha(head);
        if (f == "d") {
            if (hs->provenance() != Provenance::Antitangent)
                throw ParseError(e->loc, "d() needs a form chart (apply antitangent)");
            return d_form(head, hs);
        }
        if (f == "hb") {
            if (hs->has_pairs(Parity::Even) && head.parity_class() != ParityClass::Even)
                return higher_schouten(MasterHamiltonian(head, MasterKind::OddMaster), args_on(hs));
            if (hs->has_pairs(Parity::Odd))
                return higher_poisson(MasterHamiltonian(head, MasterKind::EvenMaster), args_on(hs));
            throw ParseError(e->loc, "hb needs a cotangent or anticotangent chart");
        }
        if (f == "koszul") return higher_koszul(HigherPoissonStructure(head), args_on(forms_chart(hs)));
        if (f == "shift") {
            auto rest = args_on(hs);
            std::optional<Poly> t;
            if (rest.size() > 1) t = rest[1];
            return shift(ShiftDatum(MasterHamiltonian(head, MasterKind::OddMaster), rest[0], t));
        }
        throw ParseError(e->loc, "unknown function '" + f + "'");
    });
}

}  // namespace superbracket::expr
