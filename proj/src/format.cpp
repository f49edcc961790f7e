#include "superbracket/format.hpp"

namespace superbracket {

std::string to_text(const Monomial& m, const Space& s) {
    std::string out;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (!m.exps[i]) continue;
        if (!out.empty()) out += '*';
        out += s.variable(i).name;
        if (m.exps[i] > 1) out += '^' + std::to_string(m.exps[i]);
    }
    return out.empty() ? "1" : out;
}

std::string to_text(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        Rational a = abs(c);
        if (first) {
            if (c < 0) out += '-';
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        if (m.is_one()) {
            out += a.get_str();
        } else {
            if (a != 1) out += a.get_str() + '*';
            out += to_text(m, *f.space());
        }
    }
    return out;
}

std::string to_text(const VectorField& x) {
    std::string out;
    for (std::size_t i = 0; i < x.coefficients().size(); ++i) {
        const auto& c = x.coefficient(i);
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + to_text(c) + ")*d/d" + x.space()->variable(i).name;
    }
    return out.empty() ? "0" : out;
}

std::string to_text(Weight w) { return "(" + std::to_string(w.w1) + "," + std::to_string(w.w2) + ")"; }

}  // namespace superbracket
