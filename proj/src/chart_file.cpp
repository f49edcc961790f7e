#include "superbracket/chart_file.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "superbracket/geometry.hpp"

namespace superbracket {

expr::Evaluator ChartDocument::evaluator() const {
    expr::Evaluator ev(chart);
    for (const auto& [name, value] : lets) ev.define(name, value);
    return ev;
}

namespace {

std::vector<std::string> words(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

// key=value options of `apply bundle`
std::map<std::string, std::string> options(const std::vector<std::string>& w, std::size_t from, expr::Location loc) {
    std::map<std::string, std::string> out;
    for (std::size_t i = from; i < w.size(); ++i) {
        auto eq = w[i].find('=');
        if (eq == std::string::npos) throw expr::ParseError(loc, "expected key=value, got '" + w[i] + "'");
        out[w[i].substr(0, eq)] = w[i].substr(eq + 1);
    }
    return out;
}

}  // namespace

ChartDocument load_chart(std::string_view text) {
    std::vector<std::pair<std::string, Parity>> base;
    std::vector<std::string> params;
    std::set<std::string> declared;
    SpacePtr chart;
    std::vector<std::pair<std::string, Poly>> values;

    auto current = [&]() {
        if (!chart) {
            chart = base_space(base);
            for (const auto& p : params) chart = with_parameter(chart, p);
        }
        return chart;
    };

    std::istringstream in{std::string(text)};
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto w = words(line);
        if (w.empty()) continue;
        expr::Location loc{lineno, static_cast<int>(line.find_first_not_of(" \t")) + 1};
        const std::string& cmd = w[0];
        if (cmd == "var") {
            if (w.size() != 3) throw expr::ParseError(loc, "usage: var <name> even|odd|param");
            const std::string& name = w[1];
            if (!declared.insert(name).second) throw expr::ParseError(loc, "duplicate variable '" + name + "'");
            if (w[2] == "param") {
                if (chart)
                    chart = with_parameter(chart, name);
                else
                    params.push_back(name);
            } else if (w[2] == "even" || w[2] == "odd") {
                Parity p = w[2] == "odd" ? Parity::Odd : Parity::Even;
                if (chart)
                    chart = with_coordinates(chart, {{name, p}});
                else
                    base.emplace_back(name, p);
            } else {
                throw expr::ParseError(loc, "parity must be even, odd or param");
            }
        } else if (cmd == "apply") {
            if (w.size() < 2) throw expr::ParseError(loc, "usage: apply <construction>");
            SpacePtr s = current();
            if (w[1] == "cotangent" && w.size() == 2) {
                chart = cotangent(s);
            } else if (w[1] == "anticotangent" && w.size() == 2) {
                chart = anticotangent(s);
            } else if (w[1] == "antitangent" && w.size() == 2) {
                chart = antitangent(s);
            } else if (w[1] == "bundle") {
                auto opt = options(w, 2, loc);
                std::size_t rank = 0;
                bool shifted = false;
                for (const auto& [k, v] : opt) {
                    if (k == "rank") {
                        try {
                            rank = std::stoul(v);
                        } catch (const std::exception&) {
                            throw expr::ParseError(loc, "rank must be a number");
                        }
                    } else if (k == "shifted") {
                        if (v != "true" && v != "false") throw expr::ParseError(loc, "shifted must be true or false");
                        shifted = v == "true";
                    } else if (k != "parities") {
                        throw expr::ParseError(loc, "unknown bundle option '" + k + "'");
                    }
                }
                std::vector<Parity> par(rank, Parity::Even);
                if (auto it = opt.find("parities"); it != opt.end()) {
                    if (it->second.size() != rank) throw expr::ParseError(loc, "parities must list one e/o per fiber");
                    for (std::size_t i = 0; i < rank; ++i) {
                        char c = it->second[i];
                        if (c != 'e' && c != 'o') throw expr::ParseError(loc, "parities must be a string of e and o");
                        par[i] = c == 'o' ? Parity::Odd : Parity::Even;
                    }
                }
                chart = vector_bundle(s, par, shifted);
            } else {
                throw expr::ParseError(loc, "unknown construction '" + w[1] + "'");
            }
            for (const auto& v : chart->variables()) {
                if (chart->index(v.name) != static_cast<std::size_t>(&v - chart->variables().data()))
                    throw expr::ParseError(loc, "construction produces duplicate name '" + v.name + "'");
                declared.insert(v.name);
            }
        } else if (cmd == "let") {
            auto eq = line.find('=');
            if (w.size() < 4 || w[2] != "=" || eq == std::string::npos)
                throw expr::ParseError(loc, "usage: let <name> = <expr>");
            const std::string& name = w[1];
            if (!declared.insert(name).second) throw expr::ParseError(loc, "duplicate name '" + name + "'");
            std::string body = line.substr(eq + 1);
            expr::Evaluator ev(current());
            for (const auto& [n, v] : values) ev.define(n, v);
            try {
                values.emplace_back(name, ev.eval(expr::parse(body)));
            } catch (const expr::ParseError& e) {
                // positions inside the body -> positions in the file
                expr::Location l = e.location();
                int col = l.line == 1 ? static_cast<int>(eq) + 1 + l.column : l.column;
                throw expr::ParseError({lineno + l.line - 1, col}, e.message());
            }
        } else {
            throw expr::ParseError(loc, "unknown directive '" + cmd + "'");
        }
    }
    ChartDocument doc;
    doc.chart = current();
    for (const auto& [name, v] : values) {
        try {
            doc.lets.emplace_back(name, same_chart(v.space(), doc.chart) ? v : embed(v, doc.chart));
        } catch (const Error&) {
            doc.lets.emplace_back(name, v);  // lives on another chart (e.g. an alpha image)
        }
    }
    return doc;
}

ChartDocument load_chart_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Parse, "cannot open chart file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return load_chart(ss.str());
}

}  // namespace superbracket
