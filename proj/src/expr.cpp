#include "hdjac/expr.hpp"

#include <cctype>
#include <sstream>

namespace hdjac {

namespace {

// Recursive-descent parser producing PolyZ directly; the mod-p entry point
// reduces afterwards.
class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& vars)
        : text_(text), vars_(vars), arity_(static_cast<std::uint32_t>(vars.size())) {}

    PolyZ parse() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("empty input", 0);
        PolyZ e = expr();
        skip_ws();
        if (pos_ < text_.size())
            throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
        return e;
    }

private:
    std::string_view text_;
    const std::vector<std::string>& vars_;
    std::uint32_t arity_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    PolyZ expr() {
        PolyZ acc = term();
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    PolyZ term() {
        PolyZ acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    PolyZ factor() {
        if (eat('-')) return -factor();
        PolyZ base = atom();
        if (eat('^')) {
            std::size_t at = pos_;
            skip_ws();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("malformed exponent: expected a natural number", at);
            std::uint64_t e = natural();
            if (e > 100000) throw ParseError("exponent too large", at);
            PolyZ r = PolyZ::constant(arity_, 1);
            PolyZ sq = base;
            while (e) {
                if (e & 1) r = r * sq;
                e >>= 1;
                if (e) sq = sq * sq;
            }
            return r;
        }
        return base;
    }

    std::uint64_t natural() {
        skip_ws();
        std::uint64_t v = 0;
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > (1ULL << 40)) throw ParseError("number too large for exponent", start);
            ++pos_;
        }
        return v;
    }

    PolyZ atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            BigInt v(std::string(text_.substr(start, pos_ - start)));
            return PolyZ::constant(arity_, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            for (std::uint32_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == name) return PolyZ::variable(arity_, i);
            throw ParseError("unknown variable '" + name + "'", start);
        }
        if (c == '(') {
            ++pos_;
            PolyZ e = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }
};

void append_monomial(std::ostream& os, const Monomial& m, const std::vector<std::string>& vars,
                     bool coeff_printed) {
    bool any = false;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (any || coeff_printed) os << "*";
        os << vars[i];
        if (m.exps[i] > 1) os << "^" << m.exps[i];
        any = true;
    }
}

}  // namespace

PolyZ parse_poly_z(std::string_view text, const std::vector<std::string>& vars) {
    return Parser(text, vars).parse();
}

PolyMod parse_poly_mod(std::string_view text, const std::vector<std::string>& vars,
                       std::uint32_t p) {
    return reduce_mod_p(parse_poly_z(text, vars), p);
}

std::string format_poly(const PolyZ& g, const std::vector<std::string>& vars) {
    if (g.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, coeff] : g.terms()) {
        BigInt c = coeff;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        bool show_coeff = (c != 1) || mono.degree() == 0;
        if (show_coeff) os << c;
        append_monomial(os, mono, vars, show_coeff);
        first = false;
    }
    return os.str();
}

std::string format_poly(const PolyMod& g, const std::vector<std::string>& vars) {
    if (g.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, coeff] : g.terms()) {
        if (!first) os << " + ";
        bool show_coeff = (coeff != 1) || mono.degree() == 0;
        if (show_coeff) os << coeff;
        append_monomial(os, mono, vars, show_coeff);
        first = false;
    }
    return os.str();
}

std::vector<std::string> split_var_names(std::string_view list) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw std::invalid_argument("empty variable name in list");
        out.push_back(cur);
        cur.clear();
    };
    for (char c : list) {
        if (c == ',') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            if (cur.empty() && !(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
                throw std::invalid_argument("variable names must start with a letter");
            cur += c;
        }
    }
    flush();
    return out;
}

}  // namespace hdjac
