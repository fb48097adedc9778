#include "sokkt/problem_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace sokkt {

ParseError::ParseError(const std::string& msg, int line_, int column_)
    : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                         std::to_string(column_) + ")"),
      line(line_), column(column_) {}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

enum class Tok { Ident, Number, Equals, Star, Caret, Plus, Minus, LParen, RParen, Comma,
                 Separator, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double value = 0.0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_, ++col_;
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_, ++col_;
                continue;
            }
            break;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= text_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        const char c = text_[pos_];
        if (c == '\n' || c == ';') {
            tok_.kind = Tok::Separator;
            tok_.text = (c == '\n') ? "newline" : ";";
            ++pos_;
            if (c == '\n') ++line_, col_ = 1;
            else ++col_;
            return;
        }
        auto single = [&](Tok k, const char* s) {
            tok_.kind = k;
            tok_.text = s;
            ++pos_, ++col_;
        };
        switch (c) {
            case '=': single(Tok::Equals, "="); return;
            case '*': single(Tok::Star, "*"); return;
            case '^': single(Tok::Caret, "^"); return;
            case '+': single(Tok::Plus, "+"); return;
            case '-': single(Tok::Minus, "-"); return;
            case '(': single(Tok::LParen, "("); return;
            case ')': single(Tok::RParen, ")"); return;
            case ',': single(Tok::Comma, ","); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                    text_[pos_] == 'e' || text_[pos_] == 'E' ||
                    ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > start &&
                     (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
                ++pos_, ++col_;
            }
            tok_.kind = Tok::Number;
            tok_.text = text_.substr(start, pos_ - start);
            const auto res =
                std::from_chars(tok_.text.data(), tok_.text.data() + tok_.text.size(), tok_.value);
            if (res.ec != std::errc() || res.ptr != tok_.text.data() + tok_.text.size())
                throw ParseError("malformed number '" + tok_.text + "'", tok_.line, tok_.col);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_, ++col_;
            }
            tok_.kind = Tok::Ident;
            tok_.text = text_.substr(start, pos_ - start);
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    ParsedProblem run() {
        std::vector<std::pair<std::string, FunctionSpec>> objectives, constraints;
        std::string name;
        std::map<std::string, Vector> points, directions;
        Config cfg;
        GridOracleConfig grid;

        while (lex_.peek().kind != Tok::End) {
            if (lex_.peek().kind == Tok::Separator) {
                lex_.take();
                continue;
            }
            Token head = expect(Tok::Ident, "statement keyword");
            if (head.text == "n") {
                expect(Tok::Equals, "'='");
                Token num = expect(Tok::Number, "dimension");
                if (num.value <= 0 || num.value != std::floor(num.value))
                    throw ParseError("dimension must be a positive integer", num.line, num.col);
                n_ = static_cast<int>(num.value);
            } else if (head.text == "name") {
                expect(Tok::Equals, "'='");
                name = expect(Tok::Ident, "problem name").text;
            } else if (head.text == "objective" || head.text == "constraint") {
                require_dimension(head);
                Token fname = expect(Tok::Ident, "function name");
                expect(Tok::Equals, "'='");
                FunctionSpec f = parse_function();
                auto& dst = (head.text == "objective") ? objectives : constraints;
                for (const auto& [existing, unused] : dst)
                    if (existing == fname.text)
                        throw ParseError("duplicate function name '" + fname.text + "'",
                                         fname.line, fname.col);
                dst.emplace_back(fname.text, std::move(f));
            } else if (head.text == "point" || head.text == "direction") {
                require_dimension(head);
                Token pname = expect(Tok::Ident, "name");
                expect(Tok::Equals, "'='");
                Vector v = parse_vector();
                auto& dst = (head.text == "point") ? points : directions;
                dst[pname.text] = std::move(v);
            } else if (head.text == "config") {
                Token key = expect(Tok::Ident, "config key");
                expect(Tok::Equals, "'='");
                Token num = expect(Tok::Number, "config value");
                apply_config(key, num.value, cfg, grid);
            } else {
                throw ParseError("unknown statement '" + head.text + "'", head.line, head.col);
            }
            end_statement();
        }
        if (n_ <= 0) throw ParseError("missing dimension declaration 'n = ...'", 1, 1);
        if (objectives.empty()) throw ParseError("problem declares no objective", 1, 1);

        std::vector<FunctionSpec> objs, cons;
        for (auto& [nm, f] : objectives) objs.push_back(std::move(f));
        for (auto& [nm, f] : constraints) cons.push_back(std::move(f));
        ParsedProblem out{ProblemSpec(n_, std::move(objs), std::move(cons), name),
                          std::move(points), std::move(directions), cfg, grid};
        return out;
    }

private:
    Token expect(Tok kind, const char* what) {
        Token t = lex_.take();
        if (t.kind != kind)
            throw ParseError(std::string("expected ") + what + ", found '" + t.text + "'",
                             t.line, t.col);
        return t;
    }

    void require_dimension(const Token& at) {
        if (n_ <= 0)
            throw ParseError("'n = ...' must come before '" + at.text + "'", at.line, at.col);
    }

    void end_statement() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Separator) {
            lex_.take();
            return;
        }
        if (t.kind != Tok::End)
            throw ParseError("expected end of statement, found '" + t.text + "'", t.line, t.col);
    }

    int variable_index(const Token& t) const {
        if (t.text.size() < 2 || t.text[0] != 'x')
            throw ParseError("unknown symbol '" + t.text + "'", t.line, t.col);
        int idx = 0;
        for (size_t i = 1; i < t.text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t.text[i])))
                throw ParseError("unknown symbol '" + t.text + "'", t.line, t.col);
            idx = idx * 10 + (t.text[i] - '0');
        }
        if (idx < 1 || idx > n_)
            throw ParseError("unknown variable '" + t.text + "' (n = " + std::to_string(n_) + ")",
                             t.line, t.col);
        return idx - 1;
    }

    // affine = sum of (number ['*' var] | var) terms
    void parse_affine(Vector* normal, double* offset) {
        *normal = Vector::Zero(n_);
        *offset = 0.0;
        bool first = true;
        while (true) {
            double sign = 1.0;
            const Token& t = lex_.peek();
            if (t.kind == Tok::Plus || t.kind == Tok::Minus) {
                sign = (t.kind == Tok::Minus) ? -1.0 : 1.0;
                lex_.take();
            } else if (!first && t.kind != Tok::Plus && t.kind != Tok::Minus) {
                break;
            }
            first = false;
            Token term = lex_.take();
            if (term.kind == Tok::Number) {
                double c = sign * term.value;
                if (lex_.peek().kind == Tok::Star) {
                    lex_.take();
                    Token var = expect(Tok::Ident, "variable");
                    (*normal)[variable_index(var)] += c;
                } else {
                    *offset += c;
                }
            } else if (term.kind == Tok::Ident) {
                (*normal)[variable_index(term)] += sign;
            } else {
                throw ParseError("expected affine term, found '" + term.text + "'",
                                 term.line, term.col);
            }
            const Token& nxt = lex_.peek();
            if (nxt.kind != Tok::Plus && nxt.kind != Tok::Minus) break;
        }
    }

    FunctionSpec parse_function() {
        std::vector<Monomial> poly;
        std::vector<KinkTerm> kinks;
        bool first = true;
        while (true) {
            const Token& t = lex_.peek();
            double sign = 1.0;
            if (t.kind == Tok::Plus || t.kind == Tok::Minus) {
                sign = (t.kind == Tok::Minus) ? -1.0 : 1.0;
                lex_.take();
            } else if (!first) {
                break;
            }
            first = false;
            parse_term(sign, poly, kinks);
            const Token& nxt = lex_.peek();
            if (nxt.kind != Tok::Plus && nxt.kind != Tok::Minus) break;
        }
        if (poly.empty() && kinks.empty()) {
            const Token& t = lex_.peek();
            throw ParseError("empty function body", t.line, t.col);
        }
        return FunctionSpec(n_, std::move(poly), std::move(kinks));
    }

    void parse_term(double sign, std::vector<Monomial>& poly, std::vector<KinkTerm>& kinks) {
        double coeff = sign;
        std::vector<int> exps(n_, 0);
        bool have_kink = false;
        bool have_power = false;
        KinkTerm kink;

        bool expect_factor = true;
        while (expect_factor) {
            Token t = lex_.take();
            if (t.kind == Tok::Number) {
                coeff *= t.value;
            } else if (t.kind == Tok::Ident &&
                       (t.text == "plusquad" || t.text == "signquad")) {
                if (have_kink)
                    throw ParseError("at most one kink factor per term", t.line, t.col);
                if (have_power)
                    throw ParseError("kink factors cannot be multiplied by variables",
                                     t.line, t.col);
                have_kink = true;
                kink.kind = (t.text == "plusquad") ? KinkKind::PlusQuad : KinkKind::SignQuad;
                expect(Tok::LParen, "'('");
                parse_affine(&kink.normal, &kink.offset);
                expect(Tok::RParen, "')'");
                if (kink.normal.isZero())
                    throw ParseError("kink argument has no variable part", t.line, t.col);
            } else if (t.kind == Tok::Ident) {
                if (have_kink)
                    throw ParseError("kink factors cannot be multiplied by variables",
                                     t.line, t.col);
                const int idx = variable_index(t);
                int power = 1;
                if (lex_.peek().kind == Tok::Caret) {
                    lex_.take();
                    Token p = expect(Tok::Number, "exponent");
                    if (p.value < 0 || p.value != std::floor(p.value))
                        throw ParseError("exponent must be a natural number", p.line, p.col);
                    power = static_cast<int>(p.value);
                }
                exps[idx] += power;
                have_power = true;
                int deg = 0;
                for (int e : exps) deg += e;
                if (deg > Config::kPolyDegreeCap)
                    throw ParseError("monomial degree exceeds cap " +
                                         std::to_string(Config::kPolyDegreeCap),
                                     t.line, t.col);
            } else {
                throw ParseError("expected term factor, found '" + t.text + "'", t.line, t.col);
            }
            if (lex_.peek().kind == Tok::Star) {
                lex_.take();
            } else {
                expect_factor = false;
            }
        }

        if (have_kink) {
            kink.coeff = coeff;
            kinks.push_back(std::move(kink));
        } else {
            poly.push_back(Monomial{coeff, std::move(exps)});
        }
    }

    Vector parse_vector() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::LParen) {
            lex_.take();
            std::vector<double> vals;
            while (true) {
                vals.push_back(parse_signed_number());
                const Token& nxt = lex_.peek();
                if (nxt.kind == Tok::Comma) {
                    lex_.take();
                    continue;
                }
                break;
            }
            Token close = expect(Tok::RParen, "')'");
            if (static_cast<int>(vals.size()) != n_)
                throw ParseError("vector has " + std::to_string(vals.size()) +
                                     " coordinates, expected " + std::to_string(n_),
                                 close.line, close.col);
            Vector v(n_);
            for (int i = 0; i < n_; ++i) v[i] = vals[i];
            return v;
        }
        const double val = parse_signed_number();
        if (n_ != 1) {
            throw ParseError("vector has 1 coordinate, expected " + std::to_string(n_),
                             t.line, t.col);
        }
        Vector v(1);
        v[0] = val;
        return v;
    }

    double parse_signed_number() {
        double sign = 1.0;
        if (lex_.peek().kind == Tok::Minus || lex_.peek().kind == Tok::Plus) {
            sign = (lex_.peek().kind == Tok::Minus) ? -1.0 : 1.0;
            lex_.take();
        }
        Token num = expect(Tok::Number, "number");
        return sign * num.value;
    }

    void apply_config(const Token& key, double value, Config& cfg, GridOracleConfig& grid) {
        const std::string& k = key.text;
        if (k == "activity_tol") cfg.activity_tol = value;
        else if (k == "strict_tol") cfg.strict_tol = value;
        else if (k == "feas_tol") cfg.feas_tol = grid.feas_tol = value;
        else if (k == "dom_tol") cfg.dom_tol = grid.dom_tol = value;
        else if (k == "sandwich_rel_tol") cfg.sandwich_rel_tol = value;
        else if (k == "box_radius") cfg.box_radius = value;
        else if (k == "grid_radius") cfg.grid_radius = grid.radius = value;
        else if (k == "grid_resolution") cfg.grid_resolution = grid.resolution = static_cast<int>(value);
        else if (k == "samples") cfg.samples_per_branch = static_cast<int>(value);
        else if (k == "seed") cfg.seed = static_cast<std::uint64_t>(value);
        else if (k == "taylor_segments") cfg.taylor_segments = static_cast<int>(value);
        else
            throw ParseError("unknown config key '" + k + "'", key.line, key.col);
    }

    Lexer lex_;
    int n_ = 0;
};

void write_function(std::ostringstream& os, const FunctionSpec& f) {
    bool first = true;
    auto sep = [&](double coeff) {
        if (first) {
            if (coeff < 0) os << "-";
            first = false;
        } else {
            os << (coeff < 0 ? " - " : " + ");
        }
        return std::abs(coeff);
    };
    for (const auto& m : f.poly()) {
        const double c = sep(m.coeff);
        os << format_double(c);
        for (size_t i = 0; i < m.exponents.size(); ++i) {
            if (m.exponents[i] == 0) continue;
            os << "*x" << (i + 1);
            if (m.exponents[i] > 1) os << "^" << m.exponents[i];
        }
    }
    for (const auto& k : f.kinks()) {
        const double c = sep(k.coeff);
        os << format_double(c) << "*"
           << (k.kind == KinkKind::PlusQuad ? "plusquad" : "signquad") << "(";
        bool afirst = true;
        for (int i = 0; i < k.normal.size(); ++i) {
            if (k.normal[i] == 0.0) continue;
            if (afirst) {
                if (k.normal[i] < 0) os << "-";
                afirst = false;
            } else {
                os << (k.normal[i] < 0 ? " - " : " + ");
            }
            os << format_double(std::abs(k.normal[i])) << "*x" << (i + 1);
        }
        if (k.offset != 0.0 || afirst) {
            if (afirst) os << format_double(k.offset);
            else os << (k.offset < 0 ? " - " : " + ") << format_double(std::abs(k.offset));
        }
        os << ")";
    }
    if (first) os << "0";
}

void write_vector(std::ostringstream& os, const Vector& v) {
    if (v.size() == 1) {
        os << format_double(v[0]);
        return;
    }
    os << "(";
    for (int i = 0; i < v.size(); ++i) os << (i ? ", " : "") << format_double(v[i]);
    os << ")";
}

}  // namespace

ParsedProblem parse_problem(const std::string& text) { return Parser(text).run(); }

std::string serialize_problem(const ProblemSpec& p, const std::map<std::string, Vector>& points,
                              const std::map<std::string, Vector>& directions) {
    std::ostringstream os;
    if (!p.name.empty()) os << "name = " << p.name << "\n";
    os << "n = " << p.n << "\n";
    for (int l = 0; l < p.num_objectives(); ++l) {
        os << "objective f" << (l + 1) << " = ";
        write_function(os, p.objectives[l]);
        os << "\n";
    }
    for (int i = 0; i < p.num_constraints(); ++i) {
        os << "constraint g" << (i + 1) << " = ";
        write_function(os, p.constraints[i]);
        os << "\n";
    }
    for (const auto& [name, v] : points) {
        os << "point " << name << " = ";
        write_vector(os, v);
        os << "\n";
    }
    for (const auto& [name, v] : directions) {
        os << "direction " << name << " = ";
        write_vector(os, v);
        os << "\n";
    }
    return os.str();
}

std::string serialize_catalog_entry(const CatalogEntry& entry) {
    std::map<std::string, Vector> points, directions;
    int pi = 0, di = 0;
    for (const auto& pt : entry.points) {
        points["p" + std::to_string(++pi)] = pt.point;
        if (pt.direction) directions["u" + std::to_string(++di)] = *pt.direction;
    }
    return serialize_problem(entry.problem, points, directions);
}

}  // namespace sokkt
