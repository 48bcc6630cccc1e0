#include "hdb/parser.hpp"

#include <bit>
#include <cctype>
#include <optional>

namespace hdb {

namespace {

enum class Tok { number, ident, datom, plus, minus, star, caret, lparen, rparen, end };

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::number: return "number";
        case Tok::ident: return "identifier";
        case Tok::datom: return "d(<var>)";
        case Tok::plus: return "'+'";
        case Tok::minus: return "'-'";
        case Tok::star: return "'*'";
        case Tok::caret: return "'^'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::end: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind = Tok::end;
    std::string text;   // ident name, d-atom variable, or number literal
    Rational value = 0;
    bool is_integer = false;
    int line = 1;
    int col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            bump();
        cur_ = Token{};
        cur_.line = line_;
        cur_.col = col_;
        if (pos_ >= src_.size()) {
            cur_.kind = Tok::end;
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                num += src_[pos_], bump();
            cur_.is_integer = true;
            if (pos_ < src_.size() && src_[pos_] == '/') {
                size_t save = pos_;
                bump();
                std::string den;
                while (pos_ < src_.size() &&
                       std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    den += src_[pos_], bump();
                if (den.empty())
                    throw ParseError("malformed rational literal", cur_.line, cur_.col,
                                     {"digits after '/'"});
                if (den == "0")
                    throw ParseError("zero denominator in rational literal", cur_.line,
                                     cur_.col);
                num += "/" + den;
                cur_.is_integer = false;
                (void)save;
            }
            cur_.kind = Tok::number;
            cur_.text = num;
            cur_.value = rat_from_string(num);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                id += src_[pos_], bump();
            if (id == "d" && pos_ < src_.size() && src_[pos_] == '(') {
                bump();  // '('
                std::string var;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                        src_[pos_] == '_'))
                    var += src_[pos_], bump();
                if (var.empty() || pos_ >= src_.size() || src_[pos_] != ')')
                    throw ParseError("malformed derivative atom", cur_.line, cur_.col,
                                     {"d(<variable>)"});
                bump();  // ')'
                cur_.kind = Tok::datom;
                cur_.text = var;
                return;
            }
            cur_.kind = Tok::ident;
            cur_.text = id;
            return;
        }
        bump();
        switch (c) {
            case '+': cur_.kind = Tok::plus; return;
            case '-': cur_.kind = Tok::minus; return;
            case '*': cur_.kind = Tok::star; return;
            case '^': cur_.kind = Tok::caret; return;
            case '(': cur_.kind = Tok::lparen; return;
            case ')': cur_.kind = Tok::rparen; return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", cur_.line, cur_.col);
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token cur_;
};

struct ParserConfig {
    SignaturePtr sig;
    std::vector<VarRole> roles;  // identifier roles admitted; empty = all
    bool allow_datoms = true;
};

class Parser {
  public:
    Parser(const std::string& src, ParserConfig cfg) : lex_(src), cfg_(std::move(cfg)) {}

    DiffOperator parse() {
        DiffOperator out = expr();
        expect(Tok::end);
        return out;
    }

  private:
    DiffOperator expr() {
        bool neg = false;
        if (lex_.peek().kind == Tok::minus) {
            lex_.take();
            neg = true;
        }
        DiffOperator out = term();
        if (neg) out = out * Rational(-1);
        while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
            bool minus = lex_.take().kind == Tok::minus;
            DiffOperator t = term();
            out = minus ? out - t : out + t;
        }
        return out;
    }

    DiffOperator term() {
        DiffOperator out = factor();
        while (lex_.peek().kind == Tok::star) {
            lex_.take();
            out = compose(out, factor());
        }
        // juxtaposition is forbidden: a primary following a primary is an error
        const Token& t = lex_.peek();
        if (t.kind == Tok::number || t.kind == Tok::ident || t.kind == Tok::datom ||
            t.kind == Tok::lparen)
            throw ParseError("missing '*' between factors", t.line, t.col,
                             {tok_name(Tok::plus), tok_name(Tok::minus), tok_name(Tok::star),
                              tok_name(Tok::caret), tok_name(Tok::end)});
        return out;
    }

    DiffOperator factor() {
        DiffOperator base = primary();
        while (lex_.peek().kind == Tok::caret) {
            Token caret = lex_.take();
            Token e = lex_.take();
            if (e.kind != Tok::number || !e.is_integer || e.value < 0)
                throw ParseError("exponent must be a non-negative integer", e.line, e.col,
                                 {"non-negative integer"});
            (void)caret;
            DiffOperator out = DiffOperator::identity(cfg_.sig);
            Rational n = e.value;
            for (Rational i = 0; i < n; i += 1) out = compose(out, base);
            base = out;
        }
        return base;
    }

    DiffOperator primary() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::number:
                return DiffOperator::multiplication(SuperPoly::constant(cfg_.sig, t.value));
            case Tok::ident: {
                VarId v = lookup(t);
                return DiffOperator::multiplication(SuperPoly::variable(cfg_.sig, v));
            }
            case Tok::datom: {
                if (!cfg_.allow_datoms)
                    throw ParseError("derivative atoms are not allowed in this context",
                                     t.line, t.col);
                auto id = cfg_.sig->find(t.text);
                if (!id || cfg_.sig->role(*id) != VarRole::base)
                    throw ParseError("derivative of an unknown base variable: " + t.text,
                                     t.line, t.col, {"base variable"});
                return DiffOperator::derivative(cfg_.sig, *id);
            }
            case Tok::minus:
                return primary() * Rational(-1);
            case Tok::lparen: {
                DiffOperator out = expr();
                expect(Tok::rparen);
                return out;
            }
            default:
                throw ParseError("unexpected " + std::string(tok_name(t.kind)), t.line, t.col,
                                 {tok_name(Tok::number), tok_name(Tok::ident),
                                  tok_name(Tok::datom), tok_name(Tok::lparen),
                                  tok_name(Tok::minus)});
        }
    }

    VarId lookup(const Token& t) {
        auto id = cfg_.sig->find(t.text);
        if (id && !cfg_.roles.empty()) {
            VarRole r = cfg_.sig->role(*id);
            bool ok = false;
            for (VarRole allowed : cfg_.roles) ok = ok || r == allowed;
            if (!ok) id.reset();
        }
        if (!id)
            throw ParseError("unknown identifier: " + t.text, t.line, t.col,
                             {"declared variable"});
        return *id;
    }

    void expect(Tok want) {
        const Token& t = lex_.peek();
        if (t.kind != want)
            throw ParseError("unexpected " + std::string(tok_name(t.kind)), t.line, t.col,
                             {tok_name(want)});
        lex_.take();
    }

    Lexer lex_;
    ParserConfig cfg_;
};

VectorField demote_to_field(const DiffOperator& op, const SignaturePtr& sig) {
    auto base = sig->base_ids();
    VectorField out(sig, Parity::even);
    std::optional<Parity> field_parity;
    for (const auto& [key, c] : op.terms()) {
        std::optional<size_t> slot;
        if (key.total_degree() == 1) {
            VarId v = key.evens.empty()
                          ? static_cast<VarId>(std::countr_zero(key.odd_mask))
                          : key.evens.front().first;
            for (size_t k = 0; k < base.size(); ++k)
                if (base[k] == v) slot = k;
        }
        if (!slot)
            throw ParseError(
                "vector field terms must carry exactly one first-order derivative of a base "
                "variable",
                1, 1);
        out.component(*slot) += c;
        auto cp = c.parity();
        if (cp) {
            Parity p = *cp + sig->parity(base[*slot]);
            if (!field_parity) field_parity = p;
            if (*field_parity != p) field_parity = Parity::even;  // inhomogeneous; tag only
        }
    }
    if (field_parity && *field_parity == Parity::odd) {
        VectorField tagged(sig, Parity::odd);
        for (size_t k = 0; k < base.size(); ++k) tagged.component(k) = out.component(k);
        return tagged;
    }
    return out;
}

}  // namespace

std::string ParseError::format(const std::string& message, int line, int col,
                               const std::vector<std::string>& expected) {
    std::string out = message + " at line " + std::to_string(line) + ", column " +
                      std::to_string(col);
    if (!expected.empty()) {
        out += " (expected ";
        for (size_t i = 0; i < expected.size(); ++i) {
            if (i) out += ", ";
            out += expected[i];
        }
        out += ")";
    }
    return out;
}

DiffOperator parse_operator(const std::string& source, const SignaturePtr& sig) {
    return Parser(source, ParserConfig{sig, {}, true}).parse();
}

Element parse_element(const std::string& source, const ContextPtr& ctx) {
    const SignaturePtr& sig = ctx->signature();
    ParserConfig cfg;
    cfg.sig = sig;
    switch (ctx->kind()) {
        case ContextKind::ops:
        case ContextKind::vect:
            cfg.roles = {VarRole::base, VarRole::aux};
            cfg.allow_datoms = true;
            break;
        case ContextKind::ham:
            cfg.roles = {VarRole::base, VarRole::momentum, VarRole::aux};
            cfg.allow_datoms = false;
            break;
        case ContextKind::multivec:
            cfg.roles = {VarRole::base, VarRole::antimomentum, VarRole::aux};
            cfg.allow_datoms = false;
            break;
    }
    DiffOperator op = Parser(source, cfg).parse();
    switch (ctx->kind()) {
        case ContextKind::ops:
            return op;
        case ContextKind::vect:
            return demote_to_field(op, sig);
        case ContextKind::ham:
        case ContextKind::multivec: {
            SuperPoly out(sig);
            for (const auto& [key, c] : op.terms()) {
                if (key.total_degree() != 0)
                    throw ParseError("derivative atoms are not allowed in this context", 1, 1);
                out += c;
            }
            return out;
        }
    }
    throw std::logic_error("unreachable context kind");
}

}  // namespace hdb
