#include "tforge/algexpr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tforge {

AlgExpr AlgExpr::of_word(Word w, PrimeModulus p, Scalar c) {
    AlgExpr e(p);
    e.add_term(c, w);
    return e;
}

namespace {

// I is the unit of the word monoid; it is kept only as the empty word.
Word strip_identity(const Word& w) {
    Word out;
    for (const auto& a : w)
        if (a.kind != Atom::Kind::I) out.push_back(a);
    if (out.empty() && !w.empty()) out.push_back(Atom::Im());
    return out;
}

}  // namespace

AlgExpr& AlgExpr::add_term(Scalar c, const Word& raw) {
    c %= mod_.value();
    if (c == 0 || raw.empty()) return *this;
    const Word w = strip_identity(raw);
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it->word == w) {
            it->coef = mod_.add(it->coef, c);
            if (it->coef == 0) terms_.erase(it);
            return *this;
        }
    }
    terms_.push_back({c, w});
    return *this;
}

AlgExpr& AlgExpr::operator+=(const AlgExpr& o) {
    if (!(mod_ == o.mod_)) throw Error(ErrorCode::ModulusMismatch, "algexpr", "moduli differ");
    for (const auto& t : o.terms_) add_term(t.coef, t.word);
    return *this;
}

AlgExpr& AlgExpr::operator-=(const AlgExpr& o) {
    if (!(mod_ == o.mod_)) throw Error(ErrorCode::ModulusMismatch, "algexpr", "moduli differ");
    for (const auto& t : o.terms_) add_term(mod_.neg(t.coef), t.word);
    return *this;
}

AlgExpr& AlgExpr::scale(Scalar c) {
    c %= mod_.value();
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef = mod_.mul(t.coef, c);
    return *this;
}

AlgExpr operator*(const AlgExpr& a, const AlgExpr& b) {
    if (!(a.mod_ == b.mod_)) throw Error(ErrorCode::ModulusMismatch, "algexpr", "moduli differ");
    AlgExpr out(a.mod_);
    for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) {
            Word w = x.word;
            w.insert(w.end(), y.word.begin(), y.word.end());
            out.add_term(a.mod_.mul(x.coef, y.coef), w);
        }
    }
    return out;
}

AlgExpr AlgExpr::transposed() const {
    AlgExpr out(mod_);
    for (const auto& t : terms_) {
        Word w(t.word.rbegin(), t.word.rend());
        out.add_term(t.coef, w);
    }
    return out;
}

bool AlgExpr::operator==(const AlgExpr& o) const {
    if (!(mod_ == o.mod_) || terms_.size() != o.terms_.size()) return false;
    for (const auto& t : terms_) {
        auto it = std::find_if(o.terms_.begin(), o.terms_.end(), [&](const Term& u) { return u.word == t.word; });
        if (it == o.terms_.end() || it->coef != t.coef) return false;
    }
    return true;
}

std::string word_string(const Word& w) {
    std::string s;
    for (const auto& a : w) {
        switch (a.kind) {
            case Atom::Kind::E: s += "E" + std::to_string(a.idx) + "*"; break;
            case Atom::Kind::A: s += "A" + std::to_string(a.idx); break;
            case Atom::Kind::J: s += "J"; break;
            case Atom::Kind::I: s += "I"; break;
        }
    }
    return s;
}

std::string AlgExpr::to_string() const {
    if (terms_.empty()) return "O";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        // Print residues above p/2 as negatives so transcriptions stay readable.
        const bool negative = mod_.value() > 2 && t.coef > mod_.value() / 2;
        const Scalar mag = negative ? mod_.value() - t.coef : t.coef;
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        if (mag != 1) os << mag;
        os << word_string(t.word);
        first = false;
    }
    return os.str();
}

std::string bind_vars(std::string_view text, const std::map<char, int>& vars) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        auto it = vars.find(c);
        if (it != vars.end()) {
            out += std::to_string(it->second);
        } else {
            out += c;
        }
    }
    return out;
}

// ------------------------------------------------------------------ parser

namespace {

class Parser {
public:
    Parser(std::string_view text, const ExprEnv& env) : s_(text), env_(env) {}

    AlgExpr parse() {
        AlgExpr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::Parse, "algexpr", msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    const PrimeModulus& mod() const { return env_.p; }

    AlgExpr expr() {
        AlgExpr out(mod());
        bool neg = false;
        if (eat('-')) {
            neg = true;
        } else {
            eat('+');
        }
        for (;;) {
            AlgExpr t = term();
            if (neg) {
                out -= t;
            } else {
                out += t;
            }
            if (eat('+')) {
                neg = false;
            } else if (eat('-')) {
                neg = true;
            } else {
                break;
            }
        }
        return out;
    }

    bool starts_factor() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '[' || c == '(' || c == 'E' || c == 'A' || c == 'J' ||
               c == 'I' || c == 'O';
    }

    AlgExpr term() {
        if (!starts_factor()) fail("expected a factor");
        AlgExpr acc = factor();
        while (starts_factor()) acc = acc * factor();
        return acc;
    }

    int index() {
        if (pos_ >= s_.size()) fail("missing index");
        char c = s_[pos_++];
        int v;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            v = c - '0';
        } else {
            auto it = env_.vars.find(c);
            if (it == env_.vars.end()) fail(std::string("unbound index '") + c + "'");
            v = it->second;
        }
        if (v < 0 || v > 4) fail("index out of [0, 4]");
        return v;
    }

    AlgExpr factor() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            AlgExpr e = AlgExpr::identity(mod());
            return e.scale(mod().reduce(integer()));
        }
        if (c == '[') {
            ++pos_;
            Scalar v = sexpr();
            if (!eat(']')) fail("expected ']'");
            AlgExpr e = AlgExpr::identity(mod());
            return e.scale(v);
        }
        if (c == '(') {
            ++pos_;
            AlgExpr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        ++pos_;
        switch (c) {
            case 'E': {
                const int i = index();
                eat('*');  // printed form E4*
                return AlgExpr::of_word({Atom::E(i)}, mod());
            }
            case 'A': return AlgExpr::of_word({Atom::A(index())}, mod());
            case 'J': return AlgExpr::of_word({Atom::Jm()}, mod());
            case 'I': return AlgExpr::identity(mod());
            case 'O': return AlgExpr(mod());
            default: fail("unknown atom");
        }
    }

    std::int64_t integer() {
        skip();
        std::int64_t v = 0;
        bool any = false;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_++] - '0');
            any = true;
        }
        if (!any) fail("expected integer");
        return v;
    }

    // Scalar sub-language, evaluated in GF(p).
    Scalar sexpr() {
        Scalar v;
        if (eat('-')) {
            v = mod().neg(sterm());
        } else {
            v = sterm();
        }
        for (;;) {
            if (eat('+')) {
                v = mod().add(v, sterm());
            } else if (eat('-')) {
                v = mod().sub(v, sterm());
            } else {
                return v;
            }
        }
    }
    Scalar sterm() {
        Scalar v = sfactor();
        for (;;) {
            if (eat('*')) {
                v = mod().mul(v, sfactor());
            } else if (eat('/')) {
                Scalar d = sfactor();
                if (d == 0)
                    throw Error(ErrorCode::NotInvertible, "algexpr",
                                "division by a multiple of p at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
                v = mod().mul(v, mod().inv(d));
            } else {
                return v;
            }
        }
    }
    std::vector<int> args(std::size_t count) {
        if (!eat('(')) fail("expected '('");
        std::vector<int> out;
        for (std::size_t k = 0; k < count; ++k) {
            if (k && !eat(',')) fail("expected ','");
            skip();
            out.push_back(index());
        }
        if (!eat(')')) fail("expected ')'");
        return out;
    }
    Scalar sfactor() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return mod().reduce(integer());
        if (c == '(') {
            ++pos_;
            Scalar v = sexpr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == '-') {
            ++pos_;
            return mod().neg(sfactor());
        }
        ++pos_;
        switch (c) {
            case 'n': return mod().reduce(static_cast<std::int64_t>(env_.n));
            case 'p': {
                auto a = args(3);
                if (!env_.scheme) fail("p(.,.,.) needs a scheme");
                return mod().reduce(static_cast<std::int64_t>(env_.scheme->p[a[0]][a[1]][a[2]]));
            }
            case 'k': {
                auto a = args(1);
                if (!env_.scheme) fail("k(.) needs a scheme");
                return mod().reduce(static_cast<std::int64_t>(env_.scheme->k[a[0]]));
            }
            case 'd': {
                auto a = args(2);
                return a[0] == a[1] ? 1 : 0;
            }
            default: fail("unknown scalar symbol");
        }
    }

    std::string_view s_;
    const ExprEnv& env_;
    std::size_t pos_ = 0;
};

}  // namespace

AlgExpr parse_expr(std::string_view text, const ExprEnv& env) { return Parser(text, env).parse(); }

}  // namespace tforge
