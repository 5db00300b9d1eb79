#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tforge/gfp.hpp"
#include "tforge/scheme.hpp"

namespace tforge {

/// One generator symbol: E_a^*, A_b, J or I.
struct Atom {
    enum class Kind : std::uint8_t { E, A, J, I };
    Kind kind;
    std::uint8_t idx;

    static Atom E(int a) { return {Kind::E, static_cast<std::uint8_t>(a)}; }
    static Atom A(int b) { return {Kind::A, static_cast<std::uint8_t>(b)}; }
    static Atom Jm() { return {Kind::J, 0}; }
    static Atom Im() { return {Kind::I, 0}; }

    auto operator<=>(const Atom&) const = default;
};

using Word = std::vector<Atom>;

struct Term {
    Scalar coef;
    Word word;
};

/// A formal GF(p)-linear combination of words. Words are never rewritten, so
/// identities such as A_0 = I are checked by evaluation, not by the algebra
/// of the expression itself. Equal words are merged, zero terms dropped.
class AlgExpr {
public:
    explicit AlgExpr(PrimeModulus p) : mod_(p) {}

    static AlgExpr of_word(Word w, PrimeModulus p, Scalar c = 1);
    static AlgExpr identity(PrimeModulus p) { return of_word({Atom::Im()}, p); }

    const PrimeModulus& modulus() const noexcept { return mod_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    AlgExpr& add_term(Scalar c, const Word& w);
    AlgExpr& operator+=(const AlgExpr& o);
    AlgExpr& operator-=(const AlgExpr& o);
    AlgExpr& scale(Scalar c);
    friend AlgExpr operator+(AlgExpr a, const AlgExpr& b) { return a += b; }
    friend AlgExpr operator-(AlgExpr a, const AlgExpr& b) { return a -= b; }
    friend AlgExpr operator*(const AlgExpr& a, const AlgExpr& b);

    /// Reverses every word; valid because every atom is symmetric.
    AlgExpr transposed() const;

    /// E.g. "E4*A1E2*A3E4* - 2E4*".
    std::string to_string() const;

    bool operator==(const AlgExpr& o) const;

private:
    PrimeModulus mod_;
    std::vector<Term> terms_;
};

std::string word_string(const Word& w);

/// Bindings for parsing: modulus, n, index variables and the scheme (for the
/// scalar functions p(a,b,c) = p^c_{ab}, k(a) and the Kronecker d(a,b)).
struct ExprEnv {
    PrimeModulus p;
    std::uint64_t n;
    const SchemeDescriptor* scheme = nullptr;
    std::map<char, int> vars;
};

/// Grammar (whitespace ignored):
///   expr   := [+|-] term { (+|-) term }
///   term   := factor { factor }                  juxtaposition is product
///   factor := integer | '[' scalar ']' | atom | '(' expr ')'
///   atom   := 'E' idx | 'A' idx | 'J' | 'I' | 'O'       idx := digit | g | h | i | ...
///   scalar := integer arithmetic over n with + - * / ( ), p(.,.,.), k(.), d(.,.)
/// Division is by the inverse mod p and throws NotInvertible on zero.
AlgExpr parse_expr(std::string_view text, const ExprEnv& env);

/// Substitutes index variables textually, e.g. ("E{g}", {g:1}) -> "E1". Used
/// for labels only.
std::string bind_vars(std::string_view text, const std::map<char, int>& vars);

}  // namespace tforge
