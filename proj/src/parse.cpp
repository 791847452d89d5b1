// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <tatekit/parse.hpp>

#include <cctype>
#include <limits>
#include <type_traits>

namespace tatekit
{

SyntaxError::SyntaxError(int line, int column, const std::string &message)
    : Error(ErrorKind::usage, "syntax",
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column)
{
}

namespace
{

class Cursor
{
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool at_end()
    {
        skip_space();
        return pos_ >= text_.size();
    }

    char peek()
    {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    /// Next character without skipping whitespace.
    char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool accept(char c)
    {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            error(std::string("expected '") + c + "'");
        }
    }

    bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

    std::int64_t integer()
    {
        if (!peek_digit()) {
            error("expected an integer");
        }
        std::int64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek_raw()))) {
            const int d = peek_raw() - '0';
            if (v > (std::numeric_limits<std::int64_t>::max() - d) / 10) {
                error("integer too large");
            }
            v = v * 10 + d;
            ++pos_;
        }
        return v;
    }

    std::int64_t signed_integer()
    {
        const bool neg = accept('-');
        const auto v = integer();
        return neg ? -v : v;
    }

    Rational rational()
    {
        const auto num = signed_integer();
        if (accept('/')) {
            const auto den = integer();
            if (den == 0) {
                error("zero denominator");
            }
            return Rational(num, den);
        }
        return Rational(num);
    }

    [[noreturn]] void error(const std::string &message)
    {
        skip_space();
        int line = 1;
        int column = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw SyntaxError(line, column, message);
    }

    void finish()
    {
        if (!at_end()) {
            error(std::string("unexpected '") + peek() + "'");
        }
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

ExponentVector parse_vector(Cursor &in)
{
    in.expect('[');
    std::vector<ExponentVector::Entry> entries;
    if (!in.accept(']')) {
        do {
            const auto idx = in.integer();
            if (idx < 1 || idx > 4096) {
                in.error("generator index out of range");
            }
            in.expect(':');
            entries.emplace_back(static_cast<int>(idx), in.signed_integer());
        } while (in.accept(','));
        in.expect(']');
    }
    ExponentVector sum;
    for (const auto &[i, c] : entries) {
        sum = sum + ExponentVector::generator(i, c);
    }
    return sum;
}

/// Shared series grammar over an exponent reader; `closer` ends the series
/// (']' inside a Tate bracket, '\0' at top level).
template <class Exp, class ReadExp>
BallSeries<Exp> parse_series(Cursor &in, std::uint32_t p, ReadExp read_exp, char closer)
{
    using Series = BallSeries<Exp>;
    std::vector<typename Series::Term> terms;
    std::optional<Exp> cutoff;
    auto read_power = [&]() -> Exp {
        in.expect('t');
        if (in.accept('^')) {
            return read_exp(in);
        }
        if constexpr (std::is_same_v<Exp, Rational>) {
            return Rational(1);
        } else {
            in.error("Hahn exponents are written t^[i:c,...]");
        }
    };
    bool first = true;
    for (;;) {
        bool neg = false;
        if (first) {
            neg = in.accept('-');
        } else if (in.accept('-')) {
            neg = true;
        } else if (!in.accept('+')) {
            break;
        }
        first = false;
        if (in.peek() == 'O') {
            in.accept('O');
            in.expect('(');
            in.expect('t');
            in.expect('^');
            cutoff = read_exp(in);
            in.expect(')');
            if (in.peek() != closer) {
                in.error("O(...) must come last");
            }
            break;
        }
        std::int64_t coeff = 1;
        if (in.peek_digit()) {
            coeff = in.integer();
            in.accept('*');
            if (in.peek() != 't') {
                terms.push_back({ExponentTraits<Exp>::zero(), Series::reduce(neg ? -coeff : coeff, p)});
                continue;
            }
        } else if (in.peek() != 't') {
            in.error("expected a term");
        }
        const Exp e = read_power();
        terms.push_back({e, Series::reduce(neg ? -coeff : coeff, p)});
    }
    return Series(p, std::move(terms), std::move(cutoff));
}

struct RationalReader {
    Rational operator()(Cursor &in) const { return in.rational(); }
};

struct VectorReader {
    ExponentVector operator()(Cursor &in) const { return parse_vector(in); }
};

} // namespace

LaurentElem parse_laurent(std::string_view text, std::uint32_t p)
{
    Cursor in(text);
    auto x = parse_series<Rational>(in, p, RationalReader{}, '\0');
    in.finish();
    return x;
}

HahnSumElem parse_hahn(std::string_view text, std::uint32_t p)
{
    Cursor in(text);
    auto x = parse_series<ExponentVector>(in, p, VectorReader{}, '\0');
    in.finish();
    return x;
}

Norm parse_norm(std::string_view text)
{
    Cursor in(text);
    Norm n;
    if (in.accept('e')) {
        in.expect('^');
        n = Norm::from_exponent(-in.rational());
    } else {
        const auto v = in.integer();
        if (v == 0) {
            n = Norm::zero();
        } else if (v == 1) {
            n = Norm::from_exponent(Rational(0));
        } else {
            in.error("norm must be 0, 1 or e^x");
        }
    }
    in.finish();
    return n;
}

TateElem parse_tate(std::string_view text, std::uint32_t p, std::optional<int> arity)
{
    Cursor in(text);
    struct RawTerm {
        std::vector<std::uint32_t> exps;
        LaurentElem coeff;
    };
    std::vector<RawTerm> raw;
    Norm slack = Norm::zero();
    int max_index = 1;

    auto parse_norm_here = [&]() -> Norm {
        if (in.accept('e')) {
            in.expect('^');
            return Norm::from_exponent(-in.rational());
        }
        const auto v = in.integer();
        if (v == 0) {
            return Norm::zero();
        }
        if (v != 1) {
            in.error("norm must be 0, 1 or e^x");
        }
        return Norm::from_exponent(Rational(0));
    };

    bool first = true;
    for (;;) {
        bool neg = false;
        if (first) {
            neg = in.accept('-');
        } else if (in.accept('-')) {
            neg = true;
        } else if (!in.accept('+')) {
            break;
        }
        first = false;
        if (in.peek() == 'O') {
            in.accept('O');
            in.expect('(');
            slack = parse_norm_here();
            in.expect(')');
            if (!in.at_end()) {
                in.error("O(...) must come last");
            }
            break;
        }
        RawTerm term{{}, LaurentElem::constant(p, neg ? -1 : 1)};
        bool any = false;
        for (;;) {
            const char c = in.peek();
            if (c == '[') {
                in.accept('[');
                auto l = parse_series<Rational>(in, p, RationalReader{}, ']');
                in.expect(']');
                term.coeff = mul(term.coeff, l);
            } else if (c == 'X') {
                in.accept('X');
                std::int64_t idx = 1;
                if (std::isdigit(static_cast<unsigned char>(in.peek_raw()))) {
                    idx = in.integer();
                    if (idx < 1 || idx > 64) {
                        in.error("variable index out of range");
                    }
                }
                std::int64_t e = 1;
                if (in.accept('^')) {
                    e = in.integer();
                    if (e > std::numeric_limits<std::uint32_t>::max() / 2) {
                        in.error("exponent too large");
                    }
                }
                if (term.exps.size() < static_cast<std::size_t>(idx)) {
                    term.exps.resize(static_cast<std::size_t>(idx), 0);
                }
                term.exps[static_cast<std::size_t>(idx - 1)] += static_cast<std::uint32_t>(e);
                max_index = std::max(max_index, static_cast<int>(idx));
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                term.coeff = mul(term.coeff, LaurentElem::constant(p, in.integer()));
            } else {
                if (!any) {
                    in.error("expected a term");
                }
                break;
            }
            any = true;
            in.accept('*');
        }
        raw.push_back(std::move(term));
    }
    in.finish();

    const int n = arity.value_or(max_index);
    if (max_index > n) {
        fail(ErrorKind::math_domain, "arity-mismatch",
             "variable X" + std::to_string(max_index) + " exceeds arity " + std::to_string(n));
    }
    TateElem out(p, n, {}, slack);
    for (auto &t : raw) {
        t.exps.resize(static_cast<std::size_t>(n), 0);
        out = add(out, TateElem::monomial(t.coeff, MultiIndex(t.exps)));
    }
    return out;
}

} // namespace tatekit
