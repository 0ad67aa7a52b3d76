#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "wordmap/common.hpp"

namespace wordmap {

/// One syllable x_var^exp of a reduced free-group word (var >= 1, exp != 0).
struct Syllable {
    int var;
    i64 exp;
    bool operator==(const Syllable&) const = default;
};

/// Reduced word in the free group F_d.
///
/// Grammar:   word := term+ ; term := atom ('^' int)? ;
///            atom := 'x' posint | '[' word ',' word ']' | '(' word ')'
/// An optional leading "d=<posint>" declares the arity (otherwise it is the
/// largest variable index used).  '[u,v]' is the commutator u^-1 v^-1 u v.
class Word {
public:
    Word() = default;

    static Word parse(const std::string& text) {
        Parser p(text);
        return p.run();
    }

    int arity() const { return arity_; }
    const std::vector<Syllable>& syllables() const { return syl_; }
    bool trivial() const { return syl_.empty(); }

    i64 length() const {
        i64 l = 0;
        for (const auto& s : syl_) l += s.exp < 0 ? -s.exp : s.exp;
        return l;
    }

    /// Canonical printable form; parse(str()) == *this.
    std::string str() const {
        std::ostringstream os;
        bool need_decl = syl_.empty();
        int max_var = 0;
        for (const auto& s : syl_) max_var = std::max(max_var, s.var);
        if (max_var != arity_) need_decl = true;
        if (need_decl) os << "d=" << arity_;
        for (size_t i = 0; i < syl_.size(); ++i) {
            if (i > 0 || need_decl) os << ' ';
            os << 'x' << syl_[i].var;
            if (syl_[i].exp != 1) os << '^' << syl_[i].exp;
        }
        return os.str();
    }

    bool operator==(const Word& o) const { return arity_ == o.arity_ && syl_ == o.syl_; }

    Word inverse() const {
        Word w;
        w.arity_ = arity_;
        for (auto it = syl_.rbegin(); it != syl_.rend(); ++it)
            w.syl_.push_back({it->var, -it->exp});
        return w;
    }

    /// Free product with reduction.
    friend Word operator*(const Word& a, const Word& b) {
        Word w;
        w.arity_ = std::max(a.arity_, b.arity_);
        w.syl_ = a.syl_;
        for (const auto& s : b.syl_) w.push_reduced(s);
        return w;
    }

    Word power(i64 e) const {
        Word base = e < 0 ? inverse() : *this;
        i64 n = e < 0 ? -e : e;
        Word w;
        w.arity_ = arity_;
        for (i64 i = 0; i < n; ++i) w = w * base;
        return w;
    }

    /// Exponent-sum vector in Z^arity.
    std::vector<i64> abelianization() const {
        std::vector<i64> e(arity_, 0);
        for (const auto& s : syl_) e[s.var - 1] += s.exp;
        return e;
    }

    /// Primitive abelianized image: nonzero vector with gcd 1 ("silly" word).
    bool is_primitive() const {
        auto e = abelianization();
        i64 g = 0;
        for (i64 v : e) g = std::gcd(g, v < 0 ? -v : v);
        return g == 1;
    }

    /// gamma(w): 1 iff every exponent sum is even (w in <[F,F], x_i^2>).
    int parity() const {
        for (i64 v : abelianization())
            if (v % 2 != 0) return 0;
        return 1;
    }

    /// Bezout coefficients b with sum e_i b_i = 1; requires is_primitive().
    std::vector<i64> bezout_coefficients() const {
        if (!is_primitive()) throw config_error("word is not primitive");
        auto e = abelianization();
        std::vector<i64> b(e.size(), 0);
        // fold extended gcd over the exponent vector
        i64 g = 0;
        std::vector<i64> coeff;  // coefficients for the prefix gcd
        for (size_t i = 0; i < e.size(); ++i) {
            if (g == 0) {
                g = e[i] < 0 ? -e[i] : e[i];
                coeff.assign(i + 1, 0);
                if (g != 0) coeff[i] = e[i] < 0 ? -1 : 1;
                continue;
            }
            auto [g2, s, t] = ext_gcd(g, e[i]);
            for (auto& c : coeff) c *= s;
            coeff.push_back(t);
            g = g2;
        }
        if (g != 1) throw invariant_error("bezout: gcd != 1");
        for (size_t i = 0; i < coeff.size(); ++i) b[i] = coeff[i];
        return b;
    }

    /// Shifts variables of each word so supports are disjoint, then multiplies.
    static Word disjoint_product(std::span<const Word> ws) {
        if (ws.empty()) throw config_error("disjoint_product of empty list");
        Word out;
        int shift = 0;
        for (const auto& w : ws) {
            if (w.trivial()) throw config_error("disjoint_product: trivial factor");
            for (const auto& s : w.syl_) out.push_reduced({s.var + shift, s.exp});
            shift += w.arity_;
        }
        out.arity_ = shift;
        return out;
    }

    /// Evaluates the word map at args[0..arity) via square-and-multiply per
    /// syllable.  Mul is (Elem, Elem) -> Elem, Inv is Elem -> Elem.
    template <class Elem, class Mul, class Inv>
    Elem evaluate(std::span<const Elem> args, Elem id, Mul&& mul, Inv&& inv) const {
        if (int(args.size()) < arity_)
            throw config_error("evaluate: tuple shorter than word arity");
        Elem acc = id;
        for (const auto& s : syl_) {
            Elem base = s.exp > 0 ? args[s.var - 1] : inv(args[s.var - 1]);
            u64 e = u64(s.exp > 0 ? s.exp : -s.exp);
            Elem powed = id;
            Elem sq = base;
            while (e) {
                if (e & 1) powed = mul(powed, sq);
                e >>= 1;
                if (e) sq = mul(sq, sq);
            }
            acc = mul(acc, powed);
        }
        return acc;
    }

private:
    static std::tuple<i64, i64, i64> ext_gcd(i64 a, i64 b) {
        if (b == 0) return {a < 0 ? -a : a, a < 0 ? -1 : 1, 0};
        auto [g, s, t] = ext_gcd(b, a % b);
        return {g, t, s - (a / b) * t};
    }

    void push_reduced(Syllable s) {
        if (s.exp == 0) return;
        while (!syl_.empty() && syl_.back().var == s.var) {
            s.exp += syl_.back().exp;
            syl_.pop_back();
            if (s.exp == 0) return;
        }
        syl_.push_back(s);
    }

    class Parser {
    public:
        explicit Parser(const std::string& t) : t_(t) {}

        Word run() {
            skip_ws();
            int declared = -1;
            if (t_.compare(pos_, 2, "d=") == 0) {
                pos_ += 2;
                declared = int(parse_uint("arity"));
                if (declared <= 0) fail("arity must be positive");
                skip_ws();
            }
            Word w;
            while (pos_ < t_.size()) {
                parse_term(w);
                skip_ws();
            }
            // arity is the largest variable mentioned in the text (cancelled
            // occurrences still count), unless declared explicitly
            if (max_seen_ == 0 && declared < 0) fail("empty word needs a d= arity declaration");
            if (declared >= 0 && declared < max_seen_)
                fail("declared arity smaller than largest variable index");
            w.arity_ = declared >= 0 ? declared : max_seen_;
            return w;
        }

    private:
        void parse_term(Word& out) {
            Word atom = parse_atom();
            skip_ws();
            i64 e = 1;
            if (pos_ < t_.size() && t_[pos_] == '^') {
                ++pos_;
                skip_ws();
                e = parse_int("exponent");
                if (e == 0) fail("zero exponent");
            }
            if (atom.syl_.size() == 1) {
                i64 total;
                if (__builtin_mul_overflow(atom.syl_[0].exp, e, &total)) fail("exponent overflow");
                out.push_reduced({atom.syl_[0].var, total});
                return;
            }
            Word piece = (e == 1) ? atom : atom.power(e);
            for (const auto& s : piece.syl_) out.push_reduced(s);
        }

        Word parse_atom() {
            skip_ws();
            if (pos_ >= t_.size()) fail("expected atom");
            char c = t_[pos_];
            if (c == 'x') {
                ++pos_;
                i64 v = i64(parse_uint("variable index"));
                if (v <= 0) fail("variable index must be >= 1");
                if (v > 64) fail("variable index too large");
                max_seen_ = std::max(max_seen_, int(v));
                Word w;
                w.syl_.push_back({int(v), 1});
                return w;
            }
            if (c == '[') {
                ++pos_;
                Word u = parse_subword(',');
                ++pos_;  // consume ','
                Word v = parse_subword(']');
                ++pos_;  // consume ']'
                return u.inverse() * v.inverse() * u * v;
            }
            if (c == '(') {
                ++pos_;
                Word w = parse_subword(')');
                ++pos_;  // consume ')'
                return w;
            }
            fail(std::string("unexpected character '") + c + "'");
            return {};
        }

        /// Parses terms until the given closing delimiter at this nesting level.
        Word parse_subword(char closer) {
            Word w;
            skip_ws();
            for (;;) {
                if (pos_ >= t_.size()) fail(std::string("expected '") + closer + "'");
                char c = t_[pos_];
                if (c == closer || (closer == ',' && c == ',')) break;
                if (c == ',' || c == ']' || c == ')') break;
                parse_term(w);
                skip_ws();
            }
            if (pos_ >= t_.size() || t_[pos_] != closer)
                fail(std::string("expected '") + closer + "'");
            return w;
        }

        u64 parse_uint(const char* what) {
            if (pos_ >= t_.size() || !std::isdigit(static_cast<unsigned char>(t_[pos_])))
                fail(std::string("expected ") + what);
            u64 v = 0;
            while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) {
                v = v * 10 + u64(t_[pos_] - '0');
                if (v > (1ull << 40)) fail("number too large");
                ++pos_;
            }
            return v;
        }

        i64 parse_int(const char* what) {
            i64 sgn = 1;
            if (pos_ < t_.size() && (t_[pos_] == '-' || t_[pos_] == '+')) {
                if (t_[pos_] == '-') sgn = -1;
                ++pos_;
            }
            return sgn * i64(parse_uint(what));
        }

        void skip_ws() {
            while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
        }

        [[noreturn]] void fail(const std::string& msg) const {
            throw config_error("word syntax error at position " + std::to_string(pos_) + ": " + msg);
        }

        const std::string& t_;
        size_t pos_ = 0;
        int max_seen_ = 0;
    };

    int arity_ = 0;
    std::vector<Syllable> syl_;
};

}  // namespace wordmap
