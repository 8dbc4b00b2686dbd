#include "tubular/parse.hpp"

#include <cctype>
#include <map>

#include "tubular/error.hpp"

namespace tubular {

namespace {

class ElementParser {
public:
    ElementParser(std::string_view text, const SpacePtr& space) : text_(normalize_minus(text)), space_(space) {}

    TLaurent run() {
        int prec = kExact;
        bool first = true;
        skip_ws();
        if (at_end()) fail("empty element");
        while (true) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            if (looking_at_big_o()) {
                if (sign < 0) fail("precision marker must be added, not subtracted");
                prec = parse_big_o();
                skip_ws();
                if (!at_end()) fail("precision marker must come last");
                break;
            }
            parse_term(sign);
            first = false;
            skip_ws();
            if (at_end()) break;
        }
        return build(prec);
    }

private:
    static std::string normalize_minus(std::string_view in) {
        std::string out;
        out.reserve(in.size());
        for (std::size_t i = 0; i < in.size(); ++i) {
            if (i + 2 < in.size() && static_cast<unsigned char>(in[i]) == 0xE2 &&
                static_cast<unsigned char>(in[i + 1]) == 0x88 && static_cast<unsigned char>(in[i + 2]) == 0x92) {
                out.push_back('-');
                i += 2;
            } else {
                out.push_back(in[i]);
            }
        }
        return out;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool looking_at_big_o() const {
        std::size_t p = pos_;
        if (p >= text_.size() || text_[p] != 'O') return false;
        ++p;
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
        return p < text_.size() && text_[p] == '(';
    }

    int parse_big_o() {
        ++pos_;  // 'O'
        skip_ws();
        ++pos_;  // '('
        skip_ws();
        std::string name = parse_identifier();
        if (!space_->has_t() || name != space_->t_name) fail("precision marker must use the variable " + space_->t_name);
        skip_ws();
        long n = 1;
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            n = parse_signed_int();
        }
        skip_ws();
        if (peek() != ')') fail("expected ')'");
        ++pos_;
        return static_cast<int>(n);
    }

    std::string parse_identifier() {
        std::size_t start = pos_;
        if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) fail("expected a variable name");
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    mpz_class parse_unsigned() {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected a number");
        return mpz_class(text_.substr(start, pos_ - start));
    }

    long parse_signed_int() {
        bool neg = false;
        if (peek() == '-' || peek() == '+') {
            neg = peek() == '-';
            ++pos_;
        }
        std::size_t at = pos_;
        mpz_class v = parse_unsigned();
        if (v > 1000000) throw ParseError("exponent out of range", at);
        long r = v.get_si();
        return neg ? -r : r;
    }

    void parse_term(int sign) {
        term_start_ = pos_;
        Field f = space_->field;
        Scalar coef(f, static_cast<long>(sign));
        int t_exp = 0;
        Monomial mono(space_->nvars());
        bool any = false;
        while (true) {
            skip_ws();
            std::size_t at = pos_;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                mpz_class num = parse_unsigned();
                mpz_class den = 1;
                skip_ws();
                if (peek() == '/') {
                    ++pos_;
                    skip_ws();
                    den = parse_unsigned();
                    if (den == 0) throw ParseError("zero denominator", at);
                    if (!f.is_rational() && den % f.characteristic() == 0)
                        throw ParseError("denominator vanishes in " + f.name(), at);
                }
                coef *= Scalar(f, mpq_class(num, den));
            } else if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
                std::string name = parse_identifier();
                skip_ws();
                long e = 1;
                if (peek() == '^') {
                    ++pos_;
                    skip_ws();
                    e = parse_signed_int();
                }
                if (space_->has_t() && name == space_->t_name) {
                    t_exp += static_cast<int>(e);
                } else if (auto i = space_->index_of(name)) {
                    mono.exp[*i] += static_cast<int>(e);
                } else {
                    throw ParseError("unknown variable '" + name + "'", at);
                }
            } else {
                fail("expected a coefficient or a variable");
            }
            any = true;
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!any) fail("empty term");
        if (!mono.legal_in(*space_)) throw ParseError("negative exponent on a non-invertible variable", term_start_);
        if (!space_->has_t() && t_exp != 0) fail("this patch has no t variable");
        terms_[t_exp].push_back({mono, coef});
    }

    TLaurent build(int prec) {
        if (terms_.empty()) return TLaurent::zero(space_, prec);
        int lo = terms_.begin()->first;
        int hi = terms_.rbegin()->first + 1;
        std::vector<MultiPoly> cs(static_cast<std::size_t>(hi - lo));
        for (auto& [d, ts] : terms_) cs[static_cast<std::size_t>(d - lo)] = MultiPoly::from_terms(std::move(ts));
        return TLaurent::from_coeffs(space_, lo, std::move(cs), prec);
    }

    std::string text_;
    SpacePtr space_;
    std::size_t pos_ = 0;
    std::size_t term_start_ = 0;
    std::map<int, std::vector<MultiPoly::Term>> terms_;
};

std::string render_term(const VarSpace& space, const Scalar& coef, int t_exp, const Monomial& m, bool& negative) {
    std::string vars;
    auto add_var = [&](const std::string& name, int e) {
        if (e == 0) return;
        if (!vars.empty()) vars += "*";
        vars += name;
        if (e != 1) vars += "^" + std::to_string(e);
    };
    if (space.has_t()) add_var(space.t_name, t_exp);
    for (std::size_t i = 0; i < m.size(); ++i) add_var(space.y_names[i], m.exp[i]);

    mpq_class v = coef.value();
    negative = space.field.is_rational() && sgn(v) < 0;
    if (negative) v = -v;
    if (vars.empty()) return v.get_str();
    if (v == 1) return vars;
    return v.get_str() + "*" + vars;
}

}  // namespace

TLaurent parse_element(std::string_view text, const SpacePtr& space) { return ElementParser(text, space).run(); }

std::string render(const TLaurent& a) {
    std::string out;
    for (int d = a.order(); !a.is_zero() && d < a.high(); ++d) {
        for (const auto& term : a.coeff(d).terms()) {
            bool negative = false;
            std::string body = render_term(a.space(), term.coef, d, term.mono, negative);
            if (out.empty())
                out = negative ? "-" + body : body;
            else
                out += (negative ? " - " : " + ") + body;
        }
    }
    if (out.empty()) out = "0";
    if (!a.is_exact()) out += " + O(" + a.space().t_name + (a.prec() == 1 ? "" : "^" + std::to_string(a.prec())) + ")";
    return out;
}

}  // namespace tubular
