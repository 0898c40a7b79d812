#include "twistmatch/parse.hpp"

#include <cctype>
#include <map>

namespace twistmatch {

namespace {

struct PolyParser {
    std::string s;
    size_t pos = 0;

    explicit PolyParser(std::string text) {
        for (char ch : text)
            if (!std::isspace((unsigned char)ch)) s += ch;
    }

    bool eof() const { return pos >= s.size(); }
    char peek() const { return eof() ? '\0' : s[pos]; }

    // accepts "x" for fields, "θ" (UTF-8) or "theta" or "t" for elements
    bool eat_var() {
        if (peek() == 'x' || peek() == 't') {
            if (s.compare(pos, 5, "theta") == 0)
                pos += 5;
            else
                pos += 1;
            return true;
        }
        if (s.compare(pos, 2, "\xce\xb8") == 0) {  // UTF-8 theta
            pos += 2;
            return true;
        }
        return false;
    }

    mpz_class eat_integer() {
        size_t start = pos;
        while (!eof() && std::isdigit((unsigned char)peek())) ++pos;
        if (start == pos) throw Error("polynomial parse error: digit expected in '" + s + "'");
        return mpz_class(s.substr(start, pos - start));
    }

    // term := [coef]['*'][var['^'exp]]
    // poly := ['+'|'-'] term { ('+'|'-') term }
    std::map<int, mpq_class> parse() {
        std::map<int, mpq_class> terms;
        bool first = true;
        while (!eof()) {
            int sign = 1;
            if (peek() == '+') {
                ++pos;
            } else if (peek() == '-') {
                sign = -1;
                ++pos;
            } else if (!first) {
                throw Error("polynomial parse error: expected +/- in '" + s + "'");
            }
            first = false;
            mpq_class coef = 1;
            bool have_coef = false;
            if (std::isdigit((unsigned char)peek())) {
                mpz_class num = eat_integer();
                mpz_class den = 1;
                if (peek() == '/') {
                    ++pos;
                    den = eat_integer();
                    if (den == 0) throw Error("polynomial parse error: zero denominator");
                }
                coef = mpq_class(num, den);
                coef.canonicalize();
                have_coef = true;
            }
            if (peek() == '*') ++pos;
            int exp = 0;
            if (eat_var()) {
                exp = 1;
                if (peek() == '^') {
                    ++pos;
                    exp = (int)eat_integer().get_si();
                    if (exp < 0) throw Error("polynomial parse error: negative exponent");
                }
            } else if (!have_coef) {
                throw Error("polynomial parse error: term expected in '" + s + "'");
            }
            terms[exp] += sign * coef;
        }
        if (first) throw Error("polynomial parse error: empty input");
        return terms;
    }
};

}  // namespace

NumberField parse_field(const std::string& text) {
    auto terms = PolyParser(text).parse();
    int deg = terms.empty() ? 0 : terms.rbegin()->first;
    if (deg < 1) throw Error("field polynomial must have degree >= 1");
    std::vector<mpz_class> coeffs(deg + 1, 0);
    for (auto& [e, c] : terms) {
        if (c.get_den() != 1) throw Error("field polynomial must have integer coefficients");
        coeffs[e] = c.get_num();
    }
    return NumberField(std::move(coeffs));
}

FieldElem parse_field_elem(const NumberField& K, const std::string& text) {
    auto terms = PolyParser(text).parse();
    FieldElem e = K.zero();
    FieldElem theta_pow = K.one();
    int at = 0;
    for (auto& [exp, c] : terms) {
        while (at < exp) {
            theta_pow = K.mul(theta_pow, K.theta());
            ++at;
        }
        FieldElem scaled = theta_pow;
        for (auto& v : scaled.coords) v *= c;
        e = K.add(e, scaled);
    }
    return e;
}

EllipticCurveOverK parse_curve(const NumberField& K, const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace((unsigned char)ch)) s += ch;
    const std::string prefix = "y^2=x^3+(";
    if (s.compare(0, prefix.size(), prefix) != 0)
        throw Error("curve parse error: expected \"y^2 = x^3 + (A)x + (B)\"");
    size_t a_end = s.find(")x+(", prefix.size());
    if (a_end == std::string::npos || s.back() != ')')
        throw Error("curve parse error: expected \"y^2 = x^3 + (A)x + (B)\"");
    std::string a_text = s.substr(prefix.size(), a_end - prefix.size());
    size_t b_start = a_end + 4;
    std::string b_text = s.substr(b_start, s.size() - 1 - b_start);
    return EllipticCurveOverK(K, parse_field_elem(K, a_text), parse_field_elem(K, b_text));
}

}  // namespace twistmatch
