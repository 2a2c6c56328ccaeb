#include "bvc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace bvc {

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

Rational pow_rational(const Rational& q, unsigned long e) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), e);
    // powers of a canonical fraction stay canonical
    return out;
}

Rational abs_rational(const Rational& q) {
    return q < 0 ? Rational(-q) : q;
}

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    // Trim the ends but reject interior whitespace: "1 2" must not quietly
    // become 12.
    std::size_t begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) throw std::invalid_argument("empty rational literal");
    std::size_t end = text.find_last_not_of(" \t\r\n");
    std::string s = text.substr(begin, end - begin + 1);
    for (char c : s)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument("whitespace inside rational '" + text + "'");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_integer_token(num) || !is_integer_token(den))
            throw std::invalid_argument("malformed fraction '" + text + "'");
        BigInt n(num), d(den);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        Rational q(n, d);
        q.canonicalize();
        return q;
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
        bool neg = !head.empty() && head[0] == '-';
        if (!head.empty() && (head[0] == '-' || head[0] == '+')) head = head.substr(1);
        if (head.empty()) head = "0";
        if (!is_integer_token(head) || tail.empty() || !is_integer_token(tail) || tail[0] == '-' ||
            tail[0] == '+')
            throw std::invalid_argument("malformed decimal '" + text + "'");
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, tail.size());
        BigInt units = BigInt(head) * scale + BigInt(tail);
        Rational q(units, scale);
        q.canonicalize();
        return neg ? Rational(-q) : q;
    }
    if (!is_integer_token(s)) throw std::invalid_argument("malformed rational '" + text + "'");
    return Rational(BigInt(s));
}

std::string format_rational(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace bvc
