#include "cantorquant/rational.hpp"

#include <cctype>

namespace cq {

Rational squared_distance(const Point& a, const Point& b) {
    Rational dx = a.x - b.x;
    Rational dy = a.y - b.y;
    return dx * dx + dy * dy;
}

BigInt pow_int(unsigned long base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

Rational inv_pow3(unsigned long k) {
    Rational r(BigInt(1), pow_int(3, k));
    return r;
}

Rational inv_pow2(unsigned long k) {
    Rational r(BigInt(1), pow_int(2, k));
    return r;
}

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

std::string to_string(const Point& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

BigInt parse_integer(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
    BigInt v(std::string(s), 10);
    return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty rational");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash));
        std::string_view den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) throw ParseError("bad denominator in '" + std::string(text) + "'");
        BigInt den(std::string(den_text), 10);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    std::string_view mant = text;
    long exp10 = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mant = text.substr(0, e);
        BigInt ev = parse_integer(text.substr(e + 1));
        if (!ev.fits_slong_p() || abs(ev) > 100000) throw ParseError("exponent out of range");
        exp10 = ev.get_si();
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant.remove_prefix(1);
    }
    std::string digits;
    if (auto dot = mant.find('.'); dot != std::string_view::npos) {
        std::string_view ip = mant.substr(0, dot), fp = mant.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw ParseError("not a number: '" + std::string(text) + "'");
        digits = std::string(ip) + std::string(fp);
        exp10 -= static_cast<long>(fp.size());
    } else {
        if (!all_digits(mant)) throw ParseError("not a number: '" + std::string(text) + "'");
        digits = std::string(mant);
    }
    Rational r{BigInt(digits, 10)};
    if (exp10 > 0) r *= pow_int(10, static_cast<unsigned long>(exp10));
    if (exp10 < 0) r /= pow_int(10, static_cast<unsigned long>(-exp10));
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

std::string to_decimal(const Rational& q, int digits) {
    if (digits < 1) digits = 1;
    if (q == 0) return "0";
    Rational a = abs(q);
    std::string sign = q < 0 ? "-" : "";

    // Find e with 10^e <= a < 10^(e+1).
    long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
    auto ten_pow = [](long k) {
        Rational t = 1;
        if (k > 0) t = Rational(pow_int(10, static_cast<unsigned long>(k)));
        if (k < 0) t = Rational(BigInt(1), pow_int(10, static_cast<unsigned long>(-k)));
        return t;
    };
    while (ten_pow(e) > a) --e;
    while (ten_pow(e + 1) <= a) ++e;

    // Scale so that the kept digits form an integer, rounding half up.
    long shift = digits - 1 - e;
    Rational scaled = a * ten_pow(shift) + Rational(1, 2);
    BigInt n = scaled.get_num() / scaled.get_den();
    if (n >= pow_int(10, static_cast<unsigned long>(digits))) {
        // Rounding carried into a new leading digit.
        ++e;
        --shift;
        n /= 10;
    }
    std::string s = n.get_str();

    if (e < -6) {
        std::string out = sign + s.substr(0, 1);
        if (s.size() > 1) out += "." + s.substr(1);
        return out + "e" + std::to_string(e);
    }
    if (shift <= 0) return sign + s + std::string(static_cast<size_t>(-shift), '0');
    if (static_cast<long>(s.size()) <= shift)
        return sign + "0." + std::string(static_cast<size_t>(shift - static_cast<long>(s.size())), '0') + s;
    size_t int_len = s.size() - static_cast<size_t>(shift);
    return sign + s.substr(0, int_len) + "." + s.substr(int_len);
}

}  // namespace cq
