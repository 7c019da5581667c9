#include "bvwb/scalar.hpp"

#include <functional>
#include <ostream>
#include <stdexcept>

namespace bvwb {

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero scalar");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    mpq_class den = o.re_ * o.re_ + o.im_ * o.im_;
    *this *= o.conj();
    re_ /= den;
    im_ /= den;
    return *this;
}

namespace {

std::string rational_str(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    std::size_t k = 0;
    if (s[0] == '+' || s[0] == '-') k = 1;
    if (k == s.size()) throw std::invalid_argument("bad rational '" + s + "'");
    bool slash = false;
    for (std::size_t j = k; j < s.size(); ++j) {
        if (s[j] == '/') {
            if (slash || j == k || j + 1 == s.size()) throw std::invalid_argument("bad rational '" + s + "'");
            slash = true;
        } else if (s[j] < '0' || s[j] > '9') {
            throw std::invalid_argument("bad rational '" + s + "'");
        }
    }
    std::string body = s[0] == '+' ? s.substr(1) : s;
    mpq_class q;
    if (q.set_str(body, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
    if (slash && sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

mpq_class parse_imag(const std::string& s) {
    // s ends with 'i'; coefficient may be empty or a sign
    std::string c = s.substr(0, s.size() - 1);
    if (c.empty() || c == "+") return 1;
    if (c == "-") return -1;
    return parse_rational(c);
}

}  // namespace

Scalar Scalar::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty scalar");
    if (text.back() != 'i') return Scalar(parse_rational(text));
    // split at the last sign that is not the leading one
    std::size_t cut = std::string::npos;
    for (std::size_t j = text.size() - 1; j > 0; --j) {
        if (text[j] == '+' || text[j] == '-') {
            cut = j;
            break;
        }
    }
    if (cut == std::string::npos) return Scalar(mpq_class(0), parse_imag(text));
    return Scalar(parse_rational(text.substr(0, cut)), parse_imag(text.substr(cut)));
}

std::string Scalar::str() const {
    if (sgn(im_) == 0) return rational_str(re_);
    std::string out;
    if (sgn(re_) != 0) out = rational_str(re_);
    std::string im;
    if (im_ == 1) im = "";
    else if (im_ == -1) im = "-";
    else im = rational_str(im_);
    if (!out.empty() && sgn(im_) > 0) out += "+";
    return out + im + "i";
}

std::size_t Scalar::hash() const {
    std::size_t h = 0;
    auto mix = [&h](long v) { h ^= std::hash<long>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(mpz_get_si(re_.get_num_mpz_t()));
    mix(mpz_get_si(re_.get_den_mpz_t()));
    mix(mpz_get_si(im_.get_num_mpz_t()));
    mix(mpz_get_si(im_.get_den_mpz_t()));
    return h;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

bool is_perfect_square(const mpq_class& q) {
    if (sgn(q) < 0) return false;
    return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

mpq_class exact_sqrt(const mpq_class& q) {
    if (!is_perfect_square(q)) throw std::domain_error("no exact square root of " + q.get_str());
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    return mpq_class(n, d);
}

}  // namespace bvwb
