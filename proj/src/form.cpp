#include "bvwb/form.hpp"

#include <sstream>

namespace bvwb {

int wedge_sign(Mask a, Mask b) {
    int swaps = 0;
    while (b) {
        int j = __builtin_ctz(b);
        b &= b - 1;
        swaps += popcount(a >> (j + 1));
    }
    return (swaps & 1) ? -1 : 1;
}

std::vector<Mask> basis_words(int n, int k) {
    std::vector<Mask> out;
    for (Mask m = 0; m < (Mask(1) << n); ++m)
        if (popcount(m) == k) out.push_back(m);
    return out;
}

void check_same_dim(int a, int b, const char* what) {
    if (a != b)
        throw DimensionMismatch(std::string(what) + ": ambient dimension " + std::to_string(a) + " vs " +
                                std::to_string(b));
}

Form::Form(int n) : n_(n) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("form dimension out of range");
}

Form::Form(int n, Terms terms) : Form(n) {
    for (auto& [m, c] : terms) add(m, c);
}

Form Form::one(int n) { return word(n, 0); }

Form Form::generator(int n, int i) {
    if (i < 0 || i >= n) throw std::out_of_range("generator index out of range");
    return word(n, Mask(1) << i);
}

Form Form::word(int n, Mask m, Scalar c) {
    Form f(n);
    f.add(m, c);
    return f;
}

Scalar Form::coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
}

std::optional<int> Form::degree() const {
    if (terms_.empty()) return std::nullopt;
    int k = popcount(terms_.begin()->first);
    for (auto& t : terms_)
        if (popcount(t.first) != k) return std::nullopt;
    return k;
}

void Form::add(Mask m, const Scalar& c) {
    if (m >> n_) throw std::out_of_range("basis word outside ambient dimension");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Form& Form::operator+=(const Form& o) {
    check_same_dim(n_, o.n_, "form sum");
    for (auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

Form& Form::operator-=(const Form& o) {
    check_same_dim(n_, o.n_, "form difference");
    for (auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

Form& Form::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

Form Form::conj_coeffs() const {
    Form out(n_);
    for (auto& [m, c] : terms_) out.terms_.emplace(m, c.conj());
    return out;
}

Form Form::part(int k) const {
    Form out(n_);
    for (auto& [m, c] : terms_)
        if (popcount(m) == k) out.terms_.emplace(m, c);
    return out;
}

std::size_t Form::hash() const {
    std::size_t h = std::size_t(n_);
    for (auto& [m, c] : terms_) h = h * 1000003u ^ (std::size_t(m) * 2654435761u) ^ c.hash();
    return h;
}

Form wedge(const Form& a, const Form& b) {
    check_same_dim(a.dim(), b.dim(), "wedge");
    Form out(a.dim());
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;
            Scalar c = ca * cb;
            if (wedge_sign(ma, mb) < 0) c = -c;
            out.add(ma | mb, c);
        }
    return out;
}

Form wedge_power_normalized(const Form& a, int k) {
    Form acc = Form::one(a.dim());
    for (int j = 1; j <= k; ++j) acc = wedge(acc, a) * Scalar::rational(1, j);
    return acc;
}

std::vector<std::string> default_labels(int n, const std::string& prefix) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
    return out;
}

std::string format_word(Mask m, const std::vector<std::string>& labels, const std::string& sep) {
    if (m == 0) return "1";
    // concatenation is only unambiguous for one-character labels
    std::string glue = sep;
    for (int i = 0; glue.empty() && i < kMaxDim; ++i)
        if ((m >> i & 1u) && labels.at(i).size() > 1) glue = "^";
    std::string out;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1) {
            if (!out.empty()) out += glue;
            out += labels.at(i);
        }
    return out;
}

std::string format_form(const Form& f, const std::vector<std::string>& labels, const std::string& sep) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : f.terms()) {
        std::string w = format_word(m, labels, sep);
        bool neg = false;
        std::string coef;
        if (c.is_real()) {
            neg = sgn(c.re()) < 0;
            Scalar a = neg ? -c : c;
            coef = a.is_one() ? "" : a.str() + "*";
        } else if (sgn(c.re()) == 0) {
            neg = sgn(c.im()) < 0;
            Scalar a = neg ? -c : c;
            coef = a.str() + "*";
        } else {
            coef = "(" + c.str() + ")*";
        }
        if (m == 0) {
            if (coef.empty()) coef = "1";
            else coef.pop_back();
            w.clear();
        }
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        os << coef << w;
        first = false;
    }
    return os.str();
}

}  // namespace bvwb
