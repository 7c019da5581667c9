#pragma once

#include "bvwb/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvwb {

using Mask = std::uint32_t;

constexpr int kMaxDim = 16;

inline int popcount(Mask m) { return __builtin_popcount(m); }

// Sign of e^a ∧ e^b for disjoint masks: parity of pairs (i in a, j in b) with i > j.
int wedge_sign(Mask a, Mask b);

// All masks of popcount k in {0..n-1}, ascending.
std::vector<Mask> basis_words(int n, int k);

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Form {
public:
    using Terms = std::map<Mask, Scalar>;

    explicit Form(int n = 0);
    Form(int n, Terms terms);

    static Form one(int n);
    static Form generator(int n, int i);
    static Form word(int n, Mask m, Scalar c = Scalar(1));

    int dim() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(Mask m) const;

    // Unique popcount shared by all terms; nullopt when mixed. Zero form reports nullopt.
    std::optional<int> degree() const;
    bool is_homogeneous() const { return is_zero() || degree().has_value(); }

    void add(Mask m, const Scalar& c);
    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(const Scalar& c);

    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(Form a, const Scalar& c) { return a *= c; }
    friend Form operator*(const Scalar& c, Form a) { return a *= c; }
    Form operator-() const { return *this * Scalar(-1); }

    friend bool operator==(const Form& a, const Form& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    Form conj_coeffs() const;
    // Keeps only the terms of popcount k.
    Form part(int k) const;

    std::size_t hash() const;

private:
    int n_;
    Terms terms_;
};

Form wedge(const Form& a, const Form& b);
// ω^k / k!
Form wedge_power_normalized(const Form& a, int k);

void check_same_dim(int a, int b, const char* what);

// Labels default to e1..eN.
std::vector<std::string> default_labels(int n, const std::string& prefix = "e");

// Human form: "xy - 1/2z + (1+i)xt"; zero prints "0". Monomials join labels; sep goes between labels.
std::string format_word(Mask m, const std::vector<std::string>& labels, const std::string& sep = "");
std::string format_form(const Form& f, const std::vector<std::string>& labels, const std::string& sep = "");

}  // namespace bvwb
