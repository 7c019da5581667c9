#include "bvwb/bv.hpp"

namespace bvwb {

Operator Multicomplex::delta(int i) const {
    if (i >= 0 && i < int(deltas.size())) return deltas[i];
    return Operator::zero(dim(), 1 - 2 * i);
}

MulticomplexReport validate_multicomplex(const Multicomplex& mc) {
    MulticomplexReport rep;
    int m = mc.bound();
    for (int i = 0; i <= m; ++i) {
        const Operator& d = mc.deltas[i];
        if (!d.is_zero() && d.degree() != 1 - 2 * i) {
            rep.ok = false;
            rep.first_violation = i;
            return rep;
        }
    }
    for (int n = 0; n <= 2 * m; ++n) {
        Operator s = Operator::zero(mc.dim(), 2 - 2 * n);
        for (int i = 0; i <= n; ++i) {
            if (i > m || n - i > m) continue;
            s += mc.deltas[i] * mc.deltas[n - i];
        }
        if (!s.is_zero()) {
            rep.ok = false;
            rep.first_violation = n;
            return rep;
        }
    }
    return rep;
}

Multicomplex delta_tower(const Operator& d, const Operator& lambda) {
    check_same_dim(d.dim(), lambda.dim(), "delta_tower");
    if (d.require_degree("delta_tower") != 1) throw DegreeError("delta_tower: differential must have degree +1");
    if (!lambda.is_zero() && lambda.require_degree("delta_tower") != -2)
        throw DegreeError("delta_tower: Lambda must have degree -2");
    if (!(d * d).is_zero()) throw NotADifferential("delta_tower: d^2 != 0");
    if (!algebraic_order_at_most(lambda, 2)) throw BvViolation("delta_tower: Lambda has order > 2");
    int m = delta_bound(d.dim());
    Multicomplex mc;
    mc.deltas.push_back(d);
    for (int k = 1; k <= m; ++k) {
        Operator next = graded_commutator(lambda, mc.deltas.back()) * Scalar::rational(1, k);
        mc.deltas.push_back(Operator(d.dim(), next.columns(), 1 - 2 * k));
    }
    Operator past = graded_commutator(lambda, mc.deltas.back());
    if (!past.is_zero()) throw std::logic_error("delta_tower: nonzero term past the degree bound");
    return mc;
}

bool BvInfinityCert::ok() const {
    if (!relations.ok) return false;
    for (auto& o : orders)
        if (!o.ok) return false;
    for (auto& c : identities)
        if (!c.ok) return false;
    return true;
}

BvInfinityCert validate_bv_infinity(const Multicomplex& mc, const std::string& flavor) {
    BvInfinityCert cert;
    cert.mc = mc;
    cert.flavor = flavor;
    cert.relations = validate_multicomplex(mc);
    OrderChecker oc;
    for (int i = 0; i <= mc.bound(); ++i) {
        OrderBound b;
        b.i = i;
        b.bound = i + 1;
        b.ok = oc.at_most(mc.deltas[i], i + 1);
        b.minimal = oc.minimal(mc.deltas[i], mc.dim());
        cert.orders.push_back(b);
    }
    return cert;
}

// ---- series

OperatorSeries OperatorSeries::constant(const Operator& c, int max_power) {
    OperatorSeries s(c.dim(), max_power);
    s.set(0, c);
    return s;
}

OperatorSeries OperatorSeries::from_list(const std::vector<Operator>& coeffs, int max_power) {
    if (coeffs.empty()) throw std::invalid_argument("series needs a dimension; pass at least one coefficient");
    OperatorSeries s(coeffs[0].dim(), max_power);
    for (int k = 0; k < int(coeffs.size()); ++k)
        if (k + 1 <= max_power) s.set(k + 1, coeffs[k]);
    return s;
}

Operator OperatorSeries::coeff(int k) const {
    auto it = c_.find(k);
    if (it != c_.end()) return it->second;
    return Operator::zero(n_, -2 * k);
}

void OperatorSeries::set(int k, const Operator& c) {
    check_same_dim(c.dim(), n_, "series coefficient");
    if (k < 0 || k > max_) return;
    if (c.is_zero()) c_.erase(k);
    else c_[k] = c;
}

bool OperatorSeries::has_constant_term() const { return c_.count(0) > 0; }

OperatorSeries operator+(const OperatorSeries& a, const OperatorSeries& b) {
    OperatorSeries s = a;
    for (auto& [k, c] : b.c_) s.set(k, s.coeff(k) + c);
    return s;
}

OperatorSeries operator-(const OperatorSeries& a, const OperatorSeries& b) { return a + Scalar(-1) * b; }

OperatorSeries operator*(const Scalar& x, const OperatorSeries& a) {
    OperatorSeries s(a.n_, a.max_);
    for (auto& [k, c] : a.c_) s.set(k, c * x);
    return s;
}

OperatorSeries operator*(const OperatorSeries& a, const OperatorSeries& b) {
    check_same_dim(a.n_, b.n_, "series product");
    OperatorSeries s(a.n_, std::min(a.max_, b.max_));
    for (auto& [i, x] : a.c_)
        for (auto& [j, y] : b.c_)
            if (i + j <= s.max_) s.set(i + j, s.coeff(i + j) + x * y);
    return s;
}

OperatorSeries OperatorSeries::exp() const {
    if (has_constant_term()) throw std::domain_error("exp needs a series without constant term");
    OperatorSeries acc = constant(Operator::identity(n_), max_);
    OperatorSeries term = acc;
    for (int j = 1; j <= max_; ++j) {
        term = Scalar::rational(1, j) * (term * *this);
        acc = acc + term;
    }
    return acc;
}

OperatorSeries OperatorSeries::log1p() const {
    if (has_constant_term()) throw std::domain_error("log(1+X) needs X without constant term");
    OperatorSeries acc(n_, max_);
    OperatorSeries power = *this;
    for (int j = 1; j <= max_; ++j) {
        acc = acc + Scalar::rational(j % 2 ? 1 : -1, j) * power;
        power = power * *this;
    }
    return acc;
}

bool OperatorSeries::operator==(const OperatorSeries& o) const {
    if (n_ != o.n_) return false;
    int m = std::max(max_, o.max_);
    for (int k = 0; k <= m; ++k)
        if (coeff(k) != o.coeff(k)) return false;
    return true;
}

OperatorSeries conjugate_by_exponential(const Operator& d, const OperatorSeries& phi) {
    if (phi.has_constant_term()) throw std::domain_error("conjugate_by_exponential: phi has a constant term");
    OperatorSeries acc = OperatorSeries::constant(d, phi.max_power());
    OperatorSeries term = acc;
    for (int k = 1; k <= phi.max_power(); ++k) {
        term = Scalar::rational(1, k) * (phi * term - term * phi);
        if (term.coeffs().empty()) break;
        acc = acc + term;
    }
    return acc;
}

// ---- transfer

namespace {

// T_n = Σ over compositions Δ_{j1} h Δ_{j2} ... h Δ_{jk}
std::vector<Operator> transfer_words(const Multicomplex& mc, const Operator& h) {
    int m = delta_bound(mc.dim());
    std::vector<Operator> t(m + 1);
    for (int n = 1; n <= m; ++n) {
        Operator s = mc.delta(n);
        for (int j = 1; j < n; ++j) s += mc.delta(j) * h * t[n - j];
        t[n] = Operator(mc.dim(), s.columns(), 1 - 2 * n);
    }
    return t;
}

void check_contracts(const Multicomplex& mc, const DeformationRetract& r) {
    if (r.d != mc.deltas.at(0)) throw std::invalid_argument("retract does not contract Delta_0");
    auto rep = validate_retract(r);
    if (!rep.axioms_ok) throw std::invalid_argument("retract axioms fail");
}

}  // namespace

std::vector<Operator> transferred_deltas(const Multicomplex& mc, const DeformationRetract& r) {
    check_contracts(mc, r);
    auto t = transfer_words(mc, r.h);
    std::vector<Operator> out;
    for (int n = 1; n < int(t.size()); ++n) out.push_back(r.rho * t[n] * r.iota);
    return out;
}

bool check_degeneration(const Multicomplex& mc, const DeformationRetract& r) {
    for (auto& d : transferred_deltas(mc, r))
        if (!d.is_zero()) return false;
    return true;
}

OperatorSeries GaugeSolution::series(int max_power) const {
    OperatorSeries s(phis.empty() ? 0 : phis[0].dim(), max_power);
    for (int i = 0; i < int(phis.size()); ++i) s.set(i + 1, phis[i]);
    return s;
}

GaugeSolution gauge_from_retract(const Multicomplex& mc, const DeformationRetract& r) {
    if (!check_degeneration(mc, r)) throw DegenerationError("transferred tower is nonzero; no gauge solution");
    int n = mc.dim(), m = delta_bound(n);
    auto t = transfer_words(mc, r.h);
    OperatorSeries x(n, m);
    for (int k = 1; k <= m; ++k) x.set(k, r.iota * r.rho * t[k] * r.h - r.h * mc.delta(k));
    OperatorSeries phi = Scalar(-1) * x.log1p();
    GaugeSolution g;
    for (int k = 1; k <= n / 2; ++k) g.phis.push_back(Operator(n, phi.coeff(k).columns(), -2 * k));
    return g;
}

bool verify_gauge(const OperatorSeries& phi, const Multicomplex& mc) {
    int m = std::max(phi.max_power(), delta_bound(mc.dim()));
    OperatorSeries p(phi.dim(), m);
    for (auto& [k, c] : phi.coeffs()) p.set(k, c);
    OperatorSeries lhs = p.exp() * OperatorSeries::constant(mc.deltas.at(0), m) * (Scalar(-1) * p).exp();
    for (int k = 0; k <= m; ++k)
        if (lhs.coeff(k) != mc.delta(k)) return false;
    return true;
}

bool verify_gauge(const GaugeSolution& g, const Multicomplex& mc) {
    return verify_gauge(g.series(delta_bound(mc.dim())), mc);
}

Form m3_cochain(const Operator& phi, const Form& a, const Form& b, const Form& c) {
    for (auto* f : {&a, &b, &c})
        if (!f->is_homogeneous()) throw NotHomogeneous("m3 arguments must be homogeneous");
    int db = b.degree().value_or(0), dc = c.degree().value_or(0);
    Form ab = wedge(a, b), ac = wedge(a, c), bc = wedge(b, c);
    Form out = phi(wedge(ab, c));
    out += wedge(wedge(phi(a), b), c);
    out += wedge(wedge(a, phi(b)), c);
    out += wedge(ab, phi(c));
    out -= wedge(phi(ab), c);
    Form t = wedge(phi(ac), b);
    if ((db * dc) % 2) out += t;
    else out -= t;
    out -= wedge(a, phi(bc));
    return out;
}

Form m3_cohomology(const Operator& phi, const DeformationRetract& r, const Form& a, const Form& b, const Form& c) {
    for (auto* f : {&a, &b, &c})
        if (r.rho(*f) != *f) throw NotHarmonic("m3_cohomology arguments must be harmonic");
    return r.rho(m3_cochain(phi, r.iota(a), r.iota(b), r.iota(c)));
}

}  // namespace bvwb
