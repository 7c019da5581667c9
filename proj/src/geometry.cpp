#include "bvwb/geometry.hpp"

#include <algorithm>
#include <set>

namespace bvwb {

void ComplexStructureSpec::validate() const {
    int n = j.rows();
    if (n == 0 || j.cols() != n) throw InvalidStructure("J must be a square matrix");
    if (n % 2) throw InvalidStructure("J needs an even-dimensional algebra");
    if (!j.is_real()) throw InvalidStructure("J must be real");
    if (j * j != Scalar(-1) * Matrix::identity(n)) throw InvalidStructure("J^2 != -1");
}

Vec ComplexStructureSpec::apply(const Vec& v) const {
    Vec out(j.rows());
    for (int a = 0; a < j.rows(); ++a)
        for (int b = 0; b < j.cols(); ++b)
            if (!j(a, b).is_zero()) out[a] += j(a, b) * v[b];
    return out;
}

bool ComplexStructureSpec::compatible(const MetricSpec& g) const { return j.transpose() * g.gram * j == g.gram; }

Matrix adapted_frame(const ComplexStructureSpec& js) {
    js.validate();
    int n = js.j.rows();
    Matrix chosen(n, 0);
    for (int i = 0; i < n && chosen.cols() < n / 2; ++i) {
        Matrix v(n, 1);
        for (int a = 0; a < n; ++a) v(a, 0) = (a == i ? Scalar(1) : Scalar()) - Scalar::i() * js.j(a, i);
        Matrix trial = Matrix::hcat(chosen, v);
        if (rank(trial) == trial.cols()) chosen = trial;
    }
    Matrix full = Matrix::hcat(chosen, chosen.conj());
    if (rank(full) != n) throw InvalidStructure("could not build a J-adapted frame");
    return full;
}

Operator form_action(const ComplexStructureSpec& js, const Presentation& pres) {
    return algebra_map(pres.coframe_action(js.j));
}

void LagrangianPolarization::validate(int n, const Form& omega) const {
    if (int(lag.size()) * 2 != n || int(lag_prime.size()) * 2 != n)
        throw InvalidStructure("polarization halves must each have N/2 elements");
    std::set<int> all(lag.begin(), lag.end());
    all.insert(lag_prime.begin(), lag_prime.end());
    if (int(all.size()) != n || *all.begin() < 0 || *all.rbegin() >= n)
        throw InvalidStructure("polarization halves must be complementary index sets");
    auto vanishes = [&](const std::vector<int>& side) {
        for (int a : side)
            for (int b : side)
                if (a < b && !omega.coeff((Mask(1) << a) | (Mask(1) << b)).is_zero()) return false;
        return true;
    };
    if (!vanishes(lag)) throw InvalidStructure("omega does not vanish on L");
    if (!vanishes(lag_prime)) throw InvalidStructure("omega does not vanish on L'");
}

Bigrading bigrading_projectors(const ComplexStructureSpec& js, const Presentation& pres) {
    js.validate();
    Matrix m = pres.coframe_action(js.j);
    int n = m.rows();
    std::vector<bool> hol(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a != b && !m(a, b).is_zero()) throw InvalidStructure("coframe is not adapted to J");
            if (a == b) {
                if (m(a, a) == Scalar::i()) hol[a] = true;
                else if (m(a, a) == -Scalar::i()) hol[a] = false;
                else throw InvalidStructure("coframe is not adapted to J");
            }
        }
    return Bigrading::diagonal(n, hol);
}

Bigrading bigrading_projectors(const LagrangianPolarization& pol, int n) {
    std::vector<bool> hol(n, false);
    for (int i : pol.lag_prime) hol.at(i) = true;
    return Bigrading::diagonal(n, hol);
}

DifferentialComponents differential_components(const Operator& d, const Bigrading& bg) {
    if (d.require_degree("differential_components") != 1) throw DegreeError("differential_components needs degree +1");
    const std::vector<Bidegree> allowed{{-1, 2}, {0, 1}, {1, 0}, {2, -1}};
    for (auto& s : bg.shifts(d))
        if (std::find(allowed.begin(), allowed.end(), s) == allowed.end())
            throw InvalidStructure("differential has a component of bidegree " + s.str());
    DifferentialComponents c{bg.component(d, {-1, 2}), bg.component(d, {0, 1}), bg.component(d, {1, 0}),
                             bg.component(d, {2, -1})};
    if (c.mu_bar + c.del_bar + c.del + c.mu != d) throw InvalidStructure("bigraded components do not sum to d");
    return c;
}

bool NijenhuisTable::integrable() const {
    for (auto& e : entries)
        for (auto& c : e.value)
            if (!c.is_zero()) return false;
    return true;
}

NijenhuisTable nijenhuis_tensor(const ComplexStructureSpec& js, const LieAlgebraSpec& g) {
    js.validate();
    int n = g.dim();
    NijenhuisTable t;
    auto unit = [n](int i) {
        Vec v(n);
        v[i] = Scalar(1);
        return v;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec x = unit(i), y = unit(j), jx = js.apply(x), jy = js.apply(y);
            Vec a = g.bracket(x, y), b = js.apply(g.bracket(x, jy)), c = js.apply(g.bracket(jx, y)),
                e = g.bracket(jx, jy);
            Vec v(n);
            for (int k = 0; k < n; ++k) v[k] = a[k] + b[k] + c[k] - e[k];
            t.entries.push_back({i, j, v});
        }
    return t;
}

Form fundamental_form(const ComplexStructureSpec& js, const MetricSpec& g) {
    int n = js.j.rows();
    Form w(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Scalar c;
            for (int a = 0; a < n; ++a) c += js.j(a, i) * g.gram(a, j);
            w.add((Mask(1) << i) | (Mask(1) << j), c);
        }
    return w;
}

LefschetzTriple lefschetz_triple(const Form& omega, const Metric& metric) {
    if (omega.degree() != 2) throw InvalidStructure("fundamental form must have degree 2");
    int n = omega.dim();
    LefschetzTriple t;
    t.L = left_multiplication(omega);
    t.Lambda = metric_adjoint(t.L, metric);
    t.H = graded_commutator(t.L, t.Lambda);
    Operator expect = Operator::by_degree(n, [n](int k) { return Scalar(k - n / 2); });
    if (t.H != expect) throw InvalidStructure("[L, Lambda] is not (k - n) on degree k; omega and metric incompatible");
    return t;
}

TorsionOperators torsion_operators(const ComplexStructureSpec& js, const Metric& metric, const Presentation& pres,
                                   const Bigrading* bg) {
    js.validate();
    if (!js.compatible(metric.spec())) throw InvalidStructure("metric is not J-compatible");
    Form omega = pres.from_real(fundamental_form(js, metric.spec()));
    LefschetzTriple lt = lefschetz_triple(omega, metric);
    const Operator& d = pres.d;
    TorsionOperators t;
    t.L = lt.L;
    t.Lambda = lt.Lambda;
    t.domega = graded_commutator(d, t.L);
    t.T = graded_commutator(t.Lambda, t.domega);
    Operator jf = form_action(js, pres);
    ComplexStructureSpec jinv{Scalar(-1) * js.j};
    Operator jb = form_action(jinv, pres);
    t.d_c = jb * d * jf;
    t.T_c = jb * t.T * jf;
    t.domega_c = jb * t.domega * jf;
    t.d_c_adj = metric_adjoint(t.d_c, metric);
    t.T_c_adj = metric_adjoint(t.T_c, metric);
    t.domega_c_adj = metric_adjoint(t.domega_c, metric);
    if (bg) {
        auto c = differential_components(d, *bg);
        t.del = c.del;
        t.del_bar = c.del_bar;
        t.lambda = graded_commutator(c.del, t.L);
        t.tau = graded_commutator(t.Lambda, *t.lambda);
        t.lambda_adj = metric_adjoint(*t.lambda, metric);
        t.tau_adj = metric_adjoint(*t.tau, metric);
        t.del_adj = metric_adjoint(c.del, metric);
        t.del_bar_adj = metric_adjoint(c.del_bar, metric);
    }
    return t;
}

SymplecticForm::SymplecticForm(const Form& omega) : omega_(omega) {
    int n = omega.dim();
    if (!omega.is_zero() && omega.degree() != 2) throw InvalidStructure("symplectic form must have degree 2");
    if (n % 2) throw InvalidStructure("symplectic form needs even dimension");
    w_ = Matrix(n, n);
    for (auto& [m, c] : omega.terms()) {
        int a = __builtin_ctz(m), b = 31 - __builtin_clz(m);
        w_(a, b) = c;
        w_(b, a) = -c;
    }
    Matrix winv;
    try {
        winv = inverse(w_);
    } catch (const std::domain_error&) {
        throw InvalidStructure("omega is degenerate");
    }
    pairing_ = FormPairing(winv, false);
    Form top = wedge_power_normalized(omega, n / 2);
    volume_ = top.coeff((Mask(1) << n) - 1);
    if (volume_.is_zero()) throw InvalidStructure("omega^n vanishes");
    star_ = pairing_.star(volume_);
    if (!(star_ * star_ == Operator::identity(n))) throw std::logic_error("symplectic star does not square to one");
    if (star_(Form::one(n)) != top) throw std::logic_error("symplectic star of 1 differs from omega^n/n!");
    l_ = left_multiplication(omega);
    lambda_ = star_ * l_ * star_;
}

Operator symplectic_star(const Form& omega) { return SymplecticForm(omega).star(); }

Operator symplectic_adjoint(const Operator& f, const SymplecticForm& w) { return w.pairing().adjoint(f); }

Operator symplectic_adjoint_by_star(const Operator& f, const SymplecticForm& w, StarShape shape) {
    int p = f.require_degree("symplectic_adjoint_by_star");
    int n = w.dim();
    Operator sfs = w.star() * f * w.star();
    return Operator::from_function(n, -p, [&](Mask m) {
        int k = popcount(m);
        int e = shape == StarShape::Differential ? k : p * (k - p);
        Form col = sfs.column(m);
        if (e % 2) col *= Scalar(-1);
        return col;
    });
}

Operator polarized_dual(const Operator& full, Bidegree b, const Bigrading& bg, const SymplecticForm& w) {
    Operator mirror = bg.component(full, Bidegree{b.q, b.p});
    return symplectic_adjoint(mirror, w).with_bidegree(Bidegree{-b.p, -b.q});
}

PoissonBivector PoissonBivector::from_upper(int n, const std::vector<std::tuple<int, int, Scalar>>& terms) {
    PoissonBivector p{n, Matrix(n, n)};
    for (auto& [i, j, c] : terms) {
        if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw std::out_of_range("bivector index out of range");
        p.pi(i, j) += c;
        p.pi(j, i) -= c;
    }
    return p;
}

Operator poisson_contraction(const PoissonBivector& pi) {
    int n = pi.n;
    Operator out = Operator::zero(n, -2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!pi.pi(i, j).is_zero()) out += pi.pi(i, j) * (contraction(n, j) * contraction(n, i));
    return out;
}

PoissonBivector inverse_bivector(const SymplecticForm& w) {
    return PoissonBivector{w.dim(), inverse(w.matrix())};
}

bool poisson_valid(const PoissonBivector& pi, const Operator& d) {
    Operator delta = graded_commutator(poisson_contraction(pi), d);
    return (delta * delta).is_zero();
}

bool lagrangian_integrable(const LagrangianPolarization& pol, const LieAlgebraSpec& g, LagrangianSide side) {
    const auto& s = side == LagrangianSide::Lag ? pol.lag : pol.lag_prime;
    std::set<int> in(s.begin(), s.end());
    for (int a : s)
        for (int b : s) {
            if (a >= b) continue;
            Vec v = g.bracket(a, b);
            for (int k = 0; k < g.dim(); ++k)
                if (!v[k].is_zero() && !in.count(k)) return false;
        }
    return true;
}

}  // namespace bvwb
