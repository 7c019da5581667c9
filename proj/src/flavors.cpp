#include "bvwb/flavors.hpp"

#include <sstream>

namespace bvwb {

namespace {

const std::vector<std::pair<Flavor, std::string>>& names() {
    static const std::vector<std::pair<Flavor, std::string>> t{
        {Flavor::HermitianDolbeault, "hermitian-dolbeault"}, {Flavor::HermitianReal, "hermitian-real"},
        {Flavor::AlmostHermitian, "almost-hermitian"},       {Flavor::AlmostSymplectic, "almost-symplectic"},
        {Flavor::SymplecticKoszul, "symplectic-koszul"},     {Flavor::LagrangianDolbeault, "lagrangian-dolbeault"},
        {Flavor::PoissonKoszul, "poisson-koszul"},
    };
    return t;
}

}  // namespace

std::string flavor_name(Flavor f) {
    for (auto& [k, v] : names())
        if (k == f) return v;
    return "?";
}

Flavor parse_flavor(const std::string& s) {
    for (auto& [k, v] : names())
        if (v == s) return k;
    throw std::invalid_argument("unknown flavor '" + s + "'");
}

const std::vector<Flavor>& all_flavors() {
    static const std::vector<Flavor> v = [] {
        std::vector<Flavor> out;
        for (auto& p : names()) out.push_back(p.first);
        return out;
    }();
    return v;
}

IdentityCheck check_equal(const std::string& name, const Operator& lhs, const Operator& rhs,
                          const std::vector<std::string>& labels) {
    IdentityCheck c{name, lhs == rhs, ""};
    if (!c.ok) c.detail = "lhs:\n" + format_operator(lhs, labels) + "rhs:\n" + format_operator(rhs, labels);
    return c;
}

namespace {

bool is_closed(const Form& f, const Operator& d) { return d(f).is_zero(); }

std::optional<std::string> need_metric_j(const Structures& s, bool integrable) {
    if (!s.metric) return "needs a metric";
    if (!s.j) return "needs a complex structure";
    try {
        s.metric->validate();
        s.j->validate();
    } catch (const std::exception& e) {
        return std::string(e.what());
    }
    if (!s.j->compatible(*s.metric)) return "metric is not J-compatible";
    if (integrable && !nijenhuis_tensor(*s.j, s.algebra).integrable()) return "J is not integrable";
    return std::nullopt;
}

std::optional<std::string> need_omega(const Structures& s, bool closed) {
    if (!s.omega) return "needs a symplectic form";
    try {
        SymplecticForm w(*s.omega);
    } catch (const std::exception& e) {
        return std::string(e.what());
    }
    if (closed && !is_closed(*s.omega, ce_differential(s.algebra))) return "omega is not closed";
    return std::nullopt;
}

}  // namespace

std::optional<std::string> flavor_unavailable(Flavor f, const Structures& s) {
    switch (f) {
    case Flavor::HermitianDolbeault:
    case Flavor::HermitianReal:
        return need_metric_j(s, true);
    case Flavor::AlmostHermitian:
        return need_metric_j(s, false);
    case Flavor::AlmostSymplectic:
        return need_omega(s, false);
    case Flavor::SymplecticKoszul:
        return need_omega(s, true);
    case Flavor::LagrangianDolbeault: {
        if (auto r = need_omega(s, false)) return r;
        if (!s.polarization) return "needs a Lagrangian polarization";
        try {
            s.polarization->validate(s.algebra.dim(), *s.omega);
        } catch (const std::exception& e) {
            return std::string(e.what());
        }
        if (!lagrangian_integrable(*s.polarization, s.algebra, LagrangianSide::Lag)) return "L is not integrable";
        return std::nullopt;
    }
    case Flavor::PoissonKoszul:
        if (!s.pi) return "needs a Poisson bivector";
        if (!poisson_valid(*s.pi, ce_differential(s.algebra))) return "[i_pi, d] does not square to zero";
        return std::nullopt;
    }
    return "unknown flavor";
}

Presentation complex_presentation(const Structures& s) {
    if (!s.j) throw MissingStructure("complex presentation needs J");
    int n = s.algebra.dim();
    std::vector<std::string> labels = s.complex_labels;
    if (labels.empty()) {
        for (int k = 1; k <= n / 2; ++k) labels.push_back("w" + std::to_string(k));
        for (int k = 1; k <= n / 2; ++k) labels.push_back("w" + std::to_string(k) + "bar");
    }
    std::vector<std::string> vlabels;
    for (auto& l : labels) {
        std::string v = l;
        if (!v.empty()) v[0] = char(std::toupper(static_cast<unsigned char>(v[0])));
        vlabels.push_back(v);
    }
    return complexify(s.algebra, adapted_frame(*s.j), vlabels, labels);
}

namespace {

struct Builder {
    BvBuild& b;
    const std::vector<std::string>& labels;

    void eq(const std::string& name, const Operator& l, const Operator& r) {
        b.cert.identities.push_back(check_equal(name, l, r, labels));
    }
    void truth(const std::string& name, bool ok, const std::string& detail = "") {
        b.cert.identities.push_back(IdentityCheck{name, ok, ok ? "" : detail});
    }
    void name(const std::string& k, const Operator& op) { b.named.emplace(k, op); }
};

Metric retract_metric(const Structures& s, const Presentation& pres) {
    return Metric(s.metric ? *s.metric : MetricSpec::identity(s.algebra.dim()), pres);
}

void finish_common(BvBuild& b, Builder& w) {
    b.cert = validate_bv_infinity(b.cert.mc, flavor_name(b.flavor));
    const auto& mc = b.cert.mc;
    int m = delta_bound(mc.dim());
    OperatorSeries lam(mc.dim(), m);
    lam.set(1, b.lambda);
    OperatorSeries conj = conjugate_by_exponential(b.delta0, lam);
    bool same = true;
    for (int k = 0; k <= m; ++k) same = same && conj.coeff(k) == mc.delta(k);
    w.truth("Ad(exp(Lambda xi)) Delta_0 = sum Delta_k xi^k", same);
    w.truth("gauge equation for phi = Lambda xi", verify_gauge(lam, mc));
    w.truth("Delta_3 = 0", mc.delta(3).is_zero());
    for (int i = 0; i <= mc.bound(); ++i) w.name("Delta_" + std::to_string(i), mc.deltas[i]);
    w.name("Lambda", b.lambda);
}

}  // namespace

BvBuild build_bv(Flavor f, const Structures& s) {
    if (auto why = flavor_unavailable(f, s)) throw MissingStructure(flavor_name(f) + ": " + *why);
    const LieAlgebraSpec& g = s.algebra;
    bool complex = f == Flavor::HermitianDolbeault;
    Presentation pres = complex ? complex_presentation(s) : real_presentation(g);
    BvBuild b{f, pres, pres.d, Operator::zero(g.dim(), -2), std::nullopt, std::nullopt, {}, {}};
    Builder w{b, b.pres.labels()};
    const Operator& d = b.pres.d;
    int n = g.dim();
    Multicomplex& mc = b.cert.mc;
    std::vector<IdentityCheck> pending;

    switch (f) {
    case Flavor::HermitianDolbeault: {
        Metric metric(*s.metric, b.pres);
        Bigrading bg = bigrading_projectors(*s.j, b.pres);
        TorsionOperators t = torsion_operators(*s.j, metric, b.pres, &bg);
        b.delta0 = *t.del_bar;
        if (!(b.delta0 * b.delta0).is_zero()) throw BvViolation("dbar^2 != 0");
        b.lambda = t.Lambda;
        mc = delta_tower(b.delta0, b.lambda);
        Operator demailly = Scalar(0, -1) * (*t.del_adj + *t.tau_adj);
        w.eq("[Lambda, dbar] = -i(del* + tau*)", graded_commutator(b.lambda, b.delta0), demailly);
        w.eq("Delta_1 = -i(del* + tau*)", mc.delta(1), demailly);
        w.eq("Delta_2 = i lambda*", mc.delta(2), Scalar::i() * *t.lambda_adj);
        Operator star = hodge_star(metric);
        w.eq("del* = -*dbar* (Hermitian adjoint vs star sandwich)", *t.del_adj, -(star * *t.del_bar * star));
        w.eq("T = tau + conj(tau)", t.T, *t.tau + b.pres.conjugate(*t.tau));
        w.name("del", *t.del);
        w.name("dbar", *t.del_bar);
        w.name("lambda", *t.lambda);
        w.name("tau", *t.tau);
        b.bigrading = bg;
        b.metric = metric;
        break;
    }
    case Flavor::HermitianReal:
    case Flavor::AlmostHermitian: {
        Metric metric(*s.metric, b.pres);
        TorsionOperators t = torsion_operators(*s.j, metric, b.pres);
        b.lambda = t.Lambda;
        mc = delta_tower(d, b.lambda);
        Operator rhs = -(t.d_c_adj + t.T_c_adj);
        w.eq("[Lambda, d] = -(d_c* + T_c*)", graded_commutator(b.lambda, d), rhs);
        w.eq("Delta_1 = -(d_c* + T_c*)", mc.delta(1), rhs);
        w.eq("Delta_2 = domega_c*", mc.delta(2), t.domega_c_adj);
        SymplecticForm sw(fundamental_form(*s.j, *s.metric));
        Operator dw = symplectic_adjoint(d, sw);
        Operator dlw = symplectic_adjoint(t.domega, sw);
        Operator tw = symplectic_adjoint(t.T, sw);
        w.eq("Lambda = Lambda_omega", b.lambda, sw.Lambda());
        w.eq("d_c* = -d^omega", t.d_c_adj, -dw);
        w.eq("domega_c* = -[d,L]^omega", t.domega_c_adj, -dlw);
        w.eq("T_c* = -[Lambda,[d,L]]^omega", t.T_c_adj, -tw);
        if (f == Flavor::HermitianReal) {
            Presentation cp = complex_presentation(s);
            Metric cm(*s.metric, cp);
            Bigrading bg = bigrading_projectors(*s.j, cp);
            TorsionOperators ct = torsion_operators(*s.j, cm, cp, &bg);
            Operator dol = graded_commutator(ct.Lambda, *ct.del_bar);
            w.eq("Delta_1 = Delta_1(Dolbeault) + conj(Delta_1(Dolbeault))", cp.from_real(mc.delta(1)),
                 dol + cp.conjugate(dol));
            w.eq("T = tau + conj(tau)", cp.from_real(t.T), *ct.tau + cp.conjugate(*ct.tau));
        }
        w.name("d_c", t.d_c);
        w.name("T", t.T);
        b.metric = metric;
        break;
    }
    case Flavor::AlmostSymplectic: {
        SymplecticForm sw(*s.omega);
        b.lambda = sw.Lambda();
        mc = delta_tower(d, b.lambda);
        Operator dl = graded_commutator(d, sw.L());
        Operator t = graded_commutator(b.lambda, dl);
        Operator dw = symplectic_adjoint(d, sw), dlw = symplectic_adjoint(dl, sw), tw = symplectic_adjoint(t, sw);
        w.eq("L^omega = Lambda_omega", symplectic_adjoint(sw.L(), sw), b.lambda);
        w.eq("d^omega = (-1)^k *d*", dw, symplectic_adjoint_by_star(d, sw, StarShape::Differential));
        w.eq("[d,L]^omega = (-1)^{p(k-p)} *[d,L]*", dlw, symplectic_adjoint_by_star(dl, sw, StarShape::OrderZero));
        w.eq("[Lambda, d] = d^omega + [Lambda,[d,L]]^omega", graded_commutator(b.lambda, d), dw + tw);
        w.eq("Delta_1 = d^omega + [Lambda,[d,L]]^omega", mc.delta(1), dw + tw);
        w.eq("Delta_2 = -[d,L]^omega", mc.delta(2), -dlw);
        b.cert.notes.push_back("adjoints: algebraic <,>_omega-adjoint for every operator; star formulas cross-checked");
        w.name("d^omega", dw);
        w.name("T", t);
        break;
    }
    case Flavor::SymplecticKoszul: {
        SymplecticForm sw(*s.omega);
        b.lambda = sw.Lambda();
        mc = delta_tower(d, b.lambda);
        PoissonBivector winv = inverse_bivector(sw);
        PoissonBivector pi{n, Scalar(-1) * winv.pi};
        Operator ip = poisson_contraction(pi);
        Operator dw = symplectic_adjoint(d, sw);
        w.eq("i_{omega^-1} = -Lambda", poisson_contraction(winv), -b.lambda);
        w.eq("Delta_1 = d^omega", mc.delta(1), dw);
        w.eq("Delta_1 = [i_pi, d] with pi = -omega^-1", mc.delta(1), graded_commutator(ip, d));
        w.eq("Delta_2 = 0", mc.delta(2), Operator::zero(n, -3));
        Form biv(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) biv.add((Mask(1) << i) | (Mask(1) << j), pi.pi(i, j));
        b.cert.notes.push_back("pi = -omega^-1 = " + format_form(biv, g.labels(), "^"));
        w.name("i_pi", ip);
        break;
    }
    case Flavor::LagrangianDolbeault: {
        SymplecticForm sw(*s.omega);
        Bigrading bg = bigrading_projectors(*s.polarization, n);
        auto c = differential_components(d, bg);
        w.truth("mu_bar = 0", c.mu_bar.is_zero());
        w.truth("L integrable", lagrangian_integrable(*s.polarization, g, LagrangianSide::Lag));
        b.delta0 = c.del_bar;
        if (!(b.delta0 * b.delta0).is_zero()) throw BvViolation("dbar^2 != 0");
        b.lambda = sw.Lambda();
        mc = delta_tower(b.delta0, b.lambda);
        Operator dl = graded_commutator(d, sw.L());
        Operator t = graded_commutator(b.lambda, dl);
        Operator delw = polarized_dual(d, {1, 0}, bg, sw);
        Operator tw = polarized_dual(t, {1, 0}, bg, sw);
        Operator dlw = polarized_dual(dl, {2, 1}, bg, sw);
        w.eq("del^omega = (-1)^k * dbar *", delw, symplectic_adjoint_by_star(c.del_bar, sw, StarShape::Differential));
        w.eq("Delta_1 = del^omega + [Lambda,[del,L]]^omega", mc.delta(1), delw + tw);
        w.eq("Delta_2 = -[del,L]^omega", mc.delta(2), -dlw);
        if (d(*s.omega).is_zero()) {
            w.eq("Delta_1 = del^omega (strict BV)", mc.delta(1), delw);
            w.eq("Delta_2 = 0", mc.delta(2), Operator::zero(n, -3));
            b.cert.notes.push_back("Delta_2 = 0: d omega = 0");
        }
        if (s.metric) {
            for (int a : s.polarization->lag)
                for (int bb : s.polarization->lag_prime)
                    if (!s.metric->gram(a, bb).is_zero()) throw MissingStructure("metric must make L and L' orthogonal");
        }
        w.name("del", c.del);
        w.name("dbar", c.del_bar);
        w.name("mu", c.mu);
        w.name("del^omega", delw);
        b.bigrading = bg;
        break;
    }
    case Flavor::PoissonKoszul: {
        Operator ip = poisson_contraction(*s.pi);
        OrderChecker oc;
        w.truth("i_pi has order <= 2", oc.at_most(ip, 2));
        b.lambda = ip;
        mc = delta_tower(d, ip);
        Operator delta = graded_commutator(ip, d);
        w.eq("Delta_1 = [i_pi, d]", mc.delta(1), delta);
        w.truth("Delta_1^2 = 0", (delta * delta).is_zero());
        w.eq("Delta_2 = 0", mc.delta(2), Operator::zero(n, -3));
        w.name("i_pi", ip);
        break;
    }
    }
    if (!b.metric) b.metric = retract_metric(s, b.pres);
    auto ids = b.cert.identities;
    auto notes = b.cert.notes;
    finish_common(b, w);
    ids.insert(ids.end(), b.cert.identities.begin(), b.cert.identities.end());
    b.cert.identities = ids;
    notes.insert(notes.end(), b.cert.notes.begin(), b.cert.notes.end());
    b.cert.notes = notes;
    return b;
}

}  // namespace bvwb
