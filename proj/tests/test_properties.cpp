#include "fixtures.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace bvwb;

namespace {

constexpr unsigned kSeed = 20261014;

struct Gen {
    std::mt19937 rng{kSeed};
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    Scalar rational() { return Scalar(mpq_class(integer(-4, 4), integer(1, 3))); }
    Scalar complex() { return Scalar(mpq_class(integer(-3, 3), integer(1, 2)), mpq_class(integer(-3, 3), integer(1, 2))); }
    Form form(int n, int max_terms, bool cplx = false) {
        Form f(n);
        int t = integer(0, max_terms);
        for (int i = 0; i < t; ++i) f.add(Mask(integer(0, (1 << n) - 1)), cplx ? complex() : rational());
        return f;
    }
    Form homogeneous(int n, int k, int max_terms) {
        Form f(n);
        auto words = basis_words(n, k);
        if (words.empty()) return f;
        int t = integer(1, max_terms);
        for (int i = 0; i < t; ++i) f.add(words[integer(0, int(words.size()) - 1)], rational());
        return f;
    }
    // 2-step nilpotent: brackets of the first c vectors land in the last n - c (central) ones
    LieAlgebraSpec two_step(int n, int c) {
        std::vector<std::string> labels;
        for (int i = 0; i < n; ++i) labels.push_back("E" + std::to_string(i + 1));
        LieAlgebraSpec s(n, labels);
        for (int i = 0; i < c; ++i)
            for (int j = i + 1; j < c; ++j) {
                if (integer(0, 2) == 0) continue;
                Vec v(n);
                for (int k = c; k < n; ++k) v[k] = Scalar(integer(-2, 2));
                s.set_bracket(i, j, v);
            }
        return s;
    }
    std::vector<Scalar> square_diagonal(int n) {
        std::vector<Scalar> d;
        for (int i = 0; i < n; ++i) {
            long p = integer(1, 3), q = integer(1, 2);
            d.push_back(Scalar(mpq_class(p * p, q * q)));
        }
        return d;
    }
    Form symplectic(int n) {
        for (;;) {
            Form w = homogeneous(n, 2, 2 * n);
            try {
                SymplecticForm s(w);
                return w;
            } catch (const InvalidStructure&) {
            }
        }
    }
};

Operator sign_by_degree(int n, const std::function<int(int)>& s) {
    return Operator::by_degree(n, [&](int k) { return Scalar(s(k)); });
}

}  // namespace

TEST(Properties, WedgeAgreesWithIndexOracle) {
    Gen g;
    for (int trial = 0; trial < 60; ++trial) {
        int n = g.integer(1, 6);
        Form a = g.form(n, 5, true), b = g.form(n, 5, true), c = g.form(n, 5);
        EXPECT_EQ(wedge(a, b), oracle::wedge(a, b));
        EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
        EXPECT_EQ(oracle::dense(left_multiplication(a)), oracle::left_mult(a));
    }
}

TEST(Properties, WedgeIsGradedCommutative) {
    Gen g;
    for (int trial = 0; trial < 60; ++trial) {
        int n = g.integer(2, 6), p = g.integer(0, n), q = g.integer(0, n);
        Form a = g.homogeneous(n, p, 4), b = g.homogeneous(n, q, 4);
        Form ba = wedge(b, a);
        EXPECT_EQ(wedge(a, b), (p * q) % 2 ? -ba : ba);
    }
}

TEST(Properties, GradedJacobiForCommutators) {
    Gen g;
    for (int trial = 0; trial < 25; ++trial) {
        int n = g.integer(2, 5);
        std::vector<Form> vals;
        for (int i = 0; i < n; ++i) vals.push_back(g.homogeneous(n, 2, 2));
        Operator f = derivation(n, 1, vals);
        Operator h = contraction(n, g.integer(0, n - 1)) * contraction(n, g.integer(0, n - 1));
        Operator l = left_multiplication(g.homogeneous(n, 1, 3));
        int df = 1, dh = -2;
        auto gc = graded_commutator;
        // [f,[h,l]] = [[f,h],l] + (-1)^{|f||h|} [h,[f,l]]
        Operator lhs = gc(f, gc(h, l));
        Operator rhs = gc(gc(f, h), l) + Scalar((df * dh) % 2 ? -1 : 1) * gc(h, gc(f, l));
        EXPECT_EQ(lhs, rhs);
        EXPECT_EQ(oracle::dense(gc(f, l)), oracle::commutator(oracle::dense(f), 1, oracle::dense(l), 1));
    }
}

TEST(Properties, OrderIsClosedUnderCompositionAndCommutator) {
    Gen g;
    OrderChecker oc;
    for (int trial = 0; trial < 20; ++trial) {
        int n = g.integer(2, 5);
        Operator i1 = contraction(n, g.integer(0, n - 1));
        Operator i2 = contraction(n, g.integer(0, n - 1));
        Operator l = left_multiplication(g.homogeneous(n, g.integer(0, 2), 3));
        Operator two = i1 * i2 * l;  // order <= 2
        EXPECT_TRUE(oc.at_most(i1, 1));
        EXPECT_TRUE(oc.at_most(l, 0));
        EXPECT_TRUE(oc.at_most(two, 2));
        // [order r, order s] has order <= r + s - 1
        EXPECT_TRUE(oc.at_most(graded_commutator(two, i1), 2));
        EXPECT_TRUE(oc.at_most(graded_commutator(two, l), 1));
        EXPECT_TRUE(oc.at_most(two * i1, 3));
    }
}

TEST(Properties, DerivationsHaveOrderAtMostOne) {
    Gen g;
    for (int trial = 0; trial < 20; ++trial) {
        int n = g.integer(2, 5), deg = g.integer(-1, 1);
        std::vector<Form> vals;
        for (int i = 0; i < n; ++i) vals.push_back(deg + 1 >= 0 ? g.homogeneous(n, deg + 1, 2) : Form(n));
        Operator f = derivation(n, deg, vals);
        EXPECT_TRUE(algebraic_order_at_most(f, 1));
        Form a = g.homogeneous(n, 1, 2), b = g.homogeneous(n, 2, 2);
        Scalar s = (deg % 2) ? Scalar(-1) : Scalar(1);
        EXPECT_EQ(f(wedge(a, b)), wedge(f(a), b) + s * wedge(a, f(b)));
    }
}

TEST(Properties, RandomAlgebraDifferentialAgreesWithKoszulOracle) {
    Gen g;
    for (int trial = 0; trial < 15; ++trial) {
        int n = g.integer(3, 6), c = g.integer(2, n - 1);
        LieAlgebraSpec s = g.two_step(n, c);
        ASSERT_TRUE(validate_jacobi(s).ok);
        Operator d = ce_differential(s);
        EXPECT_EQ(oracle::dense(d), oracle::ce_differential(n, [&](int i, int j) { return s.bracket(i, j); }));
        EXPECT_TRUE((d * d).is_zero());
    }
}

TEST(Properties, HodgeStarSquaresAndCodifferential) {
    Gen g;
    for (int trial = 0; trial < 10; ++trial) {
        int n = g.integer(2, 6), c = g.integer(2, n);
        LieAlgebraSpec s = g.two_step(n, c);
        Presentation p = real_presentation(s);
        Metric m(MetricSpec::diagonal(g.square_diagonal(n)), p);
        Operator star = hodge_star(m);
        EXPECT_EQ(star * star, sign_by_degree(n, [n](int k) { return (k * (n - k)) % 2 ? -1 : 1; }));
        Operator dstar = metric_adjoint(p.d, m);
        // odd N: (-1)^k ⋆d⋆ on k-forms
        Operator expect = n % 2 == 0 ? -(star * p.d * star)
                                     : (star * p.d * star) * sign_by_degree(n, [](int k) { return k % 2 ? -1 : 1; });
        EXPECT_EQ(dstar, expect) << "n=" << n;
        EXPECT_EQ(oracle::dense(dstar), oracle::adjoint(oracle::dense(p.d), oracle::exterior_gram(m.hermitian().gram(1))));
    }
}

TEST(Properties, SymplecticStarIsAnInvolutionAndLefschetzIsSl2) {
    Gen g;
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 * g.integer(1, 3);
        SymplecticForm w(g.symplectic(n));
        EXPECT_EQ(w.star() * w.star(), Operator::identity(n));
        EXPECT_EQ(w.star()(Form::one(n)), wedge_power_normalized(w.omega(), n / 2));
        Operator h = graded_commutator(w.L(), w.Lambda());
        Operator expect = Operator::by_degree(n, [n](int k) { return Scalar(k - n / 2); });
        EXPECT_TRUE(h == expect || h == -expect);
        EXPECT_EQ(graded_commutator(h, w.L()), Scalar(h == expect ? 2 : -2) * w.L());
    }
}

TEST(Properties, KaehlerSl2OnCatalog) {
    for (const char* name : {"abelian-2", "abelian-4", "abelian-6", "kodaira-thurston-complex"}) {
        auto st = fx::catalog(name);
        Presentation cp = complex_presentation(st);
        Metric m(*st.metric, cp);
        auto t = lefschetz_triple(cp.from_real(fundamental_form(*st.j, *st.metric)), m);
        EXPECT_EQ(graded_commutator(t.H, t.L), Scalar(2) * t.L) << name;
        EXPECT_EQ(graded_commutator(t.H, t.Lambda), Scalar(-2) * t.Lambda) << name;
    }
}

TEST(Properties, HodgeDecompositionIsOrthogonalAndComplete) {
    Gen g;
    for (int trial = 0; trial < 10; ++trial) {
        int n = g.integer(2, 6), c = g.integer(2, n);
        LieAlgebraSpec s = g.two_step(n, c);
        Presentation p = real_presentation(s);
        Metric m(MetricSpec::diagonal(g.square_diagonal(n)), p);
        auto hd = harmonic_decomposition(p.d, m);
        auto betti = cohomology_basis(p.d).betti();
        for (int k = 0; k <= n; ++k) {
            const auto& pc = hd.pieces[k];
            const Matrix& gk = m.hermitian().gram(k);
            EXPECT_EQ(pc.harmonic.cols() + pc.exact.cols() + pc.coexact.cols(), int(basis_words(n, k).size()));
            EXPECT_EQ(pc.harmonic.cols(), betti[k]);
            EXPECT_TRUE((pc.harmonic.transpose() * gk * pc.exact).is_zero());
            EXPECT_TRUE((pc.harmonic.transpose() * gk * pc.coexact).is_zero());
            EXPECT_TRUE((pc.exact.transpose() * gk * pc.coexact).is_zero());
        }
    }
}

TEST(Properties, CanonicalRetractAxiomsOnRandomAlgebras) {
    Gen g;
    for (int trial = 0; trial < 10; ++trial) {
        int n = g.integer(2, 6), c = g.integer(2, n);
        LieAlgebraSpec s = g.two_step(n, c);
        Presentation p = real_presentation(s);
        Metric m(MetricSpec::diagonal(g.square_diagonal(n)), p);
        auto r = canonical_retract(p.d, m);
        auto rep = validate_retract(r);
        EXPECT_TRUE(rep.ok()) << (rep.violated.empty() ? "" : rep.violated[0]);
        Matrix k = oracle::exterior_gram(m.hermitian().gram(1));
        EXPECT_EQ(oracle::dense(r.h), oracle::green_homotopy(oracle::dense(p.d), k));
    }
}

TEST(Properties, EveryFlavorCertifiesOnTheCatalog) {
    int built = 0;
    for (const auto& name : builtin_names()) {
        auto st = fx::catalog(name);
        for (Flavor f : all_flavors()) {
            if (flavor_unavailable(f, st)) continue;
            BvBuild b = build_bv(f, st);
            ++built;
            EXPECT_TRUE(b.cert.relations.ok) << name << " " << flavor_name(f);
            for (auto& o : b.cert.orders) EXPECT_TRUE(o.ok) << name << " " << flavor_name(f) << " Delta_" << o.i;
            for (auto& id : b.cert.identities) EXPECT_TRUE(id.ok) << name << " " << flavor_name(f) << " " << id.name;
            // gauge from the canonical retract
            auto r = canonical_retract(b.delta0, *b.metric);
            EXPECT_TRUE(validate_retract(r).ok()) << name;
            for (auto& dp : transferred_deltas(b.cert.mc, r)) EXPECT_TRUE(dp.is_zero()) << name << " " << flavor_name(f);
            auto gs = gauge_from_retract(b.cert.mc, r);
            EXPECT_TRUE(verify_gauge(gs, b.cert.mc)) << name << " " << flavor_name(f);
            EXPECT_EQ(graded_commutator(gs.phis[0], b.delta0), b.cert.mc.delta(1)) << name << " " << flavor_name(f);
        }
    }
    EXPECT_EQ(built, 31);
}

TEST(Properties, M3CochainIsGradedSymmetric) {
    Gen g;
    auto st = fx::catalog("iwasawa-lagrangian");
    BvBuild b = build_bv(Flavor::LagrangianDolbeault, st);
    auto r = canonical_retract(b.delta0, *b.metric);
    Operator phi = gauge_from_retract(b.cert.mc, r).phis[0];
    for (int trial = 0; trial < 15; ++trial) {
        int p = g.integer(1, 2), q = g.integer(1, 2), s = g.integer(1, 2);
        Form a = g.homogeneous(6, p, 2), bb = g.homogeneous(6, q, 2), c = g.homogeneous(6, s, 2);
        Form abc = m3_cochain(phi, a, bb, c);
        EXPECT_EQ(m3_cochain(phi, bb, a, c), Scalar((p * q) % 2 ? -1 : 1) * abc);
        EXPECT_EQ(m3_cochain(phi, a, c, bb), Scalar((q * s) % 2 ? -1 : 1) * abc);
        EXPECT_EQ(abc, oracle::m3(phi, a, bb, c));
    }
}

TEST(Properties, RandomScenariosRoundTrip) {
    Gen g;
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 * g.integer(1, 3), c = g.integer(2, n);
        LieAlgebraSpec s = g.two_step(n, c);
        std::ostringstream o;
        o << "[meta]\nname random-" << trial << "\ndescription seeded sample\n\n[algebra]\nbasis";
        for (auto& l : s.labels()) o << " " << l;
        o << "\n";
        for (auto& br : s.brackets()) {
            o << "bracket " << s.labels()[br.i] << " " << s.labels()[br.j] << " ->";
            bool first = true;
            for (auto& [w, x] : br.value.terms()) {
                o << (first ? " " : " + ") << "(" << x.str() << ") " << s.labels()[__builtin_ctz(w)];
                first = false;
            }
            o << "\n";
        }
        o << "\n[parameters]\np " << g.rational().str() << "\n\n[metric]\ndiagonal";
        for (auto& d : g.square_diagonal(n)) o << " " << d.str();
        o << "\n\n[poisson]\npi p E1^E2\n";
        Scenario sc = parse_scenario_text(o.str());
        std::string text = serialize_scenario(sc);
        EXPECT_EQ(parse_scenario_text(text), sc) << o.str();
        EXPECT_EQ(int(sc.brackets.size()), int(s.brackets().size()));
        auto values = sc.parameter_values();
        PoissonBivector pi = PoissonBivector::from_upper(n, {{0, 1, values.at("p")}});
        if (poisson_valid(pi, ce_differential(s))) {
            Structures st = instantiate(sc, values);
            EXPECT_EQ(st.algebra, s) << o.str();
            EXPECT_EQ(st.pi->pi, pi.pi);
        } else {
            EXPECT_THROW(instantiate(sc, values), ScenarioError);
        }
    }
}
