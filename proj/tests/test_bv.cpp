#include "fixtures.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace bvwb;
using fx::kt;

namespace {

struct Transfer {
    BvBuild b;
    DeformationRetract r;
    GaugeSolution g;
    explicit Transfer(Flavor f, const Structures& st)
        : b(build_bv(f, st)), r(canonical_retract(b.delta0, *b.metric)), g(gauge_from_retract(b.cert.mc, r)) {}
    const Operator& phi1() const { return g.phis.at(0); }
};

const std::vector<std::string> iw{"x1", "x2", "x3", "x4", "x5", "x6"};

}  // namespace

TEST(Tower, HermitianDolbeaultOnKodairaThurstonComplex) {
    auto st = fx::catalog("kodaira-thurston-complex");
    BvBuild b = build_bv(Flavor::HermitianDolbeault, st);
    const auto& cert = b.cert;
    EXPECT_TRUE(cert.ok());
    EXPECT_TRUE(cert.relations.ok);
    ASSERT_EQ(cert.orders.size(), 3u);
    for (int i = 0; i < 3; ++i) {
        EXPECT_TRUE(cert.orders[i].ok) << i;
        EXPECT_EQ(cert.orders[i].bound, i + 1);
        EXPECT_EQ(cert.orders[i].minimal, i + 1) << i;
    }
    for (auto& id : cert.identities) EXPECT_TRUE(id.ok) << id.name << ": " << id.detail;
    EXPECT_EQ(b.delta0.bidegree(), (Bidegree{0, 1}));
}

TEST(Tower, DeltasSatisfyTheMulticomplexRelationsForEveryFlavor) {
    for (const auto& name : builtin_names()) {
        auto st = fx::catalog(name);
        for (Flavor f : all_flavors()) {
            if (flavor_unavailable(f, st)) continue;
            if (st.algebra.dim() > 4 && f != Flavor::SymplecticKoszul) continue;  // covered by the property suite
            BvBuild b = build_bv(f, st);
            EXPECT_TRUE(b.cert.ok()) << name << " " << flavor_name(f);
            auto rep = validate_multicomplex(b.cert.mc);
            EXPECT_TRUE(rep.ok) << name << " " << flavor_name(f);
        }
    }
}

TEST(Tower, UnavailableFlavorsAreExplained) {
    auto st = fx::catalog("kodaira-thurston-poisson");
    EXPECT_TRUE(flavor_unavailable(Flavor::HermitianDolbeault, st).has_value());
    EXPECT_FALSE(flavor_unavailable(Flavor::PoissonKoszul, st).has_value());
    EXPECT_THROW(build_bv(Flavor::LagrangianDolbeault, st), MissingStructure);
    EXPECT_EQ(parse_flavor("poisson-koszul"), Flavor::PoissonKoszul);
    EXPECT_THROW(parse_flavor("bogus"), std::invalid_argument);
    for (Flavor f : all_flavors()) EXPECT_EQ(parse_flavor(flavor_name(f)), f);
}

TEST(Tower, CodifferentialPairIsNotAMulticomplex) {
    auto st = fx::catalog("kodaira-thurston");
    Presentation p = real_presentation(st.algebra);
    Metric g(*st.metric, p);
    Multicomplex mc{{p.d, metric_adjoint(p.d, g)}};
    auto rep = validate_multicomplex(mc);
    EXPECT_FALSE(rep.ok);
    EXPECT_EQ(rep.first_violation, 1);
}

TEST(Tower, RejectsBadInputs) {
    auto st = fx::catalog("kodaira-thurston");
    Operator d = ce_differential(st.algebra);
    EXPECT_THROW(delta_tower(d, left_multiplication(kt("x"))), DegreeError);
    EXPECT_THROW(delta_tower(Operator::identity(4), Operator::zero(4, -2)), DegreeError);
    // ι_x ι_y ι_z ι_t composed with L(x^y) has degree -2 but order 4
    Operator high = contraction(4, 0) * contraction(4, 1) * contraction(4, 2) * contraction(4, 3) * left_multiplication(kt("x^y"));
    EXPECT_THROW(delta_tower(d, high), BvViolation);
}

TEST(Conjugation, ZeroSeriesLeavesTheDifferential) {
    auto st = fx::catalog("kodaira-thurston");
    Operator d = ce_differential(st.algebra);
    OperatorSeries zero(4, 3);
    EXPECT_EQ(conjugate_by_exponential(d, zero), OperatorSeries::constant(d, 3));
    EXPECT_THROW(conjugate_by_exponential(d, OperatorSeries::constant(d, 2)), std::domain_error);
}

TEST(Conjugation, LambdaXiReproducesTheTower) {
    for (auto [name, flavor] : {std::pair{"kodaira-thurston-complex", Flavor::HermitianDolbeault},
                                std::pair{"iwasawa-lagrangian", Flavor::LagrangianDolbeault},
                                std::pair{"kodaira-thurston-poisson", Flavor::PoissonKoszul}}) {
        BvBuild b = build_bv(flavor, fx::catalog(name));
        int m = delta_bound(b.delta0.dim());
        OperatorSeries lam(b.delta0.dim(), m);
        lam.set(1, b.lambda);
        OperatorSeries c = conjugate_by_exponential(b.delta0, lam);
        for (int k = 0; k <= m; ++k) EXPECT_EQ(c.coeff(k), b.cert.mc.delta(k)) << name << " " << k;
        EXPECT_TRUE(verify_gauge(lam, b.cert.mc)) << name;
    }
}

TEST(Series, ExpAndLogAreInverse) {
    auto st = fx::catalog("kodaira-thurston");
    Operator lam = -SymplecticForm(kt("y^t + x^z")).Lambda();
    OperatorSeries x = OperatorSeries::from_list({lam, lam * lam}, 3);
    OperatorSeries one = OperatorSeries::constant(Operator::identity(4), 3);
    EXPECT_EQ((x.exp() - one).log1p(), x);
    EXPECT_EQ((x.log1p()).exp() - one, x);
    EXPECT_THROW(one.exp(), std::domain_error);
}

TEST(Transfer, ToyBicomplexDoesNotDegenerate) {
    // N = 1: Δ_0 = 0, Δ_1(e) = 1, trivial retract
    Operator d0 = Operator::zero(1, 1);
    Operator d1(1, {Form(1), Form::one(1)}, -1);
    Multicomplex mc{{d0, d1}};
    ASSERT_TRUE(validate_multicomplex(mc).ok);
    DeformationRetract r{d0, Operator::identity(1), Operator::identity(1), Operator::zero(1, -1),
                         {{Form::one(1)}, {Form::generator(1, 0)}}};
    ASSERT_TRUE(validate_retract(r).ok());
    auto moved = transferred_deltas(mc, r);
    ASSERT_EQ(moved.size(), 1u);
    EXPECT_EQ(moved[0], d1);
    EXPECT_FALSE(check_degeneration(mc, r));
    EXPECT_THROW(gauge_from_retract(mc, r), DegenerationError);
}

TEST(Transfer, RetractMustContractDeltaZero) {
    auto st = fx::catalog("kodaira-thurston-poisson");
    Transfer t(Flavor::PoissonKoszul, st);
    DeformationRetract wrong = t.r;
    wrong.h = -wrong.h;
    EXPECT_THROW(transferred_deltas(t.b.cert.mc, wrong), std::invalid_argument);
}

TEST(Gauge, ZeroLambdaGivesZeroPhi) {
    auto st = fx::catalog("kodaira-thurston");
    Presentation p = real_presentation(st.algebra);
    Multicomplex mc = delta_tower(p.d, Operator::zero(4, -2));
    auto r = canonical_retract(p.d, Metric(*st.metric, p));
    auto g = gauge_from_retract(mc, r);
    ASSERT_EQ(g.phis.size(), 2u);
    for (auto& phi : g.phis) EXPECT_TRUE(phi.is_zero());
    EXPECT_TRUE(verify_gauge(g, mc));
}

TEST(Gauge, RetractSolutionOnKodairaThurstonPoisson) {
    auto st = fx::catalog("kodaira-thurston-poisson");
    Transfer t(Flavor::PoissonKoszul, st);
    EXPECT_TRUE(check_degeneration(t.b.cert.mc, t.r));
    EXPECT_TRUE(verify_gauge(t.g, t.b.cert.mc));
    // first order: [phi_1, Delta_0] = Delta_1
    EXPECT_EQ(graded_commutator(t.phi1(), t.b.delta0), t.b.cert.mc.delta(1));
    // phi_1 = h Δ_1 - ιρ Δ_1 h, against the dense formula
    Matrix p = oracle::dense(t.r.iota * t.r.rho);
    EXPECT_EQ(oracle::dense(t.phi1()), oracle::phi1(oracle::dense(t.r.h), oracle::dense(t.b.cert.mc.delta(1)), p));
    EXPECT_EQ(t.phi1()(kt("x^y^t")), kt("x - y"));
    EXPECT_EQ(t.phi1()(kt("x^z^t")), -kt("z"));
    EXPECT_EQ(t.phi1()(kt("y^z^t")), -kt("z"));
}

TEST(Gauge, PerturbedSolutionFails) {
    auto st = fx::catalog("kodaira-thurston-poisson");
    Transfer t(Flavor::PoissonKoszul, st);
    GaugeSolution bad = t.g;
    // [ι_x ι_y, d](z) = ι_x ι_y (x^y) = -1, so the first order equation breaks
    Operator p = contraction(4, 0) * contraction(4, 1);
    ASSERT_FALSE(graded_commutator(p, t.b.delta0).is_zero());
    bad.phis[0] = bad.phis[0] + p;
    EXPECT_FALSE(verify_gauge(bad, t.b.cert.mc));
}

TEST(M3, KodairaThurstonPoissonValues) {
    auto x = kt("x"), y = kt("y"), t_ = kt("t");
    {
        Transfer t(Flavor::PoissonKoszul, fx::catalog("kodaira-thurston-poisson"));
        Form v = m3_cohomology(t.phi1(), t.r, x, y, t_);
        EXPECT_EQ(v, kt("x - y"));
        EXPECT_EQ(m3_cochain(t.phi1(), x, y, t_), oracle::m3(t.phi1(), x, y, t_));
    }
    {
        Transfer t(Flavor::PoissonKoszul, fx::catalog("kodaira-thurston-poisson", {{"b", Scalar(0)}}));
        EXPECT_EQ(m3_cohomology(t.phi1(), t.r, x, y, t_), kt("x"));
    }
    {
        Transfer t(Flavor::PoissonKoszul, fx::catalog("kodaira-thurston-poisson", {{"b", Scalar(0)}, {"e", Scalar(0)}}));
        EXPECT_TRUE(m3_cohomology(t.phi1(), t.r, x, y, t_).is_zero());
    }
    {
        Transfer t(Flavor::PoissonKoszul, fx::catalog("kodaira-thurston-poisson", {{"b", Scalar(2)}, {"e", Scalar(-1)}}));
        EXPECT_EQ(m3_cohomology(t.phi1(), t.r, x, y, t_), kt("-x - 2 y"));
    }
}

TEST(M3, IwasawaLagrangian) {
    Transfer t(Flavor::LagrangianDolbeault, fx::catalog("iwasawa-lagrangian"));
    auto f = [](const char* e) { return fx::form(e, iw); };
    EXPECT_EQ(m3_cohomology(t.phi1(), t.r, f("x2"), f("x3"), f("x4")), f("x2"));
    EXPECT_EQ(m3_cochain(t.phi1(), f("x2"), f("x3"), f("x4")), oracle::m3(t.phi1(), f("x2"), f("x3"), f("x4")));
    EXPECT_EQ(t.r.h(f("x2^x3^x4")), f("-x4^x6"));
}

TEST(M3, AbelianVanishes) {
    Transfer t(Flavor::SymplecticKoszul, fx::catalog("abelian-4"));
    std::vector<std::string> l{"x1", "x2", "x3", "x4"};
    for (Mask a = 1; a < 16; a <<= 1)
        for (Mask c = 1; c < 16; c <<= 1)
            EXPECT_TRUE(m3_cohomology(t.phi1(), t.r, Form::word(4, a), Form::word(4, 3), Form::word(4, c)).is_zero());
}

TEST(M3, ArgumentChecks) {
    Transfer t(Flavor::PoissonKoszul, fx::catalog("kodaira-thurston-poisson"));
    EXPECT_THROW(m3_cochain(t.phi1(), kt("x + y^z"), kt("y"), kt("t")), NotHomogeneous);
    EXPECT_THROW(m3_cohomology(t.phi1(), t.r, kt("z"), kt("y"), kt("t")), NotHarmonic);
}

TEST(M3, GradedSymmetryOfTheCochain) {
    Transfer t(Flavor::PoissonKoszul, fx::catalog("kodaira-thurston-poisson"));
    Form x = kt("x"), y = kt("y"), yt = kt("y^t"), tt = kt("t");
    EXPECT_EQ(m3_cochain(t.phi1(), x, y, tt), -m3_cochain(t.phi1(), y, x, tt));
    EXPECT_EQ(m3_cochain(t.phi1(), x, yt, tt), m3_cochain(t.phi1(), yt, x, tt));
    EXPECT_EQ(m3_cochain(t.phi1(), x, y, tt), -m3_cochain(t.phi1(), x, tt, y));
}

TEST(Flavors, HermitianRealIsDolbeaultPlusConjugate) {
    auto st = fx::catalog("kodaira-thurston-complex");
    BvBuild dol = build_bv(Flavor::HermitianDolbeault, st);
    BvBuild real = build_bv(Flavor::HermitianReal, st);
    // the real flavor works on the real coframe
    EXPECT_TRUE(real.pres.is_identity_frame());
    EXPECT_EQ(dol.pres.from_real(real.delta0), dol.delta0 + dol.pres.conjugate(dol.delta0));
    EXPECT_EQ(dol.pres.from_real(real.delta0), dol.pres.d);
}
