#include "fixtures.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace bvwb;
using fx::kt;

namespace {

Matrix oracle_gram(const Metric& m) { return oracle::exterior_gram(m.hermitian().gram(1)); }

Operator sign_by_degree(int n, const std::function<int(int)>& s) {
    return Operator::by_degree(n, [&](int k) { return Scalar(s(k)); });
}

struct KtFixture {
    Structures st = fx::catalog("kodaira-thurston");
    Presentation p = real_presentation(st.algebra);
    Metric g{*st.metric, p};
};

}  // namespace

TEST(Metric, RejectsBadGramMatrices) {
    EXPECT_THROW(MetricSpec{Matrix::from_rows({{1, 1}, {0, 1}})}.validate(), InvalidMetric);
    EXPECT_THROW(MetricSpec{Matrix::from_rows({{1, 0}, {0, -1}})}.validate(), InvalidMetric);
    EXPECT_THROW(MetricSpec{Matrix::from_rows({{1, 2}, {2, 1}})}.validate(), InvalidMetric);
    EXPECT_THROW(MetricSpec::diagonal({Scalar(1), Scalar(2)}).validate(), InvalidMetric);
    EXPECT_THROW(MetricSpec{Matrix::from_rows({{Scalar(1), Scalar::i()}, {Scalar::i(), Scalar(1)}})}.validate(), InvalidMetric);
    EXPECT_NO_THROW(MetricSpec::diagonal({Scalar(1), Scalar(4)}).validate());
    EXPECT_NO_THROW(MetricSpec{Matrix::from_rows({{2, 1}, {1, 1}})}.validate());
}

TEST(Metric, DimensionMustMatchTheAlgebra) {
    KtFixture f;
    EXPECT_THROW(Metric(MetricSpec::identity(3), f.p), DimensionMismatch);
}

TEST(Pairing, ComplexCoframeNorms) {
    auto st = fx::catalog("kodaira-thurston-complex");
    Presentation cp = complex_presentation(st);
    Metric m(*st.metric, cp);
    Form a = Form::generator(4, 0), abar = Form::generator(4, 2);
    // A = X - iY has |A|^2 = 2, so its dual a = (x + iy)/2 has |a|^2 = 1/2
    EXPECT_EQ(m.vectors(Vec{Scalar(1), -Scalar::i(), Scalar(0), Scalar(0)}, Vec{Scalar(1), Scalar::i(), Scalar(0), Scalar(0)}),
              Scalar(2));
    EXPECT_EQ(cp.to_real(a), kt("1/2 x + 1/2i y"));
    EXPECT_EQ(m.hermitian().pair(a, a), fx::q(1, 2));
    EXPECT_EQ(m.hermitian().pair(a, abar), Scalar(0));
    EXPECT_EQ(m.bilinear().pair(a, abar), fx::q(1, 2));
    EXPECT_EQ(m.hermitian().pair(Form::word(4, 0b0101), Form::word(4, 0b0101)), fx::q(1, 4));
    // sesquilinear: linear in the first slot, antilinear in the second
    EXPECT_EQ(m.hermitian().pair(Scalar::i() * a, a), Scalar(0, mpq_class(1, 2)));
    EXPECT_EQ(m.hermitian().pair(a, Scalar::i() * a), Scalar(0, mpq_class(-1, 2)));
}

TEST(Pairing, HermitianNormOfXPlusIY) {
    KtFixture f;
    Form u = kt("x + i y");
    EXPECT_EQ(f.g.hermitian().pair(u, u), Scalar(2));
    EXPECT_EQ(f.g.bilinear().pair(u, u), Scalar(0));
    EXPECT_EQ(f.g.hermitian().pair(kt("x^y"), kt("x^y")), Scalar(1));
}

TEST(Pairing, InducedGramMatchesDeterminantOracle) {
    auto st = fx::catalog("kodaira-thurston-complex");
    Presentation cp = complex_presentation(st);
    Metric m(*st.metric, cp);
    Matrix k = oracle_gram(m);
    Form u = Form::word(4, 0b0011, Scalar(1, 2)) + Form::word(4, 0b1100, Scalar(3));
    Form v = Form::word(4, 0b0110) + Form::word(4, 0b0011, Scalar(0, -1));
    auto du = oracle::dense(u), dv = oracle::dense(v);
    Scalar s;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) s += dv[i].conj() * k(i, j) * du[j];
    EXPECT_EQ(m.hermitian().pair(u, v), s);
}

TEST(HodgeStar, KodairaThurstonValues) {
    KtFixture f;
    Operator star = hodge_star(f.g);
    EXPECT_EQ(star(Form::one(4)), kt("x^y^z^t"));
    EXPECT_EQ(star(kt("x")), kt("y^z^t"));
    EXPECT_EQ(star(kt("y")), -kt("x^z^t"));
    EXPECT_EQ(star(kt("x^y")), kt("z^t"));
    EXPECT_EQ(oracle::dense(star), oracle::star_orthonormal(4));
    EXPECT_EQ(star * star, sign_by_degree(4, [](int k) { return (k * (4 - k)) % 2 ? -1 : 1; }));
}

TEST(HodgeStar, ScaledMetricVolume) {
    KtFixture f;
    Metric g(MetricSpec::diagonal({Scalar(4), Scalar(1), Scalar(1), Scalar(1)}), f.p);
    EXPECT_EQ(g.volume(), Scalar(2));
    Operator star = hodge_star(g);
    EXPECT_EQ(star(Form::one(4)), kt("2 x^y^z^t"));
    EXPECT_EQ(star(kt("x")), kt("1/2 y^z^t"));
}

TEST(Adjoint, CodifferentialValues) {
    KtFixture f;
    Operator ds = metric_adjoint(f.p.d, f.g);
    EXPECT_EQ(ds(kt("x^y")), kt("z"));
    EXPECT_TRUE(ds(kt("x^z")).is_zero());
    EXPECT_EQ(ds.degree(), -1);
    EXPECT_EQ(oracle::dense(ds), oracle::adjoint(oracle::dense(f.p.d), oracle_gram(f.g)));
}

TEST(Adjoint, CodifferentialIsMinusStarDStarInEvenDimension) {
    KtFixture f;
    Operator star = hodge_star(f.g);
    EXPECT_EQ(metric_adjoint(f.p.d, f.g), -(star * f.p.d * star));
}

TEST(Adjoint, ExteriorMultiplicationConjugatedByStar) {
    KtFixture f;
    Operator star = hodge_star(f.g);
    Operator star_inv = sign_by_degree(4, [](int k) { return (k * (4 - k)) % 2 ? -1 : 1; }) * star;
    Operator l = left_multiplication(kt("y^t + x^z"));
    EXPECT_EQ(metric_adjoint(l, f.g), star_inv * l * star);
    EXPECT_EQ(metric_adjoint(metric_adjoint(l, f.g), f.g), l);
}

TEST(Decomposition, KodairaThurstonDegreeTwo) {
    KtFixture f;
    auto hd = harmonic_decomposition(f.p.d, f.g);
    const HodgePiece& p2 = hd.pieces[2];
    EXPECT_EQ(p2.harmonic.cols(), 4);
    EXPECT_EQ(p2.exact.cols(), 1);
    EXPECT_EQ(p2.coexact.cols(), 1);
    auto words = basis_words(4, 2);
    auto as_form = [&](const Matrix& m, int c) {
        Form out(4);
        for (int i = 0; i < m.rows(); ++i) out.add(words[i], m(i, c));
        return out;
    };
    Form ex = as_form(p2.exact, 0), co = as_form(p2.coexact, 0);
    EXPECT_EQ(ex * (Scalar(1) / ex.coeff(0b0011)), kt("x^y"));
    EXPECT_EQ(co * (Scalar(1) / co.coeff(0b1100)), kt("z^t"));
    std::set<Mask> harmonic_words;
    for (int c = 0; c < 4; ++c) {
        Form h = as_form(p2.harmonic, c);
        for (auto& [w, x] : h.terms()) harmonic_words.insert(w);
    }
    EXPECT_EQ(harmonic_words, (std::set<Mask>{0b0101, 0b1001, 0b0110, 0b1010}));
    int total = 0;
    for (auto& p : hd.pieces) total += p.harmonic.cols() + p.exact.cols() + p.coexact.cols();
    EXPECT_EQ(total, 16);
}

TEST(Retract, KodairaThurstonMatchesGreenOracle) {
    KtFixture f;
    auto r = canonical_retract(f.p.d, f.g);
    EXPECT_TRUE(validate_retract(r).ok());
    EXPECT_EQ(oracle::dense(r.h), oracle::green_homotopy(oracle::dense(f.p.d), oracle_gram(f.g)));
    EXPECT_EQ(oracle::dense(r.rho), oracle::harmonic_projector(oracle::dense(f.p.d), oracle_gram(f.g)));
    EXPECT_EQ(r.h(kt("x^y")), -kt("z"));
    EXPECT_EQ(r.h(kt("x^y^t")), -kt("z^t"));
}

TEST(Retract, HermitianKodairaThurstonComplexMatchesGreenOracle) {
    auto st = fx::catalog("kodaira-thurston-complex");
    Presentation cp = complex_presentation(st);
    Metric m(*st.metric, cp);
    auto r = canonical_retract(cp.d, m);
    EXPECT_TRUE(validate_retract(r).ok());
    EXPECT_EQ(oracle::dense(r.h), oracle::green_homotopy(oracle::dense(cp.d), oracle_gram(m)));
    // full d here, so d b = d bbar = i a^abar and h spreads over both
    Scalar half_i(0, mpq_class(1, 2));
    EXPECT_EQ(r.h(Form::word(4, 0b0101)), (Form::generator(4, 1) + Form::generator(4, 3)) * half_i);
    EXPECT_EQ(cp.d(r.h(Form::word(4, 0b0101))), -Form::word(4, 0b0101));
}

TEST(Retract, IwasawaDelBarMatchesGreenOracle) {
    auto st = fx::catalog("iwasawa-lagrangian");
    Presentation p = real_presentation(st.algebra);
    Metric g(MetricSpec::identity(6), p);
    Bigrading bg = bigrading_projectors(*st.polarization, 6);
    Operator dbar = differential_components(p.d, bg).del_bar;
    auto r = canonical_retract(dbar, g);
    EXPECT_TRUE(validate_retract(r).ok());
    EXPECT_EQ(oracle::dense(r.h), oracle::green_homotopy(oracle::dense(dbar), oracle_gram(g)));
}

TEST(Retract, NegatedHomotopyBreaksOnlyTheHomotopyAxiom) {
    KtFixture f;
    auto r = canonical_retract(f.p.d, f.g);
    r.h = -r.h;
    auto rep = validate_retract(r);
    EXPECT_FALSE(rep.axioms_ok);
    EXPECT_TRUE(rep.side_ok);
    EXPECT_EQ(rep.violated, (std::vector<std::string>{"d*h + h*d = iota*rho - 1"}));
}

TEST(Retract, ZeroDifferentialHasZeroHomotopy) {
    auto st = fx::catalog("abelian-4");
    Presentation p = real_presentation(st.algebra);
    auto r = canonical_retract(p.d, Metric(*st.metric, p));
    EXPECT_TRUE(r.h.is_zero());
    EXPECT_EQ(r.rho, Operator::identity(4));
    EXPECT_TRUE(validate_retract(r).ok());
}

TEST(Retract, NonUnimodularAlgebraHasNoTopClass) {
    LieAlgebraSpec s(2, {"X", "Y"});
    s.set_bracket(0, 1, Vec{Scalar(1), Scalar(0)});
    Presentation p = real_presentation(s);
    Metric g(MetricSpec::identity(2), p);
    EXPECT_THROW(canonical_retract(p.d, g), TopCohomologyError);
    EXPECT_THROW(harmonic_decomposition(p.d, g), TopCohomologyError);
}
