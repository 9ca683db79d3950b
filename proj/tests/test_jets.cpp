#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "ncjet/jets.hpp"

using namespace ncjet;

namespace {

const CalculusPtr& quat() {
    static CalculusPtr c = quaternionCalculus();
    return c;
}

Jets& quatJets() {
    static Jets j(quat(), regularBimodule(quat()->alg));
    return j;
}

void expectAll(const Report& r) {
    REQUIRE(!r.checks.empty());
    for (const auto& ch : r.checks) CHECK_MESSAGE(ch.pass, ch.name, " ", ch.detail);
}

Vec basis(int i) { return unitVec(4, i); }

}  // namespace

TEST_CASE("first jets of the quaternions") {
    Jets& jets = quatJets();
    const Calculus& c = *quat();
    const JetModule& j1 = jets.holonomic(1);
    CHECK(j1.mod.dim == 12);
    CHECK(validateBimodule(j1.mod).ok());
    CHECK((j1.rhoL * j1.prolong).isZero());
    const Tensor& t1 = forms(c, 1, jets.base());
    // a·j1(b) - j1(ab) = -ι1(da ⊗ b)
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Vec lhs = j1.mod.left[a] * j1.prolong.col(b) - j1.prolong * c.alg->mult[a][b];
            Vec rhs = -1 * (j1.symInclude * t1.pair(c.d0().col(a), basis(b)));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("D̃ on double pairs") {
    Jets& jets = quatJets();
    const Calculus& c = *quat();
    const Bimodule& e = jets.base();
    const PairModule& q = jets.pair(e);
    const PairModule& qq = jets.pair(q.mod);
    Mat d1 = jets.dTildeI(e), d2 = jets.dTildeII(e);
    CHECK(d1.rows() == 8);
    CHECK(d2.rows() == 12);
    const Tensor& t1 = forms(c, 1, e);
    const Tensor& t2 = forms(c, 2, e);
    const Tensor& t1q = forms(c, 1, q.mod);
    Mat w = wedge(c, 1, 1);
    const Tensor& t11 = forms(c, 1, c.omega[1]);
    auto wedgeOf = [&](const Vec& x, const Vec& y) { return w * t11.pair(x, y); };
    for (int x = 0; x < 4; ++x) {
        Vec jj = qq.jet * (q.jet * basis(x));
        CHECK(isZero(d1 * jj));
        CHECK(isZero(d2 * jj));
        for (int a = 0; a < 8; ++a) {
            Vec om = unitVec(8, a);
            CHECK(d1 * (qq.iota * t1q.pair(om, q.jet * basis(x))) == t1.pair(om, basis(x)));
        }
    }
    for (int a = 0; a < 8; ++a) {
        Vec om = unitVec(8, a);
        CHECK(d1 * (qq.jet * (q.iota * t1.pair(om, c.alg->unit))) == -1 * t1.pair(om, c.alg->unit));
    }
    // a·j1(bc·j1 e) has D̃ᴵᴵ = da∧db ⊗ ce + (da)b∧dc ⊗ e
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int cc = 1; cc < 4; ++cc) {
                const int ee = (a + b) % 4;
                Vec bc = c.alg->mult[b][cc];
                Vec x = qq.mod.left[a] * (qq.jet * (q.mod.leftAct(bc) * (q.jet * basis(ee))));
                Vec da = c.d0().col(a), db = c.d0().col(b), dc = c.d0().col(cc);
                Vec expect = t2.pair(wedgeOf(da, db), c.alg->mult[cc][ee]) +
                             t2.pair(wedgeOf(c.omega[1].right[b] * da, dc), basis(ee));
                CHECK(d2 * x == expect);
            }
}

TEST_CASE("symmetric forms of the quaternions") {
    Jets& jets = quatJets();
    const Calculus& c = *quat();
    CHECK(jets.sym(0).mod.dim == 4);
    CHECK(jets.sym(1).mod.dim == 8);
    CHECK(jets.sym(2).mod.dim == 4);
    CHECK(jets.sym(3).mod.dim == 0);
    // S2 = ℍ g with g = di ⊗ dj - dj ⊗ di
    const Tensor& s1 = forms(c, 1, jets.base());
    const Tensor& f = forms(c, 1, jets.sym(1).mod);
    Vec di = c.d0().col(1), dj = c.d0().col(2), one = c.alg->unit;
    Vec g = f.pair(di, s1.pair(dj, one)) - f.pair(dj, s1.pair(di, one));
    Subspace s2 = spanOfCols(jets.sym(2).include);
    CHECK(s2.contains(g));
    CHECK(leftSubmodule(f.mod, {g}) == s2);
    // dense oracle: S2 of ℍ is the kernel of ∧ on Ω1 ⊗ Ω1
    CHECK(kernelOf(wedge(c, 1, 1)).dim() == 4);

    Mat d10 = jets.delta(1, 0);
    CHECK(d10 == Mat::identity(8));
    CHECK((jets.delta(1, 1) * jets.delta(2, 0)).isZero());
    CHECK(!jets.delta(2, 0).isZero());
}

TEST_CASE("higher jets of the quaternions") {
    Jets& jets = quatJets();
    CHECK(jets.holonomic(2).mod.dim == 16);
    CHECK(jets.holonomic(3).mod.dim == 16);
    CHECK(jets.nonholonomic(2).mod.dim == 36);
    CHECK(jets.sesquiholonomic(2).mod.dim == 36 - rank(jets.dTildeI(jets.base())));
    CHECK(jets.sesquiholonomic(2).mod.dim == 28);
    for (int n = 0; n <= 3; ++n) CHECK(validateBimodule(jets.holonomic(n).mod).ok());
    for (int n = 1; n <= 3; ++n) {
        const JetModule& j = jets.holonomic(n);
        CHECK((j.proj * j.symInclude).isZero());
        CHECK(j.proj * j.prolong == jets.holonomic(n - 1).prolong);
        CHECK(isLeftLinear(j.mod, jets.holonomic(n - 1).mod, j.proj));
        expectAll(exactnessReport(jets, n));
    }
    CHECK(jets.elementalSpan(1).dim() == 12);
    CHECK(jets.elementalSpan(2).dim() == 16);
    CHECK(jets.holonomicViaSpencer(2) == jets.holonomic(2).carrier);
}

TEST_CASE("Spencer operators on the quaternions") {
    Jets& jets = quatJets();
    const Calculus& c = *quat();
    const Bimodule& e = jets.base();
    Vec di = c.d0().col(1), dj = c.d0().col(2), one = c.alg->unit;
    const JetModule& j1 = jets.holonomic(1);
    Vec x = forms(c, 1, j1.mod).pair(di, j1.symInclude * forms(c, 1, e).pair(dj, one));
    Vec didj = wedge(c, 1, 1) * forms(c, 1, c.omega[1]).pair(di, dj);
    CHECK(jets.spencer(1, 1) * x == forms(c, 2, e).pair(didj, one));

    expectAll(spencerPropertySuite(jets, 3));
    expectAll(twistedIdentities(jets, 1));
    for (auto [n, m] : {std::pair{1, 0}, {1, 1}, {2, 0}, {2, 1}}) expectAll(restrictionSymbolCheck(jets, n, m));

    SpencerComplexResult sc = spencerComplex(jets, 2);
    CHECK(sc.isComplex);
    CHECK(sc.dims == std::vector<int>{4, 16, 24, 12});
    CHECK(sc.cohomologyDims == std::vector<int>{0, 0, 0, 0});
    SpencerComplexResult sc3 = spencerComplex(jets, 3);
    CHECK(sc3.isComplex);
    CHECK(sc3.cohomologyDims[0] == 0);
    CHECK(sc3.cohomologyDims[1] == 0);
    CHECK(sc3.cohomologyDims.back() == 0);
}

TEST_CASE("Spencer bicomplex") {
    Jets& jets = quatJets();
    expectAll(bicomplexCheck(jets, 1));
    expectAll(bicomplexCheck(jets, 2));
    Report bad = bicomplexCheck(jets, 2, true);
    REQUIRE(bad.firstFailure() != nullptr);
    CHECK(bad.firstFailure()->name == "left square 0");

    auto tp = fixtureByName("two-point-universal");
    Jets j2(tp, regularBimodule(tp->alg));
    expectAll(bicomplexCheck(j2, 2));
}

TEST_CASE("two-point universal calculus") {
    auto c = fixtureByName("two-point-universal");
    Jets jets(c, regularBimodule(c->alg));
    expectAll(spencerPropertySuite(jets, 3));
    expectAll(twistedIdentities(jets, 1));
    for (int n = 1; n <= 3; ++n) expectAll(exactnessReport(jets, n));
    // the universal calculus has no relations, so no symmetric forms above order 1
    CHECK(jets.sym(2).mod.dim == 0);
    CHECK(jets.holonomic(2).mod.dim == jets.holonomic(1).mod.dim);
    CHECK(isSubspaceOf(jets.holonomic(2).carrier, jets.sesquiholonomic(2).carrier));
    for (int n = 2; n <= 3; ++n) {
        SpencerComplexResult sc = spencerComplex(jets, n);
        CHECK(sc.isComplex);
        CHECK(sc.cohomologyDims[0] == 0);
        CHECK(sc.cohomologyDims[1] == 0);
        CHECK(sc.cohomologyDims.back() == 0);
    }
}

TEST_CASE("matrix algebra universal calculus") {
    auto c = fixtureByName("matrix2-universal");
    Jets jets(c, regularBimodule(c->alg));
    CHECK(jets.holonomic(1).mod.dim == 16);
    expectAll(spencerPropertySuite(jets, 2));
    expectAll(twistedIdentities(jets, 0));
    expectAll(exactnessReport(jets, 2));
    expectAll(bicomplexCheck(jets, 2));
    SpencerComplexResult sc = spencerComplex(jets, 2);
    CHECK(sc.isComplex);
    CHECK(sc.cohomologyDims[0] == 0);
    CHECK(sc.cohomologyDims[1] == 0);
    CHECK(sc.cohomologyDims.back() == 0);
    CHECK(jets.elementalSpan(2).dim() == jets.holonomic(2).mod.dim);
}

TEST_CASE("concurrent construction") {
    auto c = quaternionCalculus();
    Jets a(c, regularBimodule(c->alg));
    Jets b(c, regularBimodule(c->alg));
    int da = 0, db = 0, dc = 0;
    std::thread t1([&] { da = a.holonomic(2).mod.dim; });
    std::thread t2([&] { db = a.sesquiholonomic(2).mod.dim; });
    std::thread t3([&] { dc = b.holonomic(3).mod.dim; });
    t1.join();
    t2.join();
    t3.join();
    CHECK(da == 16);
    CHECK(db == 28);
    CHECK(dc == 16);
}
