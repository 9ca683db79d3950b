#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncjet/connections.hpp"

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

// ∇a = da ⊗ 1 on the algebra itself
Connection trivialConnection(const Calculus& c, const Bimodule& a) {
    const Tensor& t = forms(c, 1, a);
    Mat m(t.mod.dim, a.dim);
    for (int i = 0; i < a.dim; ++i) m.setCol(i, t.pair(c.d0().col(i), c.alg->unit));
    return makeConnection(c, a, m);
}

const BimoduleConnection& levi() {
    static BimoduleConnection b = [] {
        AffineSpace s = solveBimoduleConnections(*quat(), BimoduleAnsatz::FrameConstant);
        return bimoduleConnectionAt(*quat(), s, s.particular);
    }();
    return b;
}

// a left-linear map from src to Ω^1 ⊗ src that is not zero
Mat someLeftLinear(const Calculus& c, const Bimodule& src, const Bimodule& dst, int pick = 0) {
    AffineSpace s = solveMaps(src, dst, Linearity::LeftA);
    REQUIRE(s.direction.dim() > pick);
    return unvec(s.direction.basis.row(pick), dst.dim, src.dim);
}

}  // namespace

TEST_CASE("left connections form an affine space") {
    const Calculus& c = *quat();
    Bimodule h = regularBimodule(c.alg);
    AffineSpace s = solveLeftConnections(c, h);
    REQUIRE(!s.empty);
    CHECK(s.direction.dim() == 8);
    const Tensor& t = forms(c, 1, h);
    // the direction is exactly the left-linear maps E -> Ω1 ⊗ E
    CHECK(s.direction == solveMaps(h, t.mod, Linearity::LeftA).direction);
    Connection a = connectionAt(c, h, s, s.particular);
    Connection b = connectionAt(c, h, s, s.particular + s.direction.basis.row(3));
    CHECK(isLeftLinear(h, t.mod, a.nabla - b.nabla));
    CHECK(checkLeibniz(c, h, trivialConnection(c, h).nabla).ok());

    Bimodule z = zeroBimodule(c.alg);
    AffineSpace sz = solveLeftConnections(c, z);
    CHECK(!sz.empty);
    CHECK(sz.direction.dim() == 0);

    Mat bad = a.nabla;
    bad(0, 0) += 1;
    CHECK(!checkLeibniz(c, h, bad).ok());
    CHECK_THROWS_AS(makeConnection(c, h, bad), std::domain_error);
}

TEST_CASE("the quaternion bimodule connection") {
    const Calculus& c = *quat();
    AffineSpace s = solveBimoduleConnections(c, BimoduleAnsatz::FrameConstant);
    REQUIRE(!s.empty);
    CHECK(s.direction.dim() == 0);
    const BimoduleConnection& b = levi();
    expectAll(checkBimoduleConnection(c, b));
    // without the scalar-coefficient ansatz any bimodule map Ω1 -> Ω1 ⊗ Ω1
    // can be added, and the bimodule maps alone are 8-dimensional
    const Tensor& t2 = forms(c, 1, c.omega[1]);
    AffineSpace general = solveBimoduleConnections(c);
    REQUIRE(!general.empty);
    CHECK(general.direction.dim() == 24);
    Vec grassmann = s.particular;
    grassmann.resize(general.particular.size());
    CHECK(general.direction.contains(grassmann - general.particular));
    AffineSpace bimaps = solveMaps(c.omega[1], t2.mod, Linearity::Bilinear);
    CHECK(bimaps.direction.dim() == 8);
    BimoduleConnection shifted = b;
    shifted.base.nabla = b.base.nabla + unvec(bimaps.direction.basis.row(0), t2.mod.dim, 8);
    expectAll(checkBimoduleConnection(c, shifted));
    for (int k = 0; k < general.direction.dim(); ++k) {
        Vec p = general.particular + general.direction.basis.row(k);
        expectAll(checkBimoduleConnection(c, bimoduleConnectionAt(c, general, p)));
    }
    auto tp = fixtureByName("two-point-universal");
    CHECK(!solveBimoduleConnections(*tp).empty);
    CHECK_THROWS_AS(solveBimoduleConnections(*tp, BimoduleAnsatz::FrameConstant), std::invalid_argument);
    Vec di = c.d0().col(1), dj = c.d0().col(2);
    CHECK(isZero(b.base.nabla * di));
    CHECK(isZero(b.base.nabla * dj));
    const Tensor& t = forms(c, 1, c.omega[1]);
    for (const Vec& w : {di, dj})
        for (const Vec& v : {di, dj}) CHECK(b.sigma * t.pair(w, v) == -1 * t.pair(v, w));
    CHECK(torsion(c, b.base).isZero());
    CHECK(curvature(c, b.base).isZero());
    Vec g = t.pair(di, dj) - t.pair(dj, di);
    CHECK(isZero(metricCompat(c, b, g)));
    CHECK(isZero(metricCompat(c, b, Vec(t.mod.dim))));
    Vec g2 = t.pair(di, di) + t.pair(dj, dj);
    CHECK(isZero(metricCompat(c, b, g2)));
}

TEST_CASE("torsion and curvature of perturbed connections") {
    const Calculus& c = *quat();
    const Bimodule& o = c.omega[1];
    const Tensor& t = forms(c, 1, o);
    Mat gamma = someLeftLinear(c, o, t.mod, 1);
    Connection pert = makeConnection(c, o, levi().base.nabla + gamma);
    CHECK(torsion(c, pert) == wedge(c, 1, 1) * gamma);
    bool someCurved = false;
    AffineSpace dirs = solveMaps(o, t.mod, Linearity::LeftA);
    for (int k = 0; k < dirs.direction.dim() && !someCurved; ++k) {
        Connection p = makeConnection(c, o, levi().base.nabla + unvec(dirs.direction.basis.row(k), t.mod.dim, o.dim));
        someCurved = !curvature(c, p).isZero();
    }
    CHECK(someCurved);

    auto tp = fixtureByName("two-point-universal");
    Bimodule a = regularBimodule(tp->alg);
    CHECK(curvature(*tp, trivialConnection(*tp, a)).isZero());
}

TEST_CASE("covariant exterior derivative") {
    const Calculus& c = *quat();
    Bimodule h = regularBimodule(c.alg);
    const BimoduleConnection& b = levi();
    Connection conn = tensorConnection(c, b, trivialConnection(c, h));
    CHECK(covariantExterior(c, conn, 0) == conn.nabla);
    // d_∇ d_∇ (ω ⊗ e) = ω ∧ R(e)
    AffineSpace dirs = solveMaps(conn.mod, forms(c, 1, conn.mod).mod, Linearity::LeftA);
    const int rows = dirs.direction.basis.cols() / conn.mod.dim;
    Connection curved = conn;
    Mat r;
    for (int k = 0; k < dirs.direction.dim() && r.isZero(); ++k) {
        curved = makeConnection(c, conn.mod, conn.nabla + unvec(dirs.direction.basis.row(k), rows, conn.mod.dim));
        r = curvature(c, curved);
    }
    REQUIRE(!r.isZero());
    Mat dd = covariantExterior(c, curved, 1) * covariantExterior(c, curved, 0);
    CHECK(dd == r);
    Mat dd1 = covariantExterior(c, curved, 2) * covariantExterior(c, curved, 1);
    const Tensor& t1 = forms(c, 1, curved.mod);
    for (int s = 0; s < t1.mod.dim; ++s) {
        Vec expect(dd1.rows());
        for (const auto& [idx, coef] : t1.lift[s])
            expect = expect + coef * wedgeVec(c, 1, 2, curved.mod, unitVec(8, idx / curved.mod.dim), r.col(idx % curved.mod.dim));
        CHECK(dd1.col(s) == expect);
    }
    // on the parallel element 1 of ℍ the derivative is just d
    Connection flat = trivialConnection(c, h);
    Mat d1 = covariantExterior(c, flat, 1);
    for (int a = 0; a < 8; ++a)
        CHECK(d1 * forms(c, 1, h).pair(unitVec(8, a), c.alg->unit) == forms(c, 2, h).pair(c.d[1].col(a), c.alg->unit));
}

TEST_CASE("tensor connections") {
    const Calculus& c = *quat();
    Bimodule h = regularBimodule(c.alg);
    const BimoduleConnection& b = levi();
    Connection one = tensorConnection(c, b, trivialConnection(c, h));
    CHECK(one.mod.dim == 8);
    Connection two = tensorConnection(c, b, one);
    CHECK(checkLeibniz(c, two.mod, two.nabla).ok());
    // di ⊗ 1 is parallel for both factors
    Vec di = c.d0().col(1);
    CHECK(isZero(one.nabla * forms(c, 1, h).pair(di, c.alg->unit)));
}

TEST_CASE("first order higher connections") {
    const Calculus& c = *quat();
    Jets& jets = quatJets();
    Bimodule h = jets.base();
    Connection flat = trivialConnection(c, h);
    HigherConnection h1 = higherConnectionFromConnection(jets, flat);
    const JetModule& j1 = jets.holonomic(1);
    CHECK(j1.proj * h1.section == Mat::identity(4));
    CHECK(h1.section * j1.proj + j1.symInclude * h1.leftSplit == Mat::identity(12));
    CHECK(associatedConnection(jets, h1).nabla == flat.nabla);
    CHECK(higherCurvature(jets, h1).isZero());
    CHECK(higherConnectionFromSection(jets, 1, h1.section).leftSplit == h1.leftSplit);

    AffineSpace s = solveLeftConnections(c, h);
    Connection other = connectionAt(c, h, s, s.particular + s.direction.basis.row(5));
    HigherConnection h1b = higherConnectionFromConnection(jets, other);
    Mat diff = h1b.section - h1.section;
    CHECK(isSubspaceOf(imageOf(diff), imageOf(j1.symInclude)));
    CHECK(isLeftLinear(h, j1.mod, diff));
    Mat rc = higherCurvature(jets, h1b);
    CHECK(rc == curvature(c, other));
    CHECK(!rc.isZero());
    // R_C = 0 exactly when J1(C) l C lands in the second jets
    for (const HigherConnection* x : {&h1, &h1b}) {
        Mat liftC = blockDiag(x->section, formsMap(c, 1, h, j1.mod, x->section));
        Subspace img = imageOf(liftC * j1.embed * x->section);
        CHECK(isSubspaceOf(img, jets.holonomic(2).carrier) == higherCurvature(jets, *x).isZero());
    }
    CHECK(higherFromJetConnection(jets, 1, other).section == h1b.section);
    CHECK_THROWS_AS(higherConnectionFromSection(jets, 1, 2 * h1.section), std::domain_error);
}

TEST_CASE("second order connections on the quaternions") {
    const Calculus& c = *quat();
    Jets& jets = quatJets();
    Bimodule h = jets.base();
    HigherConnection h1 = higherConnectionFromConnection(jets, trivialConnection(c, h));
    Connection onSym1 = tensorConnection(c, levi(), trivialConnection(c, h));
    REQUIRE(onSym1.mod.dim == jets.sym(1).mod.dim);
    expectAll(jetConnectionBlocks(jets, h1, onSym1, 2));
    Connection onJ1 = jetFromSym(jets, h1, onSym1);
    CHECK(symFromJet(jets, h1, onJ1).nabla == onSym1.nabla);

    HigherConnection h2 = higherFromJetConnection(jets, 2, onJ1);
    CHECK(associatedConnection(jets, h2).nabla == onJ1.nabla);
    const JetModule& j2 = jets.holonomic(2);
    CHECK(j2.proj * h2.section == Mat::identity(12));
    CHECK(higherConnectionFromSection(jets, 2, h2.section).leftSplit == h2.leftSplit);
    // round trip starting from the n-connection side
    CHECK(higherFromJetConnection(jets, 2, associatedConnection(jets, h2)).section == h2.section);
    // associated connection projects to the Spencer operator one order down
    Connection a2 = associatedConnection(jets, h2);
    CHECK(formsMap(c, 1, j2.lower, h, jets.holonomic(1).proj) * a2.nabla == jets.spencer(1, 0));
    for (int m = 0; m <= 1; ++m) {
        CHECK(higherExterior(jets, h2, m) == covariantExterior(c, a2, m));
        CHECK(formsMap(c, m + 1, j2.lower, h, jets.holonomic(1).proj) * higherExterior(jets, h2, m) ==
              jets.spencer(1, m) * formsMap(c, m, j2.lower, jets.holonomic(1).mod, Mat::identity(12)));
    }
    Mat r2 = higherCurvature(jets, h2);
    CHECK(r2 == curvature(c, a2));
    CHECK(isSubspaceOf(imageOf(r2), imageOf(formsMap(c, 2, jets.sym(1).mod, j2.lower, jets.holonomic(1).symInclude))));

    const SymModule& s2 = jets.sym(2);
    AffineSpace symConns = solveLeftConnections(c, s2.mod);
    REQUIRE(!symConns.empty);
    Connection onSym2 = connectionAt(c, s2.mod, symConns, symConns.particular);
    expectAll(jetConnectionBlocks(jets, h2, onSym2, 2));

    // another 2-connection: shift C by ι2 ∘ φ
    Mat phi = someLeftLinear(c, j2.lower, s2.mod);
    HigherConnection h2b = higherConnectionFromSection(jets, 2, h2.section + j2.symInclude * phi);
    CHECK(higherFromJetConnection(jets, 2, associatedConnection(jets, h2b)).section == h2b.section);
}

TEST_CASE("hypotheses of the jet correspondence are checked") {
    const Calculus& c = *quat();
    Jets& jets = quatJets();
    Bimodule h = jets.base();
    HigherConnection h1 = higherConnectionFromConnection(jets, trivialConnection(c, h));
    Connection onSym1 = tensorConnection(c, levi(), trivialConnection(c, h));
    Connection onJ1 = jetFromSym(jets, h1, onSym1);
    const JetModule& j1 = jets.holonomic(1);
    const Tensor& t = forms(c, 1, j1.mod);

    // (i): perturb along Ω1(C), which changes the projection to E
    Mat toE = someLeftLinear(c, j1.mod, forms(c, 1, h).mod);
    Connection badI = makeConnection(c, j1.mod, onJ1.nabla + formsMap(c, 1, h, j1.mod, h1.section) * toE);
    try {
        higherFromJetConnection(jets, 2, badI);
        FAIL("accepted");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("(i)") != std::string::npos);
    }

    // (ii): a symbol connection with torsion keeps (i) but breaks (ii)
    const Bimodule& o = c.omega[1];
    AffineSpace dirs = solveMaps(onSym1.mod, forms(c, 1, onSym1.mod).mod, Linearity::LeftA);
    bool rejected = false;
    for (int k = 0; k < dirs.direction.dim() && !rejected; ++k) {
        Mat gamma = unvec(dirs.direction.basis.row(k), forms(c, 1, o).mod.dim, o.dim);
        if ((wedge(c, 1, 1) * gamma).isZero()) continue;
        Connection twisted = jetFromSym(jets, h1, makeConnection(c, onSym1.mod, onSym1.nabla + gamma));
        try {
            higherFromJetConnection(jets, 2, twisted);
        } catch (const std::domain_error& e) {
            rejected = std::string(e.what()).find("(ii)") != std::string::npos;
        }
    }
    CHECK(rejected);
    (void)t;
}
