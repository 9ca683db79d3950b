#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncjet/algebra.hpp"

using namespace ncjet;

namespace {

Vec q(int w, int x, int y, int z) { return Vec{Rat(w), Rat(x), Rat(y), Rat(z)}; }

}  // namespace

TEST_CASE("quaternion structure constants") {
    auto h = quaternionAlgebra();
    CHECK(validateAlgebra(*h).ok());
    CHECK(h->mul(q(0, 1, 0, 0), q(0, 0, 1, 0)) == q(0, 0, 0, 1));   // ij = k
    CHECK(h->mul(q(0, 0, 0, 1), q(0, 0, 0, 1)) == q(-1, 0, 0, 0));  // kk = -1
    CHECK(h->mul(q(0, 0, 0, 1), q(0, 1, 0, 0)) == q(0, 0, 1, 0));   // ki = j
    CHECK(h->mul(q(0, 0, 1, 0), q(0, 0, 0, 1)) == q(0, 1, 0, 0));   // jk = i
    CHECK(h->generators == std::vector<int>{1, 2});
}

TEST_CASE("validation names the broken axiom") {
    auto h = quaternionAlgebra();
    auto mult = h->mult;
    mult[1][2][3] = 2;  // ij = 2k
    auto bad = makeAlgebra(h->basisNames, mult, h->unit, "bad");
    Report r = validateAlgebra(*bad);
    CHECK(!r.ok());
    REQUIRE(r.firstFailure() != nullptr);
    CHECK(r.firstFailure()->name == "associativity");

    auto q1 = makeAlgebra({"1"}, {{{Rat(1)}}}, {Rat(1)}, "Q");
    CHECK(validateAlgebra(*q1).ok());
}

TEST_CASE("functions on points and matrices") {
    auto p = functionsOnPoints(2);
    CHECK(validateAlgebra(*p).ok());
    CHECK(isZero(p->mul(p->basisVec(0), p->basisVec(1))));
    CHECK(p->mul(p->basisVec(0), p->basisVec(0)) == p->basisVec(0));
    CHECK(p->unit == Vec{Rat(1), Rat(1)});
    CHECK_THROWS(functionsOnPoints(0));
    auto m = matrixAlgebra(2);
    CHECK(validateAlgebra(*m).ok());
    CHECK(m->mul(m->basisVec(1), m->basisVec(2)) == m->basisVec(0));  // E12 E21 = E11
}

TEST_CASE("regular bimodule and tensor with the algebra") {
    auto h = quaternionAlgebra();
    Bimodule a = regularBimodule(h);
    CHECK(validateBimodule(a).ok());
    Tensor t = tensorOverA(a, a);
    CHECK(t.mod.dim == 4);
    // x ⊗ y -> xy descends and is inverse to y -> 1 ⊗ y
    Mat multPlain(4, 16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) multPlain.setCol(i * 4 + j, h->mult[i][j]);
    CHECK(isBalanced(multPlain, a, a));
    Mat down = t.descend(multPlain);
    Mat up(4, 4);
    for (int j = 0; j < 4; ++j) up.setCol(j, t.pair(h->unit, h->basisVec(j)));
    CHECK(down * up == Mat::identity(4));
    CHECK(up * down == Mat::identity(4));
    CHECK(validateBimodule(t.mod).ok());

    Bimodule z = zeroBimodule(h);
    CHECK(tensorOverA(a, z).mod.dim == 0);
    CHECK(tensorOverA(z, a).mod.dim == 0);
}

TEST_CASE("tensor dimension against a dense oracle") {
    // relations over every basis element (not just generators), dense rank
    auto m2 = matrixAlgebra(2);
    Bimodule a = regularBimodule(m2);
    Tensor t = tensorOverA(a, a);
    Mat rel(0, 16);
    for (int g = 0; g < 4; ++g)
        rel = vstack(rel, transpose(kron(a.right[g], Mat::identity(4)) - kron(Mat::identity(4), a.left[g])));
    CHECK(t.mod.dim == 16 - rank(rel));
    CHECK(t.mod.dim == 4);
    CHECK((t.projection() * transpose(rel)).isZero());
}

TEST_CASE("tensor of maps is functorial") {
    auto h = quaternionAlgebra();
    Bimodule a = regularBimodule(h);
    Tensor t = tensorOverA(a, a);
    // left multiplications are right-linear, right multiplications left-linear
    Mat f1 = h->leftMul(q(1, 2, 0, -1)), f2 = h->leftMul(q(0, 1, 1, 3));
    Mat g1 = h->rightMul(q(2, 0, 1, 0)), g2 = h->rightMul(q(-1, 1, 0, 1));
    CHECK(tensorMaps(t, t, f1 * f2, g1 * g2) == tensorMaps(t, t, f1, g1) * tensorMaps(t, t, f2, g2));
    CHECK(tensorMaps(t, t, Mat::identity(4), Mat::identity(4)) == Mat::identity(4));
}

TEST_CASE("sub-bimodules") {
    auto h = quaternionAlgebra();
    Bimodule a = regularBimodule(h);
    CHECK(subBimodule(a, {h->basisVec(0), h->basisVec(1), h->basisVec(2), h->basisVec(3)}).dim() == 4);
    CHECK(subBimodule(a, {}).dim() == 0);
    CHECK(subBimodule(a, {q(0, 0, 0, 1)}).dim() == 4);  // k is a unit

    auto p = functionsOnPoints(3);
    Bimodule ap = regularBimodule(p);
    Subspace s = subBimodule(ap, {p->basisVec(1)});
    CHECK(s.dim() == 1);
    Bimodule r = restrictTo(ap, s, "ideal");
    CHECK(r.dim == 1);
    CHECK(r.hasRight());
    CHECK(validateBimodule(r).ok());
}

TEST_CASE("solving for module maps") {
    auto h = quaternionAlgebra();
    Bimodule a = regularBimodule(h);
    AffineSpace leftMaps = solveMaps(a, a, Linearity::LeftA);
    REQUIRE(!leftMaps.empty);
    CHECK(leftMaps.direction.dim() == 4);
    // oracle: intertwine with every basis element, dense
    Mat sys(0, 16);
    for (int u = 0; u < 4; ++u)
        sys = vstack(sys, kron(Mat::identity(4), transpose(a.left[u])) - kron(a.left[u], Mat::identity(4)));
    CHECK(kernelOf(sys) == leftMaps.direction);
    for (int r = 0; r < 4; ++r) {
        Mat f = unvec(leftMaps.direction.basis.row(r), 4, 4);
        CHECK(isLeftLinear(a, a, f));
    }
    // each right multiplication is one of them
    for (int u = 0; u < 4; ++u) CHECK(leftMaps.direction.contains(vecOf(a.right[u])));

    // fixing f(1) = k pins f down to right multiplication by k
    Mat one(4, 1);
    one(0, 0) = 1;
    Mat kv(4, 1);
    kv(3, 0) = 1;
    AffineSpace pinned = solveMaps(a, a, Linearity::LeftA, {composeConstraint(Mat::identity(4), one, kv)});
    REQUIRE(!pinned.empty);
    CHECK(pinned.direction.dim() == 0);
    CHECK(unvec(pinned.particular, 4, 4) == a.right[3]);

    Mat id = Mat::identity(4);
    AffineSpace withId = solveMaps(a, a, Linearity::Bilinear, {composeConstraint(id, id, id)});
    CHECK(!withId.empty);
    CHECK(unvec(withId.particular, 4, 4) == id);

    AffineSpace contra = solveMaps(a, a, Linearity::KLinear,
                                   {composeConstraint(id, id, id), composeConstraint(id, id, Mat(4, 4))});
    CHECK(contra.empty);
}

TEST_CASE("declared linearity is verified") {
    auto h = quaternionAlgebra();
    Bimodule a = regularBimodule(h);
    CHECK_NOTHROW(makeMap(a, a, a.right[1], Linearity::LeftA));
    CHECK_THROWS_AS(makeMap(a, a, a.right[1], Linearity::RightA), std::domain_error);
    CHECK_THROWS_AS(makeMap(a, a, Mat(3, 4), Linearity::KLinear), std::invalid_argument);
}
