#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncjet/linalg.hpp"

using namespace ncjet;

namespace {

Mat M(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<Vec> v;
    int cols = 0;
    for (auto& r : rows) {
        Vec x;
        for (int e : r) x.emplace_back(e);
        cols = static_cast<int>(x.size());
        v.push_back(x);
    }
    return Mat::fromRows(v, cols);
}

Mat randomMat(std::mt19937& g, int r, int c, int rankCap = -1) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    auto draw = [&](int rr, int cc) {
        Mat m(rr, cc);
        for (int i = 0; i < rr; ++i)
            for (int j = 0; j < cc; ++j) m(i, j) = Rat(num(g), den(g));
        for (int i = 0; i < rr; ++i)
            for (int j = 0; j < cc; ++j) m(i, j).canonicalize();
        return m;
    };
    if (rankCap < 0) return draw(r, c);
    return draw(r, rankCap) * draw(rankCap, c);
}

// Laplace expansion; fine for the tiny sizes used here.
Rat det(const Mat& m) {
    int n = m.rows();
    if (n == 0) return 1;
    Rat s = 0;
    for (int j = 0; j < n; ++j) {
        if (sgn(m(0, j)) == 0) continue;
        Mat minor(n - 1, n - 1);
        for (int i = 1; i < n; ++i)
            for (int k = 0, kk = 0; k < n; ++k)
                if (k != j) minor(i - 1, kk++) = m(i, k);
        Rat t = m(0, j) * det(minor);
        s += (j % 2 ? -t : t);
    }
    return s;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

int rankByMinors(const Mat& m) {
    for (int k = std::min(m.rows(), m.cols()); k > 0; --k) {
        std::vector<std::vector<int>> rs, cs;
        std::vector<int> cur;
        subsets(m.rows(), k, 0, cur, rs);
        subsets(m.cols(), k, 0, cur, cs);
        for (auto& r : rs)
            for (auto& c : cs) {
                Mat s(k, k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) s(i, j) = m(r[i], c[j]);
                if (sgn(det(s)) != 0) return k;
            }
    }
    return 0;
}

}  // namespace

TEST_CASE("rationals stay canonical and parse") {
    Rat a = parseRat("-6/4");
    CHECK(toString(a) == "-3/2");
    CHECK(toString(parseRat("7")) == "7");
    CHECK(toString(parseRat("+2/6")) == "1/3");
    CHECK_THROWS(parseRat("1/0"));
    CHECK_THROWS(parseRat("1.5"));
}

TEST_CASE("rref fixed points and rank-1") {
    CHECK(rref(Mat::identity(3)) == Mat::identity(3));
    CHECK(rref(M({{2, 4}, {1, 2}})) == M({{1, 2}, {0, 0}}));
}

TEST_CASE("rref rank agrees with minor expansion") {
    std::mt19937 g(7);
    for (int trial = 0; trial < 12; ++trial) {
        int cap = trial % 7;
        Mat m = randomMat(g, 6, 6, cap == 6 ? -1 : cap);
        Mat r = rref(m);
        CHECK(rank(m) == rankByMinors(m));
        CHECK(rank(r) == rankByMinors(m));
        // pivots are 1 and strictly increasing
        int last = -1;
        for (int i = 0; i < r.rows(); ++i) {
            int p = -1;
            for (int j = 0; j < r.cols(); ++j)
                if (sgn(r(i, j)) != 0) {
                    p = j;
                    break;
                }
            if (p < 0) continue;
            CHECK(r(i, p) == 1);
            CHECK(p > last);
            for (int k = 0; k < r.rows(); ++k)
                if (k != i) CHECK(sgn(r(k, p)) == 0);
            last = p;
        }
    }
}

TEST_CASE("kernels") {
    Subspace k = kernelOf(M({{1, 1}, {1, 1}}));
    CHECK(k.dim() == 1);
    CHECK(k.basis == M({{1, -1}}));
    CHECK(kernelOf(M({{1, 2, 0, 0}, {0, 1, 0, 0}, {0, 0, 3, 1}, {1, 0, 0, 1}})).dim() == 0);

    std::mt19937 g(11);
    for (int trial = 0; trial < 8; ++trial) {
        Mat m = randomMat(g, 4, 7, trial % 5);
        Subspace ker = kernelOf(m);
        CHECK(ker.dim() + rank(m) == m.cols());
        CHECK((m * ker.embedding()).isZero());
        // canonical: a different presentation of the same map gives the same basis
        Mat mixed = randomMat(g, 4, 4);
        while (rank(mixed) < 4) mixed = randomMat(g, 4, 4);
        CHECK(kernelOf(mixed * m) == ker);
    }
}

TEST_CASE("affine solving") {
    Vec t{Rat(1), Rat(-2), Rat(3, 4)};
    AffineSpace s = solveAffine(Mat::identity(3), t);
    CHECK(!s.empty);
    CHECK(s.particular == t);
    CHECK(s.direction.dim() == 0);

    AffineSpace full = solveAffine(Mat(2, 3), zeros(2));
    CHECK(full.direction.dim() == 3);

    Mat m = M({{1, 2, 3}, {0, 1, 1}});
    Vec b{Rat(4), Rat(5)};
    AffineSpace u = solveAffine(m, b);
    CHECK(!u.empty);
    CHECK(u.direction.dim() == 1);
    CHECK(m * u.particular == b);
    CHECK(isZero(m * u.direction.basis.row(0)));
    CHECK(sgn(u.particular[2]) == 0);  // free variable zeroed

    CHECK(solveAffine(M({{1, 1}, {1, 1}}), Vec{Rat(1), Rat(2)}).empty);
}

TEST_CASE("intersections and sums") {
    Subspace a = spanOf({Vec{1, 0, 0}, Vec{0, 1, 0}}, 3);
    Subspace b = spanOf({Vec{0, 1, 1}, Vec{1, 0, 1}}, 3);
    CHECK(intersect(a, a) == a);
    CHECK(intersect(a, zeroSubspace(3)).dim() == 0);
    Subspace line = intersect(a, b);
    // oracle: the common solutions of both planes' normal equations z = 0 and x + y - z = 0
    Subspace oracle = kernelOf(M({{0, 0, 1}, {1, 1, -1}}));
    CHECK(line == oracle);
    CHECK(sum(a, b).dim() == 3);
    CHECK(isSubspaceOf(line, a));
    CHECK_THROWS(intersect(a, zeroSubspace(4)));
}

TEST_CASE("quotient data") {
    QuotientData z = quotientData(zeroSubspace(3));
    CHECK(z.projection == Mat::identity(3));
    CHECK(quotientData(fullSubspace(3)).projection.rows() == 0);

    Subspace s = spanOf({Vec{Rat(1), Rat(2), Rat(-1, 3)}}, 3);
    QuotientData q = quotientData(s);
    CHECK(q.projection.rows() == 2);
    CHECK((q.projection * s.embedding()).isZero());
    CHECK(q.projection * q.section == Mat::identity(2));
    CHECK(kernelOf(q.projection) == s);
}

TEST_CASE("kron") {
    CHECK(kron(Mat::identity(2), Mat::identity(3)) == Mat::identity(6));
    CHECK(kron(M({{1, 2}, {3, 4}}), Mat(2, 2)).isZero());
    std::mt19937 g(3);
    for (int trial = 0; trial < 5; ++trial) {
        Mat a = randomMat(g, 2, 3), b = randomMat(g, 3, 2);
        Mat va = randomMat(g, 3, 1), vb = randomMat(g, 2, 1);
        Vec lhs = kron(a, b) * kron(va.col(0), vb.col(0));
        Vec rhs = kron(a * va.col(0), b * vb.col(0));
        CHECK(lhs == rhs);
        // elementwise: (a⊗b)(i*3+k, j*2+l) = a(i,j) b(k,l)
        Mat ab = kron(a, b);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 2; ++l) CHECK(ab(i * 3 + k, j * 2 + l) == a(i, j) * b(k, l));
    }
}

TEST_CASE("inverses") {
    Mat m = M({{2, 1}, {1, 1}});
    CHECK(m * inverse(m) == Mat::identity(2));
    CHECK_THROWS(inverse(M({{1, 1}, {1, 1}})));
    Mat w = M({{1, 0, 2}, {0, 1, 1}});
    CHECK(w * rightInverse(w) == Mat::identity(2));
    CHECK(leftInverse(transpose(w)) * transpose(w) == Mat::identity(2));
}

TEST_CASE("sparse echelon matches dense rref") {
    std::mt19937 g(5);
    Mat m = randomMat(g, 5, 8, 3);
    detail::SparseEchelon e(8);
    for (int i = 0; i < 5; ++i) e.insert(toSparse(m.row(i)));
    CHECK(e.rank() == 3);
    auto rows = e.finish();
    Mat r = rref(m);
    for (int i = 0; i < 3; ++i) CHECK(toDense(rows[i], 8) == r.row(i));
}
