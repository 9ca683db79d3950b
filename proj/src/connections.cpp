#include "ncjet/connections.hpp"

#include <stdexcept>

namespace ncjet {

namespace {

Mat dOnBasis(const Calculus& c, const Tensor& t, const Bimodule& e, int a) {
    Mat m(t.mod.dim, e.dim);
    Vec da = c.d0().col(a);
    for (int j = 0; j < e.dim; ++j) m.setCol(j, t.pair(da, unitVec(e.dim, j)));
    return m;
}

// θ -> θ ⊗ da on Ω^1
Mat tensorWithDa(const Calculus& c, const Tensor& t11, int a) {
    Mat m(t11.mod.dim, c.dim(1));
    Vec da = c.d0().col(a);
    for (int j = 0; j < c.dim(1); ++j) m.setCol(j, t11.pair(unitVec(c.dim(1), j), da));
    return m;
}

Mat block2(const Mat& a, const Mat& b, const Mat& c, const Mat& d) { return vstack(hstack(a, b), hstack(c, d)); }

struct Levels {
    const JetModule& top;
    const JetModule& low;
    const SymModule& sym;
    const SymModule& symLow;
};

Levels levels(Jets& jets, int n) {
    if (n < 1) throw std::invalid_argument("higher connections need order >= 1");
    return {jets.holonomic(n), jets.holonomic(n - 1), jets.sym(n), jets.sym(n - 1)};
}

void requireShape(const Mat& m, int rows, int cols, const char* what) {
    if (m.rows() != rows || m.cols() != cols) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

}  // namespace

Report checkLeibniz(const Calculus& c, const Bimodule& e, const Mat& nabla) {
    Report r;
    const Tensor& t = forms(c, 1, e);
    bool shape = nabla.rows() == t.mod.dim && nabla.cols() == e.dim;
    r.add("shape", shape);
    if (!shape) return r;
    std::string bad;
    for (int a = 0; a < c.alg->dim && bad.empty(); ++a) {
        Mat lhs = nabla * e.left[a] - t.mod.left[a] * nabla - dOnBasis(c, t, e, a);
        if (!lhs.isZero()) bad = "fails for algebra basis element " + c.alg->basisNames[a];
    }
    r.add("Leibniz", bad.empty(), bad);
    return r;
}

Connection makeConnection(const Calculus& c, const Bimodule& e, Mat nabla) {
    Report r = checkLeibniz(c, e, nabla);
    if (!r.ok()) throw std::domain_error("connection on " + e.label + ": " + r.firstFailure()->name + " " + r.firstFailure()->detail);
    return {e, std::move(nabla)};
}

Connection exteriorConnection(const Calculus& c, const Bimodule& a) {
    if (a.dim != c.alg->dim) throw std::invalid_argument("exterior connection needs the algebra as a module");
    const Tensor& t = forms(c, 1, a);
    Mat m(t.mod.dim, a.dim);
    for (int i = 0; i < a.dim; ++i) m.setCol(i, t.pair(c.d0().col(i), c.alg->unit));
    return makeConnection(c, a, std::move(m));
}

AffineSpace solveLeftConnections(const Calculus& c, const Bimodule& e) {
    const Tensor& t = forms(c, 1, e);
    MapSystem sys;
    int x = sys.addUnknown(t.mod.dim, e.dim);
    Mat idE = Mat::identity(e.dim), idT = Mat::identity(t.mod.dim);
    for (int g : c.alg->generators) sys.equation({{x, idT, e.left[g]}, {x, -t.mod.left[g], idE}}, dOnBasis(c, t, e, g));
    return sys.solve();
}

Connection connectionAt(const Calculus& c, const Bimodule& e, const AffineSpace& space, const Vec& point) {
    if (space.empty) throw std::domain_error("no connections on " + e.label);
    const Tensor& t = forms(c, 1, e);
    return makeConnection(c, e, unvec(point, t.mod.dim, e.dim));
}

AffineSpace solveBimoduleConnections(const Calculus& c, BimoduleAnsatz ansatz) {
    const Bimodule& o = c.omega[1];
    const Tensor& t = forms(c, 1, o);
    MapSystem sys;
    int x = sys.addUnknown(t.mod.dim, o.dim);
    int s = sys.addUnknown(t.mod.dim, t.mod.dim);
    Mat idO = Mat::identity(o.dim), idT = Mat::identity(t.mod.dim);
    Mat zero(t.mod.dim, o.dim);
    for (int g : c.alg->generators) {
        sys.equation({{x, idT, o.left[g]}, {x, -t.mod.left[g], idO}}, dOnBasis(c, t, o, g));
        // ∇(θa) - (∇θ)a - σ(θ ⊗ da) = 0
        sys.equation({{x, idT, o.right[g]}, {x, -t.mod.right[g], idO}, {s, -idT, tensorWithDa(c, t, g)}}, zero);
    }
    sys.linear(s, t.mod, t.mod, Linearity::Bilinear);
    if (ansatz == BimoduleAnsatz::FrameConstant) {
        const int f = c.frame.cols();
        if (f == 0) throw std::invalid_argument("frame-constant connections need a free frame on " + c.name);
        int alpha = sys.addUnknown(f * f * f, 1);
        Mat one = Mat::identity(1);
        for (int a = 0; a < f; ++a) {
            Mat coeffs(t.mod.dim, f * f * f);
            for (int b = 0; b < f; ++b)
                for (int cc = 0; cc < f; ++cc)
                    coeffs.setCol((a * f + b) * f + cc, t.pair(c.frame.col(b), c.frame.col(cc)));
            Mat theta(o.dim, 1);
            theta.setCol(0, c.frame.col(a));
            sys.equation({{x, idT, theta}, {alpha, -coeffs, one}}, Mat(t.mod.dim, 1));
        }
    }
    return sys.solve();
}

BimoduleConnection bimoduleConnectionAt(const Calculus& c, const AffineSpace& space, const Vec& point) {
    if (space.empty) throw std::domain_error("no bimodule connections on Ω1");
    const int n1 = c.dim(1), n2 = forms(c, 1, c.omega[1]).mod.dim;
    const int split = n2 * n1;
    Vec nab(point.begin(), point.begin() + split), sig(point.begin() + split, point.begin() + split + n2 * n2);
    BimoduleConnection b{makeConnection(c, c.omega[1], unvec(nab, n2, n1)), unvec(sig, n2, n2)};
    Report r = checkBimoduleConnection(c, b);
    if (!r.ok()) throw std::domain_error("bimodule connection: " + r.firstFailure()->name);
    return b;
}

Report checkBimoduleConnection(const Calculus& c, const BimoduleConnection& b) {
    const Bimodule& o = c.omega[1];
    const Tensor& t = forms(c, 1, o);
    const Mat& x = b.base.nabla;
    Report r = checkLeibniz(c, o, x);
    if (!r.ok()) return r;
    r.add("sigma left linear", isLeftLinear(t.mod, t.mod, b.sigma));
    r.add("sigma right linear", isRightLinear(t.mod, t.mod, b.sigma));
    bool right = true, braid = true;
    for (int a = 0; a < c.alg->dim; ++a) {
        Mat lhs = x * o.right[a] - t.mod.right[a] * x - b.sigma * tensorWithDa(c, t, a);
        right = right && lhs.isZero();
        Vec dm = c.d0().col(a);
        for (int th = 0; th < o.dim; ++th) {
            Vec theta = unitVec(o.dim, th);
            Vec comm = o.right[a] * theta - o.left[a] * theta;
            Vec nt = x * theta;
            Vec expect = t.pair(dm, theta) + x * comm - (t.mod.right[a] * nt - t.mod.left[a] * nt);
            braid = braid && b.sigma * t.pair(theta, dm) == expect;
        }
    }
    r.add("right Leibniz", right);
    r.add("braiding identity", braid);
    return r;
}

Mat torsion(const Calculus& c, const Connection& conn) {
    requireShape(conn.nabla, forms(c, 1, c.omega[1]).mod.dim, c.dim(1), "torsion");
    return wedge(c, 1, 1) * conn.nabla - c.d[1];
}

Mat covariantExterior(const Calculus& c, const Connection& conn, int m) {
    Rat sign = m % 2 == 0 ? 1 : -1;
    Mat id = Mat::identity(conn.mod.dim);
    if (!formsOperatorWellDefined(c, m, conn.mod, conn.mod, id, conn.nabla, sign))
        throw std::logic_error("covariant exterior derivative on " + conn.mod.label + " is not well defined");
    return formsOperator(c, m, conn.mod, conn.mod, id, conn.nabla, sign);
}

Mat curvature(const Calculus& c, const Connection& conn) {
    Mat r = covariantExterior(c, conn, 1) * conn.nabla;
    if (!isLeftLinear(conn.mod, forms(c, 2, conn.mod).mod, r))
        throw std::logic_error("curvature on " + conn.mod.label + " is not left linear");
    return r;
}

Connection tensorConnection(const Calculus& c, const BimoduleConnection& b, const Connection& f) {
    const Bimodule& fm = f.mod;
    const Tensor& tf = forms(c, 1, fm);
    const Tensor& to = forms(c, 1, c.omega[1]);
    const Tensor& outer = forms(c, 1, tf.mod);
    const int n1 = c.dim(1);
    // (η ⊗ x) for η a basis class of Ω1 ⊗ Ω1, regrouped into Ω1 ⊗ (Ω1 ⊗ F)
    std::vector<std::vector<Vec>> assoc(to.mod.dim, std::vector<Vec>(fm.dim));
    for (int u = 0; u < to.mod.dim; ++u)
        for (int x = 0; x < fm.dim; ++x) {
            Vec acc(outer.mod.dim);
            for (const auto& [idx, coef] : to.lift[u])
                acc = acc + coef * outer.pair(unitVec(n1, idx / n1), tf.pair(unitVec(n1, idx % n1), unitVec(fm.dim, x)));
            assoc[u][x] = std::move(acc);
        }
    auto regroup = [&](const Vec& eta, int x) {
        Vec acc(outer.mod.dim);
        for (int u = 0; u < to.mod.dim; ++u)
            if (sgn(eta[u]) != 0) acc = acc + eta[u] * assoc[u][x];
        return acc;
    };
    Mat out(outer.mod.dim, tf.mod.dim);
    for (int s = 0; s < tf.mod.dim; ++s) {
        Vec acc(outer.mod.dim);
        for (const auto& [idx, coef] : tf.lift[s]) {
            int i = idx / fm.dim, j = idx % fm.dim;
            acc = acc + coef * regroup(b.base.nabla.col(i), j);
            Vec nf = f.nabla.col(j);
            for (int u = 0; u < tf.mod.dim; ++u) {
                if (sgn(nf[u]) == 0) continue;
                for (const auto& [idx2, c2] : tf.lift[u]) {
                    Vec eta = b.sigma * to.pair(unitVec(n1, i), unitVec(n1, idx2 / fm.dim));
                    acc = acc + (coef * nf[u] * c2) * regroup(eta, idx2 % fm.dim);
                }
            }
        }
        out.setCol(s, acc);
    }
    return makeConnection(c, tf.mod, std::move(out));
}

Vec metricCompat(const Calculus& c, const BimoduleConnection& b, const Vec& g) {
    Connection onTwo = tensorConnection(c, b, b.base);
    return onTwo.nabla * g;
}

HigherConnection higherConnectionFromSection(Jets& jets, int n, const Mat& section) {
    Levels lv = levels(jets, n);
    const Mat& pi = lv.top.proj;
    const Mat& iota = lv.top.symInclude;
    requireShape(section, lv.top.mod.dim, lv.low.mod.dim, "section");
    if (pi * section != Mat::identity(lv.low.mod.dim)) throw std::domain_error("not a section of the jet projection");
    if (!isLeftLinear(lv.low.mod, lv.top.mod, section)) throw std::domain_error("section is not left linear");
    Mat rest = Mat::identity(lv.top.mod.dim) - section * pi;
    Mat split = leftInverse(iota) * rest;
    if (iota * split != rest) throw std::domain_error("jet sequence is not exact at order " + std::to_string(n));
    return {n, section, split};
}

HigherConnection higherConnectionFromSplit(Jets& jets, int n, const Mat& leftSplit) {
    Levels lv = levels(jets, n);
    const Mat& pi = lv.top.proj;
    const Mat& iota = lv.top.symInclude;
    requireShape(leftSplit, lv.sym.mod.dim, lv.top.mod.dim, "left split");
    if (leftSplit * iota != Mat::identity(lv.sym.mod.dim)) throw std::domain_error("not a left split of the symbol inclusion");
    if (!isLeftLinear(lv.top.mod, lv.sym.mod, leftSplit)) throw std::domain_error("left split is not left linear");
    Mat section = (Mat::identity(lv.top.mod.dim) - iota * leftSplit) * rightInverse(pi);
    if (pi * section != Mat::identity(lv.low.mod.dim))
        throw std::domain_error("jet sequence is not exact at order " + std::to_string(n));
    return {n, section, leftSplit};
}

HigherConnection higherConnectionFromConnection(Jets& jets, const Connection& conn) {
    const JetModule& j1 = jets.holonomic(1);
    requireShape(conn.nabla, j1.rhoL.rows(), jets.base().dim, "connection");
    return higherConnectionFromSplit(jets, 1, conn.nabla * j1.proj + j1.rhoL);
}

Mat higherCurvature(Jets& jets, const HigherConnection& h) {
    const Calculus& c = jets.calc();
    Levels lv = levels(jets, h.order);
    const Bimodule& low = lv.low.mod;
    const Bimodule& top = lv.top.mod;
    const PairModule& q = jets.pair(low);
    const Mat& l = lv.top.embed;
    Mat liftC = blockDiag(h.section, formsMap(c, 1, low, top, h.section));
    Mat liftL = blockDiag(l, formsMap(c, 1, top, q.mod, l));
    Mat r = -(jets.dTildeII(low) * liftL * liftC * l * h.section);
    if (!isLeftLinear(low, forms(c, 2, low).mod, r)) throw std::logic_error("higher curvature is not left linear");
    return r;
}

Connection associatedConnection(Jets& jets, const HigherConnection& h) {
    Levels lv = levels(jets, h.order);
    return makeConnection(jets.calc(), lv.low.mod, jets.spencer(h.order, 0) * h.section);
}

Mat higherExterior(Jets& jets, const HigherConnection& h, int m) {
    Levels lv = levels(jets, h.order);
    return jets.spencer(h.order, m) * formsMap(jets.calc(), m, lv.low.mod, lv.top.mod, h.section);
}

HigherConnection higherFromJetConnection(Jets& jets, int n, const Connection& conn) {
    const Calculus& c = jets.calc();
    Levels lv = levels(jets, n);
    const Bimodule& low = lv.low.mod;
    requireShape(conn.nabla, forms(c, 1, low).mod.dim, low.dim, "connection on the lower jets");
    if (n >= 2) {
        const JetModule& below = jets.holonomic(n - 2);
        if (formsMap(c, 1, low, below.mod, lv.low.proj) * conn.nabla != jets.spencer(n - 1, 0))
            throw std::domain_error("hypothesis (i) fails: the connection does not project to the Spencer operator");
    }
    Mat omegaIota = formsMap(c, 1, lv.symLow.mod, low, lv.low.symInclude);
    Subspace allowed = imageOf(formsMap(c, 2, lv.symLow.mod, low, lv.low.symInclude));
    if (!isSubspaceOf(imageOf(curvature(c, conn)), allowed))
        throw std::domain_error("hypothesis (ii) fails: the curvature leaves Ω2 ⊗ S^" + std::to_string(n - 1));
    const PairModule& q = jets.pair(low);
    Mat lifted = (conn.nabla * q.pi + q.rho) * lv.top.embed;
    Mat split;
    try {
        split = solve(omegaIota * lv.sym.include, lifted);
    } catch (const std::exception&) {
        throw std::domain_error("the lifted connection does not factor through S^" + std::to_string(n));
    }
    HigherConnection h = higherConnectionFromSplit(jets, n, split);
    if (associatedConnection(jets, h).nabla != conn.nabla)
        throw std::logic_error("reconstructed n-connection does not return the given connection");
    return h;
}

Connection jetFromSym(Jets& jets, const HigherConnection& h, const Connection& symConn) {
    const Calculus& c = jets.calc();
    Levels lv = levels(jets, h.order);
    requireShape(symConn.nabla, forms(c, 1, lv.sym.mod).mod.dim, lv.sym.mod.dim, "connection on the symbols");
    Mat nab = formsMap(c, 1, lv.low.mod, lv.top.mod, h.section) * jets.spencer(h.order, 0) +
              formsMap(c, 1, lv.sym.mod, lv.top.mod, lv.top.symInclude) * symConn.nabla * h.leftSplit;
    return makeConnection(c, lv.top.mod, std::move(nab));
}

Connection symFromJet(Jets& jets, const HigherConnection& h, const Connection& jetConn) {
    const Calculus& c = jets.calc();
    Levels lv = levels(jets, h.order);
    Mat nab = formsMap(c, 1, lv.top.mod, lv.sym.mod, h.leftSplit) * jetConn.nabla * lv.top.symInclude;
    return makeConnection(c, lv.sym.mod, std::move(nab));
}

Mat splitBasis(Jets& jets, const HigherConnection& h, int m) {
    const Calculus& c = jets.calc();
    Levels lv = levels(jets, h.order);
    return hstack(formsMap(c, m, lv.low.mod, lv.top.mod, h.section),
                  formsMap(c, m, lv.sym.mod, lv.top.mod, lv.top.symInclude));
}

Report jetConnectionBlocks(Jets& jets, const HigherConnection& h, const Connection& symConn, int maxM) {
    const Calculus& c = jets.calc();
    const int n = h.order;
    Levels lv = levels(jets, n);
    auto unsplit = [&](int m) {
        return vstack(formsMap(c, m, lv.top.mod, lv.low.mod, lv.top.proj),
                      formsMap(c, m, lv.top.mod, lv.sym.mod, h.leftSplit));
    };
    // -Ω^{m+1}(ι^{n-1}) δ^{n,m}
    auto corner = [&](int m) { return -(formsMap(c, m + 1, lv.symLow.mod, lv.low.mod, lv.low.symInclude) * jets.delta(n, m)); };

    Report r;
    Connection jetConn = jetFromSym(jets, h, symConn);
    r.add("sym connection round trip", symFromJet(jets, h, jetConn).nabla == symConn.nabla);
    for (int m = 0; m <= maxM && m + 1 <= c.maxDegree; ++m) {
        const std::string tag = " " + std::to_string(m);
        Mat basis = splitBasis(jets, h, m);
        r.add("split basis" + tag, unsplit(m) * basis == Mat::identity(basis.cols()));
        Mat dC = higherExterior(jets, h, m);
        Mat dS = covariantExterior(c, symConn, m);
        Mat expect = block2(dC, corner(m), Mat(dS.rows(), dC.cols()), dS);
        r.add("exterior block" + tag, unsplit(m + 1) * covariantExterior(c, jetConn, m) * basis == expect);
        Mat spencerSplit = dC * formsMap(c, m, lv.top.mod, lv.low.mod, lv.top.proj) +
                           corner(m) * formsMap(c, m, lv.top.mod, lv.sym.mod, h.leftSplit);
        r.add("Spencer decomposition" + tag, spencerSplit == jets.spencer(n, m));
    }
    if (c.maxDegree >= 2) {
        Mat rC = higherCurvature(jets, h);
        Mat rS = curvature(c, symConn);
        Mat upper = -(higherExterior(jets, h, 1) * formsMap(c, 1, lv.symLow.mod, lv.low.mod, lv.low.symInclude) *
                      jets.delta(n, 0)) +
                    corner(1) * symConn.nabla;
        Mat expect = block2(rC, upper, Mat(rS.rows(), rC.cols()), rS);
        r.add("curvature block", unsplit(2) * curvature(c, jetConn) * splitBasis(jets, h, 0) == expect);
        r.add("curvature of the associated connection", curvature(c, associatedConnection(jets, h)) == rC);
    }
    return r;
}

}  // namespace ncjet
