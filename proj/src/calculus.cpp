#include "ncjet/calculus.hpp"

#include <stdexcept>

namespace ncjet {

namespace {

std::string omegaLabel(int n) { return "Ω" + std::to_string(n); }

// W applied to x ⊗ y, W a plain bilinear table with right factor dimension dr
Vec applyPlain(const Mat& w, const Vec& x, const Vec& y) {
    const int dr = static_cast<int>(y.size());
    Vec r(w.rows());
    Rat s;
    for (size_t i = 0; i < x.size(); ++i) {
        if (sgn(x[i]) == 0) continue;
        for (int j = 0; j < dr; ++j) {
            if (sgn(y[j]) == 0) continue;
            s = x[i] * y[j];
            int col = static_cast<int>(i) * dr + j;
            for (int k = 0; k < w.rows(); ++k)
                if (sgn(w(k, col)) != 0) r[k] += s * w(k, col);
        }
    }
    return r;
}

Mat multMatrix(const Algebra& a) {
    Mat m(a.dim, a.dim * a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) m.setCol(i * a.dim + j, a.mult[i][j]);
    return m;
}

}  // namespace

Report validateFODC(const Algebra& a, const Bimodule& omega1, const Mat& d0) {
    Report rep;
    if (!omega1.hasRight()) {
        rep.add("omega1 right action", false, "Ω1 must be a bimodule");
        return rep;
    }
    if (d0.rows() != omega1.dim || d0.cols() != a.dim) {
        rep.add("d shape", false, "d must be dim Ω1 x dim A");
        return rep;
    }
    rep.merge(validateBimodule(omega1));
    rep.add("d(1) = 0", isZero(d0 * a.unit));
    bool leib = true;
    for (int i = 0; i < a.dim && leib; ++i)
        for (int j = 0; j < a.dim && leib; ++j) {
            Vec lhs = d0 * a.mult[i][j];
            Vec rhs = omega1.right[j] * d0.col(i) + omega1.left[i] * d0.col(j);
            if (lhs != rhs) {
                leib = false;
                rep.add("Leibniz", false, "d(" + a.basisNames[i] + a.basisNames[j] + ") != d(" + a.basisNames[i] + ")" +
                                              a.basisNames[j] + " + " + a.basisNames[i] + "d(" + a.basisNames[j] + ")");
            }
        }
    if (leib) rep.add("Leibniz", true);
    Mat phi(omega1.dim, a.dim * a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) phi.setCol(i * a.dim + j, omega1.left[i] * d0.col(j));
    int r = rank(phi);
    rep.add("surjectivity", r == omega1.dim,
            r == omega1.dim ? "" : "span of a db has dim " + std::to_string(r) + " < " + std::to_string(omega1.dim));
    return rep;
}

const Tensor& forms(const Calculus& c, int p, const Bimodule& f) {
    if (p < 0 || p >= static_cast<int>(c.omega.size()))
        throw std::out_of_range("degree " + std::to_string(p) + " exceeds the built exterior tower");
    if (f.id == 0) throw std::logic_error("forms: module was not created through makeBimodule");
    auto key = std::make_pair(p, f.id);
    {
        std::lock_guard<std::mutex> lock(c.cache->mu);
        auto it = c.cache->forms.find(key);
        if (it != c.cache->forms.end()) return *it->second;
    }
    auto t = std::make_shared<Tensor>(p == 0 ? unitTensor(f) : tensorOverA(c.omega[p], f));
    if (p > 0) t->mod.label = omegaLabel(p) + "(" + f.label + ")";
    std::lock_guard<std::mutex> lock(c.cache->mu);
    auto [it, inserted] = c.cache->forms.emplace(key, std::move(t));
    return *it->second;
}

Mat wedge(const Calculus& c, int p, int q) {
    if (p + q > c.maxDegree) throw std::out_of_range("wedge: degree overflow");
    return forms(c, p, c.omega[q]).descend(c.wedgePlain[p][q]);
}

Vec wedgeVec(const Calculus& c, int p, int q, const Bimodule& f, const Vec& omega, const Vec& etaF) {
    if (p + q > c.maxDegree) throw std::out_of_range("wedge: degree overflow");
    const Tensor& tq = forms(c, q, f);
    const Tensor& dst = forms(c, p + q, f);
    const Mat& w = c.wedgePlain[p][q];
    const int dq = c.dim(q);
    Vec r(dst.mod.dim);
    Rat s;
    for (int t = 0; t < tq.mod.dim; ++t) {
        if (sgn(etaF[t]) == 0) continue;
        for (const auto& [idx, coef] : tq.lift[t]) {
            int b = idx / f.dim, e = idx % f.dim;
            for (int a = 0; a < static_cast<int>(omega.size()); ++a) {
                if (sgn(omega[a]) == 0) continue;
                s = etaF[t] * coef * omega[a];
                int col = a * dq + b;
                for (int k = 0; k < w.rows(); ++k) {
                    if (sgn(w(k, col)) == 0) continue;
                    Rat z = s * w(k, col);
                    for (const auto& [r0, y] : dst.pairClass(k, e)) r[r0] += z * y;
                }
            }
        }
    }
    return r;
}

const Mat& wedgeFirst(const Calculus& c, int p, int q, const Bimodule& f) {
    auto key = std::make_tuple(p, q, f.id);
    {
        std::lock_guard<std::mutex> lock(c.cache->mu);
        auto it = c.cache->wedgeFirst.find(key);
        if (it != c.cache->wedgeFirst.end()) return *it->second;
    }
    const Tensor& tq = forms(c, q, f);
    const Tensor& src = forms(c, p, tq.mod);
    const Tensor& dst = forms(c, p + q, f);
    auto out = std::make_shared<Mat>(dst.mod.dim, src.mod.dim);
    for (int s = 0; s < src.mod.dim; ++s)
        for (const auto& [idx, coef] : src.lift[s]) {
            int a = idx / tq.mod.dim, t = idx % tq.mod.dim;
            Vec v = wedgeVec(c, p, q, f, unitVec(c.dim(p), a), unitVec(tq.mod.dim, t));
            for (int r = 0; r < dst.mod.dim; ++r)
                if (sgn(v[r]) != 0) (*out)(r, s) += coef * v[r];
        }
    std::lock_guard<std::mutex> lock(c.cache->mu);
    auto [it, inserted] = c.cache->wedgeFirst.emplace(key, std::move(out));
    return *it->second;
}

Mat formsMap(const Calculus& c, int p, const Bimodule& f, const Bimodule& g, const Mat& phi) {
    if (p == 0) return phi;
    return tensorMaps(forms(c, p, f), forms(c, p, g), Mat::identity(c.dim(p)), phi);
}

namespace {

void fillWedges(Calculus& c, int n) {
    const Bimodule& on = c.omega[n];
    const int da = c.alg->dim;
    // q ascending: the q >= 2 case needs the (n-1, 1) table of this degree
    for (int p = n; p >= 0; --p) {
        int q = n - p;
        Mat w(on.dim, c.dim(p) * c.dim(q));
        if (p == 0) {
            for (int u = 0; u < da; ++u)
                for (int b = 0; b < on.dim; ++b) w.setCol(u * on.dim + b, on.left[u].col(b));
        } else if (q == 0) {
            for (int a = 0; a < on.dim; ++a)
                for (int u = 0; u < da; ++u) w.setCol(a * da + u, on.right[u].col(a));
        } else if (q == 1) {
            const Tensor& t = forms(c, n - 1, c.omega[1]);
            Mat proj = c.presentation[n];
            for (int col = 0; col < t.plainDim(); ++col) {
                Vec v(on.dim);
                for (const auto& [k, x] : t.projCol[col])
                    for (int r = 0; r < on.dim; ++r)
                        if (sgn(proj(r, k)) != 0) v[r] += x * proj(r, k);
                w.setCol(col, v);
            }
        } else {
            // ω ∧ (η' ∧ v) = (ω ∧ η') ∧ v through the presentation of Ω^q
            const Tensor& tq = forms(c, q - 1, c.omega[1]);
            const Mat& sec = c.presentationLift[q];
            const int d1 = c.dim(1);
            for (int b = 0; b < c.dim(q); ++b) {
                for (int a = 0; a < c.dim(p); ++a) {
                    Vec acc(on.dim);
                    for (int t = 0; t < tq.mod.dim; ++t) {
                        if (sgn(sec(t, b)) == 0) continue;
                        for (const auto& [idx, coef] : tq.lift[t]) {
                            int eta = idx / d1, v = idx % d1;
                            Vec lower = c.wedgePlain[p][q - 1].col(a * c.dim(q - 1) + eta);
                            acc = acc + (sec(t, b) * coef) * applyPlain(c.wedgePlain[n - 1][1], lower, unitVec(d1, v));
                        }
                    }
                    w.setCol(a * c.dim(q) + b, acc);
                }
            }
        }
        c.wedgePlain[p][q] = std::move(w);
    }
}

Vec dOfRelation(const Calculus& c, const Tensor& t11, const Vec& x) {
    const int da = c.alg->dim;
    Vec r(t11.mod.dim);
    for (int a = 0; a < da; ++a)
        for (int b = 0; b < da; ++b) {
            const Rat& s = x[a * da + b];
            if (sgn(s) == 0) continue;
            r = r + s * t11.pair(c.d0().col(a), c.d0().col(b));
        }
    return r;
}

}  // namespace

CalculusPtr buildCalculus(AlgebraPtr alg, const Bimodule& omega1, const Mat& d0, int maxDegree, std::string name,
                          Mat frame, std::vector<std::string> frameNames) {
    if (maxDegree < 1) throw std::invalid_argument("maxDegree must be >= 1");
    Report fodc = validateFODC(*alg, omega1, d0);
    if (!fodc.ok()) {
        const Check* f = fodc.firstFailure();
        throw std::domain_error("FODC validation failed: " + f->name + (f->detail.empty() ? "" : " (" + f->detail + ")"));
    }
    auto c = std::make_shared<Calculus>();
    c->alg = alg;
    c->maxDegree = maxDegree;
    c->name = std::move(name);
    c->frame = std::move(frame);
    c->frameNames = std::move(frameNames);
    c->cache = std::make_shared<detail::FormsCache>();
    Bimodule a0 = regularBimodule(alg);
    a0.label = omegaLabel(0);
    Bimodule o1 = omega1;
    o1.label = omegaLabel(1);
    c->omega = {a0, o1};
    c->d = {d0};
    c->presentation.assign(maxDegree + 1, Mat());
    c->presentationLift.assign(maxDegree + 1, Mat());
    c->wedgePlain.assign(maxDegree + 1, std::vector<Mat>(maxDegree + 1));
    fillWedges(*c, 0);
    fillWedges(*c, 1);

    const int da = alg->dim;
    Mat phi1(o1.dim, da * da);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) phi1.setCol(i * da + j, o1.left[i] * d0.col(j));
    c->relations = kernelOf(vstack(multMatrix(*alg), phi1));

    for (int n = 2; n <= maxDegree; ++n) {
        const Tensor& t = forms(*c, n - 1, c->omega[1]);
        Subspace rel;
        if (n == 2) {
            std::vector<Vec> gens;
            for (int r = 0; r < c->relations.dim(); ++r) gens.push_back(dOfRelation(*c, t, c->relations.basis.row(r)));
            rel = subBimodule(t.mod, gens);
            c->degreeTwoRelations = rel;
        } else {
            const Tensor& t11 = forms(*c, 1, c->omega[1]);
            const Subspace& r2 = c->degreeTwoRelations;
            const Mat& w = c->wedgePlain[n - 2][1];
            const int d1 = c->dim(1);
            std::vector<Vec> gens;
            for (int om = 0; om < c->dim(n - 2); ++om)
                for (int r = 0; r < r2.dim(); ++r) {
                    Vec g(t.mod.dim);
                    for (int s = 0; s < t11.mod.dim; ++s) {
                        if (sgn(r2.basis(r, s)) == 0) continue;
                        for (const auto& [idx, coef] : t11.lift[s]) {
                            int u = idx / d1, v = idx % d1;
                            g = g + (r2.basis(r, s) * coef) * t.pair(w.col(om * d1 + u), unitVec(d1, v));
                        }
                    }
                    gens.push_back(std::move(g));
                }
            rel = spanOf(gens, t.mod.dim);
        }
        QuotientData qd = quotientData(rel);
        Mat relEmb = rel.embedding();
        std::vector<Mat> left(da), right(da);
        for (int a = 0; a < da; ++a) {
            if (!(qd.projection * t.mod.left[a] * relEmb).isZero() || !(qd.projection * t.mod.right[a] * relEmb).isZero())
                throw std::domain_error("degree " + std::to_string(n) + " relations are not a sub-bimodule");
            left[a] = qd.projection * t.mod.left[a] * qd.section;
            right[a] = qd.projection * t.mod.right[a] * qd.section;
        }
        c->omega.push_back(makeBimodule(alg, qd.projection.rows(), std::move(left), std::move(right), omegaLabel(n)));
        c->presentation[n] = qd.projection;
        c->presentationLift[n] = qd.section;
        fillWedges(*c, n);
    }

    // d_n on the spanning set a0 da1 ∧ ... ∧ dan
    std::vector<std::vector<Vec>> dd(maxDegree + 1);  // dd[k][tuple] = da1 ∧ ... ∧ dak
    for (int i = 0; i < da; ++i) dd[1].push_back(d0.col(i));
    for (int k = 2; k <= maxDegree; ++k)
        for (const auto& prev : dd[k - 1])
            for (int i = 0; i < da; ++i) dd[k].push_back(applyPlain(c->wedgePlain[k - 1][1], prev, d0.col(i)));
    for (int n = 1; n < maxDegree; ++n) {
        const Bimodule& on = c->omega[n];
        const int tuples = static_cast<int>(dd[n].size());
        Mat phi(on.dim, da * tuples), psi(c->dim(n + 1), da * tuples);
        for (int a = 0; a < da; ++a)
            for (int t = 0; t < tuples; ++t) {
                phi.setCol(a * tuples + t, on.left[a] * dd[n][t]);
                psi.setCol(a * tuples + t, dd[n + 1][a * tuples + t]);
            }
        if (rank(phi) != on.dim)
            throw std::domain_error(omegaLabel(n) + " is not spanned by a0 da1 ∧ ... ∧ da" + std::to_string(n));
        if (!(psi * kernelOf(phi).embedding()).isZero())
            throw std::domain_error("d on " + omegaLabel(n) + " is not well defined");
        c->d.push_back(psi * rightInverse(phi));
    }
    return c;
}

CalculusPtr universalCalculus(AlgebraPtr alg, int maxDegree) {
    const int da = alg->dim;
    Subspace k = kernelOf(multMatrix(*alg));
    auto piv = k.pivots();
    auto coords = [&](const Vec& v) {
        Vec c(piv.size());
        for (size_t i = 0; i < piv.size(); ++i) c[i] = v[piv[i]];
        return c;
    };
    Mat id = Mat::identity(da);
    std::vector<Mat> left(da, Mat(k.dim(), k.dim())), right(da, Mat(k.dim(), k.dim()));
    for (int a = 0; a < da; ++a) {
        Mat la = kron(alg->leftMul(alg->basisVec(a)), id);
        Mat ra = kron(id, alg->rightMul(alg->basisVec(a)));
        for (int r = 0; r < k.dim(); ++r) {
            Vec row = k.basis.row(r);
            left[a].setCol(r, coords(la * row));
            right[a].setCol(r, coords(ra * row));
        }
    }
    Bimodule o1 = makeBimodule(alg, k.dim(), std::move(left), std::move(right), omegaLabel(1));
    Mat d0(k.dim(), da);
    for (int b = 0; b < da; ++b) d0.setCol(b, coords(kron(alg->unit, alg->basisVec(b)) - kron(alg->basisVec(b), alg->unit)));
    return buildCalculus(alg, o1, d0, maxDegree, alg->name + "-universal");
}

CalculusPtr quaternionCalculus(int maxDegree) {
    AlgebraPtr h = quaternionAlgebra();
    // basis e_u θ_a at index a*4 + u, frame θ_0 = di, θ_1 = dj
    const int eps[4] = {1, -1, -1, 1};
    std::vector<Mat> left(4, Mat(8, 8)), right(4, Mat(8, 8));
    for (int x = 0; x < 4; ++x)
        for (int a = 0; a < 2; ++a)
            for (int u = 0; u < 4; ++u) {
                const Vec& xu = h->mult[x][u];
                const Vec& ux = h->mult[u][x];
                for (int w = 0; w < 4; ++w) {
                    left[x](a * 4 + w, a * 4 + u) = xu[w];
                    right[x](a * 4 + w, a * 4 + u) = eps[x] * ux[w];
                }
            }
    Bimodule o1 = makeBimodule(h, 8, std::move(left), std::move(right), omegaLabel(1));
    Mat d0(8, 4);
    d0(0, 1) = 1;   // di
    d0(4, 2) = 1;   // dj
    d0(2, 3) = -1;  // dk = -j di + i dj
    d0(5, 3) = 1;
    Mat frame(8, 2);
    frame(0, 0) = 1;
    frame(4, 1) = 1;
    return buildCalculus(h, o1, d0, maxDegree, "quaternion", frame, {"di", "dj"});
}

std::vector<std::string> fixtureNames() { return {"quaternion", "two-point-universal", "matrix2-universal"}; }

CalculusPtr fixtureByName(const std::string& name) {
    if (name == "quaternion") return quaternionCalculus();
    if (name == "two-point-universal") {
        auto c = universalCalculus(functionsOnPoints(2));
        std::const_pointer_cast<Calculus>(c)->name = name;
        return c;
    }
    if (name == "matrix2-universal") {
        auto c = universalCalculus(matrixAlgebra(2));
        std::const_pointer_cast<Calculus>(c)->name = name;
        return c;
    }
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

Report validateCalculus(const Calculus& c) {
    Report rep;
    for (int n = 0; n <= c.maxDegree; ++n) rep.merge(validateBimodule(c.omega[n]));
    for (int n = 0; n + 1 < c.maxDegree; ++n)
        rep.add("d^2 = 0 on " + omegaLabel(n), (c.d[n + 1] * c.d[n]).isZero());
    for (int p = 0; p < c.maxDegree; ++p)
        for (int q = 0; p + q < c.maxDegree; ++q) {
            bool ok = true;
            std::string where;
            const Mat& w = c.wedgePlain[p][q];
            for (int a = 0; a < c.dim(p) && ok; ++a)
                for (int b = 0; b < c.dim(q) && ok; ++b) {
                    Vec ea = unitVec(c.dim(p), a), eb = unitVec(c.dim(q), b);
                    Vec lhs = c.d[p + q] * w.col(a * c.dim(q) + b);
                    Vec rhs = applyPlain(c.wedgePlain[p + 1][q], c.d[p] * ea, eb);
                    Vec second = applyPlain(c.wedgePlain[p][q + 1], ea, c.d[q] * eb);
                    rhs = p % 2 ? rhs - second : rhs + second;
                    if (lhs != rhs) {
                        ok = false;
                        where = "basis pair (" + std::to_string(a) + ", " + std::to_string(b) + ")";
                    }
                }
            rep.add("graded Leibniz (" + std::to_string(p) + "," + std::to_string(q) + ")", ok, where);
        }
    for (int p = 1; p <= c.maxDegree; ++p)
        for (int q = 1; p + q < c.maxDegree; ++q)
            for (int r = 1; p + q + r <= c.maxDegree; ++r) {
                bool ok = true;
                for (int a = 0; a < c.dim(p) && ok; ++a)
                    for (int b = 0; b < c.dim(q) && ok; ++b) {
                        Vec ab = c.wedgePlain[p][q].col(a * c.dim(q) + b);
                        for (int e = 0; e < c.dim(r) && ok; ++e) {
                            Vec er = unitVec(c.dim(r), e);
                            Vec lhs = applyPlain(c.wedgePlain[p + q][r], ab, er);
                            Vec be = c.wedgePlain[q][r].col(b * c.dim(r) + e);
                            Vec rhs = applyPlain(c.wedgePlain[p][q + r], unitVec(c.dim(p), a), be);
                            ok = lhs == rhs;
                        }
                    }
                rep.add("wedge associativity (" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")", ok);
            }
    return rep;
}

const PairModule& pairModule(const Calculus& c, const Bimodule& f) {
    {
        std::lock_guard<std::mutex> lock(c.cache->mu);
        auto it = c.cache->pairs.find(f.id);
        if (it != c.cache->pairs.end()) return *it->second;
    }
    const Tensor& t1 = forms(c, 1, f);
    const int nf = f.dim, n1 = t1.mod.dim, da = c.alg->dim;
    std::vector<Mat> left(da), right;
    for (int a = 0; a < da; ++a) {
        Mat m(nf + n1, nf + n1);
        m.setBlock(0, 0, f.left[a]);
        m.setBlock(nf, nf, t1.mod.left[a]);
        Vec dA = c.d0().col(a);
        for (int x = 0; x < nf; ++x) {
            Vec v = t1.pair(dA, unitVec(nf, x));
            for (int r = 0; r < n1; ++r) m(nf + r, x) = -v[r];
        }
        left[a] = std::move(m);
    }
    if (f.hasRight() && t1.mod.hasRight()) {
        right.resize(da);
        for (int a = 0; a < da; ++a) right[a] = blockDiag(f.right[a], t1.mod.right[a]);
    }
    auto p = std::make_shared<PairModule>();
    p->mod = makeBimodule(c.alg, nf + n1, std::move(left), std::move(right), "J1(" + f.label + ")");
    p->base = f;
    p->formsPart = t1.mod;
    Mat idF = Mat::identity(nf), id1 = Mat::identity(n1);
    p->pi = hstack(idF, Mat(nf, n1));
    p->rho = hstack(Mat(n1, nf), id1);
    p->jet = transpose(p->pi);
    p->iota = transpose(p->rho);
    std::lock_guard<std::mutex> lock(c.cache->mu);
    auto [it, inserted] = c.cache->pairs.emplace(f.id, std::move(p));
    return *it->second;
}

Mat formsOperator(const Calculus& c, int m, const Bimodule& x, const Bimodule& y, const Mat& a, const Mat& b,
                  const Rat& sign) {
    if (m + 1 > c.maxDegree) throw std::out_of_range("degree " + std::to_string(m + 1) + " exceeds the built exterior tower");
    const Tensor& src = forms(c, m, x);
    const Tensor& dst = forms(c, m + 1, y);
    const int dm = c.dim(m);
    std::vector<Vec> dOmega(dm);
    for (int i = 0; i < dm; ++i) dOmega[i] = c.d[m].col(i);
    Mat out(dst.mod.dim, src.mod.dim);
    for (int s = 0; s < src.mod.dim; ++s) {
        Vec acc(dst.mod.dim);
        for (const auto& [idx, coef] : src.lift[s]) {
            int i = idx / x.dim, j = idx % x.dim;
            Vec ax = a.col(j), bx = b.col(j);
            if (!isZero(ax)) acc = acc + coef * dst.pair(dOmega[i], ax);
            if (!isZero(bx)) acc = acc + (coef * sign) * wedgeVec(c, m, 1, y, unitVec(dm, i), bx);
        }
        out.setCol(s, acc);
    }
    return out;
}

bool formsOperatorWellDefined(const Calculus& c, int m, const Bimodule& x, const Bimodule& y, const Mat& a,
                              const Mat& b, const Rat& sign) {
    if (m + 1 > c.maxDegree) throw std::out_of_range("degree " + std::to_string(m + 1) + " exceeds the built exterior tower");
    const Tensor& dst = forms(c, m + 1, y);
    const int dm = c.dim(m);
    Mat plain(dst.mod.dim, dm * x.dim);
    for (int i = 0; i < dm; ++i) {
        Vec dOmega = c.d[m].col(i);
        for (int j = 0; j < x.dim; ++j) {
            Vec v = dst.pair(dOmega, a.col(j)) + sign * wedgeVec(c, m, 1, y, unitVec(dm, i), b.col(j));
            plain.setCol(i * x.dim + j, v);
        }
    }
    return isBalanced(plain, c.omega[m], x);
}

TwistedFormPair twistedPair(const Calculus& c, const Bimodule& e) {
    const Tensor& t1 = forms(c, 1, e);
    const Tensor& t2 = forms(c, 2, e);
    const int n1 = t1.mod.dim, n2 = t2.mod.dim, da = c.alg->dim;
    std::vector<Mat> left(da), right;
    for (int a = 0; a < da; ++a) {
        Mat m(n1 + n2, n1 + n2);
        m.setBlock(0, 0, t1.mod.left[a]);
        m.setBlock(n1, n1, t2.mod.left[a]);
        Vec da_ = c.d0().col(a);
        for (int s = 0; s < n1; ++s) {
            Vec v = wedgeVec(c, 1, 1, e, da_, unitVec(n1, s));
            for (int r = 0; r < n2; ++r) m(n1 + r, s) = v[r];
        }
        left[a] = std::move(m);
    }
    if (t1.mod.hasRight() && t2.mod.hasRight()) {
        right.resize(da);
        for (int a = 0; a < da; ++a) right[a] = blockDiag(t1.mod.right[a], t2.mod.right[a]);
    }
    TwistedFormPair out;
    out.firstDim = n1;
    out.mod = makeBimodule(c.alg, n1 + n2, std::move(left), std::move(right), "Ω1Ω2(" + e.label + ")");
    return out;
}

}  // namespace ncjet
