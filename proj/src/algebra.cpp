#include "ncjet/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace ncjet {

void Report::add(std::string name, bool pass, std::string detail) {
    checks.push_back(Check{std::move(name), pass, std::move(detail)});
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (const auto& c : other.checks) checks.push_back(Check{prefix + c.name, c.pass, c.detail});
}

bool Report::ok() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const Check* Report::firstFailure() const {
    for (const auto& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

Vec Algebra::mul(const Vec& a, const Vec& b) const {
    Vec r(dim);
    for (int i = 0; i < dim; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (int j = 0; j < dim; ++j) {
            if (sgn(b[j]) == 0) continue;
            Rat s = a[i] * b[j];
            for (int k = 0; k < dim; ++k)
                if (sgn(mult[i][j][k]) != 0) r[k] += s * mult[i][j][k];
        }
    }
    return r;
}

Mat Algebra::leftMul(const Vec& a) const {
    Mat m(dim, dim);
    for (int j = 0; j < dim; ++j) m.setCol(j, mul(a, basisVec(j)));
    return m;
}

Mat Algebra::rightMul(const Vec& a) const {
    Mat m(dim, dim);
    for (int j = 0; j < dim; ++j) m.setCol(j, mul(basisVec(j), a));
    return m;
}

namespace {

int closureRank(const Algebra& a, const std::vector<int>& gens) {
    detail::SparseEchelon e(a.dim);
    std::vector<Vec> queue;
    auto push = [&](const Vec& v) {
        if (e.insert(toSparse(v))) queue.push_back(v);
    };
    push(a.unit);
    for (int g : gens) push(a.basisVec(g));
    for (size_t q = 0; q < queue.size(); ++q)
        for (int g : gens) push(a.mul(a.basisVec(g), queue[q]));
    return e.rank();
}

}  // namespace

AlgebraPtr makeAlgebra(std::vector<std::string> names, std::vector<std::vector<Vec>> mult, Vec unit,
                       std::string name) {
    auto a = std::make_shared<Algebra>();
    a->dim = static_cast<int>(mult.size());
    if (a->dim < 1) throw std::invalid_argument("algebra must have dimension at least 1");
    if (static_cast<int>(names.size()) != a->dim) throw std::invalid_argument("basis name count != dim");
    if (static_cast<int>(unit.size()) != a->dim) throw std::invalid_argument("unit length != dim");
    for (const auto& row : mult) {
        if (static_cast<int>(row.size()) != a->dim) throw std::invalid_argument("mult must be dim x dim x dim");
        for (const auto& v : row)
            if (static_cast<int>(v.size()) != a->dim) throw std::invalid_argument("mult must be dim x dim x dim");
    }
    a->basisNames = std::move(names);
    a->mult = std::move(mult);
    a->unit = std::move(unit);
    a->name = std::move(name);
    int r = closureRank(*a, {});
    for (int i = 0; i < a->dim && r < a->dim; ++i) {
        auto trial = a->generators;
        trial.push_back(i);
        int rr = closureRank(*a, trial);
        if (rr > r) {
            a->generators = std::move(trial);
            r = rr;
        }
    }
    return a;
}

Report validateAlgebra(const Algebra& a) {
    Report rep;
    const auto& n = a.basisNames;
    bool assoc = true;
    for (int i = 0; i < a.dim && assoc; ++i)
        for (int j = 0; j < a.dim && assoc; ++j)
            for (int k = 0; k < a.dim && assoc; ++k) {
                Vec l = a.mul(a.mul(a.basisVec(i), a.basisVec(j)), a.basisVec(k));
                Vec r = a.mul(a.basisVec(i), a.mul(a.basisVec(j), a.basisVec(k)));
                if (l != r) {
                    assoc = false;
                    rep.add("associativity", false, "(" + n[i] + "*" + n[j] + ")*" + n[k] + " != " + n[i] + "*(" + n[j] + "*" + n[k] + ")");
                }
            }
    if (assoc) rep.add("associativity", true);
    bool unitOk = true;
    for (int i = 0; i < a.dim && unitOk; ++i) {
        Vec e = a.basisVec(i);
        if (a.mul(a.unit, e) != e || a.mul(e, a.unit) != e) {
            unitOk = false;
            rep.add("unit", false, "unit does not fix " + n[i]);
        }
    }
    if (unitOk) rep.add("unit", true);
    return rep;
}

bool sameAlgebra(const Algebra& a, const Algebra& b) {
    return &a == &b || (a.dim == b.dim && a.mult == b.mult && a.unit == b.unit);
}

AlgebraPtr quaternionAlgebra() {
    // q = (w, x, y, z) in the basis 1, i, j, k
    auto prod = [](int p, int q) {
        Vec a(4), b(4), r(4);
        a[p] = 1;
        b[q] = 1;
        r[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
        r[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
        r[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
        r[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
        return r;
    };
    std::vector<std::vector<Vec>> m(4, std::vector<Vec>(4));
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) m[p][q] = prod(p, q);
    return makeAlgebra({"1", "i", "j", "k"}, std::move(m), unitVec(4, 0), "quaternion");
}

AlgebraPtr functionsOnPoints(int n) {
    if (n < 1) throw std::invalid_argument("functionsOnPoints: n must be >= 1");
    std::vector<std::vector<Vec>> m(n, std::vector<Vec>(n, Vec(n)));
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        m[i][i][i] = 1;
        names.push_back("e" + std::to_string(i + 1));
    }
    return makeAlgebra(std::move(names), std::move(m), Vec(n, Rat(1)), "points" + std::to_string(n));
}

AlgebraPtr matrixAlgebra(int n) {
    if (n < 1) throw std::invalid_argument("matrixAlgebra: n must be >= 1");
    int d = n * n;
    std::vector<std::vector<Vec>> m(d, std::vector<Vec>(d, Vec(d)));
    std::vector<std::string> names;
    Vec unit(d);
    for (int a = 0; a < n; ++a) {
        unit[a * n + a] = 1;
        for (int b = 0; b < n; ++b) {
            names.push_back("E" + std::to_string(a + 1) + std::to_string(b + 1));
            for (int c = 0; c < n; ++c) m[a * n + b][b * n + c][a * n + c] = 1;
        }
    }
    return makeAlgebra(std::move(names), std::move(m), std::move(unit), "matrix" + std::to_string(n));
}

static Mat actOf(const std::vector<Mat>& acts, const Vec& a, int dim) {
    Mat m(dim, dim);
    for (size_t i = 0; i < acts.size(); ++i)
        if (sgn(a[i]) != 0) m += a[i] * acts[i];
    return m;
}

Mat Bimodule::leftAct(const Vec& a) const { return actOf(left, a, dim); }

Mat Bimodule::rightAct(const Vec& a) const {
    if (!hasRight()) throw std::logic_error("module '" + label + "' has no right action");
    return actOf(right, a, dim);
}

static long nextModuleId() {
    static std::atomic<long> counter{0};
    return ++counter;
}

Bimodule makeBimodule(AlgebraPtr alg, int dim, std::vector<Mat> left, std::vector<Mat> right, std::string label) {
    if (!alg) throw std::invalid_argument("bimodule needs an algebra");
    auto shapeOk = [&](const std::vector<Mat>& acts) {
        if (static_cast<int>(acts.size()) != alg->dim) return false;
        for (const auto& m : acts)
            if (m.rows() != dim || m.cols() != dim) return false;
        return true;
    };
    if (!shapeOk(left)) throw std::invalid_argument("left action of '" + label + "' has wrong shape");
    if (!right.empty() && !shapeOk(right)) throw std::invalid_argument("right action of '" + label + "' has wrong shape");
    checkDim(dim, label.c_str());
    Bimodule b;
    b.alg = std::move(alg);
    b.dim = dim;
    b.left = std::move(left);
    b.right = std::move(right);
    b.label = std::move(label);
    b.id = nextModuleId();
    return b;
}

Bimodule regularBimodule(AlgebraPtr alg) {
    std::vector<Mat> l, r;
    for (int i = 0; i < alg->dim; ++i) {
        l.push_back(alg->leftMul(alg->basisVec(i)));
        r.push_back(alg->rightMul(alg->basisVec(i)));
    }
    int d = alg->dim;
    return makeBimodule(std::move(alg), d, std::move(l), std::move(r), "A");
}

Bimodule zeroBimodule(AlgebraPtr alg, bool withRight) {
    std::vector<Mat> l(alg->dim, Mat(0, 0));
    std::vector<Mat> r = withRight ? l : std::vector<Mat>{};
    return makeBimodule(std::move(alg), 0, std::move(l), std::move(r), "0");
}

Report validateBimodule(const Bimodule& m) {
    Report rep;
    const Algebra& a = *m.alg;
    Mat id = Mat::identity(m.dim);
    auto name = [&](int i) { return a.basisNames[i]; };
    bool leftOk = true;
    for (int i = 0; i < a.dim && leftOk; ++i)
        for (int j = 0; j < a.dim && leftOk; ++j)
            if (m.left[i] * m.left[j] != m.leftAct(a.mult[i][j])) {
                leftOk = false;
                rep.add(m.label + ": left action", false, "L(" + name(i) + ")L(" + name(j) + ") != L(" + name(i) + name(j) + ")");
            }
    if (leftOk) rep.add(m.label + ": left action", true);
    rep.add(m.label + ": left unit", m.leftAct(a.unit) == id);
    if (!m.hasRight()) return rep;
    bool rightOk = true;
    for (int i = 0; i < a.dim && rightOk; ++i)
        for (int j = 0; j < a.dim && rightOk; ++j)
            if (m.right[j] * m.right[i] != m.rightAct(a.mult[i][j])) {
                rightOk = false;
                rep.add(m.label + ": right action", false, "R(" + name(j) + ")R(" + name(i) + ") != R(" + name(i) + name(j) + ")");
            }
    if (rightOk) rep.add(m.label + ": right action", true);
    rep.add(m.label + ": right unit", m.rightAct(a.unit) == id);
    bool commute = true;
    for (int i = 0; i < a.dim && commute; ++i)
        for (int j = 0; j < a.dim && commute; ++j)
            if (m.left[i] * m.right[j] != m.right[j] * m.left[i]) {
                commute = false;
                rep.add(m.label + ": bimodule axiom", false, "L(" + name(i) + ") and R(" + name(j) + ") do not commute");
            }
    if (commute) rep.add(m.label + ": bimodule axiom", true);
    return rep;
}

const char* toString(Linearity l) {
    switch (l) {
        case Linearity::KLinear: return "k-linear";
        case Linearity::LeftA: return "left-A";
        case Linearity::RightA: return "right-A";
        case Linearity::Bilinear: return "A-bilinear";
    }
    return "?";
}

bool isLeftLinear(const Bimodule& src, const Bimodule& dst, const Mat& f) {
    for (int g : src.alg->generators)
        if (f * src.left[g] != dst.left[g] * f) return false;
    return true;
}

bool isRightLinear(const Bimodule& src, const Bimodule& dst, const Mat& f) {
    if (!src.hasRight() || !dst.hasRight()) return false;
    for (int g : src.alg->generators)
        if (f * src.right[g] != dst.right[g] * f) return false;
    return true;
}

BimoduleMap makeMap(const Bimodule& src, const Bimodule& dst, Mat m, Linearity lin) {
    if (m.rows() != dst.dim || m.cols() != src.dim)
        throw std::invalid_argument("map " + src.label + " -> " + dst.label + ": wrong shape");
    bool needLeft = lin == Linearity::LeftA || lin == Linearity::Bilinear;
    bool needRight = lin == Linearity::RightA || lin == Linearity::Bilinear;
    if (needLeft && !isLeftLinear(src, dst, m))
        throw std::domain_error("map " + src.label + " -> " + dst.label + " is not left A-linear");
    if (needRight && !isRightLinear(src, dst, m))
        throw std::domain_error("map " + src.label + " -> " + dst.label + " is not right A-linear");
    return BimoduleMap{std::move(m), src.label, dst.label, lin};
}

static Subspace closure(const Bimodule& m, const std::vector<Vec>& gens, bool both) {
    detail::SparseEchelon e(m.dim);
    std::vector<Vec> queue;
    auto push = [&](const Vec& v) {
        if (e.insert(toSparse(v))) queue.push_back(v);
    };
    for (const auto& g : gens) {
        if (static_cast<int>(g.size()) != m.dim) throw std::invalid_argument("generator length != module dim");
        push(g);
    }
    for (size_t q = 0; q < queue.size(); ++q)
        for (int g : m.alg->generators) {
            push(m.left[g] * queue[q]);
            if (both && m.hasRight()) push(m.right[g] * queue[q]);
        }
    auto rows = e.finish();
    Mat b(static_cast<int>(rows.size()), m.dim);
    for (size_t i = 0; i < rows.size(); ++i)
        for (const auto& [j, x] : rows[i]) b(static_cast<int>(i), j) = x;
    return Subspace{m.dim, b};
}

Subspace subBimodule(const Bimodule& m, const std::vector<Vec>& gens) { return closure(m, gens, true); }

Subspace leftSubmodule(const Bimodule& m, const std::vector<Vec>& gens) { return closure(m, gens, false); }

static bool restrictAct(const Mat& act, const Subspace& s, const Mat& emb, const std::vector<int>& piv, Mat& out) {
    Mat x = act * emb;
    out = Mat(s.dim(), s.dim());
    for (int r = 0; r < s.dim(); ++r)
        for (int c = 0; c < s.dim(); ++c) out(r, c) = x(piv[r], c);
    return emb * out == x;
}

Bimodule restrictTo(const Bimodule& m, const Subspace& s, std::string label) {
    if (s.ambientDim != m.dim) throw std::invalid_argument("restrictTo: ambient mismatch");
    Mat emb = s.embedding();
    auto piv = s.pivots();
    std::vector<Mat> left(m.alg->dim), right;
    for (int a = 0; a < m.alg->dim; ++a)
        if (!restrictAct(m.left[a], s, emb, piv, left[a]))
            throw std::domain_error("restrictTo: subspace of '" + m.label + "' is not left-stable");
    if (m.hasRight()) {
        right.resize(m.alg->dim);
        for (int a = 0; a < m.alg->dim; ++a)
            if (!restrictAct(m.right[a], s, emb, piv, right[a])) {
                right.clear();
                break;
            }
    }
    return makeBimodule(m.alg, s.dim(), std::move(left), std::move(right), std::move(label));
}

Vec Tensor::pair(const Vec& x, const Vec& y) const {
    Vec r(mod.dim);
    Rat s;
    for (int i = 0; i < leftDim; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (int j = 0; j < rightDim; ++j) {
            if (sgn(y[j]) == 0) continue;
            s = x[i] * y[j];
            for (const auto& [k, c] : pairClass(i, j)) r[k] += s * c;
        }
    }
    return r;
}

Vec Tensor::project(const Vec& plain) const {
    Vec r(mod.dim);
    for (size_t p = 0; p < plain.size(); ++p) {
        if (sgn(plain[p]) == 0) continue;
        for (const auto& [k, c] : projCol[p]) r[k] += plain[p] * c;
    }
    return r;
}

Mat Tensor::projection() const {
    Mat m(mod.dim, plainDim());
    for (int p = 0; p < plainDim(); ++p)
        for (const auto& [k, c] : projCol[p]) m(k, p) = c;
    return m;
}

Mat Tensor::liftMatrix() const {
    Mat m(plainDim(), mod.dim);
    for (int t = 0; t < mod.dim; ++t)
        for (const auto& [p, c] : lift[t]) m(p, t) = c;
    return m;
}

Mat Tensor::descend(const Mat& plainMap) const {
    if (plainMap.cols() != plainDim()) throw std::invalid_argument("descend: plain map has wrong width");
    Mat out(plainMap.rows(), mod.dim);
    for (int t = 0; t < mod.dim; ++t)
        for (const auto& [p, c] : lift[t])
            for (int r = 0; r < plainMap.rows(); ++r)
                if (sgn(plainMap(r, p)) != 0) out(r, t) += c * plainMap(r, p);
    return out;
}

Tensor tensorOverA(const Bimodule& m, const Bimodule& n) {
    if (!sameAlgebra(*m.alg, *n.alg)) throw std::invalid_argument("tensorOverA: modules over different algebras");
    if (!m.hasRight()) throw std::invalid_argument("tensorOverA: left factor '" + m.label + "' has no right action");
    const int dl = m.dim, dr = n.dim;
    checkDim(static_cast<long>(dl) * dr, "tensorOverA plain product");
    Tensor t;
    t.leftDim = dl;
    t.rightDim = dr;
    const int plain = dl * dr;

    detail::SparseEchelon e(plain);
    for (int g : m.alg->generators) {
        std::vector<SVec> rcol(dl), lcol(dr);
        for (int i = 0; i < dl; ++i) rcol[i] = m.right[g].sparseCol(i);
        for (int j = 0; j < dr; ++j) lcol[j] = n.left[g].sparseCol(j);
        for (int i = 0; i < dl; ++i)
            for (int j = 0; j < dr; ++j) {
                // (x g) ⊗ y - x ⊗ (g y)
                SVec a, b;
                for (const auto& [k, c] : rcol[i]) a.emplace_back(k * dr + j, c);
                for (const auto& [l, c] : lcol[j]) b.emplace_back(i * dr + l, c);
                std::sort(a.begin(), a.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
                axpy(a, Rat(-1), b);
                if (!a.empty()) e.insert(std::move(a));
            }
    }
    auto rows = e.finish();
    std::vector<int> freeIdx(plain, -1);
    std::vector<char> isPivot(plain, 0);
    for (const auto& r : rows) isPivot[r.front().first] = 1;
    int q = 0;
    for (int p = 0; p < plain; ++p)
        if (!isPivot[p]) freeIdx[p] = q++;
    t.projCol.assign(plain, {});
    t.lift.assign(q, {});
    for (int p = 0; p < plain; ++p)
        if (freeIdx[p] >= 0) {
            t.projCol[p] = {{freeIdx[p], Rat(1)}};
            t.lift[freeIdx[p]] = {{p, Rat(1)}};
        }
    for (const auto& r : rows) {
        SVec v;
        for (size_t k = 1; k < r.size(); ++k) v.emplace_back(freeIdx[r[k].first], -r[k].second);
        t.projCol[r.front().first] = std::move(v);
    }

    const int na = m.alg->dim;
    std::vector<Mat> left(na, Mat(q, q)), right;
    for (int a = 0; a < na; ++a)
        for (int c = 0; c < q; ++c) {
            int p = t.lift[c].front().first;
            int i = p / dr, j = p % dr;
            for (int k = 0; k < dl; ++k) {
                const Rat& x = m.left[a](k, i);
                if (sgn(x) == 0) continue;
                for (const auto& [r, y] : t.pairClass(k, j)) left[a](r, c) += x * y;
            }
        }
    if (n.hasRight()) {
        right.assign(na, Mat(q, q));
        for (int a = 0; a < na; ++a)
            for (int c = 0; c < q; ++c) {
                int p = t.lift[c].front().first;
                int i = p / dr, j = p % dr;
                for (int l = 0; l < dr; ++l) {
                    const Rat& x = n.right[a](l, j);
                    if (sgn(x) == 0) continue;
                    for (const auto& [r, y] : t.pairClass(i, l)) right[a](r, c) += x * y;
                }
            }
    }
    t.mod = makeBimodule(m.alg, q, std::move(left), std::move(right), m.label + "⊗" + n.label);
    return t;
}

Tensor unitTensor(const Bimodule& f) {
    Tensor t;
    t.mod = f;
    t.leftDim = f.alg->dim;
    t.rightDim = f.dim;
    t.projCol.resize(static_cast<size_t>(t.leftDim) * t.rightDim);
    for (int u = 0; u < t.leftDim; ++u)
        for (int j = 0; j < f.dim; ++j) t.projCol[static_cast<size_t>(u) * f.dim + j] = f.left[u].sparseCol(j);
    t.lift.resize(f.dim);
    for (int j = 0; j < f.dim; ++j)
        for (int u = 0; u < t.leftDim; ++u)
            if (sgn(f.alg->unit[u]) != 0) t.lift[j].emplace_back(u * f.dim + j, f.alg->unit[u]);
    return t;
}

Mat tensorMaps(const Tensor& src, const Tensor& dst, const Mat& f, const Mat& g) {
    if (f.rows() != dst.leftDim || f.cols() != src.leftDim || g.rows() != dst.rightDim || g.cols() != src.rightDim)
        throw std::invalid_argument("tensorMaps: shape mismatch");
    std::vector<SVec> fc(f.cols()), gc(g.cols());
    for (int i = 0; i < f.cols(); ++i) fc[i] = f.sparseCol(i);
    for (int j = 0; j < g.cols(); ++j) gc[j] = g.sparseCol(j);
    Mat out(dst.mod.dim, src.mod.dim);
    Rat s;
    for (int t = 0; t < src.mod.dim; ++t)
        for (const auto& [p, c] : src.lift[t]) {
            int i = p / src.rightDim, j = p % src.rightDim;
            for (const auto& [a, x] : fc[i])
                for (const auto& [b, y] : gc[j]) {
                    s = c * x * y;
                    for (const auto& [r, z] : dst.pairClass(a, b)) out(r, t) += s * z;
                }
        }
    return out;
}

bool isBalanced(const Mat& plainMap, const Bimodule& m, const Bimodule& n) {
    const int dl = m.dim, dr = n.dim;
    if (plainMap.cols() != dl * dr) throw std::invalid_argument("isBalanced: wrong width");
    for (int g : m.alg->generators) {
        std::vector<SVec> rcol(dl), lcol(dr);
        for (int i = 0; i < dl; ++i) rcol[i] = m.right[g].sparseCol(i);
        for (int j = 0; j < dr; ++j) lcol[j] = n.left[g].sparseCol(j);
        for (int i = 0; i < dl; ++i)
            for (int j = 0; j < dr; ++j)
                for (int r = 0; r < plainMap.rows(); ++r) {
                    Rat v;
                    for (const auto& [k, c] : rcol[i]) v += c * plainMap(r, k * dr + j);
                    for (const auto& [l, c] : lcol[j]) v -= c * plainMap(r, i * dr + l);
                    if (sgn(v) != 0) return false;
                }
    }
    return true;
}

namespace {

SVec merged(std::vector<std::pair<int, Rat>> terms) {
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SVec out;
    for (auto& [j, x] : terms) {
        if (!out.empty() && out.back().first == j)
            out.back().second += x;
        else
            out.emplace_back(j, std::move(x));
        if (sgn(out.back().second) == 0) out.pop_back();
    }
    return out;
}

}  // namespace

MapConstraint composeConstraint(const Mat& post, const Mat& pre, const Mat& value) {
    if (post.rows() != value.rows() || pre.cols() != value.cols())
        throw std::invalid_argument("composeConstraint: shape mismatch");
    const int inner = pre.rows();
    std::vector<SVec> preCols(pre.cols());
    for (int c = 0; c < pre.cols(); ++c) preCols[c] = pre.sparseCol(c);
    MapConstraint out;
    for (int r = 0; r < post.rows(); ++r)
        for (int c = 0; c < pre.cols(); ++c) {
            std::vector<std::pair<int, Rat>> terms;
            for (int i = 0; i < post.cols(); ++i) {
                if (sgn(post(r, i)) == 0) continue;
                for (const auto& [j, x] : preCols[c]) terms.emplace_back(i * inner + j, post(r, i) * x);
            }
            out.rows.push_back(merged(std::move(terms)));
            out.rhs.push_back(value(r, c));
        }
    return out;
}

Vec vecOf(const Mat& m) {
    Vec v;
    v.reserve(static_cast<size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

Mat unvec(const Vec& v, int rows, int cols) {
    if (static_cast<long>(v.size()) != static_cast<long>(rows) * cols) throw std::invalid_argument("unvec: length mismatch");
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = v[static_cast<size_t>(i) * cols + j];
    return m;
}

AffineSpace solveMaps(const Bimodule& src, const Bimodule& dst, Linearity lin, const std::vector<MapConstraint>& extra) {
    if (!sameAlgebra(*src.alg, *dst.alg)) throw std::invalid_argument("solveMaps: modules over different algebras");
    const int ns = src.dim, nd = dst.dim, n = ns * nd;
    std::vector<SVec> rows;
    Vec rhs;
    // X actS - actD X = 0, one equation per entry
    auto intertwine = [&](const Mat& actS, const Mat& actD) {
        std::vector<SVec> colsS(ns);
        for (int k = 0; k < ns; ++k) colsS[k] = actS.sparseCol(k);
        for (int i = 0; i < nd; ++i)
            for (int k = 0; k < ns; ++k) {
                std::vector<std::pair<int, Rat>> terms;
                for (const auto& [j, x] : colsS[k]) terms.emplace_back(i * ns + j, x);
                for (int l = 0; l < nd; ++l)
                    if (sgn(actD(i, l)) != 0) terms.emplace_back(l * ns + k, -actD(i, l));
                SVec r = merged(std::move(terms));
                if (r.empty()) continue;
                rows.push_back(std::move(r));
                rhs.emplace_back(0);
            }
    };
    bool needLeft = lin == Linearity::LeftA || lin == Linearity::Bilinear;
    bool needRight = lin == Linearity::RightA || lin == Linearity::Bilinear;
    if (needRight && (!src.hasRight() || !dst.hasRight()))
        throw std::invalid_argument("solveMaps: right linearity needs right actions");
    for (int g : src.alg->generators) {
        if (needLeft) intertwine(src.left[g], dst.left[g]);
        if (needRight) intertwine(src.right[g], dst.right[g]);
    }
    for (const auto& c : extra) {
        if (c.rows.size() != c.rhs.size()) throw std::invalid_argument("solveMaps: constraint has wrong shape");
        for (size_t i = 0; i < c.rows.size(); ++i) {
            if (!c.rows[i].empty() && c.rows[i].back().first >= n)
                throw std::invalid_argument("solveMaps: constraint has wrong shape");
            rows.push_back(c.rows[i]);
            rhs.push_back(c.rhs[i]);
        }
    }
    return solveSparse(std::move(rows), rhs, n);
}

int MapSystem::addUnknown(int rows, int cols) {
    shapes_.push_back({size_, rows, cols});
    size_ += rows * cols;
    return static_cast<int>(shapes_.size()) - 1;
}

void MapSystem::equation(const std::vector<Term>& terms, const Mat& value) {
    struct Sparse {
        int offset, cols;
        std::vector<SVec> postRows, preCols;
    };
    std::vector<Sparse> sp;
    for (const auto& t : terms) {
        const Shape& sh = shapes_.at(t.unknown);
        if (t.post.cols() != sh.rows || t.pre.rows() != sh.cols || t.post.rows() != value.rows() ||
            t.pre.cols() != value.cols())
            throw std::invalid_argument("MapSystem: term shape mismatch");
        Sparse s{sh.offset, sh.cols, {}, {}};
        Mat pt = transpose(t.post);
        for (int r = 0; r < t.post.rows(); ++r) s.postRows.push_back(pt.sparseCol(r));
        for (int c = 0; c < t.pre.cols(); ++c) s.preCols.push_back(t.pre.sparseCol(c));
        sp.push_back(std::move(s));
    }
    for (int r = 0; r < value.rows(); ++r)
        for (int c = 0; c < value.cols(); ++c) {
            std::vector<std::pair<int, Rat>> terms2;
            for (const auto& s : sp)
                for (const auto& [i, x] : s.postRows[r])
                    for (const auto& [j, y] : s.preCols[c]) terms2.emplace_back(s.offset + i * s.cols + j, x * y);
            SVec row = merged(std::move(terms2));
            if (row.empty() && sgn(value(r, c)) == 0) continue;
            rows_.push_back(std::move(row));
            rhs_.push_back(value(r, c));
        }
}

void MapSystem::linear(int unknown, const Bimodule& src, const Bimodule& dst, Linearity lin) {
    const Shape& sh = shapes_.at(unknown);
    if (sh.rows != dst.dim || sh.cols != src.dim) throw std::invalid_argument("MapSystem: module shape mismatch");
    bool needLeft = lin == Linearity::LeftA || lin == Linearity::Bilinear;
    bool needRight = lin == Linearity::RightA || lin == Linearity::Bilinear;
    if (needRight && (!src.hasRight() || !dst.hasRight()))
        throw std::invalid_argument("MapSystem: right linearity needs right actions");
    Mat idS = Mat::identity(src.dim), idD = Mat::identity(dst.dim);
    Mat zero(dst.dim, src.dim);
    for (int g : src.alg->generators) {
        if (needLeft) equation({{unknown, idD, src.left[g]}, {unknown, -dst.left[g], idS}}, zero);
        if (needRight) equation({{unknown, idD, src.right[g]}, {unknown, -dst.right[g], idS}}, zero);
    }
}

AffineSpace MapSystem::solve() const { return solveSparse(rows_, rhs_, size_); }

Mat MapSystem::extract(const Vec& solution, int unknown) const {
    const Shape& sh = shapes_.at(unknown);
    Mat m(sh.rows, sh.cols);
    for (int i = 0; i < sh.rows; ++i)
        for (int j = 0; j < sh.cols; ++j) m(i, j) = solution[static_cast<size_t>(sh.offset) + i * sh.cols + j];
    return m;
}

}  // namespace ncjet
