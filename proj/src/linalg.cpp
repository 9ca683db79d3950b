#include "ncjet/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <regex>
#include <stdexcept>

namespace ncjet {

std::string toString(const Rat& r) { return r.get_str(); }

Rat parseRat(const std::string& s) {
    static const std::regex re(R"(\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw std::invalid_argument("not a rational: '" + s + "'");
    mpz_class num(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str(), 10);
    mpz_class den(1);
    if (m[2].matched) den = mpz_class(m[2].str(), 10);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Mat::Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix size");
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::fromRows(const std::vector<Vec>& rows, int cols) {
    Mat m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows(); ++i) m.setRow(i, rows[i]);
    return m;
}

Mat Mat::fromCols(const std::vector<Vec>& cols, int rows) {
    Mat m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) m.setCol(j, cols[j]);
    return m;
}

Vec Mat::row(int i) const { return Vec(a_.begin() + static_cast<long>(i) * c_, a_.begin() + static_cast<long>(i + 1) * c_); }

Vec Mat::col(int j) const {
    Vec v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

SVec Mat::sparseCol(int j) const {
    SVec v;
    for (int i = 0; i < r_; ++i)
        if (sgn((*this)(i, j)) != 0) v.emplace_back(i, (*this)(i, j));
    return v;
}

void Mat::setRow(int i, const Vec& v) {
    if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("setRow: length mismatch");
    for (int j = 0; j < c_; ++j) (*this)(i, j) = v[j];
}

void Mat::setCol(int j, const Vec& v) {
    if (static_cast<int>(v.size()) != r_) throw std::invalid_argument("setCol: length mismatch");
    for (int i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

Mat Mat::block(int r0, int c0, int nr, int nc) const {
    Mat m(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void Mat::setBlock(int r0, int c0, const Mat& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

bool Mat::isZero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rat& x) { return sgn(x) == 0; });
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    std::vector<std::vector<int>> nz(b.rows());
    for (int k = 0; k < b.rows(); ++k)
        for (int j = 0; j < b.cols(); ++j)
            if (sgn(b(k, j)) != 0) nz[k].push_back(j);
    Mat c(a.rows(), b.cols());
    Rat t;
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rat& x = a(i, k);
            if (sgn(x) == 0) continue;
            for (int j : nz[k]) {
                mpq_mul(t.get_mpq_t(), x.get_mpq_t(), b(k, j).get_mpq_t());
                mpq_add(c(i, j).get_mpq_t(), c(i, j).get_mpq_t(), t.get_mpq_t());
            }
        }
    return c;
}

Vec operator*(const Mat& a, const Vec& v) {
    if (a.cols() != static_cast<int>(v.size())) throw std::invalid_argument("matrix-vector: shape mismatch");
    Vec r(a.rows());
    Rat t;
    for (int k = 0; k < a.cols(); ++k) {
        if (sgn(v[k]) == 0) continue;
        for (int i = 0; i < a.rows(); ++i) {
            if (sgn(a(i, k)) == 0) continue;
            mpq_mul(t.get_mpq_t(), a(i, k).get_mpq_t(), v[k].get_mpq_t());
            mpq_add(r[i].get_mpq_t(), r[i].get_mpq_t(), t.get_mpq_t());
        }
    }
    return r;
}

static void sameShape(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
}

Mat& operator+=(Mat& a, const Mat& b) {
    sameShape(a, b);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (sgn(b(i, j)) != 0) a(i, j) += b(i, j);
    return a;
}

Mat& operator-=(Mat& a, const Mat& b) {
    sameShape(a, b);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (sgn(b(i, j)) != 0) a(i, j) -= b(i, j);
    return a;
}

Mat operator+(const Mat& a, const Mat& b) {
    Mat c = a;
    return c += b;
}

Mat operator-(const Mat& a, const Mat& b) {
    Mat c = a;
    return c -= b;
}

Mat operator-(const Mat& a) {
    Mat c = a;
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) c(i, j) = -c(i, j);
    return c;
}

Mat operator*(const Rat& s, const Mat& a) {
    Mat c = a;
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) c(i, j) *= s;
    return c;
}

Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector sum: length mismatch");
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector difference: length mismatch");
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec operator*(const Rat& s, const Vec& v) {
    Vec r = v;
    for (auto& x : r) x *= s;
    return r;
}

bool isZero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return sgn(x) == 0; });
}

Vec zeros(int n) { return Vec(n); }

Vec unitVec(int n, int i) {
    Vec v(n);
    v[i] = 1;
    return v;
}

Mat transpose(const Mat& m) {
    Mat t(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

Mat hstack(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Mat m(a.rows(), a.cols() + b.cols());
    m.setBlock(0, 0, a);
    m.setBlock(0, a.cols(), b);
    return m;
}

Mat vstack(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    Mat m(a.rows() + b.rows(), a.cols());
    m.setBlock(0, 0, a);
    m.setBlock(a.rows(), 0, b);
    return m;
}

Mat blockDiag(const Mat& a, const Mat& b) {
    Mat m(a.rows() + b.rows(), a.cols() + b.cols());
    m.setBlock(0, 0, a);
    m.setBlock(a.rows(), a.cols(), b);
    return m;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (sgn(a(i, j)) == 0) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    if (sgn(b(k, l)) != 0) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return m;
}

Vec kron(const Vec& a, const Vec& b) {
    Vec v(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (sgn(b[j]) != 0) v[i * b.size() + j] = a[i] * b[j];
    }
    return v;
}

SVec toSparse(const Vec& v) {
    SVec s;
    for (size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) s.emplace_back(static_cast<int>(i), v[i]);
    return s;
}

Vec toDense(const SVec& v, int n) {
    Vec d(n);
    for (const auto& [i, x] : v) d[i] = x;
    return d;
}

void axpy(SVec& r, const Rat& c, const SVec& p) {
    if (sgn(c) == 0 || p.empty()) return;
    SVec out;
    out.reserve(r.size() + p.size());
    size_t i = 0, j = 0;
    Rat t;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(std::move(r[i++]));
        } else if (i == r.size() || p[j].first < r[i].first) {
            out.emplace_back(p[j].first, c * p[j].second);
            ++j;
        } else {
            mpq_mul(t.get_mpq_t(), c.get_mpq_t(), p[j].second.get_mpq_t());
            mpq_add(t.get_mpq_t(), t.get_mpq_t(), r[i].second.get_mpq_t());
            if (sgn(t) != 0) out.emplace_back(r[i].first, t);
            ++i;
            ++j;
        }
    }
    r = std::move(out);
}

int maxDim() {
    static const int cap = [] {
        if (const char* s = std::getenv("NCJET_MAX_DIM")) {
            int v = std::atoi(s);
            if (v > 0) return v;
        }
        return 4096;
    }();
    return cap;
}

void checkDim(long n, const char* what) {
    if (n > maxDim())
        throw std::length_error(std::string(what) + ": dimension " + std::to_string(n) + " exceeds cap " +
                                std::to_string(maxDim()) + " (set NCJET_MAX_DIM)");
}

namespace detail {

SparseEchelon::SparseEchelon(int cols) : cols_(cols), pivotRow_(cols, -1) {}

void SparseEchelon::reduce(SVec& row) const {
    size_t idx = 0;
    while (idx < row.size()) {
        int c = row[idx].first;
        int p = pivotRow_[c];
        if (p < 0) {
            ++idx;
            continue;
        }
        Rat coef = -row[idx].second;
        axpy(row, coef, rows_[p]);
    }
}

bool SparseEchelon::insert(SVec row) {
    reduce(row);
    if (row.empty()) return false;
    Rat lead = row.front().second;
    if (lead != 1)
        for (auto& e : row) e.second /= lead;
    pivotRow_[row.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

std::vector<SVec> SparseEchelon::finish() {
    std::vector<int> order(rows_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return rows_[a].front().first > rows_[b].front().first; });
    for (int ri : order) {
        SVec& row = rows_[ri];
        size_t idx = 1;
        while (idx < row.size()) {
            int p = pivotRow_[row[idx].first];
            if (p < 0) {
                ++idx;
                continue;
            }
            Rat coef = -row[idx].second;
            axpy(row, coef, rows_[p]);
        }
    }
    std::vector<SVec> out;
    out.reserve(rows_.size());
    for (auto it = order.rbegin(); it != order.rend(); ++it) out.push_back(rows_[*it]);
    return out;
}

}  // namespace detail

static std::vector<SVec> echelonRows(const Mat& m) {
    detail::SparseEchelon e(m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        SVec r;
        for (int j = 0; j < m.cols(); ++j)
            if (sgn(m(i, j)) != 0) r.emplace_back(j, m(i, j));
        e.insert(std::move(r));
    }
    return e.finish();
}

static Mat denseRows(const std::vector<SVec>& rows, int nrows, int cols) {
    Mat m(nrows, cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (const auto& [j, x] : rows[i]) m(static_cast<int>(i), j) = x;
    return m;
}

Mat rref(const Mat& m) {
    auto rows = echelonRows(m);
    return denseRows(rows, m.rows(), m.cols());
}

int rank(const Mat& m) { return static_cast<int>(echelonRows(m).size()); }

std::vector<int> Subspace::pivots() const {
    std::vector<int> p;
    for (int i = 0; i < basis.rows(); ++i)
        for (int j = 0; j < basis.cols(); ++j)
            if (sgn(basis(i, j)) != 0) {
                p.push_back(j);
                break;
            }
    return p;
}

Vec Subspace::coords(const Vec& v) const {
    auto p = pivots();
    Vec c(p.size());
    for (size_t i = 0; i < p.size(); ++i) c[i] = v[p[i]];
    return c;
}

bool Subspace::contains(const Vec& v) const {
    if (static_cast<int>(v.size()) != ambientDim) return false;
    Vec r = v;
    auto p = pivots();
    for (size_t i = 0; i < p.size(); ++i) {
        Rat c = r[p[i]];
        if (sgn(c) == 0) continue;
        for (int j = 0; j < ambientDim; ++j)
            if (sgn(basis(static_cast<int>(i), j)) != 0) r[j] -= c * basis(static_cast<int>(i), j);
    }
    return isZero(r);
}

Subspace spanOfRows(const Mat& gens, int ambient) {
    if (gens.rows() > 0 && gens.cols() != ambient) throw std::invalid_argument("spanOfRows: ambient mismatch");
    checkDim(ambient, "subspace");
    auto rows = echelonRows(gens.rows() ? gens : Mat(0, ambient));
    return Subspace{ambient, denseRows(rows, static_cast<int>(rows.size()), ambient)};
}

Subspace spanOfCols(const Mat& m) { return spanOfRows(transpose(m), m.rows()); }

Subspace spanOf(const std::vector<Vec>& gens, int ambient) { return spanOfRows(Mat::fromRows(gens, ambient), ambient); }

Subspace zeroSubspace(int ambient) { return Subspace{ambient, Mat(0, ambient)}; }

Subspace fullSubspace(int ambient) { return Subspace{ambient, Mat::identity(ambient)}; }

Subspace imageOf(const Mat& m) { return spanOfCols(m); }

namespace {

// kernel of a system already in reduced echelon form
Subspace kernelFromEchelon(const std::vector<SVec>& rows, int cols) {
    std::vector<char> pivot(cols, 0);
    for (const auto& r : rows) pivot[r.front().first] = 1;
    std::vector<int> freeIdx(cols, -1);
    int nfree = 0;
    for (int f = 0; f < cols; ++f)
        if (!pivot[f]) freeIdx[f] = nfree++;
    // one solution per free variable
    std::vector<SVec> gens(nfree);
    for (int f = 0; f < cols; ++f)
        if (!pivot[f]) gens[freeIdx[f]].emplace_back(f, Rat(1));
    for (const auto& r : rows) {
        int pc = r.front().first;
        for (size_t k = 1; k < r.size(); ++k) gens[freeIdx[r[k].first]].emplace_back(pc, -r[k].second);
    }
    Mat basis(nfree, cols);
    for (int g = 0; g < nfree; ++g)
        for (const auto& [j, x] : gens[g]) basis(g, j) = x;
    return spanOfRows(basis, cols);
}

}  // namespace

Subspace kernelOf(const Mat& m) {
    checkDim(m.cols(), "kernel");
    return kernelFromEchelon(echelonRows(m), m.cols());
}

AffineSpace solveSparse(std::vector<SVec> rows, const Vec& target, int cols) {
    if (target.size() != rows.size()) throw std::invalid_argument("solveSparse: target length mismatch");
    checkDim(cols, "system");
    detail::SparseEchelon e(cols + 1);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (sgn(target[i]) != 0) rows[i].emplace_back(cols, target[i]);
        e.insert(std::move(rows[i]));
    }
    auto ech = e.finish();
    AffineSpace out;
    for (const auto& r : ech)
        if (r.front().first == cols) return out;
    out.empty = false;
    out.particular = Vec(cols);
    for (auto& r : ech)
        if (r.back().first == cols) {
            out.particular[r.front().first] = r.back().second;
            r.pop_back();
        }
    out.direction = kernelFromEchelon(ech, cols);
    return out;
}

AffineSpace solveAffine(const Mat& m, const Vec& target) {
    if (static_cast<int>(target.size()) != m.rows()) throw std::invalid_argument("solveAffine: target length mismatch");
    std::vector<SVec> rows(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (sgn(m(i, j)) != 0) rows[i].emplace_back(j, m(i, j));
    return solveSparse(std::move(rows), target, m.cols());
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambientDim != b.ambientDim) throw std::invalid_argument("intersect: ambient dimension mismatch");
    int n = a.ambientDim;
    if (a.dim() == 0 || b.dim() == 0) return zeroSubspace(n);
    // alpha . A = beta . B  <=>  [A^T | -B^T] (alpha; beta) = 0
    Mat sys = hstack(transpose(a.basis), -transpose(b.basis));
    Subspace k = kernelOf(sys);
    std::vector<Vec> gens;
    for (int r = 0; r < k.dim(); ++r) {
        Vec x(n);
        for (int i = 0; i < a.dim(); ++i) {
            const Rat& c = k.basis(r, i);
            if (sgn(c) == 0) continue;
            for (int j = 0; j < n; ++j) x[j] += c * a.basis(i, j);
        }
        gens.push_back(std::move(x));
    }
    return spanOf(gens, n);
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambientDim != b.ambientDim) throw std::invalid_argument("sum: ambient dimension mismatch");
    return spanOfRows(vstack(a.basis, b.basis), a.ambientDim);
}

bool isSubspaceOf(const Subspace& a, const Subspace& b) {
    if (a.ambientDim != b.ambientDim) return false;
    for (int i = 0; i < a.dim(); ++i)
        if (!b.contains(a.basis.row(i))) return false;
    return true;
}

QuotientData quotientData(const Subspace& sub) {
    int n = sub.ambientDim;
    auto piv = sub.pivots();
    std::vector<char> isPivot(n, 0);
    for (int p : piv) isPivot[p] = 1;
    std::vector<int> freeCols;
    for (int j = 0; j < n; ++j)
        if (!isPivot[j]) freeCols.push_back(j);
    int q = static_cast<int>(freeCols.size());
    QuotientData out{Mat(q, n), Mat(n, q)};
    for (int t = 0; t < q; ++t) {
        out.projection(t, freeCols[t]) = 1;
        out.section(freeCols[t], t) = 1;
        for (size_t i = 0; i < piv.size(); ++i) out.projection(t, piv[i]) = -sub.basis(static_cast<int>(i), freeCols[t]);
    }
    return out;
}

Mat solve(const Mat& m, const Mat& b) {
    if (m.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    auto rows = echelonRows(hstack(m, b));
    Mat x(m.cols(), b.cols());
    for (const auto& r : rows) {
        int lead = r.front().first;
        if (lead >= m.cols()) throw std::domain_error("solve: inconsistent system");
        for (const auto& [j, v] : r)
            if (j >= m.cols()) x(lead, j - m.cols()) = v;
    }
    return x;
}

Mat inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
    if (rank(m) != m.rows()) throw std::domain_error("inverse: singular matrix");
    return solve(m, Mat::identity(m.rows()));
}

Mat rightInverse(const Mat& m) {
    if (rank(m) != m.rows()) throw std::domain_error("rightInverse: not of full row rank");
    return solve(m, Mat::identity(m.rows()));
}

Mat leftInverse(const Mat& m) { return transpose(rightInverse(transpose(m))); }

}  // namespace ncjet
