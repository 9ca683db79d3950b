#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace ncjet {

using Rat = mpq_class;
using Vec = std::vector<Rat>;
// sorted by index, no explicit zeros
using SVec = std::vector<std::pair<int, Rat>>;

std::string toString(const Rat& r);
// Accepts "p" or "p/q" (optional leading '-'); throws std::invalid_argument.
Rat parseRat(const std::string& s);

// Dense row-major matrix. Products skip zero entries, which is what makes
// exact arithmetic on the structured (mostly sparse) maps here affordable.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols);

    static Mat identity(int n);
    static Mat fromRows(const std::vector<Vec>& rows, int cols);
    static Mat fromCols(const std::vector<Vec>& cols, int rows);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Rat& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Rat& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Vec row(int i) const;
    Vec col(int j) const;
    SVec sparseCol(int j) const;
    void setRow(int i, const Vec& v);
    void setCol(int j, const Vec& v);
    Mat block(int r0, int c0, int nr, int nc) const;
    void setBlock(int r0, int c0, const Mat& m);

    bool isZero() const;
    bool operator==(const Mat& o) const = default;

private:
    int r_ = 0, c_ = 0;
    std::vector<Rat> a_;
};

Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& v);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator-(const Mat& a);
Mat operator*(const Rat& s, const Mat& a);
Mat& operator+=(Mat& a, const Mat& b);
Mat& operator-=(Mat& a, const Mat& b);

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rat& s, const Vec& v);
bool isZero(const Vec& v);
Vec zeros(int n);
Vec unitVec(int n, int i);

Mat transpose(const Mat& m);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat blockDiag(const Mat& a, const Mat& b);
// Kronecker product; left factor is the slow index.
Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);

SVec toSparse(const Vec& v);
Vec toDense(const SVec& v, int n);
// r += c * p
void axpy(SVec& r, const Rat& c, const SVec& p);

// Ambient dimension cap, overridable through NCJET_MAX_DIM.
int maxDim();
void checkDim(long n, const char* what);

struct Subspace {
    int ambientDim = 0;
    Mat basis;  // rows, reduced row echelon form

    int dim() const { return basis.rows(); }
    std::vector<int> pivots() const;
    bool contains(const Vec& v) const;
    // coordinates of a member vector in the echelon basis
    Vec coords(const Vec& v) const;
    // basis vectors as columns: ambient x dim
    Mat embedding() const { return transpose(basis); }
    bool operator==(const Subspace& o) const = default;
};

struct AffineSpace {
    bool empty = true;
    Vec particular;
    Subspace direction;
};

struct QuotientData {
    Mat projection;  // (ambient - dim) x ambient
    Mat section;     // ambient x (ambient - dim)
};

Mat rref(const Mat& m);
int rank(const Mat& m);
Subspace spanOfRows(const Mat& gens, int ambient);
Subspace spanOfCols(const Mat& m);
Subspace spanOf(const std::vector<Vec>& gens, int ambient);
Subspace zeroSubspace(int ambient);
Subspace fullSubspace(int ambient);
Subspace kernelOf(const Mat& m);
Subspace imageOf(const Mat& m) ;
AffineSpace solveAffine(const Mat& m, const Vec& target);
// same, for a system given as sparse rows over `cols` unknowns
AffineSpace solveSparse(std::vector<SVec> rows, const Vec& target, int cols);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
bool isSubspaceOf(const Subspace& a, const Subspace& b);
QuotientData quotientData(const Subspace& sub);
Mat inverse(const Mat& m);
// X with m * X = id, for m of full row rank
Mat rightInverse(const Mat& m);
// X with X * m = id, for m of full column rank
Mat leftInverse(const Mat& m);
// Solve m * X = b column by column; throws if inconsistent.
Mat solve(const Mat& m, const Mat& b);

namespace detail {

// Incremental sparse echelon form. Rows are inserted one at a time and kept
// with leading coefficient 1; finish() back-substitutes to the reduced form.
class SparseEchelon {
public:
    explicit SparseEchelon(int cols);
    // returns true when the row was independent of the current span
    bool insert(SVec row);
    std::vector<SVec> finish();
    int rank() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }

private:
    void reduce(SVec& row) const;
    int cols_;
    std::vector<int> pivotRow_;  // column -> index into rows_, or -1
    std::vector<SVec> rows_;
};

}  // namespace detail

}  // namespace ncjet
