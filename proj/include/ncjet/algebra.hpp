#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ncjet/linalg.hpp"

namespace ncjet {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Named pass/fail list; every validator and property suite returns one.
struct Report {
    std::vector<Check> checks;

    void add(std::string name, bool pass, std::string detail = {});
    void merge(const Report& other, const std::string& prefix = {});
    bool ok() const;
    const Check* firstFailure() const;
};

struct Algebra {
    int dim = 0;
    std::vector<std::string> basisNames;
    std::vector<std::vector<Vec>> mult;  // mult[i][j] = coordinates of e_i e_j
    Vec unit;
    std::string name;
    // basis indices whose products (with the unit) span the algebra; module
    // axioms and intertwining equations only need checking on these
    std::vector<int> generators;

    Vec mul(const Vec& a, const Vec& b) const;
    Mat leftMul(const Vec& a) const;   // x -> a x
    Mat rightMul(const Vec& a) const;  // x -> x a
    Vec basisVec(int i) const { return unitVec(dim, i); }
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

// Checks shapes and fills in generators. Throws std::invalid_argument on shape errors only.
AlgebraPtr makeAlgebra(std::vector<std::string> names, std::vector<std::vector<Vec>> mult, Vec unit,
                       std::string name);
Report validateAlgebra(const Algebra& a);
bool sameAlgebra(const Algebra& a, const Algebra& b);

AlgebraPtr quaternionAlgebra();
AlgebraPtr functionsOnPoints(int n);
AlgebraPtr matrixAlgebra(int n);

struct Bimodule {
    AlgebraPtr alg;
    int dim = 0;
    std::vector<Mat> left;   // one matrix per algebra basis element
    std::vector<Mat> right;  // empty for a left module
    std::string label;
    long id = 0;  // identity for caches; copies share it

    bool hasRight() const { return !right.empty(); }
    Mat leftAct(const Vec& a) const;
    Mat rightAct(const Vec& a) const;
};

Bimodule makeBimodule(AlgebraPtr alg, int dim, std::vector<Mat> left, std::vector<Mat> right, std::string label);
Bimodule regularBimodule(AlgebraPtr alg);
Bimodule zeroBimodule(AlgebraPtr alg, bool withRight = true);
Report validateBimodule(const Bimodule& m);

enum class Linearity { KLinear, LeftA, RightA, Bilinear };
const char* toString(Linearity l);

bool isLeftLinear(const Bimodule& src, const Bimodule& dst, const Mat& f);
bool isRightLinear(const Bimodule& src, const Bimodule& dst, const Mat& f);

struct BimoduleMap {
    Mat matrix;
    std::string source, target;
    Linearity linearity = Linearity::KLinear;
};

// Throws std::domain_error when the declared linearity does not hold.
BimoduleMap makeMap(const Bimodule& src, const Bimodule& dst, Mat m, Linearity lin);

Subspace subBimodule(const Bimodule& m, const std::vector<Vec>& gens);
Subspace leftSubmodule(const Bimodule& m, const std::vector<Vec>& gens);
// Induced structure on an action-stable subspace, in its echelon coordinates.
// The right action is kept only when the subspace is right-stable.
Bimodule restrictTo(const Bimodule& m, const Subspace& s, std::string label);

// M ⊗_A N as a quotient of the plain tensor product (index i*dimN + j).
struct Tensor {
    Bimodule mod;
    int leftDim = 0, rightDim = 0;
    std::vector<SVec> projCol;  // class of each plain pair
    std::vector<SVec> lift;     // plain representative of each class basis vector

    int plainDim() const { return leftDim * rightDim; }
    const SVec& pairClass(int i, int j) const { return projCol[static_cast<size_t>(i) * rightDim + j]; }
    Vec pair(const Vec& x, const Vec& y) const;
    Vec project(const Vec& plain) const;
    Mat projection() const;
    Mat liftMatrix() const;
    // plainMap: target x plainDim, assumed balanced; returns target x dim
    Mat descend(const Mat& plainMap) const;
};

Tensor tensorOverA(const Bimodule& m, const Bimodule& n);
// A ⊗_A F realized on F itself: (a, f) -> a f
Tensor unitTensor(const Bimodule& f);
// f ⊗ g between tensor products; f right-linear and g left-linear
Mat tensorMaps(const Tensor& src, const Tensor& dst, const Mat& f, const Mat& g);
// plainMap (target x dimM*dimN) kills every x a ⊗ y - x ⊗ a y
bool isBalanced(const Mat& plainMap, const Bimodule& m, const Bimodule& n);

// Linear conditions on an unknown map X: src -> dst, vectorized row-major.
struct MapConstraint {
    std::vector<SVec> rows;  // over the row-major entries of X
    Vec rhs;
};

// post * X * pre = value
MapConstraint composeConstraint(const Mat& post, const Mat& pre, const Mat& value);
Vec vecOf(const Mat& m);
Mat unvec(const Vec& v, int rows, int cols);
AffineSpace solveMaps(const Bimodule& src, const Bimodule& dst, Linearity lin,
                      const std::vector<MapConstraint>& extra = {});

// Several unknown maps solved jointly; each unknown is vectorized row-major
// at its own offset in the solution vector.
class MapSystem {
public:
    struct Term {
        int unknown;
        Mat post, pre;  // contributes post * X * pre
    };

    int addUnknown(int rows, int cols);
    // Σ post * X * pre = value
    void equation(const std::vector<Term>& terms, const Mat& value);
    // X is left (right) linear between the given modules, on generators
    void linear(int unknown, const Bimodule& src, const Bimodule& dst, Linearity lin);
    AffineSpace solve() const;
    Mat extract(const Vec& solution, int unknown) const;
    int size() const { return size_; }

private:
    struct Shape {
        int offset, rows, cols;
    };
    std::vector<Shape> shapes_;
    int size_ = 0;
    std::vector<SVec> rows_;
    Vec rhs_;
};

}  // namespace ncjet
