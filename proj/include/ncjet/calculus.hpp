#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "ncjet/algebra.hpp"

namespace ncjet {

// P^1 F = F ⊕ Ω^1 ⊗ F with a·(x, ω) = (ax, aω - da ⊗ x), the split first jets
struct PairModule {
    Bimodule mod;
    Bimodule base;
    Bimodule formsPart;  // Ω^1 ⊗ F
    Mat pi, rho;         // projections onto the two summands
    Mat jet, iota;       // x -> (x, 0), ω -> (0, ω)
};

namespace detail {
struct FormsCache {
    std::mutex mu;
    std::map<std::pair<int, long>, std::shared_ptr<const Tensor>> forms;
    std::map<std::tuple<int, int, long>, std::shared_ptr<const Mat>> wedgeFirst;
    std::map<long, std::shared_ptr<const PairModule>> pairs;
};
}  // namespace detail

// Ω^0 .. Ω^maxDegree with wedge and d. Ω^n for n >= 2 is presented as the
// quotient of Ω^{n-1} ⊗_A Ω^1 by Ω^{n-2} ∧ R, R the degree-2 relations.
struct Calculus {
    AlgebraPtr alg;
    int maxDegree = 0;
    std::vector<Bimodule> omega;
    std::vector<Mat> d;  // d[n]: Ω^n -> Ω^{n+1}
    Subspace relations;  // N^1 inside the plain A ⊗ A
    Subspace degreeTwoRelations;  // inside Ω^1 ⊗_A Ω^1
    std::vector<Mat> presentation;      // [n]: Ω^{n-1} ⊗_A Ω^1 -> Ω^n, n >= 2
    std::vector<Mat> presentationLift;  // [n]: section of the above
    // wedgePlain[p][q]: Ω^{p+q} x (dim Ω^p * dim Ω^q) on plain basis pairs
    std::vector<std::vector<Mat>> wedgePlain;
    Mat frame;  // columns: a free left frame of Ω^1, or empty
    std::vector<std::string> frameNames;
    std::string name;
    std::shared_ptr<detail::FormsCache> cache;

    int dim(int n) const { return omega.at(n).dim; }
    const Mat& d0() const { return d.at(0); }
};

using CalculusPtr = std::shared_ptr<const Calculus>;

// d(1) = 0, Leibniz on basis pairs, Ω^1 spanned by a db, bimodule axioms.
Report validateFODC(const Algebra& a, const Bimodule& omega1, const Mat& d0);

// Throws std::domain_error naming the failed FODC check or an ill-defined d.
CalculusPtr buildCalculus(AlgebraPtr alg, const Bimodule& omega1, const Mat& d0, int maxDegree,
                          std::string name = "calculus", Mat frame = {}, std::vector<std::string> frameNames = {});
CalculusPtr universalCalculus(AlgebraPtr alg, int maxDegree = 3);
CalculusPtr quaternionCalculus(int maxDegree = 3);

std::vector<std::string> fixtureNames();
// quaternion, two-point-universal, matrix2-universal; throws std::invalid_argument otherwise
CalculusPtr fixtureByName(const std::string& name);

// d^2 = 0, graded Leibniz, wedge associativity up to maxDegree.
Report validateCalculus(const Calculus& c);

// Ω^p ⊗_A F, cached per (p, F). Ω^0 ⊗_A F is F itself.
const Tensor& forms(const Calculus& c, int p, const Bimodule& f);
// ∧: Ω^p ⊗_A Ω^q -> Ω^{p+q}
Mat wedge(const Calculus& c, int p, int q);
// ∧ ⊗ id: Ω^p ⊗_A (Ω^q ⊗_A F) -> Ω^{p+q} ⊗_A F
const Mat& wedgeFirst(const Calculus& c, int p, int q, const Bimodule& f);
// Ω^p(φ) = id ⊗ φ for a left-linear φ: F -> G
Mat formsMap(const Calculus& c, int p, const Bimodule& f, const Bimodule& g, const Mat& phi);
// ω ∧ (η ⊗ x) for ω in Ω^p and a vector of Ω^q ⊗ F, landing in Ω^{p+q} ⊗ F
Vec wedgeVec(const Calculus& c, int p, int q, const Bimodule& f, const Vec& omega, const Vec& etaF);

// cached per F, so iterated pairs keep stable module ids
const PairModule& pairModule(const Calculus& c, const Bimodule& f);

// ω ⊗ x -> dω ⊗ A(x) + sign · ω ∧ B(x), as a map Ω^m ⊗ X -> Ω^{m+1} ⊗ Y,
// evaluated on the lifts of Ω^m ⊗ X. A: X -> Y and B: X -> Ω^1 ⊗ Y need only
// be k-linear; the caller is responsible for the result being well defined.
Mat formsOperator(const Calculus& c, int m, const Bimodule& x, const Bimodule& y, const Mat& a, const Mat& b,
                  const Rat& sign);
// the same operator on plain pairs, tested for balance over A
bool formsOperatorWellDefined(const Calculus& c, int m, const Bimodule& x, const Bimodule& y, const Mat& a,
                              const Mat& b, const Rat& sign);

// Ω^1E ⊕ Ω^2E with a·(α, β) = (aα, da∧α + aβ)
struct TwistedFormPair {
    Bimodule mod;
    int firstDim = 0;
};
TwistedFormPair twistedPair(const Calculus& c, const Bimodule& e);

}  // namespace ncjet
