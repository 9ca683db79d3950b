#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncjet/connections.hpp"

namespace ncjet {

// Differential operators E -> F are k-linear matrices; their order and lifts
// are found by factoring through the prolongation.

// smallest n <= cap with an A-linear lift J^n E -> F of op
std::optional<int> opOrder(Jets& jets, const Bimodule& f, const Mat& op, int cap);
// canonical A-linear lift through j^n; throws std::domain_error if the order exceeds n
Mat opLift(Jets& jets, const Bimodule& f, const Mat& op, int n);
bool liftIsUnique(Jets& jets, const Bimodule& f, int n);
// restriction symbol lift ∘ ι^n: S^n E -> F; refuses when lifts are not unique
Mat symbolOf(Jets& jets, const Bimodule& f, const Mat& op, int n);

// A-bilinear (A-linear without right actions) left inverse of ι_∧^{k+1},
// the canonical solution, or nothing
std::optional<Mat> retractionSolver(Jets& jets, int k);

// Ω^1 ⊗ Ω^1 -> Ω^1 S^1 induced by ω -> ω ⊗ 1, for E = A
Mat unitIntoS1(Jets& jets);
// ½(id + σ) on Ω^1 S^1 = Ω^1 ⊗ (Ω^1 ⊗ A) for E = A, as a map into S^2, when
// it takes values there and splits ι_∧; flip uses ½(id - σ) instead
std::optional<Mat> symmetrizerRetraction(Jets& jets, const BimoduleConnection& b, bool flip = false);

// dh = Σ_a ∂_a(h) θ_a for the calculus' free frame θ
std::vector<Mat> partialOps(const Calculus& c);

// Symbols by degree: parts[k] is a map S^k E -> F. Zero parts are dropped.
struct GradedSymbol {
    std::map<int, Mat> parts;

    static GradedSymbol of(int degree, Mat m);
    GradedSymbol& normalize();
    Mat at(int degree, int rows, int cols) const;
    bool isZero() const;
    int maxDegree() const;
};
GradedSymbol operator+(const GradedSymbol& a, const GradedSymbol& b);
GradedSymbol operator-(const GradedSymbol& a, const GradedSymbol& b);
GradedSymbol operator*(const Rat& s, const GradedSymbol& a);
bool operator==(const GradedSymbol& a, const GradedSymbol& b);

// Laurent polynomials in h with graded symbol coefficients
struct HPoly {
    std::map<int, GradedSymbol> coeffs;

    HPoly& normalize();
    GradedSymbol eval(const Rat& hbar) const;
    bool hasNegativePowers() const;
};
HPoly operator+(const HPoly& a, const HPoly& b);
HPoly operator-(const HPoly& a, const HPoly& b);
bool operator==(const HPoly& a, const HPoly& b);

// operators in Diff[h, h^-1], by power of h
using HOps = std::map<int, Mat>;

// A full quantization of (E, F) given by the chain ∇^k = s^{1,k-1} ∇^{S^{k-1}} ∇^{k-1}:
// q^k(σ) = σ ∘ ∇^k. F = E unless given.
class Quantization {
public:
    struct Chain {
        std::vector<Connection> symConnections;  // on S^0 .. S^{cap-2}
        std::vector<Mat> retractions;            // s^{1,k}: Ω^1 S^k -> S^{k+1}
        std::vector<Mat> nabla;                  // ∇^k: E -> S^k, k < cap
    };

    Quantization(Jets& jets, Chain chain, int cap, std::optional<Bimodule> target = std::nullopt);

    Jets& jets() const { return *jets_; }
    const Bimodule& source() const { return jets_->base(); }
    const Bimodule& target() const { return target_; }
    // symbols live in degrees 0 .. cap-1; S^cap E = 0 or the configured limit
    int cap() const { return cap_; }
    const Chain& chain() const { return chain_; }
    const Mat& leftSplit(int k) const { return splits_.at(k); }

    std::optional<int> order(const Mat& op) const;
    Mat lift(const Mat& op, int n) const;
    // ζ^n
    Mat symbol(const Mat& op, int n) const;
    Mat quantize(int k, const Mat& sigma) const;
    Mat quantize(const GradedSymbol& s) const;
    // q_ℏ = Σ ℏ^k q^k
    Mat quantize(const GradedSymbol& s, const Rat& hbar) const;
    Mat truncate(const Mat& op, int k) const;
    // [Δ]^k = ζ^k(⌊Δ⌋^k)
    Mat gradedPiece(const Mat& op, int k) const;
    GradedSymbol totalSymbol(const Mat& op) const;
    // Σ ℏ^{-k} [Δ]^k, ℏ ≠ 0
    GradedSymbol totalSymbol(const Mat& op, const Rat& hbar) const;
    // Δ^{(k)} = q^k([Δ]^k)
    Mat homogeneous(const Mat& op, int k) const;

    // E = F from here on
    GradedSymbol product(const GradedSymbol& a, const GradedSymbol& b) const;
    HPoly starFormal(const GradedSymbol& a, const GradedSymbol& b) const;
    HPoly starFormal(const HPoly& a, const HPoly& b) const;
    GradedSymbol star(const GradedSymbol& a, const GradedSymbol& b, const Rat& hbar) const;
    HOps quantizeFormal(const HPoly& p) const;
    // Σ_p h^p Σ_k h^{-k} [Δ_p]^k
    HPoly totalSymbolFormal(const HOps& ops) const;
    GradedSymbol identitySymbol() const;

private:
    int requireOrder(const Mat& op) const;
    void requireEndo(const char* what) const;

    Jets* jets_;
    Chain chain_;
    int cap_;
    Bimodule target_;
    std::vector<Mat> splits_;
};

// Default cap: the first n with S^n E = 0, else maxCap.
int stableCap(Jets& jets, int maxCap = 4);

// Builds the chain from a bimodule connection on Ω^1, a connection on E and
// retractions (missing ones solved for). The bimodule connection is only used
// when cap > 2 and may be left empty otherwise. Throws std::domain_error naming a
// missing retraction or a failed section law.
Quantization buildQuantization(Jets& jets, const BimoduleConnection& b, const Connection& onE,
                               std::vector<Mat> retractions = {}, int maxCap = 4);

// section law, Kronecker law, truncation laws, reconstruction and total symbol
// inverse on the given operators
Report quantizationLaws(const Quantization& q, const std::vector<Mat>& ops);
// associativity and unit of the formal star product on all triples of gens,
// the filtration bound, q_ℏ morphism law at each ℏ, q_1 = q, q_0 = degree-0 part,
// and the deformed total symbol inverse at each nonzero ℏ
Report starLaws(const Quantization& q, const std::vector<GradedSymbol>& gens, const std::vector<Rat>& hbars);

}  // namespace ncjet
