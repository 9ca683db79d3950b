#pragma once

#include <string>

#include "ncjet/jets.hpp"

namespace ncjet {

// A left connection ∇: E -> Ω^1 ⊗ E, stored in the coordinates of forms(c, 1, E).
struct Connection {
    Bimodule mod;
    Mat nabla;
    std::string label() const { return mod.label; }
};

// A connection on Ω^1 together with its generalized braiding σ on Ω^1 ⊗ Ω^1.
struct BimoduleConnection {
    Connection base;
    Mat sigma;
};

// An n-connection: a section C of π^{n,n-1} together with the left split
// λ: J^n -> S^n it determines, so that C π + ι^n λ = id.
struct HigherConnection {
    int order = 0;
    Mat section;
    Mat leftSplit;
};

// ∇(a e) - a ∇e - da ⊗ e on every basis pair
Report checkLeibniz(const Calculus& c, const Bimodule& e, const Mat& nabla);
// throws std::domain_error when Leibniz fails
Connection makeConnection(const Calculus& c, const Bimodule& e, Mat nabla);
// ∇a = da ⊗ 1 on a, a copy of the regular bimodule
Connection exteriorConnection(const Calculus& c, const Bimodule& a);

AffineSpace solveLeftConnections(const Calculus& c, const Bimodule& e);
Connection connectionAt(const Calculus& c, const Bimodule& e, const AffineSpace& space, const Vec& point);
// General: every bimodule connection. FrameConstant: ∇θ_a = Σ α_abc θ_b ⊗ θ_c
// with scalar α on the calculus' free frame (throws std::invalid_argument
// without one).
enum class BimoduleAnsatz { General, FrameConstant };
// solution vectors are vec(∇) followed by vec(σ), then the α for FrameConstant
AffineSpace solveBimoduleConnections(const Calculus& c, BimoduleAnsatz ansatz = BimoduleAnsatz::General);
BimoduleConnection bimoduleConnectionAt(const Calculus& c, const AffineSpace& space, const Vec& point);
// σ(θ ⊗ dm) = dm ⊗ θ + ∇[θ, m] - [∇θ, m], plus right Leibniz and bilinearity
Report checkBimoduleConnection(const Calculus& c, const BimoduleConnection& b);

// ∧ ∘ ∇ - d: Ω^1 -> Ω^2
Mat torsion(const Calculus& c, const Connection& conn);
// (∇ ⊗ id) g + (σ ⊗ id)(id ⊗ ∇) g in Ω^1 ⊗ (Ω^1 ⊗ Ω^1)
Vec metricCompat(const Calculus& c, const BimoduleConnection& b, const Vec& g);
// d_∇: Ω^m ⊗ E -> Ω^{m+1} ⊗ E; throws std::logic_error if not well defined
Mat covariantExterior(const Calculus& c, const Connection& conn, int m);
// d_∇ ∘ ∇: E -> Ω^2 ⊗ E, checked left-linear
Mat curvature(const Calculus& c, const Connection& conn);
// ∇(ω ⊗ f) = ∇ω ⊗ f + (σ ⊗ id)(ω ⊗ ∇f) on Ω^1 ⊗ F
Connection tensorConnection(const Calculus& c, const BimoduleConnection& b, const Connection& f);

// Higher connections on the holonomic jets of jets.base().
HigherConnection higherConnectionFromSection(Jets& jets, int n, const Mat& section);
HigherConnection higherConnectionFromSplit(Jets& jets, int n, const Mat& leftSplit);
// n = 1: λ = ∇ π + ρ
HigherConnection higherConnectionFromConnection(Jets& jets, const Connection& conn);
Mat higherCurvature(Jets& jets, const HigherConnection& h);
// 𝒮^{n,0} ∘ C on J^{n-1}
Connection associatedConnection(Jets& jets, const HigherConnection& h);
// d_C = 𝒮^{n,m} ∘ Ω^m(C): Ω^m J^{n-1} -> Ω^{m+1} J^{n-1}
Mat higherExterior(Jets& jets, const HigherConnection& h, int m);
// The n-connection whose associated connection is the given one on J^{n-1}.
// Throws std::domain_error naming the failed hypothesis (i) or (ii).
HigherConnection higherFromJetConnection(Jets& jets, int n, const Connection& conn);

// Ω^1(C) 𝒮^{n,0} + Ω^1(ι^n) ∇^S λ on J^n
Connection jetFromSym(Jets& jets, const HigherConnection& h, const Connection& symConn);
// Ω^1(λ) ∇^J ι^n on S^n
Connection symFromJet(Jets& jets, const HigherConnection& h, const Connection& jetConn);

// Change of basis Ω^m J^{n-1} ⊕ Ω^m S^n -> Ω^m J^n given by (Ω^m C, Ω^m ι^n).
Mat splitBasis(Jets& jets, const HigherConnection& h, int m);
// upper triangular forms of d_{∇^J} and of its curvature in that basis, and
// the decomposition of 𝒮^{n,m} through C
Report jetConnectionBlocks(Jets& jets, const HigherConnection& h, const Connection& symConn, int maxM);

}  // namespace ncjet
