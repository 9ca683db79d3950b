#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ncjet/calculus.hpp"

namespace ncjet {

enum class JetFlavor { Nonholonomic, Sesquiholonomic, Holonomic };
const char* toString(JetFlavor f);

struct JetModule {
    int order = 0;
    JetFlavor flavor = JetFlavor::Holonomic;
    Bimodule mod;
    Bimodule lower;     // the order n-1 jets this one sits over
    Subspace carrier;   // inside P^1(lower); everything for order 1
    Mat embed;          // l: J^n -> P^1(lower)
    Mat proj;           // π^{n,n-1}: J^n -> lower
    Mat rhoL;           // ρ ∘ l: J^n -> Ω^1 ⊗ lower
    Mat prolong;        // j^n: E -> J^n, k-linear
    Mat symInclude;     // ι^n: S^n -> J^n (holonomic flavor)
};

struct SymModule {
    int order = 0;
    Bimodule mod;
    Mat include;  // ι_∧: S^n -> Ω^1 ⊗ S^{n-1}
};

// Jets, symmetric forms and Spencer data over one calculus and one module E.
// Everything is built lazily and memoized behind one lock.
class Jets {
public:
    Jets(CalculusPtr calc, Bimodule e);

    const Calculus& calc() const { return *calc_; }
    const CalculusPtr& calcPtr() const { return calc_; }
    const Bimodule& base() const { return e_; }

    const PairModule& pair(const Bimodule& f) { return pairModule(*calc_, f); }
    const JetModule& holonomic(int n);
    const JetModule& sesquiholonomic(int n);
    const JetModule& nonholonomic(int n);
    const JetModule& jet(int n, JetFlavor f);
    const SymModule& sym(int n);

    // on P^1 P^1 G: D̃ᴵ into Ω^1 G and D̃ᴵᴵ into Ω^2 G
    Mat dTildeI(const Bimodule& g);
    Mat dTildeII(const Bimodule& g);
    // δ^{h,k}: Ω^k S^h -> Ω^{k+1} S^{h-1}
    Mat delta(int h, int k);
    // 𝒮^{n,m}: Ω^m J^n -> Ω^{m+1} J^{n-1} for the given flavor
    const Mat& spencer(int n, int m, JetFlavor f = JetFlavor::Holonomic);
    // (D̃ᴵ, D̃ᴵᴵ): P^1 P^1 E -> twisted()
    Mat dTilde();
    const TwistedFormPair& twisted();
    // ν^m: Ω^m ⊗ twisted() -> Ω^{m+2} E
    Mat nu(int m);
    // inclusion of flavor a into flavor b at order n (a at least as holonomic as b)
    Mat inclusion(int n, JetFlavor a, JetFlavor b);
    Subspace elementalSpan(int n);
    // ker(𝒮^{n-1,1} ∘ 𝒮̄^{n,0}) inside P^1(J^{n-1})
    Subspace holonomicViaSpencer(int n);
    // J^n as a subspace of P^1(J^{n-1}), for comparing flavors
    Subspace carrierIn(int n, JetFlavor f);

private:
    std::shared_ptr<JetModule> build(int n, JetFlavor f);
    std::shared_ptr<SymModule> buildSym(int n);

    CalculusPtr calc_;
    Bimodule e_;
    std::recursive_mutex mu_;
    std::map<std::pair<int, int>, std::shared_ptr<JetModule>> jets_;
    std::vector<std::shared_ptr<SymModule>> syms_;
    std::shared_ptr<TwistedFormPair> twisted_;
    std::map<std::tuple<int, int, int>, std::shared_ptr<Mat>> spencer_;
};

struct SpencerComplexResult {
    std::vector<std::string> objects;  // E, J^n, Ω^1 J^{n-1}, ...
    std::vector<int> dims;
    std::vector<Mat> maps;             // maps[i]: objects[i] -> objects[i+1]
    bool isComplex = false;
    std::vector<int> cohomologyDims;   // at each object
};

SpencerComplexResult spencerComplex(Jets& jets, int n);
Report bicomplexCheck(Jets& jets, int n, bool flipDeltaSign = false);
Report exactnessReport(Jets& jets, int n);
// 𝒮^{n,0} j^n = 0, consecutive composites vanish, ker 𝒮^{n,0} = span j^n(E),
// surjectivity of 𝒮^{1,m}, flavor compatibility and holonomicViaSpencer
Report spencerPropertySuite(Jets& jets, int maxOrder);
// identities on J^1 J^1 E: 𝒮^{1,m+1} 𝒮^{1,m}_{J^1} = -ν^m Ω^m(D̃)
Report twistedIdentities(Jets& jets, int maxM);
// the A-linear lift of 𝒮^{n,m} restricted along ι^1 is ∧^{1,m} ⊗ π^{n,n-1}
Report restrictionSymbolCheck(Jets& jets, int n, int m);

}  // namespace ncjet
