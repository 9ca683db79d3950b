#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ncjet/quantization.hpp"

namespace ncjet {

// The quaternion worked example: frame-constant bimodule connection on Ω^1,
// ∇ = d on ℍ, s^{1,1} = ½(id + σ) and the quantization they induce.
struct QuaternionModel {
    CalculusPtr calc;
    std::unique_ptr<Jets> jets;
    BimoduleConnection levi;
    Vec metric;       // di ⊗ dj - dj ⊗ di in Ω^1 ⊗ Ω^1
    Mat toOmega1S1;   // Ω^1 ⊗ Ω^1 -> Ω^1 S^1, S^1 = Ω^1 ⊗ ℍ
    Vec metricSym;    // g in S^2
    Mat halfSigma;    // S^2 coordinates of ½(id + σ); empty if it is not a retraction
    std::string failure;
    std::unique_ptr<Quantization> quant;
    std::vector<Mat> partials;  // ∂_i, ∂_j
    std::vector<Mat> right;     // R_h for h = 1, i, j, k
    Mat leftK;
    std::vector<GradedSymbol> generators;  // x_i, x_j, p_i, p_j
    std::vector<std::string> generatorNames;
};

// corrupt flips σ in the retraction candidate, which then has to be rejected
std::unique_ptr<QuaternionModel> buildQuaternionModel(bool corrupt = false);

struct Claim {
    int group = 0;  // 1 connection, 2 jets and chain, 3 ι²(g), 4 L_k, 5 star table
    std::string name;
    bool pass = false;
    std::string detail;
};

struct DemoReport {
    std::vector<Claim> claims;
    std::vector<std::string> notes;
    bool ok() const;
    const Claim* firstFailure() const;
};

DemoReport demoQuaternion(bool corrupt = false);

}  // namespace ncjet
